//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::{GroupElement, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0f_c0be;

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = SimplicialGraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |m| SimplicialGraph::from_edge_mask(n, m))
}

/// Every labelled graph on `1..=n` vertices.
pub fn all_graphs_up_to(n: usize) -> impl Iterator<Item = SimplicialGraph> {
    (1..=n).flat_map(all_graphs)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimplicialGraph {
    let pairs = n * (n - 1) / 2;
    SimplicialGraph::from_edge_mask(n, rng.gen::<u64>() & ((1u64 << pairs) - 1))
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Property-test settings with the fixed seed and no failure files.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Default::default()
    }
}

/// Strategy for a labelled graph on `lo..=hi` vertices.
pub fn graph_strategy(lo: usize, hi: usize) -> impl proptest::strategy::Strategy<Value = SimplicialGraph> {
    use proptest::prelude::*;
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (Just(n), 0u64..1u64 << pairs)
    })
    .prop_map(|(n, m)| SimplicialGraph::from_edge_mask(n, m))
}

fn adjacency(g: &SimplicialGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n).map(|i| (0..n).map(|j| g.adjacent(i, j)).collect()).collect()
}

/// Canonical edge code of a graph: the lexicographically least adjacency
/// code over all vertex orders compatible with colour refinement.
pub fn canonical_code(adj: &[Vec<bool>]) -> Vec<bool> {
    let n = adj.len();
    let mut colour = vec![0usize; n];
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = (0..n).filter(|&u| adj[v][u]).map(|u| colour[u]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let order: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| order.binary_search(&s).unwrap()).collect();
        let stable = order.len() == colour.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if stable {
            break;
        }
    }
    let classes = colour.iter().max().map_or(0, |m| m + 1);
    let cells: Vec<Vec<usize>> = (0..classes)
        .map(|c| (0..n).filter(|&v| colour[v] == c).collect())
        .collect();
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    fn search(adj: &[Vec<bool>], cells: &[Vec<usize>], cell: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, best: &mut Option<Vec<bool>>) {
        if cell == cells.len() {
            let code: Vec<bool> = (0..order.len())
                .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
                .map(|(i, j)| adj[order[i]][order[j]])
                .collect();
            if best.as_ref().map_or(true, |b| code > *b) {
                *best = Some(code);
            }
            return;
        }
        let before = order.len();
        let done = cells[cell].iter().all(|&v| used[v]);
        if done {
            search(adj, cells, cell + 1, used, order, best);
            return;
        }
        for &v in &cells[cell] {
            if !used[v] {
                used[v] = true;
                order.push(v);
                search(adj, cells, cell, used, order, best);
                order.pop();
                used[v] = false;
            }
        }
        debug_assert_eq!(order.len(), before);
    }
    let mut used = vec![false; n];
    search(adj, &cells, 0, &mut used, &mut order, &mut best);
    best.unwrap_or_default()
}

/// One graph from each isomorphism class on exactly `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<SimplicialGraph> {
    let mut level: Vec<Vec<Vec<bool>>> = vec![vec![]];
    for k in 0..n {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for nb in 0u64..1 << k {
                let mut a: Vec<Vec<bool>> = adj.iter().map(|row| {
                    let mut r = row.clone();
                    r.push(false);
                    r
                }).collect();
                a.push(vec![false; k + 1]);
                for i in 0..k {
                    if nb >> i & 1 == 1 {
                        a[i][k] = true;
                        a[k][i] = true;
                    }
                }
                if seen.insert(canonical_code(&a)) {
                    next.push(a);
                }
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|a| {
            let mut mask = 0u64;
            let mut bitpos = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if a[i][j] {
                        mask |= 1 << bitpos;
                    }
                    bitpos += 1;
                }
            }
            SimplicialGraph::from_edge_mask(n, mask)
        })
        .collect()
}

pub fn is_isomorphic(a: &SimplicialGraph, b: &SimplicialGraph) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_code(&adjacency(a)) == canonical_code(&adjacency(b))
}

/// Connectivity by breadth-first search over an adjacency predicate.
pub fn connected(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if !seen[u] && adjacent(v, u) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All cliques (as sorted vertex lists), by brute force over subsets.
pub fn cliques(g: &SimplicialGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (1u64..1 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&i| s.iter().all(|&j| i == j || g.adjacent(i, j))))
        .collect()
}

/// Maximum cliques by brute force.
pub fn maximum_cliques(g: &SimplicialGraph) -> Vec<Vec<usize>> {
    let all = cliques(g);
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    all.into_iter().filter(|c| c.len() == top).collect()
}

/// Letters as `(generator, inverse)` pairs.
pub type Syllable = (usize, bool);

pub fn syllables(w: &[Letter]) -> Vec<Syllable> {
    w.iter().map(|l| (l.generator(), l.is_inverse())).collect()
}

/// Free reduction up to commutation: repeatedly delete a letter and a
/// later inverse when everything between commutes with it.
pub fn reduce(g: &SimplicialGraph, w: &[Syllable]) -> Vec<Syllable> {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let (s, inv) = w[i];
                if w[j] == (s, !inv) {
                    w.remove(j);
                    w.remove(i);
                    continue 'outer;
                }
                if w[j].0 == s || !g.adjacent(w[j].0, s) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Invariant of a reduced word under commutation: its projections onto
/// every pair of generators that do not commute, and onto each generator.
pub fn projection_key(g: &SimplicialGraph, reduced: &[Syllable]) -> Vec<Vec<Syllable>> {
    let n = g.vertex_count();
    let mut key = Vec::new();
    for s in 0..n {
        for t in s..n {
            if s == t || !g.adjacent(s, t) {
                key.push(reduced.iter().copied().filter(|&(x, _)| x == s || x == t).collect());
            }
        }
    }
    key
}

/// Identity test for a word, via reduction.
pub fn element_key(g: &SimplicialGraph, w: &[Syllable]) -> Vec<Vec<Syllable>> {
    projection_key(g, &reduce(g, w))
}

/// Word distance between two elements, via reduction of `x^-1 y`.
pub fn oracle_distance(g: &SimplicialGraph, x: &GroupElement, y: &GroupElement) -> usize {
    let mut w: Vec<Syllable> = syllables(x.word()).into_iter().rev().map(|(s, i)| (s, !i)).collect();
    w.extend(syllables(y.word()));
    reduce(g, &w).len()
}

/// Rank over Z/2 by Gaussian elimination on rows.
pub fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Graph on named vertices from an edge list.
pub fn named(vertices: &[&str], edges: &[(&str, &str)]) -> SimplicialGraph {
    SimplicialGraph::new(vertices.iter().copied(), edges.iter().copied()).unwrap()
}

pub fn two_edges() -> SimplicialGraph {
    named(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")])
}

/// The five defining graphs used by the geometry suites.
pub fn geometry_graphs() -> Vec<(&'static str, SimplicialGraph)> {
    vec![
        ("K2", SimplicialGraph::complete(2)),
        ("P3", SimplicialGraph::path(3)),
        ("C4", SimplicialGraph::cycle(4)),
        ("C5", SimplicialGraph::cycle(5)),
        ("K2+K2", two_edges()),
    ]
}
