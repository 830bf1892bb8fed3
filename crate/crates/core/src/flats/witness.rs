use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::FlatError;
use crate::graph::{bit, complement_graph, members, FlagComplex, SimplicialGraph, VertexSet};
use crate::raag::{GroupElement, Letter, Raag, StandardSubcomplex, WallKey};

/// Radius of the flat patches checked against the path walls.
pub const DEFAULT_WITNESS_RADIUS: usize = 2;

const CYCLE_SEARCH_BUDGET: usize = 200_000;

/// A closed walk `W` through every vertex of the complement graph, its
/// eightfold power `W'`, and two top flats `F1 = G(Δ)` and
/// `F2 = W'v·G(Δ)` separated by every wall of the path `W'v`, where `v` is
/// the start of the walk and lies outside `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    /// Closed walk in the complement graph; first and last entries agree.
    pub walk: Vec<String>,
    /// Whether the walk is a Hamiltonian cycle rather than a doubled tree.
    pub hamiltonian: bool,
    #[serde(rename = "W")]
    pub w: String,
    #[serde(rename = "Wprime")]
    pub w_prime: String,
    pub w_length: usize,
    pub w_prime_length: usize,
    pub geodesic_verified: bool,
    /// No two consecutive letters of `W'` commute or repeat a generator.
    pub consecutive_noncommuting: bool,
    pub separation_verified: bool,
    /// Radius of the flat patches around the path endpoints in which the
    /// separation check was done.
    pub verification_radius: usize,
    /// Walls of the path `W'v` checked for separation.
    pub walls_checked: usize,
    pub clique: Vec<String>,
    pub flats: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum WitnessOutcome {
    Witness(WitnessReport),
    /// The graph is a join; its complement is disconnected.
    NotApplicable,
}

/// Hamiltonian cycle through `start` by bounded backtracking, trying
/// smaller neighbours first.
fn hamiltonian_cycle(c: &SimplicialGraph, start: usize) -> Option<Vec<usize>> {
    let n = c.vertex_count();
    if n < 3 {
        return None;
    }
    fn extend(c: &SimplicialGraph, path: &mut Vec<usize>, used: VertexSet, budget: &mut usize) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let last = *path.last().unwrap();
        if path.len() == c.vertex_count() {
            return c.adjacent(last, path[0]);
        }
        for u in members(c.neighbors(last) & !used) {
            path.push(u);
            if extend(c, path, used | bit(u), budget) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![start];
    let mut budget = CYCLE_SEARCH_BUDGET;
    extend(c, &mut path, bit(start), &mut budget).then_some(path)
}

/// Closed walk around a depth-first spanning tree, each tree edge used
/// twice. The final return to `start` is omitted.
fn doubled_tree_walk(c: &SimplicialGraph, start: usize) -> Vec<usize> {
    fn visit(c: &SimplicialGraph, v: usize, seen: &mut VertexSet, out: &mut Vec<usize>) {
        out.push(v);
        for u in members(c.neighbors(v)) {
            if *seen & bit(u) == 0 {
                *seen |= bit(u);
                visit(c, u, seen, out);
                out.push(v);
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = bit(start);
    visit(c, start, &mut seen, &mut out);
    out.pop();
    out
}

pub fn join_witness(g: &SimplicialGraph) -> Result<WitnessOutcome, FlatError> {
    join_witness_with_radius(g, DEFAULT_WITNESS_RADIUS)
}

/// Elements of `x·G(Δ)` within `radius` of `x`.
fn flat_patch(raag: &Raag, x: &GroupElement, clique: VertexSet, radius: usize) -> Vec<GroupElement> {
    let letters: Vec<Letter> = members(clique).flat_map(|s| [Letter::new(s, false), Letter::new(s, true)]).collect();
    let mut seen: HashSet<GroupElement> = HashSet::from([x.clone()]);
    let mut layer = vec![x.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for y in &layer {
            for &l in &letters {
                let z = raag.mul_letter(y, l);
                if seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn join_witness_with_radius(g: &SimplicialGraph, radius: usize) -> Result<WitnessOutcome, FlatError> {
    if g.vertex_count() < 2 {
        return Err(FlatError::TooFewVertices);
    }
    let comp = complement_graph(g);
    if !comp.is_connected() {
        return Ok(WitnessOutcome::NotApplicable);
    }
    let flag = FlagComplex::new(g.clone());
    let tops = flag.top_simplices();
    let (start, clique) = (0..g.vertex_count())
        .find_map(|v| tops.iter().find(|&&t| t & bit(v) == 0).map(|&t| (v, t)))
        .expect("a graph that is not complete has a vertex outside some top simplex");

    let (cycle, hamiltonian) = match hamiltonian_cycle(&comp, start) {
        Some(c) => (c, true),
        None => (doubled_tree_walk(&comp, start), false),
    };
    let raag = Raag::new(g.clone());
    let w: Vec<Letter> = cycle.iter().map(|&v| Letter::new(v, false)).collect();
    let w_prime: Vec<Letter> = w.iter().copied().cycle().take(8 * w.len()).collect();

    let end = raag.canonicalize(&w_prime);
    let geodesic_verified = end.len() == w_prime.len();
    let consecutive_noncommuting = w_prime
        .windows(2)
        .all(|p| p[0].generator() != p[1].generator() && !raag.commute(p[0], p[1]));

    // The separating path closes the last copy of the walk at the start
    // vertex, so it begins and ends with a letter outside the clique.
    let mut path = w_prime.clone();
    path.push(Letter::new(start, false));
    let mut x = GroupElement::identity();
    let mut path_walls: Vec<WallKey> = Vec::with_capacity(path.len());
    for &l in &path {
        path_walls.push(raag.wall_key(&x, l));
        x = raag.mul_letter(&x, l);
    }
    let far = x;
    let distinct: BTreeSet<&WallKey> = path_walls.iter().collect();
    let f1 = StandardSubcomplex::new(&raag, &GroupElement::identity(), clique);
    let f2 = StandardSubcomplex::new(&raag, &far, clique);
    let not_crossing = path_walls.iter().all(|h| !f1.crossed_by(&raag, h) && !f2.crossed_by(&raag, h));
    let patch_walls: HashSet<WallKey> = [GroupElement::identity(), far.clone()]
        .iter()
        .flat_map(|c| flat_patch(&raag, c, clique, radius))
        .flat_map(|y| members(clique).map(move |s| (y.clone(), s)))
        .map(|(y, s)| raag.wall_key(&y, Letter::new(s, false)))
        .collect();
    let patches_disjoint = path_walls.iter().all(|h| !patch_walls.contains(h));
    let separation_verified = distinct.len() == path_walls.len() && not_crossing && patches_disjoint;

    let names = |vs: &[usize]| vs.iter().map(|&v| g.name(v).to_owned()).collect::<Vec<_>>();
    let mut walk = names(&cycle);
    walk.push(g.name(start).to_owned());
    Ok(WitnessOutcome::Witness(WitnessReport {
        walk,
        hamiltonian,
        w: raag.format_word(&w),
        w_prime: raag.format_word(&w_prime),
        w_length: w.len(),
        w_prime_length: w_prime.len(),
        geodesic_verified,
        consecutive_noncommuting,
        separation_verified,
        verification_radius: radius,
        walls_checked: path_walls.len(),
        clique: g.names_of(clique),
        flats: (f1.describe(&raag), f2.describe(&raag)),
    }))
}
