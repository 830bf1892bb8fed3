//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use orthantkit::cube::{check_npc, check_weakly_special, davis_chamber, fixtures, salvetti, vertex_link, CubeComplex};
use orthantkit::flats::{ball_flat_graph, g1_classifier, gsd_connected, local_flat_graph, G1Class};
use orthantkit::graph::{property_pd, FlagComplex, SimplicialGraph};
use orthantkit::homology::{
    boundary_matrices, link_support_check, support_link, support_set, vertex_antipode_check,
};
use orthantkit::raag::{DevelopedBall, GeometryError, GroupElement, Letter, Orthant, PeriodicRay, Raag, StandardSubcomplex};
use rand::Rng;
use rayon::prelude::*;

use common::*;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn salvetti_specialness() -> Verdict {
    let mut graphs: Vec<SimplicialGraph> = all_graphs(4).chain(all_graphs(5)).collect();
    let mut rng = rng();
    for _ in 0..200 {
        let n = rng.gen_range(6..=8);
        graphs.push(random_graph(&mut rng, n));
    }
    let bad: Vec<String> = graphs
        .par_iter()
        .filter(|g| {
            let x = salvetti(g);
            !(check_npc(&x).npc && check_weakly_special(&x).weakly_special)
        })
        .map(|g| format!("{:?}", g.edge_names()))
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} graphs (seed {SEED:#x})", graphs.len()))
}

fn davis_chambers() -> Verdict {
    let graphs: Vec<SimplicialGraph> = (1..=8).flat_map(nonisomorphic_graphs).collect();
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let x = davis_chamber(g).ok()?;
            let n = g.vertex_count();
            let mut expected = vec![1usize << n];
            for c in cliques(g) {
                if expected.len() <= c.len() {
                    expected.resize(c.len() + 1, 0);
                }
                expected[c.len()] += 1 << (n - c.len());
            }
            let ok = check_weakly_special(&x).weakly_special && x.counts() == expected;
            (!ok).then(|| format!("{:?}", g.edge_names()))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} graphs up to isomorphism", graphs.len()))
}

fn negative_controls() -> Verdict {
    let klein = fixtures::klein_bottle();
    let r1 = check_weakly_special(&klein);
    ensure(!r1.one_sided.is_empty(), || "Klein bottle has no one-sided hyperplane".into())?;
    ensure(r1 == check_weakly_special(&klein), || "Klein bottle verdict not deterministic".into())?;
    let hollow = fixtures::hollow_cube();
    let r2 = check_npc(&hollow);
    ensure(!r2.npc && r2.empty_simplex.is_some(), || "hollow cube passed".into())?;
    ensure(r2 == check_npc(&hollow), || "hollow cube verdict not deterministic".into())?;
    let w = r2.empty_simplex.unwrap();
    Ok(format!(
        "one-sided hyperplanes {:?}; empty simplex of {} ends at vertex {}",
        r1.one_sided,
        w.ends.len(),
        w.vertex
    ))
}

fn pd_bridge() -> Verdict {
    let graphs: Vec<SimplicialGraph> = all_graphs_up_to(6).collect();
    let checks: Vec<(usize, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let top = FlagComplex::new(g.clone()).top_size();
            let mut bad = None;
            for d in 1..=top {
                if property_pd(g, d).unwrap().holds != gsd_connected(g, d).unwrap() {
                    bad = Some(format!("{:?} d={d}", g.edge_names()));
                }
            }
            (top, bad)
        })
        .collect();
    let bad: Vec<&String> = checks.iter().filter_map(|(_, b)| b.as_ref()).collect();
    ensure(bad.is_empty(), || format!("{} disagreements, first {}", bad.len(), bad[0]))?;
    let pairs: usize = checks.iter().map(|(t, _)| t).sum();
    Ok(format!("{} graphs, {pairs} (graph, d) pairs, 0 disagreements", graphs.len()))
}

fn flat_graph_oracle() -> Verdict {
    let mut compared = 0;
    for (name, g) in geometry_graphs() {
        let ball = DevelopedBall::new(&g, 2).unwrap();
        let raag = ball.raag();
        let top = FlagComplex::new(g.clone()).top_size();
        for d in 1..=top {
            let local = local_flat_graph(&g, d).unwrap().labelled(raag);
            let id = GroupElement::identity();
            let geometric = ball_flat_graph(&ball, d).unwrap().restrict(|c| c.contains(raag, &id)).labelled(raag);
            ensure(local == geometric, || format!("{name} d={d}: {local:?} vs {geometric:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} (graph, d) pairs equal at radius 2"))
}

struct GeometryCounts {
    triples: usize,
    pairs: usize,
    flat_pairs: usize,
}

fn geometry_suite_one(g: &SimplicialGraph) -> Result<GeometryCounts, String> {
    let ball = DevelopedBall::new(g, 2).unwrap();
    let raag = ball.raag();
    let n = ball.vertex_count();
    let dist: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).map(|y| oracle_distance(g, ball.vertex(x), ball.vertex(y))).collect())
        .collect();

    for x in 0..n {
        for y in 0..n {
            let k = ball.crossing_walls(x, y).len();
            ensure(k == dist[x][y], || format!("walls({x},{y}) = {k}, distance {}", dist[x][y]))?;
        }
    }

    let medians: Vec<Option<usize>> = (0..n * n * n)
        .into_par_iter()
        .map(|i| ball.median(i / (n * n), i / n % n, i % n).ok())
        .collect();
    let at = |x: usize, y: usize, z: usize| medians[(x * n + y) * n + z];
    let mut triples = 0;
    for x in 0..n {
        for y in 0..n {
            if let Some(m) = at(x, x, y) {
                ensure(m == x, || format!("m({x},{x},{y}) != {x}"))?;
            }
            for z in 0..n {
                let Some(m) = at(x, y, z) else { continue };
                triples += 1;
                for (p, q) in [(x, y), (y, z), (x, z)] {
                    ensure(dist[p][m] + dist[m][q] == dist[p][q], || format!("m({x},{y},{z}) off a geodesic"))?;
                }
                for perm in [at(y, x, z), at(x, z, y), at(z, y, x)] {
                    ensure(perm.is_none() || perm == Some(m), || format!("m({x},{y},{z}) not symmetric"))?;
                }
            }
        }
    }

    // standard top flats meeting the ball
    let tops = maximum_cliques(g);
    let mut flats: Vec<StandardSubcomplex> = Vec::new();
    let mut seen = HashSet::new();
    for v in ball.vertices() {
        for c in &tops {
            let mask = c.iter().fold(0u64, |m, &i| m | 1 << i);
            let f = StandardSubcomplex::new(raag, v, mask);
            if seen.insert((f.rep().clone(), mask)) {
                flats.push(f);
            }
        }
    }
    let walls_crossing = |c: &StandardSubcomplex| -> BTreeSet<u32> { ball.walls_crossing(c).into_iter().collect() };
    let crossing: Vec<BTreeSet<u32>> = flats.par_iter().map(walls_crossing).collect();
    let results: Vec<Result<bool, String>> = (0..flats.len() * flats.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / flats.len(), k % flats.len());
            if i == j {
                return Ok(false);
            }
            let (c1, c2) = (&flats[i], &flats[j]);
            let ci = match ball.coarse_intersection(c1, c2) {
                Ok(ci) => ci,
                Err(GeometryError::InsufficientRadius(_)) => return Ok(false),
                Err(e) => return Err(e.to_string()),
            };
            let both: BTreeSet<u32> = crossing[i].intersection(&crossing[j]).copied().collect();
            let y1 = ci.y1_subcomplex.as_ref().map(walls_crossing).unwrap_or_default();
            let y2 = ci.y2_subcomplex.as_ref().map(walls_crossing).unwrap_or_default();
            let name = || format!("{} / {}", c1.describe(raag), c2.describe(raag));
            ensure(both == y1 && y1 == y2, || format!("wall identity fails for {}", name()))?;
            let y2set: HashSet<usize> = ci.y2.iter().copied().collect();
            let mut hit = HashSet::new();
            for &(y, z) in &ci.pairs {
                ensure(y2set.contains(&z) && dist[y][z] == ci.delta, || format!("gate off Y2 for {}", name()))?;
                ensure(hit.insert(z), || format!("gate not injective for {}", name()))?;
                if let Ok(back) = ball.gate(z, c1) {
                    ensure(back == y, || format!("gates not inverse for {}", name()))?;
                }
            }
            Ok(true)
        })
        .collect();
    let mut flat_pairs = 0;
    for r in results {
        if r? {
            flat_pairs += 1;
        }
    }
    Ok(GeometryCounts {
        triples,
        pairs: n * n,
        flat_pairs,
    })
}

fn geometry_suite() -> Verdict {
    let mut parts = Vec::new();
    for (name, g) in geometry_graphs() {
        let c = geometry_suite_one(&g).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name}: {} triples, {} pairs, {} flat pairs", c.triples, c.pairs, c.flat_pairs));
    }
    Ok(parts.join("; "))
}

fn normal_form_oracle() -> Verdict {
    let graphs: Vec<SimplicialGraph> = all_graphs_up_to(4).collect();
    let words: Vec<usize> = graphs
        .par_iter()
        .map(|g| -> Result<usize, String> {
            let raag = Raag::new(g.clone());
            let letters: Vec<Letter> = raag.letters().collect();
            let mut by_key: HashMap<Vec<Vec<Syllable>>, (GroupElement, usize)> = HashMap::new();
            let mut by_canon: HashMap<GroupElement, Vec<Vec<Syllable>>> = HashMap::new();
            let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
            let mut count = 0;
            for depth in 0..=6 {
                for w in &layer {
                    count += 1;
                    let canon = raag.canonicalize(w);
                    let key = element_key(g, &syllables(w));
                    match by_key.get(&key) {
                        Some((c, _)) if *c != canon => {
                            return Err(format!("{:?}: equal words with different forms", g.edge_names()))
                        }
                        Some(_) => {}
                        None => {
                            ensure(canon.len() == depth, || format!("{:?}: length differs from BFS depth", g.edge_names()))?;
                            by_key.insert(key.clone(), (canon.clone(), depth));
                        }
                    }
                    match by_canon.get(&canon) {
                        Some(k) if *k != key => {
                            return Err(format!("{:?}: different elements share a form", g.edge_names()))
                        }
                        Some(_) => {}
                        None => {
                            by_canon.insert(canon, key);
                        }
                    }
                }
                if depth < 6 {
                    layer = layer
                        .iter()
                        .flat_map(|w| letters.iter().map(move |&l| {
                            let mut v = w.clone();
                            v.push(l);
                            v
                        }))
                        .collect();
                }
            }
            Ok(count)
        })
        .collect::<Result<_, _>>()?;
    Ok(format!("{} graphs, {} words, 0 disagreements", graphs.len(), words.iter().sum::<usize>()))
}

fn classifier() -> Verdict {
    let graphs: Vec<SimplicialGraph> = (1..=7).flat_map(nonisomorphic_graphs).collect();
    let outcomes: Vec<Result<bool, String>> = graphs
        .par_iter()
        .map(|g| {
            let n = g.vertex_count();
            let comp_connected = connected(n, |i, j| i != j && !g.adjacent(i, j));
            let expect_small = n == 1 || !comp_connected;
            let name = || format!("{:?} on {n} vertices", g.edge_names());
            match g1_classifier(g).map_err(|e| e.to_string())? {
                G1Class::AtMost2 => {
                    ensure(expect_small, || format!("{} classified AtMost2", name()))?;
                    Ok(false)
                }
                G1Class::Infinite { witness } => {
                    ensure(!expect_small, || format!("{} classified Infinite", name()))?;
                    let raag = Raag::new(g.clone());
                    let wp = raag.parse_word(&witness.w_prime).map_err(|e| e.to_string())?;
                    let reduced = reduce(g, &syllables(&wp)).len();
                    ensure(
                        witness.geodesic_verified && reduced == 8 * witness.w_length && wp.len() == reduced,
                        || format!("{}: W' not geodesic", name()),
                    )?;
                    Ok(true)
                }
            }
        })
        .collect();
    let mut infinite = 0;
    for o in outcomes {
        if o? {
            infinite += 1;
        }
    }
    Ok(format!("{} graphs up to isomorphism, {infinite} Infinite with geodesic witnesses", graphs.len()))
}

fn check_l1(g: &SimplicialGraph, ball: &DevelopedBall, o: &Orthant) -> Result<usize, String> {
    let pts: Vec<(&Vec<i64>, &usize)> = o.points.iter().collect();
    for (p, &x) in &pts {
        for (q, &y) in &pts {
            let l1: i64 = p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum();
            let d = oracle_distance(g, ball.vertex(x), ball.vertex(y));
            ensure(d as i64 == l1, || format!("points {p:?} {q:?}: distance {d}, l1 {l1}"))?;
        }
    }
    Ok(pts.len() * pts.len())
}

fn doubling() -> Verdict {
    const H: usize = 16;
    let err = |e: GeometryError| e.to_string();
    let mut pairs_checked = 0;
    let mut quadrants = 0;

    let c4 = SimplicialGraph::cycle(4);
    let ball = DevelopedBall::new(&c4, 4).map_err(err)?;
    let raag = ball.raag();
    for (s, t) in c4.edges() {
        for (si, ti) in [(false, false), (false, true), (true, false), (true, true)] {
            let r1 = PeriodicRay::new(GroupElement::identity(), vec![], vec![Letter::new(s, si)]).map_err(err)?;
            let r2 = PeriodicRay::new(GroupElement::identity(), vec![], vec![Letter::new(t, ti)]).map_err(err)?;
            let o = ball.span_orthant(&[r1, r2], H).map_err(err)?;
            let d0 = ball.double_orthant(&o, 0, H).map_err(err)?;
            let d1 = ball.double_orthant(&o, 1, H).map_err(err)?;
            let full = ball.double_orthant(&d0, 1, H).map_err(err)?;
            for x in [&o, &d0, &d1, &full] {
                pairs_checked += check_l1(&c4, &ball, x)?;
            }
            ensure(d0.contains(&o) && d1.contains(&o) && full.contains(&d0) && full.contains(&d1), || {
                "doubling lost points".into()
            })?;
            let flat = StandardSubcomplex::new(raag, &GroupElement::identity(), 1 << s | 1 << t);
            let expected: BTreeSet<usize> = flat.vertices_in(&ball).into_iter().collect();
            ensure(full.vertex_set() == expected, || {
                format!("doubled quadrant differs from {}", flat.describe(raag))
            })?;
            quadrants += 1;
        }
    }

    let p3 = SimplicialGraph::path(3);
    let ball = DevelopedBall::new(&p3, 4).map_err(err)?;
    let raag = ball.raag();
    let rb = PeriodicRay::parse(raag, "1", "", "b").map_err(err)?;
    let rac = PeriodicRay::parse(raag, "1", "", "a c").map_err(err)?;
    let o = ball.span_orthant(&[rb, rac], H).map_err(err)?;
    let d0 = ball.double_orthant(&o, 0, H).map_err(err)?;
    let d1 = ball.double_orthant(&o, 1, H).map_err(err)?;
    let full = ball.double_orthant(&d0, 1, H).map_err(err)?;
    for x in [&o, &d0, &d1, &full] {
        pairs_checked += check_l1(&p3, &ball, x)?;
    }
    ensure(full.contains(&o), || "mixed doubling lost points".into())?;
    quadrants += 1;
    Ok(format!("{quadrants} quadrants, {pairs_checked} point pairs at radius 4"))
}

fn chain_complexes() -> Vec<CubeComplex> {
    let mut out: Vec<CubeComplex> = all_graphs_up_to(5)
        .flat_map(|g| [Some(salvetti(&g)), davis_chamber(&g).ok()])
        .flatten()
        .collect();
    out.extend((1..=4).map(fixtures::solid_cube));
    out.extend([fixtures::single_square(), fixtures::hollow_cube(), fixtures::klein_bottle()]);
    out
}

fn homology_suite() -> Verdict {
    let complexes = chain_complexes();
    let bad = complexes.par_iter().filter(|x| !boundary_matrices(x).is_chain_complex()).count();
    ensure(bad == 0, || format!("{bad} complexes with nonzero boundary squared"))?;

    let hollow = fixtures::hollow_cube();
    let c = boundary_matrices(&hollow);
    let basis = c.top_cycle_basis();
    let squares = hollow.cells(2).to_vec();
    let edges = hollow.cells(1).to_vec();
    let rows: Vec<Vec<bool>> = edges
        .iter()
        .map(|&e| squares.iter().map(|&q| hollow.face_targets(q).filter(|&f| f == e).count() % 2 == 1).collect())
        .collect();
    let nullity = squares.len() - gf2_rank(rows);
    ensure(basis.len() == 1 && nullity == 1, || format!("hollow cube cycle space {} (oracle {nullity})", basis.len()))?;
    let s = support_set(&c, &basis[0]).map_err(|e| e.to_string())?;
    ensure(squares.iter().all(|&q| s.contains(q)) && basis[0] == squares, || "support misses a square".into())?;

    let graphs: Vec<SimplicialGraph> = all_graphs_up_to(5).collect();
    let checked: Vec<Result<usize, String>> = graphs
        .par_iter()
        .map(|g| {
            let x = salvetti(g);
            let c = boundary_matrices(&x);
            let v = x.vertices()[0];
            let link = vertex_link(&x, v);
            let mut n = 0;
            for z in c.top_cycle_basis() {
                let s = support_set(&c, &z).map_err(|e| e.to_string())?;
                ensure(link_support_check(&x, &s, v).holds, || format!("{:?}: link check", g.edge_names()))?;
                let sub = support_link(&x, &link, &s);
                let r = vertex_antipode_check(&link, &sub).map_err(|e| e.to_string())?;
                ensure(r.pass, || format!("{:?}: antipode check", g.edge_names()))?;
                n += 1;
            }
            ensure(n > 0, || format!("{:?}: no top cycle", g.edge_names()))?;
            Ok(n)
        })
        .collect();
    let mut cycles = 0;
    for r in checked {
        cycles += r?;
    }
    Ok(format!(
        "{} complexes with zero boundary squared; {} top cycles over {} Salvetti complexes",
        complexes.len(),
        cycles,
        graphs.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 10] = [
        ("Salvetti complexes are weakly special", salvetti_specialness, Duration::from_secs(120)),
        ("Davis chambers: specialness and cube counts", davis_chambers, Duration::from_secs(60)),
        ("negative controls", negative_controls, Duration::MAX),
        ("property P_d agrees with flat-graph connectivity", pd_bridge, Duration::from_secs(60)),
        ("ball flat graph matches local flat graph", flat_graph_oracle, Duration::MAX),
        ("median, wall and gate suite", geometry_suite, Duration::from_secs(300)),
        ("normal forms match the Cayley oracle", normal_form_oracle, Duration::MAX),
        ("diameter classifier and witnesses", classifier, Duration::from_secs(120)),
        ("doubled orthants are l1 products", doubling, Duration::MAX),
        ("homology suite", homology_suite, Duration::from_secs(60)),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if took > *budget => Err(format!("{detail}; over the time budget of {budget:?}")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{took:.1?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} [{took:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
