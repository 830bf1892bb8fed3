mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::growth::sphere_sizes;
use orthantkit::raag::{
    canonicalize, AngleVerdict, BallCube, DevelopedBall, GeometryError, Letter, PeriodicRay, Raag, StandardSubcomplex,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn geometry_balls(radius: usize) -> Vec<(&'static str, DevelopedBall)> {
    let mut out: Vec<(&'static str, DevelopedBall)> = geometry_graphs()
        .into_iter()
        .map(|(name, g)| (name, DevelopedBall::new(&g, radius).unwrap()))
        .collect();
    out.push(("F2", DevelopedBall::new(&SimplicialGraph::edgeless(2), radius).unwrap()));
    out
}

fn el(raag: &Raag, s: &str) -> orthantkit::raag::GroupElement {
    raag.parse(s).unwrap()
}

/// Pairwise distances in the ball, by the ball's wall count.
fn distance_table(ball: &DevelopedBall) -> Vec<Vec<usize>> {
    let n = ball.vertex_count();
    (0..n).map(|x| (0..n).map(|y| ball.distance(x, y)).collect()).collect()
}

/// Vertices at least one step inside the boundary sphere.
fn inner_vertices(ball: &DevelopedBall) -> Vec<usize> {
    (0..ball.vertex_count()).filter(|&v| ball.depth(v) < ball.radius()).collect()
}

#[test]
fn canonical_form_examples() {
    let k2 = SimplicialGraph::complete(2);
    let raag = Raag::new(k2.clone());
    assert_eq!(raag.format(&canonicalize("b a", &k2).unwrap()), "a b");
    assert!(canonicalize("a a^-1", &k2).unwrap().is_identity());
    let p3 = SimplicialGraph::path(3);
    let raag = Raag::new(p3.clone());
    assert_eq!(raag.format(&canonicalize("c b a", &p3).unwrap()), "b c a");
    assert!(matches!(canonicalize("z", &p3), Err(GeometryError::UnknownGenerator(_))));
}

#[test]
fn develop_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 1).unwrap();
    assert_eq!(k2.counts(), vec![5, 4]);
    let free = DevelopedBall::new(&SimplicialGraph::edgeless(2), 2).unwrap();
    assert_eq!(free.counts(), vec![17, 16]);
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 2).unwrap();
    assert_eq!(k2.vertex_count(), 13);
    assert_eq!(k2.counts()[2], 4);
}

#[test]
fn develop_respects_cap() {
    let g = SimplicialGraph::edgeless(2);
    let r = DevelopedBall::develop(Raag::new(g), Default::default(), 12, 200_000);
    assert!(matches!(r, Err(GeometryError::CapExceeded { .. })));
}

/// Element counts by length from a breadth-first search keyed by the
/// reduction oracle.
fn oracle_spheres(g: &SimplicialGraph, r: usize) -> Vec<i128> {
    let n = g.vertex_count();
    let mut seen: HashSet<Vec<Vec<Syllable>>> = HashSet::new();
    let mut layer: Vec<Vec<Syllable>> = vec![vec![]];
    seen.insert(element_key(g, &[]));
    let mut sizes = vec![1i128];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..n {
                for inv in [false, true] {
                    let mut v = w.clone();
                    v.push((s, inv));
                    let v = reduce(g, &v);
                    if seen.insert(projection_key(g, &v)) {
                        next.push(v);
                    }
                }
            }
        }
        sizes.push(next.len() as i128);
        layer = next;
    }
    sizes
}

#[test]
fn growth_series_matches_oracle_and_balls() {
    for g in all_graphs_up_to(4) {
        let sizes = sphere_sizes(&g, 4);
        assert_eq!(sizes, oracle_spheres(&g, 4), "{:?}", g.edge_names());
        let ball = DevelopedBall::new(&g, 4).unwrap();
        let mut by_depth = vec![0i128; 5];
        for v in 0..ball.vertex_count() {
            by_depth[ball.depth(v)] += 1;
        }
        assert_eq!(by_depth, sizes);
    }
}

#[test]
fn ball_distance_matches_reduction_oracle() {
    let mut rng = rng();
    for (name, ball) in geometry_balls(3) {
        let g = ball.graph().clone();
        for _ in 0..400 {
            let x = rng.gen_range(0..ball.vertex_count());
            let y = rng.gen_range(0..ball.vertex_count());
            let d = oracle_distance(&g, ball.vertex(x), ball.vertex(y));
            assert_eq!(ball.distance(x, y), d, "{name}");
            assert_eq!(ball.crossing_walls(x, y).len(), d, "{name}");
        }
    }
}

#[test]
fn median_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 3).unwrap();
    let r = k2.raag().clone();
    let at = |s: &str| k2.require(&el(&r, s)).unwrap();
    let m = k2.median(at("1"), at("a a"), at("a b")).unwrap();
    assert_eq!(m, at("a"));
    let free = DevelopedBall::new(&SimplicialGraph::edgeless(2), 2).unwrap();
    let r = free.raag().clone();
    let at = |s: &str| free.require(&el(&r, s)).unwrap();
    assert_eq!(free.median(at("1"), at("a"), at("b")).unwrap(), at("1"));
    let x = at("a b");
    assert_eq!(free.median(x, x, at("b^-1")).unwrap(), x);
}

#[test]
fn median_is_the_unique_common_interval_point() {
    let mut rng = rng();
    for (name, ball) in geometry_balls(3) {
        let dist = distance_table(&ball);
        let n = ball.vertex_count();
        let between = |p: usize, m: usize, q: usize| dist[p][m] + dist[m][q] == dist[p][q];
        let inner = inner_vertices(&ball);
        let mut pick = || *inner.choose(&mut rng).unwrap();
        let mut checked = 0;
        for _ in 0..300 {
            let (x, y, z) = (pick(), pick(), pick());
            let Ok(m) = ball.median(x, y, z) else { continue };
            let common: Vec<usize> = (0..n).filter(|&v| between(x, v, y) && between(y, v, z) && between(x, v, z)).collect();
            assert_eq!(common, vec![m], "{name}");
            for perm in [(y, x, z), (z, y, x), (x, z, y)] {
                assert_eq!(ball.median(perm.0, perm.1, perm.2).unwrap(), m, "{name}");
            }
            checked += 1;
        }
        assert!(checked > 100, "{name}: only {checked} triples in range");
    }
}

#[test]
fn median_distributive_law() {
    let mut rng = rng();
    for (name, ball) in geometry_balls(3) {
        let inner = inner_vertices(&ball);
        let m = |a: usize, b: usize, c: usize| ball.median(a, b, c).ok();
        let mut checked = 0;
        for _ in 0..500 {
            let p: Vec<usize> = (0..5).map(|_| *inner.choose(&mut rng).unwrap()).collect();
            let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
            let lhs = m(a, b, c).and_then(|abc| m(abc, d, e));
            let rhs = (|| m(m(a, d, e)?, m(b, d, e)?, m(c, d, e)?))();
            if let (Some(l), Some(r)) = (lhs, rhs) {
                assert_eq!(l, r, "{name}");
                checked += 1;
            }
        }
        assert!(checked > 50, "{name}: only {checked} tuples in range");
    }
}

#[test]
fn gate_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 5).unwrap();
    let r = k2.raag().clone();
    let axis = StandardSubcomplex::new(&r, &el(&r, "1"), 0b01);
    let x = k2.require(&el(&r, "a a b b b")).unwrap();
    assert_eq!(r.format(k2.vertex(k2.gate(x, &axis).unwrap())), "a a");
    let on = k2.require(&el(&r, "a^-1")).unwrap();
    assert_eq!(k2.gate(on, &axis).unwrap(), on);
    let free = DevelopedBall::new(&SimplicialGraph::edgeless(2), 3).unwrap();
    let r = free.raag().clone();
    let line = StandardSubcomplex::new(&r, &el(&r, "1"), 0b01);
    let ab = free.require(&el(&r, "a b")).unwrap();
    assert_eq!(r.format(free.vertex(free.gate(ab, &line).unwrap())), "a");
}

#[test]
fn gate_is_nearest_idempotent_and_nonexpanding() {
    let mut rng = rng();
    for (name, ball) in geometry_balls(3) {
        let raag = ball.raag().clone();
        let dist = distance_table(&ball);
        let n = ball.vertex_count();
        let k = raag.rank();
        for _ in 0..20 {
            let rep = ball.vertex(rng.gen_range(0..n)).clone();
            let mask = loop {
                let m = rng.gen_range(1u64..1 << k);
                if ball.graph().is_clique(m) {
                    break m;
                }
            };
            let c = StandardSubcomplex::new(&raag, &rep, mask);
            let inside = c.vertices_in(&ball);
            let mut gates = Vec::new();
            for x in 0..n {
                let Ok(gx) = ball.gate(x, &c) else { continue };
                assert!(c.contains(&raag, ball.vertex(gx)), "{name}");
                let nearest = inside.iter().map(|&v| dist[x][v]).min().unwrap();
                assert_eq!(dist[x][gx], nearest, "{name}");
                assert_eq!(dist[x][gx], c.distance_to(&raag, ball.vertex(x)), "{name}");
                assert_eq!(ball.gate(gx, &c).unwrap(), gx, "{name}");
                gates.push((x, gx));
            }
            for &(x, gx) in gates.iter().take(40) {
                for &(y, gy) in gates.iter().take(40) {
                    assert!(dist[gx][gy] <= dist[x][y], "{name}");
                }
            }
        }
    }
}

#[test]
fn wall_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 3).unwrap();
    let r = k2.raag().clone();
    let at = |s: &str| k2.require(&el(&r, s)).unwrap();
    assert_eq!(k2.crossing_walls(at("1"), at("a")).len(), 1);
    assert_eq!(k2.crossing_walls(at("1"), at("a a b")).len(), 3);
    let axis = StandardSubcomplex::new(&r, &el(&r, "1"), 0b01);
    assert_eq!(k2.subcomplex_walls(&axis).len(), 6);
}

#[test]
fn coarse_intersection_examples() {
    let p3 = DevelopedBall::new(&SimplicialGraph::path(3), 3).unwrap();
    let r = p3.raag().clone();
    let ab = StandardSubcomplex::new(&r, &el(&r, "1"), 0b011);
    let bc = StandardSubcomplex::new(&r, &el(&r, "1"), 0b110);
    let ci = p3.coarse_intersection(&ab, &bc).unwrap();
    assert_eq!(ci.delta, 0);
    let b_line: BTreeSet<usize> = StandardSubcomplex::new(&r, &el(&r, "1"), 0b010).vertices_in(&p3).into_iter().collect();
    assert_eq!(ci.y1.iter().copied().collect::<BTreeSet<_>>(), b_line);
    assert_eq!(ci.y2.iter().copied().collect::<BTreeSet<_>>(), b_line);

    let same = p3.coarse_intersection(&ab, &ab).unwrap();
    assert_eq!(same.delta, 0);
    assert_eq!(same.y1.iter().copied().collect::<BTreeSet<_>>(), ab.vertices_in(&p3).into_iter().collect());

    let two = DevelopedBall::new(&two_edges(), 3).unwrap();
    let r = two.raag().clone();
    let c1 = StandardSubcomplex::new(&r, &el(&r, "1"), 0b0011);
    let c2 = StandardSubcomplex::new(&r, &el(&r, "c"), 0b0011);
    let ci = two.coarse_intersection(&c1, &c2).unwrap();
    assert_eq!(ci.delta, 1);
    assert_eq!(ci.y1, vec![two.require(&el(&r, "1")).unwrap()]);
    assert_eq!(ci.y2, vec![two.require(&el(&r, "c")).unwrap()]);
}

#[test]
fn coarse_intersection_wall_identity() {
    let mut rng = rng();
    for (name, ball) in geometry_balls(3) {
        let raag = ball.raag().clone();
        let k = raag.rank();
        let cliques: Vec<u64> = (1u64..1 << k).filter(|&m| ball.graph().is_clique(m)).collect();
        let n = ball.vertex_count();
        for _ in 0..40 {
            let c1 = StandardSubcomplex::new(&raag, ball.vertex(rng.gen_range(0..n)), *cliques.choose(&mut rng).unwrap());
            let c2 = StandardSubcomplex::new(&raag, ball.vertex(rng.gen_range(0..n)), *cliques.choose(&mut rng).unwrap());
            let Ok(ci) = ball.coarse_intersection(&c1, &c2) else { continue };
            let w1: BTreeSet<_> = ball.walls_crossing(&c1).into_iter().collect();
            let w2: BTreeSet<_> = ball.walls_crossing(&c2).into_iter().collect();
            let both: BTreeSet<_> = w1.intersection(&w2).copied().collect();
            let y1: BTreeSet<_> = ci.y1_subcomplex.as_ref().map(|y| ball.walls_crossing(y)).unwrap_or_default().into_iter().collect();
            let y2: BTreeSet<_> = ci.y2_subcomplex.as_ref().map(|y| ball.walls_crossing(y)).unwrap_or_default().into_iter().collect();
            assert_eq!(both, y1, "{name}");
            assert_eq!(y1, y2, "{name}");
            for &(y, z) in &ci.pairs {
                assert_eq!(ball.distance(y, z), ci.delta, "{name}");
            }
        }
    }
}

#[test]
fn transport_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 3).unwrap();
    let r = k2.raag().clone();
    let e = k2.require(&el(&r, "1")).unwrap();
    let a_edge = k2.cube_at(e, 0b01, 0).unwrap();
    let t = k2.parallel_transport(a_edge, &r.parse_word("b").unwrap()).unwrap();
    assert_eq!(t.end, BallCube { base: k2.require(&el(&r, "b")).unwrap(), clique: 0b01 });
    assert_eq!(t.strip.len(), 1);

    let p3 = DevelopedBall::new(&SimplicialGraph::path(3), 3).unwrap();
    let r = p3.raag().clone();
    let a_edge = p3.cube_at(0, 0b001, 0).unwrap();
    let blocked = p3.parallel_transport(a_edge, &r.parse_word("c").unwrap());
    assert!(matches!(blocked, Err(GeometryError::ObstructedTransport { step: 0, .. })));
    assert!(matches!(
        p3.parallel_transport(a_edge, &r.parse_word("b b^-1").unwrap()),
        Err(GeometryError::NotGeodesic(_))
    ));
}

#[test]
fn ray_examples() {
    let k2 = Raag::new(SimplicialGraph::complete(2));
    let ray = |base: &str, period: &str| PeriodicRay::parse(&k2, base, "", period).unwrap();
    assert_eq!(k2.ray_angle_class(&ray("1", "a"), &ray("b", "a"), 16).unwrap(), AngleVerdict::Parallel);
    assert_eq!(k2.ray_angle_class(&ray("1", "a"), &ray("1", "b"), 16).unwrap(), AngleVerdict::RightAngleOrMore);
    assert_eq!(k2.ray_angle_class(&ray("1", "a"), &ray("1", "a^-1"), 16).unwrap(), AngleVerdict::RightAngleOrMore);

    let line = k2.mirror_ray(&ray("1", "a"), 12).unwrap();
    assert_eq!(k2.format(&line.point(&k2, -3)), "a^-1 a^-1 a^-1");
    let free = Raag::new(SimplicialGraph::edgeless(3));
    let ac = PeriodicRay::parse(&free, "1", "", "a c").unwrap();
    let axis = free.mirror_ray(&ac, 12).unwrap();
    for t in -4i64..=4 {
        assert_eq!(axis.point(&free, t).len(), t.unsigned_abs() as usize);
    }
}

/// Every pair of lattice points is at the ℓ¹ distance of its parameters.
fn is_l1(ball: &DevelopedBall, o: &orthantkit::raag::Orthant) -> bool {
    o.points.iter().all(|(p, &x)| {
        o.points.iter().all(|(q, &y)| {
            let l1: i64 = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
            ball.distance(x, y) as i64 == l1
        })
    })
}

#[test]
fn orthant_examples() {
    let k2 = DevelopedBall::new(&SimplicialGraph::complete(2), 4).unwrap();
    let r = k2.raag().clone();
    let a = PeriodicRay::parse(&r, "1", "", "a").unwrap();
    let b = PeriodicRay::parse(&r, "1", "", "b").unwrap();
    let q = k2.span_orthant(&[a, b], 8).unwrap();
    assert!(q.points.keys().all(|p| p.iter().all(|&t| t >= 0)));
    let half = k2.double_orthant(&q, 0, 8).unwrap();
    assert!(half.points.keys().any(|p| p[0] < 0) && half.points.keys().all(|p| p[1] >= 0));
    let flat = k2.double_orthant(&half, 1, 8).unwrap();
    assert_eq!(flat.points.len(), k2.vertex_count());

    let p3 = DevelopedBall::new(&SimplicialGraph::path(3), 4).unwrap();
    let r = p3.raag().clone();
    let b = PeriodicRay::parse(&r, "1", "", "b").unwrap();
    let ac = PeriodicRay::parse(&r, "1", "", "a c").unwrap();
    let q = p3.span_orthant(&[b, ac], 8).unwrap();
    assert!(is_l1(&p3, &q));
    let doubled = p3.double_orthant(&q, 1, 8).unwrap();
    assert!(doubled.contains(&q) && is_l1(&p3, &doubled));
    assert!(doubled.points.keys().any(|p| p[1] < 0));
    let a = PeriodicRay::parse(&r, "1", "", "a").unwrap();
    let c = PeriodicRay::parse(&r, "1", "", "c").unwrap();
    assert!(matches!(p3.span_orthant(&[a, c], 8), Err(GeometryError::SpanObstructed(_))));
}

proptest! {
    #![proptest_config(proptest_config(200))]

    #[test]
    fn canonical_forms_decide_equality(
        g in graph_strategy(1, 4),
        w1 in proptest::collection::vec((0usize..4, any::<bool>()), 0..8),
        w2 in proptest::collection::vec((0usize..4, any::<bool>()), 0..8),
    ) {
        let n = g.vertex_count();
        let w1: Vec<Syllable> = w1.into_iter().map(|(s, i)| (s % n, i)).collect();
        let w2: Vec<Syllable> = w2.into_iter().map(|(s, i)| (s % n, i)).collect();
        let raag = Raag::new(g.clone());
        let letters = |w: &[Syllable]| w.iter().map(|&(s, i)| Letter::new(s, i)).collect::<Vec<_>>();
        let c1 = raag.canonicalize(&letters(&w1));
        let c2 = raag.canonicalize(&letters(&w2));
        prop_assert_eq!(c1 == c2, element_key(&g, &w1) == element_key(&g, &w2));
        prop_assert_eq!(c1.len(), reduce(&g, &w1).len());
        // canonical words are fixed points and represent the same element
        prop_assert_eq!(&raag.canonicalize(c1.word()), &c1);
        prop_assert_eq!(element_key(&g, &syllables(c1.word())), element_key(&g, &w1));
        // multiplication agrees with concatenation
        let mut both = w1.clone();
        both.extend(&w2);
        prop_assert_eq!(raag.mul(&c1, &c2), raag.canonicalize(&letters(&both)));
        prop_assert!(raag.mul(&c1, &raag.inverse(&c1)).is_identity());
    }

    #[test]
    fn format_parse_round_trip(
        g in graph_strategy(1, 5),
        w in proptest::collection::vec((0usize..5, any::<bool>()), 0..10),
    ) {
        let n = g.vertex_count();
        let raag = Raag::new(g);
        let letters: Vec<Letter> = w.into_iter().map(|(s, i)| Letter::new(s % n, i)).collect();
        let c = raag.canonicalize(&letters);
        prop_assert_eq!(raag.parse(&raag.format(&c)).unwrap(), c);
    }
}
