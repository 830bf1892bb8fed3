//! Graphs of top-dimensional flats and the invariants read off from them.
//!
//! The flat graph `G_d(Γ)` has a node for each top-dimensional flat of
//! `X(Γ)`, two flats adjacent when their coarse intersection has dimension
//! at least `d`. This module builds its finite pieces: the flats through a
//! vertex ([`local_flat_graph`]) and the standard flats meeting a developed
//! ball ([`ball_flat_graph`]). Global connectivity is decided from `Γ`
//! alone ([`gsd_connected`]), and [`join_witness`] certifies that the
//! diameter of `G_1(Γ)` exceeds 2 when `Γ` is not a join.

mod witness;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, join_decomposition, members, FlagComplex, GraphError, SimplicialGraph, VertexSet};
use crate::raag::{DevelopedBall, GeometryError, GroupElement, Letter, Raag, StandardSubcomplex};

pub use witness::{join_witness, join_witness_with_radius, WitnessOutcome, WitnessReport, DEFAULT_WITNESS_RADIUS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlatError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("rank d must be at least 1")]
    ZeroRank,
    #[error("graph needs at least two vertices")]
    TooFewVertices,
}

/// A finite piece of the flat graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFlatGraph {
    pub d: usize,
    pub nodes: Vec<StandardSubcomplex>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Node pairs whose adjacency could not be decided inside the ball.
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatNodeJson {
    pub rep: String,
    pub clique: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FlatGraphJson {
    pub d: usize,
    pub nodes: Vec<FlatNodeJson>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub undecided_pairs: usize,
}

impl LocalFlatGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// The induced subgraph on nodes satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&StandardSubcomplex) -> bool) -> LocalFlatGraph {
        let mut map = BTreeMap::new();
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep(n) {
                map.insert(i, nodes.len());
                nodes.push(n.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|(i, j)| Some((*map.get(i)?, *map.get(j)?)))
            .collect();
        LocalFlatGraph {
            d: self.d,
            nodes,
            edges,
            undecided: self.undecided,
        }
    }

    /// Node labels and labelled edges, for comparing graphs built in
    /// different ways.
    pub fn labelled(&self, raag: &Raag) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
        let names: Vec<String> = self.nodes.iter().map(|n| n.describe(raag)).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (names[i].clone(), names[j].clone());
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        (names.into_iter().collect(), edges)
    }

    pub fn to_json(&self, raag: &Raag) -> FlatGraphJson {
        FlatGraphJson {
            d: self.d,
            nodes: self
                .nodes
                .iter()
                .map(|n| FlatNodeJson {
                    rep: raag.format(n.rep()),
                    clique: raag.graph().names_of(n.subgraph()),
                })
                .collect(),
            edges: self.edges.clone(),
            connected: self.is_connected(),
            undecided_pairs: self.undecided,
        }
    }

    pub fn to_dot(&self, raag: &Raag, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s += &format!("  {i} [label=\"{}\"];\n", n.describe(raag));
        }
        for (i, j) in &self.edges {
            s += &format!("  {i} -- {j};\n");
        }
        s += "}\n";
        s
    }
}

fn check_rank(d: usize) -> Result<(), FlatError> {
    if d == 0 {
        Err(FlatError::ZeroRank)
    } else {
        Ok(())
    }
}

/// Top-dimensional standard flats through the identity, adjacent when
/// their cliques share at least `d` vertices.
pub fn local_flat_graph(g: &SimplicialGraph, d: usize) -> Result<LocalFlatGraph, FlatError> {
    check_rank(d)?;
    if g.is_empty() {
        return Err(GraphError::Empty.into());
    }
    let raag = Raag::new(g.clone());
    let tops = top_cliques(g);
    let nodes: Vec<StandardSubcomplex> = tops
        .iter()
        .map(|&t| StandardSubcomplex::new(&raag, &GroupElement::identity(), t))
        .collect();
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (tops[i] & tops[j]).count_ones() as usize >= d {
                edges.push((i, j));
            }
        }
    }
    Ok(LocalFlatGraph {
        d,
        nodes,
        edges,
        undecided: 0,
    })
}

fn top_cliques(g: &SimplicialGraph) -> Vec<VertexSet> {
    FlagComplex::new(g.clone()).top_simplices().to_vec()
}

/// Adjacency of two flats decided from the ball: `Some(dim)` with the
/// dimension of the coarse intersection, or `None` when the ball is too
/// small to locate a closest point.
fn intersection_dim(ball: &DevelopedBall, c1: &StandardSubcomplex, c2: &StandardSubcomplex) -> Option<usize> {
    let raag = ball.raag();
    let gens: Vec<usize> = members(c1.subgraph()).collect();
    let mut candidates: Vec<(usize, usize)> = c1
        .vertices_in(ball)
        .into_iter()
        .map(|v| (c2.distance_to(raag, ball.vertex(v)), v))
        .collect();
    candidates.sort_unstable();
    // a local minimum of the distance to C2 along C1 is a global one
    'next: for (delta, y) in candidates {
        let mut directions = 0;
        for &s in &gens {
            for inv in [false, true] {
                let Some(n) = ball.step(y, Letter::new(s, inv)) else { continue 'next };
                let dist = c2.distance_to(raag, ball.vertex(n));
                if dist < delta {
                    continue 'next;
                }
                if dist == delta {
                    directions |= bit(s);
                }
            }
        }
        return Some(directions.count_ones() as usize);
    }
    None
}

/// Top-dimensional standard flats meeting the ball, with adjacency decided
/// geometrically from distances to the second flat along the first.
pub fn ball_flat_graph(ball: &DevelopedBall, d: usize) -> Result<LocalFlatGraph, FlatError> {
    check_rank(d)?;
    let raag = ball.raag();
    let tops = top_cliques(raag.graph());
    let nodes: Vec<StandardSubcomplex> = (0..ball.vertex_count())
        .flat_map(|v| tops.iter().map(move |&t| (v, t)))
        .map(|(v, t)| StandardSubcomplex::new(raag, ball.vertex(v), t))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pairs: Vec<(usize, usize)> = (0..nodes.len()).flat_map(|i| (i + 1..nodes.len()).map(move |j| (i, j))).collect();
    let verdicts: Vec<Option<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            // decide from whichever side has a visible closest point
            intersection_dim(ball, &nodes[i], &nodes[j])
                .or_else(|| intersection_dim(ball, &nodes[j], &nodes[i]))
                .map(|k| k >= d)
        })
        .collect();
    let edges = pairs
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| **v == Some(true))
        .map(|(p, _)| *p)
        .collect();
    let undecided = verdicts.iter().filter(|v| v.is_none()).count();
    Ok(LocalFlatGraph {
        d,
        nodes,
        edges,
        undecided,
    })
}

/// The two conditions deciding whether the flat graph `G_d(Γ)` is
/// connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GsdReport {
    pub d: usize,
    pub connected: bool,
    /// Every vertex has at least `d` neighbours in some top simplex.
    pub star_condition: bool,
    /// The top simplices form one class under sharing `d` vertices.
    pub gallery_condition: bool,
    pub gallery_classes: usize,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn gsd_report(g: &SimplicialGraph, d: usize) -> Result<GsdReport, FlatError> {
    check_rank(d)?;
    if g.is_empty() {
        return Err(GraphError::Empty.into());
    }
    let tops: Vec<BTreeSet<usize>> = top_cliques(g).iter().map(|&t| members(t).collect()).collect();
    let star_condition = (0..g.vertex_count()).all(|v| {
        let perp: BTreeSet<usize> = members(g.neighbors(v)).collect();
        tops.iter().any(|t| t.intersection(&perp).count() >= d)
    });
    let mut parent: Vec<usize> = (0..tops.len()).collect();
    for i in 0..tops.len() {
        for j in i + 1..tops.len() {
            if tops[i].intersection(&tops[j]).count() >= d {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let gallery_classes = (0..tops.len()).filter(|&i| find(&mut parent, i) == i).count();
    let gallery_condition = gallery_classes <= 1;
    Ok(GsdReport {
        d,
        connected: star_condition && gallery_condition,
        star_condition,
        gallery_condition,
        gallery_classes,
    })
}

/// Whether `G_d(Γ)` is connected.
pub fn gsd_connected(g: &SimplicialGraph, d: usize) -> Result<bool, FlatError> {
    Ok(gsd_report(g, d)?.connected)
}

/// Diameter class of `G_1(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "camelCase")]
pub enum G1Class {
    AtMost2,
    Infinite { witness: Box<WitnessReport> },
}

pub fn g1_classifier(g: &SimplicialGraph) -> Result<G1Class, FlatError> {
    let j = join_decomposition(g)?;
    if g.vertex_count() == 1 || j.is_nontrivial() {
        return Ok(G1Class::AtMost2);
    }
    match join_witness(g)? {
        WitnessOutcome::Witness(w) => Ok(G1Class::Infinite { witness: Box::new(w) }),
        WitnessOutcome::NotApplicable => unreachable!("complement is connected"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_edges() -> SimplicialGraph {
        SimplicialGraph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap()
    }

    #[test]
    fn local_examples() {
        let c4 = local_flat_graph(&SimplicialGraph::cycle(4), 1).unwrap();
        assert_eq!((c4.node_count(), c4.edges.len()), (4, 4));
        assert!(c4.is_connected());
        let k = local_flat_graph(&two_edges(), 1).unwrap();
        assert_eq!((k.node_count(), k.edges.len()), (2, 0));
        let oct = local_flat_graph(&SimplicialGraph::cocktail_party(3), 2).unwrap();
        assert_eq!(oct.node_count(), 8);
        assert!(oct.degrees().iter().all(|&x| x == 3));
        assert!(oct.is_connected());
    }

    #[test]
    fn gsd_examples() {
        assert!(gsd_connected(&SimplicialGraph::cycle(4), 1).unwrap());
        assert!(!gsd_connected(&two_edges(), 1).unwrap());
        assert!(!gsd_connected(&SimplicialGraph::edgeless(1), 1).unwrap());
        assert_eq!(gsd_connected(&SimplicialGraph::cycle(4), 0), Err(FlatError::ZeroRank));
    }

    #[test]
    fn ball_examples() {
        let b = DevelopedBall::new(&SimplicialGraph::complete(2), 2).unwrap();
        let f = ball_flat_graph(&b, 1).unwrap();
        assert_eq!((f.node_count(), f.edges.len()), (1, 0));

        let b = DevelopedBall::new(&SimplicialGraph::cycle(4), 2).unwrap();
        let f = ball_flat_graph(&b, 1).unwrap();
        let through = f.restrict(|n| n.rep().is_identity());
        let local = local_flat_graph(&SimplicialGraph::cycle(4), 1).unwrap();
        assert_eq!(through.labelled(b.raag()), local.labelled(b.raag()));

        let b = DevelopedBall::new(&two_edges(), 2).unwrap();
        let f = ball_flat_graph(&b, 1).unwrap();
        for &(i, j) in &f.edges {
            assert_eq!(f.nodes[i].subgraph(), f.nodes[j].subgraph());
        }
    }

    #[test]
    fn classifier() {
        assert_eq!(g1_classifier(&SimplicialGraph::cycle(4)).unwrap(), G1Class::AtMost2);
        assert_eq!(g1_classifier(&SimplicialGraph::edgeless(1)).unwrap(), G1Class::AtMost2);
        assert!(matches!(g1_classifier(&SimplicialGraph::cycle(5)).unwrap(), G1Class::Infinite { .. }));
    }
}
