//! Defining graphs, their flag complexes and the graph-level invariants
//! built on top of them (galleries, join decompositions, property `P_d`,
//! hyperoctahedra).
//!
//! Vertices are opaque string ids. A [`SimplicialGraph`] keeps them sorted
//! lexicographically and refers to them internally by their rank in that
//! order, so every derived listing is deterministic.

mod flag;
mod invariants;
pub mod io;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use flag::{FlagComplex, GalleryPath};
pub use invariants::{
    complement_graph, find_top_hyperoctahedron, has_top_hyperoctahedron, join_decomposition,
    property_pd, simplex_intersection_graph, simplex_name, JoinDecomposition, PdReport,
};

/// Maximum number of vertices a [`SimplicialGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Bitmask over vertex indices of one graph.
pub type VertexSet = u64;

/// Iterate the indices set in a vertex mask, in increasing order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn bit(i: usize) -> VertexSet {
    1u64 << i
}

/// Source position attached to input diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn at(pos: &Option<Position>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex `{vertex}`{}", at(.position))]
    SelfLoop {
        vertex: String,
        position: Option<Position>,
    },
    #[error("duplicate edge {u}-{v}{}", at(.position))]
    DuplicateEdge {
        u: String,
        v: String,
        position: Option<Position>,
    },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownVertex(String),
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("operation requires a nonempty graph")]
    Empty,
    #[error("rank d = {d} out of range 1..={max}")]
    RankOutOfRange { d: usize, max: usize },
    #[error("parse error at {position}: {message}")]
    Parse { position: Position, message: String },
}

/// A finite simplicial graph: no loops, no multi-edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

impl SimplicialGraph {
    /// Build a graph from vertex ids and edges given by endpoint ids.
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (T, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(names.len()));
        }
        let mut g = SimplicialGraph {
            adj: vec![0; names.len()],
            names,
        };
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let i = g.index_of(u).ok_or_else(|| GraphError::UnknownVertex(u.to_owned()))?;
            let j = g.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.to_owned()))?;
            g.insert_edge(i, j, None)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(
        &mut self,
        i: usize,
        j: usize,
        position: Option<Position>,
    ) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::SelfLoop {
                vertex: self.names[i].clone(),
                position,
            });
        }
        if self.adj[i] & bit(j) != 0 {
            let (a, b) = (i.min(j), i.max(j));
            return Err(GraphError::DuplicateEdge {
                u: self.names[a].clone(),
                v: self.names[b].clone(),
                position,
            });
        }
        self.adj[i] |= bit(j);
        self.adj[j] |= bit(i);
        Ok(())
    }

    /// Build from already-sorted names and a symmetric, loop-free adjacency.
    pub(crate) fn from_parts(names: Vec<String>, adj: Vec<VertexSet>) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        debug_assert!((0..adj.len()).all(|i| adj[i] & bit(i) == 0));
        SimplicialGraph { names, adj }
    }

    /// `a`, `b`, ..., `z`, then `v26`, `v27`, ... zero-padded so that
    /// lexicographic order agrees with index order.
    pub fn standard_names(n: usize) -> Vec<String> {
        if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..n).map(|i| format!("v{i:02}")).collect()
        }
    }

    /// Graph on `n` standard-named vertices whose edges are selected by
    /// `mask` over the pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 11, "edge mask only addresses graphs on at most 11 vertices");
        let mut adj = vec![0; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
                k += 1;
            }
        }
        Self::from_parts(Self::standard_names(n), adj)
    }

    /// Edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        Self::from_parts(Self::standard_names(n), vec![0; n])
    }

    pub fn complete(n: usize) -> Self {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let adj = (0..n).map(|i| all & !bit(i)).collect();
        Self::from_parts(Self::standard_names(n), adj)
    }

    /// Path `a - b - c - ...` on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut adj = vec![0; n];
        for i in 1..n {
            adj[i] |= bit(i - 1);
            adj[i - 1] |= bit(i);
        }
        Self::from_parts(Self::standard_names(n), adj)
    }

    /// Cycle `a - b - ... - a` on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Self::path(n);
        g.adj[0] |= bit(n - 1);
        g.adj[n - 1] |= bit(0);
        g
    }

    /// Complete multipartite graph with `k` parts of size two (the
    /// 1-skeleton of the `k`-dimensional cross-polytope boundary).
    /// Parts are `{a,b}`, `{c,d}`, ...
    pub fn cocktail_party(k: usize) -> Self {
        let n = 2 * k;
        let all = (1u64 << n) - 1;
        let adj = (0..n).map(|i| all & !bit(i) & !bit(i ^ 1)).collect();
        Self::from_parts(Self::standard_names(n), adj)
    }

    /// Disjoint union; vertex ids must not collide.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let vertices = self.names.iter().chain(other.names.iter());
        let edges = self
            .edge_names()
            .into_iter()
            .chain(other.edge_names())
            .collect::<Vec<_>>();
        Self::new(vertices, edges.iter().map(|(u, v)| (u.as_str(), v.as_str())))
    }

    /// Graph join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Self) -> Result<Self, GraphError> {
        let mut edges = self.edge_names();
        edges.extend(other.edge_names());
        for u in &self.names {
            for v in &other.names {
                edges.push((u.clone(), v.clone()));
            }
        }
        let vertices = self.names.iter().chain(other.names.iter());
        Self::new(vertices, edges.iter().map(|(u, v)| (u.as_str(), v.as_str())))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Mask with every vertex set.
    pub fn all(&self) -> VertexSet {
        let n = self.names.len();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn neighbors(&self, i: usize) -> VertexSet {
        self.adj[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] & bit(j) != 0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.names.len() {
            for j in members(self.adj[i] >> (i + 1)) {
                out.push((i, i + 1 + j));
            }
        }
        out
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
            .collect()
    }

    /// Whether the vertices in `set` are pairwise adjacent.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|i| set & !bit(i) & !self.adj[i] == 0)
    }

    /// Full subgraph spanned by `set`, keeping the original ids.
    pub fn induced(&self, set: VertexSet) -> SimplicialGraph {
        let idx: Vec<usize> = members(set).collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let adj = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.adjacent(i, j))
                    .fold(0, |m, (k, _)| m | bit(k))
            })
            .collect();
        SimplicialGraph::from_parts(names, adj)
    }

    /// Connected components of the full subgraph on `within`, each as a
    /// mask, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for i in members(frontier) {
                    next |= self.adj[i];
                }
                next &= within & !comp;
                comp |= next;
                frontier = next;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.all())
    }

    /// True for a nonempty graph with one component.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertex ids of a mask, in order.
    pub fn names_of(&self, set: VertexSet) -> Vec<String> {
        members(set).map(|i| self.names[i].clone()).collect()
    }

    /// Mask of the named vertices.
    pub fn mask_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<VertexSet, GraphError> {
        ids.iter().try_fold(0, |m, s| {
            self.index_of(s.as_ref())
                .map(|i| m | bit(i))
                .ok_or_else(|| GraphError::UnknownVertex(s.as_ref().to_owned()))
        })
    }

    /// Edge set as a set of name pairs, for comparisons across relabelled
    /// copies.
    pub fn edge_set(&self) -> BTreeSet<(String, String)> {
        self.edge_names().into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert!(matches!(
            SimplicialGraph::new(["a"], [("a", "a")]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            SimplicialGraph::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            SimplicialGraph::new(["a"], [("a", "z")]),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            SimplicialGraph::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn vertices_are_sorted() {
        let g = SimplicialGraph::new(["c", "a", "b"], [("c", "a")]).unwrap();
        assert_eq!(g.names(), ["a", "b", "c"]);
        assert_eq!(g.edges(), vec![(0, 2)]);
    }

    #[test]
    fn edge_mask_enumerates_pairs_in_order() {
        // bit 0 = ab, bit 1 = ac, bit 2 = bc
        let g = SimplicialGraph::from_edge_mask(3, 0b101);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g, SimplicialGraph::path(3));
    }

    #[test]
    fn components_and_induced() {
        let g = SimplicialGraph::complete(2)
            .disjoint_union(&SimplicialGraph::new(["c", "d"], [("c", "d")]).unwrap())
            .unwrap();
        assert_eq!(g.components(), vec![0b0011, 0b1100]);
        assert!(!g.is_connected());
        let h = g.induced(0b1100);
        assert_eq!(h.names(), ["c", "d"]);
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn cocktail_party_is_octahedron() {
        let g = SimplicialGraph::cocktail_party(3);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        assert!(!g.adjacent(0, 1));
        assert!(g.adjacent(0, 2));
    }
}
