use std::collections::VecDeque;

use serde::Serialize;

use super::{bit, members, SimplicialGraph, VertexSet};

/// The flag complex of a graph: every clique is a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    base: SimplicialGraph,
    /// `simplices[k]` holds the `k`-simplices (cliques of size `k + 1`),
    /// sorted by their vertex lists.
    simplices: Vec<Vec<VertexSet>>,
}

/// Every clique of `g` (excluding the empty one), grouped by size - 1.
fn cliques(g: &SimplicialGraph) -> Vec<Vec<VertexSet>> {
    fn extend(g: &SimplicialGraph, current: VertexSet, size: usize, cands: VertexSet, out: &mut Vec<Vec<VertexSet>>) {
        for v in members(cands) {
            let next = current | bit(v);
            if out.len() <= size {
                out.push(Vec::new());
            }
            out[size].push(next);
            // only extend with larger indices so each clique is produced once
            let higher = cands & g.neighbors(v) & u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0);
            extend(g, next, size + 1, higher, out);
        }
    }
    let mut out = Vec::new();
    extend(g, 0, 0, g.all(), &mut out);
    for layer in &mut out {
        layer.sort_by_key(|&s| members(s).collect::<Vec<_>>());
    }
    out
}

impl FlagComplex {
    pub fn new(base: SimplicialGraph) -> Self {
        let simplices = cliques(&base);
        FlagComplex { base, simplices }
    }

    pub fn base(&self) -> &SimplicialGraph {
        &self.base
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of vertices of a top-dimensional simplex (the clique number).
    pub fn top_size(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self, dim: usize) -> &[VertexSet] {
        self.simplices.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Simplex counts indexed by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn top_simplices(&self) -> &[VertexSet] {
        self.simplices.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        set != 0 && self.base.is_clique(set)
    }

    /// Shortest `rank`-gallery between two top simplices, if one exists.
    pub fn gallery(&self, from: VertexSet, to: VertexSet, rank: usize) -> Option<GalleryPath> {
        let tops = self.top_simplices();
        let start = tops.iter().position(|&s| s == from)?;
        let goal = tops.iter().position(|&s| s == to)?;
        let mut prev = vec![usize::MAX; tops.len()];
        prev[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            if i == goal {
                break;
            }
            for j in 0..tops.len() {
                if prev[j] == usize::MAX && (tops[i] & tops[j]).count_ones() as usize > rank {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        if prev[goal] == usize::MAX {
            return None;
        }
        let mut path = vec![tops[goal]];
        let mut cur = goal;
        while cur != start {
            cur = prev[cur];
            path.push(tops[cur]);
        }
        path.reverse();
        Some(GalleryPath { simplices: path, rank })
    }
}

/// A sequence of top simplices where consecutive members share at least
/// `rank + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GalleryPath {
    pub simplices: Vec<VertexSet>,
    pub rank: usize,
}

impl GalleryPath {
    pub fn is_valid(&self) -> bool {
        self.simplices
            .windows(2)
            .all(|w| (w[0] & w[1]).count_ones() as usize > self.rank)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}
