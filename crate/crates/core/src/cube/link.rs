use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CubeComplex, CubeId, EdgeEnd};

/// Why a vertex link fails to be a simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum LinkDefect {
    /// A cube corner whose directions repeat an edge-end.
    Degenerate { cube: CubeId, corner: usize },
    /// Two cube corners spanning the same set of edge-ends.
    Repeated { ends: Vec<EdgeEnd> },
}

/// Combinatorial link of a vertex: its vertices are edge-ends at the
/// vertex, and each corner of a `(k+1)`-cube there spans a `k`-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexLink {
    pub vertex: CubeId,
    pub vertices: Vec<EdgeEnd>,
    /// `simplices[k]`: distinct `k`-simplices as sorted index lists.
    simplices: Vec<Vec<Vec<usize>>>,
    defects: Vec<LinkDefect>,
    #[serde(skip)]
    adj: Vec<Vec<bool>>,
}

/// A set of pairwise adjacent link vertices spanning no simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EmptySimplex {
    pub vertex: CubeId,
    pub ends: Vec<EdgeEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NpcReport {
    pub npc: bool,
    /// First vertex whose link is not simplicial, with the reason.
    pub defect: Option<(CubeId, LinkDefect)>,
    /// First vertex whose link is simplicial but not flag.
    pub empty_simplex: Option<EmptySimplex>,
}

pub fn vertex_link(x: &CubeComplex, v: CubeId) -> VertexLink {
    VertexLink::new(x, v)
}

impl VertexLink {
    pub fn new(x: &CubeComplex, v: CubeId) -> Self {
        let mut vertices: Vec<EdgeEnd> = x
            .corners_at(v)
            .iter()
            .filter(|&&(c, _)| x.dim_of(c) == 1)
            .map(|&(edge, mask)| EdgeEnd { edge, end: mask as u8 })
            .collect();
        vertices.sort();
        let index = |ee: &EdgeEnd| vertices.binary_search(ee).expect("edge-end at this vertex");

        let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut defects = Vec::new();
        for &(cube, mask) in x.corners_at(v) {
            let n = x.dim_of(cube);
            if n == 0 {
                continue;
            }
            let mut s: Vec<usize> = x.corner_ends(cube, mask).iter().map(index).collect();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                defects.push(LinkDefect::Degenerate { cube, corner: mask });
                s.dedup();
            }
            if raw.len() < n {
                raw.resize(n, Vec::new());
            }
            raw[n - 1].push(s);
        }
        let mut simplices = Vec::with_capacity(raw.len());
        for mut layer in raw {
            layer.sort();
            let before = layer.len();
            let mut repeated = Vec::new();
            layer.dedup_by(|a, b| {
                let same = a == b;
                if same {
                    repeated.push(b.clone());
                }
                same
            });
            debug_assert!(layer.len() + repeated.len() == before);
            repeated.dedup();
            for r in repeated {
                defects.push(LinkDefect::Repeated {
                    ends: r.iter().map(|&i| vertices[i]).collect(),
                });
            }
            simplices.push(layer);
        }
        // degenerate corners may collapse into lower layers; keep only
        // correctly sized simplices per layer
        for (k, layer) in simplices.iter_mut().enumerate() {
            layer.retain(|s| s.len() == k + 1);
        }
        let mut adj = vec![vec![false; vertices.len()]; vertices.len()];
        if let Some(edges) = simplices.get(1) {
            for s in edges {
                adj[s[0]][s[1]] = true;
                adj[s[1]][s[0]] = true;
            }
        }
        VertexLink {
            vertex: v,
            vertices,
            simplices,
            defects,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, e: EdgeEnd) -> Option<usize> {
        self.vertices.binary_search(&e).ok()
    }

    /// `k`-simplices as sorted index lists.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Simplex counts indexed by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Whether the sorted index list `s` is a simplex.
    pub fn contains(&self, s: &[usize]) -> bool {
        match s.len() {
            0 => false,
            1 => s[0] < self.vertices.len(),
            k => self.simplices(k - 1).binary_search_by(|t| t.as_slice().cmp(s)).is_ok(),
        }
    }

    pub fn defects(&self) -> &[LinkDefect] {
        &self.defects
    }

    pub fn is_simplicial(&self) -> bool {
        self.defects.is_empty()
    }

    /// A smallest clique of the 1-skeleton that spans no simplex.
    pub fn empty_simplex(&self) -> Option<Vec<usize>> {
        let mut level: Vec<Vec<usize>> = self.simplices(1).to_vec();
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().unwrap();
                for w in last + 1..self.vertices.len() {
                    if s.iter().all(|&u| self.adj[u][w]) {
                        let mut t = s.clone();
                        t.push(w);
                        if !self.contains(&t) {
                            return Some(t);
                        }
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.is_simplicial() && self.empty_simplex().is_none()
    }
}

/// Gromov's link condition at every vertex.
pub fn check_npc(x: &CubeComplex) -> NpcReport {
    let links: Vec<VertexLink> = x.vertices().par_iter().map(|&v| VertexLink::new(x, v)).collect();
    npc_of_links(&links)
}

/// Link condition over precomputed links, in vertex order.
pub(crate) fn npc_of_links(links: &[VertexLink]) -> NpcReport {
    let defect = links.iter().find_map(|l| l.defects.first().map(|d| (l.vertex, d.clone())));
    let empty_simplex = links.iter().filter(|l| l.defects.is_empty()).find_map(|l| {
        l.empty_simplex().map(|s| EmptySimplex {
            vertex: l.vertex,
            ends: s.iter().map(|&i| l.vertices[i]).collect(),
        })
    });
    NpcReport {
        npc: defect.is_none() && empty_simplex.is_none(),
        defect,
        empty_simplex,
    }
}
