use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{HomologyError, SupportSet};
use crate::cube::{CubeComplex, CubeId, VertexLink};

/// Outcome of comparing the link of a support set with the support of the
/// induced cycle in the link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinkSupportReport {
    pub vertex: CubeId,
    pub holds: bool,
    /// The induced top chain of the link has zero boundary.
    pub induced_is_cycle: bool,
    /// Simplices of the link of `v` inside the support set.
    pub support_link: Vec<Vec<usize>>,
    /// Simplices of the closure of the induced link cycle.
    pub induced_support: Vec<Vec<usize>>,
}

fn corner_simplex(x: &CubeComplex, link: &VertexLink, cube: CubeId, mask: usize) -> Vec<usize> {
    let mut s: Vec<usize> = x
        .corner_ends(cube, mask)
        .iter()
        .map(|&e| link.index_of(e).expect("edge-end at this vertex"))
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Link simplices at `v` spanned by the corners of cells in `support`.
pub fn support_link(x: &CubeComplex, link: &VertexLink, support: &SupportSet) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = x
        .corners_at(link.vertex)
        .iter()
        .filter(|&&(c, _)| x.dim_of(c) > 0 && support.contains(c))
        .map(|&(c, m)| corner_simplex(x, link, c, m))
        .collect();
    set.into_iter().collect()
}

/// Every nonempty face of each simplex.
fn closure(simplices: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for s in simplices {
        for mask in 1u64..1 << s.len() {
            out.insert(s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    out
}

pub fn link_support_check(x: &CubeComplex, support: &SupportSet, v: CubeId) -> LinkSupportReport {
    let link = VertexLink::new(x, v);
    let support_link = support_link(x, &link, support);

    // Mod-2 sum of the corner simplices of the cycle's cells at v.
    let mut induced: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    for &(c, m) in x.corners_at(v) {
        if x.dim_of(c) > 0 && support.cycle.binary_search(&c).is_ok() {
            *induced.entry(corner_simplex(x, &link, c, m)).or_default() ^= true;
        }
    }
    let induced: Vec<Vec<usize>> = induced.into_iter().filter(|&(_, odd)| odd).map(|(s, _)| s).collect();

    let mut boundary: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    for s in induced.iter().filter(|s| s.len() > 1) {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            *boundary.entry(f).or_default() ^= true;
        }
    }
    let induced_is_cycle = boundary.values().all(|&odd| !odd);
    let induced_support: Vec<Vec<usize>> = closure(induced).into_iter().collect();
    LinkSupportReport {
        vertex: v,
        holds: induced_is_cycle && support_link == induced_support,
        induced_is_cycle,
        support_link,
        induced_support,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexAntipodes {
    pub vertex: usize,
    /// Support vertices not adjacent to `vertex` in the link.
    pub antipodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AntipodeReport {
    pub pass: bool,
    pub vertices: Vec<VertexAntipodes>,
}

impl AntipodeReport {
    pub fn failures(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().filter(|v| v.antipodes.is_empty()).map(|v| v.vertex)
    }
}

/// For each vertex of the support subcomplex, the other support vertices
/// at angle `π` from it, which in a flag link are the non-adjacent ones.
pub fn vertex_antipode_check(link: &VertexLink, support: &[Vec<usize>]) -> Result<AntipodeReport, HomologyError> {
    if !link.is_flag() {
        return Err(HomologyError::FlagPreconditionFailed(link.vertex));
    }
    let verts: BTreeSet<usize> = support.iter().flatten().copied().collect();
    let vertices: Vec<VertexAntipodes> = verts
        .iter()
        .map(|&v| VertexAntipodes {
            vertex: v,
            antipodes: verts.iter().copied().filter(|&u| u != v && !link.adjacent(u, v)).collect(),
        })
        .collect();
    Ok(AntipodeReport {
        pass: vertices.iter().all(|v| !v.antipodes.is_empty()),
        vertices,
    })
}

/// Type of a barycenter direction in the all-right model simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaModType {
    pub cell_dimension: usize,
}

impl DeltaModType {
    /// Type of the barycenter of a simplex given by its vertex list.
    pub fn of_simplex(s: &[usize]) -> Self {
        assert!(!s.is_empty(), "a simplex has at least one vertex");
        DeltaModType {
            cell_dimension: s.len() - 1,
        }
    }

    /// Image under the canonical embedding into a model simplex of
    /// dimension `k`; the type does not change.
    pub fn embed(self, k: usize) -> Self {
        assert!(self.cell_dimension <= k, "cannot embed into a smaller model simplex");
        self
    }
}

/// Type of the barycenter of `cell`.
pub fn theta(x: &CubeComplex, cell: CubeId) -> DeltaModType {
    DeltaModType {
        cell_dimension: x.dim_of(cell),
    }
}
