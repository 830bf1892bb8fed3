//! Finite cube complexes given by explicit face gluings.
//!
//! An `n`-cube has `2n` codimension-1 face slots; slot `2c + s` is the face
//! `x_c = s`. Each slot names the `(n-1)`-cube it is glued to together with
//! a signed coordinate bijection, so loops, tori and other non-embedded
//! cells are representable. Cube ids are dense and grouped by dimension.

mod build;
pub mod fixtures;
mod hyperplane;
mod json;
mod link;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{cubical_subcomplex, davis_chamber, davis_chamber_with_bound, salvetti, DAVIS_VERTEX_BOUND};
pub use hyperplane::{
    check_weakly_special, hyperplanes, Hyperplane, HyperplaneIndex, SelfIntersection, SelfOsculation,
    SpecialnessReport,
};
pub use json::{ComplexJson, CubeEntry, GluingEntry};
pub use link::{check_npc, vertex_link, EmptySimplex, LinkDefect, NpcReport, VertexLink};

pub type CubeId = usize;

/// Where a coordinate of a face lands in the target cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCoord {
    pub coord: usize,
    /// The coordinate is reversed (`t -> 1 - t`).
    pub flip: bool,
}

impl SignedCoord {
    pub fn plain(coord: usize) -> Self {
        SignedCoord { coord, flip: false }
    }
}

/// Gluing of one face slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub target: CubeId,
    /// Image of the face's coordinates, listed in increasing order of the
    /// cube coordinates that remain free on the face.
    pub iso: Vec<SignedCoord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    pub dim: usize,
    pub faces: Vec<Face>,
}

/// One end of an edge: `end` is 0 for the `x = 0` endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: CubeId,
    pub end: u8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("unknown cube id {0}")]
    UnknownCube(CubeId),
    #[error("cube {cube} face slot {slot} is not glued")]
    MissingFace { cube: CubeId, slot: usize },
    #[error("cube {cube} face slot {slot} glued twice")]
    DuplicateFace { cube: CubeId, slot: usize },
    #[error("cube {cube} has no face slot {slot}")]
    SlotOutOfRange { cube: CubeId, slot: usize },
    #[error("cube {cube} face slot {slot} is glued to cube {to} of the wrong dimension")]
    FaceDimension { cube: CubeId, slot: usize, to: CubeId },
    #[error("cube {cube} face slot {slot} carries an invalid isometry")]
    BadIso { cube: CubeId, slot: usize },
    #[error("cube {cube}: faces x{c1}={s1} and x{c2}={s2} disagree on their common codimension-2 face")]
    CornerMismatch { cube: CubeId, c1: usize, s1: u8, c2: usize, s2: u8 },
    #[error("{n} coordinates exceed the bound of {bound}")]
    VertexBound { n: usize, bound: usize },
    #[error("complex would have {count} cells, more than the cap of {cap}")]
    TooManyCells { count: usize, cap: usize },
    #[error("cube {0} is not a vertex")]
    NotAVertex(CubeId),
    #[error("cube {0} is not an edge")]
    NotAnEdge(CubeId),
    #[error("edge labels disagree with hyperplanes: edges {0} and {1}")]
    LabelMismatch(CubeId, CubeId),
    #[error("edge orientations are not parallel along hyperplane of edge {0}")]
    OrientationMismatch(CubeId),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

/// A finite, well-formed cube complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeComplex {
    cubes: Vec<Cube>,
    by_dim: Vec<Vec<CubeId>>,
    /// Start of each cube's corners in `corner_vertex`, and of its
    /// edge-ends (`dim` per corner) in `corner_ends`.
    corner_offset: Vec<usize>,
    ends_offset: Vec<usize>,
    corner_vertex: Vec<CubeId>,
    corner_ends: Vec<EdgeEnd>,
    /// Per vertex: every `(cube, corner mask)` whose corner is that vertex.
    incidence: Vec<Vec<(CubeId, usize)>>,
    labels: Option<BTreeMap<CubeId, String>>,
    orientations: Option<BTreeMap<CubeId, i8>>,
}

/// Accumulates cubes and gluings before validation.
#[derive(Clone, Debug, Default)]
pub struct CubeComplexBuilder {
    dims: Vec<usize>,
    faces: Vec<Vec<Option<Face>>>,
    labels: Option<BTreeMap<CubeId, String>>,
    orientations: Option<BTreeMap<CubeId, i8>>,
}

impl CubeComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of cubes added so far; the next cube gets this id.
    pub fn cube_count(&self) -> usize {
        self.dims.len()
    }

    pub fn add_cube(&mut self, dim: usize) -> CubeId {
        self.dims.push(dim);
        self.faces.push(vec![None; 2 * dim]);
        self.dims.len() - 1
    }

    /// Glue face slot `slot` of `cube` to `to` via `iso`.
    pub fn glue(&mut self, cube: CubeId, slot: usize, to: CubeId, iso: Vec<SignedCoord>) -> Result<&mut Self, ComplexError> {
        let slots = self.faces.get_mut(cube).ok_or(ComplexError::UnknownCube(cube))?;
        let entry = slots.get_mut(slot).ok_or(ComplexError::SlotOutOfRange { cube, slot })?;
        if entry.is_some() {
            return Err(ComplexError::DuplicateFace { cube, slot });
        }
        *entry = Some(Face { target: to, iso });
        Ok(self)
    }

    /// Glue with the order-preserving, unflipped coordinate map.
    pub fn glue_plain(&mut self, cube: CubeId, slot: usize, to: CubeId) -> Result<&mut Self, ComplexError> {
        let n = self.dims.get(cube).copied().ok_or(ComplexError::UnknownCube(cube))?;
        let iso = (0..n.saturating_sub(1)).map(SignedCoord::plain).collect();
        self.glue(cube, slot, to, iso)
    }

    pub fn label(&mut self, edge: CubeId, label: impl Into<String>) -> &mut Self {
        self.labels.get_or_insert_with(BTreeMap::new).insert(edge, label.into());
        self
    }

    pub fn orient(&mut self, edge: CubeId, sign: i8) -> &mut Self {
        self.orientations.get_or_insert_with(BTreeMap::new).insert(edge, sign);
        self
    }

    /// Validate and freeze. Cubes are renumbered by `(dim, insertion id)`;
    /// the returned vector maps old ids to new ones.
    pub fn build_with_ids(mut self) -> Result<(CubeComplex, Vec<CubeId>), ComplexError> {
        let n = self.dims.len();
        let mut order: Vec<CubeId> = (0..n).collect();
        order.sort_by_key(|&i| (self.dims[i], i));
        let mut renum = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new;
        }
        let mut cubes = Vec::with_capacity(n);
        for &old in &order {
            let dim = self.dims[old];
            let mut faces = Vec::with_capacity(2 * dim);
            for (slot, f) in std::mem::take(&mut self.faces[old]).into_iter().enumerate() {
                let f = f.ok_or(ComplexError::MissingFace { cube: renum[old], slot })?;
                if f.target >= n {
                    return Err(ComplexError::UnknownCube(f.target));
                }
                if self.dims[f.target] + 1 != dim {
                    return Err(ComplexError::FaceDimension {
                        cube: renum[old],
                        slot,
                        to: renum[f.target],
                    });
                }
                let mut seen = vec![false; dim - 1];
                let ok = f.iso.len() == dim - 1
                    && f.iso.iter().all(|m| m.coord < dim - 1 && !std::mem::replace(&mut seen[m.coord], true));
                if !ok {
                    return Err(ComplexError::BadIso { cube: renum[old], slot });
                }
                faces.push(Face {
                    target: renum[f.target],
                    iso: f.iso,
                });
            }
            cubes.push(Cube { dim, faces });
        }
        let marked = self.labels.iter().flat_map(|m| m.keys()).chain(self.orientations.iter().flat_map(|m| m.keys()));
        for &e in marked {
            match self.dims.get(e) {
                None => return Err(ComplexError::UnknownCube(e)),
                Some(&d) if d != 1 => return Err(ComplexError::NotAnEdge(renum[e])),
                _ => {}
            }
        }
        fn remap<T>(m: Option<BTreeMap<CubeId, T>>, renum: &[CubeId]) -> Option<BTreeMap<CubeId, T>> {
            m.map(|m| m.into_iter().map(|(k, v)| (renum[k], v)).collect())
        }
        let labels = remap(self.labels, &renum);
        let orientations = remap(self.orientations, &renum);
        let x = CubeComplex::from_cubes(cubes, labels, orientations)?;
        Ok((x, renum))
    }

    pub fn build(self) -> Result<CubeComplex, ComplexError> {
        self.build_with_ids().map(|(x, _)| x)
    }
}

#[inline]
fn side(mask: usize, c: usize) -> u8 {
    (mask >> c & 1) as u8
}

/// Position of cube coordinate `x` among the free coordinates of the face
/// `x_c = const`.
#[inline]
fn face_index(c: usize, x: usize) -> usize {
    if x < c {
        x
    } else {
        x - 1
    }
}

impl CubeComplex {
    fn from_cubes(
        cubes: Vec<Cube>,
        labels: Option<BTreeMap<CubeId, String>>,
        orientations: Option<BTreeMap<CubeId, i8>>,
    ) -> Result<Self, ComplexError> {
        let top = cubes.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        for (i, c) in cubes.iter().enumerate() {
            by_dim[c.dim].push(i);
        }
        let mut x = CubeComplex {
            cubes,
            by_dim,
            corner_offset: Vec::new(),
            ends_offset: Vec::new(),
            corner_vertex: Vec::new(),
            corner_ends: Vec::new(),
            incidence: Vec::new(),
            labels,
            orientations,
        };
        x.check_corners_agree()?;
        x.compute_corners();
        x.incidence = vec![Vec::new(); x.cells(0).len()];
        for c in 0..x.cubes.len() {
            for mask in 0..1usize << x.cubes[c].dim {
                let v = x.corner_vertex(c, mask);
                x.incidence[v].push((c, mask));
            }
        }
        x.check_labels()?;
        x.check_orientations()?;
        Ok(x)
    }

    /// Restrict `cube` to the face where each `(coord, side)` of `fixed` is
    /// pinned. Returns the carrying cube and the image of the remaining
    /// free coordinates (in increasing order).
    pub fn restrict(&self, cube: CubeId, fixed: &[(usize, u8)]) -> (CubeId, Vec<SignedCoord>) {
        let Some((&(c, s), rest)) = fixed.split_first() else {
            let n = self.cubes[cube].dim;
            return (cube, (0..n).map(SignedCoord::plain).collect());
        };
        let f = &self.cubes[cube].faces[2 * c + s as usize];
        let map = |x: usize| f.iso[face_index(c, x)];
        let next: Vec<(usize, u8)> = rest
            .iter()
            .map(|&(x, sx)| {
                let m = map(x);
                (m.coord, sx ^ m.flip as u8)
            })
            .collect();
        let (t, sub) = self.restrict(f.target, &next);
        let tdim = self.cubes[f.target].dim;
        let t_free: Vec<usize> = (0..tdim).filter(|y| !next.iter().any(|&(z, _)| z == *y)).collect();
        let n = self.cubes[cube].dim;
        let iso = (0..n)
            .filter(|x| !fixed.iter().any(|&(z, _)| z == *x))
            .map(|x| {
                let m = map(x);
                let k = t_free.binary_search(&m.coord).expect("face coordinate is free");
                SignedCoord {
                    coord: sub[k].coord,
                    flip: sub[k].flip ^ m.flip,
                }
            })
            .collect();
        (t, iso)
    }

    fn check_corners_agree(&self) -> Result<(), ComplexError> {
        for (i, cube) in self.cubes.iter().enumerate() {
            for c1 in 0..cube.dim {
                for c2 in c1 + 1..cube.dim {
                    for s1 in 0..2 {
                        for s2 in 0..2 {
                            if !self.codim2_agrees(i, (c1, s1), (c2, s2)) {
                                return Err(ComplexError::CornerMismatch { cube: i, c1, s1, c2, s2 });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Face of `cube` at `a` then `b`, and the image of free coordinate
    /// `x`, computed through the two face gluings in that order.
    #[inline]
    fn through(&self, cube: CubeId, (ca, sa): (usize, u8), (cb, sb): (usize, u8), x: Option<usize>) -> (CubeId, SignedCoord) {
        let f = &self.cubes[cube].faces[2 * ca + sa as usize];
        let mb = f.iso[face_index(ca, cb)];
        let g = &self.cubes[f.target].faces[2 * mb.coord + (sb ^ mb.flip as u8) as usize];
        let image = x.map_or(SignedCoord::plain(0), |x| {
            let m1 = f.iso[face_index(ca, x)];
            let m2 = g.iso[face_index(mb.coord, m1.coord)];
            SignedCoord {
                coord: m2.coord,
                flip: m1.flip ^ m2.flip,
            }
        });
        (g.target, image)
    }

    fn codim2_agrees(&self, cube: CubeId, a: (usize, u8), b: (usize, u8)) -> bool {
        let n = self.cubes[cube].dim;
        if self.through(cube, a, b, None).0 != self.through(cube, b, a, None).0 {
            return false;
        }
        (0..n)
            .filter(|&x| x != a.0 && x != b.0)
            .all(|x| self.through(cube, a, b, Some(x)) == self.through(cube, b, a, Some(x)))
    }

    /// Vertex and edge-ends of every corner, bottom-up through the faces.
    fn compute_corners(&mut self) {
        let mut corner_total = 0;
        let mut ends_total = 0;
        for c in &self.cubes {
            self.corner_offset.push(corner_total);
            self.ends_offset.push(ends_total);
            corner_total += 1 << c.dim;
            ends_total += c.dim << c.dim;
        }
        let mut vertex_of = vec![0; corner_total];
        let mut ends_of = vec![EdgeEnd { edge: 0, end: 0 }; ends_total];
        for (n, layer) in self.by_dim.iter().enumerate() {
            for &id in layer {
                if n == 0 {
                    vertex_of[self.corner_offset[id]] = id;
                    continue;
                }
                for mask in 0..1usize << n {
                    let at = self.ends_offset[id] + mask * n;
                    // read off the corner inside the face through coordinate cp
                    let mut via = |cp: usize| {
                        let f = &self.cubes[id].faces[2 * cp + side(mask, cp) as usize];
                        let mut tmask = 0;
                        for x in (0..n).filter(|&x| x != cp) {
                            let m = f.iso[face_index(cp, x)];
                            tmask |= ((side(mask, x) ^ m.flip as u8) as usize) << m.coord;
                        }
                        let tat = self.ends_offset[f.target] + tmask * (n - 1);
                        for x in (0..n).filter(|&x| x != cp) {
                            ends_of[at + x] = ends_of[tat + f.iso[face_index(cp, x)].coord];
                        }
                        vertex_of[self.corner_offset[f.target] + tmask]
                    };
                    let vertex = via(0);
                    if n == 1 {
                        ends_of[at] = EdgeEnd { edge: id, end: side(mask, 0) };
                    } else {
                        via(1);
                    }
                    vertex_of[self.corner_offset[id] + mask] = vertex;
                }
            }
        }
        self.corner_vertex = vertex_of;
        self.corner_ends = ends_of;
    }

    fn check_labels(&self) -> Result<(), ComplexError> {
        let Some(labels) = &self.labels else { return Ok(()) };
        let index = HyperplaneIndex::new(self);
        let edges = self.edges();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                let same_label = labels.get(&e).is_some() && labels.get(&e) == labels.get(&f);
                if same_label != (index.class_of(e) == index.class_of(f)) {
                    return Err(ComplexError::LabelMismatch(e, f));
                }
            }
        }
        Ok(())
    }

    fn check_orientations(&self) -> Result<(), ComplexError> {
        let Some(or) = &self.orientations else { return Ok(()) };
        for &sq in self.cells(2) {
            for c in 0..2 {
                let (e0, m0) = self.face_edge(sq, c, 0);
                let (e1, m1) = self.face_edge(sq, c, 1);
                let o0 = or.get(&e0).copied().unwrap_or(1) * if m0 { -1 } else { 1 };
                let o1 = or.get(&e1).copied().unwrap_or(1) * if m1 { -1 } else { 1 };
                if o0 != o1 {
                    return Err(ComplexError::OrientationMismatch(e0));
                }
            }
        }
        Ok(())
    }

    /// Edge glued to face `x_c = s` of a square, and whether it runs against
    /// the square's other coordinate.
    pub(crate) fn face_edge(&self, square: CubeId, c: usize, s: u8) -> (CubeId, bool) {
        let f = &self.cubes[square].faces[2 * c + s as usize];
        (f.target, f.iso[0].flip)
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    pub fn cube(&self, id: CubeId) -> &Cube {
        &self.cubes[id]
    }

    pub fn dim_of(&self, id: CubeId) -> usize {
        self.cubes[id].dim
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Ids of all `k`-cubes, ascending.
    pub fn cells(&self, k: usize) -> &[CubeId] {
        self.by_dim.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> &[CubeId] {
        self.cells(0)
    }

    pub fn edges(&self) -> &[CubeId] {
        self.cells(1)
    }

    /// Cube counts indexed by dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Endpoints `(x=0, x=1)` of an edge.
    pub fn endpoints(&self, edge: CubeId) -> (CubeId, CubeId) {
        let f = &self.cubes[edge].faces;
        (f[0].target, f[1].target)
    }

    /// Vertex at an edge-end.
    pub fn end_vertex(&self, e: EdgeEnd) -> CubeId {
        self.cubes[e.edge].faces[e.end as usize].target
    }

    /// Vertex at corner `mask` of `cube` (bit `c` = side in coordinate `c`).
    pub fn corner_vertex(&self, cube: CubeId, mask: usize) -> CubeId {
        self.corner_vertex[self.corner_offset[cube] + mask]
    }

    /// Edge-ends leaving corner `mask` of `cube`, one per coordinate.
    pub fn corner_ends(&self, cube: CubeId, mask: usize) -> &[EdgeEnd] {
        let n = self.cubes[cube].dim;
        let at = self.ends_offset[cube] + mask * n;
        &self.corner_ends[at..at + n]
    }

    /// Every `(cube, corner mask)` sitting at vertex `v`, cubes ascending.
    pub fn corners_at(&self, v: CubeId) -> &[(CubeId, usize)] {
        self.incidence.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn labels(&self) -> Option<&BTreeMap<CubeId, String>> {
        self.labels.as_ref()
    }

    pub fn orientations(&self) -> Option<&BTreeMap<CubeId, i8>> {
        self.orientations.as_ref()
    }

    /// Face targets of `cube` in slot order (with repetition).
    pub fn face_targets(&self, cube: CubeId) -> impl Iterator<Item = CubeId> + '_ {
        self.cubes[cube].faces.iter().map(|f| f.target)
    }
}
