//! Cellular chain complexes over Z/2 for finite cube complexes.

mod link;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{CubeComplex, CubeId};

pub use link::{
    link_support_check, support_link, theta, vertex_antipode_check, AntipodeReport, DeltaModType, LinkSupportReport,
    VertexAntipodes,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("chain is not a cycle: its boundary meets cells {0:?}")]
    NotACycle(Vec<CubeId>),
    #[error("cell {0} is not a top-dimensional cell")]
    NotTopCell(CubeId),
    #[error("link of vertex {0} is not a flag complex")]
    FlagPreconditionFailed(CubeId),
}

/// Bit vector packed 64 entries per word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Matrix over Z/2 stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Gf2Matrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.columns[j].get(i)
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows);
        for j in v.ones() {
            out.xor_assign(&self.columns[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Gf2Matrix) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.rows, other.columns.iter().map(|c| self.apply(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BitVec::is_zero)
    }

    /// Column reduction in column order, pivoting on the lowest nonzero
    /// row. Returns the kernel basis (as combinations of columns) and the
    /// rank.
    fn reduce(&self) -> (Vec<BitVec>, usize) {
        let n = self.columns.len();
        let mut pivots: Vec<Option<(BitVec, BitVec)>> = vec![None; self.rows];
        let mut kernel = Vec::new();
        let mut rank = 0;
        for j in 0..n {
            let mut col = self.columns[j].clone();
            let mut tag = BitVec::zeros(n);
            tag.flip(j);
            while let Some(p) = col.first_one() {
                match &pivots[p] {
                    Some((pc, pt)) => {
                        col.xor_assign(pc);
                        tag.xor_assign(pt);
                    }
                    None => break,
                }
            }
            match col.first_one() {
                Some(p) => {
                    pivots[p] = Some((col, tag));
                    rank += 1;
                }
                None => kernel.push(tag),
            }
        }
        (kernel, rank)
    }

    pub fn kernel_basis(&self) -> Vec<BitVec> {
        self.reduce().0
    }

    pub fn rank(&self) -> usize {
        self.reduce().1
    }

    /// Sparse triplet text: one `row col` pair per nonzero entry.
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        for (j, c) in self.columns.iter().enumerate() {
            for i in c.ones() {
                let _ = writeln!(s, "{i} {j}");
            }
        }
        s
    }
}

/// A set of cells with coefficient 1, sorted.
pub type Chain = Vec<CubeId>;

/// The cellular chain complex of a cube complex over Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2ChainComplex {
    /// Cells of each dimension in id order.
    cells: Vec<Vec<CubeId>>,
    /// `boundaries[k]` maps `k`-chains to `(k-1)`-chains; `boundaries[0]`
    /// is the zero map to nothing.
    boundaries: Vec<Gf2Matrix>,
    /// Distinct faces of each cell.
    faces: Vec<Vec<CubeId>>,
    dims: Vec<usize>,
    /// Position of each cell within its dimension.
    position: Vec<usize>,
}

pub fn boundary_matrices(x: &CubeComplex) -> Gf2ChainComplex {
    let top = x.dimension().map_or(0, |d| d + 1);
    let cells: Vec<Vec<CubeId>> = (0..top).map(|k| x.cells(k).to_vec()).collect();
    let mut position = vec![0; x.cube_count()];
    for layer in &cells {
        for (i, &c) in layer.iter().enumerate() {
            position[c] = i;
        }
    }
    let boundaries = (0..top)
        .map(|k| {
            let rows = if k == 0 { 0 } else { cells[k - 1].len() };
            let columns = cells[k]
                .iter()
                .map(|&c| BitVec::from_ones(rows, x.face_targets(c).map(|f| position[f])))
                .collect();
            Gf2Matrix::from_columns(rows, columns)
        })
        .collect();
    let faces = (0..x.cube_count())
        .map(|c| {
            let f: BTreeSet<CubeId> = x.face_targets(c).collect();
            f.into_iter().collect()
        })
        .collect();
    Gf2ChainComplex {
        cells,
        boundaries,
        faces,
        dims: (0..x.cube_count()).map(|c| x.dim_of(c)).collect(),
        position,
    }
}

impl Gf2ChainComplex {
    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, k: usize) -> &[CubeId] {
        self.cells.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `∂_k`, with rows indexed by `cells(k - 1)` and columns by `cells(k)`.
    pub fn boundary(&self, k: usize) -> Option<&Gf2Matrix> {
        self.boundaries.get(k)
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn is_chain_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|k| self.boundaries[k - 1].compose(&self.boundaries[k]).is_zero())
    }

    pub fn to_vector(&self, k: usize, chain: &[CubeId]) -> BitVec {
        BitVec::from_ones(self.cells(k).len(), chain.iter().map(|&c| self.position[c]))
    }

    pub fn to_chain(&self, k: usize, v: &BitVec) -> Chain {
        v.ones().map(|i| self.cells[k][i]).collect()
    }

    /// Boundary of a `k`-chain, as a `(k-1)`-chain.
    pub fn boundary_of(&self, k: usize, chain: &[CubeId]) -> Chain {
        if k == 0 {
            return Vec::new();
        }
        let v = self.boundaries[k].apply(&self.to_vector(k, chain));
        self.to_chain(k - 1, &v)
    }

    /// Basis of the top-dimensional cycles.
    pub fn top_cycle_basis(&self) -> Vec<Chain> {
        let Some(top) = self.dimension() else {
            return Vec::new();
        };
        self.boundaries[top]
            .kernel_basis()
            .iter()
            .map(|v| self.to_chain(top, v))
            .collect()
    }

    pub fn faces_of(&self, cell: CubeId) -> &[CubeId] {
        &self.faces[cell]
    }

    pub fn dim_of(&self, cell: CubeId) -> usize {
        self.dims[cell]
    }

    /// Matrix exports for every boundary map of positive degree.
    pub fn to_triplets(&self, k: usize) -> Option<String> {
        self.boundaries.get(k).map(Gf2Matrix::to_triplets)
    }
}

/// The subcomplex carried by a top-dimensional cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SupportSet {
    pub cycle: Chain,
    /// Cells of the cycle and all their faces, sorted.
    pub cells: Vec<CubeId>,
}

impl SupportSet {
    pub fn contains(&self, cell: CubeId) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

pub fn support_set(c: &Gf2ChainComplex, z: &[CubeId]) -> Result<SupportSet, HomologyError> {
    let top = c.dimension().unwrap_or(0);
    if let Some(&bad) = z.iter().find(|&&cell| cell >= c.dims.len() || c.dims[cell] != top) {
        return Err(HomologyError::NotTopCell(bad));
    }
    let mut cycle: Vec<CubeId> = z.to_vec();
    cycle.sort_unstable();
    cycle.dedup();
    let b = c.boundary_of(top, &cycle);
    if !b.is_empty() {
        return Err(HomologyError::NotACycle(b));
    }
    let mut cells: BTreeSet<CubeId> = BTreeSet::new();
    let mut stack = cycle.clone();
    while let Some(cell) = stack.pop() {
        if cells.insert(cell) {
            stack.extend_from_slice(c.faces_of(cell));
        }
    }
    Ok(SupportSet {
        cycle,
        cells: cells.into_iter().collect(),
    })
}
