use std::collections::HashMap;

use super::{ComplexError, CubeComplex, CubeComplexBuilder, CubeId};
use crate::graph::{members, FlagComplex, SimplicialGraph, VertexSet};

/// Default cap on the number of coordinates of a Davis chamber.
pub const DAVIS_VERTEX_BOUND: usize = 16;

/// Hard limit on the cell count of a cubical subcomplex.
const CELL_CAP: usize = 1 << 22;

/// One-vertex complex with a `k`-torus per `k`-clique. Edges are labelled by
/// their generator and oriented `+1`.
pub fn salvetti(g: &SimplicialGraph) -> CubeComplex {
    let flag = FlagComplex::new(g.clone());
    let mut b = CubeComplexBuilder::new();
    let v = b.add_cube(0);
    let mut ids: HashMap<VertexSet, CubeId> = HashMap::new();
    ids.insert(0, v);
    for k in 0..flag.top_size() {
        for &s in flag.simplices(k) {
            let id = b.add_cube(k + 1);
            ids.insert(s, id);
            for (c, x) in members(s).enumerate() {
                let face = ids[&(s & !(1 << x))];
                b.glue_plain(id, 2 * c, face).unwrap();
                b.glue_plain(id, 2 * c + 1, face).unwrap();
            }
            if k == 0 {
                b.label(id, g.name(members(s).next().unwrap())).orient(id, 1);
            }
        }
    }
    b.build().expect("torus gluings are well formed")
}

/// Subcomplex of `[0,1]^n` made of the faces whose free-coordinate set
/// passes `accept`. `accept` must be closed under subsets and accept the
/// empty set.
pub fn cubical_subcomplex(n: usize, accept: impl Fn(VertexSet) -> bool) -> Result<CubeComplex, ComplexError> {
    assert!(n < 64);
    let mut free_sets: Vec<VertexSet> = (0..1u64 << n).filter(|&f| accept(f)).collect();
    free_sets.sort_by_key(|&f| (f.count_ones(), members(f).collect::<Vec<_>>()));
    let count: usize = free_sets.iter().map(|f| 1usize << (n - f.count_ones() as usize)).sum();
    if count > CELL_CAP {
        return Err(ComplexError::TooManyCells { count, cap: CELL_CAP });
    }
    let all = (1u64 << n) - 1;
    // cubes with free set `f` get consecutive ids from `base[f]`, ordered
    // by the submask of fixed coordinates set to 1
    let mut base: HashMap<VertexSet, CubeId> = HashMap::with_capacity(free_sets.len());
    let mut b = CubeComplexBuilder::new();
    for &f in &free_sets {
        let fixed = all & !f;
        base.insert(f, b.cube_count());
        let faces: Vec<(usize, CubeId)> = members(f)
            .map(|x| {
                let lower = f & !(1 << x);
                let start = *base.get(&lower).expect("accept must be closed under subsets");
                (x, start)
            })
            .collect();
        let mut sub = 0u64;
        loop {
            let id = b.add_cube(f.count_ones() as usize);
            for (c, &(x, start)) in faces.iter().enumerate() {
                let lower_fixed = fixed | 1 << x;
                b.glue_plain(id, 2 * c, start + compress(sub, lower_fixed))?;
                b.glue_plain(id, 2 * c + 1, start + compress(sub | 1 << x, lower_fixed))?;
            }
            if sub == fixed {
                break;
            }
            sub = (sub | !fixed).wrapping_add(1) & fixed;
        }
    }
    b.build()
}

/// Bits of `a` at the positions of `mask`, packed to the low end.
fn compress(a: u64, mask: u64) -> usize {
    let mut out = 0;
    for (i, x) in members(mask).enumerate() {
        out |= ((a >> x & 1) as usize) << i;
    }
    out
}

/// The Davis chamber: faces of `[0,1]^V` whose free coordinates form a
/// clique of `g`.
pub fn davis_chamber(g: &SimplicialGraph) -> Result<CubeComplex, ComplexError> {
    davis_chamber_with_bound(g, DAVIS_VERTEX_BOUND)
}

pub fn davis_chamber_with_bound(g: &SimplicialGraph, bound: usize) -> Result<CubeComplex, ComplexError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(ComplexError::VertexBound { n, bound });
    }
    cubical_subcomplex(n, |f| g.is_clique(f))
}
