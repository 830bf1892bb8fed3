//! Small hand-built complexes used as positive and negative controls.

use super::{cubical_subcomplex, CubeComplex, CubeComplexBuilder, SignedCoord};

/// The full cube `[0,1]^n` with all its faces.
pub fn solid_cube(n: usize) -> CubeComplex {
    cubical_subcomplex(n, |_| true).expect("small cube")
}

/// A single embedded square.
pub fn single_square() -> CubeComplex {
    solid_cube(2)
}

/// Boundary surface of the 3-cube: six squares, no solid cube. Its vertex
/// links are empty triangles, so it is not non-positively curved.
pub fn hollow_cube() -> CubeComplex {
    cubical_subcomplex(3, |f| f.count_ones() <= 2).expect("small cube")
}

/// One vertex, loops `a` and `b`, one square attached along `a b a b^-1`.
/// The hyperplane dual to `a` is one-sided.
pub fn klein_bottle() -> CubeComplex {
    let mut b = CubeComplexBuilder::new();
    let v = b.add_cube(0);
    let ea = b.add_cube(1);
    let eb = b.add_cube(1);
    for e in [ea, eb] {
        b.glue_plain(e, 0, v).unwrap();
        b.glue_plain(e, 1, v).unwrap();
    }
    let sq = b.add_cube(2);
    b.glue_plain(sq, 0, eb).unwrap();
    b.glue_plain(sq, 1, eb).unwrap();
    b.glue_plain(sq, 2, ea).unwrap();
    b.glue(sq, 3, ea, vec![SignedCoord { coord: 0, flip: true }]).unwrap();
    b.label(ea, "a").label(eb, "b");
    b.build().expect("klein bottle is well formed")
}
