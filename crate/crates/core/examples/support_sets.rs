//! Z/2 boundary matrices, top cycles, support sets and their links.

use orthantkit::cube::{fixtures, salvetti, vertex_link};
use orthantkit::graph::SimplicialGraph;
use orthantkit::homology::{boundary_matrices, link_support_check, support_link, support_set, vertex_antipode_check};

fn main() {
    let hollow = fixtures::hollow_cube();
    let c = boundary_matrices(&hollow);
    let basis = c.top_cycle_basis();
    println!("hollow cube: {} top cycle(s), first has {} squares", basis.len(), basis[0].len());
    let s = support_set(&c, &basis[0]).unwrap();
    println!("  support has {} cells", s.cells.len());
    print!("  boundary of squares as triplets:\n{}", c.to_triplets(2).unwrap());

    let g = SimplicialGraph::path(3);
    let x = salvetti(&g);
    let c = boundary_matrices(&x);
    let v = x.vertices()[0];
    let link = vertex_link(&x, v);
    for z in c.top_cycle_basis() {
        let s = support_set(&c, &z).unwrap();
        let check = link_support_check(&x, &s, v);
        let antipodes = vertex_antipode_check(&link, &support_link(&x, &link, &s)).unwrap();
        println!(
            "Salvetti(P3) cycle {z:?}: link support matches {}, antipodes {}",
            check.holds, antipodes.pass
        );
    }
}
