//! Salvetti complexes and Davis chambers, their links and hyperplanes,
//! and the two standard failures of specialness.

use orthantkit::cube::{check_npc, check_weakly_special, davis_chamber, fixtures, hyperplanes, salvetti, vertex_link};
use orthantkit::graph::SimplicialGraph;

fn main() {
    let g = SimplicialGraph::cycle(4);
    let x = salvetti(&g);
    println!("Salvetti complex of C4: cells per dimension {:?}", x.counts());
    let link = vertex_link(&x, x.vertices()[0]);
    println!("  vertex link f-vector {:?}, flag {}", link.f_vector(), link.is_flag());
    for h in hyperplanes(&x) {
        println!("  hyperplane {} dual to {} edge(s), two-sided {}", h.id, h.edges.len(), h.two_sided);
    }
    println!("  weakly special: {}", check_weakly_special(&x).weakly_special);

    let k = davis_chamber(&SimplicialGraph::path(3)).unwrap();
    println!("Davis chamber of P3: cells per dimension {:?}", k.counts());
    println!("  weakly special: {}", check_weakly_special(&k).weakly_special);

    let klein = check_weakly_special(&fixtures::klein_bottle());
    println!("Klein bottle: one-sided hyperplanes {:?}", klein.one_sided);
    let hollow = check_npc(&fixtures::hollow_cube());
    if let Some(e) = hollow.empty_simplex {
        println!("hollow cube: vertex {} has an empty {}-simplex in its link", e.vertex, e.ends.len() - 1);
    }

    let json = serde_json::to_string(&x.to_json()).unwrap();
    println!("C4 Salvetti complex as JSON: {} bytes", json.len());
}
