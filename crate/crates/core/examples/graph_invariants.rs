//! Graph-level invariants: complement, join decomposition, property P_d,
//! top hyperoctahedra and galleries.

use orthantkit::graph::{
    complement_graph, find_top_hyperoctahedron, join_decomposition, property_pd, simplex_intersection_graph,
    FlagComplex, SimplicialGraph,
};

fn main() {
    let graphs = [
        ("P3", SimplicialGraph::path(3)),
        ("C4", SimplicialGraph::cycle(4)),
        ("C5", SimplicialGraph::cycle(5)),
        ("K2,2,2", SimplicialGraph::cocktail_party(3)),
    ];
    for (name, g) in &graphs {
        let flag = FlagComplex::new(g.clone());
        let join = join_decomposition(g).unwrap();
        println!("{name}: f-vector {:?}", flag.f_vector());
        println!("  complement edges {:?}", complement_graph(g).edge_names());
        println!("  join factors {:?}, clique factor {:?}", join.factors, join.clique_factor);
        for d in 1..=flag.top_size() {
            let r = property_pd(g, d).unwrap();
            let sig = simplex_intersection_graph(&flag, d);
            println!(
                "  P_{d}: {} (galleries {}, stars {}); intersection graph {} nodes, connected {}",
                r.holds,
                r.gallery_connected,
                r.star_condition,
                sig.vertex_count(),
                sig.is_connected()
            );
        }
        match find_top_hyperoctahedron(g) {
            Some(pairs) => println!("  top hyperoctahedron on pairs {pairs:?}"),
            None => println!("  no top hyperoctahedron"),
        }
    }

    let g = SimplicialGraph::cocktail_party(3);
    let flag = FlagComplex::new(g.clone());
    let tops = flag.top_simplices();
    if let Some(path) = flag.gallery(tops[0], tops[tops.len() - 1], 1) {
        println!("1-gallery across the octahedron: {} triangles", path.len());
    }
}
