//! Flat-intersection graphs, the diameter classifier and the join
//! witness.

use orthantkit::flats::{ball_flat_graph, g1_classifier, gsd_report, join_witness, local_flat_graph, WitnessOutcome};
use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::{DevelopedBall, Raag};

fn main() {
    let g = SimplicialGraph::cycle(5);
    let raag = Raag::new(g.clone());
    let local = local_flat_graph(&g, 1).unwrap();
    println!("flats through the identity in X(C5): {}, degrees {:?}", local.node_count(), local.degrees());

    let ball = DevelopedBall::new(&g, 2).unwrap();
    let fg = ball_flat_graph(&ball, 1).unwrap();
    println!(
        "flats meeting the radius-2 ball: {}, {} adjacencies, {} undecided pairs",
        fg.node_count(),
        fg.edges.len(),
        fg.undecided
    );
    println!("{}", local.to_dot(&raag, "local"));

    println!("G_1(C5) connectivity: {:?}", gsd_report(&g, 1).unwrap());
    println!("G_1(C5) class: {:?}", g1_classifier(&g).unwrap());
    if let WitnessOutcome::Witness(w) = join_witness(&g).unwrap() {
        println!("walk {:?}, W' of length {}, separated {}", w.walk, w.w_prime_length, w.separation_verified);
    }
    println!("G_1(C4) class: {:?}", g1_classifier(&SimplicialGraph::cycle(4)).unwrap());
}
