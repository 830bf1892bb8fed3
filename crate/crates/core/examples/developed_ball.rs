//! Develop a ball in the universal cover and query it: normal forms,
//! walls, intervals, medians and gates.

use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::growth::sphere_sizes;
use orthantkit::raag::{DevelopedBall, Raag, StandardSubcomplex};

fn main() {
    let g = SimplicialGraph::path(3);
    let raag = Raag::new(g.clone());
    let w = raag.parse_word("c b a c^-1 b^-1").unwrap();
    println!("canonical form of c b a c^-1 b^-1: {}", raag.format(&raag.canonicalize(&w)));

    let ball = DevelopedBall::new(&g, 3).unwrap();
    println!("radius-3 ball of X(P3): cells {:?}, walls {}", ball.counts(), ball.wall_count());
    println!("sphere sizes {:?}", sphere_sizes(&g, 3));

    let at = |s: &str| ball.require(&raag.parse(s).unwrap()).unwrap();
    let (x, y, z) = (at("a b"), at("c"), at("b^-1 a"));
    let m = ball.median(x, y, z).unwrap();
    println!("median(a b, c, b^-1 a) = {}", raag.format(ball.vertex(m)));
    println!("interval I(a b, c) has {} vertices", ball.interval(x, y).unwrap().len());
    println!("walls separating a b from c: {}", ball.crossing_walls(x, y).len());

    let flat = StandardSubcomplex::new(&raag, &raag.parse("c").unwrap(), 0b011);
    let gate = ball.gate(at("a c b^-1"), &flat).unwrap();
    println!("gate of a c b^-1 on {} = {}", flat.describe(&raag), raag.format(ball.vertex(gate)));
}
