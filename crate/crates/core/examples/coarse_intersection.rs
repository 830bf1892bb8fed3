//! Coarse intersections of standard flats and parallel transport of
//! cubes between them.

use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::{DevelopedBall, Raag, StandardSubcomplex};

fn main() {
    let g = SimplicialGraph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
    let raag = Raag::new(g.clone());
    let ball = DevelopedBall::new(&g, 3).unwrap();
    let ab = g.mask_of(&["a", "b"]).unwrap();
    let c1 = StandardSubcomplex::new(&raag, &raag.parse("").unwrap(), ab);
    let c2 = StandardSubcomplex::new(&raag, &raag.parse("c").unwrap(), ab);
    let ci = ball.coarse_intersection(&c1, &c2).unwrap();
    let names = |vs: &[usize]| vs.iter().map(|&v| raag.format(ball.vertex(v))).collect::<Vec<_>>();
    println!("{} vs {}: delta {}", c1.describe(&raag), c2.describe(&raag), ci.delta);
    println!("  Y1 {:?}", names(&ci.y1));
    println!("  Y2 {:?}", names(&ci.y2));

    let p = SimplicialGraph::path(3);
    let raag = Raag::new(p.clone());
    let ball = DevelopedBall::new(&p, 3).unwrap();
    let square = ball.cube_at(0, p.mask_of(&["a", "b"]).unwrap(), 0).unwrap();
    let path = raag.parse_word("c").unwrap();
    match ball.parallel_transport(square, &path) {
        Ok(t) => println!("square <a,b> transported along c: {} steps", t.strip.len()),
        Err(e) => println!("square <a,b> cannot move along c: {e}"),
    }
    let edge = ball.cube_at(0, p.mask_of(&["b"]).unwrap(), 0).unwrap();
    let t = ball.parallel_transport(edge, &raag.parse_word("a c").unwrap()).unwrap();
    println!("edge b transported along a c ends at base {}", raag.format(ball.vertex(t.end.base)));
}
