//! Periodic rays, their angles, orthants they span and doubling across
//! mirrors.

use orthantkit::graph::SimplicialGraph;
use orthantkit::raag::{DevelopedBall, PeriodicRay};

fn main() {
    let g = SimplicialGraph::path(3);
    let ball = DevelopedBall::new(&g, 4).unwrap();
    let raag = ball.raag();
    let b = PeriodicRay::parse(raag, "1", "", "b").unwrap();
    let ac = PeriodicRay::parse(raag, "1", "", "a c").unwrap();
    println!("angle(b^inf, (ac)^inf) = {:?}", raag.ray_angle_class(&b, &ac, 16).unwrap());

    let quadrant = ball.span_orthant(&[b, ac], 16).unwrap();
    println!("quadrant: {} points, cells {:?}", quadrant.points.len(), quadrant.cell_counts());
    let half = ball.double_orthant(&quadrant, 0, 16).unwrap();
    println!("doubled along b: {} points", half.points.len());
    let plane = ball.double_orthant(&half, 1, 16).unwrap();
    println!("doubled along both: {} points, cells {:?}", plane.points.len(), plane.cell_counts());

    let c = PeriodicRay::parse(raag, "1", "", "c").unwrap();
    let a = PeriodicRay::parse(raag, "1", "", "a").unwrap();
    match ball.span_orthant(&[a, c], 16) {
        Ok(_) => println!("a and c span a quadrant"),
        Err(e) => println!("a and c: {e}"),
    }
}
