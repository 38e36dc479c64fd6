// Intersections of equal disks as arc regions, farthest distances and
// ball-hull membership.

use spindlekit::geom::{Point, PointSet, Tolerance};
use spindlekit::region::{
    ball_hull_membership, ball_intersection_2d, region_farthest_distance, Membership,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let lens = ball_intersection_2d(&[Point::xy(0.0, 0.0), Point::xy(1.0, 0.0)], 1.0, &tol)?;
    for v in lens.vertices() {
        println!("lens vertex ({:.10}, {:.10})", v.x(), v.y());
    }
    let far = region_farthest_distance(&lens, &Point::xy(0.5, 0.0))?;
    println!("farthest distance from (0.5, 0) = {far:.10}");
    assert!((far - 0.75f64.sqrt()).abs() < 1e-9);

    let set = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])?;
    let inside = ball_hull_membership(&set, 2.0, &Point::xy(0.0, 0.0), &tol)?;
    let corner = ball_hull_membership(&set, 2.0, &Point::xy(1.0, 1.0), &tol)?;
    let outside = ball_hull_membership(&set, 2.0, &Point::xy(0.0, 1.5), &tol)?;
    println!("origin {inside:?}, corner {corner:?}, (0, 1.5) {outside:?}");
    assert_eq!(inside, Membership::Interior);
    assert_eq!(corner, Membership::Boundary);
    assert_eq!(outside, Membership::Outside);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
