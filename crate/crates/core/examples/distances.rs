// Distance, projection and farthest-point queries against a finite set.

use spindlekit::geom::{
    diameter, distance_to_set, farthest_distance, farthest_points, projections, Point, PointSet,
    Tolerance,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])?;
    let tol = Tolerance::for_set(&set);
    let x = Point::xy(2.0, 0.0);

    let near = distance_to_set(&x, &set)?;
    let far = farthest_distance(&x, &set)?;
    println!(
        "d_S(x) = {near:.6}, farthest distance = {far:.6}, diam = {:.6}",
        diameter(&set)
    );
    assert!((near - 2f64.sqrt()).abs() < 1e-12);
    assert!((far - 10f64.sqrt()).abs() < 1e-12);

    // (2, 0) is equidistant from the two right-hand corners.
    let proj = projections(&x, &set, &tol)?;
    let anti = farthest_points(&x, &set, &tol)?;
    println!("projections: {proj:?}");
    println!("farthest points: {anti:?}");
    assert_eq!(proj.len(), 2);
    assert_eq!(anti.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
