// Exact planar direction sets: far-realized, exterior-sphere and supporting
// normals at each point, as unions of closed arcs.

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::normals::{
    exterior_sphere_directions_2d, far_supported_directions_2d, supporting_directions_2d,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])?;
    let tol = Tolerance::for_set(&set);

    for (i, s) in set.iter().enumerate() {
        let far = far_supported_directions_2d(&set, s, 2.0, &tol)?;
        let ext = exterior_sphere_directions_2d(&set, s, 2.0, &tol)?;
        let sup = supporting_directions_2d(&set, s, &tol)?;
        println!(
            "point {i}: far {:?}, exterior {:?}, supporting {:?}",
            far.arcs(),
            ext.arcs(),
            sup.arcs()
        );
    }

    // The middle point only admits the two vertical normals.
    let mid = supporting_directions_2d(&set, set.get(1), &tol)?;
    assert_eq!(mid.arcs().len(), 2);
    assert!(mid.measure() < 1e-6);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
