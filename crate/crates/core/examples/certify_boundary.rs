// Boundary certificates: a convex set from supporting half-spaces, and an
// arc region from far-realized normals, each containing S on its boundary.

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::props::{certify_thm31, certify_thm32};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])?;
    let tol = Tolerance::for_set(&set);

    let halfspaces = certify_thm31(&set, &tol)?;
    println!(
        "supporting bundle: {} normals, max residual {:e}, verified {}",
        halfspaces.certificates.len(),
        halfspaces.max_residual,
        halfspaces.verified
    );

    let arcs = certify_thm32(&set, 2f64.sqrt(), &tol)?;
    println!(
        "far bundle: centers {:?}, max residual {:e}, verified {}",
        arcs.far_centers(),
        arcs.max_residual,
        arcs.verified
    );
    assert!(halfspaces.verified && arcs.verified);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
