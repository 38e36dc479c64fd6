// Residuals of the inequalities relating far normals at radius r to far
// normals at a second radius R.

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::props::check_prop31;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)])?;
    let tol = Tolerance::for_set(&set);
    let report = check_prop31(&set, 1.0, &[1.0, 2.0], &tol)?;
    for summary in &report.per_radius {
        println!(
            "R = {}: {} pairs, max violations {:?}",
            summary.big_radius, summary.pairs, summary.max_violation
        );
    }
    println!("holds: {}", report.holds);
    assert!(report.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
