// Boundary samples of an arc region are far realized by their outward
// normals.

use spindlekit::geom::{Point, Tolerance};
use spindlekit::props::check_thm33_shape;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let centers = [
        Point::xy(0.0, 0.0),
        Point::xy(0.6, 0.1),
        Point::xy(0.2, 0.5),
    ];
    let report = check_thm33_shape(&centers, 1.0, 128, &Tolerance::default())?;
    println!(
        "{} samples, verdict {:?}, worst margin {:?}",
        report.witnesses.len(),
        report.verdict,
        report.worst_margin
    );
    assert!(report.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
