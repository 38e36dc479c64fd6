// Compares exact verdicts and arc sets against a brute-force grid of
// directions.

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::oracle::cross_check_report;
use spindlekit::props::{check_exterior_sphere, check_spherically_supported};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.2), (0.4, 0.9), (-0.3, 0.6)])?;
    let tol = Tolerance::for_set(&set);
    for r in [0.5, 1.0, 2.0] {
        let support = check_spherically_supported(&set, r, &tol)?;
        let exterior = check_exterior_sphere(&set, r, &tol, 360)?;
        for report in [&support, &exterior] {
            let summary = cross_check_report(&set, report, 1440, 1e-3, &tol)?;
            println!(
                "{} r = {r}: {:?}, {} probes, {} near endpoints, agrees {}",
                report.property,
                report.verdict,
                summary.probes,
                summary.near_endpoint,
                summary.agrees()
            );
            assert!(summary.agrees());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
