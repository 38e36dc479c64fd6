// Smallest radius at which a set is spherically supported.

use std::f64::consts::TAU;

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::props::threshold_scan;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rho = 3.0;
    let pts: Vec<(f64, f64)> = (0..12)
        .map(|i| {
            let t = TAU * i as f64 / 12.0;
            (rho * t.cos(), rho * t.sin())
        })
        .collect();
    let circle = PointSet::from_xy(&pts)?;
    let tol = Tolerance::for_set(&circle);
    let r = threshold_scan(&circle, 0.1, 100.0, 60, &tol)?.ok_or("never supported")?;
    println!("cocircular set of radius {rho}: threshold {r:.9}");
    assert!((r - rho).abs() < 1e-6);

    // An interior point is never supported, at any radius.
    let with_center =
        PointSet::from_xy(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.0, 0.0)])?;
    let none = threshold_scan(
        &with_center,
        0.1,
        100.0,
        60,
        &Tolerance::for_set(&with_center),
    )?;
    println!("with an interior point: {none:?}");
    assert!(none.is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
