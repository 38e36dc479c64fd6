// Minimum-norm far normals (works in any dimension) and supporting
// directions from the linear program.

use spindlekit::geom::{Point, PointSet, Tolerance};
use spindlekit::normals::{
    min_norm_far_certificate, supporting_direction_lp, FarSolution, SupportSolution,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let square = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])?;
    let tol = Tolerance::for_set(&square);

    // At r = 1 the optimum has norm √2 > 1: no unit far normal exists.
    match min_norm_far_certificate(&square, square.get(0), 1.0, &tol)? {
        FarSolution::TooLarge { min_norm } => println!("r = 1: min norm {min_norm:.12}"),
        other => return Err(format!("unexpected {other:?}").into()),
    }
    // At the circumradius the normalized optimum is the diagonal.
    let r = 2f64.sqrt();
    if let FarSolution::Certified { certificate, .. } =
        min_norm_far_certificate(&square, square.get(0), r, &tol)?
    {
        println!("r = √2: direction {:?}", certificate.direction.coords());
    }

    let tetra = PointSet::new(vec![
        Point::new(vec![0.0, 0.0, 0.0])?,
        Point::new(vec![1.0, 0.0, 0.0])?,
        Point::new(vec![0.0, 1.0, 0.0])?,
        Point::new(vec![0.0, 0.0, 1.0])?,
    ])?;
    let tol3 = Tolerance::for_set(&tetra);
    match supporting_direction_lp(&tetra, tetra.get(0), &tol3)? {
        SupportSolution::Certified { certificate, delta } => {
            println!(
                "3D supporting direction {:?} (slack {delta:.3})",
                certificate.direction.coords()
            )
        }
        other => return Err(format!("unexpected {other:?}").into()),
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
