// Renders a certificate region with its dashed far balls and the
// supporting-direction sectors of each point.

use spindlekit::geom::{PointSet, Tolerance};
use spindlekit::normals::supporting_directions_2d;
use spindlekit::props::certify_thm32;
use spindlekit::region::BundleRegion;
use spindlekit::svg::{render_svg, PointArcs, Scene};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let set = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.5)])?;
    let tol = Tolerance::for_set(&set);
    let bundle = certify_thm32(&set, 1.5, &tol)?;

    let mut scene = Scene::with_set(&set);
    if let BundleRegion::Arcs { region } = &bundle.region {
        scene.region = Some(region.clone());
    }
    scene.circles = bundle.far_centers().into_iter().map(|c| (c, 1.5)).collect();
    for s in set.iter() {
        scene.arcs.push(PointArcs {
            base: s.clone(),
            arcs: supporting_directions_2d(&set, s, &tol)?,
        });
    }
    let svg = render_svg(&scene)?;
    assert_eq!(svg, render_svg(&scene)?);
    let path = std::env::temp_dir().join("spindlekit_scene.svg");
    std::fs::write(&path, &svg)?;
    println!("wrote {} ({} bytes)", path.display(), svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
