//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{SQRT_2, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spindlekit::geom::{Point, PointSet, Tolerance};
use spindlekit::normals::CertificateKind;
use spindlekit::oracle::{cross_check_report, probe_agreement, OracleSummary};
use spindlekit::props::{
    certify_thm31, certify_thm32, check_exterior_infty, check_exterior_sphere, check_prop31,
    check_spherically_supported, check_thm33_shape, default_big_radii, oracle_direction_grid,
    threshold_scan, PropertyReport, Verdict,
};
use spindlekit::region::{ball_intersection_2d, region_farthest_distance, BundleRegion};

const EXCLUSION: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn cocircular(k: usize, rho: f64) -> PointSet {
    let pts: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let t = TAU * i as f64 / k as f64;
            (rho * t.cos(), rho * t.sin())
        })
        .collect();
    PointSet::from_xy(&pts).unwrap()
}

fn random_set(rng: &mut ChaCha8Rng) -> PointSet {
    let n = rng.random_range(5..=15);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect();
    PointSet::from_xy(&pts).unwrap()
}

fn random_sets() -> Vec<PointSet> {
    (0..200)
        .map(|i| random_set(&mut ChaCha8Rng::seed_from_u64(i)))
        .collect()
}

/// Random arc regions: 2 to 5 centers inside the disk of radius `r/2`.
fn random_shapes() -> Vec<(Vec<Point>, f64)> {
    (0..20)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
            let r = if i % 2 == 0 { 1.0 } else { 2.0 };
            let k = rng.random_range(2..=5);
            let centers = (0..k)
                .map(|_| {
                    let rad = 0.5 * r * rng.random_range(0.0f64..1.0).sqrt();
                    let t = rng.random_range(0.0..TAU);
                    Point::xy(rad * t.cos(), rad * t.sin())
                })
                .collect();
            (centers, r)
        })
        .collect()
}

fn oracle(set: &PointSet, report: &PropertyReport, m: usize, acc: &mut OracleSummary) {
    let tol = Tolerance::for_set(set);
    acc.merge(&cross_check_report(set, report, m, EXCLUSION, &tol).unwrap());
}

fn criterion1(acc: &mut OracleSummary) -> Outcome {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    let mut reports = Vec::new();
    for k in [6, 12, 48] {
        for rho in [0.5, 1.0, 3.0] {
            let set = cocircular(k, rho);
            let tol = Tolerance::for_set(&set);
            match threshold_scan(&set, 0.5 * rho, 2.0 * rho, 40, &tol).unwrap() {
                Some(r) => worst = worst.max((r - rho).abs()),
                None => bad.push(format!("k={k} rho={rho}: no threshold")),
            }
            let below = check_spherically_supported(&set, 0.999 * rho, &tol).unwrap();
            let above = check_spherically_supported(&set, 1.001 * rho, &tol).unwrap();
            if below.verdict != Verdict::Fails || above.verdict != Verdict::Holds {
                bad.push(format!(
                    "k={k} rho={rho}: {:?}/{:?}",
                    below.verdict, above.verdict
                ));
            }
            reports.push((set, below, above));
        }
    }
    let elapsed = started.elapsed();
    for (set, below, above) in &reports {
        oracle(set, below, 360, acc);
        oracle(set, above, 360, acc);
    }
    outcome(
        worst <= 1e-6 && bad.is_empty() && elapsed < Duration::from_secs(1),
        format!("max |r* - rho| = {worst:.2e}, bracket failures {bad:?}, {elapsed:.2?}"),
    )
}

fn criterion2(acc: &mut OracleSummary) -> Outcome {
    let set = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]).unwrap();
    let tol = Tolerance::for_set(&set);
    let r_star = threshold_scan(&set, 1.0, 2.0, 40, &tol)
        .unwrap()
        .unwrap_or(f64::NAN);
    let report = check_spherically_supported(&set, SQRT_2, &tol).unwrap();
    let diag_err = report
        .witnesses
        .iter()
        .map(|w| match &w.certificate {
            Some(c) => {
                let s = set.get(w.index);
                let z = c.direction.coords();
                ((z[0] - s.x() / SQRT_2).abs()).max((z[1] - s.y() / SQRT_2).abs())
            }
            None => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let bundle = certify_thm32(&set, SQRT_2, &tol).unwrap();
    let disk = match &bundle.region {
        BundleRegion::Arcs { region } => {
            region.is_full_disk()
                && region.boundary[0].center.dist(&Point::xy(0.0, 0.0)) <= 1e-9
                && (region.radius - SQRT_2).abs() <= 1e-12
        }
        BundleRegion::HalfSpaces { .. } => false,
    };
    let grid_ok = set.iter().all(|s| {
        oracle_direction_grid(&set, s, SQRT_2, CertificateKind::FarRealized, 1440, &tol)
            .unwrap()
            .is_some()
    });
    let mut local = OracleSummary::default();
    oracle(&set, &report, 1440, &mut local);
    acc.merge(&local);
    outcome(
        (r_star - SQRT_2).abs() <= 1e-6
            && diag_err <= 1e-9
            && disk
            && bundle.max_residual <= 1e-9
            && grid_ok
            && local.agrees(),
        format!(
            "r* = {r_star:.12}, diagonal error {diag_err:.1e}, A = disk(0, sqrt2) {disk}, \
             max residual {:.1e}, 1440-grid finds all normals {grid_ok}",
            bundle.max_residual
        ),
    )
}

fn criterion3() -> Outcome {
    let set = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
    let tol = Tolerance::for_set(&set);
    let started = Instant::now();
    let report = check_prop31(&set, 1.0, &[1.0], &tol).unwrap();
    let elapsed = started.elapsed();
    let worst = report
        .residuals
        .iter()
        .map(|p| p.ii.abs().max(p.iii.abs()).max(p.iv.abs()))
        .fold(0.0, f64::max);
    outcome(
        !report.residuals.is_empty() && worst <= 1e-12 && elapsed < Duration::from_millis(10),
        format!(
            "{} residual triples, max |residual| {worst:.1e}, {elapsed:.2?}",
            report.residuals.len()
        ),
    )
}

fn criterion4_5(sets: &[PointSet], acc: &mut OracleSummary) -> (Outcome, Outcome) {
    let started = Instant::now();
    let mut violations = [0usize; 4];
    let mut supported = 0;
    let mut prop31_worst: f64 = f64::NEG_INFINITY;
    let mut thm31 = (0usize, 0.0f64, 0usize);
    let mut thm32 = (0usize, 0.0f64, 0usize);
    let radii = [0.5, 1.0, 2.0, 5.0];
    let mut oracle_reports = Vec::new();
    for set in sets {
        let tol = Tolerance::for_set(set);
        let infty = check_exterior_infty(set, &tol).unwrap();
        if infty.holds() {
            thm31.0 += 1;
            match certify_thm31(set, &tol) {
                Ok(b) => thm31.1 = thm31.1.max(b.max_residual),
                Err(_) => thm31.2 += 1,
            }
        }
        let mut previous_holds = false;
        for &r in &radii {
            let sph = check_spherically_supported(set, r, &tol).unwrap();
            // (c) far sets only grow with the radius.
            if previous_holds && !sph.holds() {
                violations[2] += 1;
            }
            previous_holds = sph.holds();
            if sph.holds() {
                supported += 1;
                for rho in [0.1, 1.0, 10.0] {
                    let ext = check_exterior_sphere(set, rho, &tol, 360).unwrap();
                    if !ext.holds() {
                        violations[0] += 1;
                    }
                    if rho == 1.0 {
                        oracle_reports.push((set, ext));
                    }
                }
                if !infty.holds() {
                    violations[1] += 1;
                }
                let p31 = check_prop31(set, r, &default_big_radii(r), &tol).unwrap();
                let worst = p31.max_violation.ii.max(p31.max_violation.iii);
                prop31_worst = prop31_worst.max(worst);
                if worst > 1e-8 {
                    violations[3] += 1;
                }
                thm32.0 += 1;
                match certify_thm32(set, r, &tol) {
                    Ok(b) => thm32.1 = thm32.1.max(b.max_residual),
                    Err(_) => thm32.2 += 1,
                }
            }
            oracle_reports.push((set, sph));
        }
        oracle_reports.push((set, infty));
    }
    let elapsed = started.elapsed();
    for (set, report) in &oracle_reports {
        oracle(set, report, 360, acc);
    }
    let c4 = outcome(
        violations.iter().all(|&v| v == 0) && elapsed < Duration::from_secs(30),
        format!(
            "{} sets x {} radii, {supported} supported cases, violations (a) {} (b) {} (c) {} (d) {}, \
             max (ii)/(iii) residual {prop31_worst:.1e}, {elapsed:.2?}",
            sets.len(),
            radii.len(),
            violations[0],
            violations[1],
            violations[2],
            violations[3]
        ),
    );
    let c5 = outcome(
        thm31.2 == 0 && thm32.2 == 0 && thm31.1 <= 1e-8 && thm32.1 <= 1e-8,
        format!(
            "supporting bundles: {} built, max |f(s)| {:.1e}, {} errors; far bundles: {} built, \
             max |d - r| {:.1e}, {} errors",
            thm31.0, thm31.1, thm31.2, thm32.0, thm32.1, thm32.2
        ),
    );
    (c4, c5)
}

fn criterion6(acc: &mut OracleSummary) -> Outcome {
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for (i, (centers, r)) in random_shapes().iter().enumerate() {
        match check_thm33_shape(centers, *r, 128, &Tolerance::default()) {
            Ok(report) => {
                worst = worst.min(report.worst_margin.unwrap_or(f64::NEG_INFINITY));
                if !report.holds() {
                    failures.push(i);
                }
                // Probe the far arcs at every eighth boundary sample.
                let region = ball_intersection_2d(centers, *r, &Tolerance::default()).unwrap();
                let samples: Vec<Point> = region
                    .sample_boundary(128)
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect();
                let set = PointSet::new(samples).unwrap();
                let tol = Tolerance::for_set(&set);
                for base in (0..set.len()).step_by(8) {
                    acc.merge(
                        &probe_agreement(
                            &set,
                            base,
                            Some(*r),
                            CertificateKind::FarRealized,
                            360,
                            EXCLUSION,
                            &tol,
                        )
                        .unwrap(),
                    );
                }
            }
            Err(e) => {
                eprintln!("region {i}: {e}");
                failures.push(i);
            }
        }
    }
    outcome(
        failures.is_empty() && worst >= -1e-9,
        format!("20 regions, failures {failures:?}, worst margin {worst:.2e}"),
    )
}

fn criterion7(acc: &OracleSummary) -> Outcome {
    let frac = acc.near_endpoint_fraction();
    outcome(
        acc.agrees() && frac < 0.01,
        format!(
            "{} probes, {} probe disagreements, {} verdict checks, {} verdict disagreements, \
             {} near-endpoint probes ({:.3}%)",
            acc.probes,
            acc.disagreements,
            acc.verdict_checks,
            acc.verdict_disagreements,
            acc.near_endpoint,
            100.0 * frac
        ),
    )
}

fn criterion8() -> Outcome {
    let tol = Tolerance::default();
    let centers = [Point::xy(0.0, 0.0), Point::xy(1.0, 0.0)];
    let x = Point::xy(0.5, 0.0);
    let _ = ball_intersection_2d(&centers, 1.0, &tol);
    let started = Instant::now();
    let lens = ball_intersection_2d(&centers, 1.0, &tol).unwrap();
    let far = region_farthest_distance(&lens, &x).unwrap();
    let elapsed = started.elapsed();
    let h = 0.75f64.sqrt();
    let mut vertices = lens.vertices();
    vertices.sort_by(|a, b| a.y().total_cmp(&b.y()));
    let vertex_err = match vertices.as_slice() {
        [lo, hi] => (lo.x() - 0.5)
            .abs()
            .max((lo.y() + h).abs())
            .max((hi.x() - 0.5).abs())
            .max((hi.y() - h).abs()),
        _ => f64::INFINITY,
    };
    outcome(
        vertex_err <= 1e-9 && (far - h).abs() <= 1e-9 && elapsed < Duration::from_millis(1),
        format!("vertex error {vertex_err:.1e}, farthest distance {far:.10}, {elapsed:.2?}"),
    )
}

fn main() -> ExitCode {
    let mut acc = OracleSummary::default();
    let sets = random_sets();
    let c1 = criterion1(&mut acc);
    let c2 = criterion2(&mut acc);
    let c3 = criterion3();
    let (c4, c5) = criterion4_5(&sets, &mut acc);
    let c6 = criterion6(&mut acc);
    let c7 = criterion7(&acc);
    let c8 = criterion8();
    let names = [
        "cocircular threshold",
        "square circumradius",
        "tight two-point inequalities",
        "implication chain",
        "boundary certificates",
        "arc-region shape check",
        "oracle agreement",
        "lens fixed points",
    ];
    let mut all = true;
    for (i, (name, c)) in names
        .iter()
        .zip([c1, c2, c3, c4, c5, c6, c7, c8])
        .enumerate()
    {
        all &= c.pass;
        println!(
            "criterion {} [{name}]: {} ({})",
            i + 1,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
