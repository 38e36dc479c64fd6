use std::f64::consts::SQRT_2;
use std::path::PathBuf;

use proptest::prelude::*;
use spindlekit::cli::run_command;
use spindlekit::io::ReportDocument;
use spindlekit::props::Verdict;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spindlekit").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spindlekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn circle_is_supported_at_its_radius() {
    let (code, out, _) = run(&[
        "check",
        "--property",
        "spherical-support",
        "-r",
        "1",
        &data("circle12.json"),
    ]);
    assert_eq!(code, 0);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.reports[0].verdict, Verdict::Holds);
    assert_eq!(doc.input.points, 12);
}

#[test]
fn square_fails_below_circumradius_at_every_point() {
    let (code, out, err) = run(&[
        "check",
        "--property",
        "spherical-support",
        "-r",
        "1",
        &data("square.json"),
    ]);
    assert_eq!(code, 1);
    let doc = ReportDocument::from_json(&out).unwrap();
    let report = &doc.reports[0];
    assert_eq!(report.failing_points(), vec![0, 1, 2, 3]);
    for w in &report.witnesses {
        assert!((w.min_norm.unwrap() - SQRT_2).abs() < 1e-12);
    }
    assert_eq!(err.lines().count(), 4);
}

#[test]
fn tight_two_point_inequalities() {
    let (code, out, _) = run(&[
        "prop31",
        "-r",
        "1",
        "--big-radii",
        "1,2",
        &data("twopoints.json"),
    ]);
    assert_eq!(code, 0);
    let doc = ReportDocument::from_json(&out).unwrap();
    let p = doc.prop31.unwrap();
    assert_eq!(p.tested_big_radii, vec![1.0, 2.0]);
    assert!(p.per_radius[0].max_violation.ii.abs() < 1e-12);
    assert!(p.per_radius[0].max_violation.iii.abs() < 1e-12);
    assert!(p.per_radius[0].max_violation.iv.abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(
        run(&[
            "check",
            "--property",
            "spherical-support",
            &data("square.json")
        ])
        .0,
        2
    );
    assert_eq!(
        run(&[
            "check",
            "--property",
            "nonsense",
            "-r",
            "1",
            &data("square.json")
        ])
        .0,
        2
    );
    assert_eq!(
        run(&[
            "check",
            "--property",
            "exterior-infty",
            "/no/such/file.json"
        ])
        .0,
        2
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn parse_error_reports_path() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"dim":2,"points":[[0,"a"]]}"#).unwrap();
    let (code, _, err) = run(&[
        "check",
        "--property",
        "exterior-infty",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains(".points[0][1]"), "{err}");
}

#[test]
fn csv_duplicates_warn() {
    let (code, out, err) = run(&["check", "--property", "exterior-infty", &data("dup.csv")]);
    assert_eq!(code, 0);
    assert!(err.contains("merged 1 duplicate"));
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.input.duplicates_merged, 1);
    assert_eq!(doc.input.points, 2);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = ["certify", "-r", "1.5", &data("square.json")];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let doc = ReportDocument::from_json(&a).unwrap();
    assert_eq!(doc.to_json(), a);
    assert!(doc.timings.is_none());
    assert!(!a.contains("timing_ms"));
}

#[test]
fn timings_only_on_request() {
    let (_, out, _) = run(&[
        "--timings",
        "check",
        "--property",
        "exterior-infty",
        &data("square.json"),
    ]);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert!(doc.timings.unwrap().iter().any(|t| t.label == "total"));
}

#[test]
fn report_file_and_stdout_silence() {
    let path = scratch("report.json");
    let (code, out, _) = run(&[
        "check",
        "--property",
        "exterior-infty",
        "--report",
        path.to_str().unwrap(),
        &data("square.json"),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    ReportDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
}

#[test]
fn certificate_svg_has_dashed_circle_at_far_center() {
    let path = scratch("two.svg");
    let (code, _, _) = run(&[
        "certify",
        "-r",
        "1",
        "--svg",
        path.to_str().unwrap(),
        &data("twopoints.json"),
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    let circles: Vec<&str> = svg
        .lines()
        .filter(|l| l.contains("class=\"certificate\""))
        .collect();
    assert_eq!(circles.len(), 1);
    assert!(circles[0].contains(r#"cx="1" cy="0" r="1""#));
    assert!(circles[0].contains("stroke-dasharray"));
}

#[test]
fn render_is_byte_identical_and_rejects_3d() {
    let a = scratch("a.svg");
    let b = scratch("b.svg");
    for p in [&a, &b] {
        let (code, _, _) = run(&[
            "render",
            "-r",
            "2",
            "--svg",
            p.to_str().unwrap(),
            &data("square.json"),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let (code, _, err) = run(&[
        "render",
        "--svg",
        a.to_str().unwrap(),
        &data("tetra3d.json"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("planar"));
}

#[test]
fn collinear_render_draws_two_ticks() {
    let path = scratch("collinear.svg");
    let (code, _, _) = run(&[
        "render",
        "--svg",
        path.to_str().unwrap(),
        &data("collinear.json"),
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("class=\"tick\"").count(), 2);
    assert!(svg.contains("<title>90.000°</title>"));
    assert!(svg.contains("<title>270.000°</title>"));
}

#[test]
fn shape_input_runs_shape_check() {
    let (code, out, _) = run(&["check", &data("lens_shape.json")]);
    assert_eq!(code, 0);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.reports[0].witnesses.len(), 360);
}

#[test]
fn scan_finds_square_circumradius() {
    let (code, out, _) = run(&["scan", &data("square.json")]);
    assert_eq!(code, 0);
    let t = ReportDocument::from_json(&out)
        .unwrap()
        .scan
        .unwrap()
        .threshold
        .unwrap();
    assert!((t - SQRT_2).abs() < 1e-6);
}

#[test]
fn hull_queries() {
    let (code, out, _) = run(&[
        "hull",
        "-r",
        "2",
        "--query",
        "0,0",
        "--query",
        "0,1.5",
        &data("square.json"),
    ]);
    assert_eq!(code, 0);
    let hull = ReportDocument::from_json(&out).unwrap().hull.unwrap();
    let m: Vec<_> = hull
        .queries
        .iter()
        .map(|q| format!("{:?}", q.membership))
        .collect();
    assert_eq!(m, ["Interior", "Outside"]);
    assert_eq!(run(&["hull", "-r", "1", &data("square.json")]).0, 1);
}

#[test]
fn oracle_flag_agrees_on_square() {
    let (code, out, _) = run(&[
        "check",
        "--oracle",
        "--samples",
        "720",
        "--property",
        "spherical-support",
        "-r",
        "1.5",
        &data("square.json"),
    ]);
    assert_eq!(code, 0);
    let o = ReportDocument::from_json(&out).unwrap().oracle.unwrap();
    assert_eq!(o.samples, 720);
    assert!(o.agrees());
}

#[test]
fn three_dimensional_checks() {
    let (code, _, _) = run(&[
        "check",
        "--property",
        "spherical-support",
        "-r",
        "1",
        &data("tetra3d.json"),
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&[
        "check",
        "--property",
        "exterior-sphere",
        "-r",
        "1",
        &data("tetra3d.json"),
    ]);
    assert_eq!(code, 0);
    assert!(!ReportDocument::from_json(&out).unwrap().reports[0].exact);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Exit code matches the report verdict and the report round-trips.
    #[test]
    fn exit_code_matches_verdict(
        pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3..9),
        r in 0.5f64..4.0,
    ) {
        let body = serde_json::json!({"dim": 2, "points": pts.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>()});
        let key = pts.iter().fold(r.to_bits(), |h, p| h.rotate_left(7) ^ p.0.to_bits() ^ p.1.to_bits());
        let path = scratch(&format!("{key:016x}.json"));
        std::fs::write(&path, body.to_string()).unwrap();
        let r_arg = r.to_string();
        let (code, out, _) = run(&["check", "--property", "spherical-support", "-r", &r_arg, path.to_str().unwrap()]);
        let doc = ReportDocument::from_json(&out).unwrap();
        let expected = match doc.reports[0].verdict {
            Verdict::Holds | Verdict::Degenerate => 0,
            Verdict::Fails => 1,
        };
        prop_assert_eq!(code, expected);
        prop_assert_eq!(doc.to_json(), out);
    }
}
