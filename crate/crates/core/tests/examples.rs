macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(distances, "distances.rs", distances_example_runs);
example!(normal_arcs, "normal_arcs.rs", normal_arcs_example_runs);
example!(
    min_norm_certificate,
    "min_norm_certificate.rs",
    min_norm_certificate_example_runs
);
example!(
    ball_intersection,
    "ball_intersection.rs",
    ball_intersection_example_runs
);
example!(
    certify_boundary,
    "certify_boundary.rs",
    certify_boundary_example_runs
);
example!(
    monotonicity_inequalities,
    "monotonicity_inequalities.rs",
    monotonicity_inequalities_example_runs
);
example!(
    threshold_scan,
    "threshold_scan.rs",
    threshold_scan_example_runs
);
example!(
    strong_convexity_shape,
    "strong_convexity_shape.rs",
    strong_convexity_shape_example_runs
);
example!(render_scene, "render_scene.rs", render_scene_example_runs);
example!(
    oracle_cross_check,
    "oracle_cross_check.rs",
    oracle_cross_check_example_runs
);
example!(command_line, "command_line.rs", command_line_example_runs);
