//! The `spindlekit` command line.
//!
//! Exit codes: 0 the property holds or the certificate verified, 1 it
//! fails (the report is still written), 2 usage or input error, 3 internal
//! disagreement (grid oracle versus exact decider, solver breakdown).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::arcs::ArcSet;
use crate::error::Error;
use crate::geom::{diameter, Point, PointSet, Tolerance};
use crate::io::{
    parse_input_path, HullQuery, HullReport, InputSummary, ParseError, ParsedInput, ReportDocument,
    ScanReport, Timing,
};
use crate::normals::{
    exterior_sphere_directions_2d, far_supported_directions_2d, supporting_directions_2d,
};
use crate::oracle::cross_check_report;
use crate::props::{
    certify_thm31, certify_thm32, check_exterior_infty, check_exterior_sphere, check_prop31,
    check_spherically_supported, check_thm33_shape, default_big_radii, threshold_scan, Property,
    PropertyReport, Verdict,
};
use crate::region::{
    ball_hull_membership, ball_intersection_2d, region_farthest_distance, BundleRegion,
};
use crate::svg::{render_svg, PointArcs, Scene};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Probes this close (radians) to an arc endpoint are not compared.
const ORACLE_EXCLUSION: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "spindlekit",
    version,
    about = "Ball-based convexity checks for finite point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Oracle grid size.
    #[arg(long, global = true, default_value_t = 360)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Absolute tolerance, scaled by max(1, diameter).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Also render the scene as SVG.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Cross-check verdicts against the direction-grid oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide one property at every point.
    Check {
        #[arg(long)]
        property: Option<Property>,
        #[arg(short = 'r', long)]
        radius: Option<f64>,
        input: PathBuf,
    },
    /// Build and verify boundary certificates.
    Certify {
        #[arg(long, default_value = "spherical-support")]
        property: Property,
        #[arg(short = 'r', long)]
        radius: Option<f64>,
        input: PathBuf,
    },
    /// Feasible enclosing-ball centers and ball-hull membership queries.
    Hull {
        #[arg(short = 'r', long)]
        radius: f64,
        /// Query point `x,y`; repeatable.
        #[arg(long = "query", value_parser = parse_xy)]
        queries: Vec<Point>,
        input: PathBuf,
    },
    /// Monotonicity inequalities between far normals at two radii.
    Prop31 {
        #[arg(short = 'r', long)]
        radius: f64,
        #[arg(long, value_delimiter = ',')]
        big_radii: Option<Vec<f64>>,
        input: PathBuf,
    },
    /// Smallest radius at which the set is spherically supported.
    Scan {
        #[arg(long)]
        r_lo: Option<f64>,
        #[arg(long)]
        r_hi: Option<f64>,
        #[arg(long, default_value_t = 60)]
        steps: usize,
        input: PathBuf,
    },
    /// Draw the set, its direction arcs and shape region as SVG.
    Render {
        #[arg(long)]
        property: Option<Property>,
        #[arg(short = 'r', long)]
        radius: Option<f64>,
        input: PathBuf,
    },
}

fn parse_xy(s: &str) -> Result<Point, String> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Point::new(coords).map_err(|e| e.to_string())
}

/// A failure that maps to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PreconditionFailed { .. } | Error::NoEnclosingBall { .. } => EXIT_FAILS,
            Error::SolverNonConvergence { .. } | Error::LinearProgram(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Runs one invocation (`argv[0]` is the program name) and returns the
/// exit code. Reports go to `stdout` unless `--report` is given.
pub fn run_command<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_HOLDS
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    // Diagnostics are buffered so the worker pool never touches `stderr`.
    let mut notes = Vec::new();
    let outcome = pool.install(|| execute(&cli, &mut notes));
    let _ = stderr.write_all(&notes);
    match outcome {
        Ok((doc, svg, code)) => {
            if let Some(svg) = svg {
                let path = cli.common.svg.as_ref().expect("svg requested");
                if let Err(e) = std::fs::write(path, svg) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            let json = doc.to_json();
            match &cli.common.report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json) {
                        let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                None => {
                    let _ = stdout.write_all(json.as_bytes());
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SPINDLEKIT_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::usage(format!(
                "SPINDLEKIT_THREADS must be a positive integer, got `{v}`"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Failure::usage(format!("cannot build thread pool: {e}")))
}

struct Run<'a> {
    common: &'a Common,
    input: ParsedInput,
    doc: ReportDocument,
    timings: Vec<Timing>,
    started: Instant,
}

impl Run<'_> {
    fn set(&self) -> Result<&PointSet, Failure> {
        self.input
            .set
            .as_ref()
            .ok_or_else(|| Failure::usage("input has no points"))
    }

    fn tol(&self) -> Result<Tolerance, Failure> {
        let tol = Tolerance::new(self.common.tol, 1.0, Tolerance::default().ang_eps)?;
        Ok(match &self.input.set {
            Some(set) => tol.scaled_to(set),
            None => tol,
        })
    }

    fn push_report(&mut self, mut report: PropertyReport) {
        if let Some(ms) = report.timing_ms.take() {
            self.timings.push(Timing {
                label: format!("{} r={:?}", report.property, report.radius),
                ms,
            });
        }
        self.doc.reports.push(report);
    }

    fn finish(mut self, code: i32, svg: Option<String>) -> (ReportDocument, Option<String>, i32) {
        if self.common.timings {
            self.timings.push(Timing {
                label: "total".into(),
                ms: self.started.elapsed().as_secs_f64() * 1e3,
            });
            self.doc.timings = Some(self.timings);
        }
        (self.doc, svg, code)
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Certify { .. } => "certify",
        Command::Hull { .. } => "hull",
        Command::Prop31 { .. } => "prop31",
        Command::Scan { .. } => "scan",
        Command::Render { .. } => "render",
    }
}

fn input_path(c: &Command) -> &Path {
    match c {
        Command::Check { input, .. }
        | Command::Certify { input, .. }
        | Command::Hull { input, .. }
        | Command::Prop31 { input, .. }
        | Command::Scan { input, .. }
        | Command::Render { input, .. } => input,
    }
}

fn require_radius(radius: Option<f64>, what: &str) -> Result<f64, Failure> {
    radius.ok_or_else(|| Failure::usage(format!("{what} requires --radius")))
}

fn execute(
    cli: &Cli,
    stderr: &mut Vec<u8>,
) -> Result<(ReportDocument, Option<String>, i32), Failure> {
    let started = Instant::now();
    let input = parse_input_path(input_path(&cli.command))?;
    if input.duplicates_merged > 0 {
        let _ = writeln!(
            stderr,
            "warning: merged {} duplicate point(s)",
            input.duplicates_merged
        );
    }
    let summary = InputSummary {
        dim: input.document.dim,
        points: input.set.as_ref().map_or(0, PointSet::len),
        duplicates_merged: input.duplicates_merged,
    };
    let mut run = Run {
        common: &cli.common,
        doc: ReportDocument::new(
            command_name(&cli.command),
            cli.common.seed,
            Tolerance::default(),
            summary,
        ),
        input,
        timings: Vec::new(),
        started,
    };
    run.doc.tolerance = run.tol()?;
    if run.input.duplicates_merged > 0 {
        run.doc.diagnostics.push(format!(
            "merged {} duplicate point(s)",
            run.input.duplicates_merged
        ));
    }
    let want_svg = cli.common.svg.is_some();
    match &cli.command {
        Command::Check {
            property, radius, ..
        } => check(run, *property, *radius, want_svg, stderr),
        Command::Certify {
            property, radius, ..
        } => certify(run, *property, *radius, want_svg, stderr),
        Command::Hull {
            radius, queries, ..
        } => hull(run, *radius, queries, want_svg),
        Command::Prop31 {
            radius, big_radii, ..
        } => prop31(run, *radius, big_radii.as_deref(), stderr),
        Command::Scan {
            r_lo, r_hi, steps, ..
        } => scan(run, *r_lo, *r_hi, *steps),
        Command::Render {
            property, radius, ..
        } => render(run, *property, *radius),
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds | Verdict::Degenerate => EXIT_HOLDS,
        Verdict::Fails => EXIT_FAILS,
    }
}

type Outcome = Result<(ReportDocument, Option<String>, i32), Failure>;

fn check(
    mut run: Run<'_>,
    property: Option<Property>,
    radius: Option<f64>,
    want_svg: bool,
    stderr: &mut Vec<u8>,
) -> Outcome {
    let tol = run.tol()?;
    let shape = run.input.shape_centers();
    let property = match (property, &shape, &run.input.set) {
        (Some(p), _, _) => p,
        (None, Some(_), None) => Property::StrongConvexityShape,
        (None, _, _) => return Err(Failure::usage("check requires --property")),
    };
    let report = match property {
        Property::StrongConvexityShape => {
            let (centers, r) = shape
                .ok_or_else(|| Failure::usage("strong-convexity-shape needs a `shape` input"))?;
            let r = radius.unwrap_or(r);
            check_thm33_shape(&centers, r, run.common.samples, &tol)?
        }
        Property::SphericalSupport => {
            let r = require_radius(radius, "spherical-support")?;
            check_spherically_supported(run.set()?, r, &tol)?
        }
        Property::ExteriorSphere => {
            let r = require_radius(radius, "exterior-sphere")?;
            check_exterior_sphere(run.set()?, r, &tol, run.common.samples)?
        }
        Property::ExteriorInfty => check_exterior_infty(run.set()?, &tol)?,
    };
    for w in report.witnesses.iter().filter(|w| !w.accepted()) {
        let _ = writeln!(
            stderr,
            "point {} (input {}): {}",
            w.index,
            w.input_index,
            w.failure.as_deref().unwrap_or("rejected")
        );
    }
    let mut code = verdict_code(report.verdict);
    if run.common.oracle && property != Property::StrongConvexityShape {
        let summary = cross_check_report(
            run.set()?,
            &report,
            run.common.samples,
            ORACLE_EXCLUSION,
            &tol,
        )?;
        if !summary.agrees() {
            let _ = writeln!(
                stderr,
                "oracle disagreement: {} probe(s), {} verdict(s)",
                summary.disagreements, summary.verdict_disagreements
            );
            code = EXIT_INTERNAL;
        }
        run.doc.oracle = Some(summary);
    }
    let svg = if want_svg {
        let mut scene = match &run.input.set {
            Some(set) => Scene::with_set(set),
            None => Scene::default(),
        };
        if property == Property::StrongConvexityShape {
            let (centers, r) = run.input.shape_centers().expect("shape checked");
            scene.region = Some(ball_intersection_2d(&centers, radius.unwrap_or(r), &tol)?);
        } else {
            scene.arcs = direction_arcs(run.set()?, property, report.radius, &tol)?;
        }
        scene.title = Some(format!("{property}"));
        Some(render_svg(&scene)?)
    } else {
        None
    };
    run.push_report(report);
    Ok(run.finish(code, svg))
}

fn direction_arcs(
    set: &PointSet,
    property: Property,
    radius: Option<f64>,
    tol: &Tolerance,
) -> Result<Vec<PointArcs>, Failure> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()).into());
    }
    set.iter()
        .map(|s| {
            let arcs: ArcSet = match (property, radius) {
                (Property::SphericalSupport, Some(r)) => {
                    far_supported_directions_2d(set, s, r, tol)?
                }
                (Property::ExteriorSphere, Some(r)) => {
                    exterior_sphere_directions_2d(set, s, r, tol)?
                }
                _ => supporting_directions_2d(set, s, tol)?,
            };
            Ok(PointArcs {
                base: s.clone(),
                arcs,
            })
        })
        .collect()
}

fn certify(
    mut run: Run<'_>,
    property: Property,
    radius: Option<f64>,
    want_svg: bool,
    stderr: &mut Vec<u8>,
) -> Outcome {
    let tol = run.tol()?;
    let set = run.set()?.clone();
    let bundle = match property {
        Property::SphericalSupport => {
            let r = require_radius(radius, "certify spherical-support")?;
            match certify_thm32(&set, r, &tol) {
                Ok(b) => b,
                Err(Error::PreconditionFailed { property, index }) => {
                    let _ = writeln!(stderr, "precondition {property} fails at point {index}");
                    let report = check_spherically_supported(&set, r, &tol)?;
                    run.push_report(report);
                    return Ok(run.finish(EXIT_FAILS, None));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Property::ExteriorInfty => match certify_thm31(&set, &tol) {
            Ok(b) => b,
            Err(Error::PreconditionFailed { property, index }) => {
                let _ = writeln!(stderr, "precondition {property} fails at point {index}");
                let report = check_exterior_infty(&set, &tol)?;
                run.push_report(report);
                return Ok(run.finish(EXIT_FAILS, None));
            }
            Err(e) => return Err(e.into()),
        },
        other => {
            return Err(Failure::usage(format!(
                "certify supports spherical-support and exterior-infty, not {other}"
            )))
        }
    };
    let code = if bundle.verified {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    };
    if !bundle.verified {
        let _ = writeln!(
            stderr,
            "certificate residual {:e} exceeds tolerance",
            bundle.max_residual
        );
    }
    let svg = if want_svg {
        let mut scene = Scene::with_set(&set);
        if let (BundleRegion::Arcs { region }, Some(r)) = (&bundle.region, bundle.radius) {
            scene.region = Some(region.clone());
            let mut centers = bundle.far_centers();
            centers.dedup_by(|a, b| a.dist(b) <= tol.slack());
            let mut circles: Vec<(Point, f64)> = Vec::new();
            for c in centers {
                if !circles.iter().any(|(d, _)| d.dist(&c) <= tol.slack()) {
                    circles.push((c, r));
                }
            }
            scene.circles = circles;
        } else {
            scene.arcs = direction_arcs(&set, Property::ExteriorInfty, None, &tol)?;
        }
        Some(render_svg(&scene)?)
    } else {
        None
    };
    run.doc.bundles.push(bundle);
    Ok(run.finish(code, svg))
}

fn hull(mut run: Run<'_>, radius: f64, queries: &[Point], want_svg: bool) -> Outcome {
    let tol = run.tol()?;
    let set = run.set()?.clone();
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()).into());
    }
    let region = ball_intersection_2d(set.points(), radius, &tol)?;
    let mut answers = Vec::with_capacity(queries.len());
    let code = if region.is_empty() {
        EXIT_FAILS
    } else {
        for q in queries {
            answers.push(HullQuery {
                point: q.clone(),
                farthest_center_distance: region_farthest_distance(&region, q)?,
                membership: ball_hull_membership(&set, radius, q, &tol)?,
            });
        }
        EXIT_HOLDS
    };
    let svg = if want_svg {
        let mut scene = Scene::with_set(&set);
        scene.points.extend(queries.iter().cloned());
        scene.region = Some(region.clone());
        Some(render_svg(&scene)?)
    } else {
        None
    };
    run.doc.hull = Some(HullReport {
        radius,
        centers_region: region,
        queries: answers,
    });
    Ok(run.finish(code, svg))
}

fn prop31(
    mut run: Run<'_>,
    radius: f64,
    big_radii: Option<&[f64]>,
    stderr: &mut Vec<u8>,
) -> Outcome {
    let tol = run.tol()?;
    let set = run.set()?.clone();
    let radii = big_radii.map_or_else(|| default_big_radii(radius), <[f64]>::to_vec);
    let started = Instant::now();
    let report = match check_prop31(&set, radius, &radii, &tol) {
        Ok(r) => r,
        Err(Error::PreconditionFailed { property, index }) => {
            let _ = writeln!(stderr, "precondition {property} fails at point {index}");
            let report = check_spherically_supported(&set, radius, &tol)?;
            run.push_report(report);
            return Ok(run.finish(EXIT_FAILS, None));
        }
        Err(e) => return Err(e.into()),
    };
    run.timings.push(Timing {
        label: "prop31".into(),
        ms: started.elapsed().as_secs_f64() * 1e3,
    });
    let code = if report.holds { EXIT_HOLDS } else { EXIT_FAILS };
    run.doc.prop31 = Some(report);
    Ok(run.finish(code, None))
}

fn scan(mut run: Run<'_>, r_lo: Option<f64>, r_hi: Option<f64>, steps: usize) -> Outcome {
    let tol = run.tol()?;
    let set = run.set()?.clone();
    let d = diameter(&set).max(tol.slack());
    // No radius below half the diameter can far-realize a pair at distance d.
    let r_lo = r_lo.unwrap_or(0.5 * d);
    let r_hi = r_hi.unwrap_or(1e3 * d.max(1.0));
    let started = Instant::now();
    let threshold = threshold_scan(&set, r_lo, r_hi, steps, &tol)?;
    run.timings.push(Timing {
        label: "scan".into(),
        ms: started.elapsed().as_secs_f64() * 1e3,
    });
    let code = if threshold.is_some() {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    };
    run.doc.scan = Some(ScanReport {
        r_lo,
        r_hi,
        steps,
        threshold,
    });
    Ok(run.finish(code, None))
}

fn render(run: Run<'_>, property: Option<Property>, radius: Option<f64>) -> Outcome {
    if run.common.svg.is_none() {
        return Err(Failure::usage("render requires --svg PATH"));
    }
    let tol = run.tol()?;
    let mut scene = match &run.input.set {
        Some(set) => Scene::with_set(set),
        None => Scene::default(),
    };
    if run.input.document.dim != 2 {
        return Err(Error::NotPlanar(run.input.document.dim).into());
    }
    if let Some((centers, r)) = run.input.shape_centers() {
        scene.region = Some(ball_intersection_2d(&centers, radius.unwrap_or(r), &tol)?);
    }
    if let Some(set) = &run.input.set {
        let property = property.unwrap_or(if radius.is_some() {
            Property::SphericalSupport
        } else {
            Property::ExteriorInfty
        });
        if !set.is_singleton() && property != Property::StrongConvexityShape {
            scene.arcs = direction_arcs(set, property, radius, &tol)?;
        }
    }
    let svg = render_svg(&scene)?;
    Ok(run.finish(EXIT_HOLDS, Some(svg)))
}
