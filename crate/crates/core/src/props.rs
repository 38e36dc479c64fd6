//! Set-level deciders, certificate construction and verification, and the
//! brute-force direction-grid oracle.
//!
//! Per-point work runs on the rayon pool; reports always list points in
//! stored order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::normalize_angle;
use crate::error::{Error, Result};
use crate::geom::{check_radius, dot, norm, Point, PointSet, Tolerance};
use crate::normals::{
    exterior_sphere_directions_2d, far_arcs_with_slack, is_far_realized, is_realized,
    is_supporting, min_norm_far_certificate, supporting_direction_lp, CertificateKind, Direction,
    DirectionCheck, FarSolution, NormalCertificate, SupportSolution,
};
use crate::region::{
    ball_intersection_2d, certificate_region, region_contains, support_gap, BundleRegion,
    CertificateBundle, HalfSpace, Membership, PointResidual,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    SphericalSupport,
    ExteriorSphere,
    ExteriorInfty,
    StrongConvexityShape,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::SphericalSupport => "spherical-support",
            Property::ExteriorSphere => "exterior-sphere",
            Property::ExteriorInfty => "exterior-infty",
            Property::StrongConvexityShape => "strong-convexity-shape",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spherical-support" => Ok(Property::SphericalSupport),
            "exterior-sphere" => Ok(Property::ExteriorSphere),
            "exterior-infty" => Ok(Property::ExteriorInfty),
            "strong-convexity-shape" => Ok(Property::StrongConvexityShape),
            other => Err(Error::InvalidArgument(format!(
                "unknown property `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Singleton input: every direction is vacuously admissible.
    Degenerate,
}

/// Outcome at one point of the set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointWitness {
    pub index: usize,
    pub input_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NormalCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Optimal `‖ζ‖` of the minimum-norm program, when it was solved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_norm: Option<f64>,
}

impl PointWitness {
    pub fn accepted(&self) -> bool {
        self.certificate.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub verdict: Verdict,
    /// False when the verdict came from the direction-grid oracle rather
    /// than an exact or optimization-based decider.
    pub exact: bool,
    pub witnesses: Vec<PointWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Indices of points without an accepted certificate.
    pub fn failing_points(&self) -> Vec<usize> {
        self.witnesses
            .iter()
            .filter(|w| !w.accepted())
            .map(|w| w.index)
            .collect()
    }

    fn assemble(
        property: Property,
        radius: Option<f64>,
        set_is_singleton: bool,
        exact: bool,
        witnesses: Vec<PointWitness>,
        started: Instant,
    ) -> Self {
        let verdict = if set_is_singleton {
            Verdict::Degenerate
        } else if witnesses.iter().all(PointWitness::accepted) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        let worst_margin = witnesses
            .iter()
            .filter_map(|w| w.certificate.as_ref().map(|c| c.margin))
            .reduce(f64::min);
        PropertyReport {
            property,
            radius,
            verdict,
            exact,
            witnesses,
            worst_margin,
            timing_ms: Some(started.elapsed().as_secs_f64() * 1e3),
        }
    }
}

fn witness(set: &PointSet, index: usize) -> PointWitness {
    PointWitness {
        index,
        input_index: set.input_index(index),
        certificate: None,
        failure: None,
        min_norm: None,
    }
}

/// `S` is `r`-spherically supported iff every point has a unit normal far
/// realized by an `r`-sphere, decided by the minimum-norm program.
pub fn check_spherically_supported(
    set: &PointSet,
    r: f64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    check_radius(r)?;
    let started = Instant::now();
    let witnesses = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let mut w = witness(set, i);
            match min_norm_far_certificate(set, set.get(i), r, tol)? {
                FarSolution::Certified {
                    certificate,
                    min_norm,
                } => {
                    w.certificate = Some(certificate);
                    w.min_norm = Some(min_norm);
                }
                FarSolution::Degenerate { certificate } => w.certificate = Some(certificate),
                FarSolution::TooLarge { min_norm } => {
                    w.min_norm = Some(min_norm);
                    w.failure = Some(format!(
                        "minimum-norm far normal has norm {min_norm:.17e} > 1"
                    ));
                }
                FarSolution::Empty => {
                    w.failure = Some("far-realization constraints are inconsistent".into())
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::assemble(
        Property::SphericalSupport,
        Some(r),
        set.is_singleton(),
        true,
        witnesses,
        started,
    ))
}

/// Exterior `r`-sphere condition. Exact arc computation in the plane; in
/// higher dimension the direction-grid oracle with `samples` directions
/// decides and the report is marked inexact.
pub fn check_exterior_sphere(
    set: &PointSet,
    r: f64,
    tol: &Tolerance,
    samples: usize,
) -> Result<PropertyReport> {
    check_radius(r)?;
    let started = Instant::now();
    let planar = set.dim() == 2;
    let witnesses = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let s = set.get(i);
            let mut w = witness(set, i);
            let zeta = if planar {
                let arcs = exterior_sphere_directions_2d(set, s, r, tol)?;
                arcs.arcs()
                    .first()
                    .map(|&(a, b)| Direction::from_angle(normalize_angle(0.5 * (a + b))))
            } else {
                oracle_direction_grid(set, s, r, CertificateKind::Realized, samples, tol)?
            };
            match zeta {
                Some(z) => match is_realized(set, s, &z, r, tol)? {
                    DirectionCheck::Accepted(c) => w.certificate = Some(c),
                    DirectionCheck::Rejected { margin, .. } => {
                        w.failure = Some(format!("selected direction rejected, margin {margin:e}"))
                    }
                },
                None => w.failure = Some("no direction realized by an exterior sphere".into()),
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::assemble(
        Property::ExteriorSphere,
        Some(r),
        set.is_singleton(),
        planar,
        witnesses,
        started,
    ))
}

/// Exterior `∞`-sphere condition: every point admits a supporting
/// direction, i.e. lies on the boundary of the convex hull.
pub fn check_exterior_infty(set: &PointSet, tol: &Tolerance) -> Result<PropertyReport> {
    let started = Instant::now();
    let witnesses = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let mut w = witness(set, i);
            match supporting_direction_lp(set, set.get(i), tol)? {
                SupportSolution::Certified { certificate, .. }
                | SupportSolution::Degenerate { certificate } => w.certificate = Some(certificate),
                SupportSolution::Infeasible { .. } => {
                    w.failure = Some("point lies in the interior of the convex hull".into())
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::assemble(
        Property::ExteriorInfty,
        None,
        set.is_singleton(),
        true,
        witnesses,
        started,
    ))
}

/// Supporting certificates at every point and the convex set
/// `A = {x : max_s ⟨ζ_s, x − s⟩ <= 0}`; the residual at `s` is the support
/// gap `f(s)`, which must vanish for `s` to lie on the boundary of `A`.
pub fn certify_thm31(set: &PointSet, tol: &Tolerance) -> Result<CertificateBundle> {
    if set.is_singleton() {
        return Err(Error::DegenerateSingleton);
    }
    let report = check_exterior_infty(set, tol)?;
    if let Some(&index) = report.failing_points().first() {
        return Err(Error::PreconditionFailed {
            property: Property::ExteriorInfty.to_string(),
            index,
        });
    }
    let certificates: Vec<NormalCertificate> = report
        .witnesses
        .into_iter()
        .filter_map(|w| w.certificate)
        .collect();
    let residuals = set
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(PointResidual {
                index: i,
                input_index: set.input_index(i),
                residual: support_gap(&certificates, s)?,
                membership: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = residuals
        .iter()
        .map(|r| r.residual.abs())
        .fold(0.0, f64::max);
    let halfspaces = certificates
        .iter()
        .map(|c| HalfSpace {
            base: c.base_point.clone(),
            normal: c.direction.coords().to_vec(),
        })
        .collect();
    Ok(CertificateBundle {
        property: Property::ExteriorInfty,
        radius: None,
        certificates,
        region: BundleRegion::HalfSpaces { halfspaces },
        residuals,
        max_residual,
        verified: max_residual <= tol.slack(),
    })
}

/// Angles used to instantiate far-realized normals at point `base`: both
/// endpoints and the midpoint of each arc of the exact (zero-slack) far
/// set, or the midpoints of the tolerant set when the exact one collapses
/// to nothing under rounding. `None` when even the tolerant set is empty.
pub fn far_direction_samples(
    set: &PointSet,
    base: usize,
    r: f64,
    tol: &Tolerance,
) -> Option<Vec<f64>> {
    let tolerant = far_arcs_with_slack(set, base, r, tol.slack(), tol.ang_eps);
    if tolerant.is_empty() {
        return None;
    }
    let exact = far_arcs_with_slack(set, base, r, 0.0, tol.ang_eps);
    if exact.is_empty() {
        Some(tolerant.midpoints())
    } else {
        Some(exact.sample_angles(tol.ang_eps))
    }
}

/// Far-realized certificates at every point (arc endpoints and midpoints),
/// the certificate set `A = ⋂ B̄(s − rζ_s; r)`, and per-point residuals
/// `max_c ‖s − c‖ − r`, which vanish exactly when `s ∈ bdry A`.
pub fn certify_thm32(set: &PointSet, r: f64, tol: &Tolerance) -> Result<CertificateBundle> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()));
    }
    if set.is_singleton() {
        return Err(Error::DegenerateSingleton);
    }
    let report = check_spherically_supported(set, r, tol)?;
    if let Some(&index) = report.failing_points().first() {
        return Err(Error::PreconditionFailed {
            property: Property::SphericalSupport.to_string(),
            index,
        });
    }
    let mut certificates = Vec::new();
    for (i, w) in report.witnesses.iter().enumerate() {
        let s = set.get(i);
        let mut found = false;
        for theta in far_direction_samples(set, i, r, tol).unwrap_or_default() {
            let z = Direction::from_angle(theta);
            if let DirectionCheck::Accepted(c) = is_far_realized(set, s, &z, r, tol)? {
                certificates.push(c);
                found = true;
            }
        }
        if !found {
            certificates.push(w.certificate.clone().expect("precondition checked"));
        }
    }
    let region = certificate_region(&certificates, tol)?;
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let centers: Vec<Point> = certificates.iter().filter_map(|c| c.far_center()).collect();
    let residuals = set
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let far = centers.iter().map(|c| c.dist(s)).fold(0.0, f64::max);
            Ok(PointResidual {
                index: i,
                input_index: set.input_index(i),
                residual: far - r,
                membership: Some(region_contains(&region, s, tol)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = residuals
        .iter()
        .map(|x| x.residual.abs())
        .fold(0.0, f64::max);
    let verified = max_residual <= tol.slack()
        && residuals
            .iter()
            .all(|x| x.membership == Some(Membership::Boundary));
    Ok(CertificateBundle {
        property: Property::SphericalSupport,
        radius: Some(r),
        certificates,
        region: BundleRegion::Arcs { region },
        residuals,
        max_residual,
        verified,
    })
}

/// Residuals of the three inequalities for one `(s, x, ζ_x)` triple at one
/// large radius `R`. Nonpositive residuals mean the inequality holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub s: usize,
    pub x: usize,
    pub big_radius: f64,
    /// Angle of `ζ_x`.
    pub zeta_x: f64,
    /// `⟨ζ_s − ζ_x, x − s⟩ + (r+R)/(2rR) ‖x − s‖²`
    pub ii: f64,
    /// `‖s − x‖ − 2rR/(r+R) ‖ζ_s − ζ_x‖`
    pub iii: f64,
    /// `−⟨ζ_s − ζ_x, x − s⟩ − 2rR/(r+R) ‖ζ_s − ζ_x‖²`
    pub iv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ItemMaxima {
    pub ii: f64,
    pub iii: f64,
    pub iv: f64,
}

impl ItemMaxima {
    fn new() -> Self {
        ItemMaxima {
            ii: f64::NEG_INFINITY,
            iii: f64::NEG_INFINITY,
            iv: f64::NEG_INFINITY,
        }
    }

    fn absorb(&mut self, p: &PairResidual) {
        self.ii = self.ii.max(p.ii);
        self.iii = self.iii.max(p.iii);
        self.iv = self.iv.max(p.iv);
    }

    fn merge(&mut self, o: &ItemMaxima) {
        self.ii = self.ii.max(o.ii);
        self.iii = self.iii.max(o.iii);
        self.iv = self.iv.max(o.iv);
    }

    /// Replaces the "no pairs" sentinel by zero.
    fn finalize(mut self) -> Self {
        for v in [&mut self.ii, &mut self.iii, &mut self.iv] {
            if !v.is_finite() {
                *v = 0.0;
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSummary {
    pub big_radius: f64,
    pub pairs: usize,
    /// Points whose far-normal set at this radius is empty; their pairs are
    /// vacuous and skipped.
    pub skipped_points: Vec<usize>,
    pub max_violation: ItemMaxima,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop31Report {
    pub radius: f64,
    pub tested_big_radii: Vec<f64>,
    /// `ζ_s` used at every point (the minimum-norm far normal at `r`).
    pub base_normals: Vec<Direction>,
    pub per_radius: Vec<RadiusSummary>,
    pub residuals: Vec<PairResidual>,
    pub max_violation: ItemMaxima,
    /// Items (ii) and (iii) hold within tolerance for every pair.
    pub holds: bool,
}

/// Default large radii `{r/2, r, 2r, 10r}`.
pub fn default_big_radii(r: f64) -> Vec<f64> {
    vec![0.5 * r, r, 2.0 * r, 10.0 * r]
}

/// Evaluates the three monotonicity inequalities between the normal `ζ_s`
/// far realized at radius `r` and every normal `ζ_x` far realized at each
/// radius `R` (sampled at arc endpoints and midpoints).
pub fn check_prop31(
    set: &PointSet,
    r: f64,
    big_radii: &[f64],
    tol: &Tolerance,
) -> Result<Prop31Report> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()));
    }
    check_radius(r)?;
    for &big in big_radii {
        check_radius(big)?;
    }
    let support = check_spherically_supported(set, r, tol)?;
    if let Some(&index) = support.failing_points().first() {
        return Err(Error::PreconditionFailed {
            property: Property::SphericalSupport.to_string(),
            index,
        });
    }
    let base_normals: Vec<Direction> = support
        .witnesses
        .iter()
        .map(|w| w.certificate.as_ref().expect("checked").direction.clone())
        .collect();

    let mut per_radius = Vec::with_capacity(big_radii.len());
    let mut residuals = Vec::new();
    let mut overall = ItemMaxima::new();
    for &big in big_radii {
        let a = (r + big) / (2.0 * r * big);
        let b = 2.0 * r * big / (r + big);
        let mut maxima = ItemMaxima::new();
        let mut skipped_points = Vec::new();
        let mut pairs = 0;
        for xi in 0..set.len() {
            let Some(angles) = far_direction_samples(set, xi, big, tol) else {
                skipped_points.push(xi);
                continue;
            };
            let x = set.get(xi);
            for &theta in &angles {
                let zx = Direction::from_angle(theta);
                for (si, zs) in base_normals.iter().enumerate() {
                    let s = set.get(si);
                    let diff: Vec<f64> = zs
                        .coords()
                        .iter()
                        .zip(zx.coords())
                        .map(|(p, q)| p - q)
                        .collect();
                    let xs = x.sub(s);
                    let inner = dot(&diff, &xs);
                    let dist = norm(&xs);
                    let dn = norm(&diff);
                    let p = PairResidual {
                        s: si,
                        x: xi,
                        big_radius: big,
                        zeta_x: theta,
                        ii: inner + a * dist * dist,
                        iii: dist - b * dn,
                        iv: -inner - b * dn * dn,
                    };
                    maxima.absorb(&p);
                    residuals.push(p);
                    pairs += 1;
                }
            }
        }
        overall.merge(&maxima);
        per_radius.push(RadiusSummary {
            big_radius: big,
            pairs,
            skipped_points,
            max_violation: maxima.finalize(),
        });
    }
    let max_violation = overall.finalize();
    let holds = max_violation.ii <= tol.slack() && max_violation.iii <= tol.slack();
    Ok(Prop31Report {
        radius: r,
        tested_big_radii: big_radii.to_vec(),
        base_normals,
        per_radius,
        residuals,
        max_violation,
        holds,
    })
}

/// Samples `m` boundary points of `⋂ B̄(c; r)` and checks that each is far
/// realized, over the sample, by its outward arc normal (whose far center
/// is the arc's generator).
pub fn check_thm33_shape(
    centers: &[Point],
    r: f64,
    m: usize,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 samples, got {m}"
        )));
    }
    let started = Instant::now();
    let region = ball_intersection_2d(centers, r, tol)?;
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if region.is_degenerate() {
        return Err(Error::DegenerateRegion);
    }
    let samples = region.sample_boundary(m);
    let set = PointSet::new(samples.iter().map(|(p, _)| p.clone()).collect())?;
    let tol = tol.scaled_to(&set);
    let mut normal_at: Vec<Option<Direction>> = vec![None; set.len()];
    for (p, arc) in &samples {
        let i = set.position_of(p, set.dedup_tolerance().max(tol.slack()))?;
        if normal_at[i].is_none() {
            normal_at[i] = Some(Direction::normalize(&region.outward_normal(p, *arc))?);
        }
    }
    let witnesses = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let mut w = witness(&set, i);
            let z = normal_at[i].as_ref().expect("every sample indexed");
            match is_far_realized(&set, set.get(i), z, r, &tol)? {
                DirectionCheck::Accepted(c) => w.certificate = Some(c),
                DirectionCheck::Rejected {
                    margin,
                    worst_index,
                } => {
                    w.failure = Some(format!(
                        "outward normal not far realized: margin {margin:e} at sample {worst_index}"
                    ))
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::assemble(
        Property::StrongConvexityShape,
        Some(r),
        false,
        true,
        witnesses,
        started,
    ))
}

/// The direction grid used by the oracle: `m` equally spaced angles in the
/// plane, `m` Fibonacci-sphere points in space.
pub fn grid_directions(dim: usize, m: usize) -> Result<Vec<Direction>> {
    match dim {
        2 => Ok((0..m)
            .map(|k| Direction::from_angle(2.0 * PI * k as f64 / m as f64))
            .collect()),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            Ok((0..m)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let t = golden * k as f64;
                    Direction::normalize(&[rho * t.cos(), rho * t.sin(), z]).expect("unit")
                })
                .collect())
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// First grid direction passing the exact per-direction check of `kind`.
pub fn oracle_direction_grid(
    set: &PointSet,
    s: &Point,
    r: f64,
    kind: CertificateKind,
    m: usize,
    tol: &Tolerance,
) -> Result<Option<Direction>> {
    if m < 8 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 8 directions, got {m}"
        )));
    }
    for z in grid_directions(set.dim(), m)? {
        let check = match kind {
            CertificateKind::Realized => is_realized(set, s, &z, r, tol)?,
            CertificateKind::FarRealized => is_far_realized(set, s, &z, r, tol)?,
            CertificateKind::Supporting => is_supporting(set, s, &z, tol)?,
        };
        if check.is_accepted() {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Smallest `r` in `[r_lo, r_hi]` for which the set is `r`-spherically
/// supported, by bisection (far sets grow with the radius). Accurate to
/// `(r_hi − r_lo) / 2^steps`; `None` if `r_hi` is infeasible.
pub fn threshold_scan(
    set: &PointSet,
    r_lo: f64,
    r_hi: f64,
    steps: usize,
    tol: &Tolerance,
) -> Result<Option<f64>> {
    check_radius(r_lo)?;
    check_radius(r_hi)?;
    if r_lo >= r_hi {
        return Err(Error::InvalidArgument(format!(
            "scan interval is empty: [{r_lo}, {r_hi}]"
        )));
    }
    let feasible = |r: f64| -> Result<bool> {
        Ok(check_spherically_supported(set, r, tol)?.verdict != Verdict::Fails)
    };
    if !feasible(r_hi)? {
        return Ok(None);
    }
    if feasible(r_lo)? {
        return Ok(Some(r_lo));
    }
    let (mut lo, mut hi) = (r_lo, r_hi);
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}
