//! Unit normals realized, far realized, or supporting at a point of a finite
//! set, and certificates witnessing them.
//!
//! For a unit `ζ` at `s ∈ S` and radius `r`:
//!
//! * realized:     `⟨ζ, x−s⟩ <= ‖x−s‖² / 2r` for all `x ∈ S`
//!   (the open ball `B(s + rζ; r)` misses `S`);
//! * far realized: `⟨ζ, x−s⟩ <= −‖x−s‖² / 2r` for all `x ∈ S`
//!   (`S ⊂ B̄(s − rζ; r)`);
//! * supporting:   `⟨ζ, x−s⟩ <= 0` for all `x ∈ S`.
//!
//! In the plane each constraint `cos(θ − φ_x) <= k_x` cuts one closed arc
//! out of the circle of directions, so the admissible sets are computed
//! exactly as [`ArcSet`] intersections. In higher dimension the far set is
//! decided by a minimum-norm program and supporting directions by a small
//! linear program.

use serde::{Deserialize, Serialize};

use crate::arcs::{angle_of, unit, ArcSet};
use crate::error::{Error, Result};
use crate::geom::{check_radius, dot, norm, Point, PointSet, Tolerance};
use crate::lp::{self, LpOutcome};
use crate::qp::{min_norm_point, MinNormOutcome};

/// A unit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Accepts `coords` if its norm is within `abs_eps` of 1.
    pub fn new(coords: Vec<f64>, abs_eps: f64) -> Result<Self> {
        let n = norm(&coords);
        if !n.is_finite() || (n - 1.0).abs() > abs_eps {
            return Err(Error::NotUnit(n));
        }
        Ok(Direction(coords))
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(v: &[f64]) -> Result<Self> {
        let n = norm(v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotUnit(n));
        }
        Ok(Direction(v.iter().map(|c| c / n).collect()))
    }

    pub fn from_angle(theta: f64) -> Self {
        Direction(unit(theta).to_vec())
    }

    /// First coordinate axis in dimension `dim`.
    pub fn axis(dim: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[0] = 1.0;
        Direction(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Angle in `[0, 2π)` of a planar direction.
    pub fn angle(&self) -> f64 {
        angle_of(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Realized,
    FarRealized,
    Supporting,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Realized => "realized",
            CertificateKind::FarRealized => "far_realized",
            CertificateKind::Supporting => "supporting",
        }
    }
}

/// A witnessed normal `ζ` at `s`, with the worst slack of its defining
/// inequality over `S \ {s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalCertificate {
    /// Position of `s` in the point set.
    pub base_index: usize,
    pub base_point: Point,
    pub direction: Direction,
    /// Radius `r`; absent for supporting certificates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub kind: CertificateKind,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate_singleton: bool,
}

impl NormalCertificate {
    /// Center `s − rζ` of the far-realizing ball.
    pub fn far_center(&self) -> Option<Point> {
        let r = self.radius?;
        Some(self.base_point.offset(self.direction.coords(), -r))
    }

    /// Center `s + rζ` of the realizing (exterior) ball.
    pub fn exterior_center(&self) -> Option<Point> {
        let r = self.radius?;
        Some(self.base_point.offset(self.direction.coords(), r))
    }
}

/// Outcome of checking one direction.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectionCheck {
    Accepted(NormalCertificate),
    Rejected { margin: f64, worst_index: usize },
}

impl DirectionCheck {
    pub fn is_accepted(&self) -> bool {
        matches!(self, DirectionCheck::Accepted(_))
    }

    pub fn margin(&self) -> f64 {
        match self {
            DirectionCheck::Accepted(c) => c.margin,
            DirectionCheck::Rejected { margin, .. } => *margin,
        }
    }

    pub fn certificate(self) -> Option<NormalCertificate> {
        match self {
            DirectionCheck::Accepted(c) => Some(c),
            DirectionCheck::Rejected { .. } => None,
        }
    }
}

fn check_direction(
    set: &PointSet,
    s: &Point,
    zeta: &Direction,
    radius: Option<f64>,
    kind: CertificateKind,
    tol: &Tolerance,
) -> Result<DirectionCheck> {
    if let Some(r) = radius {
        check_radius(r)?;
    }
    if zeta.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: zeta.dim(),
        });
    }
    let base = set.position_of(s, tol.slack())?;
    let s = set.get(base);
    let mut margin = f64::INFINITY;
    let mut worst_index = base;
    for (i, x) in set.iter().enumerate() {
        if i == base {
            continue;
        }
        let v = x.sub(s);
        let d2 = dot(&v, &v);
        let proj = dot(zeta.coords(), &v);
        let slack = match (kind, radius) {
            (CertificateKind::Realized, Some(r)) => d2 / (2.0 * r) - proj,
            (CertificateKind::FarRealized, Some(r)) => -d2 / (2.0 * r) - proj,
            _ => -proj,
        };
        if slack < margin {
            margin = slack;
            worst_index = i;
        }
    }
    let degenerate_singleton = set.is_singleton();
    if degenerate_singleton {
        margin = 0.0;
    }
    if margin >= -tol.slack() {
        Ok(DirectionCheck::Accepted(NormalCertificate {
            base_index: base,
            base_point: s.clone(),
            direction: zeta.clone(),
            radius,
            kind,
            margin,
            degenerate_singleton,
        }))
    } else {
        Ok(DirectionCheck::Rejected {
            margin,
            worst_index,
        })
    }
}

/// Checks `⟨ζ, x−s⟩ <= ‖x−s‖²/2r` over the set.
pub fn is_realized(
    set: &PointSet,
    s: &Point,
    zeta: &Direction,
    r: f64,
    tol: &Tolerance,
) -> Result<DirectionCheck> {
    check_direction(set, s, zeta, Some(r), CertificateKind::Realized, tol)
}

/// Checks `⟨ζ, x−s⟩ <= −‖x−s‖²/2r` over the set.
pub fn is_far_realized(
    set: &PointSet,
    s: &Point,
    zeta: &Direction,
    r: f64,
    tol: &Tolerance,
) -> Result<DirectionCheck> {
    check_direction(set, s, zeta, Some(r), CertificateKind::FarRealized, tol)
}

/// Checks `⟨ζ, x−s⟩ <= 0` over the set.
pub fn is_supporting(
    set: &PointSet,
    s: &Point,
    zeta: &Direction,
    tol: &Tolerance,
) -> Result<DirectionCheck> {
    check_direction(set, s, zeta, None, CertificateKind::Supporting, tol)
}

/// `max_x ‖x − (s − rζ)‖ − r`: how far the set sticks out of the
/// far-realizing ball.
pub fn far_ball_excess(set: &PointSet, s: &Point, zeta: &Direction, r: f64) -> f64 {
    let c = s.offset(zeta.coords(), -r);
    set.iter().map(|x| x.dist(&c)).fold(0.0, f64::max) - r
}

/// `{θ : cos(θ − φ) <= k}` as a closed arc.
fn cosine_cap(phi: f64, k: f64) -> ArcSet {
    if k >= 1.0 {
        ArcSet::full()
    } else if k < -1.0 {
        ArcSet::empty()
    } else {
        ArcSet::centered(phi + std::f64::consts::PI, std::f64::consts::PI - k.acos())
    }
}

/// Intersects the caps `cos(θ − φ_x) <= k(d_x)` over `x ∈ S \ {s}`.
fn planar_directions(
    set: &PointSet,
    base: usize,
    ang_eps: f64,
    k_of: impl Fn(f64) -> f64,
) -> ArcSet {
    let s = set.get(base);
    let mut acc = ArcSet::full();
    for (i, x) in set.iter().enumerate() {
        if i == base {
            continue;
        }
        let v = x.sub(s);
        let d = norm(&v);
        acc = acc.intersection(&cosine_cap(angle_of(&v), k_of(d)), ang_eps);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn planar_base(set: &PointSet, s: &Point, tol: &Tolerance) -> Result<usize> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()));
    }
    set.position_of(s, tol.slack())
}

pub(crate) fn far_arcs_with_slack(
    set: &PointSet,
    base: usize,
    r: f64,
    slack: f64,
    ang_eps: f64,
) -> ArcSet {
    planar_directions(set, base, ang_eps, |d| -d / (2.0 * r) + slack / d).with_radius(r)
}

/// Exact set of angles `θ` whose direction `(cos θ, sin θ)` is far realized
/// by an `r`-sphere at `s`. Each `x` admits the centers `c = s − rζ` of the
/// circle `∂B̄(s; r)` that lie in `B̄(x; r)`, one closed arc per point.
pub fn far_supported_directions_2d(
    set: &PointSet,
    s: &Point,
    r: f64,
    tol: &Tolerance,
) -> Result<ArcSet> {
    check_radius(r)?;
    let base = planar_base(set, s, tol)?;
    Ok(far_arcs_with_slack(set, base, r, tol.slack(), tol.ang_eps))
}

/// Exact set of angles whose direction is realized by an `r`-sphere at `s`:
/// the circle of centers `s + rζ` minus the open disks `B(x; r)`. Tangency
/// is admissible.
pub fn exterior_sphere_directions_2d(
    set: &PointSet,
    s: &Point,
    r: f64,
    tol: &Tolerance,
) -> Result<ArcSet> {
    check_radius(r)?;
    let base = planar_base(set, s, tol)?;
    let slack = tol.slack();
    Ok(planar_directions(set, base, tol.ang_eps, |d| d / (2.0 * r) + slack / d).with_radius(r))
}

/// Exact set of angles of supporting directions at `s`; nonempty iff `s`
/// lies on the boundary of the convex hull.
pub fn supporting_directions_2d(set: &PointSet, s: &Point, tol: &Tolerance) -> Result<ArcSet> {
    let base = planar_base(set, s, tol)?;
    let slack = tol.slack();
    Ok(planar_directions(set, base, tol.ang_eps, |d| slack / d))
}

/// Result of the minimum-norm far-realization program.
#[derive(Debug, Clone, PartialEq)]
pub enum FarSolution {
    /// Unit far-realizing direction found; `min_norm` is the optimal `‖ζ‖`.
    Certified {
        certificate: NormalCertificate,
        min_norm: f64,
    },
    /// The program is feasible but its optimum exceeds one.
    TooLarge { min_norm: f64 },
    /// The constraint polyhedron is empty.
    Empty,
    /// `S = {s}`; every direction is vacuously far realized.
    Degenerate { certificate: NormalCertificate },
}

impl FarSolution {
    pub fn certificate(&self) -> Option<&NormalCertificate> {
        match self {
            FarSolution::Certified { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn min_norm(&self) -> Option<f64> {
        match self {
            FarSolution::Certified { min_norm, .. } | FarSolution::TooLarge { min_norm } => {
                Some(*min_norm)
            }
            _ => None,
        }
    }
}

/// Minimizes `‖ζ‖²` subject to `⟨ζ, x−s⟩ <= −‖x−s‖²/2r` for all `x ≠ s`,
/// each constraint divided by `‖x−s‖`. Right-hand sides are negative, so
/// scaling a feasible `ζ` up keeps it feasible and a unit far-realizing
/// direction exists iff the optimum is at most one.
pub fn min_norm_far_certificate(
    set: &PointSet,
    s: &Point,
    r: f64,
    tol: &Tolerance,
) -> Result<FarSolution> {
    check_radius(r)?;
    let base = set.position_of(s, tol.slack())?;
    let s = set.get(base);
    if set.is_singleton() {
        return Ok(FarSolution::Degenerate {
            certificate: degenerate_certificate(set, base, Some(r), CertificateKind::FarRealized),
        });
    }
    let (normals, dists) = unit_offsets(set, base);
    let offsets: Vec<f64> = dists.iter().map(|d| -d / (2.0 * r)).collect();
    let feas_eps = 1e-13 * offsets.iter().fold(1.0f64, |m, b| m.max(b.abs()));
    match min_norm_point(&normals, &offsets, feas_eps)? {
        MinNormOutcome::Infeasible { .. } => Ok(FarSolution::Empty),
        MinNormOutcome::Solved {
            z, norm: min_norm, ..
        } => {
            if min_norm > 1.0 + tol.abs_eps {
                return Ok(FarSolution::TooLarge { min_norm });
            }
            let zeta = Direction::normalize(&z)?;
            match is_far_realized(set, s, &zeta, r, tol)? {
                DirectionCheck::Accepted(certificate) => Ok(FarSolution::Certified {
                    certificate,
                    min_norm,
                }),
                DirectionCheck::Rejected { .. } => Ok(FarSolution::TooLarge { min_norm }),
            }
        }
    }
}

/// Result of the supporting-direction linear program.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSolution {
    /// `delta` is the optimal angular clearance `max min_x −⟨ζ, u_x⟩` over
    /// the box `‖ζ‖∞ <= 1`.
    Certified {
        certificate: NormalCertificate,
        delta: f64,
    },
    Infeasible {
        delta: f64,
    },
    Degenerate {
        certificate: NormalCertificate,
    },
}

impl SupportSolution {
    pub fn certificate(&self) -> Option<&NormalCertificate> {
        match self {
            SupportSolution::Certified { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

/// Maximizes `δ` subject to `⟨ζ, x−s⟩ <= −δ‖x−s‖` and `‖ζ‖∞ <= 1`. A
/// strictly positive optimum yields a supporting direction directly; at
/// `δ = 0` the coordinate extremes of `{ζ : ⟨ζ, x−s⟩ <= slack}` are probed
/// for a nonzero candidate. Every candidate is confirmed by
/// [`is_supporting`].
pub fn supporting_direction_lp(
    set: &PointSet,
    s: &Point,
    tol: &Tolerance,
) -> Result<SupportSolution> {
    let base = set.position_of(s, tol.slack())?;
    let s = set.get(base);
    if set.is_singleton() {
        return Ok(SupportSolution::Degenerate {
            certificate: degenerate_certificate(set, base, None, CertificateKind::Supporting),
        });
    }
    let n = set.dim();
    let (normals, dists) = unit_offsets(set, base);

    // Variables: ζ⁺ (n), ζ⁻ (n), δ.
    let mut rows = Vec::with_capacity(normals.len() + 2 * n);
    let mut rhs = Vec::with_capacity(rows.capacity());
    for u in &normals {
        let mut row: Vec<f64> = u.clone();
        row.extend(u.iter().map(|c| -c));
        row.push(1.0);
        rows.push(row);
        rhs.push(0.0);
    }
    for j in 0..2 * n {
        let mut row = vec![0.0; 2 * n + 1];
        row[j] = 1.0;
        rows.push(row);
        rhs.push(1.0);
    }
    let mut c = vec![0.0; 2 * n + 1];
    c[2 * n] = 1.0;
    let delta = match lp::maximize(&c, &rows, &rhs)? {
        LpOutcome::Optimal { y, value } => {
            if let Some(cert) = confirm(set, s, &split_to_vec(&y, n), tol)? {
                return Ok(SupportSolution::Certified {
                    certificate: cert,
                    delta: value,
                });
            }
            value
        }
        LpOutcome::Unbounded => return Err(Error::LinearProgram("unbounded clearance".into())),
    };

    // δ = 0: look for any nonzero ζ in the (slack-relaxed) polar cone.
    let slack = tol.slack();
    let rows2: Vec<Vec<f64>> = rows.iter().map(|r| r[..2 * n].to_vec()).collect();
    let mut rhs2 = rhs.clone();
    for (i, d) in dists.iter().enumerate() {
        rhs2[i] = slack / d;
    }
    for j in 0..n {
        for sign in [1.0, -1.0] {
            let mut c2 = vec![0.0; 2 * n];
            c2[j] = sign;
            c2[n + j] = -sign;
            if let LpOutcome::Optimal { y, value } = lp::maximize(&c2, &rows2, &rhs2)? {
                if value <= 0.0 {
                    continue;
                }
                if let Some(cert) = confirm(set, s, &split_to_vec(&y, n), tol)? {
                    return Ok(SupportSolution::Certified {
                        certificate: cert,
                        delta,
                    });
                }
            }
        }
    }
    Ok(SupportSolution::Infeasible { delta })
}

fn split_to_vec(y: &[f64], n: usize) -> Vec<f64> {
    (0..n).map(|j| y[j] - y[n + j]).collect()
}

fn confirm(
    set: &PointSet,
    s: &Point,
    z: &[f64],
    tol: &Tolerance,
) -> Result<Option<NormalCertificate>> {
    if norm(z) <= 1e-12 {
        return Ok(None);
    }
    let zeta = Direction::normalize(z)?;
    Ok(is_supporting(set, s, &zeta, tol)?.certificate())
}

fn unit_offsets(set: &PointSet, base: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let s = set.get(base);
    set.iter()
        .enumerate()
        .filter(|&(i, _)| i != base)
        .map(|(_, x)| {
            let v = x.sub(s);
            let d = norm(&v);
            (v.iter().map(|c| c / d).collect::<Vec<_>>(), d)
        })
        .unzip()
}

fn degenerate_certificate(
    set: &PointSet,
    base: usize,
    radius: Option<f64>,
    kind: CertificateKind,
) -> NormalCertificate {
    NormalCertificate {
        base_index: base,
        base_point: set.get(base).clone(),
        direction: Direction::axis(set.dim()),
        radius,
        kind,
        margin: 0.0,
        degenerate_singleton: true,
    }
}
