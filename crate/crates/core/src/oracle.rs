//! Cross-validation of the exact deciders against the direction grid.
//!
//! Two levels are compared. Per probe: for every grid angle, membership in
//! the exact arc set versus the per-direction predicate, skipping probes
//! within `exclusion` radians of an arc endpoint (counted separately). Per
//! point: the exact verdict versus "some grid direction is accepted"; an
//! exact acceptance the grid misses is excused only when every exact arc is
//! too short to be guaranteed a probe outside the exclusion zones.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::arcs::ArcSet;
use crate::error::{Error, Result};
use crate::geom::{PointSet, Tolerance};
use crate::normals::{
    exterior_sphere_directions_2d, far_supported_directions_2d, is_far_realized, is_realized,
    is_supporting, supporting_directions_2d, CertificateKind, Direction,
};
use crate::props::{grid_directions, oracle_direction_grid, Property, PropertyReport};

/// Tallies of one or more cross-checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub probes: usize,
    pub near_endpoint: usize,
    pub disagreements: usize,
    pub verdict_checks: usize,
    pub verdict_disagreements: usize,
}

impl OracleSummary {
    pub fn merge(&mut self, other: &OracleSummary) {
        self.samples = self.samples.max(other.samples);
        self.probes += other.probes;
        self.near_endpoint += other.near_endpoint;
        self.disagreements += other.disagreements;
        self.verdict_checks += other.verdict_checks;
        self.verdict_disagreements += other.verdict_disagreements;
    }

    pub fn agrees(&self) -> bool {
        self.disagreements == 0 && self.verdict_disagreements == 0
    }

    /// Share of probes skipped for lying near an arc endpoint.
    pub fn near_endpoint_fraction(&self) -> f64 {
        if self.probes == 0 {
            0.0
        } else {
            self.near_endpoint as f64 / self.probes as f64
        }
    }
}

fn property_kind(property: Property) -> Result<CertificateKind> {
    match property {
        Property::SphericalSupport => Ok(CertificateKind::FarRealized),
        Property::ExteriorSphere => Ok(CertificateKind::Realized),
        Property::ExteriorInfty => Ok(CertificateKind::Supporting),
        Property::StrongConvexityShape => Err(Error::InvalidArgument(
            "the shape check has no direction oracle".into(),
        )),
    }
}

fn exact_arcs(
    set: &PointSet,
    base: usize,
    r: Option<f64>,
    kind: CertificateKind,
    tol: &Tolerance,
) -> Result<ArcSet> {
    let s = set.get(base);
    let need_r = || r.ok_or_else(|| Error::InvalidArgument("radius required".into()));
    match kind {
        CertificateKind::FarRealized => far_supported_directions_2d(set, s, need_r()?, tol),
        CertificateKind::Realized => exterior_sphere_directions_2d(set, s, need_r()?, tol),
        CertificateKind::Supporting => supporting_directions_2d(set, s, tol),
    }
}

fn accepts(
    set: &PointSet,
    base: usize,
    z: &Direction,
    r: Option<f64>,
    kind: CertificateKind,
    tol: &Tolerance,
) -> Result<bool> {
    let s = set.get(base);
    let r = r.unwrap_or(1.0);
    Ok(match kind {
        CertificateKind::FarRealized => is_far_realized(set, s, z, r, tol)?,
        CertificateKind::Realized => is_realized(set, s, z, r, tol)?,
        CertificateKind::Supporting => is_supporting(set, s, z, tol)?,
    }
    .is_accepted())
}

/// Probe-level comparison at one planar point over `m` grid angles.
pub fn probe_agreement(
    set: &PointSet,
    base: usize,
    r: Option<f64>,
    kind: CertificateKind,
    m: usize,
    exclusion: f64,
    tol: &Tolerance,
) -> Result<OracleSummary> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()));
    }
    let exact = exact_arcs(set, base, r, kind, tol)?;
    let mut out = OracleSummary {
        samples: m,
        ..OracleSummary::default()
    };
    for z in grid_directions(2, m)? {
        out.probes += 1;
        let theta = z.angle();
        if exact.distance_to_endpoint(theta) < exclusion {
            out.near_endpoint += 1;
            continue;
        }
        if exact.contains(theta, tol.ang_eps) != accepts(set, base, &z, r, kind, tol)? {
            out.disagreements += 1;
        }
    }
    Ok(out)
}

/// Compares every per-point verdict of `report` with the grid oracle and,
/// in the plane, also runs [`probe_agreement`] at every point.
pub fn cross_check_report(
    set: &PointSet,
    report: &PropertyReport,
    m: usize,
    exclusion: f64,
    tol: &Tolerance,
) -> Result<OracleSummary> {
    let kind = property_kind(report.property)?;
    let r = report.radius;
    let mut out = OracleSummary {
        samples: m,
        ..OracleSummary::default()
    };
    for w in &report.witnesses {
        let found = oracle_direction_grid(set, set.get(w.index), r.unwrap_or(1.0), kind, m, tol)?;
        out.verdict_checks += 1;
        match (w.accepted(), found.is_some()) {
            (false, true) => out.verdict_disagreements += 1,
            (true, false) => {
                // A planar exact acceptance is excused only for arcs too
                // short to hold a grid probe clear of both endpoints.
                if set.dim() == 2 && !set.is_singleton() {
                    let exact = exact_arcs(set, w.index, r, kind, tol)?;
                    let longest = exact.arcs().iter().map(|&(a, b)| b - a).fold(0.0, f64::max);
                    if longest >= TAU / m as f64 + 2.0 * exclusion {
                        out.verdict_disagreements += 1;
                    }
                }
            }
            _ => {}
        }
        if set.dim() == 2 && !set.is_singleton() {
            out.merge(&probe_agreement(set, w.index, r, kind, m, exclusion, tol)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props::check_spherically_supported;

    #[test]
    fn square_grid_agrees() {
        let set = PointSet::from_xy(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]).unwrap();
        let tol = Tolerance::for_set(&set);
        for r in [1.0, 2f64.sqrt(), 3.0] {
            let report = check_spherically_supported(&set, r, &tol).unwrap();
            let summary = cross_check_report(&set, &report, 1440, 1e-3, &tol).unwrap();
            assert!(summary.agrees(), "r = {r}: {summary:?}");
            assert!(summary.near_endpoint_fraction() < 0.01);
        }
    }

    #[test]
    fn supporting_probes_on_triangle() {
        let set = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2)]).unwrap();
        let tol = Tolerance::for_set(&set);
        for i in 0..set.len() {
            let s = probe_agreement(&set, i, None, CertificateKind::Supporting, 360, 1e-3, &tol)
                .unwrap();
            assert_eq!(s.disagreements, 0);
        }
    }
}
