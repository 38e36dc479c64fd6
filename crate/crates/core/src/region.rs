//! Planar regions bounded by circular arcs of one common radius, i.e.
//! intersections of closed disks `⋂ B̄(c; r)`.
//!
//! Each generator's circle is clipped against every other disk; the piece
//! of circle `i` inside disk `j` is the closed arc `cos(θ − φ_ij) >= d_ij/2r`
//! around the direction `φ_ij` from `c_i` to `c_j`. The surviving arcs, in
//! counterclockwise order, form the boundary.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::arcs::{angle_of, angular_distance, normalize_angle, unit, ArcSet};
use crate::error::{Error, Result};
use crate::geom::{check_radius, dot, Point, PointSet, Tolerance};
use crate::normals::{CertificateKind, NormalCertificate};
use crate::props::Property;

/// Counterclockwise arc of the circle of radius `r` around `center`, from
/// `start` to `end` (`start <= end <= start + 2π`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryArc {
    pub generator: usize,
    pub center: Point,
    pub start: f64,
    pub end: f64,
}

impl BoundaryArc {
    pub fn point_at(&self, theta: f64, r: f64) -> Point {
        let [ux, uy] = unit(theta);
        Point::xy(self.center.x() + r * ux, self.center.y() + r * uy)
    }

    pub fn start_point(&self, r: f64) -> Point {
        self.point_at(self.start, r)
    }

    pub fn end_point(&self, r: f64) -> Point {
        self.point_at(self.end, r)
    }

    pub fn sweep(&self) -> f64 {
        self.end - self.start
    }

    /// Whether the arc passes through angle `theta`.
    pub fn covers(&self, theta: f64) -> bool {
        let offset = normalize_angle(theta - self.start);
        offset <= self.sweep() || angular_distance(theta, self.end) == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcRegion {
    pub radius: f64,
    pub generators: Vec<Point>,
    pub boundary: Vec<BoundaryArc>,
    pub empty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl ArcRegion {
    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// True when the region is a single point (two generators exactly `2r`
    /// apart) or otherwise has zero area.
    pub fn is_degenerate(&self) -> bool {
        !self.empty && self.boundary.iter().all(|a| a.sweep() <= 1e-12)
    }

    pub fn is_full_disk(&self) -> bool {
        self.boundary.len() == 1 && self.boundary[0].sweep() >= TAU
    }

    /// Boundary vertices (arc start points), in boundary order.
    pub fn vertices(&self) -> Vec<Point> {
        if self.is_full_disk() {
            return Vec::new();
        }
        self.boundary
            .iter()
            .map(|a| a.start_point(self.radius))
            .collect()
    }

    /// Total boundary length.
    pub fn perimeter(&self) -> f64 {
        self.boundary.iter().map(|a| a.sweep() * self.radius).sum()
    }

    /// `m` boundary points spaced evenly by arc length, each paired with the
    /// index of the boundary arc it lies on.
    pub fn sample_boundary(&self, m: usize) -> Vec<(Point, usize)> {
        let total = self.perimeter();
        if self.empty || m == 0 || total <= 0.0 {
            return Vec::new();
        }
        let step = total / m as f64;
        let mut out = Vec::with_capacity(m);
        let mut arc = 0;
        let mut consumed = 0.0;
        for k in 0..m {
            let target = k as f64 * step;
            while arc + 1 < self.boundary.len()
                && consumed + self.boundary[arc].sweep() * self.radius < target
            {
                consumed += self.boundary[arc].sweep() * self.radius;
                arc += 1;
            }
            let a = &self.boundary[arc];
            let t = ((target - consumed) / self.radius).clamp(0.0, a.sweep());
            out.push((a.point_at(a.start + t, self.radius), arc));
        }
        out
    }

    /// Outward unit normal at a boundary point lying on arc `arc`.
    pub fn outward_normal(&self, p: &Point, arc: usize) -> Vec<f64> {
        let c = &self.boundary[arc].center;
        p.sub(c).iter().map(|v| v / self.radius).collect()
    }
}

fn check_planar(p: &Point) -> Result<()> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar(p.dim()));
    }
    Ok(())
}

/// `⋂ B̄(c; r)` over `centers`. Coincident centers (within the tolerance
/// slack) are merged first. An empty intersection is a valid result with
/// `empty` set.
pub fn ball_intersection_2d(centers: &[Point], r: f64, tol: &Tolerance) -> Result<ArcRegion> {
    check_radius(r)?;
    if centers.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for c in centers {
        check_planar(c)?;
    }
    let mut gens: Vec<Point> = Vec::new();
    for c in centers {
        if !gens.iter().any(|g| g.dist(c) <= tol.slack()) {
            gens.push(c.clone());
        }
    }
    let empty_region = |gens: Vec<Point>| ArcRegion {
        radius: r,
        generators: gens,
        boundary: Vec::new(),
        empty: true,
    };

    let mut arcs: Vec<BoundaryArc> = Vec::new();
    for (i, ci) in gens.iter().enumerate() {
        let mut keep = ArcSet::full();
        for (j, cj) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            let v = cj.sub(ci);
            let d = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            let q = d / (2.0 * r);
            if q > 1.0 + 1e-12 {
                return Ok(empty_region(gens));
            }
            keep = keep.intersection(
                &ArcSet::centered(angle_of(&v), q.min(1.0).acos()),
                tol.ang_eps,
            );
            if keep.is_empty() {
                break;
            }
        }
        for (start, end) in keep.arcs() {
            arcs.push(BoundaryArc {
                generator: i,
                center: ci.clone(),
                start,
                end,
            });
        }
    }
    if arcs.is_empty() {
        return Ok(empty_region(gens));
    }

    // Counterclockwise order around the centroid of the arc midpoints.
    if arcs.len() > 1 {
        let mids: Vec<Point> = arcs
            .iter()
            .map(|a| a.point_at(0.5 * (a.start + a.end), r))
            .collect();
        let k = mids.len() as f64;
        let gx = mids.iter().map(Point::x).sum::<f64>() / k;
        let gy = mids.iter().map(Point::y).sum::<f64>() / k;
        let mut keyed: Vec<(f64, BoundaryArc)> = arcs
            .into_iter()
            .zip(&mids)
            .map(|(a, m)| (angle_of(&[m.x() - gx, m.y() - gy]), a))
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.generator.cmp(&b.1.generator)));
        arcs = keyed.into_iter().map(|(_, a)| a).collect();
    }
    Ok(ArcRegion {
        radius: r,
        generators: gens,
        boundary: arcs,
        empty: false,
    })
}

fn classify(value: f64, r: f64, slack: f64) -> Membership {
    if value < r - slack {
        Membership::Interior
    } else if value <= r + slack {
        Membership::Boundary
    } else {
        Membership::Outside
    }
}

/// Classifies `x` by `max_c ‖x − c‖` against the radius.
pub fn region_contains(region: &ArcRegion, x: &Point, tol: &Tolerance) -> Result<Membership> {
    check_planar(x)?;
    if region.empty {
        return Ok(Membership::Outside);
    }
    let worst = region
        .generators
        .iter()
        .map(|c| c.dist(x))
        .fold(0.0, f64::max);
    Ok(classify(worst, region.radius, tol.slack()))
}

/// Exact `sup_{y ∈ region} ‖x − y‖`. On each boundary arc the farthest
/// point from `x` is the one antipodal to `x` through the arc center when
/// the arc covers it, else an endpoint.
pub fn region_farthest_distance(region: &ArcRegion, x: &Point) -> Result<f64> {
    check_planar(x)?;
    if region.empty {
        return Err(Error::EmptyRegion);
    }
    let r = region.radius;
    let mut best = 0.0f64;
    for arc in &region.boundary {
        let v = arc.center.sub(x);
        let dc = (v[0] * v[0] + v[1] * v[1]).sqrt();
        let candidate = if dc == 0.0 {
            r
        } else if arc.covers(angle_of(&v)) {
            dc + r
        } else {
            arc.start_point(r).dist(x).max(arc.end_point(r).dist(x))
        };
        best = best.max(candidate);
    }
    Ok(best)
}

/// Membership of `x` in the `r`-ball hull of `set`, i.e. the intersection of
/// all closed `r`-balls containing it: `x` belongs iff every feasible center
/// `c ∈ ⋂_{s} B̄(s; r)` satisfies `‖x − c‖ <= r`.
pub fn ball_hull_membership(
    set: &PointSet,
    r: f64,
    x: &Point,
    tol: &Tolerance,
) -> Result<Membership> {
    if set.dim() != 2 {
        return Err(Error::NotPlanar(set.dim()));
    }
    let centers = ball_intersection_2d(set.points(), r, tol)?;
    if centers.empty {
        return Err(Error::NoEnclosingBall { radius: r });
    }
    let far = region_farthest_distance(&centers, x)?;
    Ok(classify(far, r, tol.slack()))
}

/// One half-space `{x : ⟨normal, x − base⟩ <= 0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub base: Point,
    pub normal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BundleRegion {
    Arcs { region: ArcRegion },
    HalfSpaces { halfspaces: Vec<HalfSpace> },
}

/// Residual of the boundary-containment check at one point of `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub index: usize,
    pub input_index: usize,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<Membership>,
}

/// Normals and the certificate set `A` built from them, plus per-point
/// verification residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub property: Property,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub certificates: Vec<NormalCertificate>,
    pub region: BundleRegion,
    pub residuals: Vec<PointResidual>,
    pub max_residual: f64,
    pub verified: bool,
}

impl CertificateBundle {
    /// Far centers `s − rζ_s` of every certificate.
    pub fn far_centers(&self) -> Vec<Point> {
        self.certificates
            .iter()
            .filter_map(NormalCertificate::far_center)
            .collect()
    }
}

/// `⋂ B̄(s − rζ_s; r)` over the far-realized certificates.
pub fn certificate_region(certs: &[NormalCertificate], tol: &Tolerance) -> Result<ArcRegion> {
    let first = certs.first().ok_or(Error::EmptyBundle)?;
    let r = first.radius.ok_or(Error::WrongCertificateKind {
        index: first.base_index,
        expected: CertificateKind::FarRealized.name(),
        found: first.kind.name(),
    })?;
    let mut centers = Vec::with_capacity(certs.len());
    for c in certs {
        if c.kind != CertificateKind::FarRealized || c.radius != Some(r) {
            return Err(Error::WrongCertificateKind {
                index: c.base_index,
                expected: CertificateKind::FarRealized.name(),
                found: c.kind.name(),
            });
        }
        centers.push(c.far_center().expect("radius checked"));
    }
    ball_intersection_2d(&centers, r, tol)
}

/// `f(x) = max ⟨ζ_s, x − s⟩` over supporting certificates; the convex set
/// `{f <= 0}` has every certified base point on its boundary.
pub fn support_gap(certs: &[NormalCertificate], x: &Point) -> Result<f64> {
    if certs.is_empty() {
        return Err(Error::EmptyBundle);
    }
    let mut best = f64::NEG_INFINITY;
    for c in certs {
        if c.kind != CertificateKind::Supporting {
            return Err(Error::WrongCertificateKind {
                index: c.base_index,
                expected: CertificateKind::Supporting.name(),
                found: c.kind.name(),
            });
        }
        if x.dim() != c.base_point.dim() {
            return Err(Error::DimensionMismatch {
                expected: c.base_point.dim(),
                found: x.dim(),
            });
        }
        best = best.max(dot(c.direction.coords(), &x.sub(&c.base_point)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normals::Direction;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn lens() -> ArcRegion {
        ball_intersection_2d(&[Point::xy(0.0, 0.0), Point::xy(1.0, 0.0)], 1.0, &tol()).unwrap()
    }

    const H: f64 = 0.866_025_403_784_438_6;

    #[test]
    fn single_disk() {
        let d = ball_intersection_2d(&[Point::xy(0.0, 0.0)], 1.0, &tol()).unwrap();
        assert!(d.is_full_disk());
        assert_eq!(d.boundary[0].start, 0.0);
        assert_eq!(d.boundary[0].end, TAU);
    }

    #[test]
    fn lens_vertices() {
        let l = lens();
        assert_eq!(l.boundary.len(), 2);
        let mut v = l.vertices();
        v.sort_by(|a, b| a.y().total_cmp(&b.y()));
        assert!((v[0].x() - 0.5).abs() < 1e-15 && (v[0].y() + H).abs() < 1e-15);
        assert!((v[1].x() - 0.5).abs() < 1e-15 && (v[1].y() - H).abs() < 1e-15);
    }

    #[test]
    fn consecutive_arcs_share_endpoints() {
        let centers = [
            Point::xy(0.0, 0.0),
            Point::xy(0.6, 0.1),
            Point::xy(0.3, 0.5),
            Point::xy(0.1, -0.3),
        ];
        let reg = ball_intersection_2d(&centers, 1.0, &tol()).unwrap();
        let n = reg.boundary.len();
        assert!(n >= 3);
        for k in 0..n {
            let a = reg.boundary[k].end_point(1.0);
            let b = reg.boundary[(k + 1) % n].start_point(1.0);
            assert!(a.dist(&b) < 1e-9, "arc {k}");
        }
    }

    #[test]
    fn disjoint_disks_empty() {
        let e =
            ball_intersection_2d(&[Point::xy(0.0, 0.0), Point::xy(3.0, 0.0)], 1.0, &tol()).unwrap();
        assert!(e.is_empty());
        assert_eq!(
            region_contains(&e, &Point::xy(0.0, 0.0), &tol()).unwrap(),
            Membership::Outside
        );
        assert_eq!(
            region_farthest_distance(&e, &Point::xy(0.0, 0.0)),
            Err(Error::EmptyRegion)
        );
    }

    #[test]
    fn tangent_disks_give_point() {
        let p =
            ball_intersection_2d(&[Point::xy(0.0, 0.0), Point::xy(2.0, 0.0)], 1.0, &tol()).unwrap();
        assert!(!p.is_empty());
        assert!(p.is_degenerate());
        assert_eq!(p.boundary.len(), 2);
        assert!(p.vertices()[0].dist(&Point::xy(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn pairwise_intersecting_but_empty_triple() {
        // Three unit disks around an equilateral triangle of side 1.9.
        let s = 1.9;
        let centers = [
            Point::xy(0.0, 0.0),
            Point::xy(s, 0.0),
            Point::xy(0.5 * s, s * 3f64.sqrt() / 2.0),
        ];
        let reg = ball_intersection_2d(&centers, 1.0, &tol()).unwrap();
        assert!(reg.is_empty());
    }

    #[test]
    fn containment_examples() {
        let l = lens();
        let t = tol();
        assert_eq!(
            region_contains(&l, &Point::xy(0.5, 0.0), &t).unwrap(),
            Membership::Interior
        );
        assert_eq!(
            region_contains(&l, &Point::xy(0.5, H), &t).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            region_contains(&l, &Point::xy(2.0, 0.0), &t).unwrap(),
            Membership::Outside
        );
    }

    #[test]
    fn farthest_examples() {
        let disk = ball_intersection_2d(&[Point::xy(0.0, 0.0)], 1.0, &tol()).unwrap();
        assert_eq!(
            region_farthest_distance(&disk, &Point::xy(0.0, 0.0)).unwrap(),
            1.0
        );
        assert_eq!(
            region_farthest_distance(&disk, &Point::xy(2.0, 0.0)).unwrap(),
            3.0
        );
        let f = region_farthest_distance(&lens(), &Point::xy(0.5, 0.0)).unwrap();
        assert!((f - H).abs() < 1e-15);
    }

    #[test]
    fn hull_examples() {
        let s = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        let t = Tolerance::for_set(&s);
        let m = |x, y| ball_hull_membership(&s, 1.0, &Point::xy(x, y), &t).unwrap();
        assert_eq!(m(0.5, 0.0), Membership::Interior);
        assert_eq!(m(0.0, 0.0), Membership::Boundary);
        assert_eq!(m(0.5, 1.0), Membership::Outside);
        let far = PointSet::from_xy(&[(0.0, 0.0), (3.0, 0.0)]).unwrap();
        assert_eq!(
            ball_hull_membership(&far, 1.0, &Point::xy(0.0, 0.0), &t),
            Err(Error::NoEnclosingBall { radius: 1.0 })
        );
    }

    fn far_cert(s: Point, z: (f64, f64), r: f64) -> NormalCertificate {
        NormalCertificate {
            base_index: 0,
            base_point: s,
            direction: Direction::normalize(&[z.0, z.1]).unwrap(),
            radius: Some(r),
            kind: CertificateKind::FarRealized,
            margin: 0.0,
            degenerate_singleton: false,
        }
    }

    #[test]
    fn certificate_region_of_antipodal_pair() {
        let certs = [
            far_cert(Point::xy(0.0, 0.0), (-1.0, 0.0), 1.0),
            far_cert(Point::xy(2.0, 0.0), (1.0, 0.0), 1.0),
        ];
        let reg = certificate_region(&certs, &tol()).unwrap();
        assert_eq!(reg.generators.len(), 1);
        assert!(reg.generators[0].dist(&Point::xy(1.0, 0.0)) < 1e-15);
        assert!(reg.is_full_disk());
        assert_eq!(certificate_region(&[], &tol()), Err(Error::EmptyBundle));
    }

    #[test]
    fn support_gap_examples() {
        let certs: Vec<NormalCertificate> = [-1.0, 0.0, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &x)| NormalCertificate {
                base_index: i,
                base_point: Point::xy(x, 0.0),
                direction: Direction::normalize(&[0.0, 1.0]).unwrap(),
                radius: None,
                kind: CertificateKind::Supporting,
                margin: 0.0,
                degenerate_singleton: false,
            })
            .collect();
        for x in [-1.0, 0.0, 1.0] {
            assert_eq!(support_gap(&certs, &Point::xy(x, 0.0)).unwrap(), 0.0);
        }
        assert_eq!(support_gap(&certs, &Point::xy(0.0, 1.0)).unwrap(), 1.0);
        assert_eq!(support_gap(&certs, &Point::xy(0.0, -2.0)).unwrap(), -2.0);
        assert_eq!(
            support_gap(&[], &Point::xy(0.0, 0.0)),
            Err(Error::EmptyBundle)
        );
    }

    #[test]
    fn boundary_samples_lie_on_boundary() {
        let reg = lens();
        for (p, arc) in reg.sample_boundary(64) {
            assert_eq!(
                region_contains(&reg, &p, &tol()).unwrap(),
                Membership::Boundary
            );
            let n = reg.outward_normal(&p, arc);
            assert!(((n[0] * n[0] + n[1] * n[1]).sqrt() - 1.0).abs() < 1e-12);
        }
    }
}
