//! Points, finite point sets, balls, and the distance / projection /
//! farthest-point maps over a finite set.
//!
//! Every comparison that decides a tie or a boundary case goes through
//! [`Tolerance`], whose absolute slack is `abs_eps * rel_scale` where
//! `rel_scale = max(1, diameter)` of the input set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `R^n` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(coord) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index: 0, coord });
        }
        Ok(Point(coords))
    }

    /// Planar point. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn sub(&self, other: &Point) -> Vec<f64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// `self + t * v`
    pub fn offset(&self, v: &[f64], t: f64) -> Point {
        Point(self.0.iter().zip(v).map(|(a, b)| a + t * b).collect())
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Tie and boundary tolerances shared by every decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_scale: f64,
    /// Angular merge tolerance in radians.
    pub ang_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_scale: 1.0,
            ang_eps: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_scale: f64, ang_eps: f64) -> Result<Self> {
        if !(abs_eps > 0.0) || !(ang_eps > 0.0) || !(rel_scale >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance requires abs_eps > 0, ang_eps > 0, rel_scale >= 1 \
                 (got {abs_eps}, {ang_eps}, {rel_scale})"
            )));
        }
        Ok(Tolerance {
            abs_eps,
            rel_scale,
            ang_eps,
        })
    }

    /// Default epsilons scaled to the diameter of `set`.
    pub fn for_set(set: &PointSet) -> Self {
        Tolerance::default().scaled_to(set)
    }

    pub fn scaled_to(mut self, set: &PointSet) -> Self {
        self.rel_scale = diameter(set).max(1.0);
        self
    }

    /// Absolute slack `abs_eps * rel_scale`.
    pub fn slack(&self) -> f64 {
        self.abs_eps * self.rel_scale
    }
}

/// A ball `B(center; radius)`, open or closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    pub closed: bool,
}

impl Ball {
    pub fn new(center: Point, radius: f64, closed: bool) -> Result<Self> {
        check_radius(radius)?;
        Ok(Ball {
            center,
            radius,
            closed,
        })
    }

    pub fn contains(&self, x: &Point, slack: f64) -> bool {
        let d = self.center.dist(x);
        if self.closed {
            d <= self.radius + slack
        } else {
            d < self.radius - slack
        }
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

/// A nonempty finite set of points of a fixed dimension `dim >= 2`.
///
/// Points closer than `dedup_tolerance` to an earlier point are merged into
/// it at construction; survivors keep their original input index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    indices: Vec<usize>,
    dedup_tolerance: f64,
}

impl PointSet {
    /// Builds a set with the default dedup tolerance `1e-9 * max(1, diameter)`.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Ok(Self::with_merge_count(points, None)?.0)
    }

    /// Planar convenience constructor.
    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::xy(x, y)).collect())
    }

    /// Builds the set and reports how many input points were merged away as
    /// duplicates.
    pub fn with_merge_count(
        points: Vec<Point>,
        dedup_tolerance: Option<f64>,
    ) -> Result<(Self, usize)> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        for (index, p) in points.iter().enumerate() {
            p.check_dim(dim)?;
            if let Some(coord) = p.coords().iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFinite { index, coord });
            }
        }
        let tol = dedup_tolerance.unwrap_or_else(|| {
            let diam = pairwise_max(&points);
            Tolerance::default().abs_eps * diam.max(1.0)
        });
        let mut kept: Vec<Point> = Vec::with_capacity(points.len());
        let mut indices = Vec::with_capacity(points.len());
        let mut merged = 0;
        for (i, p) in points.into_iter().enumerate() {
            if kept.iter().any(|q| q.dist(&p) <= tol) {
                merged += 1;
            } else {
                kept.push(p);
                indices.push(i);
            }
        }
        Ok((
            PointSet {
                dim,
                points: kept,
                indices,
                dedup_tolerance: tol,
            },
            merged,
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Original input index of the `i`-th stored point.
    pub fn input_index(&self, i: usize) -> usize {
        self.indices[i]
    }

    pub fn dedup_tolerance(&self) -> f64 {
        self.dedup_tolerance
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    /// Position of the member coinciding with `s` within `slack`.
    pub fn position_of(&self, s: &Point, slack: f64) -> Result<usize> {
        s.check_dim(self.dim)?;
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.dist(s)))
            .filter(|&(_, d)| d <= slack)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
            .ok_or(Error::NotAMember)
    }

    pub(crate) fn check_point(&self, x: &Point) -> Result<()> {
        x.check_dim(self.dim)
    }
}

fn pairwise_max(points: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.dist(q));
        }
    }
    best
}

/// `d_S(x)`, the Euclidean distance from `x` to the nearest member of `set`.
pub fn distance_to_set(x: &Point, set: &PointSet) -> Result<f64> {
    set.check_point(x)?;
    Ok(set
        .iter()
        .map(|s| s.dist_sq(x))
        .fold(f64::INFINITY, f64::min)
        .sqrt())
}

/// `d^f_S(x)`, the distance from `x` to the farthest member of `set`.
pub fn farthest_distance(x: &Point, set: &PointSet) -> Result<f64> {
    set.check_point(x)?;
    Ok(set.iter().map(|s| s.dist_sq(x)).fold(0.0, f64::max).sqrt())
}

/// Members attaining `d_S(x)`, in index order. Ties are decided on squared
/// distances with slack `tol.slack()`.
pub fn projections(x: &Point, set: &PointSet, tol: &Tolerance) -> Result<Vec<Point>> {
    set.check_point(x)?;
    let sq: Vec<f64> = set.iter().map(|s| s.dist_sq(x)).collect();
    let best = sq.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(select(set, &sq, |d| d <= best + tol.slack()))
}

/// Members attaining `d^f_S(x)`, in index order.
pub fn farthest_points(x: &Point, set: &PointSet, tol: &Tolerance) -> Result<Vec<Point>> {
    set.check_point(x)?;
    let sq: Vec<f64> = set.iter().map(|s| s.dist_sq(x)).collect();
    let best = sq.iter().copied().fold(0.0, f64::max);
    Ok(select(set, &sq, |d| d >= best - tol.slack()))
}

fn select(set: &PointSet, sq: &[f64], keep: impl Fn(f64) -> bool) -> Vec<Point> {
    set.iter()
        .zip(sq)
        .filter(|(_, &d)| keep(d))
        .map(|(p, _)| p.clone())
        .collect()
}

/// Largest pairwise distance; 0 for a singleton.
pub fn diameter(set: &PointSet) -> f64 {
    pairwise_max(set.points())
}
