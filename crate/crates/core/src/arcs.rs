//! Closed subsets of the unit circle stored as unions of angular intervals.
//!
//! Intervals live in `[0, 2π]`, are sorted, pairwise disjoint, and an arc
//! crossing angle 0 is stored split as `[a, 2π]` plus `[0, b]`. Degenerate
//! intervals `[a, a]` are single directions and are kept.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Unit vector at angle `theta`.
pub fn unit(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

/// Angle of a planar vector, in `[0, 2π)`.
pub fn angle_of(v: &[f64]) -> f64 {
    normalize_angle(v[1].atan2(v[0]))
}

/// Shortest angular distance between two angles.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    intervals: Vec<(f64, f64)>,
    /// Radius the set was computed for; `None` for radius-free sets such as
    /// supporting directions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius_context: Option<f64>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet {
            intervals: Vec::new(),
            radius_context: None,
        }
    }

    pub fn full() -> Self {
        ArcSet {
            intervals: vec![(0.0, TAU)],
            radius_context: None,
        }
    }

    /// Closed arc `[center - half_width, center + half_width]`. A half width
    /// of π or more gives the full circle; a negative one the empty set.
    pub fn centered(center: f64, half_width: f64) -> Self {
        if half_width.is_nan() || half_width < 0.0 {
            return ArcSet::empty();
        }
        if half_width >= PI {
            return ArcSet::full();
        }
        let lo = normalize_angle(center - half_width);
        let hi = lo + 2.0 * half_width;
        let intervals = if hi <= TAU {
            vec![(lo, hi)]
        } else {
            vec![(0.0, hi - TAU), (lo, TAU)]
        };
        ArcSet {
            intervals,
            radius_context: None,
        }
    }

    /// Builds a set from arbitrary intervals `[a, b]` with `b >= a` and
    /// `b - a <= 2π`, normalizing and merging.
    pub fn from_intervals(raw: &[(f64, f64)], ang_eps: f64) -> Self {
        let mut out = Vec::new();
        for &(a, b) in raw {
            if b < a {
                continue;
            }
            if b - a >= TAU {
                return ArcSet::full();
            }
            let lo = normalize_angle(a);
            let hi = lo + (b - a);
            if hi <= TAU {
                out.push((lo, hi));
            } else {
                out.push((lo, TAU));
                out.push((0.0, hi - TAU));
            }
        }
        let mut set = ArcSet {
            intervals: out,
            radius_context: None,
        };
        set.canonicalize(ang_eps);
        set
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius_context = Some(r);
        self
    }

    pub fn radius_context(&self) -> Option<f64> {
        self.radius_context
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0] == (0.0, TAU)
    }

    /// Total angular measure, in `[0, 2π]`.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Whether `theta` lies in the set or within `ang_eps` of it.
    pub fn contains(&self, theta: f64, ang_eps: f64) -> bool {
        let t = normalize_angle(theta);
        self.intervals.iter().any(|&(a, b)| {
            (t >= a - ang_eps && t <= b + ang_eps)
                || (t + TAU >= a - ang_eps && t + TAU <= b + ang_eps)
                || (t - TAU >= a - ang_eps && t - TAU <= b + ang_eps)
        })
    }

    /// Distance from `theta` to the nearest interval endpoint. Infinite for
    /// the full and the empty set.
    pub fn distance_to_endpoint(&self, theta: f64) -> f64 {
        if self.is_full() {
            return f64::INFINITY;
        }
        self.arcs()
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .map(|e| angular_distance(theta, e))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn intersection(&self, other: &ArcSet, ang_eps: f64) -> ArcSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a0, a1) = self.intervals[i];
            let (b0, b1) = other.intervals[j];
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        let mut set = ArcSet {
            intervals: out,
            radius_context: self.radius_context,
        };
        set.canonicalize(ang_eps);
        set
    }

    pub fn union(&self, other: &ArcSet, ang_eps: f64) -> ArcSet {
        let mut intervals = self.intervals.clone();
        intervals.extend_from_slice(&other.intervals);
        let mut set = ArcSet {
            intervals,
            radius_context: self.radius_context,
        };
        set.canonicalize(ang_eps);
        set
    }

    /// Whether every point of `self` lies in `other`, up to `ang_eps`.
    pub fn is_subset_of(&self, other: &ArcSet, ang_eps: f64) -> bool {
        self.intervals.iter().all(|&(a, b)| {
            other
                .intervals
                .iter()
                .any(|&(c, d)| c <= a + ang_eps && b <= d + ang_eps)
                || (b - a <= 2.0 * ang_eps && other.contains(0.5 * (a + b), ang_eps))
        })
    }

    /// Maximal arcs as `(start, end)` with `start` in `[0, 2π)` and
    /// `start <= end < start + 2π`; a wrapped pair is joined so `end` may
    /// exceed 2π. The full circle is `(0, 2π)`.
    pub fn arcs(&self) -> Vec<(f64, f64)> {
        if self.is_full() || self.intervals.is_empty() {
            return self.intervals.clone();
        }
        let mut arcs = self.intervals.clone();
        let first = arcs[0];
        let last = *arcs.last().unwrap();
        if arcs.len() > 1 && first.0 == 0.0 && last.1 == TAU {
            arcs.remove(0);
            let n = arcs.len();
            arcs[n - 1].1 = TAU + first.1;
        }
        arcs
    }

    /// Representative angles of every maximal arc: both endpoints and the
    /// midpoint, deduplicated within `ang_eps`, sorted in `[0, 2π)`.
    pub fn sample_angles(&self, ang_eps: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        if self.is_full() {
            return vec![0.0, PI];
        }
        for (a, b) in self.arcs() {
            for t in [a, 0.5 * (a + b), b] {
                out.push(normalize_angle(t));
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|x, y| angular_distance(*x, *y) <= ang_eps);
        if out.len() > 1 && angular_distance(out[0], *out.last().unwrap()) <= ang_eps {
            out.pop();
        }
        out
    }

    /// Midpoints of every maximal arc.
    pub fn midpoints(&self) -> Vec<f64> {
        if self.is_full() {
            return vec![0.0];
        }
        let mut out: Vec<f64> = self
            .arcs()
            .iter()
            .map(|&(a, b)| normalize_angle(0.5 * (a + b)))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Smallest angle of the set in `[0, 2π)`.
    pub fn first_angle(&self) -> Option<f64> {
        self.intervals.first().map(|&(a, _)| normalize_angle(a))
    }

    fn canonicalize(&mut self, ang_eps: f64) {
        let iv = &mut self.intervals;
        for (a, b) in iv.iter_mut() {
            *a = a.clamp(0.0, TAU);
            *b = b.clamp(*a, TAU);
        }
        iv.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
        for &(a, b) in iv.iter() {
            match merged.last_mut() {
                Some(last) if a <= last.1 + ang_eps => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        // [2π, 2π] duplicates the direction 0.
        if merged.len() > 1 {
            let n = merged.len();
            if merged[n - 1].0 >= TAU - ang_eps && merged[0].0 <= ang_eps {
                merged.pop();
            }
        } else if merged.len() == 1 && merged[0].0 >= TAU - ang_eps {
            merged[0] = (0.0, 0.0);
        }
        if merged.len() == 1 && merged[0].0 <= ang_eps && merged[0].1 >= TAU - ang_eps {
            merged[0] = (0.0, TAU);
        }
        *iv = merged;
    }
}
