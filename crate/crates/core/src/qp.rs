//! Minimum-norm point of a polyhedron `{z : a_i·z <= b_i}`.
//!
//! Dual active-set scheme (Goldfarb–Idnani with identity Hessian): start at
//! the unconstrained minimizer `z = 0`, repeatedly add the most violated
//! constraint, and walk along the projected direction while dropping active
//! constraints whose multipliers would turn negative. An added constraint
//! that is linearly dependent on the active set with no droppable
//! multiplier proves the polyhedron empty.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum MinNormOutcome {
    /// Minimizer, its Euclidean norm, and the final active set.
    Solved {
        z: Vec<f64>,
        norm: f64,
        active: Vec<usize>,
        iterations: usize,
    },
    /// No point satisfies all constraints.
    Infeasible { iterations: usize },
}

/// Projects the origin onto `{z : normals[i]·z <= offsets[i]}`.
///
/// `feas_eps` is the violation below which a constraint counts as
/// satisfied. The iteration cap is `100 * normals.len()`.
pub fn min_norm_point(
    normals: &[Vec<f64>],
    offsets: &[f64],
    feas_eps: f64,
) -> Result<MinNormOutcome> {
    let m = normals.len();
    if offsets.len() != m {
        return Err(Error::InvalidArgument("constraint count mismatch".into()));
    }
    let Some(first) = normals.first() else {
        return Ok(MinNormOutcome::Solved {
            z: Vec::new(),
            norm: 0.0,
            active: Vec::new(),
            iterations: 0,
        });
    };
    let n = first.len();
    if normals.iter().any(|a| a.len() != n) {
        return Err(Error::InvalidArgument(
            "constraint dimension mismatch".into(),
        ));
    }
    let cap = 100 * m.max(1);

    let a: Vec<DVector<f64>> = normals
        .iter()
        .map(|v| DVector::from_column_slice(v))
        .collect();
    let mut z = DVector::<f64>::zeros(n);
    let mut active: Vec<usize> = Vec::new();
    let mut lambda: Vec<f64> = Vec::new();
    let mut iterations = 0;

    loop {
        // Most violated constraint.
        let violated = (0..m)
            .filter(|i| !active.contains(i))
            .map(|i| (i, a[i].dot(&z) - offsets[i]))
            .filter(|&(_, v)| v > feas_eps)
            .max_by(|x, y| x.1.total_cmp(&y.1).then(y.0.cmp(&x.0)));
        let Some((p, _)) = violated else {
            let norm = z.norm();
            if !norm.is_finite() {
                return Err(Error::SolverNonConvergence { iterations });
            }
            return Ok(MinNormOutcome::Solved {
                z: z.iter().copied().collect(),
                norm,
                active,
                iterations,
            });
        };

        let mut t_total = 0.0;
        loop {
            iterations += 1;
            if iterations > cap {
                return Err(Error::SolverNonConvergence { iterations: cap });
            }
            let (step, r) = projected_step(&a, &active, &a[p]);
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::SolverNonConvergence { iterations });
            }
            let step_sq = step.norm_squared();
            let scale = a[p].norm_squared().max(1e-300);

            // Largest partial step before an active multiplier hits zero.
            let mut partial: Option<(usize, f64)> = None;
            for (k, (&rk, &lk)) in r.iter().zip(&lambda).enumerate() {
                if rk > 1e-14 {
                    let t = lk / rk;
                    if partial.is_none_or(|(_, best)| t < best) {
                        partial = Some((k, t));
                    }
                }
            }

            // A full active set spans the space, so a_p depends on it; the
            // relative threshold catches nearly parallel active normals.
            if active.len() >= n || step_sq <= 1e-16 * scale {
                let Some((k, t)) = partial else {
                    return Ok(MinNormOutcome::Infeasible { iterations });
                };
                for (l, rk) in lambda.iter_mut().zip(&r) {
                    *l -= t * rk;
                }
                t_total += t;
                active.remove(k);
                lambda.remove(k);
                continue;
            }

            let viol = a[p].dot(&z) - offsets[p];
            let t_full = viol / step_sq;
            match partial {
                Some((k, t_part)) if t_part < t_full => {
                    z += &step * t_part;
                    for (l, rk) in lambda.iter_mut().zip(&r) {
                        *l -= t_part * rk;
                    }
                    t_total += t_part;
                    active.remove(k);
                    lambda.remove(k);
                }
                _ => {
                    z += &step * t_full;
                    for (l, rk) in lambda.iter_mut().zip(&r) {
                        *l -= t_full * rk;
                    }
                    t_total += t_full;
                    active.push(p);
                    lambda.push(t_total);
                    break;
                }
            }
        }
    }
}

/// For active normals `N`, returns `(-(I - N (NᵀN)⁻¹ Nᵀ) a, (NᵀN)⁻¹ Nᵀ a)`.
fn projected_step(
    a: &[DVector<f64>],
    active: &[usize],
    ap: &DVector<f64>,
) -> (DVector<f64>, Vec<f64>) {
    if active.is_empty() {
        return (-ap.clone(), Vec::new());
    }
    let cols: Vec<DVector<f64>> = active.iter().map(|&i| a[i].clone()).collect();
    let nmat = DMatrix::from_columns(&cols);
    let gram = nmat.transpose() * &nmat;
    let rhs = nmat.transpose() * ap;
    let r = match gram.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => gram
            .pseudo_inverse(1e-14)
            .map(|g| g * &rhs)
            .unwrap_or_else(|_| DVector::zeros(active.len())),
    };
    let step = &nmat * &r - ap;
    (step, r.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solved(normals: &[Vec<f64>], offsets: &[f64]) -> (Vec<f64>, f64) {
        match min_norm_point(normals, offsets, 1e-12).unwrap() {
            MinNormOutcome::Solved { z, norm, .. } => (z, norm),
            MinNormOutcome::Infeasible { .. } => panic!("unexpectedly infeasible"),
        }
    }

    #[test]
    fn single_halfspace() {
        // z1 <= -1: projection (-1, 0)
        let (z, n) = solved(&[vec![1.0, 0.0]], &[-1.0]);
        assert!((z[0] + 1.0).abs() < 1e-14 && z[1].abs() < 1e-14);
        assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn origin_feasible() {
        let (z, n) = solved(&[vec![1.0, 0.0], vec![0.0, 1.0]], &[1.0, 2.0]);
        assert_eq!(n, 0.0);
        assert_eq!(z, vec![0.0, 0.0]);
    }

    #[test]
    fn corner_of_two_halfspaces() {
        // -z1 <= -1, -z2 <= -1  -> (1, 1)
        let (z, n) = solved(&[vec![-1.0, 0.0], vec![0.0, -1.0]], &[-1.0, -1.0]);
        assert!((z[0] - 1.0).abs() < 1e-14 && (z[1] - 1.0).abs() < 1e-14);
        assert!((n - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn opposing_halfspaces_infeasible() {
        let out = min_norm_point(&[vec![1.0, 0.0], vec![-1.0, 0.0]], &[-1.0, -1.0], 1e-12).unwrap();
        assert!(matches!(out, MinNormOutcome::Infeasible { .. }));
    }

    #[test]
    fn drops_constraint_that_becomes_inactive() {
        // Adding the second constraint frees the first one.
        let normals = vec![vec![-1.0, 0.0], vec![-1.0, -1.0]];
        let offsets = vec![-1.0, -3.0];
        let (z, _) = solved(&normals, &offsets);
        // Minimizer of |z| on z1 + z2 >= 3 is (1.5, 1.5), which has z1 >= 1.
        assert!((z[0] - 1.5).abs() < 1e-12 && (z[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn redundant_copies_are_fine() {
        let normals = vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]];
        let offsets = vec![-1.0, -1.0, -2.0];
        let (z, _) = solved(&normals, &offsets);
        assert!((z[0] + 1.0).abs() < 1e-12);
    }
}
