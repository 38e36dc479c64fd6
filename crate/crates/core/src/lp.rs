//! Dense dictionary simplex for small linear programs of the form
//!
//! ```text
//! maximize  c·y   subject to  A y <= b,  y >= 0,  with b >= 0
//! ```
//!
//! The origin is always feasible, so a single phase suffices. Bland's rule
//! keeps the method finite on the heavily degenerate systems produced by
//! supporting-direction queries (every right-hand side is zero there).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { y: Vec<f64>, value: f64 },
    Unbounded,
}

const PIVOT_EPS: f64 = 1e-12;

/// Solves the program above. `rows[i]` is the `i`-th row of `A`.
pub fn maximize(c: &[f64], rows: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let n = c.len();
    let m = rows.len();
    if b.len() != m || rows.iter().any(|r| r.len() != n) {
        return Err(Error::LinearProgram("inconsistent problem shape".into()));
    }
    if b.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::LinearProgram(
            "right-hand side must be nonnegative".into(),
        ));
    }

    // Dictionary: basic_i = b_i - sum_j t[i][j] * nonbasic_j
    //             z       = z0  + sum_j obj[j] * nonbasic_j
    // Variable ids: 0..n are structural, n..n+m are slacks.
    let mut t: Vec<Vec<f64>> = rows.to_vec();
    let mut rhs = b.to_vec();
    let mut obj = c.to_vec();
    let mut z0 = 0.0;
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();

    let cap = 50 * (n + m).max(1) + 1000;
    for _ in 0..cap {
        // Bland: entering = lowest-id nonbasic with positive reduced cost.
        let entering = (0..n)
            .filter(|&j| obj[j] > PIVOT_EPS)
            .min_by_key(|&j| nonbasic[j]);
        let Some(col) = entering else {
            let mut y = vec![0.0; n];
            for (i, &v) in basic.iter().enumerate() {
                if v < n {
                    y[v] = rhs[i];
                }
            }
            return Ok(LpOutcome::Optimal { y, value: z0 });
        };

        // Ratio test, ties broken by lowest basic id.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][col] > PIVOT_EPS {
                let ratio = rhs[i] / t[i][col];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best - 1e-15 || (ratio <= best + 1e-15 && basic[i] < basic[k]) {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };

        pivot(&mut t, &mut rhs, &mut obj, &mut z0, row, col);
        std::mem::swap(&mut basic[row], &mut nonbasic[col]);
    }
    Err(Error::SolverNonConvergence { iterations: cap })
}

fn pivot(
    t: &mut [Vec<f64>],
    rhs: &mut [f64],
    obj: &mut [f64],
    z0: &mut f64,
    row: usize,
    col: usize,
) {
    let p = t[row][col];
    let n = obj.len();
    // Solve the pivot row for the entering variable.
    for j in 0..n {
        if j != col {
            t[row][j] /= p;
        }
    }
    t[row][col] = 1.0 / p;
    rhs[row] = (rhs[row] / p).max(0.0);

    let pivot_row = t[row].clone();
    let pivot_rhs = rhs[row];
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f == 0.0 {
            continue;
        }
        for j in 0..n {
            if j != col {
                r[j] -= f * pivot_row[j];
            }
        }
        r[col] = -f * pivot_row[col];
        rhs[i] = (rhs[i] - f * pivot_rhs).max(0.0);
    }
    let f = obj[col];
    for j in 0..n {
        if j != col {
            obj[j] -= f * pivot_row[j];
        }
    }
    obj[col] = -f * pivot_row[col];
    *z0 += f * pivot_rhs;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(c: &[f64], rows: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
        match maximize(c, rows, b).unwrap() {
            LpOutcome::Optimal { y, value } => (y, value),
            LpOutcome::Unbounded => panic!("unexpected unbounded"),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let (y, v) = optimal(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        );
        assert!((v - 36.0).abs() < 1e-12);
        assert!((y[0] - 2.0).abs() < 1e-12 && (y[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(&[1.0, 0.0], &[vec![-1.0, 1.0]], &[1.0]).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_zero_rhs() {
        // max y1 - y2 subject to y1 - y2 <= 0 and y1 <= 1: optimum 0.
        let (_, v) = optimal(
            &[1.0, -1.0],
            &[vec![1.0, -1.0], vec![1.0, 0.0]],
            &[0.0, 1.0],
        );
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_rhs() {
        assert!(maximize(&[1.0], &[vec![1.0]], &[-1.0]).is_err());
    }
}
