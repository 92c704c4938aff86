//! Exact rational LP feasibility via a phase-1 simplex with Bland's rule.
//!
//! Decides whether { lambda >= 0 : sum lambda_i = total, A lambda <= b } is
//! non-empty, with every entry a `BigRational`. The inequality rows get
//! slacks (their right-hand sides are non-negative here, so slacks form a
//! feasible partial basis) and the single equality row gets one artificial
//! variable; feasibility is equivalent to driving the artificial to zero.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `columns[i]` holds the coefficients of lambda_i in the `<=` rows; `b` the
/// right-hand sides (must be >= 0); `total` the equality-row right-hand side.
pub(crate) fn simplex_feasible(
    columns: &[Vec<BigRational>],
    b: &[BigRational],
    total: &BigRational,
) -> bool {
    let m = columns.len();
    let rows = b.len();
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    debug_assert!(!total.is_negative());
    if total.is_zero() {
        return true;
    }
    if m == 0 {
        return false;
    }

    // Columns: lambda_0..m-1 | slack_0..rows-1 | artificial | rhs.
    let width = m + rows + 2;
    let art = m + rows;
    let rhs = m + rows + 1;
    let mut t = vec![vec![BigRational::zero(); width]; rows + 1];
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            t[r][j] = v.clone();
        }
        t[rows][j] = BigRational::from_integer(1.into());
    }
    for r in 0..rows {
        t[r][m + r] = BigRational::from_integer(1.into());
        t[r][rhs] = b[r].clone();
    }
    t[rows][art] = BigRational::from_integer(1.into());
    t[rows][rhs] = total.clone();

    // Phase-1 objective: minimize the artificial, i.e. the equality row's
    // infeasibility. The objective row starts as a copy of that row.
    let mut obj: Vec<BigRational> = t[rows].clone();
    obj[art] = BigRational::zero();
    let mut basis: Vec<usize> = (0..rows).map(|r| m + r).collect();
    basis.push(art);

    loop {
        // Bland: first improvable non-artificial column.
        let Some(enter) = (0..m + rows).find(|&j| obj[j] > BigRational::zero()) else {
            return obj[rhs].is_zero();
        };
        // Ratio test, ties broken by smallest basis variable.
        let mut leave: Option<usize> = None;
        for r in 0..=rows {
            if t[r][enter] <= BigRational::zero() {
                continue;
            }
            let ratio = &t[r][rhs] / &t[r][enter];
            let better = match leave {
                None => true,
                Some(l) => {
                    let cur = &t[l][rhs] / &t[l][enter];
                    ratio < cur || (ratio == cur && basis[r] < basis[l])
                }
            };
            if better {
                leave = Some(r);
            }
        }
        let Some(leave) = leave else {
            // Unbounded improving direction cannot happen for a bounded
            // phase-1 objective; treat defensively as infeasible.
            return false;
        };
        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..=rows {
            if r == leave || t[r][enter].is_zero() {
                continue;
            }
            let factor = t[r][enter].clone();
            for j in 0..width {
                let delta = &factor * &t[leave][j];
                t[r][j] -= delta;
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for j in 0..width {
                let delta = &factor * &t[leave][j];
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn midpoint_certificate_is_feasible() {
        // lambda1 (2,0) + lambda2 (0,2) <= (1,1), sum = 1: lambda = (1/2, 1/2).
        let cols = vec![vec![q(2), q(0)], vec![q(0), q(2)]];
        assert!(simplex_feasible(&cols, &[q(1), q(1)], &q(1)));
    }

    #[test]
    fn coordinate_deficit_is_infeasible() {
        // lambda (1,1) <= (1,0) with sum = 1 forces lambda = 0 in row 2.
        let cols = vec![vec![q(1), q(1)]];
        assert!(!simplex_feasible(&cols, &[q(1), q(0)], &q(1)));
    }

    #[test]
    fn zero_total_is_trivially_feasible() {
        let cols = vec![vec![q(5)]];
        assert!(simplex_feasible(&cols, &[q(0)], &q(0)));
    }

    #[test]
    fn scaling_matters() {
        // sum = 2 with a single generator (1,1) fits under (2,2) but not (1,2).
        let cols = vec![vec![q(1), q(1)]];
        assert!(simplex_feasible(&cols, &[q(2), q(2)], &q(2)));
        assert!(!simplex_feasible(&cols, &[q(1), q(2)], &q(2)));
    }
}
