//! Dense solves with partial pivoting for the crate's tiny fixed-size
//! systems (5×5 comparative statics, 5×5 Newton steps, 2×2 least squares).

use crate::error::Error;
use crate::Result;

/// Solve `A x = b` in place by LU with partial pivoting.
///
/// Intended for the crate's n <= 5 systems; returns `SingularSystem` when
/// the best available pivot is numerically zero.
pub fn solve(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1.0);
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite matrix"))
            .expect("nonempty column");
        if pivot <= 1e-14 * scale {
            return Err(Error::SingularSystem(format!(
                "pivot {pivot:.3e} in column {col} below threshold"
            )));
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            b.swap(pivot_row, col);
        }
        for r in (col + 1)..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let acc: f64 = ((row + 1)..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - acc) / a[row][row];
    }
    Ok(x)
}

/// Solve a copy of `A x = b`, leaving the inputs untouched.
pub fn solve_copy(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    solve(&mut a, &mut b)
}

/// Infinity-norm condition number estimate via the explicit inverse
/// (n solves; fine at this size).
pub fn condition_inf(a: &[Vec<f64>]) -> Result<f64> {
    let n = a.len();
    let norm_a = a
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let mut inv_rows_abs = vec![0.0_f64; n];
    for col in 0..n {
        let mut e = vec![0.0; n];
        e[col] = 1.0;
        let x = solve_copy(a, &e)?;
        for (r, v) in x.iter().enumerate() {
            inv_rows_abs[r] += v.abs();
        }
    }
    let norm_inv = inv_rows_abs.into_iter().fold(0.0_f64, f64::max);
    Ok(norm_a * norm_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn solves_a_known_system() {
        let a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let b = vec![8.0, -11.0, -3.0];
        let x = solve_copy(&a, &b).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[2], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let x = solve_copy(&a, &[3.0, 7.0]).unwrap();
        assert_abs_diff_eq!(x[0], 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(
            solve_copy(&a, &[1.0, 2.0]).unwrap_err(),
            Error::SingularSystem(_)
        ));
    }

    #[test]
    fn identity_condition_is_one() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_abs_diff_eq!(condition_inf(&a).unwrap(), 1.0, epsilon = 1e-12);
    }
}
