use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{CMatrix, LinalgError, PIVOT_TOLERANCE};

/// LU factorization with partial pivoting, `P·A = L·U`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    // L (unit diagonal, below) and U (on and above) packed together.
    packed: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `a`, failing when a pivot drops below `1e-12 · ‖a‖_F`.
    pub fn new(a: &CMatrix) -> Result<Self, LinalgError> {
        let n = a.require_square()?;
        let threshold = PIVOT_TOLERANCE * a.frobenius_norm();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmag <= threshold || pmag == 0.0 {
                return Err(LinalgError::Singular { pivot: pmag });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= f * ukj;
                }
            }
        }
        Ok(Self {
            n,
            packed: lu,
            perm,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest pivot magnitude `min |u_ii|`.
    pub fn min_pivot(&self) -> f64 {
        (0..self.n)
            .map(|i| self.packed[i * self.n + i].norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Solves `A·X = B` column by column.
    pub fn solve(&self, b: &CMatrix) -> Result<CMatrix, LinalgError> {
        let n = self.n;
        if b.rows() != n {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: (n, n),
                right: b.shape(),
            });
        }
        let m = b.cols();
        let mut x = CMatrix::zeros(n, m);
        let mut col = Vec::with_capacity(n);
        for j in 0..m {
            col.clear();
            col.extend(self.perm.iter().map(|&p| b[(p, j)]));
            // forward, unit lower
            for i in 0..n {
                let row = &self.packed[i * n..i * n + i];
                let dot: Complex64 = row.iter().zip(&col[..i]).map(|(l, x)| l * x).sum();
                col[i] -= dot;
            }
            // backward, upper
            for i in (0..n).rev() {
                let row = &self.packed[i * n + i + 1..(i + 1) * n];
                let dot: Complex64 = row.iter().zip(&col[i + 1..]).map(|(u, x)| u * x).sum();
                col[i] = (col[i] - dot) / self.packed[i * n + i];
            }
            for (i, &v) in col.iter().enumerate() {
                x.set(i, j, v);
            }
        }
        Ok(x)
    }

    /// `log₂ |det A|` as a sum of pivot logarithms.
    pub fn log2_abs_det(&self) -> f64 {
        (0..self.n)
            .map(|i| self.packed[i * self.n + i].norm().log2())
            .sum()
    }

    /// Determinant, including the permutation sign.
    pub fn det(&self) -> Complex64 {
        let mut d: Complex64 = (0..self.n).map(|i| self.packed[i * self.n + i]).product();
        if permutation_is_odd(&self.perm) {
            d = -d;
        }
        d
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = alloc::vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Solves `a·X = b`.
///
/// The returned `X` satisfies `‖aX − b‖_F ≤ 1e-9 · ‖b‖_F` for matrices that
/// are not close to singular; near-singular `a` is rejected with
/// [`LinalgError::Singular`] carrying the failing pivot.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, LinalgError> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Lu::new(a)?.solve(b)
}

/// `log₂ |det a|` computed from an LU factorization.
pub fn logdet2(a: &CMatrix) -> Result<f64, LinalgError> {
    Ok(Lu::new(a)?.log2_abs_det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkit::matmul;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = CMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 + 0.5)).unwrap();
        assert_eq!(solve(&CMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn scalar_matrix_inverse() {
        let x = solve(&CMatrix::scaled_identity(4, c(2.0)), &CMatrix::identity(4)).unwrap();
        assert!(x.max_abs_diff(&CMatrix::scaled_identity(4, c(0.5))) < 1e-15);
    }

    #[test]
    fn singular_reports_pivot() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        match solve(&a, &CMatrix::identity(2)) {
            Err(LinalgError::Singular { pivot }) => assert!(pivot < 1e-12),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn non_square_rejected() {
        assert_eq!(
            solve(&CMatrix::zeros(2, 3), &CMatrix::zeros(2, 1)).unwrap_err(),
            LinalgError::NotSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn logdet_known_values() {
        assert_eq!(logdet2(&CMatrix::identity(3)).unwrap(), 0.0);
        assert!((logdet2(&CMatrix::scaled_identity(4, c(2.0))).unwrap() - 4.0).abs() < 1e-14);
        assert!(matches!(
            logdet2(&CMatrix::zeros(2, 2)),
            Err(LinalgError::Singular { .. })
        ));
    }

    #[test]
    fn det_sign_follows_permutation() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let d = Lu::new(&a).unwrap().det();
        assert!((d - c(-1.0)).norm() < 1e-15);
        let a = CMatrix::from_real_rows(&[&[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0], &[1.0, 0.0, 0.0]])
            .unwrap();
        let d = Lu::new(&a).unwrap().det();
        assert!((d - c(6.0)).norm() < 1e-14);
        let prod = matmul(&a, &a).unwrap();
        assert!((Lu::new(&prod).unwrap().det() - c(36.0)).norm() < 1e-12);
    }
}
