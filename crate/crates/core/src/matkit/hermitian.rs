use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{CMatrix, LinalgError, Spectrum, HERMITIAN_TOLERANCE};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V·diag(values)·Vᴴ` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary; column `j` belongs to `values[j]`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `V·diag(f(λ))·Vᴴ`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn_unchecked(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k]).sum()
        })
    }
}

pub(crate) fn check_hermitian(a: &CMatrix) -> Result<usize, LinalgError> {
    let n = a.require_square()?;
    let asymmetry = a.hermitian_defect().unwrap_or(0.0);
    if asymmetry > HERMITIAN_TOLERANCE * a.frobenius_norm() {
        return Err(LinalgError::NotHermitian { asymmetry });
    }
    Ok(n)
}

/// Cyclic complex Jacobi eigen-decomposition.
///
/// The input must be Hermitian to `1e-10` relative Frobenius asymmetry; its
/// Hermitian part is what gets decomposed.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen, LinalgError> {
    let n = check_hermitian(a)?;
    let mut w = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let norm = w.frobenius_norm();
    let target = f64::EPSILON * norm;

    let mut converged = n < 2 || norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut w, &mut v, n, p, q, f64::EPSILON * target);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| w[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        converged = off <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let values = order.iter().map(|&i| w[(i, i)].re).collect();
    let vectors = CMatrix::from_fn_unchecked(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate(w: &mut CMatrix, v: &mut CMatrix, n: usize, p: usize, q: usize, floor: f64) {
    let apq = w[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    // skip rotations that would not change the diagonal in floating point, or
    // whose phase factor would be dominated by rounding
    if mag <= floor || mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        w.set(p, q, Complex64::zero());
        w.set(q, p, Complex64::zero());
        return;
    }
    let phase = apq / mag;
    let phase = phase / phase.norm();
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U_pp = c, U_pq = s, U_qp = −s·e^{−iφ}, U_qq = c·e^{−iφ}
    let up = phase.conj();
    let u_qp = -up * s;
    let u_qq = up * c;

    let data = w.as_mut_slice();
    for i in 0..n {
        let x = data[i * n + p];
        let y = data[i * n + q];
        data[i * n + p] = x * c + y * u_qp;
        data[i * n + q] = x * s + y * u_qq;
    }
    for j in 0..n {
        let x = data[p * n + j];
        let y = data[q * n + j];
        data[p * n + j] = x * c + y * u_qp.conj();
        data[q * n + j] = x * s + y * u_qq.conj();
    }
    data[p * n + q] = Complex64::zero();
    data[q * n + p] = Complex64::zero();
    data[p * n + p] = Complex64::new(data[p * n + p].re, 0.0);
    data[q * n + q] = Complex64::new(data[q * n + q].re, 0.0);

    let vd = v.as_mut_slice();
    for i in 0..n {
        let x = vd[i * n + p];
        let y = vd[i * n + q];
        vd[i * n + p] = x * c + y * u_qp;
        vd[i * n + q] = x * s + y * u_qq;
    }
}

/// Real eigenvalues of a Hermitian matrix as a [`Spectrum`].
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Spectrum, LinalgError> {
    let eig = hermitian_eigen(a)?;
    Ok(Spectrum::new(
        eig.values
            .into_iter()
            .map(|l| Complex64::new(l, 0.0))
            .collect(),
    ))
}

/// Principal inverse square root `a^{-1/2}` of a Hermitian positive definite matrix.
///
/// Fails with [`LinalgError::NotPositiveDefinite`] when the smallest eigenvalue
/// is not above `1e-12 · λ_max`.
pub fn inv_sqrt_hermitian_pd(a: &CMatrix) -> Result<CMatrix, LinalgError> {
    let eig = hermitian_eigen(a)?;
    let (lmin, lmax) = (eig.min(), eig.max());
    if eig.values.is_empty() {
        return Ok(CMatrix::zeros(0, 0));
    }
    if lmin <= 0.0 || lmin <= 1e-12 * lmax {
        return Err(LinalgError::NotPositiveDefinite {
            min_eigenvalue: lmin,
        });
    }
    Ok(eig.map(|l| 1.0 / l.sqrt()).hermitian_part())
}
