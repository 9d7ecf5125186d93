//! Toeplitz matrices and their split into a circulant plus a skew-circulant part.
//!
//! A `K × K` Toeplitz matrix `T[i, j] = t_{i−j}` is determined by its first
//! column `(t_0, t_1, …, t_{K−1})` and first row `(t_0, t_{−1}, …, t_{−(K−1)})`.
//! It can always be written as `T = C + S` where `C` is circulant with first
//! row `a` and `S` is skew-circulant with first row `b`:
//!
//! ```text
//! a_0 = b_0 = t_0 / 2
//! a_j = (t_{−j} + t_{K−j}) / 2
//! b_j = (t_{−j} − t_{K−j}) / 2        j = 1, …, K−1
//! ```
//!
//! Both parts are diagonalized by (modulated) Fourier bases, so their
//! eigenvalues come from a DFT of the generator.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use thiserror::Error;

use crate::matkit::{CMatrix, LinalgError, Spectrum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToeplitzError {
    #[error("generator must have at least one entry")]
    Empty,
    #[error("first row has {row} entries but first column has {col}")]
    LengthMismatch { row: usize, col: usize },
    #[error("first row and first column disagree on the diagonal entry")]
    DiagonalMismatch,
    #[error("non-finite generator entry at index {index}")]
    NonFinite { index: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_generator(values: &[Complex64]) -> Result<(), ToeplitzError> {
    if values.is_empty() {
        return Err(ToeplitzError::Empty);
    }
    if let Some(index) = values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(ToeplitzError::NonFinite { index });
    }
    Ok(())
}

/// `exp(−iπ·n/K)`, with `n` reduced modulo `2K` before the trig call.
fn half_twiddle(n: usize, k: usize) -> Complex64 {
    let r = (n % (2 * k)) as f64;
    Complex64::from_polar(1.0, -PI * r / k as f64)
}

/// A Toeplitz matrix held by its first row and first column.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    first_row: Vec<Complex64>,
    first_col: Vec<Complex64>,
}

impl ToeplitzSpec {
    /// `first_row = (t_0, t_{−1}, …)`, `first_col = (t_0, t_1, …)`.
    pub fn new(
        first_row: Vec<Complex64>,
        first_col: Vec<Complex64>,
    ) -> Result<Self, ToeplitzError> {
        check_generator(&first_row)?;
        check_generator(&first_col)?;
        if first_row.len() != first_col.len() {
            return Err(ToeplitzError::LengthMismatch {
                row: first_row.len(),
                col: first_col.len(),
            });
        }
        if first_row[0] != first_col[0] {
            return Err(ToeplitzError::DiagonalMismatch);
        }
        Ok(Self {
            first_row,
            first_col,
        })
    }

    /// Hermitian Toeplitz matrix from its first column; the diagonal is
    /// replaced by its real part.
    pub fn hermitian(first_col: Vec<Complex64>) -> Result<Self, ToeplitzError> {
        check_generator(&first_col)?;
        let mut first_col = first_col;
        first_col[0] = Complex64::new(first_col[0].re, 0.0);
        let first_row = first_col.iter().map(|z| z.conj()).collect();
        Self::new(first_row, first_col)
    }

    pub fn k(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }

    pub fn first_col(&self) -> &[Complex64] {
        &self.first_col
    }

    /// `t_offset` for `−(K−1) ≤ offset ≤ K−1`.
    pub fn t(&self, offset: isize) -> Complex64 {
        if offset >= 0 {
            self.first_col[offset as usize]
        } else {
            self.first_row[offset.unsigned_abs()]
        }
    }

    pub fn dense(&self) -> CMatrix {
        let k = self.k();
        CMatrix::from_fn_unchecked(k, k, |i, j| self.t(i as isize - j as isize))
    }
}

/// Projects a square matrix onto the Toeplitz matrices.
///
/// Each diagonal is replaced by its mean, which is the Frobenius-nearest
/// Toeplitz matrix. Returns the projection and `‖m − T‖_F`.
pub fn nearest_toeplitz(m: &CMatrix) -> Result<(ToeplitzSpec, f64), ToeplitzError> {
    let k = m.rows();
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    if k == 0 {
        return Err(ToeplitzError::Empty);
    }
    let diagonal_mean = |offset: isize| -> Complex64 {
        let len = k - offset.unsigned_abs();
        let sum: Complex64 = (0..len)
            .map(|s| {
                if offset >= 0 {
                    m[(s + offset as usize, s)]
                } else {
                    m[(s, s + offset.unsigned_abs())]
                }
            })
            .sum();
        sum / len as f64
    };
    let first_col: Vec<Complex64> = (0..k).map(|d| diagonal_mean(d as isize)).collect();
    let mut first_row: Vec<Complex64> = (0..k).map(|d| diagonal_mean(-(d as isize))).collect();
    first_row[0] = first_col[0];
    let spec = ToeplitzSpec::new(first_row, first_col)?;

    let mut acc = 0.0;
    for i in 0..k {
        for j in 0..k {
            acc += (m[(i, j)] - spec.t(i as isize - j as isize)).norm_sqr();
        }
    }
    Ok((spec, acc.sqrt()))
}

/// Circulant matrix with first row `(a_0, …, a_{K−1})`: `C[i, j] = a_{(j−i) mod K}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    gen: Vec<Complex64>,
}

impl CirculantMatrix {
    pub fn new(gen: Vec<Complex64>) -> Result<Self, ToeplitzError> {
        check_generator(&gen)?;
        Ok(Self { gen })
    }

    /// Inverse of [`CirculantMatrix::eigenvalues`] with the eigenvalues taken
    /// in DFT index order `m = 0, …, K−1`.
    pub fn from_eigenvalues(lambda: &[Complex64]) -> Result<Self, ToeplitzError> {
        check_generator(lambda)?;
        let k = lambda.len();
        let gen = (0..k)
            .map(|j| {
                lambda
                    .iter()
                    .enumerate()
                    .map(|(m, &l)| l * half_twiddle(2 * m * j, k).conj())
                    .sum::<Complex64>()
                    / k as f64
            })
            .collect();
        Self::new(gen)
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Complex64] {
        &self.gen
    }

    pub fn dense(&self) -> CMatrix {
        let k = self.k();
        CMatrix::from_fn_unchecked(k, k, |i, j| self.gen[(j + k - i) % k])
    }

    /// `λ_m = Σ_j a_j·exp(−2πi·mj/K)` in index order.
    pub fn eigenvalues_unsorted(&self) -> Vec<Complex64> {
        let k = self.k();
        (0..k)
            .map(|m| {
                self.gen
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| a * half_twiddle(2 * m * j, k))
                    .sum()
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Spectrum {
        Spectrum::new(self.eigenvalues_unsorted())
    }
}

/// Skew-circulant matrix with first row `(b_0, …, b_{K−1})`:
/// `S[i, j] = b_{j−i}` on and above the diagonal and `−b_{K−(i−j)}` below it.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewCirculantMatrix {
    gen: Vec<Complex64>,
}

impl SkewCirculantMatrix {
    pub fn new(gen: Vec<Complex64>) -> Result<Self, ToeplitzError> {
        check_generator(&gen)?;
        Ok(Self { gen })
    }

    /// Inverse of [`SkewCirculantMatrix::eigenvalues`], eigenvalues in index order.
    pub fn from_eigenvalues(mu: &[Complex64]) -> Result<Self, ToeplitzError> {
        check_generator(mu)?;
        let k = mu.len();
        let gen = (0..k)
            .map(|j| {
                mu.iter()
                    .enumerate()
                    .map(|(m, &u)| u * half_twiddle(j + 2 * m * j, k).conj())
                    .sum::<Complex64>()
                    / k as f64
            })
            .collect();
        Self::new(gen)
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Complex64] {
        &self.gen
    }

    pub fn dense(&self) -> CMatrix {
        let k = self.k();
        CMatrix::from_fn_unchecked(k, k, |i, j| {
            if j >= i {
                self.gen[j - i]
            } else {
                -self.gen[k - (i - j)]
            }
        })
    }

    /// `μ_m = Σ_j b_j·η^j·exp(−2πi·mj/K)` with `η = exp(−iπ/K)`, in index order.
    ///
    /// `η^j·ω^{mj}` runs over the K-th roots of −1, which is what makes the
    /// wrap-around sign flip cancel.
    pub fn eigenvalues_unsorted(&self) -> Vec<Complex64> {
        let k = self.k();
        (0..k)
            .map(|m| {
                self.gen
                    .iter()
                    .enumerate()
                    .map(|(j, &b)| b * half_twiddle(j + 2 * m * j, k))
                    .sum()
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Spectrum {
        Spectrum::new(self.eigenvalues_unsorted())
    }
}

pub fn circulant_dense(c: &CirculantMatrix) -> CMatrix {
    c.dense()
}

pub fn skew_circulant_dense(s: &SkewCirculantMatrix) -> CMatrix {
    s.dense()
}

pub fn circulant_eigenvalues(c: &CirculantMatrix) -> Spectrum {
    c.eigenvalues()
}

pub fn skew_circulant_eigenvalues(s: &SkewCirculantMatrix) -> Spectrum {
    s.eigenvalues()
}

/// Circulant and skew-circulant parts of a (projected) Toeplitz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPair {
    pub circ: CirculantMatrix,
    pub skew: SkewCirculantMatrix,
    /// `‖m − T‖_F` between the original matrix and its Toeplitz projection.
    pub projection_residual: f64,
}

impl SplitPair {
    /// `dense(circ) + dense(skew)`.
    pub fn reconstruct(&self) -> CMatrix {
        &self.circ.dense() + &self.skew.dense()
    }
}

/// Splits a Toeplitz matrix into circulant + skew-circulant parts.
pub fn split(t: &ToeplitzSpec) -> SplitPair {
    let k = t.k();
    let half = |z: Complex64| z * 0.5;
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    a.push(half(t.first_row[0]));
    b.push(half(t.first_row[0]));
    for j in 1..k {
        let upper = t.first_row[j];
        let wrapped = t.first_col[k - j];
        a.push(half(upper + wrapped));
        b.push(half(upper - wrapped));
    }
    SplitPair {
        circ: CirculantMatrix { gen: a },
        skew: SkewCirculantMatrix { gen: b },
        projection_residual: 0.0,
    }
}

/// Projects `m` onto the Toeplitz matrices and splits the projection.
pub fn split_matrix(m: &CMatrix) -> Result<SplitPair, ToeplitzError> {
    let (spec, residual) = nearest_toeplitz(m)?;
    let mut pair = split(&spec);
    pair.projection_residual = residual;
    Ok(pair)
}

/// Reads the Toeplitz generators straight off the first row and column of
/// `m`, ignoring the interior, and splits them. The residual reported is
/// `‖m − T‖_F` for that edge-defined `T`.
pub fn split_from_edges(m: &CMatrix) -> Result<SplitPair, ToeplitzError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    let spec = ToeplitzSpec::new(m.row(0).to_vec(), m.column(0))?;
    let residual = (m - &spec.dense()).frobenius_norm();
    let mut pair = split(&spec);
    pair.projection_residual = residual;
    Ok(pair)
}

impl Zero for ToeplitzSpec {
    fn zero() -> Self {
        Self {
            first_row: alloc::vec![Complex64::zero()],
            first_col: alloc::vec![Complex64::zero()],
        }
    }

    fn is_zero(&self) -> bool {
        self.first_row
            .iter()
            .chain(&self.first_col)
            .all(Zero::is_zero)
    }
}

impl core::ops::Add for ToeplitzSpec {
    type Output = ToeplitzSpec;

    /// Generator-wise sum; both operands must share `K`.
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.k(), rhs.k(), "Toeplitz sum of different sizes");
        Self {
            first_row: self
                .first_row
                .iter()
                .zip(&rhs.first_row)
                .map(|(x, y)| x + y)
                .collect(),
            first_col: self
                .first_col
                .iter()
                .zip(&rhs.first_col)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}
