//! Shifted circulant/skew-circulant splitting iteration.
//!
//! For a split `ε = ε₁ + ε₂` and a shift `α > 0` the iteration matrix is
//!
//! ```text
//! ε(α) = (αI + ε₂)⁻¹ (αI − ε₁) (αI + ε₁)⁻¹ (αI − ε₂)
//! ```
//!
//! and its spectral radius is bounded by
//!
//! ```text
//! σ(α) = max_j |α − λ_j| / |α + λ_j| · max_j |α − μ_j| / |α + μ_j|
//! ```
//!
//! where `λ_j`, `μ_j` are the eigenvalues of `ε₁`, `ε₂`. The bound is only a
//! theorem when both parts are Hermitian positive definite; [`bound_applies`]
//! checks that.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::matkit::{self, eigenvalues, hermitian_eigen, CMatrix, LinalgError};
use crate::toeplitz::{CirculantMatrix, SkewCirculantMatrix};

/// Shifts with `|α + λ|` below this are treated as hitting an eigenvalue.
pub const DEGENERATE_SHIFT: f64 = 1e-14;

/// Relative bracket width at which golden-section refinement stops.
pub const REFINE_TOLERANCE: f64 = 1e-6;

/// Which shifted factor of the iteration matrix failed to factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftFactor {
    Circulant,
    SkewCirculant,
}

impl fmt::Display for ShiftFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftFactor::Circulant => f.write_str("αI + ε₁ (circulant)"),
            ShiftFactor::SkewCirculant => f.write_str("αI + ε₂ (skew-circulant)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IterationError {
    #[error("shift parameter must be positive and finite, got {alpha}")]
    NonPositiveAlpha { alpha: f64 },
    #[error("{factor} is singular at α = {alpha} (pivot {pivot:e})")]
    SingularShift {
        factor: ShiftFactor,
        alpha: f64,
        pivot: f64,
    },
    #[error("α = {alpha} cancels an eigenvalue ({eigenvalue})")]
    DegenerateShift { alpha: f64, eigenvalue: Complex64 },
    #[error("circulant part is {circ}x{circ} but skew-circulant part is {skew}x{skew}")]
    SizeMismatch { circ: usize, skew: usize },
    #[error("alpha grid is empty")]
    EmptyGrid,
    #[error("invalid alpha grid [{min}, {max}] with {points} points")]
    InvalidGrid { min: f64, max: f64, points: usize },
    #[error("iteration matrix is singular, capacity is unbounded")]
    SingularIteration,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_alpha(alpha: f64) -> Result<(), IterationError> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(IterationError::NonPositiveAlpha { alpha })
    }
}

fn check_sizes(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
) -> Result<usize, IterationError> {
    if circ.k() != skew.k() {
        return Err(IterationError::SizeMismatch {
            circ: circ.k(),
            skew: skew.k(),
        });
    }
    Ok(circ.k())
}

/// `ε(α)` together with its spectral radius.
#[derive(Debug, Clone)]
pub struct IterationMatrix {
    pub alpha: f64,
    pub m: CMatrix,
    pub rho: f64,
}

fn shifted(dense: &CMatrix, alpha: f64, sign: f64) -> CMatrix {
    let k = dense.rows();
    &CMatrix::scaled_identity(k, Complex64::new(alpha, 0.0))
        + &dense.scale(Complex64::new(sign, 0.0))
}

fn solve_shift(
    a: &CMatrix,
    b: &CMatrix,
    factor: ShiftFactor,
    alpha: f64,
) -> Result<CMatrix, IterationError> {
    matkit::solve(a, b).map_err(|e| match e {
        LinalgError::Singular { pivot } => IterationError::SingularShift {
            factor,
            alpha,
            pivot,
        },
        other => other.into(),
    })
}

/// Builds `(αI + ε₂)⁻¹ (αI − ε₁) (αI + ε₁)⁻¹ (αI − ε₂)` with two solves.
pub fn iteration_matrix(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
    alpha: f64,
) -> Result<IterationMatrix, IterationError> {
    check_alpha(alpha)?;
    check_sizes(circ, skew)?;
    let e1 = circ.dense();
    let e2 = skew.dense();
    let right = solve_shift(
        &shifted(&e1, alpha, 1.0),
        &shifted(&e2, alpha, -1.0),
        ShiftFactor::Circulant,
        alpha,
    )?;
    let middle = matkit::matmul(&shifted(&e1, alpha, -1.0), &right)?;
    let m = solve_shift(
        &shifted(&e2, alpha, 1.0),
        &middle,
        ShiftFactor::SkewCirculant,
        alpha,
    )?;
    let rho = eigenvalues(&m)?.spectral_radius();
    Ok(IterationMatrix { alpha, m, rho })
}

/// The product with every factor shifted by `+ε`:
/// `(αI + ε₂)⁻¹ (αI + ε₁) (αI + ε₁)⁻¹ (αI + ε₂)`.
///
/// The middle pair cancels, so this is the identity for every input. It is
/// kept so tests can pin that the real iteration matrix is not this one.
pub fn literal_product(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
    alpha: f64,
) -> Result<CMatrix, IterationError> {
    check_alpha(alpha)?;
    check_sizes(circ, skew)?;
    let p1 = shifted(&circ.dense(), alpha, 1.0);
    let p2 = shifted(&skew.dense(), alpha, 1.0);
    let right = solve_shift(&p1, &p2, ShiftFactor::Circulant, alpha)?;
    let middle = matkit::matmul(&p1, &right)?;
    solve_shift(&p2, &middle, ShiftFactor::SkewCirculant, alpha)
}

/// `max_j |α − z_j| / |α + z_j|` over the given eigenvalues.
pub fn shift_ratio_max(values: &[Complex64], alpha: f64) -> Result<f64, IterationError> {
    check_alpha(alpha)?;
    let a = Complex64::new(alpha, 0.0);
    let mut worst = 0.0f64;
    for &z in values {
        let den = (a + z).norm();
        if den < DEGENERATE_SHIFT {
            return Err(IterationError::DegenerateShift {
                alpha,
                eigenvalue: z,
            });
        }
        worst = worst.max((a - z).norm() / den);
    }
    Ok(worst)
}

/// Eigenvalues of both split parts, computed once and reused across shifts.
#[derive(Debug, Clone)]
pub struct SplitSpectra {
    pub circulant: Vec<Complex64>,
    pub skew: Vec<Complex64>,
}

impl SplitSpectra {
    pub fn new(circ: &CirculantMatrix, skew: &SkewCirculantMatrix) -> Self {
        Self {
            circulant: circ.eigenvalues().into_vec(),
            skew: skew.eigenvalues().into_vec(),
        }
    }

    pub fn sigma(&self, alpha: f64) -> Result<f64, IterationError> {
        Ok(shift_ratio_max(&self.circulant, alpha)? * shift_ratio_max(&self.skew, alpha)?)
    }
}

/// The spectral-radius bound `σ(α)`, from the DFT eigenvalues of both parts.
pub fn sigma_bound(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
    alpha: f64,
) -> Result<f64, IterationError> {
    check_alpha(alpha)?;
    check_sizes(circ, skew)?;
    SplitSpectra::new(circ, skew).sigma(alpha)
}

/// `log₂ det(ε(α)⁻¹) = −log₂ |det ε(α)|`.
pub fn capacity_of_iteration(m: &IterationMatrix) -> Result<f64, IterationError> {
    match matkit::logdet2(&m.m) {
        Ok(v) => Ok(-v),
        Err(LinalgError::Singular { .. }) => Err(IterationError::SingularIteration),
        Err(e) => Err(e.into()),
    }
}

/// True when both parts are Hermitian positive definite, i.e. when
/// `ρ(ε(α)) ≤ σ(α) < 1` is guaranteed for every `α > 0`.
pub fn bound_applies(circ: &CirculantMatrix, skew: &SkewCirculantMatrix) -> bool {
    let hpd = |m: &CMatrix| match hermitian_eigen(m) {
        Ok(eig) => eig.min() > 0.0,
        Err(_) => false,
    };
    circ.k() == skew.k() && hpd(&circ.dense()) && hpd(&skew.dense())
}

/// Logarithmically spaced shifts `min, …, max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self {
            min: 1e-3,
            max: 1e3,
            points: 50,
        }
    }
}

impl AlphaGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, IterationError> {
        let grid = Self { min, max, points };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), IterationError> {
        if self.points == 0 {
            return Err(IterationError::EmptyGrid);
        }
        let ok = self.min > 0.0
            && self.min.is_finite()
            && self.max.is_finite()
            && (self.max > self.min || (self.points == 1 && self.max == self.min));
        if !ok {
            return Err(IterationError::InvalidGrid {
                min: self.min,
                max: self.max,
                points: self.points,
            });
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return alloc::vec![self.min];
        }
        let (lo, hi) = (self.min.ln(), self.max.ln());
        let step = (hi - lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    (lo + step * i as f64).exp()
                }
            })
            .collect()
    }
}

/// One evaluated shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSample {
    pub alpha: f64,
    /// `+∞` when the shift is degenerate.
    pub sigma: f64,
    /// `NaN` when `ε(α)` could not be formed.
    pub rho: f64,
    /// `+∞` when `ε(α)` is singular or could not be formed.
    pub capacity_bits: f64,
}

#[derive(Debug, Clone)]
pub struct AlphaSearchResult {
    pub alpha_star: f64,
    pub sigma_at_star: f64,
    pub rho_at_star: f64,
    /// Every evaluated shift, ascending in `alpha`.
    pub sweep: Vec<AlphaSample>,
    pub bound_valid: bool,
}

impl AlphaSearchResult {
    pub fn star(&self) -> Option<&AlphaSample> {
        self.sweep.iter().find(|s| s.alpha == self.alpha_star)
    }
}

fn sample(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
    spectra: &SplitSpectra,
    alpha: f64,
) -> AlphaSample {
    let sigma = spectra.sigma(alpha).unwrap_or(f64::INFINITY);
    let (rho, capacity_bits) = match iteration_matrix(circ, skew, alpha) {
        Ok(m) => (m.rho, capacity_of_iteration(&m).unwrap_or(f64::INFINITY)),
        Err(_) => (f64::NAN, f64::INFINITY),
    };
    AlphaSample {
        alpha,
        sigma,
        rho,
        capacity_bits,
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > REFINE_TOLERANCE * 0.5 * (hi + lo) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Chooses the shift minimizing `σ(α)`.
///
/// The grid argmin is refined by golden-section search between its two grid
/// neighbours. When the bound applies, `√(λ_min·λ_max)` of the circulant part
/// is evaluated as well. The reported `α*` is the best of all evaluated shifts.
pub fn optimize_alpha(
    circ: &CirculantMatrix,
    skew: &SkewCirculantMatrix,
    grid: &AlphaGrid,
) -> Result<AlphaSearchResult, IterationError> {
    grid.validate()?;
    check_sizes(circ, skew)?;
    let spectra = SplitSpectra::new(circ, skew);
    let sigma_or_inf = |a: f64| spectra.sigma(a).unwrap_or(f64::INFINITY);

    let alphas = grid.values();
    let sigmas: Vec<f64> = alphas.iter().map(|&a| sigma_or_inf(a)).collect();
    let best = sigmas
        .iter()
        .enumerate()
        .fold(0, |best, (i, s)| if *s < sigmas[best] { i } else { best });

    let mut candidates = alphas.clone();
    if alphas.len() > 1 {
        let lo = alphas[best.saturating_sub(1)];
        let hi = alphas[(best + 1).min(alphas.len() - 1)];
        candidates.push(golden_section(sigma_or_inf, lo, hi));
    }
    let bound_valid = bound_applies(circ, skew);
    if bound_valid {
        let re: Vec<f64> = spectra.circulant.iter().map(|z| z.re).collect();
        let lmin = re.iter().copied().fold(f64::INFINITY, f64::min);
        let lmax = re.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        candidates.push((lmin * lmax).sqrt());
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let sweep: Vec<AlphaSample> = candidates
        .iter()
        .map(|&a| sample(circ, skew, &spectra, a))
        .collect();
    let star = sweep.iter().fold(
        &sweep[0],
        |best, s| if s.sigma < best.sigma { s } else { best },
    );

    Ok(AlphaSearchResult {
        alpha_star: star.alpha,
        sigma_at_star: star.sigma,
        rho_at_star: star.rho,
        bound_valid,
        sweep,
    })
}
