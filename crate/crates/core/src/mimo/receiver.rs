use alloc::vec::Vec;

use num_complex::Complex64;

use super::{MimoScenario, SimError};
use crate::matkit::{
    self, hermitian_eigen, inv_sqrt_hermitian_pd, logdet2, matmul, right_nullspace, CMatrix,
    LinalgError, RANK_TOLERANCE,
};

/// Block-diagonalization precoders, one `m_t × streams` matrix per user.
///
/// User `k`'s precoder lies in the null space of every other active user's
/// channel. Inside that null space it picks the dominant right singular
/// directions of `H_k`, with `min(m_r, null dimension)` orthonormal columns.
pub fn bd_precoders(scenario: &MimoScenario) -> Result<Vec<CMatrix>, SimError> {
    let users = scenario.channels.len();
    let m_t = scenario.m_t();
    let mut precoders = Vec::with_capacity(users);
    for k in 0..users {
        let others: Vec<&CMatrix> = scenario
            .channels
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h)
            .collect();
        let null = if others.is_empty() {
            CMatrix::identity(m_t)
        } else {
            right_nullspace(&CMatrix::vstack(&others)?, RANK_TOLERANCE)
        };
        if null.cols() == 0 {
            return Err(SimError::Infeasible { user: k });
        }
        let h_k = &scenario.channels[k];
        let projected = matmul(h_k, &null)?;
        let streams = h_k.rows().min(null.cols());
        let gram = matmul(&projected.adjoint(), &projected)?;
        let eig = hermitian_eigen(&gram)?;
        let d = null.cols();
        // eigenvalues ascend, so the dominant directions are the last columns
        let dominant = CMatrix::from_fn(d, streams, |i, j| eig.vectors[(i, d - 1 - j)])?;
        precoders.push(matmul(&null, &dominant)?);
    }
    Ok(precoders)
}

/// Interference-plus-noise covariance `R = H_I·Q_I·H_Iᴴ + σ_z²·I` with
/// `Q_I = (P_I / m_i)·I`.
pub fn interference_covariance(scenario: &MimoScenario) -> CMatrix {
    let h_i = &scenario.interference_channel;
    let n = h_i.rows();
    let per_dim = if scenario.m_i() == 0 {
        0.0
    } else {
        scenario.interference_power / scenario.m_i() as f64
    };
    let interference = (h_i * &h_i.adjoint()).scale(Complex64::new(per_dim, 0.0));
    (&interference + &CMatrix::scaled_identity(n, Complex64::new(scenario.noise_var, 0.0)))
        .hermitian_part()
}

/// `W = R^{-1/2}`, so that `W·R·Wᴴ = I`.
pub fn whitening_filter(r: &CMatrix) -> Result<CMatrix, LinalgError> {
    inv_sqrt_hermitian_pd(r)
}

/// MMSE error covariance `(I + H̃·Q·H̃ᴴ·Υ⁻¹)⁻¹`.
///
/// Since `I + SΥ⁻¹ = (Υ + S)Υ⁻¹` with `S = H̃QH̃ᴴ`, the result is `Υ(Υ + S)⁻¹`,
/// obtained here from the single solve `(Υ + S)ᴴ·εᴴ = Υᴴ`. The result is
/// Hermitian when `Υ` is a multiple of the identity (the whitened case) and
/// otherwise only similar to a Hermitian matrix; it is returned unsymmetrized.
pub fn mmse_error_covariance(
    h_eff: &CMatrix,
    q: &CMatrix,
    upsilon: &CMatrix,
) -> Result<CMatrix, LinalgError> {
    let signal = matmul(&matmul(h_eff, q)?, &h_eff.adjoint())?;
    if signal.shape() != upsilon.shape() {
        return Err(LinalgError::DimensionMismatch {
            op: "mmse_error_covariance",
            left: signal.shape(),
            right: upsilon.shape(),
        });
    }
    let total = &signal + upsilon;
    Ok(matkit::solve(&total.adjoint(), &upsilon.adjoint())?.adjoint())
}

/// `Σ_k log₂ det(ε_k⁻¹)`.
pub fn sum_capacity(error_covs: &[CMatrix]) -> Result<f64, LinalgError> {
    error_covs.iter().map(|e| logdet2(e).map(|v| -v)).sum()
}

/// Everything the receiver side computes for one frame.
#[derive(Debug, Clone)]
pub struct ReceiverChain {
    pub precoders: Vec<CMatrix>,
    /// Stacked `H = [H_1; …; H_K]`.
    pub channel: CMatrix,
    /// `R = H_I Q_I H_Iᴴ + σ_z² I`.
    pub interference_plus_noise: CMatrix,
    pub whitener: CMatrix,
    /// `H̃ = W·H·[F_1 … F_K]`.
    pub effective_channel: CMatrix,
    /// `Q`, block diagonal with `(P_k / streams_k)·I` blocks.
    pub signal_cov: CMatrix,
    /// `Υ = W·R·Wᴴ`.
    pub interference_cov: CMatrix,
    /// `ε^mmse`, Hermitian.
    pub error_cov: CMatrix,
    pub capacity_bits: f64,
}

/// Relative asymmetry of `ε` above which the chain refuses to symmetrize it.
const SYMMETRIZE_LIMIT: f64 = 1e-8;

impl ReceiverChain {
    pub fn build(scenario: &MimoScenario) -> Result<Self, SimError> {
        let precoders = bd_precoders(scenario)?;
        let channel = scenario.stacked_channel();
        let blocks: Vec<&CMatrix> = precoders.iter().collect();
        let precoder = CMatrix::hstack(&blocks)?;

        let interference_plus_noise = interference_covariance(scenario);
        let whitener = whitening_filter(&interference_plus_noise)?;
        let effective_channel = matmul(&matmul(&whitener, &channel)?, &precoder)?;
        let interference_cov = matmul(
            &matmul(&whitener, &interference_plus_noise)?,
            &whitener.adjoint(),
        )?
        .hermitian_part();

        let stream_power: Vec<Complex64> = precoders
            .iter()
            .flat_map(|f| {
                let streams = f.cols();
                core::iter::repeat_n(
                    Complex64::new(scenario.user_power / streams as f64, 0.0),
                    streams,
                )
            })
            .collect();
        let signal_cov = CMatrix::from_diagonal(&stream_power)?;

        let raw = mmse_error_covariance(&effective_channel, &signal_cov, &interference_cov)?;
        let relative =
            raw.hermitian_defect().unwrap_or(0.0) / raw.frobenius_norm().max(f64::MIN_POSITIVE);
        if relative > SYMMETRIZE_LIMIT {
            return Err(SimError::NonHermitianCovariance { relative });
        }
        let error_cov = raw.hermitian_part();
        let capacity_bits = sum_capacity(core::slice::from_ref(&error_cov))?;

        Ok(Self {
            precoders,
            channel,
            interference_plus_noise,
            whitener,
            effective_channel,
            signal_cov,
            interference_cov,
            error_cov,
            capacity_bits,
        })
    }

    /// `max_{l≠k} ‖H_l·F_k‖_F`.
    pub fn bd_residual(&self, scenario: &MimoScenario) -> f64 {
        let mut worst = 0.0f64;
        for (k, f) in self.precoders.iter().enumerate() {
            for (l, h) in scenario.channels.iter().enumerate() {
                if l != k {
                    worst = worst.max((h * f).frobenius_norm());
                }
            }
        }
        worst
    }
}
