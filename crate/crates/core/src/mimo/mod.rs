//! Multiuser MIMO downlink with inter-cell interference.
//!
//! One base station with `m_t` antennas serves `k_active` single-antenna
//! users. Intra-cell interference is removed by block diagonalization, the
//! inter-cell interference plus noise is whitened, and the linear MMSE
//! receiver's error covariance gives the sum rate. The stacked
//! `k_active × k_active` error covariance is what the splitting machinery in
//! [`crate::toeplitz`] and [`crate::splitting`] operates on.

mod experiment;
mod receiver;
mod scenario;

pub use experiment::{
    run_experiment, ExperimentTable, FrameFailure, FrameOutcome, Method, SplitDiagnostics,
    SumRateRow, SweepRow,
};
pub use receiver::{
    bd_precoders, interference_covariance, mmse_error_covariance, sum_capacity, whitening_filter,
    ReceiverChain,
};
pub use scenario::{db_to_linear, generate_scenario, MimoScenario};

use alloc::string::String;
use thiserror::Error;

use crate::matkit::LinalgError;
use crate::splitting::{AlphaGrid, IterationError};
use crate::toeplitz::ToeplitzError;

/// Parameters of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Transmit antennas at the base station.
    pub m_t: usize,
    /// Users in the cell; the first `k_active` of them are scheduled.
    pub k_total: usize,
    pub k_active: usize,
    /// Receive antennas per user.
    pub m_r: usize,
    /// Dimension of the inter-cell interferer signal.
    pub m_i: usize,
    pub snr_db_grid: alloc::vec::Vec<f64>,
    /// Interference-to-noise ratio; `-inf` disables inter-cell interference.
    pub inr_db: f64,
    /// Monte Carlo channel realizations per SNR point.
    pub frames: usize,
    /// Packets per frame. Only second-order statistics are simulated, so this
    /// is carried for bookkeeping and does not change any result.
    pub packets: usize,
    pub seed: u64,
    pub alpha_grid: AlphaGrid,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            m_t: 4,
            k_total: 20,
            k_active: 4,
            m_r: 1,
            m_i: 4,
            snr_db_grid: alloc::vec![-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0],
            inr_db: 0.0,
            frames: 10,
            packets: 200,
            seed: 42,
            alpha_grid: AlphaGrid::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let invalid = |key: &'static str, reason: &str| {
            Err(SimError::InvalidConfig {
                key,
                reason: String::from(reason),
            })
        };
        let counts = [
            ("m_t", self.m_t),
            ("k_total", self.k_total),
            ("k_active", self.k_active),
            ("m_r", self.m_r),
            ("m_i", self.m_i),
            ("frames", self.frames),
            ("packets", self.packets),
        ];
        for (key, value) in counts {
            if value == 0 {
                return invalid(key, "must be at least 1");
            }
        }
        if self.k_active > self.k_total {
            return invalid("k_active", "cannot exceed k_total");
        }
        if self.k_active * self.m_r > self.m_t {
            return invalid(
                "k_active",
                "k_active * m_r must not exceed m_t for block diagonalization",
            );
        }
        if self.snr_db_grid.is_empty() {
            return invalid("snr_db", "needs at least one value");
        }
        if self.snr_db_grid.iter().any(|s| !s.is_finite()) {
            return invalid("snr_db", "values must be finite");
        }
        if self.inr_db.is_nan() || self.inr_db == f64::INFINITY {
            return invalid("inr_db", "must be finite or -inf");
        }
        if self.alpha_grid.validate().is_err() {
            if self.alpha_grid.points == 0 {
                return invalid("alpha_grid_points", "must be at least 1");
            }
            if !(self.alpha_grid.min > 0.0 && self.alpha_grid.min.is_finite()) {
                return invalid("alpha_grid_min", "must be positive and finite");
            }
            return invalid("alpha_grid_max", "must be finite and above alpha_grid_min");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration value for `{key}`: {reason}")]
    InvalidConfig { key: &'static str, reason: String },
    #[error(
        "block diagonalization infeasible for user {user}: complementary channel has no null space"
    )]
    Infeasible { user: usize },
    #[error("error covariance is not Hermitian (relative asymmetry {relative:e})")]
    NonHermitianCovariance { relative: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Toeplitz(#[from] ToeplitzError),
    #[error(transparent)]
    Iteration(#[from] IterationError),
}
