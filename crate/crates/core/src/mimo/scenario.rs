use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::SimConfig;
use crate::matkit::CMatrix;

/// Channel and interference statistics for one frame at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct MimoScenario {
    /// `H_k`, one `m_r × m_t` block per active user.
    pub channels: Vec<CMatrix>,
    /// `H_I`, stacked over users: `(k_active·m_r) × m_i`.
    pub interference_channel: CMatrix,
    /// `σ_z²`.
    pub noise_var: f64,
    /// `P_I`, total interferer power; `Q_I = (P_I / m_i)·I`.
    pub interference_power: f64,
    /// `P_k`, per-user transmit power.
    pub user_power: f64,
}

impl MimoScenario {
    /// All user channels stacked into `(k_active·m_r) × m_t`.
    pub fn stacked_channel(&self) -> CMatrix {
        let blocks: Vec<&CMatrix> = self.channels.iter().collect();
        CMatrix::vstack(&blocks).expect("user channels share m_t")
    }

    pub fn m_t(&self) -> usize {
        self.channels.first().map_or(0, CMatrix::cols)
    }

    pub fn m_i(&self) -> usize {
        self.interference_channel.cols()
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn complex_gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_matrix(rng: &mut ChaCha20Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn_unchecked(rows, cols, |_, _| complex_gaussian(rng))
}

/// Draws the channels of frame `frame_index`.
///
/// Entries are i.i.d. `CN(0, 1)`. The random stream depends only on
/// `(cfg.seed, frame_index)`, so every SNR point of a frame sees the same
/// channels. With unit user power, `σ_z² = 10^(−snr/10)` and
/// `P_I = σ_z²·10^(inr/10)`.
pub fn generate_scenario(cfg: &SimConfig, snr_db: f64, frame_index: usize) -> MimoScenario {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    rng.set_stream(frame_index as u64);

    let channels = (0..cfg.k_active)
        .map(|_| gaussian_matrix(&mut rng, cfg.m_r, cfg.m_t))
        .collect();
    let interference_channel = gaussian_matrix(&mut rng, cfg.k_active * cfg.m_r, cfg.m_i);

    let user_power = 1.0;
    let noise_var = user_power / db_to_linear(snr_db);
    let interference_power = if cfg.inr_db == f64::NEG_INFINITY {
        0.0
    } else {
        noise_var * db_to_linear(cfg.inr_db)
    };
    MimoScenario {
        channels,
        interference_channel,
        noise_var,
        interference_power,
        user_power,
    }
}
