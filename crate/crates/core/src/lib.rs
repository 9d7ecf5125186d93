#![no_std]

//! Circulant + skew-circulant splitting of MMSE error covariances in a
//! multiuser MIMO downlink.
//!
//! The crate is `no_std` and only needs an allocator. It contains
//!
//! - [`matkit`]: dense complex linear algebra (LU, eigenvalues, Hermitian
//!   eigen-decomposition, null spaces, inverse square roots),
//! - [`toeplitz`]: Toeplitz projection and the circulant/skew-circulant split
//!   with DFT-based eigenvalues,
//! - [`splitting`]: the shifted splitting iteration matrix, its spectral-radius
//!   bound and the search for the best shift,
//! - [`mimo`]: the block-diagonalized downlink simulator that produces the
//!   error covariances and sum rates.
//!
//! File formats and the command-line driver live in the `ecsplit` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod matkit;
pub mod mimo;
pub mod splitting;
pub mod toeplitz;

pub use num_complex::Complex64;
