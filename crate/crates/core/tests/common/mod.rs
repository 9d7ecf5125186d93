#![allow(dead_code)]

use ecsplit_core::matkit::{matmul, CMatrix};
use ecsplit_core::toeplitz::{CirculantMatrix, SkewCirculantMatrix, ToeplitzSpec};
use ecsplit_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| random_complex(rng)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::new(rows, cols, random_vec(rng, rows * cols)).unwrap()
}

/// `B·Bᴴ + shift·I`, Hermitian positive definite.
pub fn random_hpd<R: Rng>(rng: &mut R, n: usize, shift: f64) -> CMatrix {
    let b = random_matrix(rng, n, n);
    &matmul(&b, &b.adjoint()).unwrap() + &CMatrix::scaled_identity(n, c(shift, 0.0))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    random_matrix(rng, n, n).hermitian_part()
}

pub fn random_toeplitz<R: Rng>(rng: &mut R, k: usize) -> ToeplitzSpec {
    let mut row = random_vec(rng, k);
    let col = random_vec(rng, k);
    row[0] = col[0];
    ToeplitzSpec::new(row, col).unwrap()
}

/// Hermitian PD circulant and skew-circulant parts with eigenvalues in
/// `[lo, hi]`, built from their spectra.
pub fn random_hpd_pair<R: Rng>(
    rng: &mut R,
    k: usize,
    lo: f64,
    hi: f64,
) -> (CirculantMatrix, SkewCirculantMatrix) {
    let lam: Vec<Complex64> = (0..k).map(|_| c(rng.random_range(lo..hi), 0.0)).collect();
    let mu: Vec<Complex64> = (0..k).map(|_| c(rng.random_range(lo..hi), 0.0)).collect();
    (
        CirculantMatrix::from_eigenvalues(&lam).unwrap(),
        SkewCirculantMatrix::from_eigenvalues(&mu).unwrap(),
    )
}

/// Largest distance in an optimal-by-greedy pairing of two multisets.
///
/// Each value of `a` is paired with the nearest unused value of `b`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets of different size");
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Entry-by-entry triple loop.
pub fn naive_matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = c(0.0, 0.0);
        for k in 0..a.cols() {
            acc += a[(i, k)] * b[(k, j)];
        }
        acc
    })
    .unwrap()
}
