use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{CMatrix, LinalgError};

/// Eigenvalues sorted by descending modulus, ties broken by descending real
/// part and then descending imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    /// Sorts `values` into canonical order.
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(canonical_order);
        Self { values }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.values.iter()
    }

    /// Largest modulus, 0 for an empty spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.values.first().map_or(0.0, |z| z.norm())
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }
}

fn canonical_order(a: &Complex64, b: &Complex64) -> Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then_with(|| b.re.total_cmp(&a.re))
        .then_with(|| b.im.total_cmp(&a.im))
}

const ITERATIONS_PER_EIGENVALUE: usize = 60;
const EXCEPTIONAL_SHIFT_PERIOD: usize = 10;

/// Eigenvalues of a general complex square matrix.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR sweeps with Wilkinson shifts and periodic exceptional shifts.
pub fn eigenvalues(a: &CMatrix) -> Result<Spectrum, LinalgError> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(Spectrum::new(alloc::vec![Complex64::zero(); n]));
    }
    let mut h: Vec<Complex64> = a.as_slice().iter().map(|z| z / scale).collect();
    reduce_to_hessenberg(&mut h, n);
    let mut values = hessenberg_qr(&mut h, n)?;
    for v in &mut values {
        *v *= scale;
    }
    Ok(Spectrum::new(values))
}

fn reduce_to_hessenberg(h: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = Vec::with_capacity(n);
    for k in 0..n - 2 {
        let tail: f64 = (k + 2..n).map(|i| h[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let xnorm = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.is_zero() {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        v.clear();
        v.extend((k + 1..n).map(|i| h[i * n + k]));
        v[0] += phase * xnorm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // H ← (I − β v vᴴ) H on rows k+1..n
        for j in k..n {
            let w: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i) * n + j])
                .sum();
            let w = w * beta;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i) * n + j] -= w * vi;
            }
        }
        // H ← H (I − β v vᴴ) on columns k+1..n
        for i in 0..n {
            let w: Complex64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| h[i * n + k + 1 + j] * vj)
                .sum();
            let w = w * beta;
            for (j, vj) in v.iter().enumerate() {
                h[i * n + k + 1 + j] -= w * vj.conj();
            }
        }
        for i in k + 2..n {
            h[i * n + k] = Complex64::zero();
        }
    }
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>, LinalgError> {
    let eps = f64::EPSILON;
    let hnorm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cap = ITERATIONS_PER_EIGENVALUE * n;
    let mut values = Vec::with_capacity(n);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            values.push(h[0]);
            break;
        }
        // look for a negligible subdiagonal entry inside the active window
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let mut s = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if sub <= eps * s {
                h[lo * n + lo - 1] = Complex64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values.push(h[hi * n + hi]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(LinalgError::NoConvergence {
                iterations: total - 1,
            });
        }

        let shift = if since_deflation.is_multiple_of(EXCEPTIONAL_SHIFT_PERIOD) {
            h[hi * n + hi] + 0.75 * h[hi * n + hi - 1].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        for i in lo..=hi {
            h[i * n + i] -= shift;
        }
        rotations.clear();
        for k in lo..hi {
            let (c, s) = givens(h[k * n + k], h[(k + 1) * n + k]);
            rotations.push((c, s));
            for j in k..=hi {
                let u = h[k * n + j];
                let v = h[(k + 1) * n + j];
                h[k * n + j] = u * c + s * v;
                h[(k + 1) * n + j] = -s.conj() * u + v * c;
            }
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let u = h[i * n + k];
                let v = h[i * n + k + 1];
                h[i * n + k] = u * c + v * s.conj();
                h[i * n + k + 1] = -u * s + v * c;
            }
        }
        for i in lo..=hi {
            h[i * n + i] += shift;
        }
    }
    Ok(values)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Rotation `[[c, s], [−s̄, c]]` that maps `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    if y.is_zero() {
        return (1.0, Complex64::zero());
    }
    if x.is_zero() {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let xn = x.norm();
    let r = xn.hypot(y.norm());
    let c = xn / r;
    let s = (x / xn) * y.conj() / r;
    (c, s)
}
