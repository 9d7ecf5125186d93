use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;

use super::CMatrix;

const MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi: rotates the columns of `a` until they are
/// mutually orthogonal. Returns the column-major rotated columns and the
/// accumulated unitary `V` (also column-major), so that `a·V = [cols]`.
fn orthogonalize_columns(a: &CMatrix) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    if m == 0 {
        return (cols, v);
    }
    // Pairs whose coupling is below this are numerically orthogonal already;
    // rotating them would only amplify rounding in the phase factor.
    let frob_sq: f64 = cols.iter().flatten().map(|z| z.norm_sqr()).sum();
    let floor = f64::EPSILON * f64::EPSILON * frob_sq;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g <= floor || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = gamma / g;
                let unphase = (phase / phase.norm()).conj();
                rotate_pair(&mut cols, p, q, c, s, unphase);
                rotate_pair(&mut v, p, q, c, s, unphase);
            }
        }
        if !rotated {
            break;
        }
    }
    (cols, v)
}

fn rotate_pair(
    cols: &mut [Vec<Complex64>],
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    unphase: Complex64,
) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * unphase;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// Singular values in descending order (`min(rows, cols)` of them).
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let (cols, _) = orthogonalize_columns(a);
    let mut s: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s.truncate(a.rows().min(a.cols()));
    s
}

/// Orthonormal basis (as columns) of the right null space of `a`.
///
/// Directions whose singular value is at most `tol_rank · σ_max` count as
/// null. A full-column-rank input yields a matrix with zero columns.
pub fn right_nullspace(a: &CMatrix, tol_rank: f64) -> CMatrix {
    let n = a.cols();
    let (cols, v) = orthogonalize_columns(a);
    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let smax = norms.iter().copied().fold(0.0, f64::max);
    let cutoff = tol_rank * smax;
    let basis: Vec<Vec<Complex64>> = norms
        .iter()
        .zip(v)
        .filter(|(s, _)| **s <= cutoff)
        .map(|(_, col)| col)
        .collect();
    CMatrix::from_fn_unchecked(n, basis.len(), |i, j| basis[j][i])
}
