//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ecsplit_core::matkit::{eigenvalues, hermitian_eigenvalues, logdet2, matmul, solve, CMatrix};
use ecsplit_core::mimo::{generate_scenario, run_experiment, Method, ReceiverChain, SimConfig};
use ecsplit_core::splitting::{iteration_matrix, literal_product, sigma_bound};
use ecsplit_core::toeplitz::{split, CirculantMatrix, SkewCirculantMatrix, ToeplitzSpec};
use ecsplit_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("multisets of equal size");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

fn within(limit: Duration, started: Instant, detail: String) -> Check {
    let elapsed = started.elapsed();
    if elapsed < limit {
        Ok(format!(
            "{detail}; {:.2}s < {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Err(format!(
            "{detail}; took {:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn worked_example_golden() -> Check {
    let started = Instant::now();
    let row = vec![
        c(1.0, 0.0),
        c(0.6498, -0.6493),
        c(0.6599, 0.7454),
        c(0.1732, 0.9510),
    ];
    let col = vec![
        c(1.0, 0.0),
        c(0.6498, 0.6493),
        c(0.6599, -0.7454),
        c(0.1732, -0.9510),
    ];
    let a = [
        c(0.5, 0.0),
        c(0.4115, -0.8001),
        c(0.6599, 0.0),
        c(0.4115, 0.8001),
    ];
    let b = [
        c(0.5, 0.0),
        c(0.2383, 0.1508),
        c(0.0, 0.7454),
        c(-0.2383, 0.1508),
    ];
    let pair = split(&ToeplitzSpec::new(row, col).map_err(|e| e.to_string())?);
    let err = |got: &[Complex64], want: &[Complex64]| {
        got.iter()
            .zip(want)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    };
    let (ea, eb) = (
        err(pair.circ.generator(), &a),
        err(pair.skew.generator(), &b),
    );
    if ea > 1e-4 || eb > 1e-4 {
        return Err(format!("max generator error a {ea:.2e}, b {eb:.2e} > 1e-4"));
    }
    within(
        Duration::from_secs(1),
        started,
        format!("max error a {ea:.1e}, b {eb:.1e}"),
    )
}

fn reconstruction_identity() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for case in 0..500 {
        let k = 1 + case % 32;
        let mut row = random_vec(&mut rng, k);
        let col = random_vec(&mut rng, k);
        row[0] = col[0];
        let t = ToeplitzSpec::new(row, col).map_err(|e| e.to_string())?;
        let pair = split(&t);
        worst = worst.max((&pair.circ.dense() + &pair.skew.dense()).max_abs_diff(&t.dense()));
    }
    if worst > 1e-13 {
        return Err(format!("max entry error {worst:.2e} > 1e-13"));
    }
    within(
        Duration::from_secs(10),
        started,
        format!("500 specs, max entry error {worst:.1e}"),
    )
}

fn fast_eigenvalues() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let k = 1 + case % 32;
        let circ = CirculantMatrix::new(random_vec(&mut rng, k)).map_err(|e| e.to_string())?;
        let skew = SkewCirculantMatrix::new(random_vec(&mut rng, k)).map_err(|e| e.to_string())?;
        let dense_c = eigenvalues(&circ.dense()).map_err(|e| e.to_string())?;
        let dense_s = eigenvalues(&skew.dense()).map_err(|e| e.to_string())?;
        worst = worst
            .max(multiset_distance(
                circ.eigenvalues().as_slice(),
                dense_c.as_slice(),
            ))
            .max(multiset_distance(
                skew.eigenvalues().as_slice(),
                dense_s.as_slice(),
            ));
    }
    if worst > 1e-9 {
        return Err(format!("max multiset distance {worst:.2e} > 1e-9"));
    }
    within(
        Duration::from_secs(30),
        started,
        format!("200+200 generators, max distance {worst:.1e}"),
    )
}

fn spectral_radius_bound() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_gap = f64::NEG_INFINITY;
    let mut worst_sigma = 0.0f64;
    for case in 0..100 {
        let k = 1 + case % 16;
        // Hermitian PD parts built from positive real spectra
        let lam: Vec<Complex64> = (0..k)
            .map(|_| c(rng.random_range(0.01..50.0), 0.0))
            .collect();
        let mu: Vec<Complex64> = (0..k)
            .map(|_| c(rng.random_range(0.01..50.0), 0.0))
            .collect();
        let circ = CirculantMatrix::from_eigenvalues(&lam).map_err(|e| e.to_string())?;
        let skew = SkewCirculantMatrix::from_eigenvalues(&mu).map_err(|e| e.to_string())?;
        for i in 0..20 {
            let alpha = 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0);
            let sigma = sigma_bound(&circ, &skew, alpha).map_err(|e| e.to_string())?;
            let rho = iteration_matrix(&circ, &skew, alpha)
                .map_err(|e| e.to_string())?
                .rho;
            worst_gap = worst_gap.max(rho - sigma);
            worst_sigma = worst_sigma.max(sigma);
        }
    }
    if worst_gap > 1e-10 || worst_sigma >= 1.0 {
        return Err(format!(
            "max rho - sigma {worst_gap:.2e}, max sigma {worst_sigma}"
        ));
    }
    within(
        Duration::from_secs(60),
        started,
        format!("2000 shifts, max rho - sigma {worst_gap:.1e}, max sigma {worst_sigma:.6}"),
    )
}

fn literal_product_degenerates() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for case in 0..50 {
        let k = 1 + case % 10;
        let circ = CirculantMatrix::new(random_vec(&mut rng, k)).map_err(|e| e.to_string())?;
        let skew = SkewCirculantMatrix::new(random_vec(&mut rng, k)).map_err(|e| e.to_string())?;
        let alpha = rng.random_range(3.0..20.0);
        let p = literal_product(&circ, &skew, alpha).map_err(|e| e.to_string())?;
        worst = worst.max(p.max_abs_diff(&CMatrix::identity(k)));
    }
    if worst > 1e-10 {
        return Err(format!("max deviation from I {worst:.2e} > 1e-10"));
    }
    Ok(format!("50 inputs, max deviation from I {worst:.1e}"))
}

fn block_diagonalization() -> Check {
    let cfg = SimConfig::default();
    let mut worst = 0.0f64;
    for frame in 0..100 {
        let scenario = generate_scenario(&cfg, 10.0, frame);
        let chain = ReceiverChain::build(&scenario).map_err(|e| e.to_string())?;
        worst = worst.max(chain.bd_residual(&scenario));
    }
    if worst > 1e-9 {
        return Err(format!("max cross residual {worst:.2e} > 1e-9"));
    }
    Ok(format!("100 scenarios, max ||H_l F_k||_F {worst:.1e}"))
}

fn mmse_spectrum_and_capacity() -> Check {
    let mut frames = 0;
    let (mut worst_eig, mut min_eig, mut worst_cap) = (f64::NEG_INFINITY, f64::INFINITY, 0.0f64);
    for inr_db in [f64::NEG_INFINITY, 0.0, 10.0] {
        let cfg = SimConfig {
            inr_db,
            ..SimConfig::default()
        };
        for &snr in &cfg.snr_db_grid {
            for frame in 0..20 {
                let chain = ReceiverChain::build(&generate_scenario(&cfg, snr, frame))
                    .map_err(|e| e.to_string())?;
                let eps = &chain.error_cov;
                if eps
                    .hermitian_defect()
                    .ok_or("error covariance not square")?
                    > 1e-10 * eps.frobenius_norm()
                {
                    return Err(format!(
                        "non-Hermitian error covariance at snr {snr}, frame {frame}"
                    ));
                }
                for z in hermitian_eigenvalues(eps)
                    .map_err(|e| e.to_string())?
                    .iter()
                {
                    worst_eig = worst_eig.max(z.re);
                    min_eig = min_eig.min(z.re);
                }
                let (h, q, u) = (
                    &chain.effective_channel,
                    &chain.signal_cov,
                    &chain.interference_cov,
                );
                let s = matmul(&matmul(h, q).map_err(|e| e.to_string())?, &h.adjoint())
                    .map_err(|e| e.to_string())?;
                let s_u_inv = solve(&u.adjoint(), &s.adjoint())
                    .map_err(|e| e.to_string())?
                    .adjoint();
                let oracle = logdet2(&(&CMatrix::identity(s.rows()) + &s_u_inv))
                    .map_err(|e| e.to_string())?;
                worst_cap = worst_cap.max((chain.capacity_bits - oracle).abs());
                frames += 1;
            }
        }
    }
    if !(min_eig > 0.0 && worst_eig <= 1.0 + 1e-10) || worst_cap > 1e-8 {
        return Err(format!(
            "eigenvalues in [{min_eig:.3e}, {worst_eig:.12}], capacity identity error {worst_cap:.2e}"
        ));
    }
    Ok(format!(
        "{frames} frames, eigenvalues in [{min_eig:.2e}, {worst_eig:.10}], capacity identity error {worst_cap:.1e}"
    ))
}

fn end_to_end_determinism() -> Check {
    let started = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("default.cfg");
    std::fs::write(&cfg, "# every key at its default\n").map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_ecsplit"))
            .args(["run", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("run exited with {:?}", status.status.code()));
        }
        let read = |f: &str| std::fs::read(Path::new(&out).join(f)).map_err(|e| e.to_string());
        Ok((read("sumrate.csv")?, read("alpha_sweep.csv")?))
    };
    let first = run("first")?;
    let second = run("second")?;
    if first != second {
        return Err("CSV bytes differ between runs".to_string());
    }
    let rows = String::from_utf8_lossy(&first.0).lines().count() - 1;
    if rows != 14 {
        return Err(format!(
            "sumrate.csv has {rows} rows, expected 7 SNR points x 2 methods"
        ));
    }
    within(
        Duration::from_secs(120),
        started,
        format!(
            "two default runs byte-identical ({} + {} bytes)",
            first.0.len(),
            first.1.len()
        ),
    )
}

fn interference_monotonicity() -> Check {
    let inr_grid = [0.0, 5.0, 10.0];
    let tables = inr_grid
        .iter()
        .map(|&inr_db| {
            run_experiment(&SimConfig {
                inr_db,
                frames: 200,
                ..SimConfig::default()
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let snrs = SimConfig::default().snr_db_grid;
    let mut largest_rise = f64::NEG_INFINITY;
    for &snr in &snrs {
        for pair in tables.windows(2) {
            let lo = pair[0].row(snr, Method::Traditional).ok_or("missing row")?;
            let hi = pair[1].row(snr, Method::Traditional).ok_or("missing row")?;
            let rise = hi.mean_capacity_bits - lo.mean_capacity_bits;
            let allowed = lo.stderr_capacity_bits.max(hi.stderr_capacity_bits);
            largest_rise = largest_rise.max(rise);
            if rise > allowed {
                return Err(format!(
                    "snr {snr} dB: capacity rose by {rise:.4} bits (> one stderr {allowed:.4})"
                ));
            }
        }
    }
    Ok(format!(
        "200 frames, INR {inr_grid:?} dB, {} SNR points, largest change {largest_rise:.4} bits",
        snrs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "worked 4x4 split reproduces the reference generators",
            worked_example_golden,
        ),
        (
            "circulant + skew-circulant reconstructs the Toeplitz matrix",
            reconstruction_identity,
        ),
        (
            "DFT eigenvalues match the dense eigensolver",
            fast_eigenvalues,
        ),
        (
            "spectral radius stays below the sigma bound",
            spectral_radius_bound,
        ),
        (
            "literal product form collapses to the identity",
            literal_product_degenerates,
        ),
        (
            "block diagonalization nulls cross-user interference",
            block_diagonalization,
        ),
        (
            "MMSE covariance spectrum and capacity identity",
            mmse_spectrum_and_capacity,
        ),
        ("end-to-end runs are byte-identical", end_to_end_determinism),
        (
            "capacity does not grow with interference",
            interference_monotonicity,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
