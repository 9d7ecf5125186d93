use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ecsplit::complex_text::parse_complex;
use ecsplit::tables::{read_matrix, SUMRATE_HEADER, SWEEP_HEADER};
use ecsplit_core::matkit::CMatrix;
use ecsplit_core::toeplitz::nearest_toeplitz;

fn ecsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn version_prints_package_version() {
    let out = ecsplit(&["version"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        format!("ecsplit {}", env!("CARGO_PKG_VERSION"))
    );
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(ecsplit(&["run"]).status.code(), Some(1));
    assert_eq!(ecsplit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ecsplit(&["--help"]).status.code(), Some(0));
}

#[test]
fn run_writes_tables_with_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.cfg", "frames = 2\nsnr_db = 0, 10\n");
    let out_dir = dir.path().join("out");
    let out = ecsplit(&["run", "--config", s(&cfg), "--out", s(&out_dir)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let sumrate = std::fs::read_to_string(out_dir.join("sumrate.csv")).unwrap();
    let lines: Vec<&str> = sumrate.lines().collect();
    assert_eq!(lines[0], SUMRATE_HEADER.join(","));
    assert_eq!(lines.len(), 1 + 2 * 2);
    assert!(lines[1].contains(",traditional,") && lines[2].contains(",split_alpha_star,"));
    // traditional rows leave the split diagnostics empty
    assert!(lines[1].contains(",,,,"));

    let sweep = std::fs::read_to_string(out_dir.join("alpha_sweep.csv")).unwrap();
    assert_eq!(sweep.lines().next().unwrap(), SWEEP_HEADER.join(","));
    assert!(sweep.lines().count() > 1 + 2 * 2 * 50);

    let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
    assert!(manifest.contains("frames = 2") && manifest.contains("m_t = 4"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.cfg", "frames = 2\nsnr_db = 5\nseed = 1\n");
    let run = |out: &str, seed: Option<&str>| {
        let out_dir = dir.path().join(out);
        let mut args = vec!["run", "--config", s(&cfg), "--out", s(&out_dir)];
        if let Some(seed) = seed {
            args.extend(["--seed", seed]);
        }
        assert!(ecsplit(&args).status.success());
        std::fs::read(out_dir.join("sumrate.csv")).unwrap()
    };
    let base = run("a", None);
    assert_eq!(run("b", Some("1")), base);
    assert_ne!(run("c", Some("2")), base);
    let manifest = std::fs::read_to_string(dir.path().join("c/manifest.txt")).unwrap();
    assert!(manifest.contains("seed = 2"));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text, needle) in [
        ("zero.cfg", "frames = 0\n", "frames"),
        ("antennas.cfg", "m_t = 0\n", "m_t"),
        ("unknown.cfg", "colour = red\n", "line 1"),
        ("syntax.cfg", "m_t = 4\nseed\n", "line 2"),
    ] {
        let cfg = write(dir.path(), name, text);
        let out = ecsplit(&[
            "run",
            "--config",
            s(&cfg),
            "--out",
            s(&dir.path().join("o")),
        ]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains(needle),
            "{name}"
        );
    }
    let missing = dir.path().join("missing.cfg");
    assert_eq!(
        ecsplit(&["run", "--config", s(&missing), "--out", s(dir.path())])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn split_worked_example_by_edges_prints_reference_generators() {
    let dir = tempfile::tempdir().unwrap();
    let out = ecsplit(&[
        "split",
        "--matrix",
        s(&data("worked_4x4.csv")),
        "--out",
        s(dir.path()),
        "--mode",
        "edges",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("a (circulant generator): 0.5000+0.0000i, 0.4115-0.8001i, 0.6599+0.0000i, 0.4115+0.8001i"), "{stdout}");
    assert!(stdout.contains("b (skew-circulant generator): 0.5000+0.0000i, 0.2383+0.1508i, 0.0000+0.7454i, -0.2383+0.1508i"), "{stdout}");
    let eps2 = read_matrix(&dir.path().join("eps2.csv")).unwrap();
    assert!((eps2[(1, 0)] - parse_complex("0.2383-0.1508i").unwrap()).norm() < 1e-4);
}

#[test]
fn split_files_reconstruct_the_projection() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("worked_4x4.csv");
    let out = ecsplit(&["split", "--matrix", s(&input), "--out", s(dir.path())]);
    assert!(out.status.success());
    let m = read_matrix(&input).unwrap();
    let (t, residual) = nearest_toeplitz(&m).unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains(&format!("toeplitz residual (Frobenius): {residual:.4}")));
    let e1 = read_matrix(&dir.path().join("eps1.csv")).unwrap();
    let e2 = read_matrix(&dir.path().join("eps2.csv")).unwrap();
    // files carry ten significant digits
    assert!((&e1 + &e2).max_abs_diff(&t.dense()) <= 1e-9);
}

#[test]
fn split_identity_halves() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "eye.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = ecsplit(&[
        "split",
        "--matrix",
        s(&input),
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("a (circulant generator): 0.5000+0.0000i, 0.0000+0.0000i, 0.0000+0.0000i")
    );
    assert!(stdout
        .contains("b (skew-circulant generator): 0.5000+0.0000i, 0.0000+0.0000i, 0.0000+0.0000i"));
    let e1 = read_matrix(&dir.path().join("o/eps1.csv")).unwrap();
    assert!(
        e1.max_abs_diff(&CMatrix::identity(3).scale(ecsplit_core::Complex64::new(0.5, 0.0))) == 0.0
    );
}

#[test]
fn split_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("rect.csv", "1,2,3\n4,5,6\n"),
        ("junk.csv", "1,2\n3,oops\n"),
        ("empty.csv", ""),
    ] {
        let input = write(dir.path(), name, text);
        let out = ecsplit(&[
            "split",
            "--matrix",
            s(&input),
            "--out",
            s(&dir.path().join("o")),
        ]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(!out.stderr.is_empty());
    }
}
