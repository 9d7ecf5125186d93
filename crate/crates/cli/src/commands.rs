use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use ecsplit_core::matkit::CMatrix;
use ecsplit_core::mimo::{run_experiment, Method, SimError};
use ecsplit_core::splitting::{optimize_alpha, AlphaGrid, IterationError};
use ecsplit_core::toeplitz::{split_from_edges, split_matrix, SplitPair, ToeplitzError};
use ecsplit_core::Complex64;
use thiserror::Error;

use crate::complex_text::format_complex_short;
use crate::config::{load_config, ConfigError};
use crate::manifest::RunManifest;
use crate::tables::{read_matrix, write_matrix, write_sumrate, write_sweep, MatrixFileError};

pub const SUMRATE_FILE: &str = "sumrate.csv";
pub const SWEEP_FILE: &str = "alpha_sweep.csv";
pub const EPS1_FILE: &str = "eps1.csv";
pub const EPS2_FILE: &str = "eps2.csv";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    MatrixInput(#[from] MatrixFileError),
    #[error("cannot create output directory {path}: {source}")]
    OutputDir {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
    #[error("{0}")]
    Simulation(SimError),
    #[error("splitting failed: {0}")]
    Split(String),
    #[error("method `{method}` failed on every frame")]
    AllFramesFailed { method: &'static str },
}

impl CliError {
    /// 1 for anything wrong with the inputs, 2 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::MatrixInput(_) => 1,
            CliError::Simulation(SimError::InvalidConfig { .. }) => 1,
            CliError::Split(_) => 1,
            CliError::OutputDir { .. }
            | CliError::Output { .. }
            | CliError::Simulation(_)
            | CliError::AllFramesFailed { .. } => 2,
        }
    }
}

fn output_error(path: &Path, e: impl ToString) -> CliError {
    CliError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn prepare_output_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::OutputDir {
        path: dir.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
}

/// Runs the Monte Carlo experiment and writes manifest, `sumrate.csv` and
/// `alpha_sweep.csv`. Per-frame failures go to `log`; the tables are written
/// even when a method failed everywhere, which is then reported as an error.
pub fn run(opts: &RunOptions, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = load_config(&opts.config)?;
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    prepare_output_dir(&opts.out)?;
    let manifest = RunManifest::new(&opts.config, &opts.out, cfg.clone());
    let manifest_path = opts.out.join(crate::manifest::MANIFEST_FILE);
    manifest
        .write()
        .map_err(|e| output_error(&manifest_path, e))?;

    let table = run_experiment(&cfg).map_err(CliError::Simulation)?;
    for f in &table.failures {
        let _ = writeln!(
            log,
            "warning: snr_db {} frame {} ({}): {}",
            f.snr_db,
            f.frame,
            f.method.as_str(),
            f.message
        );
    }

    let sumrate = opts.out.join(SUMRATE_FILE);
    write_sumrate(&sumrate, &table).map_err(|e| output_error(&sumrate, e))?;
    let sweep = opts.out.join(SWEEP_FILE);
    write_sweep(&sweep, &table).map_err(|e| output_error(&sweep, e))?;

    let _ = write!(out, "{table}");
    let _ = writeln!(out, "wrote {}, {}", sumrate.display(), sweep.display());

    for method in Method::ALL {
        if table.all_failed(method) {
            return Err(CliError::AllFramesFailed {
                method: method.as_str(),
            });
        }
    }
    Ok(())
}

/// How generators are read off an input matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitMode {
    /// Average each diagonal (nearest Toeplitz matrix), then split.
    Project,
    /// Use the first row and first column as they stand.
    Edges,
}

#[derive(Debug, Clone)]
pub struct SplitOptions {
    pub matrix: PathBuf,
    pub out: PathBuf,
    pub mode: SplitMode,
}

fn join_short(values: &[Complex64]) -> String {
    values
        .iter()
        .map(|&z| format_complex_short(z))
        .collect::<Vec<_>>()
        .join(", ")
}

fn split_error(e: impl ToString) -> CliError {
    CliError::Split(e.to_string())
}

pub fn split_input(m: &CMatrix, mode: SplitMode) -> Result<SplitPair, ToeplitzError> {
    match mode {
        SplitMode::Project => split_matrix(m),
        SplitMode::Edges => split_from_edges(m),
    }
}

/// Splits a matrix file, prints generators, spectra and the best shift, and
/// writes the dense circulant and skew-circulant parts.
pub fn split(opts: &SplitOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let m = read_matrix(&opts.matrix)?;
    let pair = split_input(&m, opts.mode).map_err(split_error)?;
    let search = optimize_alpha(&pair.circ, &pair.skew, &AlphaGrid::default())
        .map_err(|e: IterationError| split_error(e))?;

    let mode = match opts.mode {
        SplitMode::Project => "nearest Toeplitz",
        SplitMode::Edges => "first row/column",
    };
    let _ = writeln!(out, "matrix: {}x{} ({mode})", m.rows(), m.cols());
    let _ = writeln!(
        out,
        "toeplitz residual (Frobenius): {:.4}",
        pair.projection_residual
    );
    let _ = writeln!(
        out,
        "a (circulant generator): {}",
        join_short(pair.circ.generator())
    );
    let _ = writeln!(
        out,
        "b (skew-circulant generator): {}",
        join_short(pair.skew.generator())
    );
    let _ = writeln!(
        out,
        "lambda (circulant eigenvalues): {}",
        join_short(&pair.circ.eigenvalues_unsorted())
    );
    let _ = writeln!(
        out,
        "mu (skew-circulant eigenvalues): {}",
        join_short(&pair.skew.eigenvalues_unsorted())
    );
    let _ = writeln!(
        out,
        "alpha*: {:.4}  sigma(alpha*): {:.4}  rho(alpha*): {:.4}  bound valid: {}",
        search.alpha_star,
        search.sigma_at_star,
        search.rho_at_star,
        if search.bound_valid { "yes" } else { "no" }
    );

    prepare_output_dir(&opts.out)?;
    let eps1 = opts.out.join(EPS1_FILE);
    write_matrix(&eps1, &pair.circ.dense()).map_err(|e| output_error(&eps1, e))?;
    let eps2 = opts.out.join(EPS2_FILE);
    write_matrix(&eps2, &pair.skew.dense()).map_err(|e| output_error(&eps2, e))?;
    let _ = writeln!(out, "wrote {}, {}", eps1.display(), eps2.display());
    Ok(())
}
