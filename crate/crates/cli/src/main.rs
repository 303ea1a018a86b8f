use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use adjrmat::adjoint_tensor::{AdjointRep, Parity, SubmoduleKind};
use adjrmat::liealg::SunBasis;
use adjrmat::numerics::{c64, to_json_string, MatrixJson, Rank3Json, Tolerance, C64};
use adjrmat::rmatrix::SpectralOperators;
use adjrmat::sampling::DEFAULT_SEED;
use adjrmat::spinchain::{chain_h, local_h, sorted_eigenvalues, spectrum_summary, LocalHamiltonian, ScaleConvention};
use adjrmat::verify::{self, Suite, VerifyConfig, YbeChoice};
use adjrmat::Error;
use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "adjrmat", version, about = "Rational R-matrix with adjoint su(n) symmetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a basis, projectors, R-matrix or Hamiltonian as JSON.
    Build(BuildArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Eigenvalues of the two-site Hamiltonian or of a periodic chain.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct Common {
    /// Rank of su(n).
    #[arg(long)]
    n: usize,
    /// Absolute tolerance, optionally followed by the rank tolerance: ABS[,RANK].
    #[arg(long, value_parser = parse_tol)]
    tol: Option<Tolerance>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Basis,
    Projectors,
    Rmatrix,
    Hamiltonian,
}

#[derive(Args)]
struct BuildArgs {
    kind: BuildKind,
    #[command(flatten)]
    common: Common,
    /// Spectral parameter RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    lambda: Option<C64>,
    /// Chain length; the two-site Hamiltonian when omitted.
    #[arg(long)]
    sites: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Intertwiner,
    Ybe,
    Hamiltonian,
    Su3,
    Chain,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Intertwiner => Suite::Intertwiner,
            SuiteArg::Ybe => Suite::Ybe,
            SuiteArg::Hamiltonian => Suite::Hamiltonian,
            SuiteArg::Su3 => Suite::Su3,
            SuiteArg::Chain => Suite::Chain,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    suite: SuiteArg,
    #[command(flatten)]
    common: Common,
    /// Random spectral-parameter samples per check.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, env = "ADJRMAT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Force the dense Yang-Baxter check.
    #[arg(long, conflicts_with = "matrix_free")]
    dense: bool,
    /// Force the matrix-free Yang-Baxter check.
    #[arg(long)]
    matrix_free: bool,
    /// Chain length for the chain suite.
    #[arg(long)]
    sites: Option<usize>,
    /// Use this spectral parameter RE,IM instead of random samples.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    lambda: Option<C64>,
    /// Use this second spectral parameter RE,IM instead of random samples.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    mu: Option<C64>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: Common,
    /// Chain length; the two-site Hamiltonian when omitted.
    #[arg(long)]
    sites: Option<usize>,
    /// Report h as the derivative of R(l) sigma (default).
    #[arg(long, conflicts_with = "rescaled")]
    raw: bool,
    /// Report h multiplied by the spin-form scale.
    #[arg(long)]
    rescaled: bool,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part `{re}`: {e}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|e| format!("bad imaginary part `{im}`: {e}"))?;
    Ok(c64(re, im))
}

fn parse_tol(s: &str) -> Result<Tolerance, String> {
    let default = Tolerance::default();
    let (abs, rank) = match s.split_once(',') {
        Some((a, r)) => (a, Some(r)),
        None => (s, None),
    };
    let abs: f64 = abs.trim().parse().map_err(|e| format!("bad tolerance `{abs}`: {e}"))?;
    let rank = match rank {
        Some(r) => r.trim().parse().map_err(|e| format!("bad rank tolerance `{r}`: {e}"))?,
        None => default.rank_tol,
    };
    Tolerance::new(abs, rank).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct BasisJson {
    n: usize,
    generators: Vec<MatrixJson>,
    f: Rank3Json,
    d: Rank3Json,
}

#[derive(Serialize)]
struct ProjectorJson {
    kind: SubmoduleKind,
    label: String,
    dim: usize,
    omega_eigenvalue: f64,
    parity: Parity,
    projector: MatrixJson,
}

#[derive(Serialize)]
struct ProjectorsJson {
    n: usize,
    submodules: Vec<ProjectorJson>,
    iso_s_to_a: MatrixJson,
}

#[derive(Serialize)]
struct SpectrumJson {
    n: usize,
    sites: Option<usize>,
    convention: ScaleConvention,
    dim: usize,
    hermiticity_defect: f64,
    max_abs_imag: f64,
    complex_count: usize,
    threshold: f64,
    eigenvalues: Vec<[f64; 2]>,
}

/// Eigenvalues with `|Im|` above this multiple of `‖H‖_F` count as complex.
const RELATIVE_IMAG_THRESHOLD: f64 = 1e-8;

fn tolerance(common: &Common) -> Tolerance {
    common.tol.unwrap_or_default()
}

fn emit(common: &Common, json: &str) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{json}").context("writing to standard output")
        }
    }
}

fn spectral_ops(common: &Common) -> adjrmat::Result<(AdjointRep, SpectralOperators)> {
    SpectralOperators::for_rank(common.n, tolerance(common))
}

fn scaled_local(ops: &SpectralOperators, convention: ScaleConvention) -> adjrmat::Result<LocalHamiltonian> {
    let mut local = local_h(ops)?;
    local.h = local.scaled(convention);
    Ok(local)
}

fn build(args: &BuildArgs) -> anyhow::Result<bool> {
    let c = &args.common;
    let json = match args.kind {
        BuildKind::Basis => {
            let b = SunBasis::new(c.n)?;
            to_json_string(&BasisJson {
                n: c.n,
                generators: b.generators().iter().map(MatrixJson::from).collect(),
                f: Rank3Json(b.f().to_nested()),
                d: Rank3Json(b.d().to_nested()),
            })?
        }
        BuildKind::Projectors => {
            let (_, ops) = spectral_ops(c)?;
            let dec = ops.decomposition();
            let submodules = dec
                .submodules()
                .iter()
                .map(|s| ProjectorJson {
                    kind: s.kind,
                    label: s.label.clone(),
                    dim: s.dim(),
                    omega_eigenvalue: s.omega_eigenvalue,
                    parity: s.kind.parity(),
                    projector: MatrixJson::from(&s.projector()),
                })
                .collect();
            to_json_string(&ProjectorsJson {
                n: c.n,
                submodules,
                iso_s_to_a: MatrixJson::from(ops.iso()),
            })?
        }
        BuildKind::Rmatrix => {
            let lambda = args
                .lambda
                .ok_or_else(|| Error::Usage("build rmatrix needs --lambda RE,IM".into()))?;
            let (_, ops) = spectral_ops(c)?;
            to_json_string(&MatrixJson::from(&ops.rmatrix(lambda)?))?
        }
        BuildKind::Hamiltonian => {
            let (_, ops) = spectral_ops(c)?;
            let local = local_h(&ops)?;
            match args.sites {
                None => to_json_string(&MatrixJson::from(&local.h))?,
                Some(sites) => to_json_string(&MatrixJson::from(&chain_h(&local, sites)?.h))?,
            }
        }
    };
    emit(c, &json)?;
    Ok(true)
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let c = &args.common;
    let mut cfg = VerifyConfig::new(c.n, args.seed);
    cfg.samples = args.samples;
    cfg.tol = tolerance(c);
    cfg.sites = args.sites;
    cfg.lambda = args.lambda;
    cfg.mu = args.mu;
    cfg.ybe = if args.dense {
        YbeChoice::Dense
    } else if args.matrix_free {
        YbeChoice::MatrixFree
    } else {
        YbeChoice::Auto
    };
    let report = verify::run(args.suite.into(), &cfg)?;
    emit(c, &to_json_string(&report)?)?;
    Ok(report.pass)
}

fn spectrum(args: &SpectrumArgs) -> anyhow::Result<bool> {
    let c = &args.common;
    let convention = if args.rescaled {
        ScaleConvention::Rescaled
    } else {
        ScaleConvention::Raw
    };
    let (_, ops) = spectral_ops(c)?;
    let local = scaled_local(&ops, convention)?;
    let h = match args.sites {
        None => local.h,
        Some(sites) => chain_h(&local, sites)?.h,
    };
    let ev = sorted_eigenvalues(&h)?;
    let summary = spectrum_summary(&ev, &h, RELATIVE_IMAG_THRESHOLD * h.frobenius_norm());
    let report = SpectrumJson {
        n: c.n,
        sites: args.sites,
        convention,
        dim: summary.dim,
        hermiticity_defect: summary.hermiticity_defect,
        max_abs_imag: summary.max_abs_imag,
        complex_count: summary.complex_count,
        threshold: summary.threshold,
        eigenvalues: ev.iter().map(|z| [z.re, z.im]).collect(),
    };
    emit(c, &to_json_string(&report)?)?;
    Ok(true)
}

/// Configuration problems exit with 2, everything else that stops a run
/// with 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Usage(_)
            | Error::InvalidRank { .. }
            | Error::InvalidTolerance { .. }
            | Error::PoleProximity { .. }
            | Error::DimensionCap { .. }
            | Error::UnknownLabel(_)
            | Error::IndexOutOfRange { .. },
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(a) => build(a),
        Command::Verify(a) => run_verify(a),
        Command::Spectrum(a) => spectrum(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
