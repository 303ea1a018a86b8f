//! Seeded verification suites. Each suite returns a flat list of
//! [`IdentityCheck`]s in a fixed order, so equal configurations give equal
//! reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::adjoint_tensor::{raising_residual, AdjointRep, SubmoduleKind};
use crate::error::{Error, Result};
use crate::numerics::{c64, CMatrix, Tolerance, C64};
use crate::report::{all_pass, IdentityCheck};
use crate::rmatrix::{
    asymptotic_check, block_eigenvalues, derive_coefficients, deviation_from_closed_form, pair_distance,
    su3_corrected_eigenvalues, su3_quoted_eigenvalues, ybe_residual, SpectralKind, SpectralOperators, YbeMode,
    DENSE_YBE_MAX_DIM, POLE_GUARD,
};
use crate::sampling::Sampler;
use crate::spinchain::{
    chain_h, cyclic_shift, fit_spinform, global_symmetry_residual, local_h, proportionality_residual,
    relative_commutator, sorted_eigenvalues, spin_operators, transfer_matrix, ChainHamiltonian, CHAIN_DIM_CAP,
};
use crate::yangian_action::{anticommutator_checks, verify_hw_relations};

/// Thresholds used by the suites.
pub mod thresholds {
    /// Basis orthonormality, structure constants, sum rules, completeness.
    pub const STRUCTURE: f64 = 1e-9;
    /// Measured `Ω` eigenvalues and exchange parities.
    pub const OMEGA: f64 = 1e-8;
    /// Highest-weight relations, relative to the vector acted on.
    pub const IDENTITY: f64 = 1e-8;
    /// Inversion, intertwining and re-derived coefficients.
    pub const INTERTWINER: f64 = 1e-8;
    pub const YBE: f64 = 1e-8;
    /// `R(0) = σ`, `I(0) = 1`, `t(0) ∝ shift`.
    pub const EXACT: f64 = 1e-12;
    /// `|ln|` of the normalized remainder ratio.
    pub const ASYMPTOTIC_LOG_RATIO: f64 = 0.405_465_108_108_164_4; // ln 1.5
    pub const FINITE_DIFFERENCE: f64 = 1e-6;
    /// `‖h − h†‖_F` must exceed this.
    pub const NON_HERMITIAN: f64 = 0.1;
    /// Largest `|Im|` of a two-site eigenvalue.
    pub const REAL_SPECTRUM: f64 = 1e-8;
    pub const SPINFORM: f64 = 1e-9;
    /// `‖[K, C_A]‖_F` must exceed this.
    pub const COMMUTATOR: f64 = 0.1;
    /// A chain eigenvalue must have `|Im|` above this.
    pub const COMPLEX_SPECTRUM: f64 = 1e-6;
    pub const CHAIN_SYMMETRY: f64 = 1e-8;
    pub const TRANSFER: f64 = 1e-8;
    pub const TRANSFER_HAMILTONIAN: f64 = 1e-7;
    pub const SU3_EIGENVALUES: f64 = 1e-9;
    pub const SU3_COEFFICIENTS: f64 = 1e-10;
}

use thresholds as th;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Intertwiner,
    Ybe,
    Hamiltonian,
    Su3,
    Chain,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Intertwiner,
        Suite::Ybe,
        Suite::Hamiltonian,
        Suite::Su3,
        Suite::Chain,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Intertwiner => "intertwiner",
            Suite::Ybe => "ybe",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Su3 => "su3",
            Suite::Chain => "chain",
            Suite::All => "all",
        }
    }

    /// Mixed into the seed so a suite draws the same samples alone and
    /// inside `all`.
    fn salt(self) -> u64 {
        match self {
            Suite::Identities => 0x1d,
            Suite::Intertwiner => 0x2e,
            Suite::Ybe => 0x3f,
            Suite::Hamiltonian => 0x40,
            Suite::Su3 => 0x51,
            Suite::Chain => 0x62,
            Suite::All => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

/// How the Yang–Baxter check is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YbeChoice {
    /// Dense when `(n²−1)³` fits, matrix-free otherwise.
    #[default]
    Auto,
    Dense,
    MatrixFree,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub ybe: YbeChoice,
    /// Probe vectors per matrix-free YBE sample.
    pub probes: usize,
    /// Chain length for the chain suite; 2 when unset.
    pub sites: Option<usize>,
    /// Replaces the random `λ` samples by this single value.
    pub lambda: Option<C64>,
    /// Replaces the random `μ` samples by this single value.
    pub mu: Option<C64>,
}

impl VerifyConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            samples: 5,
            seed,
            tol: Tolerance::default(),
            ybe: YbeChoice::Auto,
            probes: 10,
            sites: None,
            lambda: None,
            mu: None,
        }
    }

    fn sample_count(&self) -> usize {
        if self.lambda.is_some() || self.mu.is_some() {
            1
        } else {
            self.samples
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Lazily built shared state of one run.
struct Context {
    cfg: VerifyConfig,
    built: Option<(AdjointRep, SpectralOperators)>,
}

impl Context {
    fn ops(&mut self) -> Result<&(AdjointRep, SpectralOperators)> {
        if self.built.is_none() {
            self.built = Some(SpectralOperators::for_rank(self.cfg.n, self.cfg.tol)?);
        }
        Ok(self.built.as_ref().expect("just built"))
    }

    fn sampler(&self, suite: Suite) -> Sampler {
        Sampler::new(self.cfg.seed ^ suite.salt())
    }

    /// Spectral parameters clear of the poles of `I(±λ)`.
    fn lambdas(&self, sampler: &mut Sampler) -> Vec<C64> {
        if let Some(l) = self.cfg.lambda {
            return vec![l];
        }
        let avoid = self.avoid();
        (0..self.cfg.samples)
            .map(|_| sampler.spectral(&avoid, POLE_GUARD))
            .collect()
    }

    fn pairs(&self, sampler: &mut Sampler, avoid: &[f64]) -> Vec<(C64, C64)> {
        let count = self.cfg.sample_count();
        (0..count)
            .map(|_| {
                let (l, m) = sampler.spectral_pair(avoid, POLE_GUARD);
                (self.cfg.lambda.unwrap_or(l), self.cfg.mu.unwrap_or(m))
            })
            .collect()
    }

    fn avoid(&self) -> Vec<f64> {
        let n = self.cfg.n as f64;
        vec![1.0, n, -1.0, -n]
    }
}

/// Runs one suite.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.n < 3 {
        return Err(Error::InvalidRank { n: cfg.n });
    }
    if cfg.samples == 0 {
        return Err(Error::Usage("--samples must be at least 1".into()));
    }
    let mut ctx = Context {
        cfg: cfg.clone(),
        built: None,
    };
    let mut checks = Vec::new();
    match suite {
        Suite::Identities => identities(&mut ctx, &mut checks)?,
        Suite::Intertwiner => intertwiner(&mut ctx, &mut checks)?,
        Suite::Ybe => ybe(&mut ctx, &mut checks)?,
        Suite::Hamiltonian => hamiltonian(&mut ctx, &mut checks)?,
        Suite::Su3 => su3(&mut checks)?,
        Suite::Chain => chain(&mut ctx, &mut checks)?,
        Suite::All => {
            identities(&mut ctx, &mut checks)?;
            intertwiner(&mut ctx, &mut checks)?;
            ybe(&mut ctx, &mut checks)?;
            hamiltonian(&mut ctx, &mut checks)?;
            if cfg.n == 3 {
                su3(&mut checks)?;
            }
            let d = cfg.n * cfg.n - 1;
            let sites = cfg.sites.unwrap_or(2);
            if d.checked_pow(sites as u32 + 1).is_some_and(|t| t <= CHAIN_DIM_CAP) {
                chain(&mut ctx, &mut checks)?;
            }
        }
    }
    let n = if suite == Suite::Su3 { 3 } else { cfg.n };
    Ok(VerifyReport {
        suite,
        n,
        seed: cfg.seed,
        samples: cfg.sample_count(),
        pass: all_pass(&checks),
        checks,
    })
}

fn structure(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    let (rep, ops) = ctx.ops()?;
    let n = rep.n();
    let b = rep.basis();
    let (rf, rd) = b.reconstruction_residuals();
    let (dd, ff) = b.sum_rule_residuals();
    for (name, r) in [
        ("tr(IaIb) = delta", b.orthonormality_residual()),
        ("[Ia,Ib] = f Ic", rf),
        ("{Ia,Ib} = d Ic + (2/n) delta", rd),
        ("Jacobi identity", b.jacobi_residual()),
        ("sum d d = ((2n^2-8)/n) delta", dd),
        ("sum f f = -2n delta", ff),
        ("symmetry of f and d", b.symmetry_residual()),
    ] {
        out.push(IdentityCheck::new(name, "basis", n, r, th::STRUCTURE));
    }
    out.push(IdentityCheck::new(
        "adjoint representation property",
        "adjoint",
        n,
        rep.representation_residual(),
        th::STRUCTURE,
    ));

    let dec = ops.decomposition();
    let omega = rep.casimir_op();
    for s in dec.submodules() {
        let v = s.hw_vector.as_slice();
        let measured = crate::numerics::inner(v, &omega.mul_vec(v)) / crate::numerics::inner(v, v);
        let label = &s.label;
        out.push(IdentityCheck::new(
            format!("Omega eigenvalue {} on {label}", s.kind.omega_eigenvalue(n)),
            "decomposition",
            n,
            (measured - s.kind.omega_eigenvalue(n)).norm(),
            th::OMEGA,
        ));
        out.push(IdentityCheck::new(
            format!("exchange parity {:+} on {label}", s.kind.parity().sign()),
            "decomposition",
            n,
            (s.exchange_parity - s.kind.parity().sign()).abs(),
            th::OMEGA,
        ));
        out.push(IdentityCheck::new(
            format!("highest weight of {label}"),
            "decomposition",
            n,
            raising_residual(rep, &s.hw_vector)?,
            th::STRUCTURE,
        ));
        out.push(IdentityCheck::new(
            format!("dimension {} of {label}", s.kind.dimension(n)),
            "decomposition",
            n,
            s.dim().abs_diff(s.kind.dimension(n)) as f64,
            0.0,
        ));
    }
    let total: usize = dec.submodules().iter().map(|s| s.dim()).sum();
    let d = rep.dim();
    out.push(IdentityCheck::new(
        "dimensions sum to (n^2-1)^2",
        "decomposition",
        n,
        total.abs_diff(d * d) as f64,
        0.0,
    ));
    out.push(IdentityCheck::new(
        "projector completeness",
        "decomposition",
        n,
        dec.completeness_residual(),
        th::STRUCTURE,
    ));
    Ok(())
}

fn identities(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    structure(ctx, out)?;
    let mut sampler = ctx.sampler(Suite::Identities);
    let count = ctx.cfg.sample_count();
    let (fixed_l, fixed_m) = (ctx.cfg.lambda, ctx.cfg.mu);
    let tol = ctx.cfg.tol;
    let (rep, ops) = ctx.ops()?;
    let hwv = ops.decomposition().highest_weight_vectors();
    out.extend(anticommutator_checks(rep, hwv, &tol)?);
    for _ in 0..count {
        let mu = sampler.spectral(&[], 0.0);
        let lambda = sampler.spectral(&[], 0.0);
        out.extend(verify_hw_relations(
            rep,
            hwv,
            fixed_m.unwrap_or(mu),
            fixed_l.unwrap_or(lambda),
            th::IDENTITY,
        )?);
    }
    Ok(())
}

/// Dense intertwining residuals are used while `(n²−1)² ≤` this.
const DENSE_INTERTWINING_MAX_DIM: usize = 576;

fn intertwiner(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    let mut sampler = ctx.sampler(Suite::Intertwiner);
    let lambdas = ctx.lambdas(&mut sampler);
    let avoid = ctx.avoid();
    let fixed = ctx.cfg.lambda.is_some();
    let (rep, ops) = ctx.ops()?;
    let n = rep.n();
    let dim = ops.site_dim() * ops.site_dim();
    let zero = c64(0.0, 0.0);
    out.push(IdentityCheck::new(
        "I(0) = 1",
        "intertwiner",
        n,
        ops.intertwiner(zero)?.max_abs_diff(&CMatrix::identity(dim)),
        th::EXACT,
    ));
    let probes = sampler.unit_columns(dim, 2);
    let sigma = crate::adjoint_tensor::permutation_op(ops.site_dim());
    for &l in &lambdas {
        let inv = ops.intertwiner(l)?.matmul(&ops.intertwiner(-l)?);
        let inv_res = inv.frobenius_diff(&CMatrix::identity(dim)) / (dim as f64).sqrt();
        out.push(IdentityCheck::new("I(l) I(-l) = 1", "inversion", n, inv_res, th::INTERTWINER).with_lambda(l));

        let dense = dim <= DENSE_INTERTWINING_MAX_DIM;
        let (l0, l1) = if dense {
            ops.intertwining_residuals(rep, l)?
        } else {
            ops.intertwining_residuals_probed(rep, l, &probes)?
        };
        let mut c0 = IdentityCheck::new(
            "I(l) Delta(x) = Delta(x) I(l), all x",
            "intertwining",
            n,
            l0,
            th::INTERTWINER,
        )
        .with_lambda(l);
        let mut c1 = IdentityCheck::new(
            "I(l) J(x)_{0,l} = J(x)_{l,0} I(l), all x",
            "intertwining",
            n,
            l1,
            th::INTERTWINER,
        )
        .with_lambda(l);
        if !dense {
            c0 = c0.with_note("measured on 2 probe vectors");
            c1 = c1.with_note("measured on 2 probe vectors");
        }
        out.push(c0);
        out.push(c1);

        let conj = sigma.matmul(&ops.rmatrix(l)?).matmul(&sigma);
        out.push(
            IdentityCheck::new(
                "R~(l) = sigma R(l) sigma",
                "rtilde",
                n,
                ops.r_tilde(l)?.max_abs_diff(&conj),
                th::EXACT,
            )
            .with_lambda(l),
        );
    }
    // A sample may sit near a zero of the linear system; redraw it then.
    for &l in &lambdas {
        let mut point = l;
        let derived = loop {
            match derive_coefficients(rep, ops.decomposition(), point) {
                Err(Error::SingularSolve(_)) if !fixed => point = sampler.spectral(&avoid, POLE_GUARD),
                other => break other?,
            }
        };
        out.push(
            IdentityCheck::new(
                "derived f1, f2, f3, f4, M(l) against closed forms",
                "derive",
                n,
                deviation_from_closed_form(&derived, n)?,
                th::INTERTWINER,
            )
            .with_lambda(point),
        );
    }
    Ok(())
}

fn ybe(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    let mut sampler = ctx.sampler(Suite::Ybe);
    let n = ctx.cfg.n;
    let pairs = ctx.pairs(&mut sampler, &[1.0, n as f64]);
    let probe_seed = ctx.cfg.seed ^ Suite::Ybe.salt() ^ 0xff;
    let (choice, probes) = (ctx.cfg.ybe, ctx.cfg.probes);
    let (rep, ops) = ctx.ops()?;
    let d = ops.site_dim();
    let sigma = crate::adjoint_tensor::permutation_op(d);
    out.push(IdentityCheck::new(
        "R(0) = sigma",
        "ybe",
        n,
        ops.rmatrix(c64(0.0, 0.0))?.max_abs_diff(&sigma),
        th::EXACT,
    ));
    let dense_fits = d * d * d <= DENSE_YBE_MAX_DIM;
    let mode = match choice {
        YbeChoice::Dense => YbeMode::Dense,
        YbeChoice::Auto if dense_fits => YbeMode::Dense,
        _ => YbeMode::MatrixFree {
            probes,
            seed: probe_seed,
        },
    };
    let mode_note = match mode {
        YbeMode::Dense => "dense".to_string(),
        YbeMode::MatrixFree { probes, .. } => format!("matrix-free, {probes} probes"),
    };
    for &(l, m) in &pairs {
        for (kind, name) in [(SpectralKind::R, "R"), (SpectralKind::RTilde, "R~")] {
            let r = ybe_residual(ops, kind, l, m, mode)?;
            out.push(
                IdentityCheck::new(
                    format!("{name}12(l) {name}13(l+m) {name}23(m) = {name}23(m) {name}13(l+m) {name}12(l)"),
                    "ybe",
                    n,
                    r,
                    th::YBE,
                )
                .with_lambda(l)
                .with_mu(m)
                .with_note(mode_note.clone()),
            );
        }
    }
    let asym = asymptotic_check(ops, rep, &[1e2, 1e3])?;
    let ratio = asym.ratios[0];
    out.push(
        IdentityCheck::new(
            "R(l) = (1+2/l) - Omega/l + O(l^-2), |ln| of normalized remainder ratio between l=1e2 and 1e3",
            "asymptotic",
            n,
            asym.normalized_ratios[0].ln().abs(),
            th::ASYMPTOTIC_LOG_RATIO,
        )
        .with_note(format!("remainder ratio {ratio:.6}")),
    );
    Ok(())
}

fn hamiltonian(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    let abs_tol = ctx.cfg.tol.abs_tol;
    let (rep, ops) = ctx.ops()?;
    let n = rep.n();
    let local = local_h(ops)?;
    out.push(IdentityCheck::new(
        "h from coefficient derivatives = closed-form h",
        "hlocal",
        n,
        local.assembly_residual,
        abs_tol,
    ));
    out.push(IdentityCheck::new(
        "h = central difference of R(l) sigma",
        "derivative",
        n,
        local.finite_difference_residual,
        th::FINITE_DIFFERENCE,
    ));
    out.push(
        IdentityCheck::new(
            "h is not Hermitian",
            "hlocal",
            n,
            local.h.hermiticity_defect(),
            th::NON_HERMITIAN,
        )
        .expect_above(),
    );
    let ev = sorted_eigenvalues(&local.h)?;
    let max_im = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    out.push(IdentityCheck::new(
        "two-site spectrum is real",
        "hlocal",
        n,
        max_im,
        th::REAL_SPECTRUM,
    ));
    let want = local.expected_spectrum(ops);
    let spread = ev.iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    out.push(IdentityCheck::new(
        "two-site spectrum = projector weights and eigenvalues of O",
        "hlocal",
        n,
        spread,
        th::REAL_SPECTRUM,
    ));

    let spin = spin_operators(rep);
    out.push(IdentityCheck::new(
        "Q = Omega",
        "spinform",
        n,
        spin.q.max_abs_diff(&rep.casimir_op()),
        abs_tol,
    ));
    for (name, m) in [("Q", &spin.q), ("C_A", &spin.c_a), ("K", &spin.k)] {
        out.push(IdentityCheck::new(
            format!("{name} is Hermitian"),
            "spinform",
            n,
            m.max_abs_diff(&m.adjoint()),
            abs_tol,
        ));
    }
    let fit = fit_spinform(&local, &spin);
    out.push(
        IdentityCheck::new(
            "[K, C_A] is nonzero",
            "spinform",
            n,
            fit.commutator_norm,
            th::COMMUTATOR,
        )
        .expect_above(),
    );
    out.push(
        IdentityCheck::new("spin form = scale h + c", "spinform", n, fit.residual, th::SPINFORM)
            .with_note(format!("scale {:.17}, c {:.17}", fit.scale, fit.constant)),
    );
    out.push(IdentityCheck::new(
        "spin form without its [K, C_A] term is Hermitian",
        "spinform",
        n,
        fit.hermitian_part_defect,
        abs_tol,
    ));
    Ok(())
}

/// Points at which the `n = 3` block eigenvalues are compared.
pub const SU3_POINTS: [(f64, f64); 3] = [(0.5, 0.0), (0.0, 2.0), (-1.7, 0.0)];

fn su3(out: &mut Vec<IdentityCheck>) -> Result<()> {
    let (_, ops) = SpectralOperators::for_rank(3, Tolerance::default())?;
    for (re, im) in SU3_POINTS {
        let l = c64(re, im);
        let measured = block_eigenvalues(&ops.measured_adjoint_block(l)?);
        out.push(
            IdentityCheck::new(
                "N(l) block eigenvalues = (11l - 2l^2 +- 3 sqrt(4+5l^2)) / (2(1-l)^2(3-l))",
                "su3 eigenvalues",
                3,
                pair_distance(&measured, &su3_quoted_eigenvalues(l)),
                th::SU3_EIGENVALUES,
            )
            .with_lambda(l),
        );
        out.push(
            IdentityCheck::new(
                "N(l) block eigenvalues = (11l - 2l^3 +- 3 sqrt(4+5l^2)) / (2(1-l)^2(3-l))",
                "su3 eigenvalues",
                3,
                pair_distance(&measured, &su3_corrected_eigenvalues(l)),
                th::SU3_EIGENVALUES,
            )
            .with_lambda(l)
            .with_note("trace of N(l) gives 11l - 2l^3"),
        );
    }
    let h = local_h(&ops)?.h;
    let b = ops.adjoint_block_of(&h);
    let r5 = 5f64.sqrt() / 2.0;
    let mut entries = vec![
        ("P_10", ops.module_weight(SubmoduleKind::AntiLeft, &h)?, 2.0),
        ("P_10bar", ops.module_weight(SubmoduleKind::AntiRight, &h)?, 2.0),
        ("P_1", ops.module_weight(SubmoduleKind::Singlet, &h)?, 8.0 / 3.0),
        ("P_27", ops.module_weight(SubmoduleKind::Top, &h)?, 0.0),
    ];
    entries.extend([
        ("P_8s", b[0][0], 25.0 / 6.0),
        ("P_8a", b[1][1], 0.5),
        ("O_sa", b[0][1], r5),
        ("O_as", b[1][0], -r5),
    ]);
    for (name, got, want) in entries {
        out.push(IdentityCheck::new(
            format!("coefficient of {name} in h is {want:.17}"),
            "hsu3",
            3,
            (got - want).norm(),
            th::SU3_COEFFICIENTS,
        ));
    }
    Ok(())
}

fn chain(ctx: &mut Context, out: &mut Vec<IdentityCheck>) -> Result<()> {
    let sites = ctx.cfg.sites.unwrap_or(2);
    let mut sampler = ctx.sampler(Suite::Chain);
    let n = ctx.cfg.n;
    let pairs = ctx.pairs(&mut sampler, &[1.0, n as f64]);
    let (rep, ops) = ctx.ops()?;
    let local = local_h(ops)?;
    let ch: ChainHamiltonian = chain_h(&local, sites)?;
    let sites_note = format!("{sites} sites");
    out.push(
        IdentityCheck::new(
            "[H, sum_i S^a_i] = 0, all a",
            "chain",
            n,
            global_symmetry_residual(&ch, rep),
            th::CHAIN_SYMMETRY,
        )
        .with_note(sites_note.clone()),
    );
    if sites >= 3 {
        let ev = sorted_eigenvalues(&ch.h)?;
        let max_im = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        out.push(
            IdentityCheck::new(
                "chain spectrum has complex eigenvalues",
                "chain",
                n,
                max_im,
                th::COMPLEX_SPECTRUM,
            )
            .expect_above()
            .with_note(sites_note.clone()),
        );
    }
    let t0 = transfer_matrix(ops, c64(0.0, 0.0), sites)?;
    out.push(
        IdentityCheck::new(
            "t(0) is proportional to the cyclic shift",
            "transfer",
            n,
            proportionality_residual(&t0, &cyclic_shift(ops.site_dim(), sites)),
            th::EXACT,
        )
        .with_note(sites_note.clone()),
    );
    for &(l, m) in &pairs {
        let tl = transfer_matrix(ops, l, sites)?;
        let tm = transfer_matrix(ops, m, sites)?;
        out.push(
            IdentityCheck::new(
                "[t(l), t(m)] = 0",
                "transfer",
                n,
                relative_commutator(&tl, &tm),
                th::TRANSFER,
            )
            .with_lambda(l)
            .with_mu(m)
            .with_note(sites_note.clone()),
        );
        out.push(
            IdentityCheck::new(
                "[t(l), H] = 0",
                "transfer",
                n,
                relative_commutator(&tl, &ch.h),
                th::TRANSFER_HAMILTONIAN,
            )
            .with_lambda(l)
            .with_note(sites_note.clone()),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn su3_suite_fails_only_on_quoted_formula() {
        let r = run(Suite::Su3, &VerifyConfig::new(3, 1)).unwrap();
        assert!(!r.pass);
        let failing: Vec<_> = r.failures().collect();
        assert_eq!(failing.len(), 3);
        assert!(failing.iter().all(|c| c.identity.contains("2l^2")));
    }

    #[test]
    fn identities_pass_at_n4() {
        let mut cfg = VerifyConfig::new(4, 7);
        cfg.samples = 2;
        let r = run(Suite::Identities, &cfg).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(r.pass, "{bad:?}");
    }

    #[test]
    fn bad_config_is_rejected() {
        assert!(matches!(
            run(Suite::Ybe, &VerifyConfig::new(2, 0)),
            Err(Error::InvalidRank { n: 2 })
        ));
        let mut cfg = VerifyConfig::new(3, 0);
        cfg.samples = 0;
        assert!(matches!(run(Suite::Ybe, &cfg), Err(Error::Usage(_))));
    }
}
