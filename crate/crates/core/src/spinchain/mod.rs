//! The integrable Hamiltonian `h = ∂_λR(λ)|₀·σ`, its spin-operator form,
//! periodic chains built from it, and the transfer matrix.

mod chain;
mod spin;

pub use chain::{
    chain_h, commutation_check, cyclic_shift, global_symmetry_residual, proportionality_residual, relative_commutator,
    transfer_matrix, ChainDiagnostics, ChainHamiltonian, CHAIN_DIM_CAP,
};
pub use spin::{
    fit_spinform, spin_operators, spinform_coefficients, spinform_h, spinform_scale, SpinFormCoefficients, SpinFormFit,
    SpinOperators,
};

use crate::adjoint_tensor::{right_swap, SubmoduleKind};
use crate::error::{Error, Result};
use crate::numerics::{c64, eigenvalues, CMatrix, C64};
use crate::rmatrix::{SchurWeights, SpectralOperators};

/// Step of the central difference used to cross-check `h`.
pub const FD_STEP: f64 = 1e-5;

/// Agreement required between the analytic and finite-difference `h`.
pub const FD_AGREEMENT: f64 = 1e-6;

/// Which normalization of the two-site Hamiltonian to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleConvention {
    /// `h = ∂_λR(λ)|₀·σ`
    Raw,
    /// `h` multiplied by the spin-form scale, additive constant dropped.
    Rescaled,
}

/// The two-site Hamiltonian.
#[derive(Clone, Debug)]
pub struct LocalHamiltonian {
    pub n: usize,
    pub h: CMatrix,
    /// `O` on `{v_s, v_a}`, column convention.
    pub o_block: [[f64; 2]; 2],
    /// Max-norm distance between the analytic-derivative and closed-form
    /// assemblies.
    pub assembly_residual: f64,
    /// Max-norm distance to the central finite difference.
    pub finite_difference_residual: f64,
}

/// The closed-form weights of `h`:
/// `2(P₍₂₀…₀₁₀₎ + P₍₀₁₀…₀₂₎) + 4P₍₀₁₀…₀₁₀₎ + (2+2n)/n·P₍₀…₀₎ + O`,
/// and for `n = 3`
/// `2(P₁₀ + P₁₀̄) + 25/6·P₈ₛ + ½·P₈ₐ + (√5/2)(O_sa − O_as) + 8/3·P₁`.
pub fn closed_form_weights(n: usize) -> SchurWeights {
    if n == 3 {
        let r = 5f64.sqrt() / 2.0;
        return SchurWeights {
            top: c64(0.0, 0.0),
            anti_left: c64(2.0, 0.0),
            anti_right: c64(2.0, 0.0),
            mixed: c64(0.0, 0.0),
            singlet: c64(8.0 / 3.0, 0.0),
            block: [[c64(25.0 / 6.0, 0.0), c64(r, 0.0)], [c64(-r, 0.0), c64(0.5, 0.0)]],
        };
    }
    let nf = n as f64;
    let k = (nf * nf - 4.0).sqrt();
    let o = [[(2.0 + nf).powi(2) / (2.0 * nf), 0.5 * k], [-0.5 * k, 2.0 - nf / 2.0]];
    SchurWeights {
        top: c64(0.0, 0.0),
        anti_left: c64(2.0, 0.0),
        anti_right: c64(2.0, 0.0),
        mixed: c64(4.0, 0.0),
        singlet: c64((2.0 + 2.0 * nf) / nf, 0.0),
        block: [
            [c64(o[0][0], 0.0), c64(o[0][1], 0.0)],
            [c64(o[1][0], 0.0), c64(o[1][1], 0.0)],
        ],
    }
}

/// `h` from the derivative of the R-matrix weights at `λ = 0`: the
/// antisymmetric projectors and the second column of the adjoint block
/// change sign in `R`, and `σ` restores them.
fn analytic_h(ops: &SpectralOperators) -> CMatrix {
    let d = ops.coefficients().derivatives_at_zero();
    let zero = c64(0.0, 0.0);
    let r_prime = ops.assemble(&SchurWeights {
        top: zero,
        anti_left: c64(-d.f1, 0.0),
        anti_right: c64(-d.f2, 0.0),
        mixed: c64(d.f3.unwrap_or(0.0), 0.0),
        singlet: c64(d.f4, 0.0),
        block: [
            [c64(d.m[0][0], 0.0), c64(-d.m[0][1], 0.0)],
            [c64(d.m[1][0], 0.0), c64(-d.m[1][1], 0.0)],
        ],
    });
    right_swap(&r_prime, ops.site_dim())
}

/// `(R(ε) − R(−ε))/(2ε)·σ`.
pub fn finite_difference_h(ops: &SpectralOperators, step: f64) -> Result<CMatrix> {
    let mut diff = ops.rmatrix(c64(step, 0.0))?;
    diff -= &ops.rmatrix(c64(-step, 0.0))?;
    Ok(right_swap(&diff, ops.site_dim()).scale(c64(0.5 / step, 0.0)))
}

/// Builds `h` analytically and checks it against the closed-form assembly
/// (within `abs_tol`) and a central finite difference (within
/// [`FD_AGREEMENT`]).
pub fn local_h(ops: &SpectralOperators) -> Result<LocalHamiltonian> {
    let n = ops.n();
    let h = analytic_h(ops);
    let closed = closed_form_weights(n);
    let assembly_residual = h.max_abs_diff(&ops.assemble(&closed));
    if assembly_residual > ops.tolerance().abs_tol {
        return Err(Error::AssemblyMismatch {
            what: "h from derivatives against closed form".into(),
            residual: assembly_residual,
        });
    }
    let finite_difference_residual = h.max_abs_diff(&finite_difference_h(ops, FD_STEP)?);
    if finite_difference_residual > FD_AGREEMENT {
        return Err(Error::AssemblyMismatch {
            what: "h against central finite difference".into(),
            residual: finite_difference_residual,
        });
    }
    let o_block = [
        [closed.block[0][0].re, closed.block[0][1].re],
        [closed.block[1][0].re, closed.block[1][1].re],
    ];
    Ok(LocalHamiltonian {
        n,
        h,
        o_block,
        assembly_residual,
        finite_difference_residual,
    })
}

/// Spectral diagnostics of a (non-Hermitian) matrix.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SpectrumSummary {
    pub dim: usize,
    /// `‖H − H†‖_F`
    pub hermiticity_defect: f64,
    pub max_abs_imag: f64,
    /// Eigenvalues with `|Im| > threshold`.
    pub complex_count: usize,
    pub threshold: f64,
}

pub fn spectrum_summary(values: &[C64], m: &CMatrix, threshold: f64) -> SpectrumSummary {
    SpectrumSummary {
        dim: m.rows(),
        hermiticity_defect: m.hermiticity_defect(),
        max_abs_imag: values.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        complex_count: values.iter().filter(|z| z.im.abs() > threshold).count(),
        threshold,
    }
}

/// Eigenvalues sorted by real then imaginary part.
pub fn sorted_eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let mut ev = eigenvalues(m)?;
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(ev)
}

impl LocalHamiltonian {
    /// `h` in the requested normalization.
    pub fn scaled(&self, convention: ScaleConvention) -> CMatrix {
        match convention {
            ScaleConvention::Raw => self.h.clone(),
            ScaleConvention::Rescaled => {
                let s = spin::spinform_scale(self.n);
                self.h.scale(c64(s, 0.0))
            }
        }
    }

    /// Expected spectrum: the diagonal weights with their multiplicities and
    /// the two eigenvalues of `O`, each `n² − 1` times.
    pub fn expected_spectrum(&self, ops: &SpectralOperators) -> Vec<C64> {
        let w = closed_form_weights(self.n);
        let mut out = Vec::new();
        for s in ops.decomposition().submodules() {
            let c = match s.kind {
                SubmoduleKind::Top => w.top,
                SubmoduleKind::AntiLeft => w.anti_left,
                SubmoduleKind::AntiRight => w.anti_right,
                SubmoduleKind::Mixed => w.mixed,
                SubmoduleKind::Singlet => w.singlet,
                SubmoduleKind::AdjointSym | SubmoduleKind::AdjointAnti => continue,
            };
            out.extend(std::iter::repeat(c).take(s.dim()));
        }
        let o = crate::rmatrix::block_eigenvalues(&w.block);
        let adj = self.n * self.n - 1;
        for e in o {
            out.extend(std::iter::repeat(e).take(adj));
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        out
    }
}
