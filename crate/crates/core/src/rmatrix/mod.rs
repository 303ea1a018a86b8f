//! The intertwiner `I(λ)`, the R-matrix `R(λ) = I(λ)σ` and its companion
//! `R̃(λ) = σI(λ)`, assembled from the submodule projectors of `V ⊗ V`.

mod coefficients;
mod derive;
mod ybe;

pub use coefficients::{
    block_eigenvalues, pair_distance, su3_corrected_eigenvalues, su3_quoted_eigenvalues, Block, CoefficientDerivatives,
    CoefficientSet, Coefficients, POLE_GUARD,
};
pub use derive::{derive_coefficients, deviation_from_closed_form};
pub use ybe::{asymptotic_check, ybe_residual, AsymptoticReport, YbeMode, DENSE_YBE_MAX_DIM};

use crate::adjoint_tensor::{left_swap, right_swap, AdjointRep, Decomposition, SubmoduleKind, TensorVector};
use crate::error::{Error, Result};
use crate::numerics::{c64, distance, inner, CMatrix, Tolerance, C64};
use crate::yangian_action::{Generator, YangianTwoSiteAction};

/// Which spectral operator to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    Intertwiner,
    R,
    RTilde,
}

/// Weights of an operator of the form
/// `Σ cₖ Pₖ + b₀₀ P_s + b₁₁ P_a + b₁₀ iso + b₀₁ iso†`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchurWeights {
    pub top: C64,
    pub anti_left: C64,
    pub anti_right: C64,
    pub mixed: C64,
    pub singlet: C64,
    pub block: Block,
}

/// Dense projectors and the adjoint isometry, ready for repeated assembly.
#[derive(Clone, Debug)]
pub struct SpectralOperators {
    dec: Decomposition,
    coeffs: CoefficientSet,
    tol: Tolerance,
    projectors: Vec<(SubmoduleKind, CMatrix)>,
    iso: CMatrix,
    iso_adj: CMatrix,
}

impl SpectralOperators {
    pub fn new(dec: Decomposition, tol: Tolerance) -> Self {
        let projectors = dec.submodules().iter().map(|s| (s.kind, s.projector())).collect();
        let iso = dec.iso_s_to_a();
        let iso_adj = iso.adjoint();
        let coeffs = CoefficientSet::new(dec.n());
        Self {
            dec,
            coeffs,
            tol,
            projectors,
            iso,
            iso_adj,
        }
    }

    /// Builds the representation, decomposition and projectors for rank `n`.
    pub fn for_rank(n: usize, tol: Tolerance) -> Result<(AdjointRep, Self)> {
        let rep = AdjointRep::for_rank(n)?;
        let dec = Decomposition::build(&rep, &tol)?;
        Ok((rep, Self::new(dec, tol)))
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn coefficients(&self) -> &CoefficientSet {
        &self.coeffs
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn n(&self) -> usize {
        self.dec.n()
    }

    pub fn site_dim(&self) -> usize {
        self.dec.site_dim()
    }

    pub fn projector(&self, kind: SubmoduleKind) -> Result<&CMatrix> {
        self.projectors
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownLabel(format!("{kind} is not a submodule for n = {}", self.n())))
    }

    pub fn iso(&self) -> &CMatrix {
        &self.iso
    }

    /// Assembles `Σ cₖ Pₖ` plus the adjoint block.
    pub fn assemble(&self, w: &SchurWeights) -> CMatrix {
        let dim = self.site_dim() * self.site_dim();
        let mut out = CMatrix::zeros(dim, dim);
        for (kind, p) in &self.projectors {
            let c = match kind {
                SubmoduleKind::Top => w.top,
                SubmoduleKind::AntiLeft => w.anti_left,
                SubmoduleKind::AntiRight => w.anti_right,
                SubmoduleKind::Mixed => w.mixed,
                SubmoduleKind::Singlet => w.singlet,
                SubmoduleKind::AdjointSym => w.block[0][0],
                SubmoduleKind::AdjointAnti => w.block[1][1],
            };
            out.axpy(c, p);
        }
        out.axpy(w.block[1][0], &self.iso);
        out.axpy(w.block[0][1], &self.iso_adj);
        out
    }

    /// Weights of `I(λ)`.
    pub fn intertwiner_weights(&self, lambda: C64) -> Result<SchurWeights> {
        let c = self.coeffs.evaluate(lambda)?;
        Ok(SchurWeights {
            top: c64(1.0, 0.0),
            anti_left: c.f1,
            anti_right: c.f2,
            mixed: c.f3.unwrap_or(c64(0.0, 0.0)),
            singlet: c.f4,
            block: c.m,
        })
    }

    /// `I(λ)`.
    pub fn intertwiner(&self, lambda: C64) -> Result<CMatrix> {
        Ok(self.assemble(&self.intertwiner_weights(lambda)?))
    }

    /// `R(λ)` assembled directly: antisymmetric projectors change sign and
    /// the adjoint block is `N(λ)`.
    pub fn rmatrix_direct(&self, lambda: C64) -> Result<CMatrix> {
        let c = self.coeffs.evaluate(lambda)?;
        Ok(self.assemble(&SchurWeights {
            top: c64(1.0, 0.0),
            anti_left: -c.f1,
            anti_right: -c.f2,
            mixed: c.f3.unwrap_or(c64(0.0, 0.0)),
            singlet: c.f4,
            block: self.coeffs.n_block(lambda),
        }))
    }

    /// `R(λ) = I(λ)σ`, checked against [`rmatrix_direct`](Self::rmatrix_direct).
    pub fn rmatrix(&self, lambda: C64) -> Result<CMatrix> {
        let r = right_swap(&self.intertwiner(lambda)?, self.site_dim());
        let direct = self.rmatrix_direct(lambda)?;
        let residual = r.max_abs_diff(&direct);
        if residual > self.tol.abs_tol * r.max_abs().max(1.0) {
            return Err(Error::AssemblyMismatch {
                what: "R = I·σ against direct assembly".into(),
                residual,
            });
        }
        Ok(r)
    }

    /// `R̃(λ) = σI(λ)`.
    pub fn r_tilde(&self, lambda: C64) -> Result<CMatrix> {
        Ok(left_swap(&self.intertwiner(lambda)?, self.site_dim()))
    }

    pub fn operator(&self, kind: SpectralKind, lambda: C64) -> Result<CMatrix> {
        match kind {
            SpectralKind::Intertwiner => self.intertwiner(lambda),
            SpectralKind::R => self.rmatrix(lambda),
            SpectralKind::RTilde => self.r_tilde(lambda),
        }
    }

    /// The adjoint block of `R(λ)` read off the operator, in the orthonormal
    /// basis `{v_s/‖v_s‖, v_a/‖v_a‖}` (column convention).
    pub fn measured_adjoint_block(&self, lambda: C64) -> Result<Block> {
        Ok(self.adjoint_block_of(&self.rmatrix(lambda)?))
    }

    /// Largest relative intertwining residual over all basis generators:
    /// `I(λ)Δ(x) = Δ(x)I(λ)` and `I(λ)J(x)_{0,λ} = J(x)_{λ,0}I(λ)`.
    /// Returns `(level0, level1)`.
    pub fn intertwining_residuals(&self, rep: &AdjointRep, lambda: C64) -> Result<(f64, f64)> {
        let i = self.intertwiner(lambda)?;
        let zero = c64(0.0, 0.0);
        let before = YangianTwoSiteAction::new(rep, zero, lambda);
        let after = YangianTwoSiteAction::new(rep, lambda, zero);
        let rel = |a: &CMatrix, b: &CMatrix| {
            let scale = a.frobenius_norm().max(b.frobenius_norm()).max(f64::MIN_POSITIVE);
            a.frobenius_diff(b) / scale
        };
        let (mut l0, mut l1) = (0.0f64, 0.0f64);
        for g in rep.basis().generators() {
            let gen = Generator::new(rep, g)?;
            let d = before.level0(&gen);
            l0 = l0.max(rel(&i.matmul(&d), &d.matmul(&i)));
            let lhs = i.matmul(&before.level1(&gen));
            let rhs = after.level1(&gen).matmul(&i);
            l1 = l1.max(rel(&lhs, &rhs));
        }
        Ok((l0, l1))
    }

    /// The same residuals measured on the columns of `probes`, without
    /// forming level-1 matrices: the largest `‖I J₀,λ x − J_λ,0 I x‖ /
    /// ‖J_λ,0 I x‖` over generators and probes.
    pub fn intertwining_residuals_probed(&self, rep: &AdjointRep, lambda: C64, probes: &CMatrix) -> Result<(f64, f64)> {
        let i = self.intertwiner(lambda)?;
        let zero = c64(0.0, 0.0);
        let before = YangianTwoSiteAction::new(rep, zero, lambda);
        let after = YangianTwoSiteAction::new(rep, lambda, zero);
        let d = self.site_dim();
        let (mut l0, mut l1) = (0.0f64, 0.0f64);
        for col in 0..probes.cols() {
            let x = TensorVector::from_vec(d, probes.column(col));
            let ix = TensorVector::from_vec(d, i.mul_vec(x.as_slice()));
            for g in rep.basis().generators() {
                let gen = Generator::new(rep, g)?;
                let lhs0 = i.mul_vec(before.apply_level0(&gen, &x).as_slice());
                let rhs0 = after.apply_level0(&gen, &ix);
                l0 = l0.max(distance(&lhs0, rhs0.as_slice()) / rhs0.norm().max(f64::MIN_POSITIVE));
                let lhs1 = i.mul_vec(before.apply_level1(&gen, &x).as_slice());
                let rhs1 = after.apply_level1(&gen, &ix);
                l1 = l1.max(distance(&lhs1, rhs1.as_slice()) / rhs1.norm().max(f64::MIN_POSITIVE));
            }
        }
        Ok((l0, l1))
    }

    /// `b[i][j] = ⟨uᵢ, op uⱼ⟩` in the orthonormal basis
    /// `{v_s/‖v_s‖, v_a/‖v_a‖}`.
    pub fn adjoint_block_of(&self, op: &CMatrix) -> Block {
        let h = self.dec.highest_weight_vectors();
        let unit = |v: &TensorVector| {
            let s = 1.0 / v.norm();
            v.as_slice().iter().map(|z| z * s).collect::<Vec<C64>>()
        };
        let basis = [unit(h.v_s()), unit(h.v_a())];
        let mut b = [[c64(0.0, 0.0); 2]; 2];
        for (j, col) in basis.iter().enumerate() {
            let image = op.mul_vec(col);
            for (i, row) in basis.iter().enumerate() {
                b[i][j] = inner(row, &image);
            }
        }
        b
    }

    /// `tr(P op)/tr(P)` for a diagonal submodule.
    pub fn module_weight(&self, kind: SubmoduleKind, op: &CMatrix) -> Result<C64> {
        let p = self.projector(kind)?;
        Ok(p.matmul(op).trace() / p.trace())
    }
}
