//! The evaluation action of the Yangian on `V_μ ⊗ V_λ`.
//!
//! For `x ∈ su(n)`, with `A = ad(x)` and
//! `T = ¼ Σ tr(x{Iᵃ,Iᵇ}) SᵃSᵇ` (trace in the fundamental, products in the
//! adjoint),
//!
//! ```text
//! J(x)_{μ,λ} = (μA + T) ⊗ 1 + 1 ⊗ (λA + T) + ½ [A ⊗ 1, Ω_op]
//! ```
//!
//! and the level-0 action is `Δ(x) = A ⊗ 1 + 1 ⊗ A`.

use crate::adjoint_tensor::{AdjointRep, HighestWeightVectors, SiteOp, SubmoduleKind, TensorVector};
use crate::error::Result;
use crate::numerics::{c64, kron, kron_sum, CMatrix, Tolerance, C64};
use crate::report::IdentityCheck;

/// The single-site pieces `A = ad(x)` and `T` of `J(x)`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub x: CMatrix,
    pub ad: CMatrix,
    pub t: CMatrix,
    ad_sparse: SiteOp,
}

impl Generator {
    /// Rejects `x` that is not a traceless `n × n` matrix.
    pub fn new(rep: &AdjointRep, x: &CMatrix) -> Result<Self> {
        let ad = rep.ad_matrix(x)?;
        let c = rep.basis().anticommutator_traces(x);
        let dim = rep.dim();
        let mut t = CMatrix::zeros(dim, dim);
        for (a, sa) in rep.s().iter().enumerate() {
            let row: Vec<C64> = c.row(a).to_vec();
            let inner = rep.ad(&row);
            t.axpy(c64(0.25, 0.0), &sa.matmul(&inner));
        }
        let ad_sparse = SiteOp::from_dense(&ad);
        Ok(Self {
            x: x.clone(),
            ad,
            t,
            ad_sparse,
        })
    }

    /// `Generator::new` for the matrix unit `e_ij` (1-based, `i ≠ j`).
    pub fn unit(rep: &AdjointRep, i: usize, j: usize) -> Result<Self> {
        Self::new(rep, &rep.basis().matrix_unit(i, j)?.matrix)
    }
}

/// `J(x)_{μ,λ}` at fixed spectral parameters.
#[derive(Clone, Copy, Debug)]
pub struct YangianTwoSiteAction<'a> {
    rep: &'a AdjointRep,
    pub mu: C64,
    pub lambda: C64,
}

impl<'a> YangianTwoSiteAction<'a> {
    pub fn new(rep: &'a AdjointRep, mu: C64, lambda: C64) -> Self {
        Self { rep, mu, lambda }
    }

    pub fn rep(&self) -> &'a AdjointRep {
        self.rep
    }

    /// Dense `Δ(x)`.
    pub fn level0(&self, g: &Generator) -> CMatrix {
        self.rep.delta(&g.ad)
    }

    /// Dense `J(x)_{μ,λ}`.
    pub fn level1(&self, g: &Generator) -> CMatrix {
        let dim = self.rep.dim();
        let id = CMatrix::identity(dim);
        let mut left = g.ad.scale(self.mu);
        left += &g.t;
        let mut right = g.ad.scale(self.lambda);
        right += &g.t;
        let mut out = kron(&left, &id);
        out += &kron(&id, &right);
        // ½[A ⊗ 1, Σ Sᵃ ⊗ Sᵃ] = ½ Σ [A, Sᵃ] ⊗ Sᵃ
        let comms: Vec<CMatrix> = self
            .rep
            .s()
            .iter()
            .map(|s| g.ad.commutator(s).scale(c64(0.5, 0.0)))
            .collect();
        let pairs: Vec<(&CMatrix, &CMatrix)> = comms.iter().zip(self.rep.s()).collect();
        out += &kron_sum(&pairs);
        out
    }

    /// `Δ(x)·v`.
    pub fn apply_level0(&self, g: &Generator, v: &TensorVector) -> TensorVector {
        self.rep.apply_delta(&g.ad_sparse, v)
    }

    /// `J(x)_{μ,λ}·v` without forming any `dim² × dim²` matrix.
    pub fn apply_level1(&self, g: &Generator, v: &TensorVector) -> TensorVector {
        let mut left = g.ad.scale(self.mu);
        left += &g.t;
        let mut right = g.ad.scale(self.lambda);
        right += &g.t;
        let mut out = v.apply_local(&left, &right);
        let om_v = self.rep.apply_casimir(v);
        out.axpy(c64(0.5, 0.0), &g.ad_sparse.apply_left(&om_v));
        let a_v = g.ad_sparse.apply_left(v);
        out.axpy(c64(-0.5, 0.0), &self.rep.apply_casimir(&a_v));
        out
    }
}

/// `‖(T' ⊗ 1 + 1 ⊗ T')·v‖` with `T' = Σ tr(x{Iᵃ,Iᵇ}) SᵃSᵇ`; zero for the zero
/// vector.
pub fn anticommutator_residual(g: &Generator, v: &TensorVector) -> f64 {
    let t4 = g.t.scale(c64(4.0, 0.0));
    v.apply_local(&t4, &t4).norm()
}

/// The anticommutator identity for `x = e_ij` on the highest-weight vector
/// of `target`, with residual relative to `‖v‖`.
pub fn verify_anticommutator_identity(
    rep: &AdjointRep,
    hwv: &HighestWeightVectors,
    target: SubmoduleKind,
    unit: (usize, usize),
    tol: &Tolerance,
) -> Result<IdentityCheck> {
    let v = hwv.get(target).ok_or_else(|| {
        crate::Error::UnknownLabel(format!("{target} has no highest-weight vector for n = {}", rep.n()))
    })?;
    let g = Generator::unit(rep, unit.0, unit.1)?;
    let scale = v.norm();
    let residual = if scale == 0.0 {
        0.0
    } else {
        anticommutator_residual(&g, v) / scale
    };
    let name = format!("anticommutator e{}{} on {}", unit.0, unit.1, target.label(rep.n()));
    Ok(IdentityCheck::new(name, "identity1", rep.n(), residual, tol.abs_tol))
}

/// Both substitutions of the anticommutator identity:
/// `e₍ₙ₋₁₎ₙ` on `(20…010)a` and `e₁₂` on `(010…02)a`.
pub fn anticommutator_checks(
    rep: &AdjointRep,
    hwv: &HighestWeightVectors,
    tol: &Tolerance,
) -> Result<Vec<IdentityCheck>> {
    let n = rep.n();
    Ok(vec![
        verify_anticommutator_identity(rep, hwv, SubmoduleKind::AntiLeft, (n - 1, n), tol)?,
        verify_anticommutator_identity(rep, hwv, SubmoduleKind::AntiRight, (1, 2), tol)?,
    ])
}

/// Residuals of the four adjoint highest-weight relations and the singlet
/// double action at one `(μ, λ)`, each relative to the norm of the vector
/// acted on.
pub fn verify_hw_relations(
    rep: &AdjointRep,
    hwv: &HighestWeightVectors,
    mu: C64,
    lambda: C64,
    threshold: f64,
) -> Result<Vec<IdentityCheck>> {
    let n = rep.n();
    let nf = n as f64;
    let k = (nf * nf - 4.0).sqrt();
    let act = YangianTwoSiteAction::new(rep, mu, lambda);
    let j1n = Generator::unit(rep, 1, n)?;
    let jmn = Generator::unit(rep, n - 1, n)?;
    let j1m = Generator::unit(rep, 1, n - 1)?;
    let top = hwv.top();
    let vs = hwv.v_s();
    let va = hwv.v_a();
    let singlet = hwv.get(SubmoduleKind::Singlet).expect("singlet always present");

    let one = c64(1.0, 0.0);
    let nc = c64(nf, 0.0);
    let coeff_ex6 = c64(nf * (nf - 2.0), 0.0);
    let coeff_ex7 = k * (nc + 2.0 - mu * 2.0 + lambda * 2.0);
    let coeff_ex8 = nc * ((lambda - mu) * (lambda - mu) + lambda * 2.0 - nc * mu + nf * nf / 4.0);
    let coeff_ex9 = (k / 4.0)
        * (c64(nf * (nf + 4.0), 0.0) - (6.0 * nf + 4.0) * mu + mu * mu * 4.0 + (2.0 * nf - 4.0) * lambda
            - lambda * lambda * 4.0);
    let coeff_singlet = -2.0 * (mu - lambda - one) * (mu - lambda - nc);

    let rel = |lhs: TensorVector, coeff: C64, v: &TensorVector| lhs.distance(&top.scaled(coeff)) / v.norm();
    let double = |v: &TensorVector| act.apply_level1(&jmn, &act.apply_level1(&j1m, v));

    let entries = [
        ("J(e1n) v_s", "ex6", rel(act.apply_level1(&j1n, vs), coeff_ex6, vs)),
        ("J(e1n) v_a", "ex7", rel(act.apply_level1(&j1n, va), coeff_ex7, va)),
        ("J(e(n-1)n) J(e1(n-1)) v_s", "ex8", rel(double(vs), coeff_ex8, vs)),
        ("J(e(n-1)n) J(e1(n-1)) v_a", "ex9", rel(double(va), coeff_ex9, va)),
        (
            "J(e1n) J(e1n) singlet",
            "singlet double action",
            rel(
                act.apply_level1(&j1n, &act.apply_level1(&j1n, singlet)),
                coeff_singlet,
                singlet,
            ),
        ),
    ];
    Ok(entries
        .into_iter()
        .map(|(name, tag, r)| {
            IdentityCheck::new(name, tag, n, r, threshold)
                .with_mu(mu)
                .with_lambda(lambda)
        })
        .collect())
}
