use super::submodule::{finish, lockstep_orbit};
use super::{highest_weight_vectors, AdjointRep, HighestWeightVectors, Submodule, SubmoduleKind, TensorVector};
use crate::error::{Error, Result};
use crate::numerics::{c64, gemm, inner, CMatrix, Tolerance, C64};

/// `V ⊗ V` split into its irreducible submodules, together with the
/// equivariant isometry between the two adjoint copies.
///
/// The basis of the antisymmetric adjoint copy is generated in lockstep
/// with the symmetric one, so `iso = Σₖ |aₖ⟩⟨sₖ|` maps `v_s/‖v_s‖` to
/// `v_a/‖v_a‖`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    n: usize,
    site_dim: usize,
    hwv: HighestWeightVectors,
    submodules: Vec<Submodule>,
    completeness_residual: f64,
}

impl Decomposition {
    pub fn build(rep: &AdjointRep, tol: &Tolerance) -> Result<Self> {
        let n = rep.n();
        let hwv = highest_weight_vectors(rep.basis(), tol)?;
        let mut submodules = Vec::with_capacity(7);
        for kind in SubmoduleKind::for_rank(n) {
            match kind {
                SubmoduleKind::AdjointAnti => continue,
                SubmoduleKind::AdjointSym => {
                    let vs = hwv.v_s();
                    let va = hwv.v_a();
                    let label = kind.label(n);
                    let mut pair = lockstep_orbit(rep, &[vs, va], &label, tol)?;
                    let ba = pair.pop().expect("two seeds");
                    let bs = pair.pop().expect("two seeds");
                    submodules.push(finish(rep, kind, vs, kind.parity(), bs, tol)?);
                    let anti = SubmoduleKind::AdjointAnti;
                    submodules.push(finish(rep, anti, va, anti.parity(), ba, tol)?);
                }
                _ => {
                    let v = hwv.get(kind).expect("vector for every kind");
                    let basis = lockstep_orbit(rep, &[v], &kind.label(n), tol)?.pop().expect("one seed");
                    submodules.push(finish(rep, kind, v, kind.parity(), basis, tol)?);
                }
            }
        }
        let total: usize = submodules.iter().map(|s| s.dim()).sum();
        if total != rep.pair_dim() {
            return Err(Error::Decomposition(format!(
                "submodule dimensions sum to {total}, expected {}",
                rep.pair_dim()
            )));
        }
        let mut out = Self {
            n,
            site_dim: rep.dim(),
            hwv,
            submodules,
            completeness_residual: f64::NAN,
        };
        out.completeness_residual = out.measure_completeness();
        if out.completeness_residual > tol.abs_tol {
            return Err(Error::Decomposition(format!(
                "projectors do not resolve the identity (residual {:e})",
                out.completeness_residual
            )));
        }
        Ok(out)
    }

    /// `max |Σ Pᵢ − 1|`, from the square matrix of all basis vectors.
    fn measure_completeness(&self) -> f64 {
        let cols: Vec<Vec<C64>> = self.submodules.iter().flat_map(|s| s.basis().iter().cloned()).collect();
        let b = CMatrix::from_columns(&cols);
        let bh = b.adjoint();
        let mut bb = CMatrix::zeros(b.rows(), b.rows());
        gemm(&mut bb, &b, &bh, c64(1.0, 0.0), false);
        bb.max_abs_diff(&CMatrix::identity(b.rows()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    pub fn highest_weight_vectors(&self) -> &HighestWeightVectors {
        &self.hwv
    }

    pub fn submodules(&self) -> &[Submodule] {
        &self.submodules
    }

    pub fn submodule(&self, kind: SubmoduleKind) -> Option<&Submodule> {
        self.submodules.iter().find(|s| s.kind == kind)
    }

    /// Like [`submodule`](Self::submodule) but an error for absent kinds.
    pub fn require(&self, kind: SubmoduleKind) -> Result<&Submodule> {
        self.submodule(kind)
            .ok_or_else(|| Error::UnknownLabel(format!("{kind} is not a submodule for n = {}", self.n)))
    }

    /// `(label, dimension)` in table order.
    pub fn dimensions(&self) -> Vec<(String, usize)> {
        self.submodules.iter().map(|s| (s.label.clone(), s.dim())).collect()
    }

    pub fn completeness_residual(&self) -> f64 {
        self.completeness_residual
    }

    pub fn projector(&self, kind: SubmoduleKind) -> Result<CMatrix> {
        Ok(self.require(kind)?.projector())
    }

    /// Dense `iso = Σₖ |aₖ⟩⟨sₖ|`.
    pub fn iso_s_to_a(&self) -> CMatrix {
        let bs = self.adj(SubmoduleKind::AdjointSym).basis_matrix();
        let ba = self.adj(SubmoduleKind::AdjointAnti).basis_matrix();
        ba.matmul(&bs.adjoint())
    }

    /// `iso·v` without forming `iso`.
    pub fn apply_iso(&self, v: &TensorVector) -> TensorVector {
        self.transfer(SubmoduleKind::AdjointSym, SubmoduleKind::AdjointAnti, v)
    }

    /// `iso†·v` without forming `iso`.
    pub fn apply_iso_adjoint(&self, v: &TensorVector) -> TensorVector {
        self.transfer(SubmoduleKind::AdjointAnti, SubmoduleKind::AdjointSym, v)
    }

    fn adj(&self, kind: SubmoduleKind) -> &Submodule {
        self.submodule(kind).expect("adjoint copies are always present")
    }

    fn transfer(&self, from: SubmoduleKind, to: SubmoduleKind, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zeros(self.site_dim);
        for (src, dst) in self.adj(from).basis().iter().zip(self.adj(to).basis()) {
            let c = inner(src, v.as_slice());
            out.axpy(c, &TensorVector::from_vec(self.site_dim, dst.clone()));
        }
        out
    }

    /// `max |Σ ωᵢ Pᵢ − Ω_op|` against the directly built operator.
    pub fn omega_reconstruction_residual(&self, rep: &AdjointRep) -> f64 {
        let direct = rep.casimir_op();
        let mut rebuilt = CMatrix::zeros(direct.rows(), direct.cols());
        for s in &self.submodules {
            rebuilt.axpy(c64(s.omega_eigenvalue, 0.0), &s.projector());
        }
        rebuilt.max_abs_diff(&direct)
    }

    /// `max |Σ pᵢ Pᵢ − σ|`.
    pub fn swap_reconstruction_residual(&self) -> f64 {
        let sigma = super::permutation_op(self.site_dim);
        let mut rebuilt = CMatrix::zeros(sigma.rows(), sigma.cols());
        for s in &self.submodules {
            rebuilt.axpy(c64(s.kind.parity().sign(), 0.0), &s.projector());
        }
        rebuilt.max_abs_diff(&sigma)
    }

    /// Largest `|[Pᵢ, Δ(Iᵃ)]|` over submodules and generators.
    pub fn invariance_residual(&self, rep: &AdjointRep) -> f64 {
        let deltas: Vec<CMatrix> = rep.s().iter().map(|s| rep.delta(s)).collect();
        let mut worst = 0.0f64;
        for s in &self.submodules {
            let p = s.projector();
            for d in &deltas {
                worst = worst.max(p.commutator(d).max_abs());
            }
        }
        worst
    }

    /// Largest `|iso·Δ(Iᵃ)·P_s − Δ(Iᵃ)·iso|` over generators.
    pub fn iso_equivariance_residual(&self, rep: &AdjointRep) -> f64 {
        let iso = self.iso_s_to_a();
        let ps = self.adj(SubmoduleKind::AdjointSym).projector();
        let mut worst = 0.0f64;
        for s in rep.s() {
            let d = rep.delta(s);
            let lhs = iso.matmul(&d.matmul(&ps));
            let rhs = d.matmul(&iso);
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        worst
    }
}
