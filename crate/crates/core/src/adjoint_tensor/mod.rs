//! The adjoint representation of su(n) and its tensor square.
//!
//! Two distinct objects go by the name Ω:
//!
//! * the element `Σₐ Iᵃ ⊗ Iᵃ` of `g ⊗ g`, whose coordinates are `δᵃᵇ` (the
//!   singlet highest-weight vector), and which is multiplied as an `n² × n²`
//!   matrix when building the Table-1 style vectors in [`hwv`];
//! * the operator `Ω_op = Σₐ Sᵃ ⊗ Sᵃ` acting on `V ⊗ V`, `V` the adjoint
//!   module, returned by [`AdjointRep::casimir_op`].
//!
//! Vectors of `V ⊗ V` are [`TensorVector`]s, coordinate arrays `vᵃᵇ` of
//! `Σ vᵃᵇ Iᵃ ⊗ Iᵇ`. Viewed as a `dim × dim` matrix `X`, a product operator
//! acts as `(A ⊗ B)·X = A X Bᵀ`.

mod decomposition;
mod hwv;
mod submodule;
mod tensor;

pub use decomposition::Decomposition;
pub use hwv::{highest_weight_vectors, raising_residual, HighestWeightVectors};
pub use submodule::{generate_submodule, Parity, Submodule, SubmoduleKind};
pub use tensor::{SiteOp, TensorVector};

use crate::error::Result;
use crate::liealg::SunBasis;
use crate::numerics::{c64, kron, kron_sum, CMatrix, C64};

/// The adjoint representation: `Sᵃ = ad(Iᵃ)`, i.e. `Sᵃ·Iᶜ = [Iᵃ, Iᶜ]`, so
/// `(Sᵃ)_bc = fᵃᶜᵇ`.
#[derive(Clone, Debug)]
pub struct AdjointRep {
    basis: SunBasis,
    s: Vec<CMatrix>,
    sparse: Vec<SiteOp>,
}

impl AdjointRep {
    pub fn new(basis: SunBasis) -> Self {
        let dim = basis.dim();
        let f = basis.f();
        let s: Vec<CMatrix> = (0..dim)
            .map(|a| CMatrix::from_fn(dim, dim, |b, c| f[(a, c, b)]))
            .collect();
        let sparse = s.iter().map(SiteOp::from_dense).collect();
        Self { basis, s, sparse }
    }

    /// Shorthand for `AdjointRep::new(SunBasis::new(n)?)`.
    pub fn for_rank(n: usize) -> Result<Self> {
        Ok(Self::new(SunBasis::new(n)?))
    }

    pub fn basis(&self) -> &SunBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    /// `n² − 1`
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Dimension of `V ⊗ V`.
    pub fn pair_dim(&self) -> usize {
        self.dim() * self.dim()
    }

    pub fn s(&self) -> &[CMatrix] {
        &self.s
    }

    pub fn sparse_s(&self) -> &[SiteOp] {
        &self.sparse
    }

    /// `ad(x) = Σ wᵃ Sᵃ` for `x = Σ wᵃ Iᵃ`.
    pub fn ad(&self, coords: &[C64]) -> CMatrix {
        let dim = self.dim();
        let mut out = CMatrix::zeros(dim, dim);
        for (sa, &w) in self.s.iter().zip(coords) {
            if w != c64(0.0, 0.0) {
                out.axpy(w, sa);
            }
        }
        out
    }

    /// `ad(x)` for a traceless `n × n` matrix.
    pub fn ad_matrix(&self, x: &crate::numerics::CMatrix) -> Result<CMatrix> {
        Ok(self.ad(&self.basis.coords(x)?))
    }

    /// `ad(e_ij)`, 1-based, `i ≠ j`.
    pub fn ad_unit(&self, i: usize, j: usize) -> Result<CMatrix> {
        Ok(self.ad(&self.basis.unit_coords(i, j)?))
    }

    /// `Σₐ SᵃSᵃ` (equals `2n·1`).
    pub fn site_casimir(&self) -> CMatrix {
        let dim = self.dim();
        let mut out = CMatrix::zeros(dim, dim);
        for sa in &self.s {
            out += &sa.matmul(sa);
        }
        out
    }

    /// Max-norm residual of `[Sᵃ,Sᵇ] = Σ fᵃᵇᶜ Sᶜ` over all pairs.
    pub fn representation_residual(&self) -> f64 {
        let dim = self.dim();
        let f = self.basis.f();
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                let coords: Vec<C64> = (0..dim).map(|c| f[(a, b, c)]).collect();
                let lhs = self.s[a].commutator(&self.s[b]);
                worst = worst.max(lhs.max_abs_diff(&self.ad(&coords)));
            }
        }
        worst
    }

    /// Dense `Ω_op = Σₐ Sᵃ ⊗ Sᵃ` on `V ⊗ V`.
    pub fn casimir_op(&self) -> CMatrix {
        let pairs: Vec<(&CMatrix, &CMatrix)> = self.s.iter().map(|s| (s, s)).collect();
        kron_sum(&pairs)
    }

    /// Dense `Δ(x) = A ⊗ 1 + 1 ⊗ A` for a site operator `A`.
    pub fn delta(&self, site_op: &CMatrix) -> CMatrix {
        let id = CMatrix::identity(self.dim());
        let mut out = kron(site_op, &id);
        out += &kron(&id, site_op);
        out
    }

    /// Dense swap `σ` on `V ⊗ V`.
    pub fn permutation_op(&self) -> CMatrix {
        permutation_op(self.dim())
    }

    /// `Ω_op · v` without forming `Ω_op`.
    pub fn apply_casimir(&self, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zeros(self.dim());
        for sa in &self.sparse {
            let left = sa.apply_left(v);
            sa.accumulate_right(&left, c64(1.0, 0.0), &mut out);
        }
        out
    }

    /// `Δ(x)·v = (A ⊗ 1 + 1 ⊗ A)·v` for a sparse site operator `A`.
    pub fn apply_delta(&self, site_op: &SiteOp, v: &TensorVector) -> TensorVector {
        let mut out = site_op.apply_left(v);
        site_op.accumulate_right(v, c64(1.0, 0.0), &mut out);
        out
    }
}

/// Swap `σ(v ⊗ w) = w ⊗ v` on a `dim ⊗ dim` space.
pub fn permutation_op(dim: usize) -> CMatrix {
    let mut out = CMatrix::zeros(dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(j * dim + i, i * dim + j)] = c64(1.0, 0.0);
        }
    }
    out
}

/// `m·σ`: column `(i,j)` of the result is column `(j,i)` of `m`.
pub fn right_swap(m: &CMatrix, dim: usize) -> CMatrix {
    assert_eq!(m.cols(), dim * dim);
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, (c % dim) * dim + c / dim)])
}

/// `σ·m`: row `(i,j)` of the result is row `(j,i)` of `m`.
pub fn left_swap(m: &CMatrix, dim: usize) -> CMatrix {
    assert_eq!(m.rows(), dim * dim);
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| m[((r % dim) * dim + r / dim, c)])
}
