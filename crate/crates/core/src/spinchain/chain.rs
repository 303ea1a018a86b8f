use super::{sorted_eigenvalues, spectrum_summary, LocalHamiltonian, SpectrumSummary};
use crate::adjoint_tensor::AdjointRep;
use crate::error::{Error, Result};
use crate::numerics::{apply_pair, c64, embed_pair, kron, CMatrix, C64};
use crate::rmatrix::SpectralOperators;

/// Largest dense dimension accepted for a chain or a monodromy.
pub const CHAIN_DIM_CAP: usize = 10_000;

/// `H = Σᵢ h_{i,i+1}` with periodic boundary conditions.
#[derive(Clone, Debug)]
pub struct ChainHamiltonian {
    pub n: usize,
    pub sites: usize,
    pub h: CMatrix,
}

fn checked_dim(d: usize, sites: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..sites {
        total = total.saturating_mul(d);
    }
    if total > CHAIN_DIM_CAP {
        return Err(Error::DimensionCap {
            required: total,
            cap: CHAIN_DIM_CAP,
        });
    }
    Ok(total)
}

pub fn chain_h(local: &LocalHamiltonian, sites: usize) -> Result<ChainHamiltonian> {
    if sites < 2 {
        return Err(Error::Usage(format!("a chain needs at least 2 sites, got {sites}")));
    }
    let d = local.n * local.n - 1;
    let total = checked_dim(d, sites)?;
    let mut h = CMatrix::zeros(total, total);
    for i in 0..sites {
        h += &embed_pair(&local.h, d, sites, i, (i + 1) % sites);
    }
    Ok(ChainHamiltonian { n: local.n, sites, h })
}

/// `Σᵢ opᵢ` over all sites.
fn site_sum(op: &CMatrix, sites: usize) -> CMatrix {
    let d = op.rows();
    let total = d.pow(sites as u32);
    let mut out = CMatrix::zeros(total, total);
    for i in 0..sites {
        let left = CMatrix::identity(d.pow(i as u32));
        let right = CMatrix::identity(d.pow((sites - 1 - i) as u32));
        out += &kron(&kron(&left, op), &right);
    }
    out
}

/// Largest `‖[H, Σᵢ Sᵃᵢ]‖_F / (‖H‖_F‖Σᵢ Sᵃᵢ‖_F)` over the basis.
pub fn global_symmetry_residual(chain: &ChainHamiltonian, rep: &AdjointRep) -> f64 {
    let hn = chain.h.frobenius_norm();
    rep.s()
        .iter()
        .map(|s| {
            let total = site_sum(s, chain.sites);
            chain.h.commutator(&total).frobenius_norm() / (hn * total.frobenius_norm())
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ChainDiagnostics {
    pub n: usize,
    pub sites: usize,
    pub spectrum: SpectrumSummary,
    pub symmetry_residual: f64,
    #[serde(skip)]
    pub eigenvalues: Vec<C64>,
}

impl ChainHamiltonian {
    /// Spectrum and symmetry diagnostics; eigenvalues with
    /// `|Im| > imag_threshold` are counted as complex.
    pub fn diagnostics(&self, rep: &AdjointRep, imag_threshold: f64) -> Result<ChainDiagnostics> {
        let eigenvalues = sorted_eigenvalues(&self.h)?;
        Ok(ChainDiagnostics {
            n: self.n,
            sites: self.sites,
            spectrum: spectrum_summary(&eigenvalues, &self.h, imag_threshold),
            symmetry_residual: global_symmetry_residual(self, rep),
            eigenvalues,
        })
    }
}

/// `t(λ) = tr₀[R₀ₙ(λ)…R₀₁(λ)]`, with the Lax operator on site `j` being
/// `R(λ)` acting on (site `j`, auxiliary space).
pub fn transfer_matrix(ops: &SpectralOperators, lambda: C64, sites: usize) -> Result<CMatrix> {
    if sites < 1 {
        return Err(Error::Usage("a transfer matrix needs at least 1 site".into()));
    }
    let d = ops.site_dim();
    checked_dim(d, sites + 1)?;
    let r = ops.rmatrix(lambda)?;
    let block = d.pow(sites as u32);
    let mut t = CMatrix::zeros(block, block);
    for alpha in 0..d {
        let mut x = CMatrix::zeros(d * block, block);
        for k in 0..block {
            x[(alpha * block + k, k)] = c64(1.0, 0.0);
        }
        for j in 1..=sites {
            x = apply_pair(&r, d, sites + 1, j, 0, &x);
        }
        for i in 0..block {
            for k in 0..block {
                t[(i, k)] += x[(alpha * block + i, k)];
            }
        }
    }
    Ok(t)
}

/// `‖[A, B]‖_F / (‖A‖_F‖B‖_F)`
pub fn relative_commutator(a: &CMatrix, b: &CMatrix) -> f64 {
    a.commutator(b).frobenius_norm() / (a.frobenius_norm() * b.frobenius_norm())
}

/// `‖[t(λ), t(μ)]‖_F / (‖t(λ)‖_F‖t(μ)‖_F)`
pub fn commutation_check(ops: &SpectralOperators, lambda: C64, mu: C64, sites: usize) -> Result<f64> {
    let a = transfer_matrix(ops, lambda, sites)?;
    let b = transfer_matrix(ops, mu, sites)?;
    Ok(relative_commutator(&a, &b))
}

/// The translation `|s₁ s₂ … s_N⟩ ↦ |s_N s₁ … s_{N−1}⟩`.
pub fn cyclic_shift(d: usize, sites: usize) -> CMatrix {
    let total = d.pow(sites as u32);
    let last = d.pow((sites - 1) as u32);
    let mut u = CMatrix::zeros(total, total);
    for k in 0..total {
        let image = (k % d) * last + k / d;
        u[(image, k)] = c64(1.0, 0.0);
    }
    u
}

/// Relative distance of `m` from the line through `u`:
/// `‖m − αu‖_F/‖m‖_F` with the optimal `α`.
pub fn proportionality_residual(m: &CMatrix, u: &CMatrix) -> f64 {
    let alpha = u.adjoint().matmul(m).trace() / u.frobenius_norm().powi(2);
    m.frobenius_diff(&u.scale(alpha)) / m.frobenius_norm()
}
