//! Dense complex linear algebra used by every other module.
//!
//! Matrices are row-major [`CMatrix`] values. Products and the general
//! eigensolver run on `faer`; Kronecker products, the multi-site pair
//! application used for three-site and chain operators, and Gram-Schmidt
//! are implemented here.

mod eig;
mod json;
mod kron;
mod matrix;
mod ortho;

pub use eig::{eig_general, eigenvalues, EigenPair};
pub use json::{from_json_str, to_json_string, MatrixJson, Rank3Json};
pub use kron::{apply_pair, embed_pair, kron, kron_sum};
pub use matrix::CMatrix;
pub use ortho::{orthonormalize, GramSchmidt};

pub(crate) use matrix::gemm;

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;

/// Numerical thresholds shared by all checks.
///
/// `abs_tol` bounds operator-identity residuals, `rank_tol` decides when a
/// vector is numerically dependent on a basis.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rank_tol: f64,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rank_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && rank_tol > 0.0) || !abs_tol.is_finite() || !rank_tol.is_finite() {
            return Err(Error::InvalidTolerance { abs_tol, rank_tol });
        }
        Ok(Self { abs_tol, rank_tol })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rank_tol: 1e-8,
        }
    }
}

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `⟨a, b⟩ = Σ conj(aᵢ) bᵢ`
#[inline]
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `y += alpha * x`
#[inline]
pub fn axpy(y: &mut [C64], alpha: C64, x: &[C64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}
