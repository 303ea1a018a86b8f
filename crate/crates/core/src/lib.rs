//! Rational R-matrix with adjoint su(n) symmetry.

pub mod adjoint_tensor;
pub mod error;
pub mod liealg;
pub mod numerics;
pub mod report;
pub mod rmatrix;
pub mod sampling;
pub mod spinchain;
pub mod verify;
pub mod yangian_action;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lie-algebra.md")]
    mod lie_algebra {}
    #[doc = include_str!("../../../book/src/tensor-square.md")]
    mod tensor_square {}
    #[doc = include_str!("../../../book/src/yangian.md")]
    mod yangian {}
    #[doc = include_str!("../../../book/src/rmatrix.md")]
    mod rmatrix {}
    #[doc = include_str!("../../../book/src/spin-chain.md")]
    mod spin_chain {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
