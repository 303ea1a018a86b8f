use super::{norm, CMatrix, Tolerance, C64};
use crate::error::{Error, Result};

/// One eigenvalue with a unit-norm right eigenvector.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: C64,
    pub vector: Vec<C64>,
}

fn require_square(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigenproblem needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Eigenvalues and right eigenvectors of a general complex matrix.
///
/// Every returned pair satisfies `‖m·v − λ·v‖ ≤ abs_tol·‖m‖_F`; a violation is
/// reported as an error rather than silently returned.
pub fn eig_general(m: &CMatrix, tol: &Tolerance) -> Result<Vec<EigenPair>> {
    require_square(m)?;
    let dim = m.rows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let evd = m.as_faer().eigen().map_err(|_| Error::NoConvergence { dim })?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let scale = m.frobenius_norm();
    let mut pairs = Vec::with_capacity(dim);
    for k in 0..dim {
        let value = s[k];
        let mut vector: Vec<C64> = (0..dim).map(|i| u[(i, k)]).collect();
        let nv = norm(&vector);
        if nv > 0.0 {
            vector.iter_mut().for_each(|z| *z /= nv);
        }
        let mv = m.mul_vec(&vector);
        let residual = mv
            .iter()
            .zip(&vector)
            .map(|(a, b)| (a - value * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > tol.abs_tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::EigenResidual {
                dim,
                residual,
                bound: tol.abs_tol * scale,
            });
        }
        pairs.push(EigenPair { value, vector });
    }
    Ok(pairs)
}

/// Eigenvalues only; cheaper than [`eig_general`] for large matrices.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    require_square(m)?;
    let dim = m.rows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    m.as_faer().eigenvalues().map_err(|_| Error::NoConvergence { dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_matrix() {
        let m = CMatrix::from_diag(&[c64(1.0, 0.0), c64(2.0, 3.0)]);
        let vals = sorted(
            eig_general(&m, &Tolerance::default())
                .unwrap()
                .into_iter()
                .map(|p| p.value)
                .collect(),
        );
        assert!((vals[0] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((vals[1] - c64(2.0, 3.0)).norm() < 1e-14);
    }

    #[test]
    fn defective_jordan_block() {
        let m = CMatrix::from_vec(2, 2, vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        let pairs = eig_general(&m, &Tolerance::default()).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in pairs {
            assert!(p.value.norm() < 1e-12);
        }
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(eig_general(&CMatrix::zeros(2, 3), &Tolerance::default()).is_err());
    }

    #[test]
    fn random_eight_by_eight_trace_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = CMatrix::from_fn(8, 8, |_, _| {
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let sum: C64 = eig_general(&m, &Tolerance::default())
            .unwrap()
            .iter()
            .map(|p| p.value)
            .sum();
        assert!((sum - m.trace()).norm() < 1e-8);
        let sum2: C64 = eigenvalues(&m).unwrap().into_iter().sum();
        assert!((sum2 - m.trace()).norm() < 1e-8);
    }
}
