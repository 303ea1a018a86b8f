use super::{axpy, inner, norm, Tolerance, C64};

/// Incremental modified Gram-Schmidt with one re-orthogonalization pass.
#[derive(Clone, Debug, Default)]
pub struct GramSchmidt {
    basis: Vec<Vec<C64>>,
}

impl GramSchmidt {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<C64>> {
        self.basis
    }

    /// Removes the components of `v` along the current basis, in place.
    pub fn project_out(&self, v: &mut [C64]) {
        for _pass in 0..2 {
            for b in &self.basis {
                let c = inner(b, v);
                axpy(v, -c, b);
            }
        }
    }

    /// Orthogonalizes `v` and appends it if its residual norm is at least
    /// `threshold`. Returns the residual norm either way.
    pub fn push(&mut self, mut v: Vec<C64>, threshold: f64) -> (bool, f64) {
        self.project_out(&mut v);
        let r = norm(&v);
        if r < threshold || r == 0.0 {
            return (false, r);
        }
        let inv = 1.0 / r;
        v.iter_mut().for_each(|z| *z *= inv);
        self.basis.push(v);
        (true, r)
    }

    /// Appends an already orthonormal vector without checks.
    pub(crate) fn push_unchecked(&mut self, v: Vec<C64>) {
        self.basis.push(v);
    }
}

/// Orthonormalizes `vectors` in order, dropping those whose residual after
/// projection is below `tol.rank_tol`.
pub fn orthonormalize(vectors: &[Vec<C64>], tol: &Tolerance) -> Vec<Vec<C64>> {
    if let Some(first) = vectors.first() {
        assert!(
            vectors.iter().all(|v| v.len() == first.len()),
            "orthonormalize: vectors must share one length"
        );
    }
    let mut gs = GramSchmidt::new();
    for v in vectors {
        gs.push(v.clone(), tol.rank_tol);
    }
    gs.into_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scales_orthogonal_input() {
        let out = orthonormalize(
            &[vec![c64(1.0, 0.0), c64(0.0, 0.0)], vec![c64(0.0, 0.0), c64(2.0, 0.0)]],
            &Tolerance::default(),
        );
        assert_eq!(
            out,
            vec![vec![c64(1.0, 0.0), c64(0.0, 0.0)], vec![c64(0.0, 0.0), c64(1.0, 0.0)]]
        );
    }

    #[test]
    fn drops_duplicates() {
        let v = vec![c64(1.0, 0.0), c64(0.0, 0.0)];
        let out = orthonormalize(&[v.clone(), v.clone()], &Tolerance::default());
        assert_eq!(out, vec![v]);
    }

    #[test]
    fn empty_input_is_empty_output() {
        assert!(orthonormalize(&[], &Tolerance::default()).is_empty());
    }

    #[test]
    fn fifty_random_vectors_in_dimension_twenty() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vs: Vec<Vec<C64>> = (0..50)
            .map(|_| {
                (0..20)
                    .map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        let out = orthonormalize(&vs, &Tolerance::default());
        assert_eq!(out.len(), 20);
        for (i, a) in out.iter().enumerate() {
            for (j, b) in out.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner(a, b) - c64(expect, 0.0)).norm() <= 1e-9);
            }
        }
    }
}
