//! Seeded random spectral parameters and probe vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::{c64, CMatrix, C64};

/// Seed used when neither a flag nor `ADJRMAT_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_150_817;

/// Radius of the disk spectral parameters are drawn from.
pub const SAMPLE_RADIUS: f64 = 3.0;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform point of the disk `|z| ≤ SAMPLE_RADIUS` at distance at least
    /// `guard` from every point of `avoid`.
    pub fn spectral(&mut self, avoid: &[f64], guard: f64) -> C64 {
        loop {
            let r = SAMPLE_RADIUS * self.rng.random::<f64>().sqrt();
            let phi = std::f64::consts::TAU * self.rng.random::<f64>();
            let z = C64::from_polar(r, phi);
            if avoid.iter().all(|&p| (z - p).norm() >= guard) {
                return z;
            }
        }
    }

    /// A pair `(λ, μ)` with `λ`, `μ` and `λ + μ` all clear of `avoid`.
    pub fn spectral_pair(&mut self, avoid: &[f64], guard: f64) -> (C64, C64) {
        loop {
            let l = self.spectral(avoid, guard);
            let m = self.spectral(avoid, guard);
            if avoid.iter().all(|&p| (l + m - p).norm() >= guard) {
                return (l, m);
            }
        }
    }

    pub fn gaussian(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        c64(re, im)
    }

    /// `k` independent complex Gaussian vectors of unit norm, as columns.
    pub fn unit_columns(&mut self, rows: usize, k: usize) -> CMatrix {
        let mut cols = Vec::with_capacity(k);
        for _ in 0..k {
            let mut v: Vec<C64> = (0..rows).map(|_| self.gaussian()).collect();
            let nrm = crate::numerics::norm(&v);
            v.iter_mut().for_each(|z| *z /= nrm);
            cols.push(v);
        }
        CMatrix::from_columns(&cols)
    }

    /// A random traceless complex `n × n` matrix.
    pub fn traceless(&mut self, n: usize) -> CMatrix {
        let mut m = CMatrix::from_fn(n, n, |_, _| c64(0.0, 0.0));
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.gaussian();
            }
        }
        let tr = m.trace() / n as f64;
        for i in 0..n {
            m[(i, i)] -= tr;
        }
        m
    }
}
