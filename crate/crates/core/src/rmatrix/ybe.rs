use super::{SpectralKind, SpectralOperators};
use crate::adjoint_tensor::AdjointRep;
use crate::error::{Error, Result};
use crate::numerics::{apply_pair, c64, CMatrix, C64};
use crate::sampling::Sampler;

/// Largest `(n²−1)³` for which the dense check is allowed (`n ≤ 4`).
pub const DENSE_YBE_MAX_DIM: usize = 3375;

const PANEL: usize = 225;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YbeMode {
    /// The full operator identity, column panel by column panel.
    Dense,
    /// Both sides applied to `probes` random unit vectors drawn from `seed`.
    MatrixFree { probes: usize, seed: u64 },
}

/// `R₁₂(λ)R₁₃(λ+μ)R₂₃(μ)` applied to the columns of `x` (or the reversed
/// product when `reversed`).
fn apply_chain(r_l: &CMatrix, r_lm: &CMatrix, r_m: &CMatrix, d: usize, x: &CMatrix, reversed: bool) -> CMatrix {
    let steps: [(&CMatrix, usize, usize); 3] = if reversed {
        [(r_l, 0, 1), (r_lm, 0, 2), (r_m, 1, 2)]
    } else {
        [(r_m, 1, 2), (r_lm, 0, 2), (r_l, 0, 1)]
    };
    let mut y = apply_pair(steps[0].0, d, 3, steps[0].1, steps[0].2, x);
    for &(op, p, q) in &steps[1..] {
        y = apply_pair(op, d, 3, p, q, &y);
    }
    y
}

/// Relative Yang–Baxter residual for `R` or `R̃`.
///
/// Dense mode returns `‖LHS − RHS‖_F / ‖LHS‖_F`; matrix-free mode returns
/// the largest `‖(LHS − RHS)x‖ / ‖LHS x‖` over the probes.
pub fn ybe_residual(ops: &SpectralOperators, kind: SpectralKind, lambda: C64, mu: C64, mode: YbeMode) -> Result<f64> {
    if kind == SpectralKind::Intertwiner {
        return Err(Error::Usage("the Yang-Baxter check applies to R or R-tilde".into()));
    }
    let d = ops.site_dim();
    let total = d * d * d;
    let r_l = ops.operator(kind, lambda)?;
    let r_lm = ops.operator(kind, lambda + mu)?;
    let r_m = ops.operator(kind, mu)?;
    match mode {
        YbeMode::Dense => {
            if total > DENSE_YBE_MAX_DIM {
                return Err(Error::DimensionCap {
                    required: total,
                    cap: DENSE_YBE_MAX_DIM,
                });
            }
            let (mut diff2, mut lhs2) = (0.0, 0.0);
            let mut start = 0;
            while start < total {
                let w = PANEL.min(total - start);
                let mut x = CMatrix::zeros(total, w);
                for j in 0..w {
                    x[(start + j, j)] = c64(1.0, 0.0);
                }
                let lhs = apply_chain(&r_l, &r_lm, &r_m, d, &x, false);
                let rhs = apply_chain(&r_l, &r_lm, &r_m, d, &x, true);
                diff2 += lhs.frobenius_diff(&rhs).powi(2);
                lhs2 += lhs.frobenius_norm().powi(2);
                start += w;
            }
            Ok((diff2 / lhs2).sqrt())
        }
        YbeMode::MatrixFree { probes, seed } => {
            if probes == 0 {
                return Err(Error::Usage("at least one probe vector is required".into()));
            }
            let x = Sampler::new(seed).unit_columns(total, probes);
            let lhs = apply_chain(&r_l, &r_lm, &r_m, d, &x, false);
            let rhs = apply_chain(&r_l, &r_lm, &r_m, d, &x, true);
            let mut worst = 0.0f64;
            for j in 0..probes {
                let a = lhs.column(j);
                let b = rhs.column(j);
                worst = worst.max(crate::numerics::distance(&a, &b) / crate::numerics::norm(&a));
            }
            Ok(worst)
        }
    }
}

/// Remainders `‖R(λ) − (1 + 2/λ)·1 + Ω_op/λ‖_F` and the ratios between
/// consecutive sample points.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AsymptoticReport {
    pub lambdas: Vec<f64>,
    pub remainders: Vec<f64>,
    /// `remainder[i] / remainder[i+1]`
    pub ratios: Vec<f64>,
    /// Each ratio divided by `(λ[i+1]/λ[i])²`; near 1 for an `O(λ⁻²)` remainder.
    pub normalized_ratios: Vec<f64>,
    pub pass: bool,
}

/// Checks that the remainder of the large-`λ` expansion decays like
/// `λ⁻²`: every normalized ratio must lie within a factor 1.5 of 1.
pub fn asymptotic_check(ops: &SpectralOperators, rep: &AdjointRep, lambdas: &[f64]) -> Result<AsymptoticReport> {
    let omega = rep.casimir_op();
    let dim = omega.rows();
    let mut remainders = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        if l.abs() < 10.0 {
            return Err(Error::Usage(format!("asymptotic check needs |λ| ≥ 10, got {l}")));
        }
        let mut rem = ops.rmatrix(c64(l, 0.0))?;
        let mut lead = CMatrix::identity(dim).scale(c64(1.0 + 2.0 / l, 0.0));
        lead.axpy(c64(-1.0 / l, 0.0), &omega);
        rem -= &lead;
        remainders.push(rem.frobenius_norm());
    }
    let mut ratios = Vec::new();
    let mut normalized = Vec::new();
    for i in 1..lambdas.len() {
        let r = remainders[i - 1] / remainders[i];
        ratios.push(r);
        normalized.push(r / (lambdas[i] / lambdas[i - 1]).powi(2));
    }
    let pass = !normalized.is_empty() && normalized.iter().all(|&q| (1.0 / 1.5..=1.5).contains(&q));
    Ok(AsymptoticReport {
        lambdas: lambdas.to_vec(),
        remainders,
        ratios,
        normalized_ratios: normalized,
        pass,
    })
}
