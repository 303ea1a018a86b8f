use super::LocalHamiltonian;
use crate::adjoint_tensor::AdjointRep;
use crate::numerics::{c64, kron_sum, CMatrix};

/// The Hermitian two-site operators `Q`, `C_A` and `K`.
///
/// The spin matrices use the index placement `(Sᵃ)_bc = fᵃᵇᶜ`, the negative
/// of the adjoint matrices of [`AdjointRep`]. `Q` and `K` do not depend on
/// the sign, `C_A` does.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub q: CMatrix,
    pub c_a: CMatrix,
    pub k: CMatrix,
}

impl SpinOperators {
    /// `[K, C_A]`
    pub fn k_ca_commutator(&self) -> CMatrix {
        self.k.commutator(&self.c_a)
    }
}

pub fn spin_operators(rep: &AdjointRep) -> SpinOperators {
    let dim = rep.dim();
    let s: Vec<CMatrix> = rep.s().iter().map(|m| m.scale(c64(-1.0, 0.0))).collect();
    let d = rep.basis().d();

    // Yᵃ = Σ_bc dᵃᵇᶜ SᵇSᶜ, via Tᵃᵇ = Σ_c dᵃᵇᶜ Sᶜ
    let mut y = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut ya = CMatrix::zeros(dim, dim);
        for b in 0..dim {
            let mut t = CMatrix::zeros(dim, dim);
            let mut any = false;
            for (c, sc) in s.iter().enumerate() {
                let w = d[(a, b, c)];
                if w.norm() > 1e-15 {
                    t.axpy(w, sc);
                    any = true;
                }
            }
            if any {
                ya += &s[b].matmul(&t);
            }
        }
        y.push(ya);
    }

    let q = kron_sum(&s.iter().map(|m| (m, m)).collect::<Vec<_>>());
    let mut c_a = kron_sum(&y.iter().zip(&s).collect::<Vec<_>>());
    c_a -= &kron_sum(&s.iter().zip(&y).collect::<Vec<_>>());

    // K = Σ_{a,f} SᵃYᶠ ⊗ SᶠYᵃ
    let sy: Vec<Vec<CMatrix>> = s.iter().map(|sa| y.iter().map(|yf| sa.matmul(yf)).collect()).collect();
    let pairs: Vec<(&CMatrix, &CMatrix)> = (0..dim)
        .flat_map(|a| (0..dim).map(move |f| (a, f)))
        .map(|(a, f)| (&sy[a][f], &sy[f][a]))
        .collect();
    let k = kron_sum(&pairs);
    SpinOperators { q, c_a, k }
}

/// Coefficients of `1·Q + q₂Q² + q₃Q³ + q₄Q⁴ + κK + ρ[K, C_A]`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SpinFormCoefficients {
    pub q: [f64; 4],
    pub k: f64,
    pub k_ca: f64,
}

pub fn spinform_coefficients(n: usize) -> SpinFormCoefficients {
    if n == 3 {
        return SpinFormCoefficients {
            q: [1.0, -7.0 / 9.0, -2.0 / 9.0, 0.0],
            k: -11.0 / 81.0,
            k_ca: 1.0 / 324.0,
        };
    }
    let nf = n as f64;
    let m = 6.0 + nf * nf;
    SpinFormCoefficients {
        q: [1.0, (2.0 - nf * nf) / (nf * m), -3.0 / m, -1.0 / (nf * m)],
        k: -(2.0 + nf * nf) / (nf.powi(3) * m),
        k_ca: 1.0 / (4.0 * nf.powi(3) * m),
    }
}

/// Factor relating the spin form to `h`: `spinform = scale·h + c·1`.
pub fn spinform_scale(n: usize) -> f64 {
    if n == 3 {
        8.0 / 3.0
    } else {
        let nf = n as f64;
        8.0 / (6.0 + nf * nf)
    }
}

/// The spin-operator expression of the Hamiltonian.
pub fn spinform_h(ops: &SpinOperators, n: usize) -> CMatrix {
    let c = spinform_coefficients(n);
    let mut out = ops.q.scale(c64(c.q[0], 0.0));
    let mut power = ops.q.clone();
    for &w in &c.q[1..] {
        power = power.matmul(&ops.q);
        if w != 0.0 {
            out.axpy(c64(w, 0.0), &power);
        }
    }
    out.axpy(c64(c.k, 0.0), &ops.k);
    out.axpy(c64(c.k_ca, 0.0), &ops.k_ca_commutator());
    out
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SpinFormFit {
    pub scale: f64,
    /// `c = tr(spinform − scale·h)/dim`
    pub constant: f64,
    /// Imaginary part of the trace-matched constant; zero up to rounding.
    pub constant_imag: f64,
    /// `max |spinform − scale·h − c·1|`
    pub residual: f64,
    /// `max |X − X†|` for `X = spinform − ρ[K, C_A]`.
    pub hermitian_part_defect: f64,
    /// `‖[K, C_A]‖_F`
    pub commutator_norm: f64,
}

/// Fits `spinform = scale·h + c·1` with the fixed scale and the
/// trace-matched constant.
pub fn fit_spinform(local: &LocalHamiltonian, ops: &SpinOperators) -> SpinFormFit {
    let n = local.n;
    let form = spinform_h(ops, n);
    let scale = spinform_scale(n);
    let dim = form.rows();
    let mut diff = &form - &local.h.scale(c64(scale, 0.0));
    let c = diff.trace() / dim as f64;
    diff -= &CMatrix::identity(dim).scale(c);

    let comm = ops.k_ca_commutator();
    let mut herm = form.clone();
    herm.axpy(c64(-spinform_coefficients(n).k_ca, 0.0), &comm);
    SpinFormFit {
        scale,
        constant: c.re,
        constant_imag: c.im,
        residual: diff.max_abs(),
        hermitian_part_defect: herm.max_abs_diff(&herm.adjoint()),
        commutator_norm: comm.frobenius_norm(),
    }
}
