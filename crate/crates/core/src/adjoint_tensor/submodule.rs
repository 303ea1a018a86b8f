use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{AdjointRep, SiteOp, TensorVector};
use crate::error::{Error, Result};
use crate::numerics::{c64, norm, CMatrix, GramSchmidt, Tolerance, C64};

/// The irreducible pieces of `V ⊗ V`, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmoduleKind {
    /// `(20…02)s`, highest weight vector `e₁ₙ ⊗ e₁ₙ`
    Top,
    /// `(20…010)a`
    AntiLeft,
    /// `(010…02)a`
    AntiRight,
    /// `(010…010)s`, absent for `n = 3`
    Mixed,
    /// `(10…01)s`
    AdjointSym,
    /// `(10…01)a`
    AdjointAnti,
    /// `(0…0)s`
    Singlet,
}

/// Behaviour under the swap `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }
}

impl SubmoduleKind {
    pub const ALL: [SubmoduleKind; 7] = [
        SubmoduleKind::Top,
        SubmoduleKind::AntiLeft,
        SubmoduleKind::AntiRight,
        SubmoduleKind::Mixed,
        SubmoduleKind::AdjointSym,
        SubmoduleKind::AdjointAnti,
        SubmoduleKind::Singlet,
    ];

    /// The kinds present for a given `n`.
    pub fn for_rank(n: usize) -> Vec<SubmoduleKind> {
        Self::ALL
            .into_iter()
            .filter(|k| n > 3 || *k != SubmoduleKind::Mixed)
            .collect()
    }

    pub fn parity(self) -> Parity {
        match self {
            SubmoduleKind::AntiLeft | SubmoduleKind::AntiRight | SubmoduleKind::AdjointAnti => Parity::Antisymmetric,
            _ => Parity::Symmetric,
        }
    }

    /// Eigenvalue of `Ω_op` on the module.
    pub fn omega_eigenvalue(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            SubmoduleKind::Top => 2.0,
            SubmoduleKind::AntiLeft | SubmoduleKind::AntiRight => 0.0,
            SubmoduleKind::Mixed => -2.0,
            SubmoduleKind::AdjointSym | SubmoduleKind::AdjointAnti => -n,
            SubmoduleKind::Singlet => -2.0 * n,
        }
    }

    /// Dynkin labels of the highest weight (`n − 1` entries).
    pub fn dynkin(self, n: usize) -> Vec<u32> {
        let mut a = vec![0u32; n - 1];
        let last = n - 2;
        match self {
            SubmoduleKind::Top => {
                a[0] += 2;
                a[last] += 2;
            }
            SubmoduleKind::AntiLeft => {
                a[0] += 2;
                a[last - 1] += 1;
            }
            SubmoduleKind::AntiRight => {
                a[1] += 1;
                a[last] += 2;
            }
            SubmoduleKind::Mixed => {
                a[1] += 1;
                a[last - 1] += 1;
            }
            SubmoduleKind::AdjointSym | SubmoduleKind::AdjointAnti => {
                a[0] += 1;
                a[last] += 1;
            }
            SubmoduleKind::Singlet => {}
        }
        a
    }

    /// Dimension of the irrep, by the Weyl dimension formula.
    pub fn dimension(self, n: usize) -> usize {
        let a = self.dynkin(n);
        // Π_{i<j} (j − i + Σ_{i≤k<j} a_k) / (j − i)
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..n {
            for j in i + 1..n {
                let s: u32 = a[i..j].iter().sum();
                num *= (j - i) as u128 + s as u128;
                den *= (j - i) as u128;
            }
        }
        (num / den) as usize
    }

    /// Label such as `(2002)s`; for `n = 3` the dimension names
    /// `27`, `10`, `10bar`, `8s`, `8a`, `1`.
    pub fn label(self, n: usize) -> String {
        if n == 3 {
            return match self {
                SubmoduleKind::Top => "27",
                SubmoduleKind::AntiLeft => "10",
                SubmoduleKind::AntiRight => "10bar",
                SubmoduleKind::Mixed => "-",
                SubmoduleKind::AdjointSym => "8s",
                SubmoduleKind::AdjointAnti => "8a",
                SubmoduleKind::Singlet => "1",
            }
            .to_string();
        }
        let digits: String = self.dynkin(n).iter().map(|d| d.to_string()).collect();
        let p = match self.parity() {
            Parity::Symmetric => 's',
            Parity::Antisymmetric => 'a',
        };
        format!("({digits}){p}")
    }

    /// Parses either a label for rank `n` or a kind name such as
    /// `adjoint_sym`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        for k in Self::for_rank(n) {
            if k.label(n) == t {
                return Ok(k);
            }
        }
        t.parse()
    }
}

impl FromStr for SubmoduleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "top" => SubmoduleKind::Top,
            "anti_left" => SubmoduleKind::AntiLeft,
            "anti_right" => SubmoduleKind::AntiRight,
            "mixed" => SubmoduleKind::Mixed,
            "adjoint_sym" | "v_s" => SubmoduleKind::AdjointSym,
            "adjoint_anti" | "v_a" => SubmoduleKind::AdjointAnti,
            "singlet" => SubmoduleKind::Singlet,
            other => return Err(Error::UnknownLabel(other.to_string())),
        })
    }
}

impl fmt::Display for SubmoduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubmoduleKind::Top => "top",
            SubmoduleKind::AntiLeft => "anti_left",
            SubmoduleKind::AntiRight => "anti_right",
            SubmoduleKind::Mixed => "mixed",
            SubmoduleKind::AdjointSym => "adjoint_sym",
            SubmoduleKind::AdjointAnti => "adjoint_anti",
            SubmoduleKind::Singlet => "singlet",
        };
        f.write_str(s)
    }
}

/// One irreducible submodule with an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub kind: SubmoduleKind,
    pub label: String,
    pub hw_vector: TensorVector,
    pub omega_eigenvalue: f64,
    pub exchange_parity: f64,
    /// Largest `‖Ω_op b − ω b‖` over basis vectors.
    pub omega_residual: f64,
    /// Largest `‖σ b − p b‖` over basis vectors.
    pub parity_residual: f64,
    basis: Vec<Vec<C64>>,
    site_dim: usize,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Basis vectors as the columns of a `dim(V⊗V) × dim` matrix.
    pub fn basis_matrix(&self) -> CMatrix {
        CMatrix::from_columns(&self.basis)
    }

    /// `P = Σ |bₖ⟩⟨bₖ|`, dense.
    pub fn projector(&self) -> CMatrix {
        let b = self.basis_matrix();
        b.matmul(&b.adjoint())
    }

    /// `P·v` without forming `P`.
    pub fn project(&self, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zeros(self.site_dim);
        for b in &self.basis {
            let c = crate::numerics::inner(b, v.as_slice());
            let bt = TensorVector::from_vec(self.site_dim, b.clone());
            out.axpy(c, &bt);
        }
        out
    }
}

/// The lowering operators `ad(e_ji)`, `i < j`, in lexicographic `(i, j)`
/// order, with the weight offset each one adds.
pub(crate) fn lowering_ops(rep: &AdjointRep) -> Result<Vec<(SiteOp, Vec<i32>)>> {
    let n = rep.n();
    let mut ops = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut shift = vec![0i32; n];
            shift[j - 1] += 1;
            shift[i - 1] -= 1;
            ops.push((SiteOp::from_dense(&rep.ad_unit(j, i)?), shift));
        }
    }
    Ok(ops)
}

/// Spans the orbits of `seeds` under lowering operators in lockstep: every
/// accept/reject decision is taken on the first seed and the identical word
/// is applied to the others, so the resulting bases correspond one-to-one.
pub(crate) fn lockstep_orbit(
    rep: &AdjointRep,
    seeds: &[&TensorVector],
    label: &str,
    tol: &Tolerance,
) -> Result<Vec<Vec<Vec<C64>>>> {
    let k = seeds.len();
    let d = rep.dim();
    let limit = rep.pair_dim();
    let ops = lowering_ops(rep)?;

    let mut bases: Vec<Vec<Vec<C64>>> = vec![Vec::new(); k];
    let mut weights: Vec<Vec<i32>> = Vec::new();
    let mut buckets: HashMap<Vec<i32>, Vec<GramSchmidt>> = HashMap::new();

    let w0 = vec![0i32; rep.n()];
    let slot = buckets.entry(w0.clone()).or_insert_with(|| vec![GramSchmidt::new(); k]);
    for (t, seed) in seeds.iter().enumerate() {
        let nrm = seed.norm();
        if nrm == 0.0 || !nrm.is_finite() {
            return Err(Error::Submodule {
                label: label.into(),
                detail: "highest-weight vector is zero".into(),
            });
        }
        let v: Vec<C64> = seed.as_slice().iter().map(|z| z / nrm).collect();
        slot[t].push_unchecked(v.clone());
        bases[t].push(v);
    }
    weights.push(w0);

    let mut frontier = vec![0usize];
    let mut rounds = 0usize;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > limit || bases[0].len() > limit {
            return Err(Error::OrbitNotClosed {
                label: label.into(),
                limit,
            });
        }
        let mut next = Vec::new();
        for &idx in &frontier {
            for (op, shift) in &ops {
                let w: Vec<i32> = weights[idx].iter().zip(shift).map(|(a, b)| a + b).collect();
                let mut cands: Vec<Vec<C64>> = (0..k)
                    .map(|t| {
                        let v = TensorVector::from_vec(d, bases[t][idx].clone());
                        rep.apply_delta(op, &v).into_vec()
                    })
                    .collect();
                let n0 = norm(&cands[0]);
                if n0 < tol.rank_tol {
                    continue;
                }
                let slot = buckets.entry(w.clone()).or_insert_with(|| vec![GramSchmidt::new(); k]);
                for (t, c) in cands.iter_mut().enumerate() {
                    slot[t].project_out(c);
                }
                let r0 = norm(&cands[0]);
                if r0 < tol.rank_tol * n0 {
                    continue;
                }
                for (t, c) in cands.iter_mut().enumerate() {
                    let r = norm(c);
                    if (r - r0).abs() > 1e-6 * n0 {
                        return Err(Error::Submodule {
                            label: label.into(),
                            detail: format!("seed {t} does not follow the lockstep orbit ({r:e} vs {r0:e})"),
                        });
                    }
                    let inv = 1.0 / r;
                    c.iter_mut().for_each(|z| *z *= inv);
                    slot[t].push_unchecked(c.clone());
                    bases[t].push(std::mem::take(c));
                }
                weights.push(w);
                next.push(bases[0].len() - 1);
            }
        }
        frontier = next;
    }
    Ok(bases)
}

/// Builds the submodule generated by `hwv`, measuring its `Ω_op` eigenvalue
/// and swap parity. Fails if the generated space is not an eigenspace of
/// both or if the measured parity disagrees with `parity`.
pub fn generate_submodule(
    rep: &AdjointRep,
    kind: SubmoduleKind,
    hwv: &TensorVector,
    parity: Parity,
    tol: &Tolerance,
) -> Result<Submodule> {
    let label = kind.label(rep.n());
    let basis = lockstep_orbit(rep, &[hwv], &label, tol)?.pop().expect("one seed");
    finish(rep, kind, hwv, parity, basis, tol)
}

pub(crate) fn finish(
    rep: &AdjointRep,
    kind: SubmoduleKind,
    hwv: &TensorVector,
    parity: Parity,
    basis: Vec<Vec<C64>>,
    tol: &Tolerance,
) -> Result<Submodule> {
    let d = rep.dim();
    let label = kind.label(rep.n());
    let om_h = rep.apply_casimir(hwv);
    let hh = hwv.inner(hwv).re;
    let omega = hwv.inner(&om_h).re / hh;
    let measured_parity = hwv.inner(&hwv.swapped()).re / hh;
    let bound = tol.abs_tol * (rep.pair_dim() as f64).sqrt().max(1.0);
    if (measured_parity - parity.sign()).abs() > bound {
        return Err(Error::Submodule {
            label,
            detail: format!("measured swap parity {measured_parity} differs from {}", parity.sign()),
        });
    }
    let mut omega_residual = 0.0f64;
    let mut parity_residual = 0.0f64;
    for b in &basis {
        let v = TensorVector::from_vec(d, b.clone());
        omega_residual = omega_residual.max(rep.apply_casimir(&v).distance(&v.scaled(c64(omega, 0.0))));
        parity_residual = parity_residual.max(v.swapped().distance(&v.scaled(c64(parity.sign(), 0.0))));
    }
    if omega_residual > bound || parity_residual > bound {
        return Err(Error::Submodule {
            label,
            detail: format!(
                "basis is not an eigenspace (Ω residual {omega_residual:e}, σ residual {parity_residual:e})"
            ),
        });
    }
    Ok(Submodule {
        kind,
        label,
        hw_vector: hwv.clone(),
        omega_eigenvalue: omega,
        exchange_parity: measured_parity,
        omega_residual,
        parity_residual,
        basis,
        site_dim: d,
    })
}
