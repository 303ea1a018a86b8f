use super::{AdjointRep, SiteOp, SubmoduleKind, TensorVector};
use crate::error::{Error, Result};
use crate::liealg::SunBasis;
use crate::numerics::{c64, kron, CMatrix, Tolerance, C64};

/// The highest-weight vectors of the submodules of `V ⊗ V`, in table order,
/// plus the structure-constant forms of the two adjoint vectors.
#[derive(Clone, Debug)]
pub struct HighestWeightVectors {
    pub n: usize,
    pub vectors: Vec<(SubmoduleKind, TensorVector)>,
    /// `n Σ wᵃ dᵃᵇᶜ Iᵇ ⊗ Iᶜ`, `w` the coordinates of `e₁ₙ`
    pub v_s_alt: TensorVector,
    /// `√(n²−4) Σ wᵃ fᵃᵇᶜ Iᵇ ⊗ Iᶜ`; this is `−v_a`
    pub v_a_alt: TensorVector,
}

impl HighestWeightVectors {
    pub fn get(&self, kind: SubmoduleKind) -> Option<&TensorVector> {
        self.vectors.iter().find(|(k, _)| *k == kind).map(|(_, v)| v)
    }

    /// `v_s`; always present.
    pub fn v_s(&self) -> &TensorVector {
        self.get(SubmoduleKind::AdjointSym).expect("v_s is always built")
    }

    /// `v_a`; always present.
    pub fn v_a(&self) -> &TensorVector {
        self.get(SubmoduleKind::AdjointAnti).expect("v_a is always built")
    }

    pub fn top(&self) -> &TensorVector {
        self.get(SubmoduleKind::Top).expect("top vector is always built")
    }
}

/// Builds the highest-weight vectors. The two adjoint vectors are formed as
/// `n² × n²` products in the fundamental tensor square and expanded back
/// into `Iᵃ ⊗ Iᵇ` coordinates; a nonzero expansion residual is an error.
pub fn highest_weight_vectors(basis: &SunBasis, tol: &Tolerance) -> Result<HighestWeightVectors> {
    let n = basis.n();
    let dim = basis.dim();
    let unit = |i: usize, j: usize| basis.unit_coords(i, j);
    let prod = |x: &[C64], y: &[C64]| TensorVector::product(x, y);
    let wedge = |x: &[C64], y: &[C64]| &prod(x, y) - &prod(y, x);

    let e1n = unit(1, n)?;
    let e1m = unit(1, n - 1)?;
    let e2n = unit(2, n)?;

    let mut vectors = vec![
        (SubmoduleKind::Top, prod(&e1n, &e1n)),
        (SubmoduleKind::AntiLeft, wedge(&e1m, &e1n)),
        (SubmoduleKind::AntiRight, wedge(&e2n, &e1n)),
    ];
    if n > 3 {
        let e2m = unit(2, n - 1)?;
        let v = &prod(&e2m, &e1n) - &prod(&e1m, &e2n);
        vectors.push((SubmoduleKind::Mixed, &v + &v.swapped()));
    }

    let omega = fundamental_casimir(basis);
    let one = CMatrix::identity(n);
    let e1n_matrix = basis.matrix_unit(1, n)?.matrix;
    let right = kron(&one, &e1n_matrix);
    let om_r = omega.matmul(&right);
    let r_om = right.matmul(&omega);

    let mut sym = &om_r + &r_om;
    sym.axpy(c64(-2.0 / n as f64, 0.0), &kron(&e1n_matrix, &one));
    let v_s = expand_fundamental(basis, &sym, tol)?.scaled(c64(n as f64, 0.0));
    let root = ((n * n) as f64 - 4.0).sqrt();
    let v_a = expand_fundamental(basis, &(&om_r - &r_om), tol)?.scaled(c64(root, 0.0));
    vectors.push((SubmoduleKind::AdjointSym, v_s));
    vectors.push((SubmoduleKind::AdjointAnti, v_a));
    vectors.push((SubmoduleKind::Singlet, TensorVector::singlet(dim)));

    let (f, d) = basis.structure_constants();
    let contract = |t: &crate::liealg::Rank3, scale: f64| {
        let mut coords = vec![c64(0.0, 0.0); dim * dim];
        for (a, &w) in e1n.iter().enumerate() {
            if w == c64(0.0, 0.0) {
                continue;
            }
            for b in 0..dim {
                for c in 0..dim {
                    coords[b * dim + c] += w * t[(a, b, c)] * scale;
                }
            }
        }
        TensorVector::from_vec(dim, coords)
    };
    let v_s_alt = contract(d, n as f64);
    let v_a_alt = contract(f, root);

    Ok(HighestWeightVectors {
        n,
        vectors,
        v_s_alt,
        v_a_alt,
    })
}

/// `Σₐ Iᵃ ⊗ Iᵃ` as an `n² × n²` matrix.
fn fundamental_casimir(basis: &SunBasis) -> CMatrix {
    let pairs: Vec<(&CMatrix, &CMatrix)> = basis.generators().iter().map(|g| (g, g)).collect();
    crate::numerics::kron_sum(&pairs)
}

/// Coordinates `vᵃᵇ = tr((Iᵃ ⊗ Iᵇ) X)` of an `n² × n²` matrix, with a
/// reconstruction check.
fn expand_fundamental(basis: &SunBasis, x: &CMatrix, tol: &Tolerance) -> Result<TensorVector> {
    let n = basis.n();
    let dim = basis.dim();
    let nonzeros: Vec<Vec<(usize, usize, C64)>> = basis
        .generators()
        .iter()
        .map(|g| {
            let mut nz = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if g[(i, j)] != c64(0.0, 0.0) {
                        nz.push((i, j, g[(i, j)]));
                    }
                }
            }
            nz
        })
        .collect();
    // (A⊗B)_{(i k),(j l)} = A_ij B_kl
    let mut coords = vec![c64(0.0, 0.0); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = c64(0.0, 0.0);
            for &(i, j, av) in &nonzeros[a] {
                for &(k, l, bv) in &nonzeros[b] {
                    acc += av * bv * x[(j * n + l, i * n + k)];
                }
            }
            coords[a * dim + b] = acc;
        }
    }
    let mut rebuilt = CMatrix::zeros(n * n, n * n);
    for a in 0..dim {
        for b in 0..dim {
            let v = coords[a * dim + b];
            if v == c64(0.0, 0.0) {
                continue;
            }
            for &(i, j, av) in &nonzeros[a] {
                for &(k, l, bv) in &nonzeros[b] {
                    rebuilt[(i * n + k, j * n + l)] += v * av * bv;
                }
            }
        }
    }
    let residual = rebuilt.max_abs_diff(x);
    if residual > tol.abs_tol * x.max_abs().max(1.0) {
        return Err(Error::ExpansionResidual {
            what: "element of su(n)⊗su(n)".into(),
            residual,
        });
    }
    Ok(TensorVector::from_vec(dim, coords))
}

/// Largest `‖Δ(e_ij)·v‖ / ‖v‖` over the raising operators `i < j`.
pub fn raising_residual(rep: &AdjointRep, v: &TensorVector) -> Result<f64> {
    let n = rep.n();
    let scale = v.norm().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in i + 1..=n {
            let op = SiteOp::from_dense(&rep.ad_unit(i, j)?);
            worst = worst.max(rep.apply_delta(&op, v).norm() / scale);
        }
    }
    Ok(worst)
}
