use std::ops::{Add, Sub};

use crate::numerics::{axpy, c64, distance, inner, norm, CMatrix, C64};

/// Coordinates `vᵃᵇ` of `Σ vᵃᵇ Iᵃ ⊗ Iᵇ ∈ V ⊗ V`, stored row-major
/// (`a` slow, `b` fast).
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    dim: usize,
    coords: Vec<C64>,
}

impl TensorVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            coords: vec![c64(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_vec(dim: usize, coords: Vec<C64>) -> Self {
        assert_eq!(
            coords.len(),
            dim * dim,
            "TensorVector: expected {} coordinates",
            dim * dim
        );
        Self { dim, coords }
    }

    /// `x ⊗ y` from the coordinates of `x` and `y`.
    pub fn product(x: &[C64], y: &[C64]) -> Self {
        assert_eq!(x.len(), y.len());
        let dim = x.len();
        let mut coords = Vec::with_capacity(dim * dim);
        for &a in x {
            for &b in y {
                coords.push(a * b);
            }
        }
        Self { dim, coords }
    }

    /// The element `Ω = Σₐ Iᵃ ⊗ Iᵃ`, coordinates `δᵃᵇ`.
    pub fn singlet(dim: usize) -> Self {
        let mut v = Self::zeros(dim);
        for a in 0..dim {
            v.coords[a * dim + a] = c64(1.0, 0.0);
        }
        v
    }

    /// Single-site dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.coords
    }

    /// The `dim × dim` coefficient matrix.
    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_vec(self.dim, self.dim, self.coords.clone())
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &TensorVector) -> C64 {
        inner(&self.coords, &other.coords)
    }

    pub fn distance(&self, other: &TensorVector) -> f64 {
        distance(&self.coords, &other.coords)
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self {
            dim: self.dim,
            coords: self.coords.iter().map(|&z| z * alpha).collect(),
        }
    }

    pub fn axpy(&mut self, alpha: C64, x: &TensorVector) {
        axpy(&mut self.coords, alpha, &x.coords);
    }

    /// `σ·v`
    pub fn swapped(&self) -> Self {
        let d = self.dim;
        let mut coords = vec![c64(0.0, 0.0); d * d];
        for a in 0..d {
            for b in 0..d {
                coords[b * d + a] = self.coords[a * d + b];
            }
        }
        Self { dim: d, coords }
    }

    /// `(A ⊗ B)·v` for dense site operators.
    pub fn apply_product(&self, a: &CMatrix, b: &CMatrix) -> Self {
        let x = self.to_matrix();
        let y = a.matmul(&x).matmul(&b.transpose());
        Self::from_vec(self.dim, y.into_vec())
    }

    /// `(A ⊗ 1 + 1 ⊗ B)·v` for dense site operators.
    pub fn apply_local(&self, a: &CMatrix, b: &CMatrix) -> Self {
        let x = self.to_matrix();
        let mut y = a.matmul(&x);
        y += &x.matmul(&b.transpose());
        Self::from_vec(self.dim, y.into_vec())
    }
}

impl Add for &TensorVector {
    type Output = TensorVector;

    fn add(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.axpy(c64(1.0, 0.0), rhs);
        out
    }
}

impl Sub for &TensorVector {
    type Output = TensorVector;

    fn sub(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.axpy(c64(-1.0, 0.0), rhs);
        out
    }
}

/// Sparse single-site operator, kept as `(row, col, value)` triplets.
#[derive(Clone, Debug)]
pub struct SiteOp {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SiteOp {
    pub fn from_dense(m: &CMatrix) -> Self {
        assert!(m.is_square());
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for (j, &z) in m.row(i).iter().enumerate() {
                if z.norm() > 1e-15 {
                    entries.push((i, j, z));
                }
            }
        }
        Self { dim: m.rows(), entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `(A ⊗ 1)·v`
    pub fn apply_left(&self, v: &TensorVector) -> TensorVector {
        let d = self.dim;
        let mut out = TensorVector::zeros(d);
        let src = v.as_slice();
        for &(i, j, a) in &self.entries {
            let dst = &mut out.coords[i * d..(i + 1) * d];
            for (o, &x) in dst.iter_mut().zip(&src[j * d..(j + 1) * d]) {
                *o += a * x;
            }
        }
        out
    }

    /// `out += alpha·(1 ⊗ A)·v`
    pub fn accumulate_right(&self, v: &TensorVector, alpha: C64, out: &mut TensorVector) {
        let d = self.dim;
        let src = v.as_slice();
        for &(i, j, a) in &self.entries {
            let c = alpha * a;
            for r in 0..d {
                out.coords[r * d + i] += c * src[r * d + j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_coordinates_and_swap() {
        let x = [c64(1.0, 0.0), c64(0.0, 2.0)];
        let y = [c64(3.0, 0.0), c64(-1.0, 0.0)];
        let v = TensorVector::product(&x, &y);
        assert_eq!(
            v.as_slice(),
            &[c64(3.0, 0.0), c64(-1.0, 0.0), c64(0.0, 6.0), c64(0.0, -2.0)]
        );
        assert_eq!(v.swapped(), TensorVector::product(&y, &x));
    }

    #[test]
    fn apply_product_matches_kron() {
        let a = CMatrix::from_fn(3, 3, |i, j| c64(i as f64 - j as f64, 0.5 * j as f64));
        let b = CMatrix::from_fn(3, 3, |i, j| c64((i * j) as f64, 1.0));
        let v = TensorVector::from_vec(3, (0..9).map(|k| c64(k as f64, -(k as f64))).collect());
        let dense = crate::numerics::kron(&a, &b).mul_vec(v.as_slice());
        assert!(distance(&dense, v.apply_product(&a, &b).as_slice()) < 1e-12);
        let id = CMatrix::identity(3);
        let local = &crate::numerics::kron(&a, &id) + &crate::numerics::kron(&id, &b);
        assert!(distance(&local.mul_vec(v.as_slice()), v.apply_local(&a, &b).as_slice()) < 1e-12);
    }
}
