//! The orthonormal Hermitian basis of su(n) and its structure constants.
//!
//! Generators are the generalized Gell-Mann matrices divided by √2, so that
//! `tr(IᵃIᵇ) = δᵃᵇ`. They are ordered as
//!
//! 1. symmetric off-diagonal pairs `(Eᵢⱼ + Eⱼᵢ)/√2`, `i < j` lexicographic,
//! 2. antisymmetric pairs `(−iEᵢⱼ + iEⱼᵢ)/√2`, same order,
//! 3. diagonal generators `(E₁₁ + … + Eₗₗ − l·Eₗ₊₁,ₗ₊₁)/√(l(l+1))`, `l = 1..n−1`.
//!
//! With this normalization `[Iᵃ, Iᵇ] = Σ fᵃᵇᶜ Iᶜ` has purely imaginary,
//! totally antisymmetric `f`, and `{Iᵃ, Iᵇ} = Σ dᵃᵇᶜ Iᶜ + (2/n)δᵃᵇ·1` has
//! real, totally symmetric `d`.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::{c64, CMatrix, Tolerance, C64};

/// Dense `dim × dim × dim` complex array.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank3 {
    dim: usize,
    data: Vec<C64>,
}

impl Rank3 {
    fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn offset(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim + b) * self.dim + c
    }

    /// The `dim × dim` slice with the first index fixed.
    pub fn slab(&self, a: usize) -> CMatrix {
        let d2 = self.dim * self.dim;
        CMatrix::from_vec(self.dim, self.dim, self.data[a * d2..(a + 1) * d2].to_vec())
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<[f64; 2]>>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| {
                        (0..self.dim)
                            .map(|c| [self[(a, b, c)].re, self[(a, b, c)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize, usize)> for Rank3 {
    type Output = C64;

    #[inline]
    fn index(&self, (a, b, c): (usize, usize, usize)) -> &C64 {
        &self.data[self.offset(a, b, c)]
    }
}

/// Orthonormal Hermitian basis `{Iᵃ}` of su(n) with its `f` and `d` symbols.
#[derive(Clone, Debug)]
pub struct SunBasis {
    n: usize,
    generators: Vec<CMatrix>,
    f: Rank3,
    d: Rank3,
}

/// The matrix unit `e_ij` (1-based indices) and, for `i ≠ j`, its
/// coordinates `wᵃ` with `e_ij = Σ wᵃ Iᵃ`.
#[derive(Clone, Debug)]
pub struct MatrixUnit {
    pub i: usize,
    pub j: usize,
    pub matrix: CMatrix,
    pub coords: Option<Vec<C64>>,
}

impl SunBasis {
    /// Builds the basis for `n ≥ 3`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidRank { n });
        }
        let generators = gell_mann(n);
        let (f, d) = structure_constants(&generators);
        Ok(Self { n, generators, f, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, `n² − 1`.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.generators[a]
    }

    /// `(f, d)` with `fᵃᵇᶜ = tr(Iᶜ[Iᵃ,Iᵇ])` and `dᵃᵇᶜ = tr(Iᶜ{Iᵃ,Iᵇ})`.
    pub fn structure_constants(&self) -> (&Rank3, &Rank3) {
        (&self.f, &self.d)
    }

    pub fn f(&self) -> &Rank3 {
        &self.f
    }

    pub fn d(&self) -> &Rank3 {
        &self.d
    }

    /// Human-readable name of generator `a`, e.g. `S(1,2)`, `A(1,3)`, `H2`.
    pub fn generator_label(&self, a: usize) -> String {
        let pairs = self.n * (self.n - 1) / 2;
        let (i, j) = pair_at(self.n, a % pairs.max(1));
        if a < pairs {
            format!("S({},{})", i + 1, j + 1)
        } else if a < 2 * pairs {
            format!("A({},{})", i + 1, j + 1)
        } else {
            format!("H{}", a - 2 * pairs + 1)
        }
    }

    /// `Σ wᵃ Iᵃ`
    pub fn from_coords(&self, w: &[C64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.n, self.n);
        for (g, &x) in self.generators.iter().zip(w) {
            if x != c64(0.0, 0.0) {
                out.axpy(x, g);
            }
        }
        out
    }

    /// Coordinates `wᵃ = tr((Iᵃ)† x)` of a traceless `n × n` matrix.
    pub fn coords(&self, x: &CMatrix) -> Result<Vec<C64>> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::Shape(format!("expected a {0}x{0} matrix", self.n)));
        }
        let tr = x.trace();
        let tol = Tolerance::default().abs_tol * x.frobenius_norm().max(1.0);
        if tr.norm() > tol {
            return Err(Error::NotTraceless { trace: tr.norm() });
        }
        let w: Vec<C64> = self.generators.iter().map(|g| trace_product(g, x)).collect();
        let residual = self.from_coords(&w).max_abs_diff(x);
        if residual > tol {
            return Err(Error::ExpansionResidual {
                what: "su(n) coordinates".into(),
                residual,
            });
        }
        Ok(w)
    }

    /// The matrix unit `e_ij`, 1-based. Coordinates are attached for `i ≠ j`.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Result<MatrixUnit> {
        let n = self.n;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        let mut matrix = CMatrix::zeros(n, n);
        matrix[(i - 1, j - 1)] = c64(1.0, 0.0);
        let coords = if i != j { Some(self.coords(&matrix)?) } else { None };
        Ok(MatrixUnit { i, j, matrix, coords })
    }

    /// Coordinates of `e_ij`; rejects `i = j`.
    pub fn unit_coords(&self, i: usize, j: usize) -> Result<Vec<C64>> {
        if i == j {
            return Err(Error::DiagonalMatrixUnit { i });
        }
        Ok(self
            .matrix_unit(i, j)?
            .coords
            .expect("off-diagonal unit has coordinates"))
    }

    /// The `dim × dim` matrix `tr(x{Iᵃ, Iᵇ})` for an `n × n` matrix `x`.
    pub fn anticommutator_traces(&self, x: &CMatrix) -> CMatrix {
        // tr(x{Iᵃ,Iᵇ}) = tr({x,Iᵃ} Iᵇ)
        let dim = self.dim();
        let sym: Vec<CMatrix> = self.generators.iter().map(|g| x.anticommutator(g)).collect();
        CMatrix::from_fn(dim, dim, |a, b| trace_product(&sym[a], &self.generators[b]))
    }

    /// Max-norm residuals of `[Iᵃ,Iᵇ] = Σ fᵃᵇᶜIᶜ` and
    /// `{Iᵃ,Iᵇ} = Σ dᵃᵇᶜIᶜ + (2/n)δᵃᵇ·1` over all pairs.
    pub fn reconstruction_residuals(&self) -> (f64, f64) {
        let dim = self.dim();
        let id = CMatrix::identity(self.n);
        let (mut rf, mut rd) = (0.0f64, 0.0f64);
        for a in 0..dim {
            for b in 0..dim {
                let ga = &self.generators[a];
                let gb = &self.generators[b];
                let fw: Vec<C64> = (0..dim).map(|c| self.f[(a, b, c)]).collect();
                let dw: Vec<C64> = (0..dim).map(|c| self.d[(a, b, c)]).collect();
                rf = rf.max(ga.commutator(gb).max_abs_diff(&self.from_coords(&fw)));
                let mut anti = self.from_coords(&dw);
                if a == b {
                    anti.axpy(c64(2.0 / self.n as f64, 0.0), &id);
                }
                rd = rd.max(ga.anticommutator(gb).max_abs_diff(&anti));
            }
        }
        (rf, rd)
    }

    /// Max deviation of `tr(IᵃIᵇ)` from `δᵃᵇ`.
    pub fn orthonormality_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                let expect = if a == b { 1.0 } else { 0.0 };
                let g = trace_product(&self.generators[a].adjoint(), &self.generators[b]);
                worst = worst.max((g - c64(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Max over `a,b,c,d` of `|Σₑ fᵃᵇᵉfᵉᶜᵈ + fᵇᶜᵉfᵉᵃᵈ + fᶜᵃᵉfᵉᵇᵈ|`.
    pub fn jacobi_residual(&self) -> f64 {
        let dim = self.dim();
        let f = &self.f;
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for d in 0..dim {
                        let s: C64 = (0..dim)
                            .map(|e| {
                                f[(a, b, e)] * f[(e, c, d)] + f[(b, c, e)] * f[(e, a, d)] + f[(c, a, e)] * f[(e, b, d)]
                            })
                            .sum();
                        worst = worst.max(s.norm());
                    }
                }
            }
        }
        worst
    }

    /// Residuals of `Σ_ab dᵃᵇᶜdᵃᵇᵈ = ((2n²−8)/n)δᶜᵈ` and
    /// `Σ_ab fᵃᵇᶜfᵃᵇᵈ = −2nδᶜᵈ`, max-norm over `c, d`.
    pub fn sum_rule_residuals(&self) -> (f64, f64) {
        let dim = self.dim();
        let nf = self.n as f64;
        let dd_expect = (2.0 * nf * nf - 8.0) / nf;
        let ff_expect = -2.0 * nf;
        let (mut rd, mut rf) = (0.0f64, 0.0f64);
        for c in 0..dim {
            for d in 0..dim {
                let mut sdd = c64(0.0, 0.0);
                let mut sff = c64(0.0, 0.0);
                for a in 0..dim {
                    for b in 0..dim {
                        sdd += self.d[(a, b, c)] * self.d[(a, b, d)];
                        sff += self.f[(a, b, c)] * self.f[(a, b, d)];
                    }
                }
                let delta = if c == d { 1.0 } else { 0.0 };
                rd = rd.max((sdd - c64(dd_expect * delta, 0.0)).norm());
                rf = rf.max((sff - c64(ff_expect * delta, 0.0)).norm());
            }
        }
        (rd, rf)
    }

    /// Largest deviation from the symmetry and reality properties of `f`, `d`:
    /// total antisymmetry and vanishing real part of `f`, total symmetry and
    /// vanishing imaginary part of `d`.
    pub fn symmetry_residual(&self) -> f64 {
        let dim = self.dim();
        let (f, d) = (&self.f, &self.d);
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let x = f[(a, b, c)];
                    worst = worst
                        .max(x.re.abs())
                        .max((x + f[(b, a, c)]).norm())
                        .max((x - f[(b, c, a)]).norm());
                    let y = d[(a, b, c)];
                    worst = worst
                        .max(y.im.abs())
                        .max((y - d[(b, a, c)]).norm())
                        .max((y - d[(b, c, a)]).norm());
                }
            }
        }
        worst
    }
}

/// `tr(a·b)` without forming the product.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.rows();
    let mut s = c64(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.cols() {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

fn pair_at(n: usize, idx: usize) -> (usize, usize) {
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if k == idx {
                return (i, j);
            }
            k += 1;
        }
    }
    (0, 0)
}

fn gell_mann(n: usize) -> Vec<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(n * n - 1);
    for &(i, j) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(i, j)] = c64(s, 0.0);
        m[(j, i)] = c64(s, 0.0);
        out.push(m);
    }
    for &(i, j) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(i, j)] = c64(0.0, -s);
        m[(j, i)] = c64(0.0, s);
        out.push(m);
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for k in 0..l {
            m[(k, k)] = c64(norm, 0.0);
        }
        m[(l, l)] = c64(-(l as f64) * norm, 0.0);
        out.push(m);
    }
    out
}

fn structure_constants(generators: &[CMatrix]) -> (Rank3, Rank3) {
    let dim = generators.len();
    let mut f = Rank3::zeros(dim);
    let mut d = Rank3::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            let ab = generators[a].matmul(&generators[b]);
            let ba = generators[b].matmul(&generators[a]);
            let comm = &ab - &ba;
            let anti = &ab + &ba;
            for (c, g) in generators.iter().enumerate() {
                let o = f.offset(a, b, c);
                f.data[o] = trace_product(g, &comm);
                d.data[o] = trace_product(g, &anti);
            }
        }
    }
    (f, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_rank() {
        assert!(matches!(SunBasis::new(2), Err(Error::InvalidRank { n: 2 })));
    }

    #[test]
    fn su3_is_gell_mann_over_sqrt2() {
        let b = SunBasis::new(3).unwrap();
        assert_eq!(b.dim(), 8);
        assert!(b.orthonormality_residual() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g0 = b.generator(0);
        assert!((g0[(0, 1)] - c64(s, 0.0)).norm() < 1e-15);
        assert!((g0[(1, 0)] - c64(s, 0.0)).norm() < 1e-15);
        assert!(g0.max_abs() <= s + 1e-15);
        assert_eq!(b.generator_label(0), "S(1,2)");
        assert_eq!(b.generator_label(4), "A(1,3)");
        assert_eq!(b.generator_label(7), "H2");
    }

    #[test]
    fn su3_commutator_of_first_pauli_block() {
        // [λ¹, λ²] = 2iλ³ becomes f = i√2 after the 1/√2 rescaling; in this
        // ordering λ¹ = S(1,2) is index 0, λ² = A(1,2) is index 3, λ³ = H1 is index 6.
        let b = SunBasis::new(3).unwrap();
        let f = b.f();
        assert!((f[(0, 3, 6)] - c64(0.0, 2f64.sqrt())).norm() < 1e-14);
        assert!(f[(0, 1, 2)].norm() < 1e-14);
    }

    #[test]
    fn su3_sum_rules() {
        let b = SunBasis::new(3).unwrap();
        let (dd, ff) = b.sum_rule_residuals();
        assert!(dd < 1e-12 && ff < 1e-12, "dd {dd} ff {ff}");
        let dsum: f64 = (0..8)
            .flat_map(|a| (0..8).map(move |bb| (a, bb)))
            .map(|(a, bb)| b.d()[(a, bb, 0)].norm_sqr())
            .sum();
        assert!((dsum - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn su7_generators_are_hermitian_and_traceless() {
        let b = SunBasis::new(7).unwrap();
        assert_eq!(b.dim(), 48);
        for g in b.generators() {
            assert!(g.is_hermitian(1e-15));
            assert!(g.trace().norm() < 1e-14);
        }
    }

    #[test]
    fn reconstruction_and_symmetry() {
        for n in 3..=5 {
            let b = SunBasis::new(n).unwrap();
            let (rf, rd) = b.reconstruction_residuals();
            assert!(rf < 1e-12 && rd < 1e-12, "n={n}: {rf} {rd}");
            assert!(b.symmetry_residual() < 1e-13);
            assert!(b.jacobi_residual() < 1e-12);
        }
    }

    #[test]
    fn matrix_unit_e13_for_su3() {
        let b = SunBasis::new(3).unwrap();
        let u = b.matrix_unit(1, 3).unwrap();
        let w = u.coords.unwrap();
        let nonzero: Vec<usize> = (0..8).filter(|&a| w[a].norm() > 1e-14).collect();
        // S(1,3) is index 1, A(1,3) is index 4
        assert_eq!(nonzero, vec![1, 4]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w[1] - c64(s, 0.0)).norm() < 1e-15);
        assert!((w[4] - c64(0.0, s)).norm() < 1e-15);
        let parseval: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        assert!((parseval - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matrix_unit_e15_round_trip() {
        let b = SunBasis::new(5).unwrap();
        let u = b.matrix_unit(1, 5).unwrap();
        let back = b.from_coords(u.coords.as_ref().unwrap());
        assert!(back.max_abs_diff(&u.matrix) <= 1e-12);
    }

    #[test]
    fn diagonal_unit_has_no_coordinates() {
        let b = SunBasis::new(4).unwrap();
        assert!(b.matrix_unit(2, 2).unwrap().coords.is_none());
        assert!(matches!(b.unit_coords(2, 2), Err(Error::DiagonalMatrixUnit { i: 2 })));
        assert!(b.matrix_unit(0, 2).is_err());
        assert!(b.matrix_unit(1, 5).is_err());
    }

    #[test]
    fn anticommutator_traces_match_definition() {
        let b = SunBasis::new(4).unwrap();
        let x = b.matrix_unit(3, 4).unwrap().matrix;
        let t = b.anticommutator_traces(&x);
        for a in [0, 5, 9, 14] {
            for bb in [1, 5, 12] {
                let direct = x.matmul(&b.generator(a).anticommutator(b.generator(bb))).trace();
                assert!((t[(a, bb)] - direct).norm() < 1e-14);
            }
        }
    }
}
