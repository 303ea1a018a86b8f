use crate::error::{Error, Result};
use crate::numerics::C64;

/// Evaluation is refused within this distance of a pole.
pub const POLE_GUARD: f64 = 0.1;

/// `2 × 2` block in the ordered basis `{v_s, v_a}`, column convention:
/// the operator sends `v_s ↦ m[0][0]·v_s + m[1][0]·v_a`.
pub type Block = [[C64; 2]; 2];

/// The closed-form coefficient functions of the intertwiner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet {
    n: usize,
}

/// The coefficient functions evaluated at one `λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub lambda: C64,
    pub f1: C64,
    pub f2: C64,
    /// `None` for `n = 3`, which has no `(010…010)` module.
    pub f3: Option<C64>,
    pub f4: C64,
    pub m: Block,
}

/// `d/dλ` of the coefficients at `λ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientDerivatives {
    pub f1: f64,
    pub f2: f64,
    pub f3: Option<f64>,
    pub f4: f64,
    pub m: [[f64; 2]; 2],
}

impl CoefficientSet {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poles(&self) -> [f64; 2] {
        [1.0, self.n as f64]
    }

    /// Rejects `λ` within [`POLE_GUARD`] of a pole, naming it.
    pub fn check(&self, lambda: C64) -> Result<()> {
        for p in self.poles() {
            if (lambda - p).norm() < POLE_GUARD {
                return Err(Error::PoleProximity {
                    lambda: format!("{}{:+}i", lambda.re, lambda.im),
                    pole: p,
                    guard: POLE_GUARD,
                });
            }
        }
        Ok(())
    }

    pub fn f1(&self, l: C64) -> C64 {
        (1.0 + l) / (1.0 - l)
    }

    pub fn f2(&self, l: C64) -> C64 {
        self.f1(l)
    }

    pub fn f3(&self, l: C64) -> C64 {
        let f = self.f1(l);
        f * f
    }

    pub fn f4(&self, l: C64) -> C64 {
        let n = self.n as f64;
        (1.0 + l) * (n + l) / ((1.0 - l) * (n - l))
    }

    fn root(&self) -> f64 {
        let n = self.n as f64;
        (n * n - 4.0).sqrt()
    }

    fn denominator(&self, l: C64) -> C64 {
        let n = self.n as f64;
        2.0 * (n - l) * (1.0 - l) * (1.0 - l)
    }

    /// The adjoint block `M(λ)` of the intertwiner.
    pub fn m(&self, l: C64) -> Block {
        let n = self.n as f64;
        let den = self.denominator(l);
        let cubic = (n * n + 2.0) * l - 2.0 * l * l * l;
        let off = n * self.root() * l;
        [
            [(2.0 * n + cubic) / den, off / den],
            [-off / den, (2.0 * n - cubic) / den],
        ]
    }

    /// The adjoint block `N(λ)` of the R-matrix.
    pub fn n_block(&self, l: C64) -> Block {
        let n = self.n as f64;
        let den = self.denominator(l);
        let cubic = (n * n + 2.0) * l - 2.0 * l * l * l;
        let off = -n * self.root() * l;
        [
            [(2.0 * n + cubic) / den, off / den],
            [off / den, (cubic - 2.0 * n) / den],
        ]
    }

    /// All coefficients at `λ`, after the pole check.
    pub fn evaluate(&self, l: C64) -> Result<Coefficients> {
        self.check(l)?;
        Ok(Coefficients {
            lambda: l,
            f1: self.f1(l),
            f2: self.f2(l),
            f3: (self.n > 3).then(|| self.f3(l)),
            f4: self.f4(l),
            m: self.m(l),
        })
    }

    /// Exact derivatives at `λ = 0`.
    pub fn derivatives_at_zero(&self) -> CoefficientDerivatives {
        let n = self.n as f64;
        let k = self.root();
        CoefficientDerivatives {
            f1: 2.0,
            f2: 2.0,
            f3: (self.n > 3).then_some(4.0),
            f4: (2.0 * n + 2.0) / n,
            m: [[(2.0 + n) * (2.0 + n) / (2.0 * n), 0.5 * k], [-0.5 * k, 2.0 - n / 2.0]],
        }
    }
}

/// Eigenvalues of a `2 × 2` block, ordered by real part.
pub fn block_eigenvalues(b: &Block) -> [C64; 2] {
    let tr = b[0][0] + b[1][1];
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let mut e = [(tr - disc) / 2.0, (tr + disc) / 2.0];
    if e[0].re > e[1].re || (e[0].re == e[1].re && e[0].im > e[1].im) {
        e.swap(0, 1);
    }
    e
}

/// `(11λ − 2λ² ± 3√(4+5λ²)) / (2(1−λ)²(3−λ))`, the commonly quoted closed form of
/// the `n = 3` block eigenvalues, ordered by real part.
pub fn su3_quoted_eigenvalues(l: C64) -> [C64; 2] {
    su3_eigen_form(l, 11.0 * l - 2.0 * l * l)
}

/// The same expression with `λ³` in place of `λ²`, which is what the
/// trace of `N(λ)` gives.
pub fn su3_corrected_eigenvalues(l: C64) -> [C64; 2] {
    su3_eigen_form(l, 11.0 * l - 2.0 * l * l * l)
}

fn su3_eigen_form(l: C64, lead: C64) -> [C64; 2] {
    let root = 3.0 * (4.0 + 5.0 * l * l).sqrt();
    let den = 2.0 * (1.0 - l) * (1.0 - l) * (3.0 - l);
    let mut e = [(lead - root) / den, (lead + root) / den];
    if e[0].re > e[1].re || (e[0].re == e[1].re && e[0].im > e[1].im) {
        e.swap(0, 1);
    }
    e
}

/// Largest `|a − b|` between two eigenvalue pairs, minimized over matching.
pub fn pair_distance(a: &[C64; 2], b: &[C64; 2]) -> f64 {
    let direct = (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    let crossed = (a[0] - b[1]).norm().max((a[1] - b[0]).norm());
    direct.min(crossed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c64;

    #[test]
    fn identity_at_zero() {
        for n in 3..=7 {
            let c = CoefficientSet::new(n).evaluate(c64(0.0, 0.0)).unwrap();
            assert_eq!(c.f1, c64(1.0, 0.0));
            assert_eq!(c.f4, c64(1.0, 0.0));
            assert_eq!(c.m, [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(1.0, 0.0)]]);
            assert_eq!(c.f3.is_some(), n > 3);
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn inversion_relation() {
        // M(λ)M(−λ) = 1 and f(λ)f(−λ) = 1
        let set = CoefficientSet::new(5);
        for l in [c64(0.3, 0.2), c64(-2.0, 1.5), c64(0.0, 2.0)] {
            let a = set.m(l);
            let b = set.m(-l);
            for i in 0..2 {
                for j in 0..2 {
                    let e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((e - want).norm() < 1e-12);
                }
            }
            assert!((set.f4(l) * set.f4(-l) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn poles_are_guarded() {
        let set = CoefficientSet::new(4);
        assert!(matches!(set.check(c64(1.05, 0.0)), Err(Error::PoleProximity { pole, .. }) if pole == 1.0));
        assert!(matches!(set.check(c64(4.0, 0.09)), Err(Error::PoleProximity { pole, .. }) if pole == 4.0));
        assert!(set.check(c64(-1.0, 0.0)).is_ok());
        assert!(set.check(c64(-4.0, 0.0)).is_ok());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for n in [3, 4, 6] {
            let set = CoefficientSet::new(n);
            let d = set.derivatives_at_zero();
            let h = 1e-6;
            let fd = |f: &dyn Fn(C64) -> C64| ((f(c64(h, 0.0)) - f(c64(-h, 0.0))) / (2.0 * h)).re;
            assert!((fd(&|l| set.f1(l)) - d.f1).abs() < 1e-8);
            assert!((fd(&|l| set.f3(l)) - 4.0).abs() < 1e-8);
            assert!((fd(&|l| set.f4(l)) - d.f4).abs() < 1e-8);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((fd(&|l| set.m(l)[i][j]) - d.m[i][j]).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn n_block_is_m_with_flipped_second_column() {
        let set = CoefficientSet::new(4);
        let l = c64(0.4, -0.7);
        let (m, nb) = (set.m(l), set.n_block(l));
        assert!((nb[0][0] - m[0][0]).norm() < 1e-15);
        assert!((nb[1][0] - m[1][0]).norm() < 1e-15);
        assert!((nb[0][1] + m[0][1]).norm() < 1e-15);
        assert!((nb[1][1] + m[1][1]).norm() < 1e-15);
    }

    #[test]
    fn corrected_su3_form_matches_n_block() {
        let set = CoefficientSet::new(3);
        for l in [c64(0.5, 0.0), c64(0.0, 2.0), c64(-1.7, 0.0)] {
            let e = block_eigenvalues(&set.n_block(l));
            assert!(pair_distance(&e, &su3_corrected_eigenvalues(l)) < 1e-12);
        }
    }
}
