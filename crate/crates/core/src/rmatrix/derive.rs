//! Recovers the coefficient functions numerically from the intertwining
//! relation `I(λ)J(y)_{0,λ}v = J(y)_{λ,0}I(λ)v` on highest-weight vectors,
//! without using the closed forms.

use super::{Block, CoefficientSet, Coefficients};
use crate::adjoint_tensor::{AdjointRep, Decomposition, SubmoduleKind, TensorVector};
use crate::error::{Error, Result};
use crate::numerics::{c64, C64};
use crate::yangian_action::{Generator, YangianTwoSiteAction};

/// A word `J(y₁)J(y₂)…` of level-1 generators, applied right to left.
struct Word(Vec<Generator>);

impl Word {
    fn apply(&self, act: &YangianTwoSiteAction<'_>, v: &TensorVector) -> TensorVector {
        let mut out = v.clone();
        for g in self.0.iter().rev() {
            out = act.apply_level1(g, &out);
        }
        out
    }
}

struct Context<'a> {
    dec: &'a Decomposition,
    before: YangianTwoSiteAction<'a>,
    after: YangianTwoSiteAction<'a>,
}

impl Context<'_> {
    /// `(P J_{0,λ} v, P J_{λ,0} v)` for the submodule `kind`.
    fn projected(&self, kind: SubmoduleKind, word: &Word, v: &TensorVector) -> Result<(TensorVector, TensorVector)> {
        let p = self.dec.require(kind)?;
        Ok((
            p.project(&word.apply(&self.before, v)),
            p.project(&word.apply(&self.after, v)),
        ))
    }

    /// Least-squares `f` in `cₖ Pₖ J_{0,λ} v = f Pₖ J_{λ,0} v` over the
    /// modules `k` with known coefficients `cₖ`.
    fn scalar(&self, known: &[(SubmoduleKind, C64)], word: &Word, v: &TensorVector, what: &str) -> Result<C64> {
        let mut num = c64(0.0, 0.0);
        let mut den = 0.0;
        for &(kind, c) in known {
            let (a, b) = self.projected(kind, word, v)?;
            num += b.inner(&a) * c;
            den += b.inner(&b).re;
        }
        if den < 1e-20 * v.norm().powi(2) {
            return Err(Error::SingularSolve(format!(
                "{what}: no overlap with modules of known coefficient"
            )));
        }
        Ok(num / den)
    }

    /// Column of `M` for the seed `v`: `I v = x v_s + y v_a`, from the top
    /// components of several words.
    fn adjoint_column(
        &self,
        words: &[Word],
        v: &TensorVector,
        vs: &TensorVector,
        va: &TensorVector,
    ) -> Result<[C64; 2]> {
        let mut g = [[c64(0.0, 0.0); 2]; 2];
        let mut rhs = [c64(0.0, 0.0); 2];
        let top = self.dec.require(SubmoduleKind::Top)?;
        for w in words {
            let a = top.project(&w.apply(&self.before, v));
            let bs = top.project(&w.apply(&self.after, vs));
            let ba = top.project(&w.apply(&self.after, va));
            let cols = [&bs, &ba];
            for i in 0..2 {
                rhs[i] += cols[i].inner(&a);
                for j in 0..2 {
                    g[i][j] += cols[i].inner(cols[j]);
                }
            }
        }
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let scale = g[0][0].norm() * g[1][1].norm();
        if det.norm() < 1e-10 * scale || scale == 0.0 {
            return Err(Error::SingularSolve(
                "adjoint block: normal equations are singular".into(),
            ));
        }
        Ok([
            (g[1][1] * rhs[0] - g[0][1] * rhs[1]) / det,
            (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det,
        ])
    }
}

/// Derives `f₁, f₂, f₃, f₄` and `M(λ)` at one `λ`.
///
/// `f₁` uses `J(e₍ₙ₋₁₎ₙ)` on `(20…010)`, `f₂` and `f₃` use `J(e₁₂)` on
/// `(010…02)` and `(010…010)`, `f₄` uses `J(e₁ₙ)²` on the singlet, and each
/// column of `M` combines `J(e₁ₙ)` and `J(e₍ₙ₋₁₎ₙ)J(e₁₍ₙ₋₁₎)`.
pub fn derive_coefficients(rep: &AdjointRep, dec: &Decomposition, lambda: C64) -> Result<Coefficients> {
    let n = rep.n();
    CoefficientSet::new(n).check(lambda)?;
    let zero = c64(0.0, 0.0);
    let ctx = Context {
        dec,
        before: YangianTwoSiteAction::new(rep, zero, lambda),
        after: YangianTwoSiteAction::new(rep, lambda, zero),
    };
    let h = dec.highest_weight_vectors();
    let hw = |k: SubmoduleKind| h.get(k).ok_or_else(|| Error::UnknownLabel(k.to_string()));
    let one = c64(1.0, 0.0);
    let unit = |i, j| Generator::unit(rep, i, j);

    let f1 = ctx.scalar(
        &[(SubmoduleKind::Top, one)],
        &Word(vec![unit(n - 1, n)?]),
        hw(SubmoduleKind::AntiLeft)?,
        "f1",
    )?;
    let e12 = Word(vec![unit(1, 2)?]);
    let f2 = ctx.scalar(&[(SubmoduleKind::Top, one)], &e12, hw(SubmoduleKind::AntiRight)?, "f2")?;
    let f3 = if n > 3 {
        let known = [
            (SubmoduleKind::Top, one),
            (SubmoduleKind::AntiLeft, f1),
            (SubmoduleKind::AntiRight, f2),
        ];
        Some(ctx.scalar(&known, &e12, hw(SubmoduleKind::Mixed)?, "f3")?)
    } else {
        None
    };
    let twice = Word(vec![unit(1, n)?, unit(1, n)?]);
    let f4 = ctx.scalar(&[(SubmoduleKind::Top, one)], &twice, hw(SubmoduleKind::Singlet)?, "f4")?;

    let words = [Word(vec![unit(1, n)?]), Word(vec![unit(n - 1, n)?, unit(1, n - 1)?])];
    let (vs, va) = (h.v_s(), h.v_a());
    let col_s = ctx.adjoint_column(&words, vs, vs, va)?;
    let col_a = ctx.adjoint_column(&words, va, vs, va)?;
    let m: Block = [[col_s[0], col_a[0]], [col_s[1], col_a[1]]];

    Ok(Coefficients {
        lambda,
        f1,
        f2,
        f3,
        f4,
        m,
    })
}

/// Largest deviation of derived coefficients from the closed forms.
pub fn deviation_from_closed_form(derived: &Coefficients, n: usize) -> Result<f64> {
    let closed = CoefficientSet::new(n).evaluate(derived.lambda)?;
    let mut worst = (derived.f1 - closed.f1)
        .norm()
        .max((derived.f2 - closed.f2).norm())
        .max((derived.f4 - closed.f4).norm());
    if let (Some(a), Some(b)) = (derived.f3, closed.f3) {
        worst = worst.max((a - b).norm());
    }
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((derived.m[i][j] - closed.m[i][j]).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Tolerance;

    #[test]
    fn recovers_closed_forms() {
        for n in [3, 4] {
            let rep = AdjointRep::for_rank(n).unwrap();
            let dec = Decomposition::build(&rep, &Tolerance::default()).unwrap();
            for l in [c64(0.0, 1.0), c64(2.0, 1.0), c64(-0.3, 0.0)] {
                let d = derive_coefficients(&rep, &dec, l).unwrap();
                let dev = deviation_from_closed_form(&d, n).unwrap();
                assert!(dev < 1e-9, "n={n} λ={l} deviation {dev}");
            }
        }
    }
}
