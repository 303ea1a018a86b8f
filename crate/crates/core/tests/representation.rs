use adjrmat::adjoint_tensor::{AdjointRep, Decomposition, SubmoduleKind, TensorVector};
use adjrmat::liealg::SunBasis;
use adjrmat::numerics::{c64, eigenvalues, kron, orthonormalize, CMatrix, Tolerance, C64};
use adjrmat::Error;

/// Weyl dimension formula for `su(n)` from Dynkin labels.
fn weyl_dimension(labels: &[u32]) -> usize {
    let n = labels.len() + 1;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            let s: u32 = labels[i..j].iter().map(|a| a + 1).sum();
            num *= s as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as usize
}

/// `Ω_op` on the module with these labels, `C(Λ) − 2C(adjoint)`, in the
/// normalisation where roots have length² 2 and `C = (Λ, Λ+2ρ)/2`.
fn omega_from_labels(labels: &[u32]) -> f64 {
    let r = labels.len();
    let n = (r + 1) as f64;
    let g = |i: usize, j: usize| (i.min(j) as f64) * (n - i.max(j) as f64) / n;
    let mut quad = 0.0;
    let mut lin = 0.0;
    for i in 1..=r {
        for j in 1..=r {
            let gij = g(i, j);
            quad += labels[i - 1] as f64 * labels[j - 1] as f64 * gij;
            lin += 2.0 * labels[i - 1] as f64 * gij;
        }
    }
    (quad + lin) / 2.0 - 2.0 * n
}

fn gell_mann_over_sqrt2() -> Vec<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c64(0.0, 0.0);
    let r = c64(s, 0.0);
    let i = c64(0.0, s);
    let h = 1.0 / 6f64.sqrt();
    let mats: [[C64; 9]; 8] = [
        [z, r, z, r, z, z, z, z, z],
        [z, -i, z, i, z, z, z, z, z],
        [r, z, z, z, -r, z, z, z, z],
        [z, z, r, z, z, z, r, z, z],
        [z, z, -i, z, z, z, i, z, z],
        [z, z, z, z, z, r, z, r, z],
        [z, z, z, z, z, -i, z, i, z],
        [c64(h, 0.0), z, z, z, c64(h, 0.0), z, z, z, c64(-2.0 * h, 0.0)],
    ];
    mats.iter().map(|m| CMatrix::from_vec(3, 3, m.to_vec())).collect()
}

#[test]
fn su3_basis_spans_the_gell_mann_matrices() {
    let b = SunBasis::new(3).unwrap();
    assert_eq!(b.dim(), 8);
    let g0 = b.generator(0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((g0[(0, 1)] - c64(s, 0.0)).norm() < 1e-15 && (g0[(1, 0)] - c64(s, 0.0)).norm() < 1e-15);
    // Same real span, same inner products: the change of basis is orthogonal.
    for gm in gell_mann_over_sqrt2() {
        let w = b.coords(&gm).unwrap();
        assert!(w.iter().all(|x| x.im.abs() < 1e-14));
        assert!((w.iter().map(|x| x.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(b.from_coords(&w).max_abs_diff(&gm) < 1e-14);
    }
}

#[test]
fn structure_constants_match_commutators() {
    for n in [3, 5] {
        let b = SunBasis::new(n).unwrap();
        let (f, d) = b.structure_constants();
        for a in 0..b.dim() {
            for bb in 0..b.dim() {
                let (ga, gb) = (b.generator(a), b.generator(bb));
                let comm = ga.commutator(gb);
                let anti = ga.anticommutator(gb);
                for c in 0..b.dim() {
                    let gc = b.generator(c);
                    let fc = comm.matmul(gc).trace();
                    let dc = anti.matmul(gc).trace();
                    assert!((fc - f[(a, bb, c)]).norm() < 1e-12, "f {a}{bb}{c}");
                    assert!((dc - d[(a, bb, c)]).norm() < 1e-12, "d {a}{bb}{c}");
                }
            }
        }
    }
}

#[test]
fn su3_structure_constant_entry() {
    let b = SunBasis::new(3).unwrap();
    assert!((b.f()[(0, 3, 6)] - c64(0.0, 2f64.sqrt())).norm() < 1e-14);
    let (rd, rf) = b.sum_rule_residuals();
    assert!(rd < 1e-12 && rf < 1e-12);
}

#[test]
fn su7_has_48_generators() {
    let b = SunBasis::new(7).unwrap();
    assert_eq!(b.dim(), 48);
    assert!(b.orthonormality_residual() < 1e-13);
    assert!(matches!(SunBasis::new(2), Err(Error::InvalidRank { .. })));
}

#[test]
fn matrix_unit_coordinates() {
    let b = SunBasis::new(3).unwrap();
    let w = b.unit_coords(1, 3).unwrap();
    assert_eq!(w.iter().filter(|x| x.norm() > 1e-14).count(), 2);
    let parseval: f64 = w.iter().map(|x| x.norm_sqr()).sum();
    assert!((parseval - 1.0).abs() < 1e-14);

    let b5 = SunBasis::new(5).unwrap();
    let mut e15 = CMatrix::zeros(5, 5);
    e15[(0, 4)] = c64(1.0, 0.0);
    let w5 = b5.unit_coords(1, 5).unwrap();
    assert!(b5.from_coords(&w5).max_abs_diff(&e15) < 1e-12);
}

#[test]
fn adjoint_matrices() {
    let rep = AdjointRep::for_rank(3).unwrap();
    let mut sum = CMatrix::zeros(8, 8);
    for s in rep.s() {
        assert!(s.trace().norm() < 1e-14);
        assert!(s.is_hermitian(1e-14));
        sum += &s.matmul(s);
    }
    assert!(sum.max_abs_diff(&CMatrix::identity(8).scale(c64(6.0, 0.0))) < 1e-12);
    assert!(rep.representation_residual() < 1e-12);
}

#[test]
fn casimir_on_singlet_and_top() {
    for n in [3, 4, 5] {
        let rep = AdjointRep::for_rank(n).unwrap();
        let d = rep.dim();
        let singlet = TensorVector::singlet(d);
        let image = rep.apply_casimir(&singlet);
        assert!(image.distance(&singlet.scaled(c64(-2.0 * n as f64, 0.0))) < 1e-11);

        let e1n = rep.basis().unit_coords(1, n).unwrap();
        let top = TensorVector::product(&e1n, &e1n);
        assert!(rep.apply_casimir(&top).distance(&top.scaled(c64(2.0, 0.0))) < 1e-11);
    }
}

#[test]
fn swap_properties() {
    let rep = AdjointRep::for_rank(3).unwrap();
    let sigma = rep.permutation_op();
    assert!(sigma.matmul(&sigma).max_abs_diff(&CMatrix::identity(64)) == 0.0);
    assert!((sigma.trace() - c64(8.0, 0.0)).norm() < 1e-14);
    let omega = rep.casimir_op();
    assert!(sigma.matmul(&omega).max_abs_diff(&omega.matmul(&sigma)) < 1e-12);
}

/// Eigenvalues of `Ω_op + σ/10`, grouped, against the expected table.
#[test]
fn joint_spectrum_of_casimir_and_swap_for_su4() {
    let rep = AdjointRep::for_rank(4).unwrap();
    let mut m = rep.casimir_op();
    m.axpy(c64(0.1, 0.0), &rep.permutation_op());
    let ev = eigenvalues(&m).unwrap();
    let expected: [(f64, f64, usize); 6] = [
        (2.0, 1.0, 84),
        (0.0, -1.0, 90),
        (-2.0, 1.0, 20),
        (-4.0, 1.0, 15),
        (-4.0, -1.0, 15),
        (-8.0, 1.0, 1),
    ];
    for (omega, parity, count) in expected {
        let target = omega + 0.1 * parity;
        let found = ev.iter().filter(|z| (**z - c64(target, 0.0)).norm() < 1e-8).count();
        assert_eq!(found, count, "Ω = {omega}, σ = {parity}");
    }
    assert_eq!(expected.iter().map(|e| e.2).sum::<usize>(), ev.len());
}

#[test]
fn decomposition_matches_weyl_formula_and_casimir_values() {
    let tol = Tolerance::default();
    for n in [3, 4, 5] {
        let rep = AdjointRep::for_rank(n).unwrap();
        let dec = Decomposition::build(&rep, &tol).unwrap();
        let mut total = 0;
        for s in dec.submodules() {
            let labels = s.kind.dynkin(n);
            assert_eq!(s.dim(), weyl_dimension(&labels), "{} at n = {n}", s.label);
            assert!(
                (s.omega_eigenvalue - omega_from_labels(&labels)).abs() < 1e-12,
                "{}",
                s.label
            );
            total += s.dim();
        }
        assert_eq!(total, (n * n - 1).pow(2));
        assert!(dec.completeness_residual() < 1e-10);
        assert!(dec.invariance_residual(&rep) < 1e-10);
    }
}

#[test]
fn su3_dimensions() {
    let rep = AdjointRep::for_rank(3).unwrap();
    let dec = Decomposition::build(&rep, &Tolerance::default()).unwrap();
    let mut dims: Vec<usize> = dec.submodules().iter().map(|s| s.dim()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 8, 8, 10, 10, 27]);
    assert!(dec.submodule(SubmoduleKind::Mixed).is_none());
}

#[test]
fn projectors_reconstruct_casimir_and_swap() {
    let rep = AdjointRep::for_rank(4).unwrap();
    let dec = Decomposition::build(&rep, &Tolerance::default()).unwrap();
    assert!(dec.omega_reconstruction_residual(&rep) < 1e-10);
    assert!(dec.swap_reconstruction_residual() < 1e-10);
    assert!(dec.iso_equivariance_residual(&rep) < 1e-10);
    let p: Vec<CMatrix> = dec.submodules().iter().map(|s| s.projector()).collect();
    for (i, a) in p.iter().enumerate() {
        for b in &p[i + 1..] {
            assert!(a.matmul(b).max_abs() < 1e-10);
        }
    }
}

#[test]
fn adjoint_vectors_have_equal_norm() {
    let rep = AdjointRep::for_rank(5).unwrap();
    let dec = Decomposition::build(&rep, &Tolerance::default()).unwrap();
    let hwv = dec.highest_weight_vectors();
    assert!((hwv.v_s().norm() - hwv.v_a().norm()).abs() < 1e-12);
    assert!(hwv.v_s().inner(&hwv.v_s().swapped()).re > 0.0);
    assert!(hwv.v_a().distance(&hwv.v_a().swapped().scaled(c64(-1.0, 0.0))) < 1e-12);
}

#[test]
fn kron_and_orthonormalize_examples() {
    let d = CMatrix::from_diag(&[c64(1.0, 0.0), c64(2.0, 0.0)]);
    let k = kron(&d, &CMatrix::identity(2));
    let want = CMatrix::from_diag(&[1.0, 1.0, 2.0, 2.0].map(|x| c64(x, 0.0)));
    assert_eq!(k.max_abs_diff(&want), 0.0);

    let tol = Tolerance::default();
    let e = |a: f64, b: f64| vec![c64(a, 0.0), c64(b, 0.0)];
    let out = orthonormalize(&[e(1.0, 0.0), e(0.0, 2.0)], &tol);
    assert_eq!(out, vec![e(1.0, 0.0), e(0.0, 1.0)]);
    assert_eq!(orthonormalize(&[e(1.0, 0.0), e(1.0, 0.0)], &tol).len(), 1);
}

#[test]
fn eigenvalues_of_a_jordan_block() {
    let m = CMatrix::from_vec(2, 2, vec![c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]);
    let ev = eigenvalues(&m).unwrap();
    assert!(ev.iter().all(|z| (z - c64(1.0, 0.0)).norm() < 1e-7));
}
