use super::{gemm, CMatrix, C64};

/// Kronecker product, `(a ⊗ b)[i·rb + k, j·cb + l] = a[i,j]·b[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    let cols = ca * cb;
    let data = out.as_mut_slice();
    for i in 0..ra {
        for j in 0..ca {
            let x = a[(i, j)];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                let row = (i * rb + k) * cols + j * cb;
                for (l, &y) in b.row(k).iter().enumerate() {
                    data[row + l] = x * y;
                }
            }
        }
    }
    out
}

/// `Σₜ aₜ ⊗ bₜ`, evaluated as one reshuffled matrix product.
///
/// All left factors must share one shape, as must all right factors.
pub fn kron_sum(pairs: &[(&CMatrix, &CMatrix)]) -> CMatrix {
    let Some(&(a0, b0)) = pairs.first() else {
        return CMatrix::zeros(0, 0);
    };
    let (p, q, r, s) = (a0.rows(), a0.cols(), b0.rows(), b0.cols());
    let t = pairs.len();
    let mut left = CMatrix::zeros(p * q, t);
    let mut right = CMatrix::zeros(t, r * s);
    for (idx, (a, b)) in pairs.iter().enumerate() {
        assert_eq!((a.rows(), a.cols()), (p, q), "kron_sum: left factor shape mismatch");
        assert_eq!((b.rows(), b.cols()), (r, s), "kron_sum: right factor shape mismatch");
        for (e, &z) in a.as_slice().iter().enumerate() {
            left[(e, idx)] = z;
        }
        right.as_mut_slice()[idx * r * s..(idx + 1) * r * s].copy_from_slice(b.as_slice());
    }
    let mut g = CMatrix::zeros(p * q, r * s);
    gemm(&mut g, &left, &right, C64::new(1.0, 0.0), false);

    let mut out = CMatrix::zeros(p * r, q * s);
    let out_cols = q * s;
    let od = out.as_mut_slice();
    for i in 0..p {
        for j in 0..q {
            let grow = g.row(i * q + j);
            for k in 0..r {
                let base = (i * r + k) * out_cols + j * s;
                od[base..base + s].copy_from_slice(&grow[k * s..(k + 1) * s]);
            }
        }
    }
    out
}

struct PairIndex {
    pair: Vec<usize>,
    rest: Vec<usize>,
    rest_count: usize,
}

fn pair_index(local_dim: usize, sites: usize, p: usize, q: usize) -> PairIndex {
    assert!(
        p < sites && q < sites && p != q,
        "pair sites must be distinct and in range"
    );
    let d = local_dim;
    let total = d.pow(sites as u32);
    let mut pair = Vec::with_capacity(total);
    let mut rest = Vec::with_capacity(total);
    let mut digits = vec![0usize; sites];
    for idx in 0..total {
        let mut x = idx;
        for s in (0..sites).rev() {
            digits[s] = x % d;
            x /= d;
        }
        pair.push(digits[p] * d + digits[q]);
        let mut r = 0;
        for (s, &dg) in digits.iter().enumerate() {
            if s != p && s != q {
                r = r * d + dg;
            }
        }
        rest.push(r);
    }
    PairIndex {
        pair,
        rest,
        rest_count: total / (d * d),
    }
}

/// Applies a two-site operator `op` (acting on sites `p`, `q`, with `p` the
/// first tensor factor of `op`) to every column of `x`, where rows of `x`
/// index a product space of `sites` factors of dimension `local_dim`, site 0
/// most significant.
pub fn apply_pair(op: &CMatrix, local_dim: usize, sites: usize, p: usize, q: usize, x: &CMatrix) -> CMatrix {
    let d2 = local_dim * local_dim;
    assert_eq!((op.rows(), op.cols()), (d2, d2), "apply_pair: operator must be d²×d²");
    assert_eq!(
        x.rows(),
        local_dim.pow(sites as u32),
        "apply_pair: state dimension mismatch"
    );
    let idx = pair_index(local_dim, sites, p, q);
    let k = x.cols();
    let width = idx.rest_count * k;

    let mut gathered = CMatrix::zeros(d2, width);
    {
        let g = gathered.as_mut_slice();
        for (row, (&pr, &rs)) in idx.pair.iter().zip(&idx.rest).enumerate() {
            let base = pr * width + rs * k;
            g[base..base + k].copy_from_slice(x.row(row));
        }
    }
    let mut applied = CMatrix::zeros(d2, width);
    gemm(&mut applied, op, &gathered, C64::new(1.0, 0.0), false);

    let mut out = CMatrix::zeros(x.rows(), k);
    {
        let a = applied.as_slice();
        let o = out.as_mut_slice();
        for (row, (&pr, &rs)) in idx.pair.iter().zip(&idx.rest).enumerate() {
            let base = pr * width + rs * k;
            o[row * k..(row + 1) * k].copy_from_slice(&a[base..base + k]);
        }
    }
    out
}

/// Dense embedding of a two-site operator on sites `p`, `q` of a
/// `sites`-fold product space.
pub fn embed_pair(op: &CMatrix, local_dim: usize, sites: usize, p: usize, q: usize) -> CMatrix {
    let d = local_dim;
    assert_eq!(
        (op.rows(), op.cols()),
        (d * d, d * d),
        "embed_pair: operator must be d²×d²"
    );
    assert!(p < sites && q < sites && p != q, "embed_pair: bad sites");
    let total = d.pow(sites as u32);
    let stride = |s: usize| d.pow((sites - 1 - s) as u32);
    let (sp, sq) = (stride(p), stride(q));
    let mut out = CMatrix::zeros(total, total);
    for idx in 0..total {
        let dp = (idx / sp) % d;
        let dq = (idx / sq) % d;
        let base = idx - dp * sp - dq * sq;
        let op_row = op.row(dp * d + dq);
        for ep in 0..d {
            for eq in 0..d {
                let v = op_row[ep * d + eq];
                if v != C64::new(0.0, 0.0) {
                    out[(idx, base + ep * sp + eq * sq)] += v;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c64;

    fn sample(rows: usize, cols: usize, seed: f64) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| {
            let t = seed + (i * cols + j) as f64;
            c64((1.3 * t).sin(), (0.7 * t + 0.2).cos())
        })
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&CMatrix::identity(2), &CMatrix::identity(2));
        assert_eq!(k, CMatrix::identity(4));
    }

    #[test]
    fn kron_of_diagonal_with_identity() {
        let z = CMatrix::from_diag(&[c64(1.0, 0.0), c64(-1.0, 0.0)]);
        let k = kron(&z, &CMatrix::identity(2));
        let expect = CMatrix::from_diag(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(-1.0, 0.0), c64(-1.0, 0.0)]);
        assert_eq!(k, expect);
    }

    #[test]
    fn kron_mixed_product_rule() {
        let (a, b, c, d) = (
            sample(3, 3, 0.1),
            sample(3, 3, 1.7),
            sample(3, 3, 4.2),
            sample(3, 3, 9.9),
        );
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        // entry-wise definition of the product on the right
        for i in 0..9 {
            for j in 0..9 {
                let expect = (0..3).map(|k| a[(i / 3, k)] * c[(k, j / 3)]).sum::<C64>()
                    * (0..3).map(|k| b[(i % 3, k)] * d[(k, j % 3)]).sum::<C64>();
                assert!((rhs[(i, j)] - expect).norm() < 1e-12);
            }
        }
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_is_associative() {
        let (a, b, c) = (sample(2, 3, 0.3), sample(3, 2, 2.2), sample(2, 2, 5.1));
        assert!(kron(&kron(&a, &b), &c).max_abs_diff(&kron(&a, &kron(&b, &c))) < 1e-15);
    }

    #[test]
    fn kron_sum_matches_explicit_sum() {
        let pairs_owned: Vec<(CMatrix, CMatrix)> = (0..4)
            .map(|t| (sample(2, 3, t as f64), sample(3, 2, 10.0 + t as f64)))
            .collect();
        let pairs: Vec<(&CMatrix, &CMatrix)> = pairs_owned.iter().map(|(a, b)| (a, b)).collect();
        let mut expect = CMatrix::zeros(6, 6);
        for (a, b) in &pairs {
            expect += &kron(a, b);
        }
        assert!(kron_sum(&pairs).max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn apply_pair_matches_dense_embedding() {
        let d = 3;
        let op = sample(9, 9, 0.9);
        let x = sample(27, 4, 3.3);
        for (p, q) in [(0, 1), (1, 2), (0, 2), (2, 0)] {
            let dense = embed_pair(&op, d, 3, p, q);
            let got = apply_pair(&op, d, 3, p, q, &x);
            assert!(got.max_abs_diff(&dense.matmul(&x)) < 1e-12, "pair ({p},{q})");
        }
        // sites (0,1) of a two-site space is the operator itself
        assert!(embed_pair(&op, d, 2, 0, 1).max_abs_diff(&op) < 1e-15);
        let i3 = CMatrix::identity(3);
        assert!(embed_pair(&op, d, 3, 0, 1).max_abs_diff(&kron(&op, &i3)) < 1e-15);
        assert!(embed_pair(&op, d, 3, 1, 2).max_abs_diff(&kron(&i3, &op)) < 1e-15);
    }
}
