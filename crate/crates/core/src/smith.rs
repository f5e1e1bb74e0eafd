//! Smith normal form of small integer matrices and kernels of `c ↦ c·A (mod m)`.

use crate::arith::{gcd, rem};

/// Result of `P · A · Q = D` with `P`, `Q` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub p: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

/// Computes the Smith form of a square matrix. Entries must stay well inside `i64`;
/// this is only used on the 4x4 exponent matrices.
pub fn smith(a: &[Vec<i64>]) -> Smith {
    let n = a.len();
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut p = identity(n);
    let mut q = identity(n);

    for t in 0..n {
        // pick the smallest nonzero pivot in the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[i][j] != 0
                        && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            d.swap(t, bi);
            p.swap(t, bi);
            for row in d.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }

            let mut dirty = false;
            let piv = d[t][t];
            for i in t + 1..n {
                let f = d[i][t].div_euclid(piv);
                if f != 0 {
                    for j in 0..n {
                        d[i][j] -= f * d[t][j];
                        p[i][j] -= f * p[t][j];
                    }
                }
                dirty |= d[i][t] != 0;
            }
            for j in t + 1..n {
                let f = d[t][j].div_euclid(piv);
                if f != 0 {
                    for i in 0..n {
                        d[i][j] -= f * d[i][t];
                        q[i][j] -= f * q[i][t];
                    }
                }
                dirty |= d[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the rest of the block
            let mut fixed = true;
            'scan: for i in t + 1..n {
                for j in t + 1..n {
                    if d[i][j] % piv != 0 {
                        for k in 0..n {
                            d[t][k] += d[i][k];
                            p[t][k] += p[i][k];
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[t][t] < 0 {
            for j in 0..n {
                d[t][j] = -d[t][j];
                p[t][j] = -p[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| d[i][i]).collect();
    Smith { p, q, diag }
}

/// All row vectors `c ∈ (Z/m)^n` with `c·A ≡ 0 (mod m)`, in canonical residues.
pub fn left_kernel_mod(a: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let s = smith(a);
    // c = e·P with e_i·d_i ≡ 0, i.e. e_i a multiple of m / gcd(m, d_i)
    let steps: Vec<i64> = s.diag.iter().map(|&di| m / gcd(m, di)).collect();
    let counts: Vec<i64> = steps.iter().map(|&st| m / st).collect();
    let total: i64 = counts.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0i64; n];
    for _ in 0..total {
        let mut c = vec![0i64; n];
        for i in 0..n {
            let e = idx[i] * steps[i];
            if e != 0 {
                for (j, cj) in c.iter_mut().enumerate() {
                    *cj += e * s.p[i][j];
                }
            }
        }
        out.push(c.into_iter().map(|x| rem(x, m)).collect());
        for i in 0..n {
            idx[i] += 1;
            if idx[i] < counts[i] {
                break;
            }
            idx[i] = 0;
        }
    }
    out
}
