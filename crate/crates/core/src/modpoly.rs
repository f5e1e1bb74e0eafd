//! Dense univariate polynomials over `F_ℓ` for word-size primes `ℓ < 2^63`.
//! Coefficients are ascending; the zero polynomial is the empty vector.

use crate::arith::{mul_mod, pow_mod};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Poly = Vec<u64>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> isize {
    f.len() as isize - 1
}

pub fn inv(a: u64, l: u64) -> u64 {
    debug_assert!(a % l != 0);
    pow_mod(a, l - 2, l)
}

pub fn add(f: &[u64], g: &[u64], l: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out[i] = ((a as u128 + b as u128) % l as u128) as u64;
    }
    trim(out)
}

pub fn sub(f: &[u64], g: &[u64], l: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out[i] = ((a as u128 + l as u128 - b as u128) % l as u128) as u64;
    }
    trim(out)
}

pub fn scale(f: &[u64], c: u64, l: u64) -> Poly {
    trim(f.iter().map(|&a| mul_mod(a, c, l)).collect())
}

pub fn mul(f: &[u64], g: &[u64], l: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; f.len() + g.len() - 1];
    let lm = l as u128;
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u128 * b as u128) % lm;
        }
    }
    trim(out.into_iter().map(|x| x as u64).collect())
}

/// Quotient and remainder; `g` must be nonzero.
pub fn divrem(f: &[u64], g: &[u64], l: u64) -> (Poly, Poly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = f.to_vec();
    if r.len() < g.len() {
        return (Vec::new(), trim(r));
    }
    let dg = g.len() - 1;
    let li = inv(*g.last().unwrap(), l);
    let mut q = vec![0u64; r.len() - dg];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + dg], li, l);
        q[k] = c;
        if c != 0 {
            for (j, &b) in g.iter().enumerate() {
                r[k + j] = ((r[k + j] as u128 + l as u128 - (c as u128 * b as u128) % l as u128) % l as u128) as u64;
            }
        }
    }
    r.truncate(dg);
    (trim(q), trim(r))
}

pub fn rem(f: &[u64], g: &[u64], l: u64) -> Poly {
    divrem(f, g, l).1
}

pub fn monic(f: &[u64], l: u64) -> Poly {
    match f.last() {
        None => Vec::new(),
        Some(&c) => scale(f, inv(c, l), l),
    }
}

pub fn gcd(f: &[u64], g: &[u64], l: u64) -> Poly {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, l);
        a = b;
        b = r;
    }
    monic(&a, l)
}

/// Extended gcd: `s·f + t·g = gcd` (monic).
pub fn xgcd(f: &[u64], g: &[u64], l: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(f.to_vec()), trim(g.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, l);
        let s2 = sub(&s0, &mul(&q, &s1, l), l);
        let t2 = sub(&t0, &mul(&q, &t1, l), l);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let c = inv(*r0.last().expect("gcd of zeros"), l);
    (scale(&r0, c, l), scale(&s0, c, l), scale(&t0, c, l))
}

pub fn derivative(f: &[u64], l: u64) -> Poly {
    trim(f.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % l, l)).collect())
}

pub fn eval(f: &[u64], x: u64, l: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &a| ((mul_mod(acc, x, l) as u128 + a as u128) % l as u128) as u64)
}

pub fn powmod(base: &[u64], mut e: u128, m: &[u64], l: u64) -> Poly {
    let mut r = vec![1u64];
    let mut b = rem(base, m, l);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, l), m, l);
        }
        b = rem(&mul(&b, &b, l), m, l);
        e >>= 1;
    }
    rem(&r, m, l)
}

pub fn powmod_big(base: &[u64], e: &num_bigint::BigUint, m: &[u64], l: u64) -> Poly {
    let mut r = vec![1u64];
    let b = rem(base, m, l);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, l), m, l);
        if e.bit(i) {
            r = rem(&mul(&r, &b, l), m, l);
        }
    }
    rem(&r, m, l)
}

/// Resultant of two polynomials over `F_ℓ` by the Euclidean algorithm.
pub fn resultant(f: &[u64], g: &[u64], l: u64) -> u64 {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut res = 1u64;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return mul_mod(res, pow_mod(b[0], da as u64, l), l);
        }
        let r = rem(&a, &b, l);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        // res(a, b) = (-1)^{da·db} lc(b)^{da - dr} res(b, r)
        if (da * db) % 2 == 1 {
            res = (l - res) % l;
        }
        res = mul_mod(res, pow_mod(*b.last().unwrap(), (da - dr) as u64, l), l);
        a = b;
        b = r;
    }
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[u64], ys: &[u64], l: u64) -> Poly {
    let n = xs.len();
    // Newton divided differences
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (coef[i] + l - coef[i - 1]) % l;
            let den = (xs[i] + l - xs[i - j]) % l;
            coef[i] = mul_mod(num, inv(den, l), l);
        }
    }
    let mut out: Poly = Vec::new();
    for i in (0..n).rev() {
        // out = out·(x - xs[i]) + coef[i]
        let shifted = mul(&out, &[(l - xs[i] % l) % l, 1], l);
        out = add(&shifted, &[coef[i]], l);
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub fn ddf(f: &[u64], l: u64) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut f = monic(f, l);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let n = f.len() - 1;
            out.push((n, f));
            break;
        }
        h = powmod(&h, l as u128, &f, l);
        let g = gcd(&sub(&h, &x, l), &f, l);
        if g.len() > 1 {
            out.push((d, g.clone()));
            f = divrem(&f, &g, l).0;
            h = rem(&h, &f, l);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) for odd `ℓ`; deterministic seed.
pub fn edf(f: &[u64], d: usize, l: u64, rng: &mut StdRng) -> Vec<Poly> {
    let n = f.len() - 1;
    if n == d {
        return vec![monic(f, l)];
    }
    assert!(l % 2 == 1, "equal-degree splitting needs odd characteristic");
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..l)).collect());
        if a.len() < 2 {
            continue;
        }
        let e = (num_bigint::BigUint::from(l).pow(d as u32) - 1u32) / 2u32;
        let b = sub(&powmod_big(&a, &e, f, l), &[1], l);
        let g = gcd(&b, f, l);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, l).0;
            let mut out = edf(&g, d, l, rng);
            out.extend(edf(&h, d, l, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted.
pub fn factor_squarefree(f: &[u64], l: u64) -> Vec<Poly> {
    let mut rng = StdRng::seed_from_u64(0x5eed ^ l);
    let mut out = Vec::new();
    for (d, g) in ddf(f, l) {
        out.extend(edf(&g, d, l, &mut rng));
    }
    out.sort();
    out
}

pub fn is_squarefree(f: &[u64], l: u64) -> bool {
    let d = derivative(f, l);
    !d.is_empty() && gcd(f, &d, l).len() == 1
}

/// Irreducibility over `F_ℓ` via distinct-degree factorization (Rabin's criterion).
pub fn is_irreducible(f: &[u64], l: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    if f.len() == 2 {
        return true;
    }
    if !is_squarefree(&f, l) {
        return false;
    }
    let parts = ddf(&f, l);
    parts.len() == 1 && parts[0].0 == f.len() - 1
}
