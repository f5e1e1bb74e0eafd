//! Integer and rational univariate polynomials, with factorization over `Q`
//! (modular factorization, Hensel lifting, subset recombination).

use crate::arith::is_prime;
use crate::modpoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ascending coefficients; the zero polynomial is empty.
pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn from_i64(c: &[i64]) -> ZPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn qtrim(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn add(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| f.get(i).cloned().unwrap_or_default() + g.get(i).cloned().unwrap_or_default())
        .collect())
}

pub fn sub(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| f.get(i).cloned().unwrap_or_default() - g.get(i).cloned().unwrap_or_default())
        .collect())
}

pub fn mul(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

pub fn scale(f: &[BigInt], c: &BigInt) -> ZPoly {
    trim(f.iter().map(|a| a * c).collect())
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if f.last().unwrap().is_negative() { -c } else { c };
    f.iter().map(|a| a / &c).collect()
}

pub fn derivative(f: &[BigInt]) -> ZPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

/// `f(c·λ)`.
pub fn rescale(f: &[BigInt], c: &BigInt) -> ZPoly {
    let mut pw = BigInt::one();
    let mut out = Vec::with_capacity(f.len());
    for a in f {
        out.push(a * &pw);
        pw *= c;
    }
    trim(out)
}

/// Exact division over `Z`; `None` when `g` does not divide `f` in `Z[x]`.
pub fn div_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = trim(f.to_vec());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < g.len() {
        return None;
    }
    let dg = g.len() - 1;
    let lc = g.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, m) = r[k + dg].div_rem(lc);
        if !m.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, b) in g.iter().enumerate() {
                r[k + j] -= &c * b;
            }
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

pub fn to_q(f: &[BigInt]) -> QPoly {
    f.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Clears denominators and returns the primitive integer multiple.
pub fn q_to_primitive(f: &[BigRational]) -> ZPoly {
    let l = f.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive(&trim(f.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()))
}

pub fn q_divrem(f: &[BigRational], g: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!g.is_empty());
    let mut r = qtrim(f.to_vec());
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let dg = g.len() - 1;
    let lc = g.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - dg];
    for k in (0..q.len()).rev() {
        let c = &r[k + dg] / &lc;
        if !c.is_zero() {
            for (j, b) in g.iter().enumerate() {
                let v = &r[k + j] - &c * b;
                r[k + j] = v;
            }
        }
        q[k] = c;
    }
    r.truncate(dg);
    (qtrim(q), qtrim(r))
}

/// Primitive gcd over `Q`.
pub fn gcd(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (to_q(&primitive(f)), to_q(&primitive(g)));
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = b;
        b = to_q(&q_to_primitive(&r));
    }
    q_to_primitive(&a)
}

fn q_derivative(f: &[BigRational]) -> QPoly {
    qtrim(f.iter().enumerate().skip(1).map(|(i, a)| a * BigRational::from_integer(BigInt::from(i))).collect())
}

fn q_monic(f: QPoly) -> QPoly {
    match f.last().cloned() {
        None => f,
        Some(c) => f.into_iter().map(|a| a / &c).collect(),
    }
}

fn q_gcd(f: &[BigRational], g: &[BigRational]) -> QPoly {
    let (mut a, mut b) = (qtrim(f.to_vec()), qtrim(g.to_vec()));
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = b;
        b = q_monic(r);
    }
    q_monic(a)
}

/// Yun's squarefree decomposition: `f = c·∏ a_i^i` with primitive `a_i`.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let f = q_monic(to_q(&trim(f.to_vec())));
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let fp = q_derivative(&f);
    let a = q_gcd(&f, &fp);
    let mut b = q_divrem(&f, &a).0;
    let c = q_divrem(&fp, &a).0;
    let mut d = qsub(&c, &q_derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = q_gcd(&b, &d);
        if a.len() > 1 {
            out.push((q_to_primitive(&a), i));
        }
        b = q_divrem(&b, &a).0;
        let c = q_divrem(&d, &a).0;
        d = qsub(&c, &q_derivative(&b));
        i += 1;
    }
    out
}

fn qsub(f: &[BigRational], g: &[BigRational]) -> QPoly {
    let n = f.len().max(g.len());
    qtrim((0..n)
        .map(|i| f.get(i).cloned().unwrap_or_else(BigRational::zero) - g.get(i).cloned().unwrap_or_else(BigRational::zero))
        .collect())
}

fn symmod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn reduce_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_small(f: &[BigInt], l: u64) -> modpoly::Poly {
    let lb = BigInt::from(l);
    modpoly::trim(f.iter().map(|c| c.mod_floor(&lb).to_u64().unwrap()).collect())
}

fn from_small(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn mul_mod(f: &[BigInt], g: &[BigInt], m: &BigInt) -> ZPoly {
    reduce_mod(&mul(f, g), m)
}

/// One factor pair `f ≡ g·h (mod ℓ^k)` with `g` monic, lifted to `ℓ^K`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], l: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let (one, s, t) = modpoly::xgcd(g, h, l);
    debug_assert_eq!(one, vec![1]);
    let lb = BigInt::from(l);
    let mut gz = from_small(g);
    let mut hz = from_small(h);
    let mut pk = lb.clone();
    while &pk < target {
        let e = sub(f, &mul(&gz, &hz));
        let e: ZPoly = e.iter().map(|c| {
            debug_assert!((c % &pk).is_zero());
            c / &pk
        }).collect();
        let e = to_small(&e, l);
        // σ g + τ h ≡ e with deg τ < deg g
        let te = modpoly::mul(&t, &e, l);
        let (q, r) = modpoly::divrem(&te, g, l);
        let se = modpoly::add(&modpoly::mul(&s, &e, l), &modpoly::mul(&q, h, l), l);
        let next = &pk * &lb;
        gz = reduce_mod(&add(&gz, &scale(&from_small(&r), &pk)), &next);
        hz = reduce_mod(&add(&hz, &scale(&from_small(&se), &pk)), &next);
        pk = next;
    }
    (gz, hz)
}

fn hensel_multi(f: &[BigInt], factors: &[modpoly::Poly], l: u64, target: &BigInt, m: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modpow(&(m / BigInt::from(l) * BigInt::from(l - 1) - BigInt::one()), m);
        return vec![mul_mod(f, &[inv], m)];
    }
    let g = &factors[0];
    let lcf = to_small(&f[f.len() - 1..], l)[0];
    let mut h = vec![lcf];
    for fi in &factors[1..] {
        h = modpoly::mul(&h, fi, l);
    }
    let (gz, hz) = hensel_pair(f, g, &h, l, target);
    let mut out = vec![gz];
    out.extend(hensel_multi(&hz, &factors[1..], l, target, m));
    out
}

/// Irreducible factors over `Z` of a nonzero polynomial, as primitive polynomials
/// with multiplicities. Constant content is dropped.
pub fn factor(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let mut out = Vec::new();
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "factor of zero polynomial");
    for (a, e) in squarefree_decomposition(&f) {
        // strip powers of x first
        let mut a = a;
        let k = a.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            out.push((vec![BigInt::zero(), BigInt::one()], e * k));
            a.drain(..k);
        }
        if a.len() > 1 {
            for g in factor_squarefree(&a) {
                out.push((g, e));
            }
        }
    }
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)));
    out
}

/// Factors of a primitive squarefree polynomial with nonzero constant term.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n == 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    // choose the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<modpoly::Poly>)> = None;
    let mut l = 3u64;
    let mut tried = 0;
    while tried < 6 {
        l += 2;
        if !is_prime(l) || (&lc % BigInt::from(l)).is_zero() {
            continue;
        }
        let fl = to_small(&f, l);
        if fl.len() != f.len() || !modpoly::is_squarefree(&fl, l) {
            continue;
        }
        tried += 1;
        let fs = modpoly::factor_squarefree(&fl, l);
        if best.as_ref().map_or(true, |b| fs.len() < b.1.len()) {
            best = Some((l, fs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (l, mods) = best.expect("no usable prime");
    if mods.len() == 1 {
        return vec![f];
    }
    // Mignotte-type bound on factor coefficients, times the leading coefficient
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << (n + 1)) * BigInt::from(n as u64 + 1) * maxc;
    let mut m = BigInt::from(l);
    while m <= bound {
        m *= l;
    }
    let lifted = hensel_multi(&f, &mods, l, &m, &m);

    let mut rest = f.clone();
    let mut pool: Vec<ZPoly> = lifted;
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let idx: Vec<usize> = (0..pool.len()).collect();
        for subset in combinations(&idx, s) {
            let lcr = rest.last().unwrap().clone();
            let mut g = vec![lcr.clone()];
            for &i in &subset {
                g = mul_mod(&g, &pool[i], &m);
            }
            let g: ZPoly = trim(g.iter().map(|c| symmod(c, &m)).collect());
            let g = primitive(&g);
            if let Some(q) = div_exact(&rest, &g) {
                out.push(g);
                rest = primitive(&q);
                let keep: Vec<ZPoly> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p.clone())
                    .collect();
                pool = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

pub fn is_irreducible(f: &[BigInt]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let fs = factor(&f);
    fs.len() == 1 && fs[0].1 == 1
}

/// `Φ_d` by repeated division of `x^d − 1`.
pub fn cyclotomic(d: u64) -> ZPoly {
    let mut f = vec![BigInt::zero(); d as usize + 1];
    f[0] = BigInt::from(-1);
    f[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            f = div_exact(&f, &cyclotomic(e)).expect("cyclotomic division");
        }
    }
    f
}

/// Squarefree part of an integer (sign kept).
pub fn squarefree_int(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

pub fn parse_coeffs(c: &[String]) -> crate::Result<ZPoly> {
    c.iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|e| crate::Error::Invalid(format!("coefficient {s}: {e}"))))
        .collect::<crate::Result<Vec<_>>>()
        .map(trim)
}

pub fn to_strings(f: &[BigInt]) -> Vec<String> {
    f.iter().map(|c| c.to_string()).collect()
}

/// Human-readable form, descending powers of `var`.
pub fn display(f: &[BigInt], var: &str) -> String {
    if f.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if a.is_one() && i > 0 {
            s.push_str(&mono);
        } else if i == 0 {
            s.push_str(&a.to_string());
        } else {
            s.push_str(&format!("{a}{mono}"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        from_i64(c)
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), z(&[-1, 1]));
        assert_eq!(cyclotomic(5), z(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(24), z(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(105).iter().filter(|c| c == &&BigInt::from(-2)).count(), 2);
    }

    #[test]
    fn factor_products() {
        // (x^2+1)(x^3-2)(x-1)^2 (2x+3)
        let f = mul(&mul(&mul(&z(&[1, 0, 1]), &z(&[-2, 0, 0, 1])), &mul(&z(&[-1, 1]), &z(&[-1, 1]))), &z(&[3, 2]));
        let fs = factor(&f);
        assert_eq!(fs, vec![(z(&[-1, 1]), 2), (z(&[3, 2]), 1), (z(&[1, 0, 1]), 1), (z(&[-2, 0, 0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // minimal polynomial of √2+√3+√5: splits into many factors mod every prime
        let f = z(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(is_irreducible(&f));
        let g = mul(&z(&[1, 0, -10, 0, 1]), &z(&[-7, 0, 1]));
        assert_eq!(factor(&g).len(), 2);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_int(&BigInt::from(-76)), BigInt::from(-19));
        assert_eq!(squarefree_int(&BigInt::from(72)), BigInt::from(2));
    }
}
