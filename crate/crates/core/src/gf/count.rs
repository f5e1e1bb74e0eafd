//! Point-counting kernels.

use super::auto::Automorphism;
use super::field::{Elt, Field, ONE, ZERO};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

/// Largest enumeration domain accepted by the brute-force engine.
pub const BRUTE_LIMIT: u128 = 10_000_000_000;

/// A polynomial with coefficients mapped into a fixed field.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub field: Arc<Field>,
    pub nvars: usize,
    terms: Vec<(Elt, Vec<(usize, u64)>)>,
}

impl Compiled {
    pub fn new(f: &MPoly, field: &Arc<Field>) -> Compiled {
        let mut terms = Vec::new();
        for (e, c) in &f.terms {
            let ce = field.from_big(c);
            if ce == ZERO {
                continue;
            }
            let vars: Vec<(usize, u64)> =
                e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k as u64)).collect();
            terms.push((ce, vars));
        }
        Compiled { field: field.clone(), nvars: f.nvars(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn eval(&self, x: &[Elt]) -> Elt {
        let f = &*self.field;
        let m = f.order();
        let mut acc = ZERO;
        'terms: for (c, vars) in &self.terms {
            let mut l = *c as u64;
            for &(i, k) in vars {
                let xi = x[i];
                if xi == ZERO {
                    continue 'terms;
                }
                l = (l + k * xi as u64) % m;
            }
            acc = f.add(acc, l as Elt);
        }
        acc
    }
}

fn check_domain(q: u64, n: usize) -> Result<()> {
    if (q as u128).checked_pow(n as u32).map_or(true, |v| v > BRUTE_LIMIT) {
        return Err(Error::DomainTooLarge(format!("{q}^{n} points exceed the brute-force bound {BRUTE_LIMIT}")));
    }
    Ok(())
}

/// Calls `visit` on every point of `dom^n`.
fn for_each_point(dom: &[Elt], n: usize, mut visit: impl FnMut(&[Elt])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut idx = vec![0usize; n];
    let mut pt: Vec<Elt> = vec![dom[0]; n];
    loop {
        visit(&pt);
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] < dom.len() {
                pt[i] = dom[idx[i]];
                break;
            }
            idx[i] = 0;
            pt[i] = dom[0];
            i += 1;
            if i == n {
                return;
            }
        }
    }
}

/// A variable whose terms involve no other variable, if any.
fn separable_var(f: &MPoly) -> Option<usize> {
    let n = f.nvars();
    (0..n).find(|&i| {
        let mut occurs = false;
        for e in f.terms.keys() {
            if e[i] > 0 {
                occurs = true;
                if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                    return false;
                }
            }
        }
        occurs
    })
}

/// `#{x ∈ F_q^n : f(x) = 0}`.
pub fn count_affine(f: &MPoly, field: &Arc<Field>) -> Result<u64> {
    let n = f.nvars();
    let q = field.q;
    let all: Vec<Elt> = field.elements().collect();
    if f.is_zero() {
        return Ok(q.pow(n as u32));
    }
    if let Some(i) = separable_var(f).filter(|_| n > 1) {
        // f = A(x_i) + R(rest): convolve the value distribution of A with R
        check_domain(q, n - 1)?;
        let mut a = MPoly::zero(&[f.vars[i].as_str()]);
        let rest_vars: Vec<&str> = f.vars.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.as_str()).collect();
        let mut r = MPoly::zero(&rest_vars);
        for (e, c) in &f.terms {
            if e[i] > 0 {
                a.add_term(vec![e[i]], c.clone());
            } else {
                let mut e2 = e.clone();
                e2.remove(i);
                r.add_term(e2, c.clone());
            }
        }
        let ca = Compiled::new(&a, field);
        let cr = Compiled::new(&r.neg(), field);
        let mut hist = vec![0u64; q as usize];
        for &y in &all {
            hist[field.index(ca.eval(&[y]))] += 1;
        }
        let mut total = 0u64;
        for_each_point(&all, n - 1, |pt| total += hist[field.index(cr.eval(pt))]);
        return Ok(total);
    }
    check_domain(q, n)?;
    let cf = Compiled::new(f, field);
    let mut total = 0u64;
    for_each_point(&all, n, |pt| {
        if cf.eval(pt) == ZERO {
            total += 1;
        }
    });
    Ok(total)
}

/// Same as [`count_affine`] without the separable fast path.
pub fn count_affine_brute(f: &MPoly, field: &Arc<Field>) -> Result<u64> {
    let n = f.nvars();
    check_domain(field.q, n)?;
    let all: Vec<Elt> = field.elements().collect();
    let cf = Compiled::new(f, field);
    let mut total = 0u64;
    for_each_point(&all, n, |pt| {
        if cf.eval(pt) == ZERO {
            total += 1;
        }
    });
    Ok(total)
}

/// Restriction to the chart `x_0 = … = x_{i-1} = 0, x_i = 1`.
fn chart(f: &MPoly, i: usize) -> Result<MPoly> {
    let mut g = f.clone();
    for j in (0..=i).rev() {
        let v = if j == i { BigInt::from(1) } else { BigInt::from(0) };
        let name = f.vars[j].clone();
        g = g.subst_int(&name, &v)?;
    }
    Ok(g)
}

/// Points of `{f = 0}` in `P^{n-1}(F_q)` by chart decomposition.
pub fn count_projective(f: &MPoly, field: &Arc<Field>) -> Result<u64> {
    if !f.is_homogeneous() {
        return Err(Error::Invalid("projective count needs a homogeneous polynomial".into()));
    }
    let mut total = 0;
    for i in 0..f.nvars() {
        total += count_affine(&chart(f, i)?, field)?;
    }
    Ok(total)
}

pub fn count_projective_brute(f: &MPoly, field: &Arc<Field>) -> Result<u64> {
    if !f.is_homogeneous() {
        return Err(Error::Invalid("projective count needs a homogeneous polynomial".into()));
    }
    let mut total = 0;
    for i in 0..f.nvars() {
        total += count_affine_brute(&chart(f, i)?, field)?;
    }
    Ok(total)
}

/// `Σ_{(x,y)} (1 + χ(f(x,y))) + boundary`: points of the affine double cover
/// `w² = f` plus a declared count at infinity.
pub fn count_double_cover(f: &MPoly, field: &Arc<Field>, boundary: u64) -> Result<u64> {
    if field.p == 2 {
        return Err(Error::Unsupported("double covers w² = f need odd characteristic".into()));
    }
    let n = f.nvars();
    check_domain(field.q, n)?;
    let all: Vec<Elt> = field.elements().collect();
    let cf = Compiled::new(f, field);
    let mut s: i64 = 0;
    for_each_point(&all, n, |pt| s += 1 + field.chi(cf.eval(pt)));
    Ok(s as u64 + boundary)
}

// ---------------------------------------------------------------------------
// linear algebra over a field

fn mat_vec(f: &Field, m: &[Vec<Elt>], v: &[Elt]) -> Vec<Elt> {
    m.iter().map(|row| row.iter().zip(v).fold(ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
}

fn mat_mul(f: &Field, a: &[Vec<Elt>], b: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n).map(|j| row.iter().enumerate().fold(ZERO, |acc, (k, &x)| f.add(acc, f.mul(x, b[k][j])))).collect()
        })
        .collect()
}

pub(crate) fn det(f: &Field, m: &[Vec<Elt>]) -> Elt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = ONE;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != ZERO) else { return ZERO };
        if r != c {
            a.swap(r, c);
            d = f.neg(d);
        }
        let piv = a[c][c];
        d = f.mul(d, piv);
        let pinv = f.inv(piv);
        for r in c + 1..n {
            if a[r][c] == ZERO {
                continue;
            }
            let factor = f.mul(a[r][c], pinv);
            for k in c..n {
                let t = f.mul(factor, a[c][k]);
                a[r][k] = f.sub(a[r][k], t);
            }
        }
    }
    d
}

/// An invertible `M` over `F_{q^N}` with `M^(q) = G·M`, where `N` is the
/// order of `G` (Hilbert 90 for `GL_n`). `big` must contain `F_{q^N}` and
/// `k` is the degree of `F_q` over `F_p`.
pub fn twisting_matrix(g: &Automorphism, big: &Field, k: u32, seed: u64) -> Vec<Vec<Elt>> {
    let n = g.dim();
    let order = g.order() as u32;
    assert_eq!(big.k, k * order, "twisting field has the wrong degree");
    let gi = g.inverse();
    let gpow: Vec<Vec<Vec<Elt>>> =
        (0..order).map(|i| gi.pow(i as u64).matrix.iter().map(|r| r.iter().map(|&c| big.from_int(c)).collect()).collect()).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let a: Vec<Vec<Elt>> = (0..n)
            .map(|_| (0..n).map(|_| if rng.gen_range(0..big.q) == 0 { ZERO } else { rng.gen_range(0..big.order()) as Elt }).collect())
            .collect();
        let mut m = vec![vec![ZERO; n]; n];
        for i in 0..order {
            let ai: Vec<Vec<Elt>> = a.iter().map(|r| r.iter().map(|&x| big.frob(x, k * i)).collect()).collect();
            let t = mat_mul(big, &gpow[i as usize], &ai);
            for r in 0..n {
                for c in 0..n {
                    m[r][c] = big.add(m[r][c], t[r][c]);
                }
            }
        }
        if det(big, &m) != ZERO {
            return m;
        }
    }
}

/// Normalized representatives of `P^{n-1}` over the given coordinate domain.
fn projective_points(dom: &[Elt], n: usize, mut visit: impl FnMut(&[Elt])) {
    for lead in 0..n {
        let free = n - lead - 1;
        let mut pt = vec![ZERO; n];
        pt[lead] = ONE;
        for_each_point(dom, free, |tail| {
            pt[lead + 1..].copy_from_slice(tail);
            visit(&pt);
        });
    }
}

/// `#{P ∈ P^{n-1}(F̄_q) : f(P) = 0, Frob_q(P) = G·P}` via the twisting matrix:
/// such points are exactly `M·Q` with `Q ∈ P^{n-1}(F_q)`.
pub fn count_twisted_h90(f: &MPoly, g: &Automorphism, p: u64, k: u32) -> Result<u64> {
    if !f.is_homogeneous() {
        return Err(Error::Invalid("twisted projective count needs a homogeneous polynomial".into()));
    }
    let big = Field::get(p, k * g.order() as u32)?;
    check_domain(p.pow(k), f.nvars())?;
    let m = twisting_matrix(g, &big, k, 0x7715 ^ p);
    let cf = Compiled::new(f, &big);
    let dom = big.subfield_elements(k);
    let mut total = 0;
    projective_points(&dom, f.nvars(), |qpt| {
        if cf.eval(&mat_vec(&big, &m, qpt)) == ZERO {
            total += 1;
        }
    });
    Ok(total)
}

/// Artin–Schreier shape `c·(y^p − x^{p−1}y) − S(x, rest)`: returns `c` and `S`.
fn split_as(f: &MPoly, x: usize, y: usize, p: u64) -> Option<(BigInt, MPoly)> {
    let n = f.nvars();
    let mut ey = vec![0u32; n];
    ey[y] = p as u32;
    let mut exy = vec![0u32; n];
    exy[x] = p as u32 - 1;
    exy[y] = 1;
    let c = f.terms.get(&ey)?.clone();
    if f.terms.get(&exy) != Some(&-c.clone()) {
        return None;
    }
    let mut s = f.neg();
    s.add_term(ey, c.clone());
    s.add_term(exy, -c.clone());
    if s.terms.keys().any(|e| e[y] > 0) {
        return None;
    }
    Some((c, s))
}

/// Twisted count for `c·(y^p − x^{p−1}y) = S(x, rest)` in `P^{n-1}` when `G`
/// fixes `x`, sends `y ↦ y + t·x` with `t ∈ F_p`, and acts linearly on the
/// remaining coordinates preserving `S`.
///
/// On `x = 1` the other coordinates range over `M'·F_q^m`, `σ = S/c` lies in
/// `F_q`, and the `p` solutions of `y^p − y = σ` satisfy `y^q − y = Tr(σ)`;
/// so each such point contributes `p` exactly when `Tr(σ) = t`. The stratum
/// `x = 0` is counted by [`count_twisted_h90`].
pub fn count_twisted_as(f: &MPoly, x: usize, y: usize, g: &Automorphism, k: u32) -> Result<u64> {
    let p = g.p;
    let n = f.nvars();
    let (c, s) = split_as(f, x, y, p).ok_or_else(|| Error::Unsupported("not of Artin–Schreier shape".into()))?;
    let entry = |i: usize, j: usize| g.matrix[i][j].rem_euclid(p as i64);
    let shape_ok = (0..n).all(|j| entry(x, j) == (j == x) as i64)
        && (0..n).all(|j| j == x || entry(y, j) == (j == y) as i64)
        && (0..n).filter(|&i| i != x && i != y).all(|i| entry(i, x) == 0 && entry(i, y) == 0);
    if !shape_ok {
        return Err(Error::Unsupported("automorphism does not have the translation shape".into()));
    }
    let t = g.matrix[y][x].rem_euclid(p as i64) as u64;
    let rest: Vec<usize> = (0..n).filter(|&i| i != x && i != y).collect();
    let gr = g.restrict(&rest);
    let order = gr.order() as u32;
    let big = Field::get(p, k * order)?;
    check_domain(p.pow(k), rest.len())?;
    let m = twisting_matrix(&gr, &big, k, 0x45 ^ p);
    // S(1, rest)/c
    let sx = s.subst_int(&f.vars[x], &BigInt::from(1))?.subst_int(&f.vars[y], &BigInt::from(0))?;
    let cs = Compiled::new(&sx, &big);
    let cinv = big.inv(big.from_big(&c));
    let ninv = crate::arith::inv_mod(order as i64, p as i64)
        .ok_or_else(|| Error::Unsupported("twist order divisible by p".into()))? as u64;
    let dom = big.subfield_elements(k);
    let mut hits = 0u64;
    let mut bad = false;
    for_each_point(&dom, rest.len(), |u| {
        let v = mat_vec(&big, &m, u);
        let sigma = big.mul(cs.eval(&v), cinv);
        if !big.in_subfield(sigma, k) {
            bad = true;
        }
        if big.trace(sigma) * ninv % p == t {
            hits += 1;
        }
    });
    if bad {
        return Err(Error::Inconsistent("S is not invariant under the twist".into()));
    }
    // stratum x = 0
    let f0 = f.subst_int(&f.vars[x], &BigInt::from(0))?;
    if f0.is_zero() {
        return Err(Error::Degenerate("hyperplane x = 0 lies on the surface".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != x).collect();
    let g0 = g.restrict(&keep);
    let boundary = count_twisted_h90(&f0, &g0, p, k)?;
    Ok(p * hits + boundary)
}

/// Twisted count dispatch: Artin–Schreier fast path when `(x, y)` is given
/// and applicable, otherwise the generic twisting-matrix enumeration.
pub fn count_twisted(f: &MPoly, g: &Automorphism, k: u32, as_vars: Option<(usize, usize)>) -> Result<u64> {
    if let Some((x, y)) = as_vars {
        match count_twisted_as(f, x, y, g, k) {
            Err(Error::Unsupported(_)) => {}
            other => return other,
        }
    }
    if g.is_identity() {
        let field = Field::get(g.p, k)?;
        return count_projective(f, &field);
    }
    count_twisted_h90(f, g, g.p, k)
}

/// `tr(Frob | H²) = N − 1 − q² + correction` for surfaces with `b₁ = b₃ = 0`.
pub fn h2_trace(n: u64, q: u64, correction: i64) -> i64 {
    n as i64 - 1 - (q * q) as i64 + correction
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        let f2 = Field::get(2, 2).unwrap();
        assert_eq!(count_affine(&MPoly::parse_auto("x").unwrap(), &f2).unwrap(), 1);
        let f3 = Field::get(3, 1).unwrap();
        // w² = x over F_3: x=0 → 1, x=1 → 2, x=2 → 0
        assert_eq!(count_double_cover(&MPoly::parse_auto("x").unwrap(), &f3, 0).unwrap(), 3);
        let f5 = Field::get(5, 1).unwrap();
        let e = MPoly::parse("y^2 - x^3 - x", &["x", "y"]).unwrap();
        assert_eq!(count_affine(&e, &f5).unwrap(), count_affine_brute(&e, &f5).unwrap());
    }

    #[test]
    fn fermat_over_f2_is_a_plane() {
        let f2 = Field::get(2, 1).unwrap();
        let f = MPoly::parse("x^5+y^5+z^5+w^5", &["x", "y", "z", "w"]).unwrap();
        assert_eq!(count_projective(&f, &f2).unwrap(), 7);
    }

    #[test]
    fn untwisted_h90_is_plain_count() {
        let f = MPoly::parse("x^2 + y^2 - z^2", &["x", "y", "z"]).unwrap();
        let id = Automorphism::identity(3, 7);
        let field = Field::get(7, 1).unwrap();
        assert_eq!(count_twisted_h90(&f, &id, 7, 1).unwrap(), count_projective(&f, &field).unwrap());
    }
}
