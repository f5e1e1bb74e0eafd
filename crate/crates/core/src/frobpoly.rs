//! Frobenius characteristic polynomials from traces.
//!
//! Polynomials are carried as elementary symmetric functions `e_0 = 1, e_1, …`
//! of their roots, so `χ(λ) = Σ (−1)^i e_i λ^{d−i}`.

use crate::cyclo::{galois_group, CycInt, CycIntPoly};
use crate::error::{Error, Result};
use crate::zpoly::{self, QPoly, ZPoly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Newton's identities: `e_0..e_k` from power sums `t_1..t_k`.
pub fn traces_to_elementary(n: u64, traces: &[CycInt]) -> Result<Vec<CycInt>> {
    let mut e = vec![CycInt::one(n)];
    for i in 1..=traces.len() {
        let mut acc = CycInt::zero(n);
        for r in 1..=i {
            let term = e[i - r].mul(&traces[r - 1]);
            acc = if r % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        let ei = acc
            .div_int(&BigInt::from(i))
            .ok_or_else(|| Error::Inconsistent(format!("e_{i} = ({acc})/{i} is not integral")))?;
        e.push(ei);
    }
    Ok(e)
}

/// Power sums `t_1..t_k` of the roots described by `e` (`e_i = 0` past the degree).
pub fn elementary_to_traces(e: &[CycInt], k: usize) -> Vec<CycInt> {
    let n = e[0].n;
    let get = |i: usize| e.get(i).cloned().unwrap_or_else(|| CycInt::zero(n));
    let mut t: Vec<CycInt> = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc = get(i).scale(&BigInt::from(i));
        for r in 1..i {
            let term = get(i - r).mul(&t[r - 1]);
            acc = if r % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
        }
        t.push(if i % 2 == 1 { acc } else { acc.neg() });
    }
    t
}

/// `χ(λ) = Σ (−1)^i e_i λ^{d−i}` with `d = e.len() − 1`.
pub fn poly_from_elementary(e: &[CycInt]) -> CycIntPoly {
    let d = e.len() - 1;
    let n = e[0].n;
    let mut coeffs = vec![CycInt::zero(n); d + 1];
    for (i, ei) in e.iter().enumerate() {
        coeffs[d - i] = if i % 2 == 0 { ei.clone() } else { ei.neg() };
    }
    CycIntPoly { n, coeffs }
}

pub fn elementary_from_poly(f: &CycIntPoly) -> Vec<CycInt> {
    let d = f.degree();
    (0..=d).map(|i| if i % 2 == 0 { f.coeffs[d - i].clone() } else { f.coeffs[d - i].neg() }).collect()
}

/// Coefficients forced by the traces: `e_0..e_k`, with `k ≤ dim`.
pub fn traces_to_coeffs(n: u64, traces: &[CycInt], dim: usize) -> Result<Vec<CycInt>> {
    if traces.len() > dim {
        return Err(Error::Invalid(format!("{} traces for a {dim}-dimensional space", traces.len())));
    }
    traces_to_elementary(n, traces)
}

/// Power sums of an integer polynomial's roots.
pub fn int_traces(f: &[BigInt], k: usize) -> Vec<BigInt> {
    let p = CycIntPoly::from_int_poly(1, f);
    elementary_to_traces(&elementary_from_poly(&p), k).into_iter().map(|t| t.c[0].clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// Roots stable under `α ↦ q²/α`.
    SelfDual,
    /// `χ` and its complex conjugate are exchanged by `α ↦ q²/α`.
    Conjugate,
}

#[derive(Clone, Debug)]
pub struct CharpolyProblem {
    pub n: u64,
    pub dim: usize,
    /// Root modulus (`q` for weight two, so roots satisfy `|α|² = q²`).
    pub q: BigInt,
    pub traces: Vec<CycInt>,
    pub pairing: Pairing,
    /// `Some(±1)` when the sign of the functional equation is known.
    pub sign: Option<i8>,
}

impl CharpolyProblem {
    pub fn integral(dim: usize, q: i64, traces: &[i64]) -> Self {
        CharpolyProblem {
            n: 1,
            dim,
            q: q.into(),
            traces: traces.iter().map(|&t| CycInt::from_int(1, t)).collect(),
            pairing: Pairing::SelfDual,
            sign: None,
        }
    }

    /// Weil bound `|t_i| ≤ dim·q^i`, checked on the complex embedding.
    pub fn check_weil(&self) -> Result<()> {
        let q = self.q.to_f64().unwrap();
        for (i, t) in self.traces.iter().enumerate() {
            let (re, im) = t.to_complex();
            let bound = self.dim as f64 * q.powi(i as i32 + 1) * (1.0 + 1e-9);
            if re.hypot(im) > bound {
                return Err(Error::Inconsistent(format!("trace t_{} = {t} exceeds the Weil bound", i + 1)));
            }
        }
        Ok(())
    }
}

/// A completed candidate with the sign of its functional equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub poly: CycIntPoly,
    pub sign: Option<i8>,
}

/// All completions consistent with the traces and the functional equation.
pub fn duality_complete(p: &CharpolyProblem) -> Result<Vec<Completion>> {
    p.check_weil()?;
    let e = traces_to_coeffs(p.n, &p.traces, p.dim)?;
    match p.pairing {
        Pairing::SelfDual => {
            let signs: Vec<i8> = match p.sign {
                Some(s) => vec![s],
                None => vec![1, -1],
            };
            let mut out = Vec::new();
            let mut last_err = None;
            for s in signs {
                match complete_self_dual(&e, p.dim, &p.q, s) {
                    Ok(f) => out.push(Completion { poly: f, sign: Some(s) }),
                    Err(err) => last_err = Some(err),
                }
            }
            if out.is_empty() {
                return Err(last_err.unwrap());
            }
            Ok(out)
        }
        Pairing::Conjugate => {
            let f = complete_paired(&e, p.dim, &p.q)?;
            Ok(vec![Completion { poly: f, sign: None }])
        }
    }
}

/// `e_{d−i} = ε q^{d−2i} e_i`.
pub fn complete_self_dual(known: &[CycInt], d: usize, q: &BigInt, sign: i8) -> Result<CycIntPoly> {
    let k = known.len() - 1;
    let mut e: Vec<Option<CycInt>> = vec![None; d + 1];
    for (i, c) in known.iter().enumerate() {
        e[i] = Some(c.clone());
    }
    let eps = BigInt::from(sign);
    for m in 0..=d {
        let partner = d - m;
        if partner > k {
            continue;
        }
        let src = known[partner].clone();
        let val = if 2 * m >= d {
            Some(src.scale(&(&eps * q.pow((2 * m - d) as u32))))
        } else {
            src.scale(&eps).div_int(&q.pow((d - 2 * m) as u32))
        };
        let val = val.ok_or_else(|| {
            Error::Inconsistent(format!("sign {sign}: e_{m} would be non-integral"))
        })?;
        match &e[m] {
            Some(old) if *old != val => {
                return Err(Error::Inconsistent(format!("sign {sign}: e_{m} = {old} but duality forces {val}")))
            }
            _ => e[m] = Some(val),
        }
    }
    if let Some(m) = e.iter().position(|c| c.is_none()) {
        return Err(Error::Unsupported(format!("e_{m} is not determined by {k} traces in dimension {d}")));
    }
    Ok(poly_from_elementary(&e.into_iter().map(Option::unwrap).collect::<Vec<_>>()))
}

/// `e_d·conj(e_i) = q^{2i} e_{d−i}` with `|e_d|² = q^{2d}`.
pub fn complete_paired(known: &[CycInt], d: usize, q: &BigInt) -> Result<CycIntPoly> {
    let k = known.len() - 1;
    let top = if k == d {
        known[d].clone()
    } else {
        let j = (0..=k)
            .filter(|&j| j <= d && d - j <= k && !known[j].is_zero())
            .max()
            .ok_or_else(|| Error::Unsupported(format!("cannot fix e_{d} from {k} traces")))?;
        known[d - j]
            .scale(&q.pow(2 * j as u32))
            .div_exact(&known[j].conj())
            .ok_or_else(|| Error::Inconsistent(format!("e_{d} = q^{}·e_{}/conj(e_{j}) is not integral", 2 * j, d - j)))?
    };
    if top.mul(&top.conj()).as_int() != Some(q.pow(2 * d as u32)) {
        return Err(Error::Inconsistent(format!("|e_{d}|² ≠ q^{}", 2 * d)));
    }
    let mut e: Vec<Option<CycInt>> = vec![None; d + 1];
    for (i, c) in known.iter().enumerate() {
        e[i] = Some(c.clone());
    }
    e[d] = Some(top.clone());
    for i in 0..=k.min(d) {
        let val = top
            .mul(&known[i].conj())
            .div_int(&q.pow(2 * i as u32))
            .ok_or_else(|| Error::Inconsistent(format!("e_{} is not integral", d - i)))?;
        match &e[d - i] {
            Some(old) if *old != val => {
                return Err(Error::Inconsistent(format!("e_{} = {old} but the pairing forces {val}", d - i)))
            }
            _ => e[d - i] = Some(val),
        }
    }
    if let Some(m) = e.iter().position(|c| c.is_none()) {
        return Err(Error::Unsupported(format!("e_{m} is not determined by {k} traces in dimension {d}")));
    }
    Ok(poly_from_elementary(&e.into_iter().map(Option::unwrap).collect::<Vec<_>>()))
}

/// Checks the pairing identity on a complete polynomial.
pub fn is_paired(f: &CycIntPoly, q: &BigInt) -> bool {
    let e = elementary_from_poly(f);
    let d = e.len() - 1;
    (0..=d).all(|i| e[d].mul(&e[i].conj()) == e[d - i].scale(&q.pow(2 * i as u32)))
}

/// Sign `ε` with `e_{d−i} = ε q^{d−2i} e_i` for an integer polynomial, if any.
pub fn self_dual_sign(f: &[BigInt], q: &BigInt) -> Option<i8> {
    let p = CycIntPoly::from_int_poly(1, f);
    let e = elementary_from_poly(&p);
    let d = e.len() - 1;
    [1i8, -1].into_iter().find(|&s| {
        (0..=d).all(|i| {
            let lhs = &e[d - i].c[0] * q.pow(i as u32);
            let rhs = &e[i].c[0] * q.pow((d - i) as u32) * BigInt::from(s);
            lhs == rhs
        })
    })
}

// ---------------------------------------------------------------------------
// eigenspaces and algebraic parts

/// `(1/n) Σ_j ζ^{−jk} v_j` for `k = 0..n−1`.
pub fn project(values: &[BigInt], n: u64) -> Result<Vec<CycInt>> {
    if values.len() as u64 != n {
        return Err(Error::Invalid(format!("{} values for a group of order {n}", values.len())));
    }
    let nb = BigInt::from(n);
    (0..n as i64)
        .map(|k| {
            let mut acc = CycInt::zero(n);
            for (j, v) in values.iter().enumerate() {
                acc = acc.add(&CycInt::zeta_pow(n, -(j as i64) * k).scale(v));
            }
            acc.div_int(&nb)
                .ok_or_else(|| Error::Inconsistent(format!("eigenspace {k} trace ({acc})/{n} is not integral")))
        })
        .collect()
}

/// Traces on the `ζ^k` eigenspaces of `H²` from twisted fixed-point counts
/// `Fix_0..Fix_{n−1}` at `q`, with `b_0 = b_4 = 1` and `b_1 = b_3 = 0`.
pub fn eigenspace_project(fix: &[BigInt], n: u64, q: &BigInt) -> Result<Vec<CycInt>> {
    let base = BigInt::one() + q * q;
    let v: Vec<BigInt> = fix.iter().map(|f| f - &base).collect();
    project(&v, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub len: u32,
    /// `Frob_p` acts as `sign·p` times a cyclic permutation.
    #[serde(default = "one_i8")]
    pub sign: i8,
}

fn one_i8() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct AlgebraicPartSpec {
    pub orbits: Vec<Orbit>,
}

impl AlgebraicPartSpec {
    pub fn rational(rank: u32) -> Self {
        AlgebraicPartSpec { orbits: (0..rank).map(|_| Orbit { len: 1, sign: 1 }).collect() }
    }

    pub fn rank(&self) -> u32 {
        self.orbits.iter().map(|o| o.len).sum()
    }

    /// Trace of `Frob_{p^i}` on the span.
    pub fn trace(&self, p: &BigInt, i: u32) -> BigInt {
        let q = p.pow(i);
        let mut t = BigInt::zero();
        for o in &self.orbits {
            if i % o.len == 0 {
                let s = if o.sign < 0 && i % 2 == 1 { -1 } else { 1 };
                t += &q * BigInt::from(o.len as i64 * s);
            }
        }
        t
    }

    /// `∏ (λ^L − (±p)^L)`.
    pub fn charpoly(&self, p: &BigInt) -> ZPoly {
        let mut f = vec![BigInt::one()];
        for o in &self.orbits {
            let a = if o.sign < 0 { -p.clone() } else { p.clone() };
            let mut g = vec![BigInt::zero(); o.len as usize + 1];
            g[0] = -a.pow(o.len);
            g[o.len as usize] = BigInt::one();
            f = zpoly::mul(&f, &g);
        }
        f
    }
}

pub fn algebraic_trace(spec: &AlgebraicPartSpec, p: &BigInt, i: u32) -> BigInt {
    spec.trace(p, i)
}

// ---------------------------------------------------------------------------
// roots of unity

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnityCount {
    /// Roots of the form `q·ζ` (with multiplicity).
    pub count: usize,
    /// `(d, multiplicity)` for each `Φ_d` factor.
    pub cyclotomic: Vec<(u64, usize)>,
    /// Remaining irreducible factors of the normalized polynomial (primitive).
    pub other: Vec<ZPoly>,
    /// Whether the normalized polynomial is monic over `Z`.
    pub integral: bool,
}

/// `χ(qT)/q^d`, with roots on the unit circle when `χ` is pure of modulus `q`.
pub fn normalize(chi: &[BigInt], q: &BigInt) -> QPoly {
    let d = zpoly::degree(chi).unwrap_or(0);
    let qd = q.pow(d as u32);
    let mut pw = BigInt::one();
    chi.iter()
        .map(|c| {
            let v = BigRational::new(c * &pw, qd.clone());
            pw *= q;
            v
        })
        .collect()
}

/// For `χ` with roots of modulus `q`: counts roots `q·ζ` with `ζ` a root of unity.
pub fn unity_root_count(chi: &[BigInt], q: &BigInt) -> UnityCount {
    unity_root_count_normalized(&normalize(chi, q))
}

/// For a polynomial with roots on the unit circle.
pub fn unity_root_count_normalized(f: &[BigRational]) -> UnityCount {
    let g = zpoly::q_to_primitive(f);
    let integral = g.last().is_some_and(|c| c.abs().is_one());
    let mut cyclotomic = Vec::new();
    let mut other = Vec::new();
    let mut count = 0;
    for (h, mult) in zpoly::factor(&g) {
        match cyclotomic_index(&h) {
            Some(d) => {
                count += (h.len() - 1) * mult;
                cyclotomic.push((d, mult));
            }
            None => {
                for _ in 0..mult {
                    other.push(h.clone());
                }
            }
        }
    }
    UnityCount { count, cyclotomic, other, integral }
}

/// `d` with `h = ±Φ_d`, if any.
pub fn cyclotomic_index(h: &[BigInt]) -> Option<u64> {
    let m = (h.len() - 1) as u64;
    let h: ZPoly = if h.last().unwrap().is_negative() { h.iter().map(|c| -c).collect() } else { h.to_vec() };
    if !h.last().unwrap().is_one() {
        return None;
    }
    // φ(d) ≥ sqrt(d/2)
    (1..=(2 * m * m).max(2)).find(|&d| crate::arith::euler_phi(d) == m && zpoly::cyclotomic(d) == h)
}

/// `known_rank` plus the number of roots `q·ζ` of `χ` on the complement.
pub fn rho_upper_bound(chi: &[BigInt], q: &BigInt, known_rank: usize) -> usize {
    known_rank + unity_root_count(chi, q).count
}

/// Squarefree part of the discriminant of a quadratic.
pub fn quad_splitting_class(f: &[BigInt]) -> Result<BigInt> {
    if f.len() != 3 {
        return Err(Error::Invalid("expected a quadratic".into()));
    }
    let disc = &f[1] * &f[1] - BigInt::from(4) * &f[2] * &f[0];
    if disc.is_zero() {
        return Err(Error::Degenerate("zero discriminant".into()));
    }
    let d = zpoly::squarefree_int(&disc);
    if d.is_one() {
        return Err(Error::Degenerate(format!("discriminant {disc} is a square: splits over Q")));
    }
    Ok(d)
}

/// `B(λ) = Σ a_k β^{d−k} λ^k`: roots multiplied by `β`.
pub fn twist_roots(f: &CycIntPoly, beta: &CycInt) -> CycIntPoly {
    let d = f.degree();
    let mut pw = CycInt::one(f.n);
    let mut coeffs = vec![CycInt::zero(f.n); d + 1];
    for k in (0..=d).rev() {
        coeffs[k] = f.coeffs[k].mul(&pw);
        pw = pw.mul(beta);
    }
    CycIntPoly { n: f.n, coeffs }
}

// ---------------------------------------------------------------------------
// numerical sanity

/// All complex roots of a squarefree polynomial by Aberth iteration.
pub fn complex_roots(f: &[f64]) -> Vec<Complex64> {
    let d = f.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lc = f[d];
    let a: Vec<f64> = f.iter().map(|c| c / lc).collect();
    let radius = 1.0 + a[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let r0 = a[..d].iter().enumerate().fold(0.0f64, |m, (i, c)| m.max(c.abs().powf(1.0 / (d - i) as f64))).min(radius);
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(r0.max(1e-3), 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64)).collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1e-300));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// All roots of `χ` have modulus `q` (relative tolerance `1e−8`).
pub fn weil_check(chi: &[BigInt], q: &BigInt) -> bool {
    let qf = q.to_f64().unwrap();
    zpoly::factor(chi).into_iter().all(|(h, _)| {
        let d = h.len() - 1;
        // h(qT)/q^d
        let g: Vec<f64> = h
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap() * qf.powi(k as i32 - d as i32))
            .collect();
        complex_roots(&g).iter().all(|z| (z.norm() - 1.0).abs() < 1e-8)
    })
}

/// As [`weil_check`] for a rational polynomial expected on the unit circle.
pub fn weil_check_normalized(f: &[BigRational]) -> bool {
    let g = zpoly::q_to_primitive(f);
    zpoly::factor(&g).into_iter().all(|(h, _)| {
        let hf: Vec<f64> = h.iter().map(|c| c.to_f64().unwrap()).collect();
        complex_roots(&hf).iter().all(|z| (z.norm() - 1.0).abs() < 1e-8)
    })
}

// ---------------------------------------------------------------------------
// 2-adic solver

/// A polynomial system in `r` integer unknowns.
pub struct AdicSystem<'a> {
    pub nvars: usize,
    /// `|u_i| ≤ bound`.
    pub bound: u64,
    /// Constraint values modulo `2^64` (two's complement inputs).
    pub eval: &'a (dyn Fn(&[u64]) -> Vec<u64> + Sync),
    /// Exact check of a candidate.
    pub verify: &'a (dyn Fn(&[i64]) -> bool + Sync),
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchTrace {
    /// Root modulo 2 the branch started from.
    pub start: Vec<u8>,
    /// Largest number of lifting steps taken by any sub-branch.
    pub steps: u32,
    pub solutions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdicReport {
    pub solutions: Vec<Vec<i64>>,
    pub branches: Vec<BranchTrace>,
    pub visits: u64,
    /// Lifting stops once `2^precision > 2·bound + 1`.
    pub precision: u32,
}

pub const DEFAULT_ADIC_BUDGET: u64 = 1 << 26;

/// All integer solutions with `|u_i| ≤ bound`, by enumeration modulo 2 and
/// digit-by-digit lifting.
pub fn solve_2adic(sys: &AdicSystem, budget: u64) -> Result<AdicReport> {
    let r = sys.nvars;
    if r == 0 || r > 63 {
        return Err(Error::Invalid(format!("{r} unknowns; need 1..=63")));
    }
    let span = 2u128 * sys.bound as u128 + 1;
    let mut precision = 1u32;
    while (1u128 << precision) <= span {
        precision += 1;
    }
    if precision > 63 {
        return Err(Error::Invalid(format!("bound {} needs more than 63 bits", sys.bound)));
    }
    if (1u64 << r) > budget {
        return Err(Error::Resource(format!("2^{r} residues mod 2 exceed the budget {budget}")));
    }
    let mut visits = 0u64;
    let mut solutions = Vec::new();
    let mut branches = Vec::new();
    for code in 0..(1u64 << r) {
        let u: Vec<u64> = (0..r).map(|i| (code >> i) & 1).collect();
        visits += 1;
        if sys.eval(&u).iter().any(|v| v & 1 != 0) {
            continue;
        }
        let mut trace = BranchTrace { start: u.iter().map(|&b| b as u8).collect(), steps: 0, solutions: 0 };
        let mut stack = vec![(u, 1u32)];
        while let Some((u, k)) = stack.pop() {
            trace.steps = trace.steps.max(k - 1);
            if k >= precision {
                let m = 1u64 << k;
                let s: Vec<i64> = u.iter().map(|&x| if x >= m / 2 { x as i64 - m as i64 } else { x as i64 }).collect();
                if s.iter().all(|x| x.unsigned_abs() <= sys.bound) && (sys.verify)(&s) {
                    trace.solutions += 1;
                    solutions.push(s);
                }
                continue;
            }
            visits += r as u64 + 1;
            if visits > budget {
                return Err(Error::Resource(format!(
                    "2-adic lifting exceeded {budget} evaluations; partial: {} solutions, {} branches at depth {k}",
                    solutions.len(),
                    stack.len() + 1
                )));
            }
            let f0 = (sys.eval)(&u);
            let rhs: Vec<u8> = f0.iter().map(|v| ((v >> k) & 1) as u8).collect();
            let mut cols = Vec::with_capacity(r);
            for i in 0..r {
                let mut ui = u.clone();
                ui[i] = ui[i].wrapping_add(1u64 << k);
                let fi = (sys.eval)(&ui);
                cols.push(fi.iter().zip(&f0).map(|(a, b)| ((a.wrapping_sub(*b) >> k) & 1) as u8).collect::<Vec<u8>>());
            }
            let Some((part, kernel)) = solve_f2(&cols, &rhs, r) else { continue };
            if kernel.len() > 20 {
                return Err(Error::Resource(format!("affine solution space of dimension {} at depth {k}", kernel.len())));
            }
            for mask in 0..(1u64 << kernel.len()) {
                let mut delta = part;
                for (b, v) in kernel.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        delta ^= v;
                    }
                }
                let next: Vec<u64> =
                    u.iter().enumerate().map(|(i, &x)| x | (((delta >> i) & 1) << k)).collect();
                stack.push((next, k + 1));
            }
        }
        branches.push(trace);
    }
    solutions.sort();
    solutions.dedup();
    Ok(AdicReport { solutions, branches, visits, precision })
}

impl AdicSystem<'_> {
    fn eval(&self, u: &[u64]) -> Vec<u64> {
        (self.eval)(u)
    }
}

/// Solves `J δ = rhs` over `F_2` where `cols[i]` is column `i`; returns a
/// particular solution and a kernel basis as bitmasks.
fn solve_f2(cols: &[Vec<u8>], rhs: &[u8], r: usize) -> Option<(u64, Vec<u64>)> {
    let m = rhs.len();
    let mut rows: Vec<(u64, u8)> = (0..m)
        .map(|j| ((0..r).fold(0u64, |acc, i| acc | ((cols[i][j] as u64) << i)), rhs[j]))
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..r {
        let Some(pr) = (row..m).find(|&i| rows[i].0 >> c & 1 == 1) else { continue };
        rows.swap(row, pr);
        for i in 0..m {
            if i != row && rows[i].0 >> c & 1 == 1 {
                rows[i].0 ^= rows[row].0;
                rows[i].1 ^= rows[row].1;
            }
        }
        pivots.push(c);
        row += 1;
    }
    if rows[row..].iter().any(|&(_, b)| b == 1) {
        return None;
    }
    let mut part = 0u64;
    for (i, &c) in pivots.iter().enumerate() {
        if rows[i].1 == 1 {
            part |= 1 << c;
        }
    }
    let mut kernel = Vec::new();
    for f in (0..r).filter(|c| !pivots.contains(c)) {
        let mut v = 1u64 << f;
        for (i, &c) in pivots.iter().enumerate() {
            if rows[i].0 >> f & 1 == 1 {
                v |= 1 << c;
            }
        }
        kernel.push(v);
    }
    Some((part, kernel))
}

// ---------------------------------------------------------------------------
// Z[ζ_n] modulo 2^64

/// Wrapping arithmetic on power-basis coordinates of `Z[ζ_n]`.
#[derive(Clone, Debug)]
pub struct WrapRing {
    pub n: u64,
    phi: Vec<u64>,
}

impl WrapRing {
    pub fn new(n: u64) -> Self {
        let phi = zpoly::cyclotomic(n).iter().map(|c| c.to_i64().unwrap() as u64).collect();
        WrapRing { n, phi }
    }

    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let d = self.dim();
        while v.len() > d {
            let top = v.pop().unwrap();
            if top == 0 {
                continue;
            }
            let off = v.len() - d;
            for j in 0..d {
                v[off + j] = v[off + j].wrapping_sub(top.wrapping_mul(self.phi[j]));
            }
        }
        v.resize(d, 0);
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] = v[i + j].wrapping_add(x.wrapping_mul(*y));
            }
        }
        self.reduce(v)
    }

    pub fn galois(&self, a: &[u64], e: i64) -> Vec<u64> {
        let mut v = vec![0u64; self.n as usize];
        for (i, x) in a.iter().enumerate() {
            let k = (i as i64 * e).rem_euclid(self.n as i64) as usize;
            v[k] = v[k].wrapping_add(*x);
        }
        self.reduce(v)
    }

    pub fn from_cyc(c: &CycInt) -> Vec<u64> {
        c.c.iter().map(|x| wrap_big(x)).collect()
    }

    /// Product of polynomials (coefficient lists of ring elements).
    pub fn poly_mul(&self, f: &[Vec<u64>], g: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = self.dim();
        let mut out = vec![vec![0u64; d]; f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                let m = self.mul(a, b);
                for (o, x) in out[i + j].iter_mut().zip(m) {
                    *o = o.wrapping_add(x);
                }
            }
        }
        out
    }

    /// Norm of a polynomial: product over all Galois conjugates. Returns the
    /// rational coordinate of each coefficient.
    pub fn poly_norm(&self, f: &[Vec<u64>]) -> Vec<u64> {
        let mut acc: Option<Vec<Vec<u64>>> = None;
        for a in galois_group(self.n) {
            let g: Vec<Vec<u64>> = f.iter().map(|c| self.galois(c, a)).collect();
            acc = Some(match acc {
                None => g,
                Some(h) => self.poly_mul(&h, &g),
            });
        }
        acc.unwrap().into_iter().map(|c| c[0]).collect()
    }
}

fn wrap_big(x: &BigInt) -> u64 {
    let m = BigInt::one() << 64;
    x.mod_floor(&m).to_u64().unwrap()
}

/// The self-dual system for the tail `e_{k+1..d}` of a paired eigenfactor:
/// the norm `N(λ)` of degree `D = φ(n)·d` must satisfy
/// `E_{D−i} = ε q^{D−2i} E_i` for `i < D/2`.
pub struct PairedTail {
    pub ring: WrapRing,
    pub known: Vec<CycInt>,
    pub d: usize,
    pub q: BigInt,
    pub sign: i8,
}

impl PairedTail {
    pub fn nvars(&self) -> usize {
        (self.d + 1 - self.known.len()) * self.ring.dim()
    }

    /// Coordinate bound from `|e_i| ≤ C(d,i) q^i` on each embedding.
    pub fn bound(&self) -> u64 {
        let i = self.d as u64;
        let mut best = 0u128;
        for j in self.known.len() as u64..=i {
            let c = crate::arith::binomial(i, j) * self.q.to_u128().unwrap().pow(j as u32);
            best = best.max(c);
        }
        (best * self.ring.dim() as u128) as u64
    }

    fn assemble_wrapped(&self, u: &[u64]) -> Vec<Vec<u64>> {
        let dim = self.ring.dim();
        let mut e: Vec<Vec<u64>> = self.known.iter().map(WrapRing::from_cyc).collect();
        for chunk in u.chunks(dim) {
            e.push(chunk.to_vec());
        }
        // χ coefficients in ascending λ
        let d = self.d;
        (0..=d)
            .map(|k| {
                let i = d - k;
                if i % 2 == 0 {
                    e[i].clone()
                } else {
                    e[i].iter().map(|x| x.wrapping_neg()).collect()
                }
            })
            .collect()
    }

    pub fn eval(&self, u: &[u64]) -> Vec<u64> {
        let chi = self.assemble_wrapped(u);
        let norm = self.ring.poly_norm(&chi);
        let big_d = norm.len() - 1;
        let qw = wrap_big(&self.q);
        let mut out = Vec::with_capacity(big_d / 2);
        for i in 0..big_d.div_ceil(2) {
            let mut f = if self.sign > 0 { 1u64 } else { u64::MAX };
            for _ in 0..(big_d - 2 * i) {
                f = f.wrapping_mul(qw);
            }
            // χ ascending: coefficient of λ^{D−i} is (−1)^i E_i
            let ei = norm[big_d - i];
            let edi = norm[i];
            let (ei, edi) = (
                if i % 2 == 0 { ei } else { ei.wrapping_neg() },
                if (big_d - i) % 2 == 0 { edi } else { edi.wrapping_neg() },
            );
            out.push(edi.wrapping_sub(f.wrapping_mul(ei)));
        }
        out
    }

    pub fn assemble(&self, u: &[i64]) -> CycIntPoly {
        let n = self.ring.n;
        let mut e = self.known.clone();
        for chunk in u.chunks(self.ring.dim()) {
            e.push(CycInt::from_coords(n, chunk));
        }
        poly_from_elementary(&e)
    }

    /// Exact check of the norm's functional equation.
    pub fn verify(&self, u: &[i64]) -> bool {
        if u.len() != self.nvars() {
            return false;
        }
        let f = self.assemble(u);
        let norm = f.norm();
        norm.len() == f.degree() * self.ring.dim() + 1 && self_dual_sign(&norm, &self.q) == Some(self.sign)
    }

    pub fn solve(&self, budget: u64) -> Result<(Vec<CycIntPoly>, AdicReport)> {
        let eval = |u: &[u64]| self.eval(u);
        let verify = |u: &[i64]| self.verify(u);
        let sys = AdicSystem { nvars: self.nvars(), bound: self.bound(), eval: &eval, verify: &verify };
        let report = solve_2adic(&sys, budget)?;
        let polys = report.solutions.iter().map(|s| self.assemble(s)).collect();
        Ok((polys, report))
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IntPolyJson {
    /// Ascending decimal coefficients.
    pub coefficients: Vec<String>,
}

impl IntPolyJson {
    pub fn new(f: &[BigInt]) -> Self {
        IntPolyJson { coefficients: zpoly::to_strings(f) }
    }

    pub fn poly(&self) -> Result<ZPoly> {
        zpoly::parse_coeffs(&self.coefficients)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        zpoly::from_i64(c)
    }

    fn gi(re: i64, im: i64) -> CycInt {
        CycInt::from_coords(4, &[re, im])
    }

    #[test]
    fn newton_round_trip() {
        // (λ−2)(λ−3)(λ+1)
        let f = CycIntPoly::from_int_poly(1, &z(&[6, 1, -4, 1]));
        let e = elementary_from_poly(&f);
        let t = elementary_to_traces(&e, 3);
        let back = traces_to_elementary(1, &t).unwrap();
        assert_eq!(back, e);
        assert_eq!(t[0].c[0], BigInt::from(4));
        assert_eq!(t[1].c[0], BigInt::from(14));
    }

    #[test]
    fn trivial_cases() {
        let f = duality_complete(&CharpolyProblem::integral(1, 3, &[3])).unwrap();
        assert_eq!(f[0].poly.to_int_poly().unwrap(), z(&[-3, 1]));
        let f = duality_complete(&CharpolyProblem::integral(2, 7, &[14])).unwrap();
        assert!(f.iter().all(|c| c.poly.to_int_poly().unwrap() == z(&[49, -14, 1])));
        let f = duality_complete(&CharpolyProblem::integral(4, 5, &[20, 100])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].poly.to_int_poly().unwrap(), zpoly::mul(&z(&[25, -10, 1]), &z(&[25, -10, 1])));
    }

    #[test]
    fn non_integral_newton_is_inconsistent() {
        let t = [CycInt::from_int(1, 1), CycInt::from_int(1, 0)];
        assert!(matches!(traces_to_elementary(1, &t), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn paired_cubic_over_gaussian_integers() {
        // λ³ − 4(1−i)λ² + 20(1−i)λ + 125i
        let f = CycIntPoly { n: 4, coeffs: vec![gi(0, 125), gi(20, -20), gi(-4, 4), gi(1, 0)] };
        assert!(is_paired(&f, &BigInt::from(5)));
        let t = elementary_to_traces(&elementary_from_poly(&f), 2);
        let p = CharpolyProblem { n: 4, dim: 3, q: 5.into(), traces: t, pairing: Pairing::Conjugate, sign: None };
        let c = duality_complete(&p).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].poly, f);
    }

    #[test]
    fn unity_counts() {
        let q = BigInt::from(7);
        let u = unity_root_count(&z(&[-49, 0, 1]), &q);
        assert_eq!(u.count, 2);
        assert_eq!(rho_upper_bound(&z(&[-49, 0, 1]), &q, 3), 5);
        let g = zpoly::cyclotomic(24);
        let twisted: QPoly = zpoly::mul(&g, &z(&[3, 0, 0, 0, 2, 0, 0, 0, 3]))
            .iter()
            .map(|c| BigRational::new(c.clone(), 3.into()))
            .collect();
        let u = unity_root_count_normalized(&twisted);
        assert_eq!(u.count, 8);
        assert_eq!(u.cyclotomic, vec![(24, 1)]);
        assert!(!u.integral);
        assert!(weil_check_normalized(&twisted));
    }

    #[test]
    fn splitting_classes() {
        assert_eq!(quad_splitting_class(&z(&[49, -5, 1])).unwrap(), BigInt::from(-19));
        assert_eq!(quad_splitting_class(&z(&[121, -4, 1])).unwrap(), BigInt::from(-13));
        assert_eq!(quad_splitting_class(&z(&[49, 4, 1])).unwrap(), BigInt::from(-5));
        assert_eq!(quad_splitting_class(&z(&[121, 10, 1])).unwrap(), BigInt::from(-6));
        assert!(quad_splitting_class(&z(&[-4, 0, 1])).is_err());
    }

    #[test]
    fn weil_gate() {
        let q = BigInt::from(5);
        assert!(weil_check(&z(&[-25, 0, 1]), &q));
        assert!(!weil_check(&z(&[-6, 1]), &q));
        assert!(weil_check(&zpoly::mul(&z(&[-5, 1]), &z(&[-5, 1])), &q));
    }

    #[test]
    fn permutation_traces() {
        let p = BigInt::from(3);
        let s = AlgebraicPartSpec::rational(6);
        assert_eq!(s.trace(&p, 2), BigInt::from(54));
        let s = AlgebraicPartSpec { orbits: vec![Orbit { len: 1, sign: 1 }, Orbit { len: 4, sign: 1 }] };
        assert_eq!(s.trace(&p, 1), BigInt::from(3));
        assert_eq!(s.trace(&p, 4), BigInt::from(5 * 81));
        let chi = s.charpoly(&p);
        let t = int_traces(&chi, 4);
        for i in 1..=4u32 {
            assert_eq!(t[i as usize - 1], s.trace(&p, i));
        }
    }

    #[test]
    fn planted_linear_system() {
        let target = [17i64, -5, 300, 0];
        // A u = A·target with a unimodular-ish matrix
        let a = [[1i64, 2, 0, 1], [0, 1, 3, 0], [1, 0, 1, 1], [2, 1, 1, 0]];
        let b: Vec<i64> = a.iter().map(|r| r.iter().zip(&target).map(|(x, y)| x * y).sum()).collect();
        let eval = |u: &[u64]| {
            a.iter()
                .zip(&b)
                .map(|(r, bi)| {
                    r.iter().zip(u).fold(0u64, |acc, (x, y)| acc.wrapping_add((*x as u64).wrapping_mul(*y))).wrapping_sub(*bi as u64)
                })
                .collect()
        };
        let verify = |u: &[i64]| {
            a.iter().zip(&b).all(|(r, bi)| r.iter().zip(u).map(|(x, y)| x * y).sum::<i64>() == *bi)
        };
        let sys = AdicSystem { nvars: 4, bound: 1000, eval: &eval, verify: &verify };
        let rep = solve_2adic(&sys, DEFAULT_ADIC_BUDGET).unwrap();
        assert_eq!(rep.solutions, vec![target.to_vec()]);
    }

    #[test]
    fn projection_of_constant_counts() {
        let q = BigInt::from(5);
        let fix = vec![BigInt::from(40); 5];
        let t = eigenspace_project(&fix, 5, &q).unwrap();
        assert_eq!(t[0].as_int(), Some(BigInt::from(14)));
        assert!(t[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn root_twist() {
        // roots 1, 2 scaled by 3
        let f = CycIntPoly::from_int_poly(1, &z(&[2, -3, 1]));
        let g = twist_roots(&f, &CycInt::from_int(1, 3));
        assert_eq!(g.to_int_poly().unwrap(), z(&[18, -9, 1]));
    }
}
