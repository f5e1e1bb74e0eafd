//! p-adic lifting of curves to arithmetic deformations, singular members of
//! pencils, and the small exact checks used alongside them (Eisenstein, conic
//! rank, irreducibility, curves on surfaces).
//!
//! A lifting problem substitutes an ansatz with unknown coefficients into a
//! family and asks for the identity to vanish modulo `p^k`. Solutions are
//! extended one `p`-adic digit at a time: with `c` known mod `p^k`, the next
//! digit `δ` solves `J(c₀)·δ ≡ −E(c)/p^k (mod p)`, where `c₀` is the order-0
//! residue vector and `J` the Jacobian of the coefficient equations.

use crate::arith::{is_prime, mul_mod, pow_mod};
use crate::cyclo::{CycInt, CycIntPoly};
use crate::error::{Error, Result};
use crate::fixtures::Origin;
use crate::modpoly;
use crate::mpoly::{MPoly, Monomial};
use crate::zpoly::{self, QPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on the number of partial solutions kept across all orders.
pub const DEFAULT_LIFT_BUDGET: usize = 1 << 20;

/// Prime, working precision and named integer parameters (including `p`).
#[derive(Clone, Debug)]
pub struct PadicPolyContext {
    pub p: u64,
    pub precision: u32,
    pub params: BTreeMap<String, BigInt>,
}

impl PadicPolyContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if precision < 2 {
            return Err(Error::Invalid("precision must be at least 2".into()));
        }
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), BigInt::from(p));
        Ok(PadicPolyContext { p, precision, params })
    }

    pub fn with_param(mut self, name: &str, value: impl Into<BigInt>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// Parses `expr` over `vars` with the parameters replaced by their values.
    pub fn instantiate(&self, expr: &str, vars: &[&str]) -> Result<MPoly> {
        let mut all: Vec<&str> = vars.to_vec();
        for k in self.params.keys() {
            if vars.contains(&k.as_str()) {
                return Err(Error::Invalid(format!("parameter {k} clashes with a variable")));
            }
            all.push(k);
        }
        let mut f = MPoly::parse(expr, &all)?;
        for (k, v) in &self.params {
            f = f.subst_int(k, v)?;
        }
        Ok(f)
    }

    /// A simple root of `f` (ascending integer coefficients) mod `p`, lifted to
    /// `p^N`. The smallest residue is taken.
    pub fn hensel_root(&self, f: &[i64]) -> Result<BigInt> {
        let f: ZPoly = zpoly::from_i64(f);
        let df = zpoly::derivative(&f);
        let pb = BigInt::from(self.p);
        let root = (0..self.p).map(BigInt::from).find(|r| {
            zpoly::eval(&f, r).mod_floor(&pb).is_zero() && !zpoly::eval(&df, r).mod_floor(&pb).is_zero()
        });
        let mut r = root.ok_or_else(|| {
            Error::Unsupported(format!("constant with minimal polynomial {f:?} has no simple root mod {}", self.p))
        })?;
        let m = self.modulus();
        for _ in 0..self.precision {
            let fx = zpoly::eval(&f, &r);
            let d = zpoly::eval(&df, &r).mod_floor(&m);
            let inv = d.modinv(&m).expect("simple root");
            r = (r - fx * inv).mod_floor(&m);
        }
        Ok(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzKind {
    LineInP3,
    SectionOnWeierstrass,
    LineOnDoubleCover,
}

/// One substituted variable: `var = Σ c_j·m_j` over the given monomials in the
/// free variables, with the `c_j` unknown and congruent mod `p` to the
/// coefficients of `residue`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubstitutionSpec {
    pub var: String,
    pub monomials: Vec<String>,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ansatz {
    pub kind: AnsatzKind,
    pub free: Vec<String>,
    pub substitutions: Vec<SubstitutionSpec>,
    /// Named constants in residues, each a simple root mod `p` of the given
    /// integer polynomial (ascending coefficients).
    #[serde(default)]
    pub constants: BTreeMap<String, Vec<i64>>,
}

/// Coefficient equations of a substituted family, in unknowns with fixed
/// order-0 residues.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub unknowns: Vec<String>,
    pub residues: Vec<BigInt>,
    pub equations: Vec<(String, MPoly)>,
}

fn monomial_name(e: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(vars)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

fn single_monomial(s: &str, vars: &[&str]) -> Result<Monomial> {
    let m = MPoly::parse(s, vars)?;
    match (m.terms.len(), m.terms.iter().next()) {
        (1, Some((e, c))) if c.is_one() => Ok(e.clone()),
        _ => Err(Error::Invalid(format!("{s:?} is not a monomial"))),
    }
}

impl LiftProblem {
    pub fn build(family: &MPoly, ansatz: &Ansatz, ctx: &PadicPolyContext) -> Result<Self> {
        let free: Vec<&str> = ansatz.free.iter().map(String::as_str).collect();
        ansatz.validate(family)?;
        let m = ctx.modulus();
        let mut consts = BTreeMap::new();
        for (name, f) in &ansatz.constants {
            consts.insert(name.clone(), ctx.hensel_root(f)?);
        }
        let const_names: Vec<&str> = consts.keys().map(String::as_str).collect();
        let mut res_vars = free.clone();
        res_vars.extend(&const_names);

        let mut unknowns = Vec::new();
        let mut residues = Vec::new();
        let mut shapes: Vec<(String, Vec<(Monomial, usize)>)> = Vec::new();
        for s in &ansatz.substitutions {
            let mut residue = MPoly::parse(&s.residue, &res_vars)?;
            for (k, v) in &consts {
                residue = residue.subst_int(k, v)?;
            }
            let mut shape = Vec::new();
            let mut used = 0;
            for mono in &s.monomials {
                let e = single_monomial(mono, &free)?;
                let r = residue.terms.get(&e).cloned().unwrap_or_default();
                if !r.is_zero() {
                    used += 1;
                }
                shape.push((e.clone(), unknowns.len()));
                unknowns.push(format!("{}[{}]", s.var, monomial_name(&e, &ansatz.free)));
                residues.push(r.mod_floor(&m));
            }
            if used != residue.terms.len() {
                return Err(Error::Invalid(format!("residue of {} uses monomials outside the ansatz", s.var)));
            }
            shapes.push((s.var.clone(), shape));
        }

        let nf = free.len();
        let all: Vec<String> = ansatz.free.iter().cloned().chain(unknowns.iter().cloned()).collect();
        let all_refs: Vec<&str> = all.iter().map(String::as_str).collect();
        let mut subs = Vec::new();
        for v in &family.vars {
            if let Some((_, shape)) = shapes.iter().find(|(n, _)| n == v) {
                let mut poly = MPoly::zero(&all_refs);
                for (e, idx) in shape {
                    let mut ex = vec![0u32; all.len()];
                    ex[..nf].copy_from_slice(e);
                    ex[nf + idx] += 1;
                    poly.add_term(ex, BigInt::one());
                }
                subs.push(poly);
            } else {
                subs.push(MPoly::var(&all_refs, v)?);
            }
        }
        let composed = family.compose(&subs);
        let groups = composed.collect(&(0..nf).collect::<Vec<_>>());
        let equations = groups
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (monomial_name(&e, &ansatz.free), c))
            .collect();
        Ok(LiftProblem { unknowns, residues, equations })
    }
}

impl Ansatz {
    fn validate(&self, family: &MPoly) -> Result<()> {
        for v in &family.vars {
            let free = self.free.contains(v);
            let subst = self.substitutions.iter().any(|s| &s.var == v);
            if free == subst {
                return Err(Error::Invalid(format!("variable {v} must be either free or substituted")));
            }
        }
        let free: Vec<&str> = self.free.iter().map(String::as_str).collect();
        match self.kind {
            AnsatzKind::LineInP3 => {
                if family.nvars() != 4 || self.free.len() != 2 || !family.is_homogeneous() {
                    return Err(Error::Invalid("a line in P3 needs a homogeneous quaternary family and two free variables".into()));
                }
                for s in &self.substitutions {
                    for m in &s.monomials {
                        if single_monomial(m, &free)?.iter().sum::<u32>() != 1 {
                            return Err(Error::Invalid(format!("line ansatz for {} must be linear", s.var)));
                        }
                    }
                }
            }
            AnsatzKind::SectionOnWeierstrass | AnsatzKind::LineOnDoubleCover => {
                if self.free.len() != 1 || self.substitutions.len() != 2 {
                    return Err(Error::Invalid("expected one free variable and two substituted coordinates".into()));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of an order-by-order lifting computation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LiftReport {
    /// Largest `k` such that the identity is solvable mod `p^k`.
    pub max_order: u32,
    /// False when the precision was reached without an obstruction, i.e. the
    /// order is at least `max_order`.
    pub resolved: bool,
    pub unique_per_order: bool,
    /// Number of partial solutions at orders `1..=max_order`.
    pub branches: Vec<usize>,
    /// Equations whose combination is unsolvable at order `max_order + 1`.
    pub witness: Vec<String>,
    /// Unknown and the equation that first determines it.
    pub pivots: Vec<(String, String)>,
    /// One solution mod `p^max_order`, as symmetric residues.
    pub lift: Vec<(String, String)>,
}

impl LiftReport {
    pub fn order_display(&self) -> String {
        if self.resolved {
            self.max_order.to_string()
        } else {
            format!("≥ {}", self.max_order)
        }
    }
}

/// Row reduction of a fixed matrix over `F_p`, reused for many right-hand sides.
struct LinearSolver {
    p: u64,
    rank: usize,
    pivot_cols: Vec<usize>,
    pivot_rows: Vec<usize>,
    rref: Vec<Vec<u64>>,
    transform: Vec<Vec<u64>>,
    zero_rows: Vec<bool>,
    kernel: Vec<Vec<u64>>,
}

impl LinearSolver {
    fn new(j: &[Vec<u64>], ncols: usize, p: u64) -> Self {
        let m = j.len();
        let mut a: Vec<Vec<u64>> = j.to_vec();
        let mut t: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|k| u64::from(i == k)).collect()).collect();
        let mut origin: Vec<usize> = (0..m).collect();
        let zero_rows = j.iter().map(|r| r.iter().all(|&x| x == 0)).collect();
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            t.swap(r, piv);
            origin.swap(r, piv);
            let inv = modpoly::inv(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for x in t[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..m {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for k in 0..ncols {
                        a[i][k] = (a[i][k] + p - mul_mod(f, a[r][k], p)) % p;
                    }
                    for k in 0..m {
                        t[i][k] = (t[i][k] + p - mul_mod(f, t[r][k], p)) % p;
                    }
                }
            }
            pivot_cols.push(c);
            pivot_rows.push(origin[r]);
            r += 1;
        }
        let mut kernel = Vec::new();
        for f in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            kernel.push(v);
        }
        LinearSolver { p, rank: r, pivot_cols, pivot_rows, rref: a, transform: t, zero_rows, kernel }
    }

    /// A particular solution, or the original rows of an inconsistent combination.
    fn solve(&self, b: &[u64]) -> std::result::Result<Vec<u64>, Vec<usize>> {
        let p = self.p;
        if let Some(i) = (0..b.len()).find(|&i| self.zero_rows[i] && b[i] != 0) {
            return Err(vec![i]);
        }
        let tb: Vec<u64> = self
            .transform
            .iter()
            .map(|row| row.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p))
            .collect();
        if let Some(i) = (self.rank..tb.len()).find(|&i| tb[i] != 0) {
            return Err((0..b.len()).filter(|&k| self.transform[i][k] != 0).collect());
        }
        let ncols = self.rref.first().map_or(0, Vec::len);
        let mut x = vec![0u64; ncols];
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            x[pc] = tb[i];
        }
        Ok(x)
    }
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Order-by-order solution of `problem` over `Z/p^precision`.
pub fn solve_lift(problem: &LiftProblem, p: u64, precision: u32, budget: usize) -> Result<LiftReport> {
    let pb = BigInt::from(p);
    let n = problem.unknowns.len();
    let eqs: Vec<&MPoly> = problem.equations.iter().map(|(_, e)| e).collect();
    let labels: Vec<&str> = problem.equations.iter().map(|(l, _)| l.as_str()).collect();
    let r0: Vec<BigInt> = problem.residues.iter().map(|r| r.mod_floor(&pb)).collect();
    if let Some(i) = eqs.iter().position(|e| !e.eval_mod(&r0, &pb).is_zero()) {
        return Err(Error::Invalid(format!(
            "order-0 residues do not satisfy the reduction (equation {})",
            labels[i]
        )));
    }
    let jac: Vec<Vec<u64>> = eqs
        .iter()
        .map(|e| (0..n).map(|k| e.derivative(k).eval_mod(&r0, &pb).to_u64().unwrap()).collect())
        .collect();
    let solver = LinearSolver::new(&jac, n, p);
    let pivots = solver
        .pivot_cols
        .iter()
        .zip(&solver.pivot_rows)
        .map(|(&c, &r)| (problem.unknowns[c].clone(), labels[r].to_string()))
        .collect();
    let dim = solver.kernel.len();
    let fan = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);

    let mut frontier: Vec<Vec<BigInt>> = vec![r0];
    let mut branches = vec![1usize];
    let mut visited = 1usize;
    let mut k = 1u32;
    let mut witness = Vec::new();
    let mut resolved = false;
    while k < precision {
        if (frontier.len() as u128).saturating_mul(fan) + visited as u128 > budget as u128 {
            return Err(Error::Resource(format!("lifting branches exceed budget {budget} at order {}", k + 1)));
        }
        let pk = pb.pow(k);
        let pk1 = &pk * &pb;
        let step: Vec<std::result::Result<Vec<Vec<BigInt>>, Vec<usize>>> = frontier
            .par_iter()
            .map(|c| {
                let b: Vec<u64> = eqs
                    .iter()
                    .map(|e| {
                        let v = e.eval_mod(c, &pk1);
                        debug_assert!((&v % &pk).is_zero());
                        (-(v / &pk)).mod_floor(&pb).to_u64().unwrap()
                    })
                    .collect();
                let x = solver.solve(&b)?;
                let mut out = Vec::new();
                let mut coeffs = vec![0u64; dim];
                loop {
                    let mut d = x.clone();
                    for (ci, kv) in coeffs.iter().zip(&solver.kernel) {
                        for (dj, &kj) in d.iter_mut().zip(kv) {
                            *dj = (*dj + mul_mod(*ci, kj, p)) % p;
                        }
                    }
                    out.push(c.iter().zip(&d).map(|(ci, &di)| (ci + &pk * di).mod_floor(&pk1)).collect());
                    // odometer over F_p^dim
                    let mut i = 0;
                    while i < dim {
                        coeffs[i] += 1;
                        if coeffs[i] < p {
                            break;
                        }
                        coeffs[i] = 0;
                        i += 1;
                    }
                    if i == dim {
                        break;
                    }
                }
                Ok(out)
            })
            .collect();
        let mut next = Vec::new();
        let mut first_failure = None;
        for s in step {
            match s {
                Ok(v) => next.extend(v),
                Err(rows) => {
                    first_failure.get_or_insert(rows);
                }
            }
        }
        if next.is_empty() {
            witness = first_failure.unwrap_or_default().into_iter().map(|i| labels[i].to_string()).collect();
            resolved = true;
            break;
        }
        visited += next.len();
        branches.push(next.len());
        frontier = next;
        k += 1;
    }
    let pk = pb.pow(k);
    let lift = problem
        .unknowns
        .iter()
        .zip(&frontier[0])
        .map(|(u, c)| (u.clone(), symmetric(c, &pk).to_string()))
        .collect();
    Ok(LiftReport {
        max_order: k,
        resolved,
        unique_per_order: branches.iter().all(|&b| b == 1),
        branches,
        witness,
        pivots,
        lift,
    })
}

/// Lifting order of `ansatz` on `family` at the context's precision.
pub fn lift_order(family: &MPoly, ansatz: &Ansatz, ctx: &PadicPolyContext, budget: usize) -> Result<LiftReport> {
    let problem = LiftProblem::build(family, ansatz, ctx)?;
    solve_lift(&problem, ctx.p, ctx.precision, budget)
}

fn expect_kind(ansatz: &Ansatz, kind: AnsatzKind) -> Result<()> {
    if ansatz.kind != kind {
        return Err(Error::Invalid(format!("expected a {kind:?} ansatz, got {:?}", ansatz.kind)));
    }
    Ok(())
}

/// Lifting of a line in `P³` to a quaternary family.
pub fn line_lift_order(family: &MPoly, ansatz: &Ansatz, ctx: &PadicPolyContext) -> Result<LiftReport> {
    expect_kind(ansatz, AnsatzKind::LineInP3)?;
    lift_order(family, ansatz, ctx, DEFAULT_LIFT_BUDGET)
}

/// Lifting of a section of fixed shape on a Weierstrass family.
pub fn section_lift_order(family: &MPoly, ansatz: &Ansatz, ctx: &PadicPolyContext) -> Result<LiftReport> {
    expect_kind(ansatz, AnsatzKind::SectionOnWeierstrass)?;
    lift_order(family, ansatz, ctx, DEFAULT_LIFT_BUDGET)
}

/// Order to which the restriction of a double cover to a moving line stays a
/// square.
pub fn square_lift_order(family: &MPoly, ansatz: &Ansatz, ctx: &PadicPolyContext) -> Result<LiftReport> {
    expect_kind(ansatz, AnsatzKind::LineOnDoubleCover)?;
    lift_order(family, ansatz, ctx, DEFAULT_LIFT_BUDGET)
}

/// A family written as base plus separately named deformation terms, with
/// the symbolic parameters (`p`, `a`, `b`, …) left in the strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeformedFamily {
    pub variables: Vec<String>,
    pub base: String,
    #[serde(default)]
    pub deformation: Vec<String>,
}

impl DeformedFamily {
    /// The instantiated polynomial, optionally without some deformation terms.
    pub fn poly(&self, ctx: &PadicPolyContext, skip: &[usize]) -> Result<MPoly> {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let mut f = ctx.instantiate(&self.base, &vars)?;
        for (i, t) in self.deformation.iter().enumerate() {
            if !skip.contains(&i) {
                f = f.add(&ctx.instantiate(t, &vars)?);
            }
        }
        Ok(f)
    }
}

/// Deformation terms whose removal alone lets the ansatz lift to full
/// precision.
pub fn culprit_terms(family: &DeformedFamily, ansatz: &Ansatz, ctx: &PadicPolyContext, budget: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, t) in family.deformation.iter().enumerate() {
        let f = family.poly(ctx, &[i])?;
        if !lift_order(&f, ansatz, ctx, budget)?.resolved {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// Expected lifting behaviour in a fixture.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedLift {
    /// `None` when the divisor is expected to lift to every order.
    pub max_order: Option<u32>,
    #[serde(default)]
    pub culprits: Vec<String>,
    pub origin: Origin,
}

/// Declarative lifting check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftFixture {
    pub name: String,
    pub family: DeformedFamily,
    pub params: BTreeMap<String, i64>,
    pub precision: u32,
    pub ansatz: Ansatz,
    pub expected: Option<ExpectedLift>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftOutcome {
    pub report: LiftReport,
    pub culprits: Vec<String>,
}

impl LiftFixture {
    pub fn context(&self) -> Result<PadicPolyContext> {
        let p = *self.params.get("p").ok_or_else(|| Error::Invalid("fixture needs a value for p".into()))?;
        let mut ctx = PadicPolyContext::new(p as u64, self.precision)?;
        for (k, v) in self.params.iter().filter(|(k, _)| *k != "p") {
            ctx = ctx.with_param(k, *v);
        }
        Ok(ctx)
    }

    pub fn run(&self, budget: usize) -> Result<LiftOutcome> {
        let ctx = self.context()?;
        let f = self.family.poly(&ctx, &[])?;
        let report = lift_order(&f, &self.ansatz, &ctx, budget)?;
        let culprits = if report.resolved { culprit_terms(&self.family, &self.ansatz, &ctx, budget)? } else { Vec::new() };
        Ok(LiftOutcome { report, culprits })
    }

    /// Whether an outcome agrees with the recorded expectation.
    pub fn matches(&self, out: &LiftOutcome) -> Option<bool> {
        let e = self.expected.as_ref()?;
        let order_ok = match e.max_order {
            Some(k) => out.report.resolved && out.report.max_order == k,
            None => !out.report.resolved,
        };
        Some(order_ok && (e.culprits.is_empty() || e.culprits == out.culprits))
    }
}

// ---------------------------------------------------------------------------
// Pencils

/// Dense bivariate table `c[j][i]` for the coefficient of `x^i y^j` mod `ℓ`.
type Table = Vec<Vec<u64>>;

fn eval_table(t: &Table, x: u64, l: u64) -> Vec<u64> {
    t.iter().map(|row| modpoly::eval(row, x, l)).collect()
}

/// Resultant with formal degrees `m = a.len() − 1`, `n = b.len() − 1`.
fn formal_resultant(a: &[u64], b: &[u64], l: u64) -> u64 {
    let (m, n) = (a.len() as u64 - 1, b.len() as u64 - 1);
    let ta = modpoly::trim(a.to_vec());
    let tb = modpoly::trim(b.to_vec());
    if ta.is_empty() || tb.is_empty() {
        return 0;
    }
    let (ma, nb) = (ta.len() as u64 - 1, tb.len() as u64 - 1);
    if ma < m && nb < n {
        return 0;
    }
    let r = modpoly::resultant(&ta, &tb, l);
    if ma < m {
        let s = mul_mod(r, pow_mod(b[n as usize], m - ma, l), l);
        if (n * (m - ma)) % 2 == 1 {
            (l - s) % l
        } else {
            s
        }
    } else {
        mul_mod(r, pow_mod(a[m as usize], n - nb, l), l)
    }
}

/// One affine chart of a pencil of plane curves: `g(t; x, y)` and its partials.
#[derive(Clone, Debug)]
struct Chart {
    polys: [MPoly; 3],
}

impl Chart {
    fn y_degree(&self, k: usize) -> usize {
        self.polys[k].degree_in(2).unwrap_or(0) as usize
    }

    fn xy_degree(&self, k: usize) -> u64 {
        self.polys[k].terms.keys().map(|e| (e[1] + e[2]) as u64).max().unwrap_or(0)
    }

    fn t_degree(&self, k: usize) -> u64 {
        self.polys[k].degree_in(0).unwrap_or(0) as u64
    }

    fn specialize(&self, k: usize, t0: u64, l: u64) -> Table {
        let f = &self.polys[k];
        let dy = self.y_degree(k);
        let dx = f.degree_in(1).unwrap_or(0) as usize;
        let mut tab = vec![vec![0u64; dx + 1]; dy + 1];
        let lb = BigInt::from(l);
        for (e, c) in &f.terms {
            let c = c.mod_floor(&lb).to_u64().unwrap();
            let v = mul_mod(c, pow_mod(t0, e[0] as u64, l), l);
            let cell = &mut tab[e[2] as usize][e[1] as usize];
            *cell = (*cell + v) % l;
        }
        tab
    }

    /// `Res_y(g, h)` as a polynomial in `x` at `t = t0`.
    fn inner(&self, k: usize, t0: u64, l: u64) -> Vec<u64> {
        let a = self.specialize(0, t0, l);
        let b = self.specialize(k, t0, l);
        let bound = self.xy_degree(0) * self.xy_degree(k);
        let xs: Vec<u64> = (0..=bound).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| formal_resultant(&eval_table(&a, x, l), &eval_table(&b, x, l), l)).collect();
        modpoly::interpolate(&xs, &ys, l)
    }

    /// `Res_x(Res_y(g, g_x), Res_y(g, g_y))` as a polynomial in `t`, or `None`
    /// if the prime was unlucky for the degree estimates.
    fn eliminant(&self, l: u64, rng: &mut StdRng) -> Option<Vec<u64>> {
        let (d1, d2) = {
            let mut d = (0usize, 0usize);
            for _ in 0..3 {
                let t0 = rng.gen_range(1..l);
                d.0 = d.0.max(modpoly::trim(self.inner(1, t0, l)).len().saturating_sub(1));
                d.1 = d.1.max(modpoly::trim(self.inner(2, t0, l)).len().saturating_sub(1));
            }
            d
        };
        let (ga, gb, gc) = (self.y_degree(0) as u64, self.y_degree(1) as u64, self.y_degree(2) as u64);
        let tau1 = gb * self.t_degree(0) + ga * self.t_degree(1);
        let tau2 = gc * self.t_degree(0) + ga * self.t_degree(2);
        let bound = d2 as u64 * tau1 + d1 as u64 * tau2;
        let ts: Vec<u64> = (0..=bound).collect();
        let mut vals = Vec::with_capacity(ts.len());
        for &t0 in &ts {
            let mut r1 = self.inner(1, t0, l);
            let mut r2 = self.inner(2, t0, l);
            if modpoly::trim(r1.clone()).len() > d1 + 1 || modpoly::trim(r2.clone()).len() > d2 + 1 {
                return None;
            }
            r1.resize(d1 + 1, 0);
            r2.resize(d2 + 1, 0);
            vals.push(formal_resultant(&r1, &r2, l));
        }
        Some(modpoly::interpolate(&ts, &vals, l))
    }
}

fn squarefree_mod(f: &[u64], l: u64) -> Vec<u64> {
    let f = modpoly::trim(f.to_vec());
    if f.len() <= 1 {
        return f;
    }
    let g = modpoly::gcd(&f, &modpoly::derivative(&f, l), l);
    modpoly::monic(&modpoly::divrem(&f, &g, l).0, l)
}

/// Elimination of the singular members of a pencil of plane curves.
#[derive(Clone, Debug)]
pub struct PencilEliminator {
    charts: Vec<Chart>,
    exclude: Vec<BigInt>,
    line: Option<LineForms>,
}

/// Conditions for a singular point on a coordinate line: the restrictions of
/// the three partial derivatives, as binary forms in `x, y` over `t`.
#[derive(Clone, Debug)]
struct LineForms {
    forms: Vec<MPoly>,
    degree: usize,
}

impl LineForms {
    fn new(fibre: &MPoly, ti: usize, vi: usize, coords: &[usize]) -> Result<Self> {
        let vars = ["t", "x", "y"];
        let mut subs = vec![MPoly::zero(&vars); fibre.nvars()];
        subs[ti] = MPoly::var(&vars, "t")?;
        let others: Vec<usize> = coords.iter().copied().filter(|&i| i != vi).collect();
        subs[others[0]] = MPoly::var(&vars, "x")?;
        subs[others[1]] = MPoly::var(&vars, "y")?;
        let forms: Vec<MPoly> = coords.iter().map(|&i| fibre.derivative(i).compose(&subs)).filter(|f| !f.is_zero()).collect();
        if forms.len() < 2 {
            return Err(Error::Degenerate("every member is singular along the excluded line".into()));
        }
        let degree = forms[0].terms.keys().map(|e| (e[1] + e[2]) as usize).max().unwrap_or(0);
        Ok(LineForms { forms, degree })
    }

    /// Binary form at `t = t0` as coefficients of `x^i y^{d−i}`.
    fn at(&self, f: &MPoly, t0: u64, l: u64) -> Vec<u64> {
        let lb = BigInt::from(l);
        let mut out = vec![0u64; self.degree + 1];
        for (e, c) in &f.terms {
            let c = c.mod_floor(&lb).to_u64().unwrap();
            let v = mul_mod(c, pow_mod(t0, e[0] as u64, l), l);
            out[e[1] as usize] = (out[e[1] as usize] + v) % l;
        }
        out
    }

    /// Monic squarefree polynomial in `t` vanishing where the forms share a
    /// root. Random combinations are intersected across a few draws.
    fn common_root_poly(&self, l: u64) -> Vec<u64> {
        let mut rng = StdRng::seed_from_u64(l.rotate_left(7));
        let tdeg = self.forms.iter().map(|f| f.degree_in(0).unwrap_or(0) as u64).max().unwrap_or(0);
        let bound = 2 * self.degree as u64 * tdeg;
        let ts: Vec<u64> = (0..=bound).collect();
        let mut acc: Option<Vec<u64>> = None;
        for _ in 0..CHARTS {
            let ca: Vec<u64> = self.forms.iter().map(|_| rng.gen_range(1..l)).collect();
            let cb: Vec<u64> = self.forms.iter().map(|_| rng.gen_range(1..l)).collect();
            let vals: Vec<u64> = ts
                .iter()
                .map(|&t0| {
                    let combo = |cs: &[u64]| {
                        let mut v = vec![0u64; self.degree + 1];
                        for (f, &c) in self.forms.iter().zip(cs) {
                            v = modpoly::add(&v, &modpoly::scale(&self.at(f, t0, l), c, l), l);
                        }
                        v.resize(self.degree + 1, 0);
                        v
                    };
                    formal_resultant(&combo(&ca), &combo(&cb), l)
                })
                .collect();
            let r = squarefree_mod(&modpoly::interpolate(&ts, &vals, l), l);
            acc = Some(match acc {
                None => r,
                Some(a) => modpoly::monic(&modpoly::gcd(&a, &r, l), l),
            });
        }
        acc.unwrap()
    }
}

const CHARTS: usize = 3;

impl PencilEliminator {
    /// `fibre` is a polynomial in `param` and three further variables, in
    /// which it is homogeneous. With `affine` set, members with a singular
    /// point on the line where that coordinate vanishes are removed (also
    /// when they have further singular points off the line).
    pub fn new(fibre: &MPoly, param: &str, exclude: &[i64], affine: Option<&str>) -> Result<Self> {
        let ti = fibre.var_index(param).ok_or_else(|| Error::Invalid(format!("no parameter {param}")))?;
        let coords: Vec<usize> = (0..fibre.nvars()).filter(|&i| i != ti).collect();
        if coords.len() != 3 {
            return Err(Error::Invalid("a pencil fibre needs exactly three coordinates".into()));
        }
        let degs: std::collections::BTreeSet<u32> =
            fibre.terms.keys().map(|e| coords.iter().map(|&i| e[i]).sum()).collect();
        if degs.len() != 1 {
            return Err(Error::Invalid("fibre is not homogeneous in its coordinates".into()));
        }
        let line = match affine {
            Some(v) => {
                let k = coords
                    .iter()
                    .copied()
                    .find(|&i| fibre.vars[i] == v)
                    .ok_or_else(|| Error::Invalid(format!("no coordinate {v}")))?;
                Some(LineForms::new(fibre, ti, k, &coords)?)
            }
            None => None,
        };
        let vars = ["t", "x", "y"];
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut charts = Vec::new();
        while charts.len() < CHARTS {
            let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let det = crate::latgram::det(&m);
            if det.is_zero() {
                continue;
            }
            let x = MPoly::var(&vars, "x")?;
            let y = MPoly::var(&vars, "y")?;
            let mut subs = vec![MPoly::zero(&vars); fibre.nvars()];
            subs[ti] = MPoly::var(&vars, "t")?;
            for (row, &ci) in m.iter().zip(&coords) {
                subs[ci] = x
                    .scale(&row[0].into())
                    .add(&y.scale(&row[1].into()))
                    .add(&MPoly::constant(&vars, row[2]));
            }
            let g = fibre.compose(&subs);
            let gx = g.derivative(1);
            let gy = g.derivative(2);
            charts.push(Chart { polys: [g, gx, gy] });
        }
        Ok(PencilEliminator { charts, exclude: exclude.iter().map(|&v| BigInt::from(v)).collect(), line })
    }

    /// The iterated resultant of one chart mod `ℓ` (with extraneous factors
    /// and multiplicities).
    pub fn resultant_mod(&self, chart: usize, l: u64) -> Option<Vec<u64>> {
        let mut rng = StdRng::seed_from_u64(l ^ chart as u64);
        self.charts[chart].eliminant(l, &mut rng)
    }

    /// Monic squarefree singular-member polynomial mod `ℓ`, with excluded
    /// parameter values removed.
    pub fn singular_poly_mod(&self, l: u64) -> Result<Option<Vec<u64>>> {
        let mut acc: Option<Vec<u64>> = None;
        let mut all_zero = true;
        for c in 0..self.charts.len() {
            let Some(r) = self.resultant_mod(c, l) else { return Ok(None) };
            let r = modpoly::trim(r);
            if r.is_empty() {
                continue;
            }
            all_zero = false;
            let s = squarefree_mod(&r, l);
            acc = Some(match acc {
                None => s,
                Some(a) => modpoly::monic(&modpoly::gcd(&a, &s, l), l),
            });
        }
        if all_zero {
            return Err(Error::Degenerate("every member of the pencil is singular".into()));
        }
        let mut h = acc.unwrap();
        if let Some(line) = &self.line {
            let w = line.common_root_poly(l);
            if !w.is_empty() {
                let g = modpoly::gcd(&h, &w, l);
                h = modpoly::monic(&modpoly::divrem(&h, &g, l).0, l);
            }
        }
        let lb = BigInt::from(l);
        for v in &self.exclude {
            let v = v.mod_floor(&lb).to_u64().unwrap();
            if h.len() > 1 && modpoly::eval(&h, v, l) == 0 {
                h = modpoly::divrem(&h, &[(l - v) % l, 1], l).0;
            }
        }
        Ok(Some(h))
    }

    /// The singular-member polynomial over `Q`, primitive with positive
    /// leading coefficient.
    pub fn singular_poly(&self) -> Result<ZPoly> {
        let mut l = (1u64 << 61) - 1;
        let mut accepted: Vec<(u64, Vec<u64>)> = Vec::new();
        let mut candidate: Option<QPoly> = None;
        for _ in 0..40 {
            while !is_prime(l) {
                l -= 2;
            }
            let this = l;
            l -= 2;
            let Some(h) = self.singular_poly_mod(this)? else { continue };
            if let Some(c) = &candidate {
                if c.len() == h.len() && reduce_q(c, this).as_deref() == Some(&h[..]) {
                    return Ok(zpoly::q_to_primitive(c));
                }
            }
            if accepted.first().is_some_and(|(_, g)| g.len() != h.len()) {
                if accepted[0].1.len() > h.len() {
                    continue;
                }
                accepted.clear();
            }
            accepted.push((this, h));
            candidate = reconstruct(&accepted);
        }
        Err(Error::Resource("rational reconstruction of the pencil polynomial did not stabilize".into()))
    }
}

fn reduce_q(f: &QPoly, l: u64) -> Option<Vec<u64>> {
    let lb = BigInt::from(l);
    f.iter()
        .map(|c| {
            let d = c.denom().mod_floor(&lb);
            let inv = d.modinv(&lb)?;
            Some((c.numer() * inv).mod_floor(&lb).to_u64().unwrap())
        })
        .collect()
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn reconstruct(parts: &[(u64, Vec<u64>)]) -> Option<QPoly> {
    let len = parts[0].1.len();
    let mut m = BigInt::one();
    let mut acc = vec![BigInt::zero(); len];
    for (l, h) in parts {
        let lb = BigInt::from(*l);
        let inv = m.mod_floor(&lb).modinv(&lb)?;
        for (a, &c) in acc.iter_mut().zip(h) {
            let delta = ((BigInt::from(c) - &*a) * &inv).mod_floor(&lb);
            *a += &m * delta;
        }
        m *= lb;
    }
    acc.iter().map(|a| rational_reconstruct(a, &m)).collect()
}

/// Declarative pencil on a surface: `var = substitution` (linear in the
/// parameter `t`), with a fixed component divided out.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilFixture {
    pub name: String,
    pub variables: Vec<String>,
    pub surface: String,
    pub params: BTreeMap<String, i64>,
    pub var: String,
    pub substitution: String,
    pub fixed_factor: Option<String>,
    #[serde(default)]
    pub exclude: Vec<i64>,
    /// Coordinate set to 1 in every chart.
    #[serde(default)]
    pub affine_chart: Option<String>,
    pub expected: Option<ExpectedPoly>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedPoly {
    /// Polynomial in `t` with the fixture parameters symbolic.
    pub polynomial: String,
    pub origin: Origin,
}

impl PencilFixture {
    fn context(&self) -> Result<PadicPolyContext> {
        let p = *self.params.get("p").ok_or_else(|| Error::Invalid("fixture needs a value for p".into()))?;
        let mut ctx = PadicPolyContext::new(p as u64, 2)?;
        for (k, v) in self.params.iter().filter(|(k, _)| *k != "p") {
            ctx = ctx.with_param(k, *v);
        }
        Ok(ctx)
    }

    /// The fibre polynomial in `t` and the three remaining coordinates.
    pub fn fibre(&self) -> Result<MPoly> {
        let ctx = self.context()?;
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let surface = ctx.instantiate(&self.surface, &vars)?;
        pencil_fibre(&surface, &self.var, &ctx.instantiate(&self.substitution, &[&vars[..], &["t"]].concat())?, self.fixed_factor.as_deref())
    }

    pub fn run(&self) -> Result<ZPoly> {
        PencilEliminator::new(&self.fibre()?, "t", &self.exclude, self.affine_chart.as_deref())?.singular_poly()
    }

    pub fn expected_poly(&self) -> Result<Option<ZPoly>> {
        let Some(e) = &self.expected else { return Ok(None) };
        let f = self.context()?.instantiate(&e.polynomial, &["t"])?;
        let mut out = vec![BigInt::zero(); f.degree_in(0).unwrap_or(0) as usize + 1];
        for (ex, c) in &f.terms {
            out[ex[0] as usize] += c;
        }
        Ok(Some(zpoly::trim(out)))
    }
}

/// Substitutes `var = replacement` (a polynomial in the surface variables and
/// `t`) and divides by the fixed component, if any.
pub fn pencil_fibre(surface: &MPoly, var: &str, replacement: &MPoly, fixed: Option<&str>) -> Result<MPoly> {
    let vi = surface.var_index(var).ok_or_else(|| Error::Invalid(format!("no variable {var}")))?;
    let rest: Vec<&str> = surface.vars.iter().map(String::as_str).filter(|v| *v != var).collect();
    let target: Vec<&str> = rest.iter().copied().chain(["t"]).collect();
    let repl = replacement.with_vars(&target)?;
    let subs: Vec<MPoly> = surface
        .vars
        .iter()
        .enumerate()
        .map(|(i, v)| if i == vi { Ok(repl.clone()) } else { MPoly::var(&target, v) })
        .collect::<Result<_>>()?;
    let mut f = surface.compose(&subs);
    if let Some(v) = fixed {
        let k = f.var_index(v).ok_or_else(|| Error::Invalid(format!("no variable {v}")))?;
        if f.terms.keys().any(|e| e[k] == 0) {
            return Err(Error::Invalid(format!("{v} does not divide the plane section")));
        }
        f.terms = f
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e[k] -= 1;
                (e, c)
            })
            .collect();
    }
    Ok(f)
}

/// Squarefree polynomial in the parameter whose roots are the singular
/// members of the pencil of plane curves `fibre`, up to a constant.
pub fn pencil_singular_poly(
    surface: &MPoly,
    var: &str,
    replacement: &MPoly,
    fixed: Option<&str>,
    exclude: &[i64],
    affine: Option<&str>,
) -> Result<ZPoly> {
    let fibre = pencil_fibre(surface, var, replacement, fixed)?;
    PencilEliminator::new(&fibre, "t", exclude, affine)?.singular_poly()
}

/// Equality up to a nonzero rational constant.
pub fn proportional(f: &[BigInt], g: &[BigInt]) -> bool {
    let (f, g) = (zpoly::trim(f.to_vec()), zpoly::trim(g.to_vec()));
    if f.is_empty() || g.is_empty() {
        return f.is_empty() && g.is_empty();
    }
    let (pf, pg) = (zpoly::primitive(&f), zpoly::primitive(&g));
    pf == pg || pf == zpoly::scale(&pg, &BigInt::from(-1))
}

// ---------------------------------------------------------------------------
// Small exact checks

/// Eisenstein's criterion for an integer polynomial at `p`.
pub fn eisenstein_univariate(f: &[BigInt], p: u64) -> bool {
    let f = zpoly::trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let pb = BigInt::from(p);
    let div = |c: &BigInt, m: &BigInt| (c % m).is_zero();
    !div(f.last().unwrap(), &pb) && f[..f.len() - 1].iter().all(|c| div(c, &pb)) && !div(&f[0], &(&pb * &pb))
}

/// Prime element of the coefficient ring for a multivariate Eisenstein test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeElement {
    Integer(u64),
    Variable(String),
}

/// Eisenstein's criterion for `f` as a polynomial in `var` over the ring of
/// the remaining variables, at a rational prime or at a variable.
pub fn eisenstein_test(f: &MPoly, var: &str, prime: &PrimeElement) -> Result<bool> {
    let vi = f.var_index(var).ok_or_else(|| Error::Invalid(format!("no variable {var}")))?;
    let coeffs = f.collect(&[vi]);
    let Some(n) = coeffs.keys().map(|e| e[0]).max() else { return Ok(false) };
    if n == 0 {
        return Ok(false);
    }
    // (divisible by π, divisible by π²)
    let test = |c: &MPoly| -> Result<(bool, bool)> {
        Ok(match prime {
            PrimeElement::Integer(p) => {
                let pb = BigInt::from(*p);
                let p2 = &pb * &pb;
                (c.terms.values().all(|a| (a % &pb).is_zero()), c.terms.values().all(|a| (a % &p2).is_zero()))
            }
            PrimeElement::Variable(v) => {
                let k = c.var_index(v).ok_or_else(|| Error::Invalid(format!("no variable {v}")))?;
                (c.terms.keys().all(|e| e[k] >= 1), c.terms.keys().all(|e| e[k] >= 2))
            }
        })
    };
    let zero = MPoly::zero(&[]);
    let coeff = |i: u32| coeffs.get(&vec![i]).unwrap_or(&zero);
    if test(coeff(n))?.0 {
        return Ok(false);
    }
    for i in 0..n {
        if !coeffs.contains_key(&vec![i]) {
            continue;
        }
        if !test(coeff(i))?.0 {
            return Ok(false);
        }
    }
    let c0 = coeff(0);
    Ok(!c0.is_zero() && !test(c0)?.1)
}

/// Symmetric matrix `2·Q` of a ternary quadratic form.
fn conic_matrix(q: &MPoly) -> Result<Vec<Vec<BigInt>>> {
    if q.nvars() != 3 || q.is_zero() || q.total_degree() != Some(2) || !q.is_homogeneous() {
        return Err(Error::Invalid("expected a nonzero ternary quadratic form".into()));
    }
    let mut m = vec![vec![BigInt::zero(); 3]; 3];
    for (e, c) in &q.terms {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] += c * 2;
        } else {
            m[i][j] += c;
            m[j][i] += c;
        }
    }
    Ok(m)
}

fn rank_q(mut m: Vec<Vec<BigRational>>) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..rows {
            let f = &m[i][c] / &m[r][c];
            for k in c..cols {
                let v = &f * &m[r][k];
                m[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Rank of a ternary quadratic form over `Q`; the conic is reducible over `C`
/// exactly when the rank is at most 2.
pub fn conic_rank(q: &MPoly) -> Result<usize> {
    let m = conic_matrix(q)?;
    Ok(rank_q(m.into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect()))
}

/// Rank of the reduction mod an odd prime `p`.
pub fn conic_rank_mod(q: &MPoly, p: u64) -> Result<usize> {
    if p == 2 {
        return Err(Error::Unsupported("quadratic forms in characteristic 2".into()));
    }
    let pb = BigInt::from(p);
    let m: Vec<Vec<u64>> = conic_matrix(q)?
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    Ok(LinearSolver::new(&m, 3, p).rank)
}

pub fn irreducible_q(f: &[BigInt]) -> Result<bool> {
    if zpoly::trim(f.to_vec()).is_empty() {
        return Err(Error::Invalid("zero polynomial".into()));
    }
    Ok(zpoly::is_irreducible(f))
}

/// Irreducibility over `F_p`; the degree must survive reduction.
pub fn irreducible_mod_p(f: &[BigInt], p: u64) -> Result<bool> {
    let f = zpoly::trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::Invalid("zero polynomial".into()));
    }
    let pb = BigInt::from(p);
    let g: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    if g.last() == Some(&0) {
        return Err(Error::Invalid(format!("leading coefficient vanishes mod {p}")));
    }
    Ok(modpoly::is_irreducible(&g, p))
}

/// Smallest `a ≥ 1` with `u^k − a` irreducible over `F_p`.
pub fn smallest_irreducible_binomial(p: u64, k: usize) -> Option<u64> {
    (1..p).find(|&a| {
        let mut f = vec![BigInt::zero(); k + 1];
        f[0] = BigInt::from(-(a as i64));
        f[k] = BigInt::one();
        irreducible_mod_p(&f, p).unwrap_or(false)
    })
}

/// Whether the parametrized curve (binary forms in `s, t`, one per surface
/// variable) lies on the surface `f = 0`.
pub fn verify_curve_on_surface(param: &[MPoly], f: &MPoly) -> Result<bool> {
    if param.len() != f.nvars() {
        return Err(Error::Invalid("one coordinate form per surface variable".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::Invalid("surface equation is not homogeneous".into()));
    }
    let degs: std::collections::BTreeSet<u32> =
        param.iter().filter(|c| !c.is_zero()).map(|c| c.total_degree().unwrap_or(0)).collect();
    if degs.len() > 1 || param.iter().any(|c| !c.is_homogeneous()) {
        return Err(Error::Invalid("parametrization is not by forms of one degree".into()));
    }
    if degs.is_empty() {
        return Err(Error::Invalid("parametrization vanishes identically".into()));
    }
    Ok(f.compose(param).is_zero())
}

/// As [`verify_curve_on_surface`] with coefficients in `Z[ζ_n]`: each
/// coordinate is `Σ c_i s^i t^{d−i}`, given by its coefficients `c_0 … c_d`.
pub fn verify_curve_on_surface_cyc(param: &[CycIntPoly], d: usize, f: &MPoly) -> Result<bool> {
    if param.len() != f.nvars() || !f.is_homogeneous() {
        return Err(Error::Invalid("need one form per variable of a homogeneous surface".into()));
    }
    if param.iter().any(|c| c.coeffs.len() > d + 1) {
        return Err(Error::Invalid(format!("coordinate of degree above {d}")));
    }
    let n = param.first().map_or(1, |c| c.n);
    let mut acc = vec![CycInt::zero(n); 0];
    for (e, c) in &f.terms {
        let mut t = CycIntPoly { n, coeffs: vec![CycInt::from_int(n, c.clone())] };
        for (comp, &k) in param.iter().zip(e) {
            for _ in 0..k {
                t = t.mul(comp);
            }
        }
        if acc.len() < t.coeffs.len() {
            acc.resize(t.coeffs.len(), CycInt::zero(n));
        }
        for (a, b) in acc.iter_mut().zip(&t.coeffs) {
            *a = a.add(b);
        }
    }
    Ok(acc.iter().all(CycInt::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq_ansatz(sign: i64) -> Ansatz {
        Ansatz {
            kind: AnsatzKind::LineOnDoubleCover,
            free: vec!["y".into()],
            substitutions: vec![
                SubstitutionSpec { var: "x".into(), monomials: vec!["1".into(), "y".into()], residue: "0".into() },
                SubstitutionSpec {
                    var: "w".into(),
                    monomials: ["1", "y", "y^2", "y^3"].map(String::from).to_vec(),
                    residue: sign.to_string(),
                },
            ],
            constants: BTreeMap::new(),
        }
    }

    #[test]
    fn undeformed_cover_lifts_to_precision() {
        let ctx = PadicPolyContext::new(11, 6).unwrap();
        let f = ctx.instantiate("w^2-x^5-xy^5-1", &["x", "y", "w"]).unwrap();
        let r = square_lift_order(&f, &sq_ansatz(1), &ctx).unwrap();
        assert!(!r.resolved);
        assert_eq!(r.max_order, 6);
        assert!(r.unique_per_order);
    }

    #[test]
    fn linear_solver_kernel_and_witness() {
        // x + y = b0, 2x + 2y = b1, 0 = b2 over F_7
        let s = LinearSolver::new(&[vec![1, 1], vec![2, 2], vec![0, 0]], 2, 7);
        assert_eq!(s.rank, 1);
        assert_eq!(s.kernel.len(), 1);
        assert!(s.solve(&[3, 6, 0]).is_ok());
        assert_eq!(s.solve(&[3, 5, 0]), Err(vec![0, 1]));
        assert_eq!(s.solve(&[3, 6, 1]), Err(vec![2]));
    }

    #[test]
    fn formal_resultant_degree_drop() {
        let l = 101;
        // a = 0·y + 1 formally of degree 1, b = y − 3
        assert_eq!(formal_resultant(&[1, 0], &[98, 1], l), 100);
        assert_eq!(formal_resultant(&[98, 1], &[1, 0], l), 1);
        assert_eq!(formal_resultant(&[1, 0], &[2, 0], l), 0);
    }

    #[test]
    fn rational_reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let a = (BigInt::from(-5) * BigInt::from(27).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(BigRational::new((-5).into(), 27.into())));
    }

    #[test]
    fn hensel_cube_root_of_unity() {
        let ctx = PadicPolyContext::new(61, 5).unwrap();
        let r = ctx.hensel_root(&[1, 1, 1]).unwrap();
        let m = ctx.modulus();
        assert!((&r * &r * &r - BigInt::one()).mod_floor(&m).is_zero());
        assert!(PadicPolyContext::new(5, 3).unwrap().hensel_root(&[1, 1, 1]).is_err());
    }
}
