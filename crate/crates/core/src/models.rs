//! Concrete surfaces and the count → trace pipelines built on them.

use crate::cyclo::{CycInt, CycIntPoly};
use crate::error::{Error, Result};
use crate::frobpoly::{
    complete_paired, duality_complete, traces_to_coeffs, AdicReport, CharpolyProblem, PairedTail, Pairing, WrapRing,
};
use crate::gf::cache::{CountCache, CountJob};
use crate::gf::{count_double_cover, count_twisted, Automorphism, Field};
use crate::mpoly::MPoly;
use crate::zpoly::ZPoly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const QUINTIC_VARS: [&str; 4] = ["x", "y", "z", "w"];

/// A quintic `y^5 − x^4 y = S(x, z, w)` in characteristic 5 with the
/// automorphisms `φ: y ↦ y + x` (order 5) and `ι: z ↔ w` (order 2).
#[derive(Clone, Debug)]
pub struct WildQuintic {
    pub name: &'static str,
    pub poly: MPoly,
    /// Number of `F_p`-rational algebraic classes in each `(ι = ±1, φ = ζ^k)`
    /// eigenspace, indexed `[sign index][k]` with sign index 0 for `+1`.
    pub rational_classes: [[u32; 5]; 2],
}

pub fn first_quintic() -> WildQuintic {
    WildQuintic {
        name: "first",
        poly: MPoly::parse("y^5 - x^4y - zw(x^3 + (x-z-w)(z^2+zw+w^2))", &QUINTIC_VARS).unwrap(),
        rational_classes: [[0, 1, 1, 1, 1], [0, 1, 1, 1, 1]],
    }
}

pub fn second_quintic() -> WildQuintic {
    WildQuintic {
        name: "second",
        poly: MPoly::parse(
            "y^5 - x^4y - (z+w)((z-w)^2(z^2+zw+w^2+x(z+w)) - x^2(z^2-zw+w^2) + x^3(z+w) - 2x^4)",
            &QUINTIC_VARS,
        )
        .unwrap(),
        rational_classes: [[0, 1, 1, 1, 1], [0, 0, 0, 0, 0]],
    }
}

/// `(φ^j ι^e)^{-1}`: points with `Frob(P) = G·P` are the fixed points of
/// `φ^j ι^e ∘ Frob`.
pub fn quintic_twist(j: u64, e: u64) -> Automorphism {
    let phi = Automorphism::from_rules(&QUINTIC_VARS, 5, &[("y", "y + x")]).unwrap();
    let iota = Automorphism::from_rules(&QUINTIC_VARS, 5, &[("z", "w"), ("w", "z")]).unwrap();
    phi.pow(j).compose(&iota.pow(e)).inverse()
}

/// Eigenspace traces at one level `q = 5^k`.
#[derive(Clone, Debug)]
pub struct LevelTraces {
    pub k: u32,
    /// `Fix_{j,e}` for `j < 5`, `e < 2`.
    pub fix: [[u64; 2]; 5],
    /// Traces on `U_±` eigenspaces `ζ^k`, `[sign index][k]`, after removing
    /// the algebraic classes.
    pub traces: [Vec<CycInt>; 2],
}

impl WildQuintic {
    pub fn fix_count(&self, j: u64, e: u64, k: u32, cache: &CountCache) -> Result<u64> {
        let g = quintic_twist(j, e);
        let job = CountJob {
            kind: "twisted-projective".into(),
            model: self.poly.to_string(),
            p: 5,
            k,
            twist: g.matrix.clone(),
            boundary: 0,
        };
        cache.get_or_compute(&job, || count_twisted(&self.poly, &g, k, Some((0, 1))))
    }

    pub fn level(&self, k: u32, cache: &CountCache) -> Result<LevelTraces> {
        let mut fix = [[0u64; 2]; 5];
        for (j, row) in fix.iter_mut().enumerate() {
            for (e, slot) in row.iter_mut().enumerate() {
                *slot = self.fix_count(j as u64, e as u64, k, cache)?;
            }
        }
        let q = BigInt::from(5u64.pow(k));
        let traces = split_traces(&fix, &q, &self.rational_classes)?;
        Ok(LevelTraces { k, fix, traces })
    }
}

/// Two-stage projection: over `ι` (order 2), then over `φ` (order 5).
pub fn split_traces(fix: &[[u64; 2]; 5], q: &BigInt, classes: &[[u32; 5]; 2]) -> Result<[Vec<CycInt>; 2]> {
    let base = BigInt::from(1) + q * q;
    let mut by_sign: [Vec<BigInt>; 2] = [Vec::new(), Vec::new()];
    for row in fix {
        let v0 = BigInt::from(row[0]) - &base;
        let v1 = BigInt::from(row[1]) - &base;
        let s = crate::frobpoly::project(&[v0, v1], 2)?;
        by_sign[0].push(s[0].c[0].clone());
        by_sign[1].push(s[1].c[0].clone());
    }
    let mut out: [Vec<CycInt>; 2] = [Vec::new(), Vec::new()];
    for s in 0..2 {
        let t = crate::frobpoly::project(&by_sign[s], 5)?;
        out[s] = t
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.sub(&CycInt::from_int(5, q * BigInt::from(classes[s][k]))))
            .collect();
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// double covers

/// `v² = f(x, y)` compactified with `boundary(q)` extra points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleCover {
    pub name: String,
    pub vars: Vec<String>,
    pub f: String,
    pub p: u64,
    /// Extra points outside the affine chart: `a + b·q`.
    pub boundary: (i64, i64),
    /// Constant correction to `tr(Frob | H²)` beyond `1 + q²`: `c·q`.
    pub known_q_classes: i64,
}

impl DoubleCover {
    pub fn poly(&self) -> Result<MPoly> {
        let v: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        MPoly::parse(&self.f, &v)
    }

    pub fn count(&self, k: u32, cache: &CountCache) -> Result<u64> {
        let field = Field::get(self.p, k)?;
        let q = field.q as i64;
        let b = self.boundary.0 + self.boundary.1 * q;
        if b < 0 {
            return Err(Error::Invalid("negative boundary".into()));
        }
        let f = self.poly()?;
        let job = CountJob {
            kind: "double-cover".into(),
            model: f.to_string(),
            p: self.p,
            k,
            twist: Vec::new(),
            boundary: b as u64,
        };
        cache.get_or_compute(&job, || count_double_cover(&f, &field, b as u64))
    }

    /// `tr(Frob_q | complement of the known classes)`.
    pub fn trace(&self, k: u32, cache: &CountCache) -> Result<BigInt> {
        let n = self.count(k, cache)?;
        let q = BigInt::from(self.p).pow(k);
        Ok(BigInt::from(n) - 1 - &q * &q - &q * BigInt::from(self.known_q_classes))
    }
}

/// The double cover `v² = y⁵ − x⁴y + x⁴ + x³ + x² + x + 1` over `F_3`.
pub fn sextic_cover() -> DoubleCover {
    DoubleCover {
        name: "v^2 = y^5 - x^4y + x^4 + x^3 + x^2 + x + 1".into(),
        vars: vec!["x".into(), "y".into()],
        f: "y^5 - x^4y + x^4 + x^3 + x^2 + x + 1".into(),
        p: 3,
        boundary: (1, 1),
        known_q_classes: 1,
    }
}

/// Elliptic surfaces `y² = x³ + A(s)x² + B(s)x` over the `s`-line with an
/// `I_12` fibre at infinity; `tr(F | Triv^⊥) = Σ_s Σ_x χ(x³ + Ax² + Bx) − 1`.
#[derive(Clone, Debug)]
pub struct EllipticFamily {
    pub name: String,
    /// `A(s)` and `B(s)` as expressions in `s`.
    pub a: String,
    pub b: String,
}

impl EllipticFamily {
    /// `A = (s+2c)(s³ + 2bs² + (b²+2b−3)s + 2b² − 4b + 10)`, `B = 16(s+2c)²`
    /// with `c = +1` for the first family and `c = −1` for the second.
    pub fn member(which: u8, b: i64) -> Self {
        let shift = if which == 1 { "s + 2" } else { "s - 2" };
        let a = format!(
            "({shift})(s^3 + {}s^2 + {}s + {})",
            2 * b,
            b * b + 2 * b - 3,
            2 * b * b - 4 * b + 10
        );
        let bb = format!("16({shift})^2");
        EllipticFamily {
            name: format!("X{which}(b={b})"),
            a,
            b: bb,
        }
    }

    pub fn weierstrass(&self) -> MPoly {
        MPoly::parse(&format!("x^3 + ({})x^2 + ({})x", self.a, self.b), &["s", "x"]).unwrap()
    }

    pub fn trace(&self, p: u64, k: u32, cache: &CountCache) -> Result<BigInt> {
        let field = Field::get(p, k)?;
        let f = self.weierstrass();
        let job = CountJob {
            kind: "double-cover".into(),
            model: f.to_string(),
            p,
            k,
            twist: Vec::new(),
            boundary: 0,
        };
        // Σ(1 + χ) = q² + Σχ
        let n = cache.get_or_compute(&job, || count_double_cover(&f, &field, 0))?;
        let q = BigInt::from(field.q);
        Ok(BigInt::from(n) - &q * &q - 1)
    }
}

/// Frobenius data on `U_±` of a [`WildQuintic`] at `p = 5`.
#[derive(Clone, Debug)]
pub struct QuinticCharpolys {
    /// Eigenfactors on the `ζ^k` spaces, `k = 1..4`, for `U_+`.
    pub plus_factors: Vec<CycIntPoly>,
    pub minus_factors: Vec<CycIntPoly>,
    /// Products of the four eigenfactors.
    pub plus: ZPoly,
    pub minus: ZPoly,
    /// The 2-adic route for the `ζ` eigenfactor of `U_−`, one entry per
    /// sign of the functional equation, if requested.
    pub minus_adic: Vec<(i8, Vec<CycIntPoly>, AdicReport)>,
}

impl WildQuintic {
    /// Reconstructs `χ^±` from counts over `F_5 … F_{5^4}`. `U_+` has
    /// eigenspaces of dimension `plus_dim`, `U_−` of dimension `minus_dim`.
    pub fn charpolys(
        &self,
        plus_dim: usize,
        minus_dim: usize,
        cache: &CountCache,
        adic_budget: Option<u64>,
    ) -> Result<QuinticCharpolys> {
        let levels: Vec<LevelTraces> = (1..=4).map(|k| self.level(k, cache)).collect::<Result<_>>()?;
        let q = BigInt::from(5);
        let factor = |s: usize, k: usize, dim: usize| -> Result<(CycIntPoly, Vec<CycInt>)> {
            let traces: Vec<CycInt> = levels.iter().take(dim).map(|l| l.traces[s][k].clone()).collect();
            let e = traces_to_coeffs(5, &traces, dim)?;
            Ok((complete_paired(&e, dim, &q)?, e))
        };
        let mut plus_factors = Vec::new();
        let mut minus_factors = Vec::new();
        let mut known_minus = Vec::new();
        for k in 1..5 {
            plus_factors.push(factor(0, k, plus_dim)?.0);
            let (f, e) = factor(1, k, minus_dim)?;
            minus_factors.push(f);
            known_minus.push(e);
        }
        let product = |fs: &[CycIntPoly]| -> Result<ZPoly> {
            let mut acc = fs[0].clone();
            for f in &fs[1..] {
                acc = acc.mul(f);
            }
            acc.to_int_poly().ok_or_else(|| Error::Inconsistent("eigenfactor product is not rational".into()))
        };
        let plus = product(&plus_factors)?;
        let minus = product(&minus_factors)?;
        let mut minus_adic = Vec::new();
        if let Some(budget) = adic_budget {
            for sign in [1i8, -1] {
                let tail =
                    PairedTail { ring: WrapRing::new(5), known: known_minus[0].clone(), d: minus_dim, q: q.clone(), sign };
                let (polys, report) = tail.solve(budget)?;
                minus_adic.push((sign, polys, report));
            }
        }
        Ok(QuinticCharpolys { plus_factors, minus_factors, plus, minus, minus_adic })
    }
}

impl EllipticFamily {
    /// Charpoly candidates of dimension `dim` on `Triv^⊥` at `p` from traces
    /// over `F_p … F_{p^levels}`.
    pub fn candidates(&self, p: u64, dim: usize, levels: u32, cache: &CountCache) -> Result<Vec<(i8, ZPoly)>> {
        let traces: Vec<CycInt> =
            (1..=levels).map(|k| self.trace(p, k, cache).map(|t| CycInt::from_int(1, t))).collect::<Result<_>>()?;
        let problem = CharpolyProblem { n: 1, dim, q: p.into(), traces, pairing: Pairing::SelfDual, sign: None };
        Ok(duality_complete(&problem)?
            .into_iter()
            .map(|c| (c.sign.unwrap(), c.poly.to_int_poly().unwrap()))
            .collect())
    }
}
