//! Subcommand implementations. Each returns a JSON value and an exit status.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use picard_core::charspace::{
    self, fermat_invariants, galois_orbit, good_residues, supersingular_witness, Character4, Field,
};
use picard_core::cyclo::{CycInt, CycIntPoly};
use picard_core::delsarte::{self, census_quintics, fermat_cover_degree, invariant_characters, picard_profile, surface_invariants};
use picard_core::frobpoly::{self, CharpolyProblem, Pairing, DEFAULT_ADIC_BUDGET};
use picard_core::gf::cache::{CountCache, CountJob};
use picard_core::gf::{self, Automorphism};
use picard_core::latgram::{gram_from_config, rank_det_signature, CurveConfig};
use picard_core::models::{self, EllipticFamily};
use picard_core::mpoly::MPoly;
use picard_core::padlift::{irreducible_q, proportional, DEFAULT_LIFT_BUDGET};
use picard_core::zpoly::{self, ZPoly};
use picard_core::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::registry::{self, parse_tuple};
use crate::Exit;

pub type Outcome = (Value, Exit);

fn ok(v: Value) -> Result<Outcome> {
    Ok((v, Exit::Ok))
}

fn verdict(v: Value, pass: bool) -> Result<Outcome> {
    Ok((v, if pass { Exit::Ok } else { Exit::Mismatch }))
}

fn field_of(mod_p: Option<i64>) -> Field {
    mod_p.map_or(Field::CharZero, Field::ModP)
}

pub fn fermat(m: i64, mod_p: Option<i64>) -> Result<Outcome> {
    let inv = fermat_invariants(m, field_of(mod_p))?;
    let mut v = json!({
        "m": inv.m,
        "b2": inv.b2,
        "pg": inv.pg,
        "lambda": inv.lambda,
        "rho": inv.rho,
        "field": mod_p.map_or("char 0".to_string(), |p| format!("mod {p}")),
    });
    if let Some(p) = mod_p {
        v["supersingular_witness"] = json!(supersingular_witness(m, p)?);
    }
    ok(v)
}

pub fn delsarte(surface: &str, mod_p: Option<i64>, profile: bool) -> Result<Outcome> {
    let e = registry::resolve_surface(surface)?;
    let inv = surface_invariants(&e, field_of(mod_p))?;
    let mut v = json!({
        "surface": e.monomial_string(),
        "degree": e.d,
        "cover_degree": inv.m,
        "b2": inv.b2,
        "pg": inv.pg,
        "lambda": inv.lambda,
        "rho": inv.rho,
        "rational_double_points_only": inv.rdp_flag,
        "field": mod_p.map_or("char 0".to_string(), |p| format!("mod {p}")),
    });
    if profile {
        let mut by_rho: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (r, rho) in picard_profile(&e)? {
            by_rho.entry(rho).or_default().push(r);
        }
        v["profile"] = by_rho
            .into_iter()
            .map(|(rho, rs)| json!({"rho": rho, "count": rs.len(), "residues": rs}))
            .collect();
    }
    ok(v)
}

pub fn census(out: Option<&Path>) -> Result<Outcome> {
    let c = census_quintics()?;
    let expected = delsarte::expected_census_set();
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&c.records).expect("records serialize");
        std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    let pass = c.attained == expected;
    verdict(
        json!({
            "candidates": c.candidates,
            "records": c.records.len(),
            "attained": c.attained,
            "expected": expected,
            "match": pass,
        }),
        pass,
    )
}

pub fn hset(surface: &str, rep: &str) -> Result<Outcome> {
    let e = registry::resolve_surface(surface)?;
    let m = fermat_cover_degree(&e)?;
    let a = parse_tuple(rep)?;
    let c = match a.len() {
        3 => Character4::from_triple(m, [a[0], a[1], a[2]])?,
        4 => Character4::new(m, [a[0], a[1], a[2], a[3]])?,
        _ => return Err(Error::Invalid(format!("orbit representative needs 3 or 4 entries, got {}", a.len()))),
    };
    let chars = invariant_characters(&e)?;
    if !chars.contains(&c) {
        return Err(Error::Invalid(format!("{:?} is not an invariant character of {}", c.b, e.monomial_string())));
    }
    let orbit = galois_orbit(&c);
    let residues = good_residues(&orbit);
    ok(json!({
        "surface": e.monomial_string(),
        "m": m,
        "representative": c.b,
        "orbit_size": orbit.len(),
        "algebraic_over_c": charspace::orbit_algebraic_char0(&orbit),
        "size": residues.len(),
        "residues": residues,
    }))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    Projective,
    Affine,
    DoubleCover,
}

/// Input of `count`.
#[derive(Clone, Debug, Deserialize)]
pub struct CountModel {
    pub kind: CountKind,
    pub variables: Vec<String>,
    pub polynomial: String,
    /// Substitution rules `[target, linear form]` of an automorphism over `F_p`.
    #[serde(default)]
    pub automorphism: Vec<(String, String)>,
    /// Extra points `a + b·q` for double covers.
    #[serde(default)]
    pub boundary: (i64, i64),
}

pub fn count(model: &CountModel, p: u64, k: u32, twist: Option<u64>, cache: &CountCache) -> Result<Outcome> {
    let vars: Vec<&str> = model.variables.iter().map(String::as_str).collect();
    let f = MPoly::parse(&model.polynomial, &vars)?;
    let field = gf::Field::get(p, k)?;
    let q = field.q;
    let mut job = CountJob { kind: String::new(), model: f.to_string(), p, k, twist: Vec::new(), boundary: 0 };
    let n = match (twist, &model.kind) {
        (Some(j), CountKind::Projective) => {
            if model.automorphism.is_empty() {
                return Err(Error::Invalid("--twist needs an automorphism in the model".into()));
            }
            let rules: Vec<(&str, &str)> = model.automorphism.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let g = Automorphism::from_rules(&vars, p, &rules)?;
            if !g.preserves(&f) {
                return Err(Error::Invalid("the automorphism does not preserve the model".into()));
            }
            let g = g.pow(j).inverse();
            job.kind = "twisted-projective".into();
            job.twist = g.matrix.clone();
            cache.get_or_compute(&job, || gf::count_twisted(&f, &g, k, None))?
        }
        (Some(_), _) => return Err(Error::Invalid("twisted counts are projective".into())),
        (None, CountKind::Projective) => {
            job.kind = "projective".into();
            cache.get_or_compute(&job, || gf::count_projective(&f, &field))?
        }
        (None, CountKind::Affine) => {
            job.kind = "affine".into();
            cache.get_or_compute(&job, || gf::count_affine(&f, &field))?
        }
        (None, CountKind::DoubleCover) => {
            let b = model.boundary.0 + model.boundary.1 * q as i64;
            if b < 0 {
                return Err(Error::Invalid("negative boundary".into()));
            }
            job.kind = "double-cover".into();
            job.boundary = b as u64;
            cache.get_or_compute(&job, || gf::count_double_cover(&f, &field, b as u64))?
        }
    };
    ok(json!({"p": p, "k": k, "q": q, "twist": twist, "count": n}))
}

fn int_poly_json(label: &str, f: &[BigInt], q: &BigInt) -> Value {
    let u = frobpoly::unity_root_count(f, q);
    json!({
        "label": label,
        "degree": f.len().saturating_sub(1),
        "polynomial": zpoly::display(f, "λ"),
        "coefficients": zpoly::to_strings(f),
        "irreducible": zpoly::is_irreducible(f),
        "unity_roots": u.count,
        "normalized_integral": u.integral,
        "weil": frobpoly::weil_check(f, q),
    })
}

fn cyc_poly_json(label: &str, f: &CycIntPoly) -> Value {
    json!({
        "label": label,
        "degree": f.degree(),
        "polynomial": f.display("λ"),
        "coefficients": picard_core::cyclo::CycIntPolyJson::from(f),
    })
}

fn quadratic_classes(f: &ZPoly) -> Vec<String> {
    zpoly::factor(f)
        .into_iter()
        .filter(|(g, _)| g.len() == 3)
        .filter_map(|(g, _)| frobpoly::quad_splitting_class(&g).ok())
        .map(|c| c.to_string())
        .collect()
}

/// Input of `charpoly`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Recipe {
    /// `χ^±` of the first wild quintic; `adic` adds the 2-adic route.
    WildQuintic {
        #[serde(default)]
        adic: bool,
    },
    SecondWildQuintic,
    DoubleSextic,
    /// Elliptic K3 family `which ∈ {1, 2}` with parameter `b`.
    Elliptic { family: u8, b: i64, p: u64, dim: usize, levels: u32 },
    /// Completion of known power sums.
    Traces {
        #[serde(default = "one")]
        n: u64,
        dim: usize,
        q: i64,
        /// Integers, or coordinate vectors on the power basis of `Z[ζ_n]`.
        traces: Vec<Value>,
        #[serde(default = "self_dual")]
        pairing: Pairing,
        #[serde(default)]
        sign: Option<i8>,
    },
}

fn one() -> u64 {
    1
}

fn self_dual() -> Pairing {
    Pairing::SelfDual
}

fn parse_cyc(n: u64, v: &Value) -> Result<CycInt> {
    let int = |x: &Value| -> Result<i64> {
        match x {
            Value::Number(k) => k.as_i64().ok_or_else(|| Error::Invalid(format!("not an integer: {k}"))),
            Value::String(s) => s.parse().map_err(|_| Error::Invalid(format!("not an integer: {s}"))),
            other => Err(Error::Invalid(format!("not an integer: {other}"))),
        }
    };
    match v {
        Value::Array(xs) => Ok(CycInt::from_coords(n, &xs.iter().map(int).collect::<Result<Vec<_>>>()?)),
        x => Ok(CycInt::from_int(n, int(x)?)),
    }
}

pub fn resolve_recipe(arg: &str) -> Result<Recipe> {
    if let Some(r) = registry::load::<Recipe>(arg) {
        return r;
    }
    let v = json!({ "model": arg });
    serde_json::from_value(v).map_err(|_| registry::unknown("charpoly recipe", arg, registry::CHARPOLY_RECIPES.iter().map(|s| s.to_string())))
}

pub fn charpoly(recipe: &Recipe, cache: &CountCache) -> Result<Outcome> {
    match recipe {
        Recipe::WildQuintic { adic } => quintic(&models::first_quintic(), *adic, cache),
        Recipe::SecondWildQuintic => quintic(&models::second_quintic(), false, cache),
        Recipe::DoubleSextic => {
            let x = models::sextic_cover();
            let traces: Vec<CycInt> = (1..=8).map(|r| x.trace(r, cache).map(|t| CycInt::from_int(1, t))).collect::<Result<_>>()?;
            let p = CharpolyProblem { n: 1, dim: 16, q: 3.into(), traces, pairing: Pairing::SelfDual, sign: None };
            let three = BigInt::from(3);
            let cands: Vec<Value> = frobpoly::duality_complete(&p)?
                .iter()
                .filter_map(|c| {
                    let f = c.poly.to_int_poly()?;
                    let u = frobpoly::unity_root_count(&f, &three);
                    let mut v = int_poly_json("χ", &f, &three);
                    v["sign"] = json!(c.sign);
                    v["cyclotomic_factors"] = json!(u.cyclotomic);
                    Some(v)
                })
                .collect();
            ok(json!({"model": x.name, "candidates": cands}))
        }
        Recipe::Elliptic { family, b, p, dim, levels } => {
            if !matches!(family, 1 | 2) {
                return Err(Error::Invalid(format!("family must be 1 or 2, got {family}")));
            }
            let fam = EllipticFamily::member(*family, *b);
            let q = BigInt::from(*p);
            let cands: Vec<Value> = fam
                .candidates(*p, *dim, *levels, cache)?
                .iter()
                .map(|(sign, f)| {
                    let mut v = int_poly_json("χ", f, &q);
                    v["sign"] = json!(sign);
                    v["quadratic_classes"] = json!(quadratic_classes(f));
                    v
                })
                .collect();
            ok(json!({"model": fam.name, "p": p, "candidates": cands}))
        }
        Recipe::Traces { n, dim, q, traces, pairing, sign } => {
            let traces = traces.iter().map(|t| parse_cyc(*n, t)).collect::<Result<Vec<_>>>()?;
            let p = CharpolyProblem { n: *n, dim: *dim, q: (*q).into(), traces, pairing: *pairing, sign: *sign };
            let qb = BigInt::from(*q);
            let cands: Vec<Value> = frobpoly::duality_complete(&p)?
                .iter()
                .map(|c| {
                    let mut v = match c.poly.to_int_poly() {
                        Some(f) => int_poly_json("χ", &f, &qb),
                        None => cyc_poly_json("χ", &c.poly),
                    };
                    v["sign"] = json!(c.sign);
                    v
                })
                .collect();
            ok(json!({"candidates": cands}))
        }
    }
}

fn quintic(model: &models::WildQuintic, adic: bool, cache: &CountCache) -> Result<Outcome> {
    let five = BigInt::from(5);
    let c = model.charpolys(4, 7, cache, adic.then_some(DEFAULT_ADIC_BUDGET))?;
    let full = zpoly::mul(&c.plus, &c.minus);
    let mut v = json!({
        "model": model.name,
        "plus": int_poly_json("plus", &c.plus, &five),
        "minus": int_poly_json("minus", &c.minus, &five),
        "plus_factor": cyc_poly_json("plus, ζ eigenspace", &c.plus_factors[0]),
        "minus_factor": cyc_poly_json("minus, ζ eigenspace", &c.minus_factors[0]),
        "rho_bound": frobpoly::rho_upper_bound(&full, &five, 53 - 44),
    });
    if !c.minus_adic.is_empty() {
        v["adic"] = c
            .minus_adic
            .iter()
            .map(|(sign, sols, rep)| {
                json!({
                    "sign": sign,
                    "solutions": sols.len(),
                    "roots_mod_2": rep.branches.len(),
                    "dead_branches": rep.branches.iter().filter(|b| b.solutions == 0).count(),
                    "max_steps": rep.branches.iter().map(|b| b.steps).max(),
                    "visits": rep.visits,
                })
            })
            .collect();
    }
    ok(v)
}

pub fn lift(arg: &str) -> Result<Outcome> {
    let mut all_ok = true;
    let mut rows = Vec::new();
    for f in registry::lift_fixtures(arg)? {
        let out = f.run(DEFAULT_LIFT_BUDGET)?;
        let m = f.matches(&out);
        all_ok &= m != Some(false);
        rows.push(json!({
            "name": f.name,
            "order": out.report.order_display(),
            "unique": out.report.unique_per_order,
            "branches": out.report.branches,
            "witness": out.report.witness,
            "culprits": out.culprits,
            "expected": f.expected.as_ref().map(|e| e.max_order.map_or("lifts".to_string(), |k| k.to_string())),
            "match": m,
        }));
    }
    verdict(Value::Array(rows), all_ok)
}

pub fn pencil(arg: &str) -> Result<Outcome> {
    let mut all_ok = true;
    let mut rows = Vec::new();
    for f in registry::pencil_fixtures(arg)? {
        let h = f.run()?;
        let expected = f.expected_poly()?;
        let m = expected.as_ref().map(|e| proportional(&h, e));
        all_ok &= m != Some(false);
        rows.push(json!({
            "name": f.name,
            "degree": h.len().saturating_sub(1),
            "polynomial": zpoly::display(&h, "t"),
            "irreducible": irreducible_q(&h)?,
            "match": m,
        }));
    }
    verdict(Value::Array(rows), all_ok)
}

/// A curve-configuration file, `concurrent-lines:K` or `a-chain:N`.
pub fn resolve_lattice(arg: &str) -> Result<CurveConfig> {
    if let Some(c) = registry::load::<CurveConfig>(arg) {
        return c;
    }
    let bad = || Error::Invalid(format!("'{arg}' is neither a file nor concurrent-lines:K / a-chain:N"));
    let (kind, n) = arg.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "concurrent-lines" => Ok(CurveConfig::concurrent_lines(n)),
        "a-chain" => Ok(CurveConfig::a_chain(n)),
        _ => Err(bad()),
    }
}

pub fn lattice(config: &CurveConfig) -> Result<Outcome> {
    let g = gram_from_config(config)?;
    let s = rank_det_signature(&g);
    ok(json!({
        "labels": g.labels,
        "rank": s.rank,
        "det": s.det,
        "signature": [s.signature.0, s.signature.1],
        "gram": g.entries,
    }))
}
