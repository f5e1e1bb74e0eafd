//! Named reproduction checks, one per acceptance criterion.
//!
//! Each check compares computed values with the published ones and returns
//! one [`Item`] per comparison. Checks that need point counts carry a cost
//! estimate; when the remaining `--budget` is smaller, they run against the
//! cache only and report [`Status::Skipped`] on a miss.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use picard_core::charspace::{self, Character4, Field};
use picard_core::cyclo::CycInt;
use picard_core::delsarte::{self, ExponentMatrix};
use picard_core::fixtures::{self, elliptic, gaussian};
use picard_core::frobpoly::{self, CharpolyProblem, Pairing, DEFAULT_ADIC_BUDGET};
use picard_core::gf::cache::CountCache;
use picard_core::latgram::{self, CurveConfig};
use picard_core::models::{self, EllipticFamily};
use picard_core::padlift::{self, DEFAULT_LIFT_BUDGET};
use picard_core::zpoly::{self, ZPoly};
use picard_core::{Error, Result};
use serde::Serialize;

use crate::registry;

mod properties;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// One comparison inside a check.
#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

fn item(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Item {
    Item { label: label.into(), ok, detail: detail.into() }
}

fn eq_item<T: PartialEq + std::fmt::Debug>(label: impl Into<String>, got: T, want: T) -> Item {
    let ok = got == want;
    let detail = if ok { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
    item(label, ok, detail)
}

type CheckFn = fn(&CountCache) -> Result<Vec<Item>>;

pub struct ReproCheck {
    pub criterion: u8,
    pub name: &'static str,
    pub title: &'static str,
    /// Rough single-core seconds without a warm cache; zero for checks that
    /// do no point counting.
    pub cost: u64,
    run: CheckFn,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub criterion: u8,
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub items: Vec<Item>,
}

pub fn checks() -> Vec<ReproCheck> {
    vec![
        ReproCheck { criterion: 1, name: "h-set", title: "residues where one orbit becomes algebraic", cost: 0, run: h_set },
        ReproCheck { criterion: 2, name: "complex-picard-numbers", title: "Picard numbers of named Delsarte quintics", cost: 0, run: complex_picard },
        ReproCheck { criterion: 3, name: "quintic-census", title: "attained Picard numbers of Delsarte quintics", cost: 0, run: census },
        ReproCheck { criterion: 4, name: "reduction-profiles", title: "Picard numbers of reductions by residue class", cost: 0, run: profiles },
        ReproCheck { criterion: 5, name: "wild-quintic-plus", title: "χ⁺ of the wild quintic from twisted counts", cost: 20, run: wild_plus },
        ReproCheck { criterion: 6, name: "wild-quintic-minus", title: "χ⁻ of the wild quintic and the 2-adic solve", cost: 25, run: wild_minus },
        ReproCheck { criterion: 7, name: "second-wild-quintic", title: "χ± of the second wild quintic", cost: 20, run: second_quintic },
        ReproCheck { criterion: 8, name: "double-sextic", title: "charpoly of the double sextic over F_3", cost: 5, run: double_sextic },
        ReproCheck { criterion: 9, name: "k3-quotients", title: "elliptic K3 families and Gaussian eigenspaces", cost: 10, run: k3_quotients },
        ReproCheck { criterion: 10, name: "lifting-orders", title: "orders to which curves lift p-adically", cost: 0, run: lifting },
        ReproCheck { criterion: 11, name: "pencil-resultants", title: "singular members of pencils", cost: 0, run: pencils },
        ReproCheck { criterion: 12, name: "lattices", title: "Gram determinants and fibration bound", cost: 0, run: lattices },
        ReproCheck { criterion: 13, name: "properties", title: "sampled invariants and oracle agreement", cost: 15, run: properties::run },
    ]
}

pub fn find(name: &str) -> Option<ReproCheck> {
    checks().into_iter().find(|c| c.name == name || c.criterion.to_string() == name)
}

/// Runs `selected` in order. With a time budget, a counting check whose cost
/// exceeds what remains reads the cache without computing.
pub fn run(selected: &[ReproCheck], cache: &CountCache, budget: Option<u64>) -> Vec<CheckReport> {
    let start = Instant::now();
    let was_read_only = cache.is_read_only();
    let mut out = Vec::new();
    for c in selected {
        let over = budget.is_some_and(|b| c.cost > 0 && start.elapsed().as_secs() + c.cost > b);
        cache.set_read_only(was_read_only || over);
        out.push(run_one(c, cache));
    }
    cache.set_read_only(was_read_only);
    out
}

fn run_one(c: &ReproCheck, cache: &CountCache) -> CheckReport {
    let (status, summary, items) = match (c.run)(cache) {
        Ok(items) => {
            let bad: Vec<&str> = items.iter().filter(|i| !i.ok).map(|i| i.label.as_str()).collect();
            if bad.is_empty() {
                (Status::Pass, format!("{} of {} items agree", items.len(), items.len()), items)
            } else {
                (Status::Fail, format!("mismatch: {}", bad.join("; ")), items)
            }
        }
        Err(Error::Resource(msg)) => (Status::Skipped, format!("over budget: {msg}"), Vec::new()),
        Err(e) => (Status::Fail, format!("error: {e}"), Vec::new()),
    };
    CheckReport { criterion: c.criterion, name: c.name.to_string(), status, summary, items }
}

// ---------------------------------------------------------------------------
// character combinatorics

fn h_set(_: &CountCache) -> Result<Vec<Item>> {
    let e = registry::resolve_surface("quintic-rho13")?;
    let m = delsarte::fermat_cover_degree(&e)?;
    let c = Character4::from_triple(m, [9, 11, 10])?;
    let orbit = charspace::galois_orbit(&c);
    Ok(vec![
        eq_item("cover degree", m, 55),
        item("representative is invariant", delsarte::invariant_characters(&e)?.contains(&c), format!("{:?}", c.b)),
        eq_item("residues", charspace::good_residues(&orbit), vec![3, 19, 24, 27, 29, 37, 38, 39, 42, 47, 48, 53, 54]),
    ])
}

fn complex_picard(_: &CountCache) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for s in registry::SURFACES.iter().filter(|s| s.name != "fermat-quintic") {
        let e = ExponentMatrix::parse(s.monomials)?;
        let inv = delsarte::surface_invariants(&e, Field::CharZero)?;
        items.push(eq_item(format!("{} rho", s.monomials), inv.rho, s.rho));
        items.push(eq_item(format!("{} m", s.monomials), inv.m, s.cover_degree));
    }
    Ok(items)
}

/// Odd numbers up to 45 except 3, 7, 9, 11, 15.
pub fn census_set() -> BTreeSet<i64> {
    (1..=45).step_by(2).filter(|r| ![3, 7, 9, 11, 15].contains(r)).collect()
}

fn census(_: &CountCache) -> Result<Vec<Item>> {
    let c = delsarte::census_quintics()?;
    let mut items = vec![eq_item("attained set", c.attained.clone(), census_set())];
    let low = c.records.iter().all(|r| r.profile.values().all(|&v| v >= r.invariants.rho));
    let at_one = c.records.iter().all(|r| r.profile.get(&1) == Some(&r.invariants.rho));
    items.push(item("reductions never lower ρ", low, format!("{} records", c.records.len())));
    items.push(item("ρ mod p ≡ 1 equals ρ over C", at_one, ""));
    Ok(items)
}

fn profiles(_: &CountCache) -> Result<Vec<Item>> {
    let e = registry::resolve_surface("quintic-rho13")?;
    let prof = delsarte::picard_profile(&e)?;
    let hset: BTreeSet<i64> = [3, 19, 24, 27, 29, 37, 38, 39, 42, 47, 48, 53, 54].into();
    let off: Vec<(i64, i64)> = prof.iter().filter(|(r, _)| !hset.contains(r)).map(|(&r, &v)| (r, v)).collect();
    let off_bad: Vec<_> = off.iter().filter(|(_, v)| *v != 13).collect();
    let mut ss = Vec::new();
    for &r in prof.keys() {
        if charspace::supersingular_witness(55, r)?.is_some() {
            ss.push((r, prof[&r]));
        }
    }
    let ss_bad: Vec<_> = ss.iter().filter(|(_, v)| *v != 53).collect();
    let e2 = registry::resolve_surface("quintic-rho5")?;
    let prof2 = delsarte::picard_profile(&e2)?;
    Ok(vec![
        item("ρ = 13 off the h-set", off_bad.is_empty() && !off.is_empty(), format!("{} residues, exceptions {off_bad:?}", off.len())),
        item("ρ = 53 at supersingular residues", ss_bad.is_empty() && !ss.is_empty(), format!("{} residues, exceptions {ss_bad:?}", ss.len())),
        eq_item("x5 + xy4 + yz4 + zw4 at r ≡ 1 mod 64", prof2.get(&1).copied(), Some(5)),
    ])
}

// ---------------------------------------------------------------------------
// Frobenius charpolys

fn five() -> BigInt {
    BigInt::from(5)
}

/// `5^{−s} f(5λ)`.
fn rescale_down(f: &[BigInt], s: u32) -> ZPoly {
    zpoly::rescale(f, &five()).iter().map(|c| c / five().pow(s)).collect()
}

fn verdict_items(chi: &[BigInt], label: &str) -> Vec<Item> {
    vec![
        item(format!("{label} irreducible"), zpoly::is_irreducible(chi), ""),
        eq_item(format!("{label} roots q·ζ"), frobpoly::unity_root_count(chi, &five()).count, 0),
        item(format!("{label} Weil"), frobpoly::weil_check(chi, &five()), ""),
    ]
}

fn wild_plus(cache: &CountCache) -> Result<Vec<Item>> {
    let c = models::first_quintic().charpolys(4, 7, cache, None)?;
    let mut items = vec![eq_item("χ⁺", zpoly::display(&c.plus, "λ"), zpoly::display(&fixtures::wild_quintic_plus(5), "λ"))];
    items.extend(verdict_items(&c.plus, "χ⁺"));
    Ok(items)
}

fn wild_minus(cache: &CountCache) -> Result<Vec<Item>> {
    let c = models::first_quintic().charpolys(4, 7, cache, Some(DEFAULT_ADIC_BUDGET))?;
    let scaled = rescale_down(&c.minus, 25);
    let mut items = vec![eq_item("5^{-25} χ⁻(5λ)", zpoly::display(&scaled, "λ"), zpoly::display(&fixtures::wild_quintic_minus_scaled(), "λ"))];
    let (sign, sols, rep) = &c.minus_adic[0];
    items.push(eq_item("2-adic: sign", *sign, 1));
    items.push(item("2-adic: unique solution agrees with duality", sols == &vec![c.minus_factors[0].clone()], format!("{} solutions", sols.len())));
    let dead: Vec<_> = rep.branches.iter().filter(|b| b.solutions == 0).collect();
    items.push(eq_item("2-adic: roots mod 2", rep.branches.len(), 4));
    items.push(item("2-adic: three roots die within four steps", dead.len() == 3 && dead.iter().all(|b| b.steps <= 4), format!("steps {:?}", dead.iter().map(|b| b.steps).collect::<Vec<_>>())));
    items.push(item("2-adic: negative sign has no solution", c.minus_adic[1].1.is_empty(), ""));
    items.extend(verdict_items(&c.minus, "χ⁻"));
    let full = zpoly::mul(&c.plus, &c.minus);
    items.push(eq_item("ρ bound", frobpoly::rho_upper_bound(&full, &five(), 53 - 44), 9));
    Ok(items)
}

fn second_quintic(cache: &CountCache) -> Result<Vec<Item>> {
    let c = models::second_quintic().charpolys(4, 7, cache, None)?;
    let plus = frobpoly::normalize(&c.plus, &five());
    let u = frobpoly::unity_root_count(&c.plus, &five());
    let mid = plus[8].clone();
    Ok(vec![
        eq_item("χ₊(5T)/5^16", plus, fixtures::second_quintic_plus_normalized()),
        eq_item("T⁸ coefficient", mid, BigRational::new((-14).into(), 5.into())),
        item("χ₊ not integral after normalizing, so no algebraic classes", !u.integral && u.count == 0, ""),
        eq_item("5³ χ₋", zpoly::display(&rescale_down(&c.minus, 25), "λ"), zpoly::display(&fixtures::second_quintic_minus_scaled(), "λ")),
        eq_item("χ₋ roots q·ζ", frobpoly::unity_root_count(&c.minus, &five()).count, 0),
        eq_item("ρ bound", frobpoly::rho_upper_bound(&zpoly::mul(&c.plus, &c.minus), &five(), 53 - 44), 9),
    ])
}

fn double_sextic(cache: &CountCache) -> Result<Vec<Item>> {
    let x = models::sextic_cover();
    let traces: Vec<i64> = (1..=8)
        .map(|r| x.trace(r, cache).map(|t| i64::try_from(t).expect("trace fits")))
        .collect::<Result<_>>()?;
    let cands = frobpoly::duality_complete(&CharpolyProblem::integral(16, 3, &traces))?;
    let three = BigInt::from(3);
    let mut items = vec![eq_item("candidates", cands.len(), 1)];
    if let Some(chi) = cands[0].poly.to_int_poly() {
        let u = frobpoly::unity_root_count(&chi, &three);
        items.push(eq_item("χ′ normalized", frobpoly::normalize(&chi, &three), fixtures::sextic_cover_normalized()));
        items.push(eq_item("roots q·ζ", u.count, 8));
        items.push(eq_item("cyclotomic factor", u.cyclotomic, vec![(24, 1)]));
    }
    Ok(items)
}

fn quadratic_class(f: &ZPoly) -> Option<BigInt> {
    let quads: Vec<ZPoly> = zpoly::factor(f).into_iter().map(|(g, _)| g).filter(|g| g.len() == 3).collect();
    match quads.as_slice() {
        [g] => frobpoly::quad_splitting_class(g).ok(),
        _ => None,
    }
}

fn gaussian_problem(dim: usize, q: i64, traces: Vec<CycInt>) -> CharpolyProblem {
    CharpolyProblem { n: 4, dim, q: q.into(), traces, pairing: Pairing::Conjugate, sign: None }
}

fn k3_quotients(cache: &CountCache) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let b = |v: i64| BigInt::from(v);

    let c = EllipticFamily::member(2, 1).candidates(11, 4, 2, cache)?;
    let f = &c[0].1;
    items.push(eq_item("χ₁₁ (b = 1)", c.iter().map(|x| x.1.clone()).collect::<Vec<_>>(), vec![elliptic::x2_b1_p11()]));
    items.push(eq_item("ρ bound at 11", frobpoly::rho_upper_bound(f, &b(11), 18), 18));

    let cubic = gaussian::cubic_p5();
    let own = frobpoly::elementary_to_traces(&frobpoly::elementary_from_poly(&cubic), 2);
    let got = frobpoly::duality_complete(&gaussian_problem(3, 5, own))?;
    items.push(item("Gaussian cubic at 5", got.len() == 1 && got[0].poly == cubic, cubic.display("λ")));

    let fam = EllipticFamily::member(1, 1);
    let mut classes = Vec::new();
    for p in [5u64, 11] {
        let polys: Vec<ZPoly> = fam.candidates(p, 3, 1, cache)?.into_iter().map(|x| x.1).collect();
        items.push(eq_item(format!("candidate pair at {p}"), polys.clone(), elliptic::x1_b1_candidates(p as i64)));
        let mut cl: Vec<Option<BigInt>> = polys.iter().map(quadratic_class).collect();
        cl.sort();
        classes.push(cl);
    }
    items.push(eq_item("classes at 5", classes[0].clone(), vec![Some(b(-91)), Some(b(-51))]));
    items.push(eq_item("classes at 11", classes[1].clone(), vec![Some(b(-403)), Some(b(-35))]));

    let fam = EllipticFamily::member(2, 3);
    let mut cl = Vec::new();
    for p in [7u64, 11] {
        let c = fam.candidates(p, 3, 2, cache)?;
        items.push(eq_item(format!("χ_{p} (b = 3)"), c.clone(), vec![(-1, elliptic::x2_b3(p as i64))]));
        cl.push(c.first().and_then(|x| quadratic_class(&x.1)));
    }
    items.push(eq_item("classes (b = 3)", cl, vec![Some(b(-19)), Some(b(-13))]));

    // quoted traces over F_13 and F_169 against the quoted cubic
    let printed = gaussian::traces_p13().to_vec();
    let cubic = gaussian::cubic_p13();
    let own = frobpoly::elementary_to_traces(&frobpoly::elementary_from_poly(&cubic), 2);
    let from_printed = frobpoly::duality_complete(&gaussian_problem(3, 13, printed.clone()));
    items.push(item(
        "cubic at 13 from the quoted traces",
        matches!(&from_printed, Ok(c) if c.len() == 1 && c[0].poly == cubic),
        format!(
            "quoted traces {}, {}; the cubic's own traces are {}, {}",
            printed[0], printed[1], own[0], own[1]
        ),
    ));
    let self_consistent = frobpoly::duality_complete(&gaussian_problem(3, 13, own.clone()))?;
    items.push(item("cubic at 13 from its own traces", self_consistent.len() == 1 && self_consistent[0].poly == cubic, cubic.display("λ")));
    let quartic = gaussian::quartic_p13();
    items.push(item(
        "χ₁₃ self-dual quartic",
        frobpoly::self_dual_sign(&quartic, &b(13)) == Some(1) && frobpoly::weil_check(&quartic, &b(13)),
        zpoly::display(&quartic, "λ"),
    ));

    let fam = EllipticFamily::member(2, 5);
    let mut cl = Vec::new();
    for p in [7u64, 11] {
        let q = b(p as i64);
        let c = fam.candidates(p, 4, 2, cache)?;
        let with_class: Vec<_> = c.iter().filter(|(_, f)| frobpoly::unity_root_count(f, &q).count > 0).collect();
        let one = with_class.len() == 1 && with_class[0].1 == elliptic::x2_b5(p as i64);
        items.push(item(format!("χ_{p} (b = 5)"), one, format!("{} candidates", c.len())));
        cl.push(with_class.first().and_then(|x| quadratic_class(&x.1)));
    }
    items.push(eq_item("classes (b = 5)", cl, vec![Some(b(-5)), Some(b(-6))]));

    let a = gaussian::quartic_p17();
    let beta = gaussian::linear_root_p17();
    let mut chosen = Vec::new();
    for root in [beta.clone(), beta.conj()] {
        let t = frobpoly::twist_roots(&a, &root);
        if let Some(full) = t.mul(&t.conj()).to_int_poly() {
            if -full[full.len() - 2].clone() == b(gaussian::TRACE_P17) {
                chosen.push(full);
            }
        }
    }
    items.push(eq_item("degree-8 χ₁₇ with trace −32", chosen, vec![gaussian::octic_p17()]));
    Ok(items)
}

// ---------------------------------------------------------------------------
// lifting, pencils, lattices

/// Published lifting behaviour. `None`: the curve is claimed not to lift
/// beyond some finite order without the order being stated.
const LIFT_CLAIMS: &[(&str, Option<u32>)] = &[
    ("double-sextic-tritangent", Some(1)),
    ("double-sextic-tritangent-other-branch", Some(1)),
    ("double-sextic-full-deformation", Some(1)),
    ("line-through-a16-point", None),
    ("line-in-pencil-through-fixed-line", None),
    ("isotrivial-section-deformed", Some(2)),
    ("k3-quotient-section", Some(4)),
];

fn lift_fixture(name: &str) -> Result<padlift::LiftFixture> {
    fixtures::lifting::by_name(name).ok_or_else(|| Error::Invalid(format!("missing lifting fixture {name}")))
}

fn lifting(_: &CountCache) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for &(name, claim) in LIFT_CLAIMS {
        let f = lift_fixture(name)?;
        let r = f.run(DEFAULT_LIFT_BUDGET)?.report;
        let got = r.order_display();
        let ok = match claim {
            Some(k) => r.resolved && r.max_order == k,
            None => r.resolved,
        };
        let want = claim.map_or("finite".to_string(), |k| k.to_string());
        let mut detail = format!("order {got}, published {want}");
        if !r.witness.is_empty() {
            detail += &format!(", obstruction in {}", r.witness.join(", "));
        }
        items.push(item(name, ok, detail));
    }
    let f = lift_fixture("isotrivial-section-p-divides-b")?;
    let r = f.run(DEFAULT_LIFT_BUDGET)?.report;
    items.push(item("isotrivial section with p | b", r.resolved && r.max_order >= 3, format!("order {}", r.order_display())));
    Ok(items)
}

fn pencils(_: &CountCache) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for f in fixtures::pencils::all() {
        let h = f.run()?;
        let Some(e) = f.expected_poly()? else { continue };
        items.push(item(&f.name, padlift::proportional(&h, &e), format!("degree {}", h.len() - 1)));
    }
    let g = fixtures::pencils::by_name("genus-three-pencil").and_then(|f| f.expected_poly().ok().flatten());
    let irr = match &g {
        Some(h) => padlift::irreducible_q(h)?,
        None => false,
    };
    items.push(item("h irreducible at (p, a) = (193, 5)", irr, ""));
    items.push(eq_item("u⁴ − a irreducible mod 193 first at a", padlift::smallest_irreducible_binomial(193, 4), Some(5)));
    Ok(items)
}

fn lattices(_: &CountCache) -> Result<Vec<Item>> {
    let s = latgram::rank_det_signature(&latgram::gram_from_config(&CurveConfig::concurrent_lines(5))?);
    let mut items = vec![eq_item("five concurrent lines", s.det.clone(), "256".to_string())];
    let bad: Vec<usize> = (1..=20)
        .filter(|&n| {
            let g = latgram::gram_from_config(&CurveConfig::a_chain(n)).expect("chain config");
            latgram::det(&g.entries).abs() != BigInt::from(n + 1)
        })
        .collect();
    items.push(item("|det A_n| = n + 1 for n ≤ 20", bad.is_empty(), format!("exceptions {bad:?}")));
    items.push(eq_item("fibration bound 2 + 19", latgram::shioda_tate_bound(&[2; 19])?, 21));
    Ok(items)
}
