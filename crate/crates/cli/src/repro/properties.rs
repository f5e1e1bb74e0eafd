//! Seeded samples of the structural invariants, each against an
//! independent route. The full randomized suites live in the core tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use picard_core::arith::{euler_phi, gcd, is_prime, prime_in_class};
use picard_core::charspace::{self, enumerate_characters, fermat_invariants, Field};
use picard_core::cyclo::CycInt;
use picard_core::fixtures::{self, elliptic, gaussian};
use picard_core::frobpoly::{self, solve_2adic, AdicSystem, CharpolyProblem};
use picard_core::gf::cache::CountCache;
use picard_core::gf::{self, count_twisted, count_twisted_h90};
use picard_core::models;
use picard_core::mpoly::MPoly;
use picard_core::zpoly::{self, ZPoly};
use picard_core::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{item, Item};

const SEED: u64 = 0x5eed_0005;

pub(super) fn run(_: &CountCache) -> Result<Vec<Item>> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut items = characters();
    items.extend(fermat_lemmas(&mut rng)?);
    items.push(counts(&mut rng)?);
    items.push(twisted()?);
    items.extend(reconstruction(&mut rng)?);
    items.push(weil_on_fixtures());
    Ok(items)
}

fn characters() -> Vec<Item> {
    let bad: Vec<i64> = (2..=100)
        .filter(|&m| enumerate_characters(m).map(|c| c.len() as i64) != Ok((m - 1) * (m * m - 3 * m + 3)))
        .collect();
    let mut items = vec![item("|𝔄_m| = (m−1)(m²−3m+3) for m ≤ 100", bad.is_empty(), format!("exceptions {bad:?}"))];
    let mut weight_ok = true;
    let mut orbit_ok = true;
    for m in 2..=30 {
        let chars = enumerate_characters(m).expect("valid modulus");
        weight_ok &= chars.iter().all(|c| c.weight() + c.neg().weight() == 2);
        let orbits = charspace::orbits_of(&chars);
        let total: usize = orbits.iter().map(|o| o.len()).sum();
        orbit_ok &= total == chars.len() && orbits.iter().all(|o| euler_phi(m as u64) % o.len() as u64 == 0);
    }
    items.push(item("w(c) + w(−c) = 2 for m ≤ 30", weight_ok, ""));
    items.push(item("orbits partition 𝔄_m, sizes divide φ(m), m ≤ 30", orbit_ok, ""));
    items
}

fn fermat_lemmas(rng: &mut StdRng) -> Result<Vec<Item>> {
    let mut split_bad = Vec::new();
    let mut ss_bad = Vec::new();
    let mut specialization_bad = Vec::new();
    let mut sum_bad = Vec::new();
    for _ in 0..8 {
        let m = rng.gen_range(3..=48i64);
        let zero = fermat_invariants(m, Field::CharZero)?;
        if zero.lambda + zero.rho != zero.b2 {
            sum_bad.push(m);
        }
        let p = prime_in_class(1, m as u64, 2) as i64;
        let split = fermat_invariants(m, Field::ModP(p))?;
        if (split.rho, split.lambda) != (zero.rho, zero.lambda) {
            split_bad.push((m, p));
        }
        for _ in 0..3 {
            let p = loop {
                let p = rng.gen_range(2..400u64);
                if is_prime(p) && gcd(p as i64, m) == 1 {
                    break p as i64;
                }
            };
            let red = fermat_invariants(m, Field::ModP(p))?;
            if charspace::supersingular_witness(m, p)?.is_some() && red.rho != red.b2 {
                ss_bad.push((m, p));
            }
            if zero.lambda < red.lambda {
                specialization_bad.push((m, p));
            }
        }
    }
    Ok(vec![
        item("λ + ρ = b₂", sum_bad.is_empty(), format!("exceptions {sum_bad:?}")),
        item("p ≡ 1 mod m reduces like char 0", split_bad.is_empty(), format!("exceptions {split_bad:?}")),
        item("supersingular witness gives ρ = b₂", ss_bad.is_empty(), format!("exceptions {ss_bad:?}")),
        item("λ over C ≥ λ mod p", specialization_bad.is_empty(), format!("exceptions {specialization_bad:?}")),
    ])
}

const XYZW: [&str; 4] = ["x", "y", "z", "w"];

fn random_cubic(rng: &mut StdRng) -> MPoly {
    let monos = ["x^3", "y^3", "z^3", "w^3", "x*y*z", "y*z*w", "x^2*w", "y^2*x", "z^2*y", "w^2*z", "x*y*w"];
    let terms: Vec<String> = monos.iter().map(|m| format!("({})*{m}", rng.gen_range(-2..=2))).collect();
    MPoly::parse(&terms.join(" + "), &XYZW).expect("cubic parses")
}

/// Zeros of `f` in `F_q^4 \ {0}`, divided by `q − 1`.
fn cone_count(f: &MPoly, field: &std::sync::Arc<gf::Field>) -> u64 {
    let c = gf::Compiled::new(f, field);
    let els: Vec<gf::Elt> = field.elements().collect();
    let mut zeros = 0u64;
    for &a in &els {
        for &b in &els {
            for &d in &els {
                for &e in &els {
                    if c.eval(&[a, b, d, e]) == gf::ZERO {
                        zeros += 1;
                    }
                }
            }
        }
    }
    (zeros - 1) / (field.q - 1)
}

fn counts(rng: &mut StdRng) -> Result<Item> {
    let mut bad = Vec::new();
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let field = gf::Field::get(p, k)?;
        for _ in 0..2 {
            let f = random_cubic(rng);
            if f.is_zero() {
                continue;
            }
            if gf::count_projective(&f, &field)? != cone_count(&f, &field) {
                bad.push((field.q, f.to_string()));
            }
        }
    }
    Ok(item("chart counts equal cone enumeration for q ≤ 9", bad.is_empty(), format!("exceptions {bad:?}")))
}

/// Semilinear fast path against the generic twisted count at `q = 5`.
fn twisted() -> Result<Item> {
    let f = models::first_quintic().poly;
    let mut bad = Vec::new();
    for e in 0..2 {
        for j in 0..5 {
            let g = models::quintic_twist(j, e);
            let fast = count_twisted(&f, &g, 1, Some((0, 1)))?;
            let generic = count_twisted_h90(&f, &g, 5, 1)?;
            if fast != generic {
                bad.push((j, e, fast, generic));
            }
        }
    }
    Ok(item("twisted counts at q = 5: fast path equals generic route", bad.is_empty(), format!("exceptions {bad:?}")))
}

fn reconstruction(rng: &mut StdRng) -> Result<Vec<Item>> {
    // Newton: elementary → power sums → elementary
    let mut newton_ok = true;
    for n in [1u64, 4, 5] {
        let d = CycInt::dim(n);
        let e: Vec<CycInt> = (0..=6)
            .map(|i| if i == 0 { CycInt::one(n) } else { CycInt::from_coords(n, &(0..d).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>()) })
            .collect();
        let t = frobpoly::elementary_to_traces(&e, 6);
        newton_ok &= frobpoly::traces_to_elementary(n, &t)? == e;
    }

    // duality: products of λ² − aλ + q² and of λ ± q
    let mut dual_ok = true;
    for _ in 0..6 {
        let q = [2i64, 3, 5, 7, 11][rng.gen_range(0..5)];
        let mut f: ZPoly = zpoly::from_i64(&[1]);
        for _ in 0..rng.gen_range(1..=3) {
            let a = rng.gen_range(-2 * q + 1..2 * q);
            f = zpoly::mul(&f, &zpoly::from_i64(&[q * q, -a, 1]));
        }
        if rng.gen_bool(0.5) {
            f = zpoly::mul(&f, &zpoly::from_i64(&[-q * q, 0, 1]));
        }
        let d = f.len() - 1;
        let traces: Vec<i64> = frobpoly::int_traces(&f, d / 2).iter().map(|t| i64::try_from(t).unwrap()).collect();
        let cands = frobpoly::duality_complete(&CharpolyProblem::integral(d, q, &traces))?;
        dual_ok &= cands.iter().any(|c| c.poly.to_int_poly().as_ref() == Some(&f));
    }

    // eigenspace projection of planted traces
    let mut proj_ok = true;
    for n in [4u64, 5] {
        let q = BigInt::from(rng.gen_range(2..50));
        let d = CycInt::dim(n);
        let t1 = CycInt::from_coords(n, &(0..d).map(|_| rng.gen_range(-30..=30)).collect::<Vec<_>>());
        let mut planted: Vec<CycInt> = vec![CycInt::from_int(n, rng.gen_range(-30..=30))];
        for k in 1..n as i64 {
            planted.push(if gcd(k, n as i64) == 1 { t1.galois(k) } else { CycInt::from_int(n, rng.gen_range(-30..=30)) });
        }
        let base = BigInt::one() + &q * &q;
        let fix: Vec<BigInt> = (0..n as i64)
            .map(|j| {
                let v = planted.iter().enumerate().fold(CycInt::zero(n), |acc, (k, t)| acc.add(&CycInt::zeta_pow(n, j * k as i64).mul(t)));
                v.as_int().expect("planted counts are rational") + &base
            })
            .collect();
        proj_ok &= frobpoly::eigenspace_project(&fix, n, &q)? == planted;
    }

    // 2-adic: u0 + u1 + u2 = s, u0·u1 = a, u1·u2 = b with a planted solution
    let mut adic_ok = true;
    for _ in 0..4 {
        let u: Vec<i64> = (0..3).map(|_| rng.gen_range(-12..=12)).collect();
        let (s, a, b) = (u[0] + u[1] + u[2], u[0] * u[1], u[1] * u[2]);
        let eval = move |x: &[u64]| {
            vec![
                x[0].wrapping_add(x[1]).wrapping_add(x[2]).wrapping_sub(s as u64),
                x[0].wrapping_mul(x[1]).wrapping_sub(a as u64),
                x[1].wrapping_mul(x[2]).wrapping_sub(b as u64),
            ]
        };
        let verify = move |x: &[i64]| x[0] + x[1] + x[2] == s && x[0] * x[1] == a && x[1] * x[2] == b;
        let sys = AdicSystem { nvars: 3, bound: 12, eval: &eval, verify: &verify };
        let mut brute = Vec::new();
        for x0 in -12..=12i64 {
            for x1 in -12..=12i64 {
                for x2 in -12..=12i64 {
                    if verify(&[x0, x1, x2]) {
                        brute.push(vec![x0, x1, x2]);
                    }
                }
            }
        }
        let mut got = solve_2adic(&sys, 1 << 20)?.solutions;
        got.sort();
        adic_ok &= got.contains(&u) && got == brute;
    }

    Ok(vec![
        item("Newton round trip over Z, Z[i], Z[ζ₅]", newton_ok, ""),
        item("duality completion recovers planted polynomials", dual_ok, ""),
        item("eigenspace projection recovers planted traces", proj_ok, ""),
        item("2-adic solver finds exactly the planted solution set", adic_ok, ""),
    ])
}

fn weil_on_fixtures() -> Item {
    let q = |v: i64| BigInt::from(v);
    let monic = |f: ZPoly| -> Vec<BigRational> {
        let lead = f.last().unwrap().clone();
        f.iter().map(|c| BigRational::new(c.clone(), lead.clone())).collect()
    };
    let mut integral: Vec<(&str, ZPoly, BigInt)> = vec![
        ("wild quintic χ⁺", fixtures::wild_quintic_plus(5), q(5)),
        ("χ₁₁", elliptic::x2_b1_p11(), q(11)),
        ("Gaussian cubic at 5", gaussian::cubic_p5().norm(), q(5)),
        ("Gaussian cubic at 13", gaussian::cubic_p13().norm(), q(13)),
        ("χ₁₃ quartic", gaussian::quartic_p13(), q(13)),
        ("χ₁₇ octic", gaussian::octic_p17(), q(17)),
    ];
    for p in [5, 11] {
        for f in elliptic::x1_b1_candidates(p) {
            integral.push(("candidate", f, q(p)));
        }
    }
    for p in [7, 11] {
        integral.push(("b = 3", elliptic::x2_b3(p), q(p)));
        integral.push(("b = 5", elliptic::x2_b5(p), q(p)));
    }
    let normalized = [
        ("wild quintic χ⁻", monic(fixtures::wild_quintic_minus_scaled())),
        ("second χ₊", fixtures::second_quintic_plus_normalized()),
        ("second χ₋", monic(fixtures::second_quintic_minus_scaled())),
        ("double sextic", fixtures::sextic_cover_normalized()),
    ];
    let mut bad: Vec<&str> = integral.iter().filter(|(_, f, q)| !frobpoly::weil_check(f, q)).map(|x| x.0).collect();
    bad.extend(normalized.iter().filter(|(_, f)| !frobpoly::weil_check_normalized(f)).map(|x| x.0));
    let total = integral.len() + normalized.len();
    item("Weil check on every fixture polynomial", bad.is_empty(), format!("{total} polynomials, failing {bad:?}"))
}
