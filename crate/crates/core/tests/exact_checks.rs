use num_bigint::BigInt;
use picard_core::cyclo::{CycInt, CycIntPoly};
use picard_core::mpoly::MPoly;
use picard_core::padlift::*;
use picard_core::zpoly;
use proptest::prelude::*;

const XYW: [&str; 3] = ["x", "y", "w"];
const XYZW: [&str; 4] = ["x", "y", "z", "w"];

#[test]
fn eisenstein_examples() {
    assert!(!eisenstein_univariate(&zpoly::from_i64(&[-1, 0, 1]), 5));
    assert!(eisenstein_univariate(&zpoly::from_i64(&[-5, 0, 1]), 5));
    assert!(!eisenstein_univariate(&zpoly::from_i64(&[-25, 0, 1]), 5));
    let f = MPoly::parse("x^2 - 7", &["x"]).unwrap();
    assert!(eisenstein_test(&f, "x", &PrimeElement::Integer(7)).unwrap());
    assert!(!eisenstein_test(&f, "x", &PrimeElement::Integer(3)).unwrap());
    // quartic through the five-line configuration, at the prime x
    let v = MPoly::parse("x^4 - x^3*y + x^2*y^2 - x*y^3 + y^4 + 11*x*z^3", &["x", "y", "z"]).unwrap();
    assert!(eisenstein_test(&v, "y", &PrimeElement::Variable("x".into())).unwrap());
    assert!(!eisenstein_test(&v, "x", &PrimeElement::Variable("y".into())).unwrap());
}

#[test]
fn conic_ranks() {
    let r = |s: &str| conic_rank(&MPoly::parse(s, &XYW).unwrap()).unwrap();
    assert_eq!(r("x^2 - y^2 + 193*w^2"), 3);
    assert_eq!(r("x^2 - y^2"), 2);
    assert_eq!(r("x^2"), 1);
    assert_eq!(r("x*y + y*w + w*x"), 3);
    assert_eq!(r("(x + y + w)^2"), 1);
    let q = MPoly::parse("x^2 - y^2 + 5*w^2", &XYW).unwrap();
    assert_eq!(conic_rank_mod(&q, 5).unwrap(), 2);
    assert_eq!(conic_rank_mod(&q, 7).unwrap(), 3);
    assert!(conic_rank_mod(&q, 2).is_err());
    assert!(conic_rank(&MPoly::parse("x^2 + y", &XYW).unwrap()).is_err());
}

// u^4 − a over F_p by exhaustion: no root and no monic quadratic factor.
fn binomial_irreducible_brute(p: u64, a: u64) -> bool {
    let f = |u: u64| (u * u % p * u % p * u + p - a) % p;
    if (0..p).any(|u| f(u) == 0) {
        return false;
    }
    // (u² + bu + c)(u² − bu + d) = u⁴ − a forces b(d − c) = 0, c + d = b², cd = −a
    for c in 0..p {
        // b = 0: d = −c, −c² = −a
        if c * c % p == a % p {
            return false;
        }
        for b in 1..p {
            let d = c;
            if (c + d) % p == b * b % p && (c * d + a) % p == 0 {
                return false;
            }
        }
    }
    true
}

#[test]
fn smallest_binomial_quartic() {
    let a = smallest_irreducible_binomial(193, 4).unwrap();
    let brute = (1..193).find(|&a| binomial_irreducible_brute(193, a)).unwrap();
    assert_eq!(a, brute);
    assert_eq!(a, 5);
    for p in [13u64, 17, 29, 37, 41] {
        assert_eq!(smallest_irreducible_binomial(p, 4), (1..p).find(|&a| binomial_irreducible_brute(p, a)), "p={p}");
    }
}

#[test]
fn irreducibility() {
    assert!(!irreducible_q(&zpoly::from_i64(&[-1, 0, 1])).unwrap());
    assert!(irreducible_q(&zpoly::from_i64(&[-2, 0, 1])).unwrap());
    assert!(irreducible_q(&zpoly::from_i64(&[])).is_err());
    assert!(irreducible_mod_p(&zpoly::from_i64(&[1, 0, 1]), 3).unwrap());
    assert!(!irreducible_mod_p(&zpoly::from_i64(&[1, 0, 1]), 5).unwrap());
}

fn forms(v: &[&str]) -> Vec<MPoly> {
    v.iter().map(|s| MPoly::parse(s, &["s", "t"]).unwrap()).collect()
}

#[test]
fn rational_curve_on_surface() {
    let f = MPoly::parse("y*z*w^3 + y^4*w + x*y*z^3 + x^5", &XYZW).unwrap();
    assert!(verify_curve_on_surface(&forms(&["s^5*t", "-s^2*t^4", "s^6", "t^6"]), &f).unwrap());
    assert!(!verify_curve_on_surface(&forms(&["s^5*t", "s^2*t^4", "s^6", "t^6"]), &f).unwrap());
    let fermat = MPoly::parse("x^5 + y^5 + z^5 + w^5", &XYZW).unwrap();
    assert!(!verify_curve_on_surface(&forms(&["s", "t", "0", "0"]), &fermat).unwrap());
    assert!(verify_curve_on_surface(&forms(&["s", "-s", "t", "-t"]), &fermat).unwrap());
    assert!(verify_curve_on_surface(&forms(&["s^2", "t", "0", "0"]), &fermat).is_err());
}

#[test]
fn cyclotomic_line_on_fermat() {
    let fermat = MPoly::parse("x^5 + y^5 + z^5 + w^5", &XYZW).unwrap();
    let n = 5;
    let c = |v: CycInt, at_s: bool| {
        let z = CycInt::zero(n);
        CycIntPoly { n, coeffs: if at_s { vec![z, v] } else { vec![v, z] } }
    };
    let one = CycInt::one(n);
    for k in 0..5 {
        let zeta = CycInt::zeta_pow(n, k);
        let line = [c(one.clone(), true), c(one.neg(), true), c(one.clone(), false), c(zeta.neg(), false)];
        assert!(verify_curve_on_surface_cyc(&line, 1, &fermat).unwrap());
        let off = [c(one.clone(), true), c(zeta.clone(), true), c(one.clone(), false), c(one.neg(), false)];
        assert!(!verify_curve_on_surface_cyc(&off, 1, &fermat).unwrap());
    }
}

proptest! {
    #[test]
    fn conic_rank_invariant_under_change_of_coordinates(
        q in prop::collection::vec(-5i64..=5, 6),
        m in prop::collection::vec(-3i64..=3, 9),
    ) {
        let terms = ["x^2", "y^2", "w^2", "x*y", "y*w", "w*x"];
        let expr: Vec<String> = q.iter().zip(terms).map(|(c, t)| format!("({c})*{t}")).collect();
        let form = MPoly::parse(&expr.join(" + "), &XYW).unwrap();
        prop_assume!(!form.is_zero());
        let rows: Vec<Vec<i64>> = m.chunks(3).map(<[i64]>::to_vec).collect();
        prop_assume!(picard_core::latgram::det(&rows) != BigInt::from(0));
        let subs: Vec<MPoly> = rows
            .iter()
            .map(|r| MPoly::parse(&format!("({})*x + ({})*y + ({})*w", r[0], r[1], r[2]), &XYW).unwrap())
            .collect();
        let moved = form.compose(&subs);
        prop_assert_eq!(conic_rank(&form).unwrap(), conic_rank(&moved).unwrap());
    }
}
