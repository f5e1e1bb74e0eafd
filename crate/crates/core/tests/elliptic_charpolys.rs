//! Frobenius charpolys of K3 quotients and Gaussian eigenspaces.

use num_bigint::BigInt;
use picard_core::cyclo::CycInt;
use picard_core::error::Error;
use picard_core::fixtures::{elliptic, gaussian};
use picard_core::frobpoly::*;
use picard_core::gf::cache::CountCache;
use picard_core::models::EllipticFamily;
use picard_core::zpoly::{self, ZPoly};

fn quadratic_class(f: &ZPoly) -> BigInt {
    let quads: Vec<ZPoly> = zpoly::factor(f).into_iter().map(|(g, _)| g).filter(|g| g.len() == 3).collect();
    assert_eq!(quads.len(), 1, "expected one quadratic factor in {}", zpoly::display(f, "λ"));
    quad_splitting_class(&quads[0]).unwrap()
}

#[test]
fn second_family_b1_at_11() {
    let cache = CountCache::memory();
    let c = EllipticFamily::member(2, 1).candidates(11, 4, 2, &cache).unwrap();
    assert_eq!(c, vec![(1, elliptic::x2_b1_p11())]);
    let q = BigInt::from(11);
    assert!(zpoly::is_irreducible(&c[0].1));
    assert_eq!(rho_upper_bound(&c[0].1, &q, 18), 18);
    assert!(weil_check(&c[0].1, &q));
}

#[test]
fn first_family_b1_candidate_classes_disagree() {
    let cache = CountCache::memory();
    let fam = EllipticFamily::member(1, 1);
    let mut classes = Vec::new();
    for p in [5u64, 11] {
        let c = fam.candidates(p, 3, 1, &cache).unwrap();
        let polys: Vec<ZPoly> = c.iter().map(|x| x.1.clone()).collect();
        assert_eq!(polys, elliptic::x1_b1_candidates(p as i64));
        let mut cl: Vec<BigInt> = polys.iter().map(quadratic_class).collect();
        cl.sort();
        classes.push(cl);
    }
    assert_eq!(classes[0], vec![BigInt::from(-91), BigInt::from(-51)]);
    assert_eq!(classes[1], vec![BigInt::from(-403), BigInt::from(-35)]);
    assert!(classes[0].iter().all(|c| !classes[1].contains(c)));
}

#[test]
fn second_family_b3_classes() {
    let cache = CountCache::memory();
    let fam = EllipticFamily::member(2, 3);
    let mut cl = Vec::new();
    for p in [7u64, 11] {
        let c = fam.candidates(p, 3, 2, &cache).unwrap();
        assert_eq!(c, vec![(-1, elliptic::x2_b3(p as i64))]);
        cl.push(quadratic_class(&c[0].1));
    }
    assert_eq!(cl, vec![BigInt::from(-19), BigInt::from(-13)]);
}

#[test]
fn second_family_b5_keeps_the_candidate_with_an_algebraic_class() {
    let cache = CountCache::memory();
    let fam = EllipticFamily::member(2, 5);
    let mut cl = Vec::new();
    for p in [7u64, 11] {
        let c = fam.candidates(p, 4, 2, &cache).unwrap();
        // middle coefficient vanishes, so both signs survive
        assert_eq!(c.len(), 2);
        let q = BigInt::from(p);
        let with_class: Vec<_> = c.iter().filter(|(_, f)| unity_root_count(f, &q).count > 0).collect();
        assert_eq!(with_class.len(), 1);
        assert_eq!(with_class[0].0, -1);
        assert_eq!(with_class[0].1, elliptic::x2_b5(p as i64));
        cl.push(quadratic_class(&with_class[0].1));
    }
    assert_eq!(cl, vec![BigInt::from(-5), BigInt::from(-6)]);
}

fn gaussian_problem(dim: usize, q: i64, traces: Vec<CycInt>) -> CharpolyProblem {
    CharpolyProblem { n: 4, dim, q: q.into(), traces, pairing: Pairing::Conjugate, sign: None }
}

#[test]
fn gaussian_cubic_at_5_from_its_traces() {
    let f = gaussian::cubic_p5();
    let t = elementary_to_traces(&elementary_from_poly(&f), 2);
    let c = duality_complete(&gaussian_problem(3, 5, t)).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].poly, f);
    assert_eq!(f.norm().len(), 7);
    assert!(weil_check(&f.norm(), &BigInt::from(5)));
}

#[test]
fn gaussian_data_at_13() {
    let printed = gaussian::traces_p13().to_vec();
    // a rank-two eigenspace is ruled out: the constant coefficient is even
    let e = traces_to_coeffs(4, &printed, 2).unwrap();
    assert_eq!(e[2].norm() % 2, BigInt::from(0));
    assert!(matches!(duality_complete(&gaussian_problem(2, 13, printed.clone())), Err(Error::Inconsistent(_))));

    // the cubic is recovered uniquely from its own traces
    let cubic = gaussian::cubic_p13();
    let own = elementary_to_traces(&elementary_from_poly(&cubic), 2);
    let c = duality_complete(&gaussian_problem(3, 13, own.clone())).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].poly, cubic);
    let q = BigInt::from(13);
    assert!(zpoly::is_irreducible(&cubic.norm()));
    assert_eq!(unity_root_count(&cubic.norm(), &q).count, 0);

    // the quoted traces do not belong to this cubic or its conjugate
    let conj: Vec<CycInt> = own.iter().map(|t| t.conj()).collect();
    assert_eq!(conj[1], printed[1]);
    assert_ne!(conj[0], printed[0]);
    assert_ne!(own[0], printed[0]);
    assert!(duality_complete(&gaussian_problem(3, 13, printed)).is_err());

    let quartic = gaussian::quartic_p13();
    assert_eq!(self_dual_sign(&quartic, &q), Some(1));
    assert!(weil_check(&quartic, &q));
    assert_eq!(unity_root_count(&quartic, &q).count, 0);
}

#[test]
fn tensor_factor_at_17() {
    let a = gaussian::quartic_p17();
    let q = BigInt::from(17);
    // weight one: |α|² = 17 for every root
    assert_eq!(a.coeffs[0].norm(), q.pow(4));
    assert_eq!(gaussian::linear_root_p17().norm(), q);
    let b = gaussian::linear_root_p17();
    let mut found = Vec::new();
    for beta in [b.clone(), b.conj()] {
        let t = twist_roots(&a, &beta);
        let full: ZPoly = t.mul(&t.conj()).to_int_poly().unwrap();
        let trace = -full[full.len() - 2].clone();
        found.push((trace, full));
    }
    let chosen: Vec<_> = found.iter().filter(|(t, _)| *t == BigInt::from(gaussian::TRACE_P17)).collect();
    assert_eq!(chosen.len(), 1);
    assert_eq!(chosen[0].1, gaussian::octic_p17());
    assert!(weil_check(&chosen[0].1, &q));
    assert!(zpoly::is_irreducible(&chosen[0].1));
    assert_eq!(unity_root_count(&chosen[0].1, &q).count, 0);
}
