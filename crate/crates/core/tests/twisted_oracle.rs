//! Twisted fixed-point counts against direct enumeration.

use picard_core::gf::{count_projective, count_twisted_as, count_twisted_h90, Automorphism, Compiled, Field, ZERO};
use picard_core::mpoly::MPoly;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn wild_quintic() -> MPoly {
    MPoly::parse("y^5 - x^4y - zw(x^3 + (x-z-w)(z^2+zw+w^2))", &VARS).unwrap()
}

fn second_quintic() -> MPoly {
    MPoly::parse(
        "y^5 - x^4y - (z+w)((z-w)^2(z^2+zw+w^2+x(z+w)) - x^2(z^2-zw+w^2) + x^3(z+w) - 2x^4)",
        &VARS,
    )
    .unwrap()
}

/// `g^{-1}` for `g = φ^j ι^e`, so that fixed points of `g ∘ Frob` are the
/// points with `Frob(P) = G·P`.
fn twist(j: u64, e: u64) -> Automorphism {
    let phi = Automorphism::from_rules(&VARS, 5, &[("y", "y + x")]).unwrap();
    let iota = Automorphism::from_rules(&VARS, 5, &[("z", "w"), ("w", "z")]).unwrap();
    phi.pow(j).compose(&iota.pow(e)).inverse()
}

/// Direct enumeration at q = 5: on x = 1 the twisted condition forces
/// z, w ∈ F_25 and y ∈ F_{5^5}; on x = 0 points are F_25-rational.
fn oracle(f: &MPoly, j: u64, e: u64) -> u64 {
    let q = 5u32;
    let f25 = Field::get(5, 2).unwrap();
    let f3125 = Field::get(5, 5).unwrap();
    // chart x = 1: S = y^5 - y - f(1,y,z,w), independent of y
    let s = f
        .subst_int("x", &1.into())
        .unwrap()
        .subst_int("y", &0.into())
        .unwrap()
        .neg();
    let cs = Compiled::new(&s, &f25);
    let mut total = 0u64;
    let els25: Vec<_> = f25.elements().collect();
    for &z in &els25 {
        for &w in &els25 {
            let (zq, wq) = (f25.frob(z, 1), f25.frob(w, 1));
            let ok = if e == 0 { zq == z && wq == w } else { zq == w && wq == z };
            if !ok {
                continue;
            }
            let sigma = f25.to_fp(cs.eval(&[z, w])).expect("sigma rational");
            // y^5 - y = sigma and y^q = y - j in F_{5^5}
            let sig = f3125.from_int(sigma as i64);
            let minus_j = f3125.from_int(-(j as i64));
            for y in f3125.elements() {
                let lhs = f3125.sub(f3125.pow(y, 5), y);
                if lhs == sig && f3125.sub(f3125.pow(y, q as u64), y) == minus_j {
                    total += 1;
                }
            }
        }
    }
    // stratum x = 0 over P^2(F_25) with a proportionality check
    let f0 = f.subst_int("x", &0.into()).unwrap();
    let c0 = Compiled::new(&f0, &f25);
    let mut pts = Vec::new();
    for &a in &els25 {
        for &b in &els25 {
            pts.push([1, a, b]);
        }
        pts.push([ZERO, 0, a]);
    }
    pts.push([ZERO, ZERO, 0]);
    for pt in pts {
        if c0.eval(&pt) != ZERO {
            continue;
        }
        let fr: Vec<_> = pt.iter().map(|&c| f25.frob(c, 1)).collect();
        let img = if e == 0 { pt } else { [pt[0], pt[2], pt[1]] };
        // fr ∝ img
        let proportional = (0..3).all(|a| (0..3).all(|b| f25.mul(fr[a], img[b]) == f25.mul(fr[b], img[a])));
        if proportional {
            total += 1;
        }
    }
    total
}

#[test]
fn fast_path_matches_oracles_at_q5() {
    for f in [wild_quintic(), second_quintic()] {
        for e in 0..2 {
            for j in 0..5 {
                let g = twist(j, e);
                let fast = count_twisted_as(&f, 0, 1, &g, 1).unwrap();
                let generic = count_twisted_h90(&f, &g, 5, 1).unwrap();
                let direct = oracle(&f, j, e);
                assert_eq!(fast, direct, "j={j} e={e}");
                assert_eq!(generic, direct, "j={j} e={e}");
            }
        }
    }
}

#[test]
fn untwisted_fast_path_is_plain_count() {
    let f = wild_quintic();
    for k in 1..=2 {
        let field = Field::get(5, k).unwrap();
        assert_eq!(count_twisted_as(&f, 0, 1, &twist(0, 0), k).unwrap(), count_projective(&f, &field).unwrap());
    }
}
