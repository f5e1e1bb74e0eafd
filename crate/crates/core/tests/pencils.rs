use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use picard_core::fixtures;
use picard_core::modpoly;
use picard_core::mpoly::MPoly;
use picard_core::padlift::*;
use picard_core::zpoly;

#[test]
fn published_pencil_polynomials() {
    for f in fixtures::pencils::all() {
        let h = f.run().unwrap();
        let e = f.expected_poly().unwrap().unwrap();
        println!("{}: degree {}", f.name, h.len() - 1);
        assert!(proportional(&h, &e), "{}", f.name);
    }
}

#[test]
fn genus_three_pencil_is_irreducible_of_degree_19() {
    let f = fixtures::pencils::by_name("genus-three-pencil").unwrap();
    let h = f.expected_poly().unwrap().unwrap();
    assert_eq!(h.len() - 1, 19);
    assert!(irreducible_q(&h).unwrap());
}

/// Without the excluded line the members singular on `w = 0` come back.
#[test]
fn line_exclusion_removes_boundary_members() {
    let f = fixtures::pencils::by_name("residual-quartic-pencil").unwrap();
    let mut g = f.clone();
    g.affine_chart = None;
    let full = g.run().unwrap();
    let h = f.expected_poly().unwrap().unwrap();
    let (q, r) = zpoly::q_divrem(&zpoly::to_q(&full), &zpoly::to_q(&h));
    assert!(r.iter().all(num_traits::Zero::is_zero));
    assert!(proportional(&zpoly::q_to_primitive(&q), &zpoly::from_i64(&[1, 1])));
}

// Replaces `w^{2k}` by `u^k` in the same slot; `None` if some power is odd.
fn even_part(f: &MPoly, wi: usize, shift: u32) -> Option<MPoly> {
    let mut out = MPoly::zero(&f.var_refs());
    for (e, c) in &f.terms {
        let k = e[wi].checked_sub(shift)?;
        if k % 2 == 1 {
            return None;
        }
        let mut e = e.clone();
        e[wi] = k / 2;
        out.add_term(e, c.clone());
    }
    Some(out)
}

// Parameters in F_l whose member has a singular point with w ≠ 0 by
// enumeration. Rational points with w = 1 are searched directly. A fibre even
// in w is searched in u = w² on x = 1 and on (0 : 1), so conjugate pairs
// (x : y : ±w) over F_{l²} are found too.
fn brute_singular(fibre: &MPoly, l: u64, affine: &str) -> BTreeSet<u64> {
    let ti = fibre.var_index("t").unwrap();
    let wi = fibre.var_index(affine).unwrap();
    let others: Vec<usize> = (0..fibre.nvars()).filter(|&i| i != ti && i != wi).collect();
    let mut partials: Vec<MPoly> = others.iter().map(|&i| fibre.derivative(i)).collect();
    let even = partials.iter().map(|d| even_part(d, wi, 0)).collect::<Option<Vec<_>>>();
    let fw = even_part(&fibre.derivative(wi), wi, 1);
    let mut out = BTreeSet::new();
    let mut pt = vec![0u64; fibre.nvars()];
    match (even, fw) {
        (Some(ev), Some(fw)) => {
            partials = ev;
            partials.push(fw);
            for t in 0..l {
                pt[ti] = t;
                let charts = (0..l).map(|y| (1, y)).chain([(0, 1)]);
                'chart: for (a, b) in charts {
                    for u in 1..l {
                        pt[others[0]] = a;
                        pt[others[1]] = b;
                        pt[wi] = u;
                        if partials.iter().all(|d| d.eval_u64(&pt, l) == 0) {
                            out.insert(t);
                            break 'chart;
                        }
                    }
                }
            }
        }
        _ => {
            partials.push(fibre.derivative(wi));
            pt[wi] = 1;
            for t in 0..l {
                pt[ti] = t;
                'search: for a in 0..l {
                    for b in 0..l {
                        pt[others[0]] = a;
                        pt[others[1]] = b;
                        if partials.iter().all(|d| d.eval_u64(&pt, l) == 0) {
                            out.insert(t);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn roots_are_exactly_the_singular_members_mod_small_primes() {
    let primes: [(&str, &[u64]); 2] = [
        ("genus-three-pencil", &[107, 109, 131, 137, 157]),
        ("residual-quartic-pencil", &[113, 131, 167]),
    ];
    for (name, ls) in primes {
        let f = fixtures::pencils::by_name(name).unwrap();
        let fibre = f.fibre().unwrap();
        let h = f.expected_poly().unwrap().unwrap();
        for &l in ls {
            let lb = BigInt::from(l);
            let hm: Vec<u64> = h.iter().map(|c| c.mod_floor(&lb).to_u64().unwrap()).collect();
            let roots: BTreeSet<u64> = (0..l).filter(|&t| modpoly::eval(&hm, t, l) == 0).collect();
            let excluded: BTreeSet<u64> = f.exclude.iter().map(|&v| v.rem_euclid(l as i64) as u64).collect();
            let found: BTreeSet<u64> =
                brute_singular(&fibre, l, f.affine_chart.as_deref().unwrap()).difference(&excluded).copied().collect();
            println!("{name} mod {l}: roots {roots:?} singular {found:?}");
            assert!(!roots.is_empty());
            assert_eq!(found, roots, "{name} mod {l}");
        }
    }
}

#[test]
fn planted_nodal_conic() {
    let vars = ["x", "y", "w", "t"];
    for lambda0 in [-3i64, 0, 2, 7] {
        let fibre = MPoly::parse(&format!("x^2 - y^2 + (t - ({lambda0}))*w^2"), &vars).unwrap();
        let h = PencilEliminator::new(&fibre, "t", &[], None).unwrap().singular_poly().unwrap();
        assert!(proportional(&h, &zpoly::from_i64(&[-lambda0, 1])), "λ0 = {lambda0}");
        // the planted member is a line pair; its neighbours are smooth
        let q = |t: i64| MPoly::parse(&format!("x^2 - y^2 + ({})*w^2", t - lambda0), &["x", "y", "w"]).unwrap();
        assert_eq!(conic_rank(&q(lambda0)).unwrap(), 2);
        assert_eq!(conic_rank(&q(lambda0 + 1)).unwrap(), 3);
    }
}

#[test]
fn identically_singular_pencil_is_flagged() {
    let vars = ["x", "y", "w", "t"];
    let fibre = MPoly::parse("t*x^2", &vars).unwrap();
    assert!(PencilEliminator::new(&fibre, "t", &[], None).unwrap().singular_poly().is_err());
}
