//! Randomized invariants of the character combinatorics, point counts,
//! charpoly reconstruction and intersection lattices.

use std::collections::HashSet;

use num_bigint::BigInt;
use picard_core::arith::{euler_phi, gcd, is_prime, prime_in_class, units};
use picard_core::charspace::{self, enumerate_characters, fermat_invariants, galois_orbit, Field};
use picard_core::cyclo::{galois_group, CycInt, CycIntPoly};
use picard_core::delsarte::{
    fermat_cover_degree, invariant_characters, picard_profile, surface_invariants, ExponentMatrix,
};
use picard_core::frobpoly::{self, solve_2adic, AdicSystem, CharpolyProblem};
use picard_core::gf::{self, count};
use picard_core::latgram::det;
use picard_core::mpoly::MPoly;
use picard_core::zpoly::{self, ZPoly};
use proptest::prelude::*;
use proptest::sample::select;

fn prime_coprime_to(m: i64) -> impl Strategy<Value = i64> {
    (2i64..600).prop_filter("prime coprime to m", move |&p| is_prime(p as u64) && gcd(p, m) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn character_count_formula(m in 2i64..=100) {
        prop_assert_eq!(enumerate_characters(m).unwrap().len() as i64, (m - 1) * (m * m - 3 * m + 3));
    }

    #[test]
    fn weights_are_symmetric(m in 2i64..=40) {
        for c in enumerate_characters(m).unwrap() {
            prop_assert_eq!(c.weight() + c.neg().weight(), 2);
            prop_assert!((0..=2).contains(&c.weight()));
        }
    }

    #[test]
    fn orbits_partition_the_characters(m in 2i64..=40) {
        let chars = enumerate_characters(m).unwrap();
        let orbits = charspace::orbits_of(&chars);
        let mut seen = HashSet::new();
        for o in &orbits {
            prop_assert_eq!(euler_phi(m as u64) % o.len() as u64, 0);
            for c in &o.members {
                prop_assert!(seen.insert(*c));
            }
            prop_assert_eq!(&galois_orbit(&o.representative()), o);
        }
        prop_assert_eq!(seen.len(), chars.len());
    }

    #[test]
    fn reduction_depends_on_the_residue_only((m, p) in (3i64..=40).prop_flat_map(|m| (Just(m), prime_coprime_to(m)))) {
        let q = prime_in_class(p.rem_euclid(m) as u64, m as u64, p as u64 + 1) as i64;
        let zero = fermat_invariants(m, Field::CharZero).unwrap();
        let a = fermat_invariants(m, Field::ModP(p)).unwrap();
        let b = fermat_invariants(m, Field::ModP(q)).unwrap();
        prop_assert_eq!((a.rho, a.lambda), (b.rho, b.lambda));
        prop_assert_eq!(a.lambda + a.rho, a.b2);
        prop_assert!(a.lambda <= zero.lambda);
        if p % m == 1 {
            prop_assert_eq!((a.rho, a.lambda), (zero.rho, zero.lambda));
        }
        if charspace::supersingular_witness(m, p).unwrap().is_some() {
            prop_assert_eq!(a.rho, a.b2);
        }
    }
}

/// Random four-monomial surfaces of degree 4..=6 with finite cover degree.
fn delsarte_surface() -> impl Strategy<Value = ExponentMatrix> {
    (4i64..=6)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0i64..=d, 3), 4).prop_map(move |v| (d, v)))
        .prop_filter_map("singular exponent matrix", |(d, v)| {
            let mut rows = [[0i64; 4]; 4];
            for (r, part) in rows.iter_mut().zip(&v) {
                let s: i64 = part.iter().sum();
                if s > d {
                    return None;
                }
                r[..3].copy_from_slice(part);
                r[3] = d - s;
            }
            let e = ExponentMatrix::new(rows).ok()?;
            (e.det() != 0 && fermat_cover_degree(&e).is_ok()).then_some(e)
        })
}

fn permuted(e: &ExponentMatrix, rows: &[usize], cols: &[usize]) -> ExponentMatrix {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = e.rows[rows[i]][cols[j]];
        }
    }
    ExponentMatrix::new(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariant_characters_are_galois_closed(e in delsarte_surface()) {
        let chars = invariant_characters(&e).unwrap();
        let set: HashSet<_> = chars.iter().copied().collect();
        let m = fermat_cover_degree(&e).unwrap();
        for c in &chars {
            for t in units(m) {
                prop_assert!(set.contains(&c.scale(t)));
            }
        }
    }

    #[test]
    fn profile_is_bounded_by_char_zero_and_b2(e in delsarte_surface()) {
        let zero = surface_invariants(&e, Field::CharZero).unwrap();
        let profile = picard_profile(&e).unwrap();
        prop_assert_eq!(profile.get(&1), Some(&zero.rho));
        for (&r, &rho) in &profile {
            prop_assert!(zero.rho <= rho && rho <= zero.b2, "r = {} gives {}", r, rho);
            let p = prime_in_class(r as u64, zero.m as u64, 2) as i64;
            prop_assert_eq!(surface_invariants(&e, Field::ModP(p)).unwrap().rho, rho);
            if zero.m > 1 && charspace::supersingular_witness(zero.m, p).unwrap().is_some() {
                prop_assert_eq!(rho, zero.b2);
            }
        }
    }

    #[test]
    fn monomial_and_variable_order_do_not_matter(
        e in delsarte_surface(),
        rows in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        cols in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let f = permuted(&e, &rows, &cols);
        prop_assert_eq!(fermat_cover_degree(&f).unwrap(), fermat_cover_degree(&e).unwrap());
        prop_assert_eq!(surface_invariants(&f, Field::CharZero).unwrap(), surface_invariants(&e, Field::CharZero).unwrap());
        prop_assert_eq!(picard_profile(&f).unwrap(), picard_profile(&e).unwrap());
    }

    #[test]
    fn diagonal_matrix_is_the_fermat_surface(d in 4i64..=12, r in 1u64..200) {
        let mut rows = [[0i64; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = d;
        }
        let e = ExponentMatrix::new(rows).unwrap();
        let a = surface_invariants(&e, Field::CharZero).unwrap();
        let b = fermat_invariants(d, Field::CharZero).unwrap();
        prop_assert_eq!((a.m, a.rho, a.lambda, a.b2), (d, b.rho, b.lambda, b.b2));
        if gcd(r as i64, d) == 1 {
            let p = prime_in_class(r % d as u64, d as u64, 2) as i64;
            let a = surface_invariants(&e, Field::ModP(p)).unwrap();
            prop_assert_eq!(a.rho, fermat_invariants(d, Field::ModP(p)).unwrap().rho);
        }
    }
}

const XYZW: [&str; 4] = ["x", "y", "z", "w"];
const CUBIC_MONOMIALS: [&str; 12] =
    ["x^3", "y^3", "z^3", "w^3", "x*y*z", "y*z*w", "x^2*w", "y^2*x", "z^2*y", "w^2*z", "x*y*w", "1"];

fn cubic_poly() -> impl Strategy<Value = (MPoly, MPoly)> {
    prop::collection::vec(-3i64..=3, 12).prop_filter_map("zero polynomial", |c| {
        let term = |(k, m): (&i64, &&str)| format!("({k})*{m}");
        let homog: Vec<String> = c.iter().zip(&CUBIC_MONOMIALS[..11]).map(term).collect();
        let all: Vec<String> = c.iter().zip(&CUBIC_MONOMIALS).map(term).collect();
        let f = MPoly::parse(&homog.join(" + "), &XYZW).ok()?;
        let g = MPoly::parse(&all.join(" + "), &XYZW).ok()?;
        (!f.is_zero()).then_some((f, g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fast_counts_equal_enumeration(
        (f, g) in cubic_poly(),
        (p, k) in select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]),
    ) {
        let field = gf::Field::get(p, k).unwrap();
        prop_assert_eq!(count::count_projective(&f, &field).unwrap(), count::count_projective_brute(&f, &field).unwrap());
        prop_assert_eq!(count::count_affine(&g, &field).unwrap(), count::count_affine_brute(&g, &field).unwrap());
    }
}

fn cyc(n: u64, c: &[i64]) -> CycInt {
    CycInt::from_coords(n, c)
}

fn cyc_strategy(n: u64, r: i64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-r..=r, CycInt::dim(n)).prop_map(move |c| cyc(n, &c))
}

/// `λ² − aλ + q²` for the given traces, times optional `(λ ∓ q)` pairs.
fn weil_product(q: i64, a: &[i64], ends: (usize, usize)) -> ZPoly {
    let mut f = zpoly::from_i64(&[1]);
    for &t in a {
        f = zpoly::mul(&f, &zpoly::from_i64(&[q * q, -t, 1]));
    }
    for _ in 0..ends.0 {
        f = zpoly::mul(&f, &zpoly::from_i64(&[-q, 1]));
    }
    for _ in 0..ends.1 {
        f = zpoly::mul(&f, &zpoly::from_i64(&[q, 1]));
    }
    f
}

fn weil_data() -> impl Strategy<Value = (i64, Vec<i64>, (usize, usize))> {
    select(vec![2i64, 3, 4, 5, 7, 9, 11])
        .prop_flat_map(|q| (Just(q), prop::collection::vec(-2 * q..=2 * q, 1..=4), (0usize..=2, 0usize..=2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn newton_round_trip(n in select(vec![1u64, 3, 4, 5, 8, 12]), deg in 1usize..=8, seed in prop::collection::vec(-20i64..=20, 96)) {
        let d = CycInt::dim(n);
        let mut e = vec![CycInt::one(n)];
        for i in 0..deg {
            e.push(cyc(n, &seed[i * d % 90..i * d % 90 + d.min(6)]));
        }
        let t = frobpoly::elementary_to_traces(&e, deg);
        prop_assert_eq!(frobpoly::traces_to_elementary(n, &t).unwrap(), e.clone());
        let f = frobpoly::poly_from_elementary(&e);
        prop_assert_eq!(frobpoly::elementary_from_poly(&f), e);
    }

    #[test]
    fn duality_recovers_planted((q, a, ends) in weil_data()) {
        // one sign per polynomial: (λ−q)(λ+q) pairs keep the degree even
        let ends = if (ends.0 + ends.1) % 2 == 1 { (ends.0 + 1, ends.1) } else { ends };
        let f = weil_product(q, &a, ends);
        let d = f.len() - 1;
        let traces: Vec<i64> = frobpoly::int_traces(&f, d / 2 + 1).iter().map(|t| i64::try_from(t).unwrap()).collect();
        let cands = frobpoly::duality_complete(&CharpolyProblem::integral(d, q, &traces)).unwrap();
        prop_assert!(cands.iter().any(|c| c.poly.to_int_poly().as_ref() == Some(&f)));
        prop_assert!(frobpoly::weil_check(&f, &BigInt::from(q)));
        prop_assert!(frobpoly::self_dual_sign(&f, &BigInt::from(q)).is_some());
    }

    #[test]
    fn unity_roots_of_weil_products((q, a, ends) in weil_data()) {
        let f = weil_product(q, &a, (2 * ends.0, 2 * ends.1));
        let u = frobpoly::unity_root_count(&f, &BigInt::from(q));
        // λ² − aλ + q² has roots q·ζ exactly when a/q ∈ {−2, …, 2}
        let planted = 2 * a.iter().filter(|&&t| t % q == 0).count() + 2 * (ends.0 + ends.1);
        prop_assert_eq!(u.count, planted);
        prop_assert_eq!(u.count % 2, (f.len() - 1) % 2);
        prop_assert_eq!(u.integral, a.iter().all(|&t| t % q == 0));
        prop_assert_eq!(frobpoly::self_dual_sign(&f, &BigInt::from(q)), Some(1));
    }

    #[test]
    fn eigenspace_projection_recovers_planted(
        n in select(vec![3u64, 4, 5]),
        q in 2i64..50,
        t1 in prop::collection::vec(-30i64..=30, 4),
        ints in prop::collection::vec(-30i64..=30, 6),
    ) {
        let t1 = cyc(n, &t1[..CycInt::dim(n)]);
        let mut planted = vec![CycInt::from_int(n, ints[0])];
        for k in 1..n as i64 {
            planted.push(if gcd(k, n as i64) == 1 { t1.galois(k) } else { CycInt::from_int(n, ints[k as usize]) });
        }
        let q = BigInt::from(q);
        let base = BigInt::from(1) + &q * &q;
        let fix: Vec<BigInt> = (0..n as i64)
            .map(|j| {
                let v = planted.iter().enumerate().fold(CycInt::zero(n), |acc, (k, t)| acc.add(&CycInt::zeta_pow(n, j * k as i64).mul(t)));
                v.as_int().unwrap() + &base
            })
            .collect();
        prop_assert_eq!(frobpoly::eigenspace_project(&fix, n, &q).unwrap(), planted);
    }

    #[test]
    fn product_of_all_conjugates_is_integral(
        n in select(vec![3u64, 4, 5, 8]),
        coeffs in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=3),
    ) {
        let mut c: Vec<CycInt> = coeffs.iter().map(|v| cyc(n, &v[..CycInt::dim(n)])).collect();
        c.push(CycInt::one(n));
        let f = CycIntPoly { n, coeffs: c };
        let all = f.product_of_conjugates(&galois_group(n));
        let g = all.to_int_poly();
        prop_assert!(g.is_some());
        prop_assert_eq!(g.unwrap(), f.norm());
    }

    #[test]
    fn adic_solver_matches_enumeration(u in prop::collection::vec(-12i64..=12, 3)) {
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
        let mut got = solve_2adic(&sys, 1 << 22).unwrap().solutions;
        got.sort();
        prop_assert!(got.contains(&u));
        prop_assert_eq!(got, brute);
    }
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                g[i][j] = v[i * n + j];
                g[j][i] = v[i * n + j];
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_ignores_relabeling(
        g in (1usize..=7).prop_flat_map(symmetric),
        seed in any::<u64>(),
    ) {
        let n = g.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (i as u64 + 1).wrapping_mul(seed | 1).rotate_left(17));
        let h: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| g[i][j]).collect()).collect();
        prop_assert_eq!(det(&h), det(&g));
    }

    #[test]
    fn block_diagonal_determinant_multiplies(a in (1usize..=5).prop_flat_map(symmetric), b in (1usize..=5).prop_flat_map(symmetric)) {
        let (n, k) = (a.len(), b.len());
        let mut g = vec![vec![0i64; n + k]; n + k];
        for i in 0..n {
            g[i][..n].copy_from_slice(&a[i]);
        }
        for i in 0..k {
            g[n + i][n..].copy_from_slice(&b[i]);
        }
        prop_assert_eq!(det(&g), det(&a) * det(&b));
    }
}
