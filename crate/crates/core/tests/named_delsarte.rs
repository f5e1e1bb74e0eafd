use picard_core::charspace::Field;
use picard_core::delsarte::*;

const TABLE: &[(&str, i64, i64)] = &[
    ("x5 + y5 + xzw3 + z4w", 55, 13),
    ("x5 + xy4 + yz4 + zw4", 64, 5),
    ("wx4 + wy4 + yz4 + zw4", 52, 17),
    ("x3yw + xy4 + yz4 + zw4", 35, 19),
    ("yzw3 + y4w + xyz3 + x5", 34, 21),
    ("x3yw + y5 + z4w + zw4", 45, 23),
    ("w5 + xz4 + xy3w + x5", 60, 25),
    ("zw4 + z5 + y3zw + x3yw", 36, 29),
    ("w5 + xy3z + xyz3 + x3zw", 22, 33),
    ("yzw3 + xyz3 + xy3z + x4w", 20, 37),
    ("zw4 + xy4 + xyz3 + x3yz", 24, 41),
    ("w5 + y5 + yx4 + yz4", 20, 29),
];

#[test]
fn named_surfaces() {
    for &(s, m, rho) in TABLE {
        let e = ExponentMatrix::parse(s).unwrap();
        let inv = surface_invariants(&e, Field::CharZero).unwrap();
        println!("{s}: m={} rho={} pg={}", inv.m, inv.rho, inv.pg);
        assert_eq!((inv.m, inv.rho), (m, rho), "{s}");
    }
    let e = ExponentMatrix::parse("yzw3 + xyz3 + wxy3 + zwx3").unwrap();
    let inv = surface_invariants(&e, Field::CharZero).unwrap();
    println!("maximal: m={} rho={}", inv.m, inv.rho);
    assert_eq!(inv.rho, 45);
}

#[test]
fn trivial_cover_has_one_residue_class() {
    let e = ExponentMatrix::parse("z3w2 + xyz3 + yzw3 + yw4").unwrap();
    let inv = surface_invariants(&e, Field::CharZero).unwrap();
    assert_eq!((inv.m, inv.rho), (1, 53));
    assert_eq!(picard_profile(&e).unwrap().into_iter().collect::<Vec<_>>(), vec![(1, 53)]);
}
