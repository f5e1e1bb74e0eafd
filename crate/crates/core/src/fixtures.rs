//! Published target polynomials and data used by the reproduction checks.

use crate::cyclo::{CycInt, CycIntPoly};
use crate::zpoly::{self, QPoly, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Quoted from the literature.
    Published,
    /// Computed by an independent route in this repository.
    Derived,
    /// Elementary.
    Trivial,
}

/// Ascending polynomial from the descending upper half `λ^D … λ^{D/2}` of a
/// palindromic one.
pub fn palindrome(top: &[i64]) -> ZPoly {
    let d = 2 * (top.len() - 1);
    let mut f = vec![BigInt::from(0); d + 1];
    for (i, &c) in top.iter().enumerate() {
        f[d - i] = c.into();
        f[i] = c.into();
    }
    f
}

/// `χ^+` of the first wild quintic as a function of `p`.
pub fn wild_quintic_plus(p: i64) -> ZPoly {
    let p = BigInt::from(p);
    let t = |c: i64, e: u32| BigInt::from(c) * p.pow(e);
    let mut f = vec![BigInt::from(0); 17];
    for (deg, c, e) in [
        (16, 1, 0),
        (13, 2, 3),
        (12, 1, 3),
        (11, 6, 4),
        (10, 2, 6),
        (9, 4, 6),
        (8, 9, 7),
        (7, 4, 8),
        (6, 2, 10),
        (5, 6, 10),
        (4, 1, 11),
        (3, 2, 13),
        (0, 1, 16),
    ] {
        f[deg] = t(c, e);
    }
    f
}

/// `p^{−25} χ^−(5λ)` of the first wild quintic at `p = 5`.
pub fn wild_quintic_minus_scaled() -> ZPoly {
    palindrome(&[125, 0, 50, 25, 5, 30, 125, -85, 171, -89, -65, -105, -24, -165, 129])
}

/// `χ_+(5T)/5^16` of the second wild quintic.
pub fn second_quintic_plus_normalized() -> QPoly {
    let five = palindrome(&[5, -5, 10, -5, 5, 0, -5, 10, -14]);
    five.iter().map(|c| BigRational::new(c.clone(), 5.into())).collect()
}

/// `5³ χ_−` (normalized variable) of the second wild quintic.
pub fn second_quintic_minus_scaled() -> ZPoly {
    palindrome(&[125, -375, 825, -1250, 1405, -1095, 130, 1130, -2339, 2862, -2384, 1025, 805, -2313, 2914])
}

/// `(λ⁸ − λ⁴ + 1)(λ⁸ + ⅔λ⁴ + 1)` for the double sextic over `F_3`.
pub fn sextic_cover_normalized() -> QPoly {
    let a = zpoly::from_i64(&[1, 0, 0, 0, -1, 0, 0, 0, 1]);
    let b = zpoly::from_i64(&[3, 0, 0, 0, 2, 0, 0, 0, 3]);
    zpoly::mul(&a, &b).iter().map(|c| BigRational::new(c.clone(), 3.into())).collect()
}

pub fn gauss(re: i64, im: i64) -> CycInt {
    CycInt::from_coords(4, &[re, im])
}

/// Ascending polynomial over `Z[i]` from `(re, im)` pairs.
pub fn gauss_poly(c: &[(i64, i64)]) -> CycIntPoly {
    CycIntPoly { n: 4, coeffs: c.iter().map(|&(a, b)| gauss(a, b)).collect() }
}

/// Elliptic-family fixtures: charpolys on the complement of the known
/// classes.
pub mod elliptic {
    use super::*;

    /// Second family, `b = 1`, `p = 11`.
    pub fn x2_b1_p11() -> ZPoly {
        zpoly::from_i64(&[14641, 121, -132, 1, 1])
    }

    /// First family, `b = 1`: the two candidates at `p` (each as linear ×
    /// quadratic), keyed by `p`.
    pub fn x1_b1_candidates(p: i64) -> Vec<ZPoly> {
        let (a, b): ((i64, i64), (i64, i64)) = match p {
            5 => ((-5, 3), (5, -7)),
            11 => ((-11, 13), (11, -9)),
            _ => return Vec::new(),
        };
        vec![
            zpoly::mul(&zpoly::from_i64(&[a.0, 1]), &zpoly::from_i64(&[p * p, a.1, 1])),
            zpoly::mul(&zpoly::from_i64(&[b.0, 1]), &zpoly::from_i64(&[p * p, b.1, 1])),
        ]
    }

    /// Second family, `b = 3`.
    pub fn x2_b3(p: i64) -> ZPoly {
        match p {
            7 => zpoly::mul(&zpoly::from_i64(&[7, 1]), &zpoly::from_i64(&[49, -5, 1])),
            11 => zpoly::mul(&zpoly::from_i64(&[11, 1]), &zpoly::from_i64(&[121, -4, 1])),
            _ => Vec::new(),
        }
    }

    /// Second family, `b = 5`.
    pub fn x2_b5(p: i64) -> ZPoly {
        let quad = match p {
            7 => [49, 4],
            11 => [121, 10],
            _ => return Vec::new(),
        };
        let lin = zpoly::from_i64(&[-p * p, 0, 1]);
        zpoly::mul(&lin, &zpoly::from_i64(&[quad[0], quad[1], 1]))
    }
}

/// Eigenspace data over `Z[i]` for quintics with an order-4 automorphism.
pub mod gaussian {
    use super::*;

    /// `λ³ − 4(1−i)λ² + 20(1−i)λ + 125i` at `p = 5`.
    pub fn cubic_p5() -> CycIntPoly {
        gauss_poly(&[(0, 125), (20, -20), (-4, 4), (1, 0)])
    }

    /// Quoted traces on the `i` eigenspace at `p = 13` over `F_p`, `F_{p²}`.
    pub fn traces_p13() -> [CycInt; 2] {
        [gauss(20, 12), gauss(-56, 40)]
    }

    /// `λ³ + 4(5+3i)λ² + 52(3+5i)λ + 13³i`.
    pub fn cubic_p13() -> CycIntPoly {
        gauss_poly(&[(0, 2197), (156, 260), (20, 12), (1, 0)])
    }

    /// Integer quartic on the degenerate `U_−` at `p = 13`.
    pub fn quartic_p13() -> ZPoly {
        zpoly::from_i64(&[28561, 1014, 18, 6, 1])
    }

    /// Eigenfactors at `p = 17`: a quartic on one factor and `λ − (1 − 4i)`.
    pub fn quartic_p17() -> CycIntPoly {
        gauss_poly(&[(255, 136), (-32, 60), (-16, -4), (0, -4), (1, 0)])
    }

    pub fn linear_root_p17() -> CycInt {
        gauss(1, -4)
    }

    /// Degree-8 charpoly on the tensor product at `p = 17`.
    pub fn octic_p17() -> ZPoly {
        let p = BigInt::from(17);
        vec![
            p.pow(8),
            p.pow(6) * 32,
            p.pow(4) * 816,
            p.pow(2) * 18496,
            383214.into(),
            18496.into(),
            816.into(),
            32.into(),
            BigInt::one(),
        ]
    }

    pub const TRACE_P17: i64 = -32;
}

/// Declarative lifting checks.
pub mod lifting {
    use crate::padlift::LiftFixture;

    pub fn all() -> Vec<LiftFixture> {
        serde_json::from_str(include_str!("../fixtures/lifting.json")).expect("lifting fixtures parse")
    }

    pub fn by_name(name: &str) -> Option<LiftFixture> {
        all().into_iter().find(|f| f.name == name)
    }
}

/// Declarative pencils of plane curves.
pub mod pencils {
    use crate::padlift::PencilFixture;

    pub fn all() -> Vec<PencilFixture> {
        serde_json::from_str(include_str!("../fixtures/pencils.json")).expect("pencil fixtures parse")
    }

    pub fn by_name(name: &str) -> Option<PencilFixture> {
        all().into_iter().find(|f| f.name == name)
    }
}
