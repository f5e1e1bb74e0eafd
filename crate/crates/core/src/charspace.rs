//! Characters of `μ_m^4 / μ_m` indexing the primitive cohomology of the
//! Fermat surface of degree `m`, their Hodge weights and Galois orbits.

use crate::arith::{gcd, mult_order, rem, units};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_MODULUS: i64 = 10_000;

/// A character `(b0, b1, b2, b3)` with every `b_i` in `[1, m)` and `Σ b_i ≡ 0 mod m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character4 {
    pub m: i64,
    pub b: [i64; 4],
}

impl Character4 {
    pub fn new(m: i64, a: [i64; 4]) -> Result<Self> {
        check_modulus(m)?;
        let b = a.map(|x| rem(x, m));
        if b.iter().any(|&x| x == 0) || b.iter().sum::<i64>() % m != 0 {
            return Err(Error::InvalidCharacter(a.to_vec(), m));
        }
        Ok(Character4 { m, b })
    }

    /// Builds the 4-tuple from the three free coordinates, appending `a0 = -Σ a_i`.
    pub fn from_triple(m: i64, a: [i64; 3]) -> Result<Self> {
        Self::new(m, [a[0], a[1], a[2], -(a[0] + a[1] + a[2])])
    }

    /// Hodge weight: `Σ b_i / m - 1`, so that `V(c)` has type `(2 - w, w)`.
    pub fn weight(&self) -> i64 {
        self.b.iter().sum::<i64>() / self.m - 1
    }

    /// Coordinatewise multiple `t·c`; `t` must be a unit mod `m`.
    pub fn scale(&self, t: i64) -> Character4 {
        Character4 { m: self.m, b: self.b.map(|x| rem(x * t, self.m)) }
    }

    pub fn neg(&self) -> Character4 {
        self.scale(-1)
    }
}

pub(crate) fn check_modulus(m: i64) -> Result<()> {
    if (2..=MAX_MODULUS).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(m))
    }
}

/// All characters mod `m`, in lexicographic order.
pub fn enumerate_characters(m: i64) -> Result<Vec<Character4>> {
    check_modulus(m)?;
    let mut out = Vec::with_capacity(((m - 1) * (m * m - 3 * m + 3)) as usize);
    for b0 in 1..m {
        for b1 in 1..m {
            for b2 in 1..m {
                let b3 = rem(-(b0 + b1 + b2), m);
                if b3 != 0 {
                    out.push(Character4 { m, b: [b0, b1, b2, b3] });
                }
            }
        }
    }
    Ok(out)
}

/// Orbit of a character under `(Z/m)^×`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharOrbit {
    pub m: i64,
    /// Sorted, deduplicated.
    pub members: Vec<Character4>,
}

impl CharOrbit {
    pub fn representative(&self) -> Character4 {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn galois_orbit(c: &Character4) -> CharOrbit {
    let mut members: Vec<_> = units(c.m).into_iter().map(|t| c.scale(t)).collect();
    members.sort();
    members.dedup();
    CharOrbit { m: c.m, members }
}

pub fn orbit_algebraic_char0(o: &CharOrbit) -> bool {
    o.members.iter().all(|c| c.weight() == 1)
}

fn check_reduction(p: i64, m: i64) -> Result<()> {
    if gcd(p, m) != 1 {
        return Err(Error::BadReduction { p, m });
    }
    Ok(())
}

/// Average-weight criterion over the Frobenius orbit `{p^j c}` for a single character.
fn char_algebraic_modp(c: &Character4, p: i64, order: u64) -> bool {
    let mut s = 0;
    let mut x = *c;
    for _ in 0..order {
        s += x.weight();
        x = x.scale(p);
    }
    s == order as i64
}

/// Algebraicity of the whole orbit over `F̄_p`. Only `p mod m` matters.
pub fn orbit_algebraic_modp(o: &CharOrbit, p: i64) -> Result<bool> {
    check_reduction(p, o.m)?;
    let ord = mult_order(rem(p, o.m), o.m);
    Ok(o.members.iter().all(|c| char_algebraic_modp(c, rem(p, o.m), ord)))
}

/// Residues `r ∈ (Z/m)^×` for which the orbit becomes algebraic mod any `p ≡ r`.
pub fn good_residues(o: &CharOrbit) -> Vec<i64> {
    units(o.m)
        .into_iter()
        .filter(|&r| orbit_algebraic_modp(o, r).expect("unit residue"))
        .collect()
}

/// Smallest `ν ≥ 1` with `p^ν ≡ -1 mod m`.
pub fn supersingular_witness(m: i64, p: i64) -> Result<Option<u64>> {
    check_modulus(m)?;
    check_reduction(p, m)?;
    let r = rem(p, m);
    let ord = mult_order(r, m);
    let mut x = r;
    for nu in 1..=ord {
        if x == m - 1 {
            return Ok(Some(nu));
        }
        x = rem(x * r, m);
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "p")]
pub enum Field {
    CharZero,
    /// Reduction modulo a prime; for the combinatorics only its class mod `m` matters.
    ModP(i64),
}

impl Field {
    /// Whether the orbit (or character set) is algebraic in this field.
    pub fn orbit_algebraic(&self, o: &CharOrbit) -> Result<bool> {
        match *self {
            Field::CharZero => Ok(orbit_algebraic_char0(o)),
            Field::ModP(p) => orbit_algebraic_modp(o, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatInvariants {
    pub m: i64,
    pub b2: i64,
    pub lambda: i64,
    pub rho: i64,
    pub pg: i64,
    pub field: Field,
}

pub fn fermat_b2(m: i64) -> i64 {
    m * m * m - 4 * m * m + 6 * m - 2
}

/// Splits a Galois-stable character set into orbits, sorted by representative.
pub fn orbits_of(chars: &[Character4]) -> Vec<CharOrbit> {
    let mut sorted = chars.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in sorted {
        if seen.contains(&c) {
            continue;
        }
        let o = galois_orbit(&c);
        for x in &o.members {
            seen.insert(*x);
        }
        out.push(o);
    }
    out
}

/// `λ` counted over a Galois-stable set of characters.
pub fn count_lambda(chars: &[Character4], field: Field) -> Result<i64> {
    let mut lambda = 0;
    for o in orbits_of(chars) {
        if !field.orbit_algebraic(&o)? {
            lambda += o.len() as i64;
        }
    }
    Ok(lambda)
}

pub fn fermat_invariants(m: i64, field: Field) -> Result<FermatInvariants> {
    check_modulus(m)?;
    if let Field::ModP(p) = field {
        check_reduction(p, m)?;
    }
    let chars = enumerate_characters(m)?;
    let lambda = count_lambda(&chars, field)?;
    let pg = chars.iter().filter(|c| c.weight() == 0).count() as i64;
    let b2 = fermat_b2(m);
    Ok(FermatInvariants { m, b2, lambda, rho: b2 - lambda, pg, field })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        assert_eq!(enumerate_characters(2).unwrap(), vec![Character4 { m: 2, b: [1; 4] }]);
        assert_eq!(enumerate_characters(5).unwrap().len(), 52);
        assert_eq!(enumerate_characters(7).unwrap().len(), 186);
        assert!(enumerate_characters(1).is_err());
    }

    #[test]
    fn weights() {
        let c = Character4::from_triple(55, [9, 11, 10]).unwrap();
        assert_eq!(c.b, [9, 11, 10, 25]);
        assert_eq!(c.weight(), 0);
        assert_eq!(Character4::new(5, [1, 1, 2, 1]).unwrap().weight(), 0);
        assert_eq!(Character4::new(5, [4, 4, 3, 4]).unwrap().weight(), 2);
    }

    #[test]
    fn h_set_of_the_m55_orbit() {
        let o = galois_orbit(&Character4::new(55, [9, 11, 10, 25]).unwrap());
        assert_eq!(o.len(), 40);
        assert!(!orbit_algebraic_char0(&o));
        assert_eq!(
            good_residues(&o),
            vec![3, 19, 24, 27, 29, 37, 38, 39, 42, 47, 48, 53, 54]
        );
        assert!(!orbit_algebraic_modp(&o, 1).unwrap());
        assert!(orbit_algebraic_modp(&o, 5).is_err());
    }

    #[test]
    fn witnesses() {
        assert_eq!(supersingular_witness(5, 19).unwrap(), Some(1));
        assert_eq!(supersingular_witness(55, 54).unwrap(), Some(1));
        assert_eq!(supersingular_witness(5, 11).unwrap(), None);
        assert_eq!(supersingular_witness(5, 2).unwrap(), Some(2));
    }

    #[test]
    fn fermat_small() {
        let f3 = fermat_invariants(3, Field::CharZero).unwrap();
        assert_eq!((f3.b2, f3.lambda, f3.rho), (7, 0, 7));
        let f5 = fermat_invariants(5, Field::CharZero).unwrap();
        assert_eq!(f5.b2, 53);
        assert_eq!(f5.rho, 37);
        assert_eq!(f5.pg, 4);
        assert_eq!(fermat_invariants(5, Field::ModP(19)).unwrap().rho, 53);
    }
}
