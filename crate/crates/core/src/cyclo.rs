//! Arithmetic in `Z[ζ_n]` on the power basis `1, ζ, …, ζ^{φ(n)−1}`, and
//! polynomials with coefficients there.

use crate::arith::{euler_phi, gcd};
use crate::zpoly::{self, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    pub n: u64,
    pub c: Vec<BigInt>,
}

/// Exponents `a` of the automorphisms `ζ ↦ ζ^a`.
pub fn galois_group(n: u64) -> Vec<i64> {
    if n == 1 {
        vec![1]
    } else {
        crate::arith::units(n as i64)
    }
}

fn cyclotomic_coeffs(n: u64) -> Vec<BigInt> {
    zpoly::cyclotomic(n)
}

impl CycInt {
    pub fn dim(n: u64) -> usize {
        euler_phi(n) as usize
    }

    pub fn zero(n: u64) -> Self {
        CycInt { n, c: vec![BigInt::zero(); Self::dim(n)] }
    }

    pub fn from_int(n: u64, a: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = a.into();
        z
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_coords(n: u64, c: &[i64]) -> Self {
        Self::reduce(n, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `ζ^k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        Self::reduce(n, v)
    }

    /// Reduces an arbitrary coefficient vector in `ζ` modulo `Φ_n`.
    pub fn reduce(n: u64, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_coeffs(n);
        let d = phi.len() - 1;
        // Φ_n is monic
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let off = v.len() - d;
            for (j, b) in phi.iter().take(d).enumerate() {
                v[off + j] -= &top * b;
            }
        }
        v.resize(d, BigInt::zero());
        CycInt { n, c: v }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The rational integer this equals, if it lies in `Z`.
    pub fn as_int(&self) -> Option<BigInt> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        CycInt { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        CycInt { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        CycInt { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self::reduce(self.n, zpoly::mul(&self.c, &o.c))
    }

    /// Exact division by a rational integer.
    pub fn div_int(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            let (q, r) = a.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CycInt { n: self.n, c: out })
    }

    /// Exact quotient in `Z[ζ_n]`, via the norm of the divisor.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let mut num = self.clone();
        for a in galois_group(self.n).into_iter().filter(|&a| a != 1) {
            num = num.mul(&o.galois(a));
        }
        num.div_int(&o.norm())
    }

    /// The automorphism `ζ ↦ ζ^a` for `a` prime to `n`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(gcd(a, n), 1, "galois exponent must be a unit");
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, x) in self.c.iter().enumerate() {
            let e = (i as i64 * a).rem_euclid(n) as usize;
            v[e] += x;
        }
        Self::reduce(self.n, v)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm to `Z`.
    pub fn norm(&self) -> BigInt {
        let mut acc = CycInt::one(self.n);
        for a in galois_group(self.n) {
            acc = acc.mul(&self.galois(a));
        }
        acc.as_int().expect("norm lies in Z")
    }

    /// Trace to `Z`.
    pub fn trace(&self) -> BigInt {
        let mut acc = CycInt::zero(self.n);
        for a in galois_group(self.n) {
            acc = acc.add(&self.galois(a));
        }
        acc.as_int().expect("trace lies in Z")
    }

    /// Complex embedding with `ζ = e^{2πi/n}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, x) in self.c.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            let v = x.to_f64().unwrap_or(f64::NAN);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.n == 4 { "i" } else { "ζ" };
        let mut terms = Vec::new();
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let s = if k == 0 {
                x.to_string()
            } else if x.is_one() {
                mono
            } else if *x == BigInt::from(-1) {
                format!("-{mono}")
            } else {
                format!("{x}{mono}")
            };
            terms.push(s);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// Polynomial in `λ` with `Z[ζ_n]` coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycIntPoly {
    pub n: u64,
    pub coeffs: Vec<CycInt>,
}

impl CycIntPoly {
    pub fn from_int_poly(n: u64, f: &[BigInt]) -> Self {
        CycIntPoly { n, coeffs: f.iter().map(|c| CycInt::from_int(n, c.clone())).collect() }.trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.as_int().is_some_and(|v| v.is_one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return CycIntPoly { n: self.n, coeffs: Vec::new() };
        }
        let mut out = vec![CycInt::zero(self.n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        CycIntPoly { n: self.n, coeffs: out }.trimmed()
    }

    pub fn galois(&self, a: i64) -> Self {
        CycIntPoly { n: self.n, coeffs: self.coeffs.iter().map(|c| c.galois(a)).collect() }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Product of all Galois conjugates; an integer polynomial.
    pub fn norm(&self) -> ZPoly {
        let mut acc = CycIntPoly::from_int_poly(self.n, &[BigInt::one()]);
        for a in galois_group(self.n) {
            acc = acc.mul(&self.galois(a));
        }
        acc.to_int_poly().expect("norm polynomial has integer coefficients")
    }

    /// Product over a subset of Galois exponents.
    pub fn product_of_conjugates(&self, exps: &[i64]) -> Self {
        let mut acc = CycIntPoly::from_int_poly(self.n, &[BigInt::one()]);
        for &a in exps {
            acc = acc.mul(&self.galois(a));
        }
        acc
    }

    pub fn to_int_poly(&self) -> Option<ZPoly> {
        self.coeffs.iter().map(|c| c.as_int()).collect::<Option<Vec<_>>>().map(zpoly::trim)
    }

    pub fn display(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let nz = c.c.iter().filter(|x| !x.is_zero()).count();
            let cs = c.to_string();
            let s = if i == 0 {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if nz > 1 {
                format!("({cs}){mono}")
            } else {
                format!("{cs}{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// JSON form: `{"n": 4, "coeffs": [["a0", "b0"], ...]}` ascending in `λ`, each
/// coefficient a decimal-string vector on the power basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycIntPolyJson {
    pub n: u64,
    pub coeffs: Vec<Vec<String>>,
}

impl From<&CycIntPoly> for CycIntPolyJson {
    fn from(p: &CycIntPoly) -> Self {
        CycIntPolyJson { n: p.n, coeffs: p.coeffs.iter().map(|c| c.c.iter().map(|x| x.to_string()).collect()).collect() }
    }
}

impl TryFrom<&CycIntPolyJson> for CycIntPoly {
    type Error = crate::Error;
    fn try_from(j: &CycIntPolyJson) -> crate::Result<Self> {
        if j.n == 0 {
            return Err(crate::Error::Invalid("cyclotomic order 0".into()));
        }
        let mut coeffs = Vec::new();
        for c in &j.coeffs {
            let v = zpoly::parse_coeffs(c)?;
            if v.len() > CycInt::dim(j.n) {
                return Err(crate::Error::Invalid(format!("coefficient vector longer than φ({})", j.n)));
            }
            coeffs.push(CycInt::reduce(j.n, v));
        }
        Ok(CycIntPoly { n: j.n, coeffs }.trimmed())
    }
}

/// Absolute value of the largest coordinate.
pub fn max_coord(c: &CycInt) -> BigInt {
    c.c.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers() {
        let i = CycInt::zeta_pow(4, 1);
        assert_eq!(i.mul(&i), CycInt::from_int(4, -1));
        let a = CycInt::from_coords(4, &[3, 4]);
        assert_eq!(a.norm(), BigInt::from(25));
        assert_eq!(a.conj(), CycInt::from_coords(4, &[3, -4]));
    }

    #[test]
    fn fifth_roots() {
        let z = CycInt::zeta_pow(5, 1);
        let mut acc = CycInt::one(5);
        for _ in 0..5 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, CycInt::one(5));
        // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0
        let s = (0..5).fold(CycInt::zero(5), |s, k| s.add(&CycInt::zeta_pow(5, k)));
        assert!(s.is_zero());
        // N(1 − ζ) = 5
        assert_eq!(CycInt::one(5).sub(&z).norm(), BigInt::from(5));
        assert_eq!(z.trace(), BigInt::from(-1));
    }

    #[test]
    fn polynomial_norm() {
        // (λ − i)(λ + i) = λ² + 1
        let p = CycIntPoly { n: 4, coeffs: vec![CycInt::zeta_pow(4, 1).neg(), CycInt::one(4)] };
        assert_eq!(p.norm(), zpoly::from_i64(&[1, 0, 1]));
    }
}
