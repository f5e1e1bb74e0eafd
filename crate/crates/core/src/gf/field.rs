//! `F_q` for `q = p^k ≤ 2^26` in Zech-logarithm representation.
//!
//! An element is its discrete logarithm with respect to a fixed primitive
//! element; zero is the sentinel [`ZERO`]. Multiplication adds logarithms and
//! addition goes through the Zech table `log(1 + g^n)`.

use crate::arith::{factorize, mul_mod};
use crate::error::{Error, Result};
use crate::modpoly;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type Elt = u32;
pub const ZERO: Elt = u32::MAX;
pub const ONE: Elt = 0;

pub const MAX_ORDER: u64 = 1 << 26;

#[derive(Debug)]
pub struct Field {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Monic defining polynomial (ascending), whose root generates `F_q^*`.
    pub modulus: Vec<u64>,
    zech: Vec<Elt>,
    trace: Vec<u8>,
    /// log of each residue `0..p` (index 0 unused).
    fp_log: Vec<Elt>,
    /// residue for each log that is a multiple of `(q-1)/(p-1)`.
    fp_val: Vec<u64>,
    half: u64,
}

impl Field {
    /// Cached construction.
    pub fn get(p: u64, k: u32) -> Result<Arc<Field>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Field::new(p, k)?);
        cache.lock().unwrap().insert((p, k), f.clone());
        Ok(f)
    }

    pub fn new(p: u64, k: u32) -> Result<Field> {
        if !crate::arith::is_prime(p) || p > 255 {
            return Err(Error::Invalid(format!("characteristic {p} must be a prime below 256")));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let q = (p as u128).pow(k);
        if q > MAX_ORDER as u128 {
            return Err(Error::DomainTooLarge(format!("{p}^{k} exceeds 2^26")));
        }
        let q = q as u64;
        let modulus = primitive_modulus(p, k);
        let ku = k as usize;
        let n = (q - 1) as usize;

        // exp table as base-p encodings, then inverse
        let mut log_of = vec![ZERO; q as usize];
        let mut exp = vec![0u32; n];
        let mut cur = vec![0u64; ku];
        cur[0] = 1;
        let pw: Vec<u64> = (0..ku).map(|i| p.pow(i as u32)).collect();
        for (i, slot) in exp.iter_mut().enumerate() {
            let enc: u64 = cur.iter().zip(&pw).map(|(c, w)| c * w).sum();
            *slot = enc as u32;
            log_of[enc as usize] = i as u32;
            // multiply by the root of the modulus
            let top = cur[ku - 1];
            for j in (1..ku).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..ku {
                    cur[j] = (cur[j] + p - mul_mod(top, modulus[j], p)) % p;
                }
            }
        }

        // power sums of the roots of the modulus give Tr(x^i)
        let mut s = vec![0u64; ku];
        s[0] = k as u64 % p;
        for i in 1..ku {
            let mut acc = mul_mod(i as u64 % p, modulus[ku - i], p);
            for r in 1..i {
                acc = (acc + mul_mod(modulus[ku - r], s[i - r], p)) % p;
            }
            s[i] = (p - acc) % p;
        }

        let mut zech = vec![ZERO; n];
        let mut trace = vec![0u8; n];
        for i in 0..n {
            let enc = exp[i] as u64;
            let d0 = enc % p;
            let enc1 = enc - d0 + (d0 + 1) % p;
            zech[i] = if enc1 == 0 { ZERO } else { log_of[enc1 as usize] };
            let mut t = 0u64;
            let mut e = enc;
            for si in &s {
                t += (e % p) * si;
                e /= p;
            }
            trace[i] = (t % p) as u8;
        }
        let mut fp_log = vec![ZERO; p as usize];
        for c in 1..p {
            fp_log[c as usize] = log_of[c as usize];
        }
        let step = (q - 1) / (p - 1);
        let mut fp_val = vec![0u64; (p - 1) as usize];
        for c in 1..p {
            let l = log_of[c as usize] as u64;
            debug_assert_eq!(l % step, 0);
            fp_val[(l / step) as usize] = c;
        }
        Ok(Field { p, k, q, modulus, zech, trace, fp_log, fp_val, half: (q - 1) / 2 })
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q - 1
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a as u64 + b as u64;
        let m = self.q - 1;
        (if s >= m { s - m } else { s }) as Elt
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let m = self.q - 1;
        let d = if b >= a { b - a } else { b + m as u32 - a };
        let z = self.zech[d as usize];
        if z == ZERO {
            return ZERO;
        }
        self.mul(a, z)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if a == ZERO || self.p == 2 {
            return a;
        }
        self.mul(a, self.half as Elt)
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != ZERO, "inverse of zero");
        if a == 0 {
            0
        } else {
            (self.q - 1 - a as u64) as Elt
        }
    }

    #[inline]
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if a == ZERO {
            return if e == 0 { ONE } else { ZERO };
        }
        ((a as u128 * e as u128) % (self.q as u128 - 1)) as Elt
    }

    /// Generator power `g^n`.
    pub fn gen_pow(&self, n: u64) -> Elt {
        (n % (self.q - 1)) as Elt
    }

    /// `a^(p^i)`.
    pub fn frob(&self, a: Elt, i: u32) -> Elt {
        if a == ZERO {
            return ZERO;
        }
        let m = self.q - 1;
        let e = crate::arith::pow_mod(self.p % m.max(2), i as u64, m.max(2));
        ((a as u64 * e) % m) as Elt
    }

    pub fn from_int(&self, c: i64) -> Elt {
        let r = c.rem_euclid(self.p as i64) as usize;
        self.fp_log[r]
    }

    pub fn from_big(&self, c: &num_bigint::BigInt) -> Elt {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let r = c.mod_floor(&num_bigint::BigInt::from(self.p)).to_i64().unwrap();
        self.from_int(r)
    }

    /// The residue of an element of the prime field, `None` otherwise.
    pub fn to_fp(&self, a: Elt) -> Option<u64> {
        if a == ZERO {
            return Some(0);
        }
        let step = (self.q - 1) / (self.p - 1);
        if a as u64 % step == 0 {
            Some(self.fp_val[(a as u64 / step) as usize])
        } else {
            None
        }
    }

    /// Absolute trace to `F_p`.
    #[inline]
    pub fn trace(&self, a: Elt) -> u64 {
        if a == ZERO {
            0
        } else {
            self.trace[a as usize] as u64
        }
    }

    /// Whether `a` lies in the subfield `F_{p^d}` (`d | k`).
    pub fn in_subfield(&self, a: Elt, d: u32) -> bool {
        assert!(self.k % d == 0);
        a == ZERO || a as u64 % ((self.q - 1) / (self.p.pow(d) - 1)) == 0
    }

    /// Quadratic character; odd characteristic only.
    #[inline]
    pub fn chi(&self, a: Elt) -> i64 {
        debug_assert!(self.p != 2);
        if a == ZERO {
            0
        } else if a % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All elements: zero followed by `g^0, …, g^{q-2}`.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        std::iter::once(ZERO).chain(0..(self.q - 1) as Elt)
    }

    /// Elements of the subfield `F_{p^d}`.
    pub fn subfield_elements(&self, d: u32) -> Vec<Elt> {
        assert!(self.k % d == 0);
        let step = (self.q - 1) / (self.p.pow(d) - 1);
        std::iter::once(ZERO).chain((0..self.p.pow(d) - 1).map(|i| (i * step) as Elt)).collect()
    }

    /// Dense index in `0..q` (zero maps to `q-1`).
    #[inline]
    pub fn index(&self, a: Elt) -> usize {
        if a == ZERO {
            (self.q - 1) as usize
        } else {
            a as usize
        }
    }
}

/// Smallest monic primitive polynomial of degree `k` over `F_p`, ordering
/// candidates by the base-p integer formed from the lower coefficients.
pub fn primitive_modulus(p: u64, k: u32) -> Vec<u64> {
    let q = p.pow(k);
    let primes: Vec<u64> = factorize(q - 1).into_iter().map(|(r, _)| r).collect();
    for code in 0..q {
        let mut f: Vec<u64> = (0..k).map(|i| (code / p.pow(i)) % p).collect();
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if k > 1 && !modpoly::is_irreducible(&f, p) {
            continue;
        }
        if k == 1 {
            // root of x + c is -c; must generate F_p^*
            let g = (p - f[0]) % p;
            if primes.iter().all(|&r| crate::arith::pow_mod(g, (p - 1) / r, p) != 1) || p == 2 {
                return f;
            }
            continue;
        }
        let x = vec![0u64, 1];
        if primes.iter().all(|&r| modpoly::powmod(&x, ((q - 1) / r) as u128, &f, p) != vec![1]) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
