//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are stored as exponent vectors over an ordered variable list. The
//! parser accepts `+ - * ^`, parentheses, integer literals and single-letter
//! variables, with implicit multiplication (`3x^2yz` is `3*x^2*y*z`).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Monomial, BigInt>,
}

/// Serialized form: variable names plus `(coefficient, exponents)` pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SparsePolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<(String, Vec<u32>)>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        MPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigInt::one());
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MPoly) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        let mut out = self.empty_like();
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_vars(other);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { vars: self.vars.clone(), terms: acc }
    }

    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut r = MPoly::constant(&self.var_refs(), 1);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        out
    }

    /// Reorders or extends the variable list; every current variable with a
    /// nonzero exponent must appear in `vars`.
    pub fn with_vars(&self, vars: &[&str]) -> Result<MPoly> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = MPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2[j] = x,
                    None => return Err(Error::Invalid(format!("variable {} not in target list", self.vars[i]))),
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Substitutes polynomials (all over a common variable list) for every variable.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars());
        let target = subs[0].var_refs();
        let mut out = MPoly::zero(&target);
        // cache powers per variable
        let mut powers: Vec<Vec<MPoly>> = subs.iter().map(|s| vec![MPoly::constant(&target, 1), s.clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces variable `name` by an integer and drops it from the list.
    pub fn subst_int(&self, name: &str, value: &BigInt) -> Result<MPoly> {
        let i = self.var_index(name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        let vars: Vec<&str> = self.vars.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.as_str()).collect();
        let mut out = MPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(i);
            out.add_term(e2, c * value.pow(k));
        }
        Ok(out)
    }

    /// Groups terms by the exponents of the variables in `outer`; the
    /// coefficients are polynomials in the remaining variables.
    pub fn collect(&self, outer: &[usize]) -> BTreeMap<Monomial, MPoly> {
        let inner: Vec<usize> = (0..self.nvars()).filter(|i| !outer.contains(i)).collect();
        let inner_names: Vec<&str> = inner.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut out: BTreeMap<Monomial, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let eo: Monomial = outer.iter().map(|&i| e[i]).collect();
            let ei: Monomial = inner.iter().map(|&i| e[i]).collect();
            out.entry(eo).or_insert_with(|| MPoly::zero(&inner_names)).add_term(ei, c.clone());
        }
        out
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.nvars()]).cloned().unwrap_or_default()
    }

    pub fn reduce_mod(&self, m: &BigInt) -> MPoly {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mod_floor(m));
        }
        out
    }

    /// Evaluation at integer points modulo `m`.
    pub fn eval_mod(&self, x: &[BigInt], m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.mod_floor(m);
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t * xi.modpow(&BigInt::from(k), m) % m;
                }
            }
            acc += t;
        }
        acc.mod_floor(m)
    }

    /// Evaluation modulo a word-size prime.
    pub fn eval_u64(&self, x: &[u64], l: u64) -> u64 {
        use crate::arith::{mul_mod, pow_mod};
        let mut acc: u128 = 0;
        let lb = BigInt::from(l);
        for (e, c) in &self.terms {
            let mut t = c.mod_floor(&lb).to_u64().unwrap();
            for (&xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = mul_mod(t, pow_mod(xi, k as u64, l), l);
                }
            }
            acc = (acc + t as u128) % l as u128;
        }
        acc as u64
    }

    /// Content: gcd of all coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_json(&self) -> SparsePolyJson {
        SparsePolyJson {
            variables: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (c.to_string(), e.clone())).collect(),
        }
    }

    pub fn from_json(j: &SparsePolyJson) -> Result<MPoly> {
        let vars: Vec<&str> = j.variables.iter().map(|s| s.as_str()).collect();
        let mut out = MPoly::zero(&vars);
        for (c, e) in &j.terms {
            if e.len() != vars.len() {
                return Err(Error::Invalid(format!("exponent vector {e:?} has wrong length")));
            }
            let c: BigInt = c.parse().map_err(|_| Error::Invalid(format!("bad coefficient {c}")))?;
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    /// Parses over the given variable list; unknown letters are errors.
    pub fn parse(s: &str, vars: &[&str]) -> Result<MPoly> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0, vars };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Invalid(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }

    /// Parses and takes the variables to be the letters occurring in `s`,
    /// in order of first appearance.
    pub fn parse_auto(s: &str) -> Result<MPoly> {
        let mut vars: Vec<String> = Vec::new();
        for ch in s.chars() {
            if ch.is_ascii_alphabetic() && !vars.iter().any(|v| v.starts_with(ch)) {
                vars.push(ch.to_string());
            }
        }
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        MPoly::parse(s, &refs)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() => out.push(Tok::Var(c.to_string())),
            _ => return Err(Error::Invalid(format!("unexpected character {c:?} in polynomial"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k = k.to_u32().ok_or_else(|| Error::Invalid("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Invalid("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(MPoly::constant(self.vars, n)),
            Some(Tok::Var(v)) => MPoly::var(self.vars, &v),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::RParen) {
                    return Err(Error::Invalid("unbalanced parentheses".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Invalid(format!("unexpected token {other:?}"))),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", a, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_expand() {
        let v = ["x", "y"];
        let a = MPoly::parse("(x+y)^2", &v).unwrap();
        let b = MPoly::parse("x^2 + 2xy + y^2", &v).unwrap();
        assert_eq!(a, b);
        let c = MPoly::parse("-3x^2y + 4*y - (x - y)(x + y)", &v).unwrap();
        assert_eq!(c.to_string(), "-3*x^2*y - x^2 + y^2 + 4*y");
    }

    #[test]
    fn compose_and_collect() {
        let v = ["x", "y"];
        let f = MPoly::parse("x^2 - y", &v).unwrap();
        let t = ["s", "t"];
        let subs = [MPoly::parse("s+t", &t).unwrap(), MPoly::parse("s^2", &t).unwrap()];
        let g = f.compose(&subs);
        assert_eq!(g, MPoly::parse("2st + t^2", &t).unwrap());
        let groups = g.collect(&[1]);
        assert_eq!(groups.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let f = MPoly::parse_auto("x^5 + 7xy^4 - 2").unwrap();
        assert_eq!(MPoly::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(f.eval_u64(&[1, 1], 11), 6);
    }
}
