//! Linear automorphisms of `P^{n-1}` defined over `F_p`.

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A matrix `G` over `F_p` acting on column vectors of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    pub p: u64,
    pub matrix: Vec<Vec<i64>>,
}

impl Automorphism {
    pub fn identity(n: usize, p: u64) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Automorphism { p, matrix }
    }

    /// Builds `G` from substitution rules such as `y -> y + x`; unlisted
    /// coordinates are fixed.
    pub fn from_rules(vars: &[&str], p: u64, rules: &[(&str, &str)]) -> Result<Self> {
        let mut g = Self::identity(vars.len(), p);
        for (target, expr) in rules {
            let i = vars
                .iter()
                .position(|v| v == target)
                .ok_or_else(|| Error::Invalid(format!("unknown coordinate {target}")))?;
            let form = MPoly::parse(expr, vars)?;
            if form.total_degree() != Some(1) || !form.is_homogeneous() {
                return Err(Error::Invalid(format!("rule {target} -> {expr} is not a linear form")));
            }
            let mut row = vec![0i64; vars.len()];
            for (e, c) in &form.terms {
                let j = e.iter().position(|&k| k == 1).unwrap();
                row[j] = c.mod_floor(&(p as i64).into()).to_i64().unwrap();
            }
            g.matrix[i] = row;
        }
        g.normalize();
        Ok(g)
    }

    fn normalize(&mut self) {
        let p = self.p as i64;
        for row in &mut self.matrix {
            for c in row.iter_mut() {
                *c = c.rem_euclid(p);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let n = self.dim();
        let p = self.p as i64;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum::<i64>().rem_euclid(p)).collect())
            .collect();
        Automorphism { p: self.p, matrix }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::identity(self.dim(), self.p);
        for _ in 0..e {
            r = r.compose(self);
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim(), self.p)
    }

    /// Multiplicative order as a matrix (not merely projectively).
    pub fn order(&self) -> u64 {
        let mut r = self.clone();
        for n in 1..=10_000 {
            if r.is_identity() {
                return n;
            }
            r = r.compose(self);
        }
        panic!("automorphism of order above 10000");
    }

    pub fn inverse(&self) -> Self {
        self.pow(self.order() - 1)
    }

    /// Submatrix on the given coordinates; they must span an invariant subspace
    /// modulo the others (true for the strata used here).
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let matrix = idx.iter().map(|&i| idx.iter().map(|&j| self.matrix[i][j]).collect()).collect();
        Automorphism { p: self.p, matrix }
    }

    /// Whether `f ∘ G = c·f` for a nonzero constant, checked modulo `p`.
    pub fn preserves(&self, f: &MPoly) -> bool {
        let vars = f.var_refs();
        let subs: Vec<MPoly> = self
            .matrix
            .iter()
            .map(|row| {
                let mut s = MPoly::zero(&vars);
                for (j, &c) in row.iter().enumerate() {
                    let mut e = vec![0; vars.len()];
                    e[j] = 1;
                    s.add_term(e, c.into());
                }
                s
            })
            .collect();
        let g = f.compose(&subs);
        let pb = num_bigint::BigInt::from(self.p);
        let fr = f.reduce_mod(&pb);
        let gr = g.reduce_mod(&pb);
        (1..self.p).any(|c| fr.scale(&c.into()).reduce_mod(&pb) == gr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_has_order_p() {
        let v = ["x", "y", "z", "w"];
        let phi = Automorphism::from_rules(&v, 5, &[("y", "y + x")]).unwrap();
        assert_eq!(phi.order(), 5);
        let iota = Automorphism::from_rules(&v, 5, &[("z", "w"), ("w", "z")]).unwrap();
        assert_eq!(iota.order(), 2);
        assert_eq!(phi.compose(&iota), iota.compose(&phi));
        assert!(phi.compose(&phi.inverse()).is_identity());
        let f = MPoly::parse("y^5 - x^4y - zw(x^3 + (x-z-w)(z^2+zw+w^2))", &v).unwrap();
        assert!(phi.preserves(&f));
        assert!(iota.preserves(&f));
    }
}
