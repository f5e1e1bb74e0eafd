//! Intersection lattices of curve configurations on surfaces.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Line,
    Conic,
    Exceptional,
    Other,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Curve {
    pub label: String,
    pub kind: CurveKind,
    /// Overrides the default self-intersection for the curve kind.
    #[serde(default)]
    pub self_intersection: Option<i64>,
}

/// A chain of exceptional `(-2)`-curves resolving an `A_n` point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chain {
    pub prefix: String,
    pub length: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CurveConfig {
    #[serde(default)]
    pub curves: Vec<Curve>,
    #[serde(default)]
    pub chains: Vec<Chain>,
    /// Explicit intersection numbers `(a, b, a·b)`.
    #[serde(default)]
    pub intersections: Vec<(String, String, i64)>,
    /// When set, unspecified pairs meet with this multiplicity instead of
    /// being reported as missing.
    #[serde(default)]
    pub default_intersection: Option<i64>,
}

impl CurveConfig {
    /// `k` lines through a common point of a quintic (pairwise meeting once).
    pub fn concurrent_lines(k: usize) -> Self {
        CurveConfig {
            curves: (0..k)
                .map(|i| Curve { label: format!("l{i}"), kind: CurveKind::Line, self_intersection: None })
                .collect(),
            default_intersection: Some(1),
            ..Default::default()
        }
    }

    pub fn a_chain(n: usize) -> Self {
        CurveConfig {
            chains: vec![Chain { prefix: "e".into(), length: n }],
            default_intersection: Some(0),
            ..Default::default()
        }
    }
}

fn default_self(kind: &CurveKind) -> Option<i64> {
    match kind {
        CurveKind::Line => Some(-3),
        CurveKind::Conic => Some(-4),
        CurveKind::Exceptional => Some(-2),
        CurveKind::Other => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

pub fn gram_from_config(c: &CurveConfig) -> Result<GramMatrix> {
    let mut labels = Vec::new();
    let mut diag = Vec::new();
    for cv in &c.curves {
        let s = cv
            .self_intersection
            .or_else(|| default_self(&cv.kind))
            .ok_or_else(|| Error::Invalid(format!("no self-intersection for {}", cv.label)))?;
        labels.push(cv.label.clone());
        diag.push(s);
    }
    let mut pairs: HashMap<(usize, usize), i64> = HashMap::new();
    for ch in &c.chains {
        let start = labels.len();
        for i in 0..ch.length {
            labels.push(format!("{}{}", ch.prefix, i + 1));
            diag.push(-2);
            if i > 0 {
                pairs.insert((start + i - 1, start + i), 1);
            }
        }
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if index.len() != labels.len() {
        return Err(Error::Invalid("duplicate curve label".into()));
    }
    for (a, b, v) in &c.intersections {
        let ia = *index.get(a.as_str()).ok_or_else(|| Error::Invalid(format!("unknown curve {a}")))?;
        let ib = *index.get(b.as_str()).ok_or_else(|| Error::Invalid(format!("unknown curve {b}")))?;
        if ia == ib {
            diag[ia] = *v;
        } else {
            pairs.insert((ia.min(ib), ia.max(ib)), *v);
        }
    }
    let n = labels.len();
    let mut entries = vec![vec![0i64; n]; n];
    let mut missing = Vec::new();
    for i in 0..n {
        entries[i][i] = diag[i];
        for j in i + 1..n {
            let v = match pairs.get(&(i, j)) {
                Some(v) => *v,
                None => match c.default_intersection {
                    Some(d) => d,
                    None => {
                        missing.push(format!("{}·{}", labels[i], labels[j]));
                        0
                    }
                },
            };
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    if !missing.is_empty() {
        return Err(Error::Invalid(format!("missing intersections: {}", missing.join(", "))));
    }
    Ok(GramMatrix { labels, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub rank: usize,
    /// Determinant of the full matrix (zero when degenerate).
    pub det: String,
    /// `(positive, negative)` eigenvalue counts.
    pub signature: (usize, usize),
}

/// Fraction-free (Bareiss) determinant.
pub fn det(entries: &[Vec<i64>]) -> BigInt {
    let n = entries.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank and signature by symmetric Gaussian elimination over `Q` (LDLᵀ with pivoting).
fn rank_signature(entries: &[Vec<i64>]) -> (usize, usize, usize) {
    use num_rational::BigRational;
    let n = entries.len();
    let mut a: Vec<Vec<BigRational>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // diagonal pivot if available
        if let Some(pi) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pi);
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &active {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = &a[i][j] - &f * &a[p][j];
                    a[i][j] = v;
                }
            }
            continue;
        }
        // all diagonal entries zero: use an off-diagonal pair (hyperbolic plane)
        let found = active.iter().enumerate().find_map(|(ii, &i)| {
            active[ii + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        match found {
            Some((i, j)) => {
                // replace e_i by e_i + e_j, whose square is 2 a_ij != 0
                for k in 0..n {
                    let v = &a[i][k] + &a[j][k];
                    a[i][k] = v;
                }
                for k in 0..n {
                    let v = &a[k][i] + &a[k][j];
                    a[k][i] = v;
                }
            }
            None => break,
        }
    }
    (pos + neg, pos, neg)
}

pub fn rank_det_signature(g: &GramMatrix) -> LatticeSummary {
    let (rank, pos, neg) = rank_signature(&g.entries);
    LatticeSummary { rank, det: det(&g.entries).to_string(), signature: (pos, neg) }
}

/// `2 + Σ (m_λ - 1)` for fibre component counts `m_λ`.
pub fn shioda_tate_bound(components: &[u64]) -> Result<u64> {
    if components.iter().any(|&m| m == 0) {
        return Err(Error::Invalid("fibre with zero components".into()));
    }
    Ok(2 + components.iter().map(|m| m - 1).sum::<u64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_lines() {
        let g = gram_from_config(&CurveConfig::concurrent_lines(5)).unwrap();
        let s = rank_det_signature(&g);
        assert_eq!(s.rank, 5);
        assert_eq!(s.det, "256");
        assert_eq!(s.signature, (1, 4));
    }

    #[test]
    fn chains_and_pairs() {
        for n in 1..=20 {
            let g = gram_from_config(&CurveConfig::a_chain(n)).unwrap();
            let d = det(&g.entries);
            let expect = BigInt::from(n as i64 + 1) * if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(d, expect);
        }
        let h = GramMatrix { labels: vec!["a".into(), "b".into()], entries: vec![vec![0, 1], vec![1, 0]] };
        let s = rank_det_signature(&h);
        assert_eq!((s.rank, s.det.as_str(), s.signature), (2, "-1", (1, 1)));
    }

    #[test]
    fn missing_pair_is_reported() {
        let mut c = CurveConfig::concurrent_lines(3);
        c.default_intersection = None;
        let err = gram_from_config(&c).unwrap_err();
        assert!(err.to_string().contains("l0·l1"));
    }

    #[test]
    fn fibration_bound() {
        assert_eq!(shioda_tate_bound(&[2; 19]).unwrap(), 21);
        assert_eq!(shioda_tate_bound(&[1, 1, 1]).unwrap(), 2);
        assert_eq!(shioda_tate_bound(&[12]).unwrap(), 13);
    }
}
