//! Four-monomial (Delsarte) surfaces: covering Fermat degree, invariant
//! characters, Picard/Lefschetz numbers and the quintic census.

use crate::arith::{rem, units};
use crate::charspace::{self, orbits_of, Character4, Field};
use crate::error::{Error, Result};
use crate::smith::left_kernel_mod;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Exponent matrix of a four-monomial surface. Row `i` is the exponent
/// vector of monomial `i` over the coordinates `x, y, z, w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub d: i64,
    pub rows: [[i64; 4]; 4],
}

const VARS: [char; 4] = ['x', 'y', 'z', 'w'];

impl ExponentMatrix {
    pub fn new(rows: [[i64; 4]; 4]) -> Result<Self> {
        let d = rows[0].iter().sum::<i64>();
        if rows.iter().any(|r| r.iter().sum::<i64>() != d || r.iter().any(|&e| e < 0)) {
            return Err(Error::Degenerate(format!("rows {rows:?} are not homogeneous")));
        }
        if d <= 0 {
            return Err(Error::Degenerate("degree must be positive".into()));
        }
        for j in 0..4 {
            if rows.iter().all(|r| r[j] > 0) {
                return Err(Error::Degenerate(format!(
                    "common factor {} in every monomial",
                    VARS[j]
                )));
            }
        }
        let e = ExponentMatrix { d, rows };
        if e.det() == 0 {
            return Err(Error::Degenerate(format!("det = 0 for {rows:?}")));
        }
        Ok(e)
    }

    /// Parses a sum of four monomials such as `x5 + y5 + x z w3 + z4 w` or
    /// `x^3*y*w - x*y^4`. Coefficients and signs are ignored: the invariants
    /// only depend on the exponents.
    pub fn parse(s: &str) -> Result<Self> {
        let cleaned: String = s.replace('-', "+");
        let mut rows = Vec::new();
        for term in cleaned.split('+') {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            rows.push(parse_monomial(term)?);
        }
        if rows.len() != 4 {
            return Err(Error::Invalid(format!("expected 4 monomials, got {}", rows.len())));
        }
        Self::new([rows[0], rows[1], rows[2], rows[3]])
    }

    pub fn det(&self) -> i64 {
        det4(&self.rows)
    }

    fn as_vecs(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    /// Row-sorted, minimal over the 24 coordinate permutations.
    pub fn canonical(&self) -> ExponentMatrix {
        let mut best: Option<[[i64; 4]; 4]> = None;
        for perm in permutations4() {
            let mut rows = self.rows.map(|r| [r[perm[0]], r[perm[1]], r[perm[2]], r[perm[3]]]);
            rows.sort();
            if best.map_or(true, |b| rows < b) {
                best = Some(rows);
            }
        }
        ExponentMatrix { d: self.d, rows: best.unwrap() }
    }

    pub fn monomial_string(&self) -> String {
        self.rows.iter().map(|r| monomial_name(r)).collect::<Vec<_>>().join(" + ")
    }
}

fn monomial_name(r: &[i64; 4]) -> String {
    let mut s = String::new();
    for (j, &e) in r.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push(VARS[j]),
            _ => s.push_str(&format!("{}{}", VARS[j], e)),
        }
    }
    s
}

fn parse_monomial(t: &str) -> Result<[i64; 4]> {
    let mut exps = [0i64; 4];
    let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut i = 0;
    // optional leading coefficient
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    while i < chars.len() {
        let v = VARS
            .iter()
            .position(|&c| c == chars[i])
            .ok_or_else(|| Error::Invalid(format!("unexpected '{}' in monomial {t}", chars[i])))?;
        i += 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let e = if start == i {
            1
        } else {
            chars[start..i].iter().collect::<String>().parse::<i64>().unwrap()
        };
        exps[v] += e;
    }
    Ok(exps)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.iter().filter(|&&x| x == i).count() == 1) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn det4(a: &[[i64; 4]; 4]) -> i64 {
    fn det3(m: [[i64; 3]; 3]) -> i64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    let mut s = 0;
    for c in 0..4 {
        let mut minor = [[0i64; 3]; 3];
        for r in 1..4 {
            let mut k = 0;
            for j in 0..4 {
                if j != c {
                    minor[r - 1][k] = a[r][j];
                    k += 1;
                }
            }
        }
        let sign = if c % 2 == 0 { 1 } else { -1 };
        s += sign * a[0][c] * det3(minor);
    }
    s
}

/// Adjugate of a 4x4 matrix: `A · adj(A) = det(A) · I`.
fn adjugate4(a: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut adj = [[0i64; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut minor = [[0i64; 3]; 3];
            let mut mi = 0;
            for i in 0..4 {
                if i == r {
                    continue;
                }
                let mut mj = 0;
                for j in 0..4 {
                    if j == c {
                        continue;
                    }
                    minor[mi][mj] = a[i][j];
                    mj += 1;
                }
                mi += 1;
            }
            let d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
                - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
                + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            adj[c][r] = sign * d3;
        }
    }
    adj
}

/// Covering Fermat degree: the least `m` for which the rational map
/// `S_m → S` is monomial, i.e. `m·(row_j(A⁻¹) − row_0(A⁻¹))` is integral for all `j`.
/// It divides `|det A| / d`.
pub fn fermat_cover_degree(e: &ExponentMatrix) -> Result<i64> {
    let det = e.det();
    if det == 0 {
        return Err(Error::Degenerate("det = 0".into()));
    }
    let adj = adjugate4(&e.rows);
    let mut m = 1i64;
    for j in 1..4 {
        for i in 0..4 {
            let diff = adj[j][i] - adj[0][i];
            let den = det.abs() / crate::arith::gcd(diff, det).abs();
            m = num_integer::lcm(m, den);
        }
    }
    Ok(m)
}

/// The naive degree `|det A| / d`, always a multiple of [`fermat_cover_degree`].
pub fn determinant_degree(e: &ExponentMatrix) -> i64 {
    e.det().abs() / e.d
}

/// Characters `c` (monomial-indexed) with `c·A ≡ 0` and `Σ c ≡ 0 (mod m)`.
pub fn invariant_characters(e: &ExponentMatrix) -> Result<Vec<Character4>> {
    let m = fermat_cover_degree(e)?;
    if m == 1 {
        // rational surface: no primitive classes at all
        return Ok(Vec::new());
    }
    charspace::check_modulus(m)?;
    let mut out: Vec<Character4> = left_kernel_mod(&e.as_vecs(), m)
        .into_iter()
        .filter(|c| c.iter().all(|&x| x != 0) && rem(c.iter().sum::<i64>(), m) == 0)
        .map(|c| Character4 { m, b: [c[0], c[1], c[2], c[3]] })
        .collect();
    out.sort();
    Ok(out)
}

pub fn b2_for_degree(d: i64) -> i64 {
    charspace::fermat_b2(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelsarteInvariants {
    pub m: i64,
    pub b2: i64,
    pub pg: i64,
    pub lambda: i64,
    pub rho: i64,
    pub field: Field,
    /// `pg = 4` for a quintic: only rational double points.
    pub rdp_flag: bool,
}

fn invariants_from(e: &ExponentMatrix, chars: &[Character4], field: Field) -> Result<DelsarteInvariants> {
    let m = fermat_cover_degree(e)?;
    let lambda = charspace::count_lambda(chars, field)?;
    let pg = chars.iter().filter(|c| c.weight() == 0).count() as i64;
    let b2 = b2_for_degree(e.d);
    let geometric_genus = crate::arith::binomial(e.d as u64 - 1, 3) as i64;
    Ok(DelsarteInvariants {
        m,
        b2,
        pg,
        lambda,
        rho: b2 - lambda,
        field,
        rdp_flag: pg == geometric_genus,
    })
}

pub fn surface_invariants(e: &ExponentMatrix, field: Field) -> Result<DelsarteInvariants> {
    let m = fermat_cover_degree(e)?;
    if let Field::ModP(p) = field {
        if crate::arith::gcd(p, m) != 1 {
            return Err(Error::BadReduction { p, m });
        }
    }
    let chars = invariant_characters(e)?;
    invariants_from(e, &chars, field)
}

/// Picard number of the reduction for each residue class `r ∈ (Z/m)^×`.
pub fn picard_profile(e: &ExponentMatrix) -> Result<BTreeMap<i64, i64>> {
    let m = fermat_cover_degree(e)?;
    let chars = invariant_characters(e)?;
    profile_from(e, m, &chars)
}

fn profile_from(e: &ExponentMatrix, m: i64, chars: &[Character4]) -> Result<BTreeMap<i64, i64>> {
    let b2 = b2_for_degree(e.d);
    let orbits = orbits_of(chars);
    let mut out = BTreeMap::new();
    // (Z/1)^× is the single class of 1
    let classes = if m == 1 { vec![1] } else { units(m) };
    for r in classes {
        let mut lambda = 0;
        for o in &orbits {
            if !charspace::orbit_algebraic_modp(o, r)? {
                lambda += o.len() as i64;
            }
        }
        out.insert(r, b2 - lambda);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub matrix: ExponentMatrix,
    pub invariants: DelsarteInvariants,
    pub profile: BTreeMap<i64, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub attained: BTreeSet<i64>,
    /// Canonical matrices passing det/common-factor checks, before the `pg` gate.
    pub candidates: usize,
}

/// Exponent vectors of degree `d` in four variables, lexicographically descending.
pub fn monomials(d: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// All canonical four-monomial surfaces of degree `d` with nonzero determinant
/// and no common monomial factor.
pub fn canonical_fournomials(d: i64) -> Vec<ExponentMatrix> {
    let mons = monomials(d);
    let n = mons.len();
    let set: HashSet<ExponentMatrix> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mons = &mons;
            let mut local = Vec::new();
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        if let Ok(e) = ExponentMatrix::new([mons[i], mons[j], mons[k], mons[l]]) {
                            local.push(e.canonical());
                        }
                    }
                }
            }
            local
        })
        .collect();
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// Census of quintic Delsarte surfaces with only rational double points.
pub fn census_quintics() -> Result<Census> {
    let cands = canonical_fournomials(5);
    let candidates = cands.len();
    let records: Vec<CensusRecord> = cands
        .par_iter()
        .map(|e| -> Result<Option<CensusRecord>> {
            let chars = invariant_characters(e)?;
            let pg = chars.iter().filter(|c| c.weight() == 0).count();
            if pg != 4 {
                return Ok(None);
            }
            let invariants = invariants_from(e, &chars, Field::CharZero)?;
            let profile = profile_from(e, invariants.m, &chars)?;
            Ok(Some(CensusRecord { matrix: e.clone(), invariants, profile }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let attained = records.iter().map(|r| r.invariants.rho).collect();
    Ok(Census { records, attained, candidates })
}

/// The Picard numbers a quintic Delsarte surface with isolated RDPs can attain.
pub fn expected_census_set() -> BTreeSet<i64> {
    (1..=45).step_by(2).filter(|r| ![3, 7, 9, 11, 15].contains(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_degree() {
        let e = ExponentMatrix::parse("x5 + y5 + xzw3 + z4w").unwrap();
        assert_eq!(e.rows[2], [1, 0, 1, 3]);
        assert_eq!(fermat_cover_degree(&e).unwrap(), 55);
        let e = ExponentMatrix::parse("x^5 - x*y^4 - y*z^4 - z*w^4").unwrap();
        assert_eq!(fermat_cover_degree(&e).unwrap(), 64);
        assert_eq!(determinant_degree(&e), 64);
        let e = ExponentMatrix::parse("w5 + y5 + yx4 + yz4").unwrap();
        assert_eq!(fermat_cover_degree(&e).unwrap(), 20);
        assert_eq!(determinant_degree(&e), 80);
        let e = ExponentMatrix::parse("x5 + y5 + z5 + w5").unwrap();
        assert_eq!(fermat_cover_degree(&e).unwrap(), 5);
        assert!(ExponentMatrix::parse("x5 + x4y + x3y2 + x2y3").is_err());
        assert!(ExponentMatrix::parse("x5 + xy4 + xz4 + xw4").is_err());
    }

    #[test]
    fn m55_orbit() {
        let e = ExponentMatrix::parse("x5 + y5 + xzw3 + z4w").unwrap();
        let chars = invariant_characters(&e).unwrap();
        assert_eq!(chars.len(), 40);
        assert!(chars.contains(&Character4 { m: 55, b: [9, 11, 10, 25] }));
        assert_eq!(surface_invariants(&e, Field::CharZero).unwrap().rho, 13);
    }

    #[test]
    fn m64_closed_form() {
        let e = ExponentMatrix::parse("x5 + xy4 + yz4 + zw4").unwrap();
        let chars = invariant_characters(&e).unwrap();
        let expect: Vec<_> = (0..64)
            .filter(|c| c % 4 != 0)
            .map(|c| Character4 { m: 64, b: [c, -5 * c, 20 * c, -16 * c].map(|x| rem(x, 64)) })
            .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(chars, expect);
        assert_eq!(surface_invariants(&e, Field::CharZero).unwrap().rho, 5);
    }

    #[test]
    fn canonical_is_permutation_invariant() {
        let a = ExponentMatrix::parse("x5 + y5 + xzw3 + z4w").unwrap();
        let b = ExponentMatrix::parse("w5 + z5 + wyx3 + y4x").unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(5).len(), 56);
    }
}
