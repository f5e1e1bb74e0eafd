//! Named surfaces, recipes and fixtures accepted wherever a file is expected.

use std::path::Path;

use picard_core::delsarte::ExponentMatrix;
use picard_core::fixtures;
use picard_core::padlift::{LiftFixture, PencilFixture};
use picard_core::{Error, Result};
use serde::de::DeserializeOwned;

/// A four-monomial quintic with its cover degree and Picard number over `C`.
#[derive(Clone, Copy, Debug)]
pub struct NamedSurface {
    pub name: &'static str,
    pub monomials: &'static str,
    pub cover_degree: i64,
    pub rho: i64,
}

pub const SURFACES: &[NamedSurface] = &[
    NamedSurface { name: "quintic-rho13", monomials: "x5 + y5 + xzw3 + z4w", cover_degree: 55, rho: 13 },
    NamedSurface { name: "quintic-rho5", monomials: "x5 + xy4 + yz4 + zw4", cover_degree: 64, rho: 5 },
    NamedSurface { name: "quintic-rho17", monomials: "wx4 + wy4 + yz4 + zw4", cover_degree: 52, rho: 17 },
    NamedSurface { name: "quintic-rho19", monomials: "x3yw + xy4 + yz4 + zw4", cover_degree: 35, rho: 19 },
    NamedSurface { name: "quintic-rho21", monomials: "yzw3 + y4w + xyz3 + x5", cover_degree: 34, rho: 21 },
    NamedSurface { name: "quintic-rho23", monomials: "x3yw + y5 + z4w + zw4", cover_degree: 45, rho: 23 },
    NamedSurface { name: "quintic-rho25", monomials: "w5 + xz4 + xy3w + x5", cover_degree: 60, rho: 25 },
    NamedSurface { name: "quintic-rho29", monomials: "zw4 + z5 + y3zw + x3yw", cover_degree: 36, rho: 29 },
    NamedSurface { name: "quintic-rho33", monomials: "w5 + xy3z + xyz3 + x3zw", cover_degree: 22, rho: 33 },
    NamedSurface { name: "quintic-rho37", monomials: "yzw3 + xyz3 + xy3z + x4w", cover_degree: 20, rho: 37 },
    NamedSurface { name: "quintic-rho41", monomials: "zw4 + xy4 + xyz3 + x3yz", cover_degree: 24, rho: 41 },
    NamedSurface { name: "wild-quintic-quotient", monomials: "w5 + y5 + yx4 + yz4", cover_degree: 20, rho: 29 },
    NamedSurface { name: "quintic-rho45", monomials: "yzw3 + xyz3 + wxy3 + zwx3", cover_degree: 15, rho: 45 },
    NamedSurface { name: "fermat-quintic", monomials: "x5 + y5 + z5 + w5", cover_degree: 5, rho: 37 },
];

pub fn surface(name: &str) -> Option<&'static NamedSurface> {
    SURFACES.iter().find(|s| s.name == name)
}

/// A registered name or a monomial list such as `"x5 + y5 + xzw3 + z4w"`.
pub fn resolve_surface(arg: &str) -> Result<ExponentMatrix> {
    match surface(arg) {
        Some(s) => ExponentMatrix::parse(s.monomials),
        None => ExponentMatrix::parse(arg),
    }
}

/// Parses `"9,11,10"` (or with a fourth entry) into integers.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("not an integer tuple: {s}"))))
        .collect()
}

pub const CHARPOLY_RECIPES: &[&str] = &["wild-quintic", "second-wild-quintic", "double-sextic"];

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// A single object or an array of them.
fn read_one_or_many<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let v: serde_json::Value = read_json(path)?;
    let parse = |v: serde_json::Value| serde_json::from_value::<T>(v).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())));
    match v {
        serde_json::Value::Array(items) => items.into_iter().map(parse).collect(),
        other => Ok(vec![parse(other)?]),
    }
}

/// Loads JSON from `arg` when it names an existing file.
pub fn load<T: DeserializeOwned>(arg: &str) -> Option<Result<T>> {
    let p = Path::new(arg);
    p.is_file().then(|| read_json(p))
}

pub fn lift_fixtures(arg: &str) -> Result<Vec<LiftFixture>> {
    let p = Path::new(arg);
    if p.is_file() {
        return read_one_or_many(p);
    }
    if arg == "all" {
        return Ok(fixtures::lifting::all());
    }
    fixtures::lifting::by_name(arg).map(|f| vec![f]).ok_or_else(|| unknown("lifting fixture", arg, fixtures::lifting::all().iter().map(|f| f.name.clone())))
}

pub fn pencil_fixtures(arg: &str) -> Result<Vec<PencilFixture>> {
    let p = Path::new(arg);
    if p.is_file() {
        return read_one_or_many(p);
    }
    if arg == "all" {
        return Ok(fixtures::pencils::all());
    }
    fixtures::pencils::by_name(arg).map(|f| vec![f]).ok_or_else(|| unknown("pencil", arg, fixtures::pencils::all().iter().map(|f| f.name.clone())))
}

pub fn unknown(what: &str, arg: &str, known: impl Iterator<Item = String>) -> Error {
    let names: Vec<String> = known.collect();
    Error::Invalid(format!("unknown {what} '{arg}' (not a file; known: {})", names.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_core::charspace::Field;
    use picard_core::delsarte::{fermat_cover_degree, surface_invariants};

    #[test]
    fn registry_is_consistent() {
        for s in SURFACES {
            let e = resolve_surface(s.name).unwrap();
            let inv = surface_invariants(&e, Field::CharZero).unwrap();
            assert_eq!(inv.rho, s.rho, "{}", s.name);
            assert_eq!(fermat_cover_degree(&e).unwrap(), s.cover_degree, "{}", s.name);
        }
    }

    #[test]
    fn tuples() {
        assert_eq!(parse_tuple("9, 11,10").unwrap(), vec![9, 11, 10]);
        assert!(parse_tuple("9;11").is_err());
    }
}
