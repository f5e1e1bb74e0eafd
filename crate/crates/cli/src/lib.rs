//! Command-line front end for `picard-core`: one subcommand per computation
//! and a reproduction harness of named checks.

pub mod commands;
pub mod output;
pub mod registry;
pub mod repro;

use picard_core::Error;

pub const WORKERS_ENV: &str = "PICARD_WORKERS";
pub const BUDGET_ENV: &str = "PICARD_BUDGET";

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Resource = 3,
}

impl Exit {
    pub fn of_error(e: &Error) -> Exit {
        match e {
            Error::Resource(_) | Error::DomainTooLarge(_) => Exit::Resource,
            Error::Inconsistent(_) => Exit::Mismatch,
            _ => Exit::Usage,
        }
    }
}

/// Seconds from strings such as `90`, `90s`, `5m` or `1h`.
pub fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let (num, unit) = match s.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        Some((i, _)) => s.split_at(i),
        None => (s, "s"),
    };
    let n: u64 = num.parse().map_err(|_| format!("bad budget '{s}'"))?;
    match unit {
        "s" => Ok(n),
        "m" => Ok(n * 60),
        "h" => Ok(n * 3600),
        _ => Err(format!("bad budget unit in '{s}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("60s"), Ok(60));
        assert_eq!(parse_budget("45"), Ok(45));
        assert_eq!(parse_budget("2m"), Ok(120));
        assert!(parse_budget("fast").is_err());
        assert!(parse_budget("3d").is_err());
    }
}
