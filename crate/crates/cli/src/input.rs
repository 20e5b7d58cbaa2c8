//! Reading instances and points, with errors mapped onto exit codes.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;

use polycalc_core::arith::linalg::Vector;
use polycalc_core::{Error, Rational};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input, with its location.
    Parse(String),
    /// A module precondition failed.
    Precondition(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(e) => write!(f, "{}: {e}", e.name()),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Precondition(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses JSON text; `source` names the input in error messages.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("{source}:{}:{}: {}", e.line(), e.column(), e))
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

/// A comma-separated list of rationals such as `1,-2,3/4`. The empty
/// string is the point of the zero-dimensional space.
pub fn parse_point(s: &str) -> CliResult<Vector> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .enumerate()
        .map(|(i, part)| {
            part.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Parse(format!("point entry {}: cannot read {:?} as a rational", i + 1, part.trim())))
        })
        .collect()
}

pub fn parse_scalar(s: &str) -> CliResult<Rational> {
    s.trim().parse::<Rational>().map_err(|_| CliError::Parse(format!("cannot read {s:?} as a rational")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use polycalc_core::polyhedra::HPoly;

    #[test]
    fn points() {
        let p = parse_point(" 1, -2 ,3/4").unwrap();
        assert_eq!(p, vec![Rational::from_integer(1), Rational::from_integer(-2), Rational::new(3, 4)]);
        assert!(parse_point("").unwrap().is_empty());
        let err = parse_point("1,x").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("entry 2"));
    }

    #[test]
    fn json_errors_carry_a_location() {
        let err = parse_json::<HPoly>("{\n  \"dim\": 2,\n  \"ineqs\": [oops]\n}", "p.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("parse error: p.json:3:"), "{msg}");
        let err = parse_json::<HPoly>(r#"{"dim": 2, "ineqs": [{"a": ["1"], "b": "0"}]}"#, "q.json").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn precondition_names() {
        let e = CliError::from(Error::NotInSet);
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().starts_with("NotInSet"));
    }
}
