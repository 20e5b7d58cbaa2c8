//! Verdicts of the rule verifiers.

use serde::{Deserialize, Serialize};

use crate::arith::linalg::Vector;
use crate::error::Result;
use crate::polyhedra::{dd_convert, set_equal, GenSet, SetRef};

/// An additional equality checked alongside the main one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraCheck {
    pub name: String,
    pub equal: bool,
    pub counterexample: Option<Vector>,
}

/// Outcome of checking `lhs = rhs` for one instance of a calculus rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleReport {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub equal: bool,
    pub lhs_in_rhs: bool,
    pub rhs_in_lhs: bool,
    pub lhs: GenSet,
    pub rhs: GenSet,
    /// A point in one side but not the other.
    pub counterexample: Option<Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

fn generators(s: SetRef<'_>) -> GenSet {
    match s {
        SetRef::H(p) => dd_convert(p).normalized(),
        SetRef::V(g) => g.normalized(),
    }
}

impl RuleReport {
    pub fn compare<'a, 'b>(rule: &str, lhs: impl Into<SetRef<'a>>, rhs: impl Into<SetRef<'b>>) -> Result<Self> {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let cmp = set_equal(lhs, rhs)?;
        Ok(RuleReport {
            rule: rule.to_string(),
            instance: None,
            equal: cmp.equal,
            lhs_in_rhs: cmp.first_in_second,
            rhs_in_lhs: cmp.second_in_first,
            lhs: generators(lhs),
            rhs: generators(rhs),
            counterexample: cmp.counterexample.map(|c| c.point),
            extra: vec![],
            notes: vec![],
            timing_us: None,
        })
    }

    /// Records a further equality; the report passes only if all hold.
    pub fn add_check<'a, 'b>(&mut self, name: &str, a: impl Into<SetRef<'a>>, b: impl Into<SetRef<'b>>) -> Result<()> {
        let cmp = set_equal(a, b)?;
        self.extra.push(ExtraCheck {
            name: name.to_string(),
            equal: cmp.equal,
            counterexample: cmp.counterexample.map(|c| c.point),
        });
        Ok(())
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.equal && self.extra.iter().all(|e| e.equal)
    }

    pub fn with_digest<T: Serialize>(mut self, instance: &T) -> Self {
        self.instance = Some(digest(instance));
        self
    }
}

/// FNV-1a hash of the canonical JSON encoding, as 16 hex digits.
pub fn digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable instance");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::HPoly;

    #[test]
    fn report_fields() {
        let a = HPoly::unit_box(1);
        let b = HPoly::from_i64(1, &[(&[-1], 0), (&[1], 2)], &[]);
        let r = RuleReport::compare("demo", &a, &b).unwrap();
        assert!(!r.equal && r.lhs_in_rhs && !r.rhs_in_lhs);
        assert_eq!(r.counterexample, Some(vec![crate::Rational::from_integer(2)]));
        let ok = RuleReport::compare("demo", &a, &a).unwrap();
        assert!(ok.passed());
        let js = serde_json::to_value(&ok).unwrap();
        for key in ["rule", "equal", "lhs", "rhs", "counterexample"] {
            assert!(js.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&HPoly::unit_box(2)), digest(&HPoly::unit_box(2)));
        assert_ne!(digest(&HPoly::unit_box(2)), digest(&HPoly::unit_box(3)));
    }
}
