use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Vector};
use crate::error::Result;

use super::{dd_convert, dd_reverse, GenSet, HPoly};

/// Either representation of a polyhedron.
#[derive(Debug, Clone, Copy)]
pub enum SetRef<'a> {
    H(&'a HPoly),
    V(&'a GenSet),
}

impl<'a> From<&'a HPoly> for SetRef<'a> {
    fn from(p: &'a HPoly) -> Self {
        SetRef::H(p)
    }
}

impl<'a> From<&'a GenSet> for SetRef<'a> {
    fn from(g: &'a GenSet) -> Self {
        SetRef::V(g)
    }
}

impl SetRef<'_> {
    pub fn dim(&self) -> usize {
        match self {
            SetRef::H(p) => p.dim,
            SetRef::V(g) => g.dim,
        }
    }

    fn to_h(self) -> HPoly {
        match self {
            SetRef::H(p) => p.clone(),
            SetRef::V(g) => dd_reverse(g),
        }
    }

    fn to_v(self) -> GenSet {
        match self {
            SetRef::H(p) => dd_convert(p),
            SetRef::V(g) => g.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vector", rename_all = "lowercase")]
pub enum Generator {
    Point(Vector),
    Ray(Vector),
    Line(Vector),
}

/// A generator of one set that the other set misses, with a concrete point
/// of the first set outside the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub generator: Generator,
    pub point: Vector,
    /// `true` when `point` lies in the first argument but not the second.
    pub in_first: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub equal: bool,
    pub first_in_second: bool,
    pub second_in_first: bool,
    pub counterexample: Option<Counterexample>,
}

/// Moves from a base point of `h` along `d` until some constraint of `h`
/// fails. `d` must not be a recession direction of `h`.
fn escape(h: &HPoly, base: &[crate::arith::Rational], d: &[crate::arith::Rational]) -> Vector {
    for c in &h.ineqs {
        let ad = c.eval(d);
        if ad.is_positive() {
            let t = c.slack(base) / &ad + crate::arith::Rational::one();
            return linalg::axpy(base, &t, d);
        }
    }
    linalg::add(base, d)
}

/// `None` when every generator of `g` is accounted for by `h`; otherwise the
/// first failing generator and a point of `g` outside `h`.
pub fn generators_outside(g: &GenSet, h: &HPoly) -> Option<(Generator, Vector)> {
    for p in &g.points {
        if !h.contains_unchecked(p) {
            return Some((Generator::Point(p.clone()), p.clone()));
        }
    }
    let base = g.points.first()?;
    for r in &g.rays {
        if !h.is_recession_direction(r) {
            return Some((Generator::Ray(r.clone()), escape(h, base, r)));
        }
    }
    for l in &g.lines {
        if !h.is_lineality_direction(l) {
            let d = if h.is_recession_direction(l) { linalg::neg(l) } else { l.clone() };
            return Some((Generator::Line(l.clone()), escape(h, base, &d)));
        }
    }
    None
}

/// Exact test of `a` being a subset of `b`.
pub fn is_subset<'a, 'b>(a: impl Into<SetRef<'a>>, b: impl Into<SetRef<'b>>) -> Result<bool> {
    let (a, b) = (a.into(), b.into());
    linalg::check_dim(a.dim(), b.dim())?;
    Ok(generators_outside(&a.to_v(), &b.to_h()).is_none())
}

/// Exact set equality by mutual inclusion.
pub fn set_equal<'a, 'b>(a: impl Into<SetRef<'a>>, b: impl Into<SetRef<'b>>) -> Result<Comparison> {
    let (a, b) = (a.into(), b.into());
    linalg::check_dim(a.dim(), b.dim())?;
    let fwd = generators_outside(&a.to_v(), &b.to_h());
    let bwd = generators_outside(&b.to_v(), &a.to_h());
    let counterexample = match (&fwd, &bwd) {
        (Some((g, p)), _) => Some(Counterexample { generator: g.clone(), point: p.clone(), in_first: true }),
        (None, Some((g, p))) => Some(Counterexample { generator: g.clone(), point: p.clone(), in_first: false }),
        _ => None,
    };
    Ok(Comparison {
        equal: fwd.is_none() && bwd.is_none(),
        first_in_second: fwd.is_none(),
        second_in_first: bwd.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::linalg::ivec;
    use crate::error::Error;

    #[test]
    fn interval_equal_to_h_form() {
        let g = GenSet::new(1, vec![ivec(&[0]), ivec(&[1])], vec![], vec![]).unwrap();
        let h = HPoly::from_i64(1, &[(&[-1], 0), (&[1], 1)], &[]);
        assert!(set_equal(&g, &h).unwrap().equal);
    }

    #[test]
    fn strict_subset_counterexample() {
        let a = HPoly::unit_box(1);
        let b = HPoly::from_i64(1, &[(&[-1], 0), (&[1], 2)], &[]);
        let c = set_equal(&a, &b).unwrap();
        assert!(!c.equal && c.first_in_second && !c.second_in_first);
        let cx = c.counterexample.unwrap();
        assert_eq!(cx.point, ivec(&[2]));
        assert!(!cx.in_first);
        assert!(b.contains(&cx.point).unwrap() && !a.contains(&cx.point).unwrap());
    }

    #[test]
    fn cone_vs_quadrant() {
        let g = GenSet::cone(2, vec![ivec(&[1, 0]), ivec(&[0, 1])], vec![]);
        let h = HPoly::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)], &[]);
        assert!(set_equal(&g, &h).unwrap().equal);
    }

    #[test]
    fn ray_counterexample_is_a_concrete_point() {
        let half = HPoly::from_i64(1, &[(&[-1], 0)], &[]);
        let seg = HPoly::unit_box(1);
        let c = set_equal(&half, &seg).unwrap();
        let cx = c.counterexample.unwrap();
        assert!(cx.in_first);
        assert!(half.contains(&cx.point).unwrap() && !seg.contains(&cx.point).unwrap());
        let line = HPoly::whole_space(1);
        let c = set_equal(&line, &half).unwrap();
        let cx = c.counterexample.unwrap();
        assert!(!half.contains(&cx.point).unwrap());
    }

    #[test]
    fn empty_sets() {
        assert!(set_equal(&HPoly::empty(2), &GenSet::empty(2)).unwrap().equal);
        assert!(!set_equal(&HPoly::empty(2), &HPoly::unit_box(2)).unwrap().equal);
        assert!(matches!(
            set_equal(&HPoly::empty(2), &HPoly::empty(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
