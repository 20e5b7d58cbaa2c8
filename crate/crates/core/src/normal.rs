//! Normal cones to polyhedra.

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Vector};
use crate::error::{Error, Result};
use crate::polyhedra::{dd_convert, dd_reverse, Constraint, GenSet, HPoly, SetRef};
use crate::report::RuleReport;

/// `cone(rays) + span(lines)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyCone {
    pub dim: usize,
    #[serde(default)]
    pub rays: Vec<Vector>,
    #[serde(default)]
    pub lines: Vec<Vector>,
}

impl PolyCone {
    pub fn zero(dim: usize) -> Self {
        PolyCone { dim, rays: vec![], lines: vec![] }
    }

    pub fn whole_space(dim: usize) -> Self {
        PolyCone { dim, rays: vec![], lines: (0..dim).map(|i| linalg::unit(dim, i)).collect() }
    }

    pub fn to_genset(&self) -> GenSet {
        GenSet::cone(self.dim, self.rays.clone(), self.lines.clone())
    }

    pub fn to_hpoly(&self) -> HPoly {
        dd_reverse(&self.to_genset())
    }

    /// Generators of a polyhedral cone given in constraint form. The input
    /// must contain the origin and be closed under positive scaling.
    pub fn from_hpoly(p: &HPoly) -> Result<Self> {
        if !p.contains(&linalg::zeros(p.dim))? {
            return Err(Error::InvalidInput("not a cone".into()));
        }
        let g = dd_convert(&p.homogeneous_part());
        Ok(PolyCone { dim: p.dim, rays: g.rays, lines: g.lines })
    }

    /// Generator-level sum: concatenates the lists.
    pub fn sum(&self, other: &PolyCone) -> Result<PolyCone> {
        linalg::check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.rays.extend(other.rays.iter().cloned());
        out.lines.extend(other.lines.iter().cloned());
        Ok(out)
    }

    /// Exact membership, by converting to constraint form.
    pub fn contains(&self, v: &[crate::Rational]) -> Result<bool> {
        self.to_hpoly().contains(v)
    }

    pub fn normalized(&self) -> PolyCone {
        let g = self.to_genset().normalized();
        PolyCone { dim: self.dim, rays: g.rays, lines: g.lines }
    }
}

impl<'a> From<&'a GenSet> for PolyCone {
    fn from(g: &'a GenSet) -> Self {
        PolyCone { dim: g.dim, rays: g.rays.clone(), lines: g.lines.clone() }
    }
}

/// Indices of the inequalities tight at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveSet {
    pub indices: Vec<usize>,
}

fn check_member(p: &HPoly, x: &[crate::Rational]) -> Result<()> {
    if p.contains(x)? {
        Ok(())
    } else if p.is_empty() {
        Err(Error::EmptySet)
    } else {
        Err(Error::NotInSet)
    }
}

pub fn active_set(p: &HPoly, x: &[crate::Rational]) -> Result<ActiveSet> {
    check_member(p, x)?;
    let indices = p
        .ineqs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.eval(x) == c.b)
        .map(|(i, _)| i)
        .collect();
    Ok(ActiveSet { indices })
}

/// Active inequality normals as rays, equality normals as lines.
pub fn normal_cone(p: &HPoly, x: &[crate::Rational]) -> Result<PolyCone> {
    let act = active_set(p, x)?;
    let rays = act.indices.iter().map(|&i| p.ineqs[i].a.clone()).collect();
    let lines = p.eqs.iter().map(|c| c.a.clone()).collect();
    Ok(PolyCone { dim: p.dim, rays, lines }.pruned())
}

impl PolyCone {
    fn pruned(mut self) -> PolyCone {
        self.rays.retain(|r| !linalg::is_zero(r));
        self.lines.retain(|r| !linalg::is_zero(r));
        self
    }
}

/// The normal cone from its definition: the polar of the generators of
/// `P - x`, enumerated by double description.
pub fn normal_cone_oracle(p: &HPoly, x: &[crate::Rational]) -> Result<PolyCone> {
    check_member(p, x)?;
    let g = dd_convert(p);
    let zero = crate::Rational::zero();
    let ineqs = g
        .points
        .iter()
        .map(|q| Constraint::new(linalg::sub(q, x), zero.clone()))
        .chain(g.rays.iter().map(|r| Constraint::new(r.clone(), zero.clone())))
        .collect();
    let eqs = g.lines.iter().map(|l| Constraint::new(l.clone(), zero.clone())).collect();
    let polar = HPoly::new(p.dim, ineqs, eqs)?;
    let cone = dd_convert(&polar);
    Ok(PolyCone { dim: p.dim, rays: cone.rays, lines: cone.lines })
}

/// `N(x; P n Q) = N(x; P) + N(x; Q)`.
pub fn check_intersection_rule(p: &HPoly, q: &HPoly, x: &[crate::Rational]) -> Result<RuleReport> {
    let both = p.intersect(q)?;
    let lhs = normal_cone(&both, x)?.to_genset();
    let rhs = normal_cone(p, x)?.sum(&normal_cone(q, x)?)?.to_genset();
    RuleReport::compare("intersection", SetRef::V(&lhs), SetRef::V(&rhs))
}
