use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Vector};
use crate::arith::lp;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A single linear constraint `a.x <= b` or `a.x = b`, depending on the list
/// it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    pub a: Vector,
    pub b: Rational,
}

impl Constraint {
    pub fn new(a: Vector, b: Rational) -> Self {
        Constraint { a, b }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.a, x)
    }

    /// `b - a.x`, nonnegative when the inequality holds.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.b - self.eval(x)
    }

    pub fn is_trivial(&self) -> bool {
        linalg::is_zero(&self.a)
    }

    /// Scales by a positive factor so that `a` is a primitive integer vector.
    pub fn normalized(&self) -> Constraint {
        match self.a.iter().position(|x| !x.is_zero()) {
            Some(k) => {
                let a = linalg::primitive(&self.a);
                let b = &self.b * &(&a[k] / &self.a[k]);
                Constraint::new(a, b)
            }
            None => self.clone(),
        }
    }

    /// Like [`Constraint::normalized`] with a positive leading coefficient;
    /// used for equalities, whose orientation is irrelevant.
    pub fn normalized_eq(&self) -> Constraint {
        let c = self.normalized();
        match c.a.iter().find(|x| !x.is_zero()) {
            Some(lead) if lead.is_negative() => Constraint::new(linalg::neg(&c.a), -&c.b),
            _ => c,
        }
    }
}

/// A polyhedron `{x : <a_i, x> <= b_i for each inequality, <c_k, x> = d_k
/// for each equality}`. The equality block models a (closed) affine
/// subspace, so the same type represents both plain and generalized
/// polyhedral sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHPoly")]
pub struct HPoly {
    pub dim: usize,
    #[serde(default)]
    pub ineqs: Vec<Constraint>,
    #[serde(default)]
    pub eqs: Vec<Constraint>,
}

#[derive(Deserialize)]
struct RawHPoly {
    dim: usize,
    #[serde(default)]
    ineqs: Vec<Constraint>,
    #[serde(default)]
    eqs: Vec<Constraint>,
}

impl TryFrom<RawHPoly> for HPoly {
    type Error = Error;
    fn try_from(r: RawHPoly) -> Result<Self> {
        HPoly::new(r.dim, r.ineqs, r.eqs)
    }
}

impl HPoly {
    pub fn new(dim: usize, ineqs: Vec<Constraint>, eqs: Vec<Constraint>) -> Result<Self> {
        for c in ineqs.iter().chain(&eqs) {
            linalg::check_dim(dim, c.a.len())?;
        }
        Ok(HPoly { dim, ineqs, eqs })
    }

    pub fn whole_space(dim: usize) -> Self {
        HPoly { dim, ineqs: vec![], eqs: vec![] }
    }

    /// The canonical empty polyhedron `{x : 0.x <= -1}`.
    pub fn empty(dim: usize) -> Self {
        HPoly {
            dim,
            ineqs: vec![Constraint::new(linalg::zeros(dim), -Rational::one())],
            eqs: vec![],
        }
    }

    /// `{x}`
    pub fn point(x: &[Rational]) -> Self {
        let dim = x.len();
        let eqs = (0..dim).map(|i| Constraint::new(linalg::unit(dim, i), x[i].clone())).collect();
        HPoly { dim, ineqs: vec![], eqs }
    }

    /// `[0,1]^dim`, listing `-x_i <= 0` before `x_i <= 1` for each axis.
    pub fn unit_box(dim: usize) -> Self {
        let z = vec![Rational::zero(); dim];
        let o = vec![Rational::one(); dim];
        Self::box_bounds(&z, &o)
    }

    pub fn box_bounds(lo: &[Rational], hi: &[Rational]) -> Self {
        let dim = lo.len();
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            ineqs.push(Constraint::new(linalg::neg(&linalg::unit(dim, i)), -&lo[i]));
        }
        for i in 0..dim {
            ineqs.push(Constraint::new(linalg::unit(dim, i), hi[i].clone()));
        }
        HPoly { dim, ineqs, eqs: vec![] }
    }

    /// Compact constructor from integer data: each entry is `(a, b)`.
    pub fn from_i64(dim: usize, ineqs: &[(&[i64], i64)], eqs: &[(&[i64], i64)]) -> Self {
        let conv = |cs: &[(&[i64], i64)]| {
            cs.iter()
                .map(|(a, b)| {
                    assert_eq!(a.len(), dim);
                    Constraint::new(linalg::ivec(a), Rational::from_integer(*b))
                })
                .collect()
        };
        HPoly { dim, ineqs: conv(ineqs), eqs: conv(eqs) }
    }

    pub fn num_constraints(&self) -> usize {
        self.ineqs.len() + self.eqs.len()
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        linalg::check_dim(self.dim, x.len())?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &[Rational]) -> bool {
        self.ineqs.iter().all(|c| c.eval(x) <= c.b) && self.eqs.iter().all(|c| c.eval(x) == c.b)
    }

    /// `A d <= 0` and `C d = 0`.
    pub fn is_recession_direction(&self, d: &[Rational]) -> bool {
        self.ineqs.iter().all(|c| !c.eval(d).is_positive())
            && self.eqs.iter().all(|c| c.eval(d).is_zero())
    }

    /// `A d = 0` and `C d = 0`.
    pub fn is_lineality_direction(&self, d: &[Rational]) -> bool {
        self.ineqs.iter().chain(&self.eqs).all(|c| c.eval(d).is_zero())
    }

    pub fn is_empty(&self) -> bool {
        lp::feasible_point(self).is_none()
    }

    /// Some point of the polyhedron, or `None` when it is empty.
    pub fn witness(&self) -> Option<Vector> {
        lp::feasible_point(self)
    }

    pub fn intersect(&self, other: &HPoly) -> Result<HPoly> {
        linalg::check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.ineqs.extend(other.ineqs.iter().cloned());
        out.eqs.extend(other.eqs.iter().cloned());
        Ok(out)
    }

    /// Replaces every equality by the pair of opposite inequalities.
    pub fn equalities_as_inequalities(&self) -> HPoly {
        let mut ineqs = self.ineqs.clone();
        for e in &self.eqs {
            ineqs.push(e.clone());
            ineqs.push(Constraint::new(linalg::neg(&e.a), -&e.b));
        }
        HPoly { dim: self.dim, ineqs, eqs: vec![] }
    }

    /// Embeds into a larger space: coordinate `i` of `self` becomes
    /// coordinate `positions[i]` of the result.
    pub fn lift(&self, new_dim: usize, positions: &[usize]) -> HPoly {
        debug_assert_eq!(positions.len(), self.dim);
        let map = |c: &Constraint| {
            let mut a = linalg::zeros(new_dim);
            for (i, &p) in positions.iter().enumerate() {
                a[p] = c.a[i].clone();
            }
            Constraint::new(a, c.b.clone())
        };
        HPoly {
            dim: new_dim,
            ineqs: self.ineqs.iter().map(map).collect(),
            eqs: self.eqs.iter().map(map).collect(),
        }
    }

    /// Fixes coordinates: `values[i] = Some(v)` substitutes `x_i = v`; the
    /// remaining coordinates keep their relative order.
    pub fn fix_coordinates(&self, values: &[Option<Rational>]) -> HPoly {
        debug_assert_eq!(values.len(), self.dim);
        let keep: Vec<usize> = (0..self.dim).filter(|&i| values[i].is_none()).collect();
        let map = |c: &Constraint| {
            let mut b = c.b.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if !c.a[i].is_zero() {
                        b -= &c.a[i] * v;
                    }
                }
            }
            Constraint::new(keep.iter().map(|&i| c.a[i].clone()).collect(), b)
        };
        HPoly {
            dim: keep.len(),
            ineqs: self.ineqs.iter().map(map).collect(),
            eqs: self.eqs.iter().map(map).collect(),
        }
    }

    /// `{t x : x in self}` for `t > 0`.
    pub fn scaled(&self, t: &Rational) -> HPoly {
        assert!(t.is_positive());
        let map = |c: &Constraint| Constraint::new(c.a.clone(), &c.b * t);
        HPoly {
            dim: self.dim,
            ineqs: self.ineqs.iter().map(map).collect(),
            eqs: self.eqs.iter().map(map).collect(),
        }
    }

    /// `{d : A d <= 0, C d = 0}`.
    pub fn recession_cone(&self) -> Result<HPoly> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.homogeneous_part())
    }

    pub(crate) fn homogeneous_part(&self) -> HPoly {
        let map = |c: &Constraint| Constraint::new(c.a.clone(), Rational::zero());
        HPoly {
            dim: self.dim,
            ineqs: self.ineqs.iter().map(map).collect(),
            eqs: self.eqs.iter().map(map).collect(),
        }
    }

    /// Syntactic cleanup that preserves the set exactly: normalizes each
    /// constraint, removes duplicates (keeping the tightest right-hand
    /// side), drops trivially true rows, reduces the equality block to an
    /// independent system and collapses to [`HPoly::empty`] on an explicit
    /// contradiction.
    pub fn canonicalize(&self) -> HPoly {
        let n = self.dim;
        // equalities: reduced row echelon form on the augmented system
        let mut aug: Vec<Vector> = self
            .eqs
            .iter()
            .map(|c| {
                let mut v = c.a.clone();
                v.push(c.b.clone());
                v
            })
            .collect();
        let pivots = linalg::rref(&mut aug, n + 1);
        if pivots.last() == Some(&n) {
            return HPoly::empty(n);
        }
        let eqs: Vec<Constraint> = aug
            .into_iter()
            .map(|mut v| {
                let b = v.pop().expect("augmented column");
                Constraint::new(v, b)
            })
            .collect();

        let mut best: BTreeMap<Vector, Rational> = BTreeMap::new();
        let mut order: Vec<Vector> = Vec::new();
        for c in &self.ineqs {
            if c.is_trivial() {
                if c.b.is_negative() {
                    return HPoly::empty(n);
                }
                continue;
            }
            let c = c.normalized();
            match best.get_mut(&c.a) {
                Some(b) => {
                    if c.b < *b {
                        *b = c.b;
                    }
                }
                None => {
                    order.push(c.a.clone());
                    best.insert(c.a, c.b);
                }
            }
        }
        let ineqs = order
            .into_iter()
            .map(|a| {
                let b = best[&a].clone();
                Constraint::new(a, b)
            })
            .collect();
        HPoly { dim: n, ineqs, eqs }
    }

    /// Drops every inequality implied by the others (decided by LP). The
    /// polyhedron must be nonempty.
    pub fn remove_redundant(&self) -> HPoly {
        if lp::feasible_point(self).is_none() {
            return self.remove_redundant_plain();
        }
        let interior = self.strict_point();
        let n = self.ineqs.len();
        let mut alive = vec![true; n];
        // rows that take part in the small LPs
        let mut work: Vec<usize> = Vec::new();
        for i in 0..n {
            let c = &self.ineqs[i];
            loop {
                let mut sub = HPoly { dim: self.dim, ineqs: Vec::with_capacity(work.len() + 1), eqs: self.eqs.clone() };
                sub.ineqs.extend(work.iter().filter(|&&k| k != i && alive[k]).map(|&k| self.ineqs[k].clone()));
                sub.ineqs.push(Constraint::new(c.a.clone(), &c.b + &Rational::one()));
                let x = match lp::maximize(&c.a, &sub) {
                    Ok(lp::LpResult::Optimal { value, point, .. }) if value > c.b => point,
                    _ => {
                        alive[i] = false;
                        break;
                    }
                };
                let violated: Vec<usize> = (0..n)
                    .filter(|&k| k != i && alive[k] && self.ineqs[k].slack(&x).is_negative())
                    .collect();
                if violated.is_empty() {
                    break;
                }
                match &interior {
                    Some(z) => work.extend(self.first_hit(z, &x, &violated)),
                    None => work.extend(violated),
                }
            }
        }
        HPoly {
            dim: self.dim,
            ineqs: (0..n).filter(|&i| alive[i]).map(|i| self.ineqs[i].clone()).collect(),
            eqs: self.eqs.clone(),
        }
    }

    /// A point satisfying every inequality strictly, if there is one.
    fn strict_point(&self) -> Option<Vector> {
        let n = self.dim;
        let lift = |c: &Constraint, t: Rational| {
            let mut a = c.a.clone();
            a.push(t);
            Constraint::new(a, c.b.clone())
        };
        let mut sys = HPoly {
            dim: n + 1,
            ineqs: self.ineqs.iter().map(|c| lift(c, Rational::one())).collect(),
            eqs: self.eqs.iter().map(|c| lift(c, Rational::zero())).collect(),
        };
        sys.ineqs.push(Constraint::new(linalg::unit(n + 1, n), Rational::one()));
        match lp::maximize(&linalg::unit(n + 1, n), &sys) {
            Ok(lp::LpResult::Optimal { value, mut point, .. }) if value.is_positive() => {
                point.pop();
                Some(point)
            }
            _ => None,
        }
    }

    /// The rows among `violated` whose hyperplanes the segment from the
    /// strictly interior `z` to `x` crosses first.
    fn first_hit(&self, z: &[Rational], x: &[Rational], violated: &[usize]) -> Vec<usize> {
        let d = linalg::sub(x, z);
        let mut best: Option<Rational> = None;
        let mut hits = Vec::new();
        for &k in violated {
            let c = &self.ineqs[k];
            let lambda = c.slack(z) / linalg::dot(&c.a, &d);
            match best.as_ref().map(|b| lambda.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => hits.push(k),
                _ => {
                    best = Some(lambda);
                    hits = vec![k];
                }
            }
        }
        hits
    }

    fn remove_redundant_plain(&self) -> HPoly {
        let mut cur = self.clone();
        let mut i = 0;
        while i < cur.ineqs.len() {
            let c = cur.ineqs[i].clone();
            let mut rest = cur.clone();
            rest.ineqs.remove(i);
            let redundant = match lp::maximize(&c.a, &rest) {
                Ok(lp::LpResult::Optimal { value, .. }) => value <= c.b,
                Ok(lp::LpResult::Infeasible { .. }) => true,
                _ => false,
            };
            if redundant {
                cur = rest;
            } else {
                i += 1;
            }
        }
        cur
    }

    /// Canonicalizes and removes LP-redundant inequalities.
    pub fn minimized(&self) -> HPoly {
        let c = self.canonicalize();
        if c.is_empty() {
            return HPoly::empty(self.dim);
        }
        c.remove_redundant()
    }
}
