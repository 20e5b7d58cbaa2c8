//! Polyhedral convex functions, stored as epigraphs over `(x, t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Matrix, Vector};
use crate::arith::lp::{self, LpResult};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::mapping::{compose, sum_mapping, PolyMap};
use crate::normal::{normal_cone, PolyCone};
use crate::polyhedra::{
    affine_image, affine_preimage, fm_eliminate, minkowski_sum, set_equal, Constraint, HPoly, SetRef,
};
use crate::report::RuleReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFunc")]
pub struct PolyFunc {
    pub nx: usize,
    pub epi: HPoly,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawFunc {
    Epi { nx: usize, epi: HPoly },
    Pieces { pieces: Vec<Constraint>, dom: HPoly },
}

impl TryFrom<RawFunc> for PolyFunc {
    type Error = Error;
    fn try_from(r: RawFunc) -> Result<Self> {
        match r {
            RawFunc::Epi { nx, epi } => PolyFunc::new(nx, epi),
            RawFunc::Pieces { pieces, dom } => PolyFunc::from_pieces(&pieces, &dom),
        }
    }
}

/// A value of an extended-real-valued function that never takes `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FnValue {
    Finite(Rational),
    PosInf,
}

impl FnValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            FnValue::Finite(v) => Some(v),
            FnValue::PosInf => None,
        }
    }
}

impl fmt::Display for FnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnValue::Finite(v) => write!(f, "{v}"),
            FnValue::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for FnValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

impl PolyFunc {
    /// Checks that `epi` is a nonempty epigraph of a function that never
    /// takes the value `-inf`.
    pub fn new(nx: usize, epi: HPoly) -> Result<Self> {
        linalg::check_dim(nx + 1, epi.dim)?;
        if epi.is_empty() {
            return Err(Error::InvalidFunction("empty epigraph".into()));
        }
        let up = linalg::unit(nx + 1, nx);
        if !epi.is_recession_direction(&up) {
            return Err(Error::InvalidFunction("epigraph is not closed upward".into()));
        }
        if epi.is_recession_direction(&linalg::neg(&up)) {
            return Err(Error::InvalidFunction("function takes the value -inf".into()));
        }
        Ok(PolyFunc { nx, epi })
    }

    /// `max_j (a_j . x + b_j)` restricted to `dom`.
    pub fn from_pieces(pieces: &[Constraint], dom: &HPoly) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidFunction("no affine pieces".into()));
        }
        let nx = dom.dim;
        let mut epi = dom.lift(nx + 1, &range(0, nx));
        for p in pieces {
            linalg::check_dim(nx, p.a.len())?;
            let mut a = p.a.clone();
            a.push(-Rational::one());
            epi.ineqs.push(Constraint::new(a, -&p.b));
        }
        PolyFunc::new(nx, epi)
    }

    /// `x -> a . x + b` on the whole space.
    pub fn affine(a: Vector, b: Rational) -> Self {
        let nx = a.len();
        PolyFunc::from_pieces(&[Constraint::new(a, b)], &HPoly::whole_space(nx)).expect("affine function")
    }

    /// Zero on `dom`, `+inf` elsewhere.
    pub fn indicator(dom: &HPoly) -> Result<Self> {
        PolyFunc::from_pieces(&[Constraint::new(linalg::zeros(dom.dim), Rational::zero())], dom)
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<FnValue> {
        linalg::check_dim(self.nx, x.len())?;
        let mut vals: Vec<Option<Rational>> = x.iter().cloned().map(Some).collect();
        vals.push(None);
        let fiber = self.epi.fix_coordinates(&vals);
        match lp::minimize(&[Rational::one()], &fiber)? {
            LpResult::Optimal { value, .. } => Ok(FnValue::Finite(value)),
            LpResult::Infeasible { .. } => Ok(FnValue::PosInf),
            LpResult::Unbounded { .. } => Err(Error::Internal("epigraph unbounded below".into())),
        }
    }

    fn value_at(&self, x: &[Rational]) -> Result<Rational> {
        self.evaluate(x)?.finite().cloned().ok_or(Error::NotInDomain)
    }

    pub fn domain(&self) -> HPoly {
        fm_eliminate(&self.epi, &[self.nx])
    }

    /// `{x : f(x) <= gamma}`.
    pub fn sublevel_set(&self, gamma: &Rational) -> HPoly {
        let mut vals = vec![None; self.nx];
        vals.push(Some(gamma.clone()));
        self.epi.fix_coordinates(&vals)
    }

    pub fn epigraphical_map(&self) -> PolyMap {
        PolyMap { nx: self.nx, ny: 1, graph: self.epi.clone() }
    }

    /// `N((x, f(x)); epi f)` in constraint form over `(x*, s)`.
    fn epi_normal(&self, x: &[Rational]) -> Result<HPoly> {
        let fx = self.value_at(x)?;
        let mut pt = x.to_vec();
        pt.push(fx);
        Ok(normal_cone(&self.epi, &pt)?.to_hpoly())
    }

    fn epi_slice(&self, x: &[Rational], s: Rational) -> Result<HPoly> {
        let n = self.epi_normal(x)?;
        let mut vals = vec![None; self.nx];
        vals.push(Some(s));
        Ok(n.fix_coordinates(&vals).canonicalize())
    }

    /// `{x* : (x*, -1) in N((x, f(x)); epi f)}`.
    pub fn subdifferential(&self, x: &[Rational]) -> Result<HPoly> {
        self.epi_slice(x, -Rational::one())
    }

    /// `{x* : (x*, 0) in N((x, f(x)); epi f)}`.
    pub fn singular_subdifferential(&self, x: &[Rational]) -> Result<PolyCone> {
        PolyCone::from_hpoly(&self.epi_slice(x, Rational::zero())?)
    }

    /// `lambda * subdifferential` for positive `lambda`, the singular
    /// subdifferential for zero.
    pub fn lambda_odot(&self, lambda: &Rational, x: &[Rational]) -> Result<HPoly> {
        if lambda.is_negative() {
            return Err(Error::NegativeLambda);
        }
        if lambda.is_zero() {
            self.epi_slice(x, Rational::zero())
        } else {
            Ok(self.subdifferential(x)?.scaled(lambda))
        }
    }

    /// True when `x` lies in the interior of the domain, i.e. `f` is
    /// continuous there.
    pub fn is_continuous_at(&self, x: &[Rational]) -> Result<bool> {
        let s = self.singular_subdifferential(x)?;
        Ok(s.rays.is_empty() && s.lines.is_empty())
    }
}

/// The sum `f1 + f2`, whose epigraph is the graph of `E_f1 + E_f2`.
pub fn sum_function(f1: &PolyFunc, f2: &PolyFunc) -> Result<PolyFunc> {
    let g = sum_mapping(&f1.epigraphical_map(), &f2.epigraphical_map())?;
    PolyFunc::new(f1.nx, g.graph)
}

/// `d(f1 + f2)(x) = df1(x) + df2(x)`.
pub fn check_subdiff_sum_rule(f1: &PolyFunc, f2: &PolyFunc, x: &[Rational]) -> Result<RuleReport> {
    linalg::check_dim(f1.nx, f2.nx)?;
    let r1 = f1.subdifferential(x)?;
    let r2 = f2.subdifferential(x)?;
    let lhs = sum_function(f1, f2)?.subdifferential(x)?;
    RuleReport::compare("subdiff-sum", &lhs, &minkowski_sum(&r1, &r2)?)
}

/// `x -> A x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: Matrix,
    pub b: Vector,
}

impl AffineMap {
    pub fn new(a: Matrix, b: Vector) -> Result<Self> {
        linalg::check_dim(a.nrows, b.len())?;
        Ok(AffineMap { a, b })
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vector> {
        Ok(linalg::add(&self.a.mul_vec(x)?, &self.b))
    }
}

/// `f o B`, whose epigraph is `{(x, t) : (A x + b, t) in epi f}`.
pub fn compose_affine(f: &PolyFunc, map: &AffineMap) -> Result<PolyFunc> {
    linalg::check_dim(f.nx, map.a.nrows)?;
    let (m, n) = (map.a.nrows, map.a.ncols);
    let mut rows: Vec<Vector> = map
        .a
        .rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.push(Rational::zero());
            v
        })
        .collect();
    rows.push(linalg::unit(n + 1, n));
    let lifted = Matrix::new(m + 1, n + 1, rows)?;
    let mut b = map.b.clone();
    b.push(Rational::zero());
    PolyFunc::new(n, affine_preimage(&f.epi, &lifted, &b)?)
}

/// `d(f o B)(x) = A^T df(B x)`.
pub fn check_affine_chain(f: &PolyFunc, map: &AffineMap, x: &[Rational]) -> Result<RuleReport> {
    let comp = compose_affine(f, map)?;
    let lhs = comp.subdifferential(x)?;
    let y = map.apply(x)?;
    let at = map.a.transpose();
    let rhs = affine_image(&f.subdifferential(&y)?, &at, &linalg::zeros(at.nrows))?;
    RuleReport::compare("affine-chain", &lhs, &rhs)
}

/// Projection onto `x*` of `{(x*, lambda) : (x*, -lambda) in N, lambda >= 0}`
/// for a normal cone `N` over `(x*, s)`.
fn union_of_scaled(n: &HPoly, nx: usize) -> HPoly {
    let flip = |c: &Constraint| {
        let mut a = c.a.clone();
        a[nx] = -&a[nx];
        Constraint::new(a, c.b.clone())
    };
    let mut sys = HPoly { dim: nx + 1, ineqs: n.ineqs.iter().map(flip).collect(), eqs: n.eqs.iter().map(flip).collect() };
    sys.ineqs.push(Constraint::new(linalg::neg(&linalg::unit(nx + 1, nx)), Rational::zero()));
    fm_eliminate(&sys, &[nx])
}

/// `N(x; {f <= gamma})` as the union of `lambda (.) df(x)` over `lambda >= 0`.
pub fn sublevel_normal_cone(f: &PolyFunc, gamma: &Rational, x: &[Rational]) -> Result<PolyCone> {
    if f.evaluate(x)? != FnValue::Finite(gamma.clone()) {
        return Err(Error::NotOnLevelSet);
    }
    PolyCone::from_hpoly(&union_of_scaled(&f.epi_normal(x)?, f.nx))
}

/// Compares [`sublevel_normal_cone`] with the normal cone of the explicit
/// sublevel polyhedron.
pub fn check_sublevel_rule(f: &PolyFunc, gamma: &Rational, x: &[Rational]) -> Result<RuleReport> {
    let rhs = sublevel_normal_cone(f, gamma, x)?.to_genset();
    let lhs = normal_cone(&f.sublevel_set(gamma), x)?.to_genset();
    RuleReport::compare("sublevel", &lhs, &rhs)
}

/// Normal cone to `{x : f_i(x) <= gamma_i for all i}`: the normal cone of
/// the explicit polyhedron against the sum of `lambda_i (.) df_i(x)` over the
/// active indices plus `N(x; dom f_i)` over the inactive ones. When every
/// `f_i` is continuous at `x`, the simplified formula with plain
/// `lambda_i df_i(x)` over the active indices is checked as well.
pub fn multi_sublevel_normal_cone(fs: &[PolyFunc], gammas: &[Rational], x: &[Rational]) -> Result<RuleReport> {
    let m = fs.len();
    if m < 2 {
        return Err(Error::InvalidInput("at least two functions required".into()));
    }
    linalg::check_dim(m, gammas.len())?;
    let nx = fs[0].nx;
    linalg::check_dim(nx, x.len())?;
    let mut active = Vec::with_capacity(m);
    for (f, g) in fs.iter().zip(gammas) {
        linalg::check_dim(nx, f.nx)?;
        match f.evaluate(x)? {
            FnValue::Finite(v) if v <= *g => active.push(v == *g),
            _ => return Err(Error::NotInSublevelSet),
        }
    }

    let mut level = HPoly::whole_space(nx);
    for (f, g) in fs.iter().zip(gammas) {
        level = level.intersect(&f.sublevel_set(g))?;
    }
    let lhs = normal_cone(&level, x)?.to_genset();

    // joint system over (x*, x*_1, .., x*_m, lambda_1, .., lambda_m)
    let dim = nx * (m + 1) + m;
    let lam = |i: usize| nx * (m + 1) + i;
    let mut joint = HPoly::whole_space(dim);
    for (i, f) in fs.iter().enumerate() {
        let n = f.epi_normal(x)?;
        let mut pos = range(nx * (i + 1), nx * (i + 2));
        pos.push(lam(i));
        let mut part = n.lift(dim, &pos);
        for c in part.ineqs.iter_mut().chain(part.eqs.iter_mut()) {
            c.a[lam(i)] = -&c.a[lam(i)];
        }
        joint = joint.intersect(&part)?;
        let e = linalg::unit(dim, lam(i));
        if active[i] {
            joint.ineqs.push(Constraint::new(linalg::neg(&e), Rational::zero()));
        } else {
            joint.eqs.push(Constraint::new(e, Rational::zero()));
        }
    }
    for j in 0..nx {
        let mut a = linalg::unit(dim, j);
        for i in 0..m {
            a[nx * (i + 1) + j] = -Rational::one();
        }
        joint.eqs.push(Constraint::new(a, Rational::zero()));
    }
    let rhs = fm_eliminate(&joint, &range(nx, dim));
    let mut report = RuleReport::compare("multi-sublevel", SetRef::V(&lhs), &rhs)?;

    let active_idx: Vec<usize> = (0..m).filter(|&i| active[i]).collect();
    let restricted = fs.iter().any(|f| !set_equal(&f.domain(), &HPoly::whole_space(nx)).map(|c| c.equal).unwrap_or(false));
    if restricted {
        report.note("some function has a restricted domain");
    }
    let mut continuous = true;
    for f in fs {
        if !f.is_continuous_at(x)? {
            continuous = false;
        }
    }
    if continuous {
        report.note("every function is continuous at the point; singular terms vanish");
        let simple = simplified_sum_of_cones(fs, &active_idx, x)?;
        report.add_check("continuous-simplification", SetRef::V(&lhs), &simple)?;
    }
    Ok(report)
}

/// `{sum_i lambda_i s_i : lambda_i >= 0, s_i in df_i(x)}` over the listed
/// indices, each `df_i(x)` being a polytope.
fn simplified_sum_of_cones(fs: &[PolyFunc], idx: &[usize], x: &[Rational]) -> Result<HPoly> {
    let nx = x.len();
    let k = idx.len();
    // (x*, y_1, .., y_k, lambda_1, .., lambda_k) with y_i in lambda_i df_i(x)
    let dim = nx * (k + 1) + k;
    let lam = |j: usize| nx * (k + 1) + j;
    let mut joint = HPoly::whole_space(dim);
    for (j, &i) in idx.iter().enumerate() {
        let sd = fs[i].subdifferential(x)?;
        let homog = |c: &Constraint| {
            let mut a = linalg::zeros(dim);
            for t in 0..nx {
                a[nx * (j + 1) + t] = c.a[t].clone();
            }
            a[lam(j)] = -&c.b;
            Constraint::new(a, Rational::zero())
        };
        joint.ineqs.extend(sd.ineqs.iter().map(homog));
        joint.eqs.extend(sd.eqs.iter().map(homog));
        joint.ineqs.push(Constraint::new(linalg::neg(&linalg::unit(dim, lam(j))), Rational::zero()));
    }
    for t in 0..nx {
        let mut a = linalg::unit(dim, t);
        for j in 0..k {
            a[nx * (j + 1) + t] = -Rational::one();
        }
        joint.eqs.push(Constraint::new(a, Rational::zero()));
    }
    Ok(fm_eliminate(&joint, &range(nx, dim)))
}

/// `phi` is nondecreasing exactly when `(-1, 0)` recedes in `epi phi`.
pub fn is_nondecreasing(phi: &PolyFunc) -> bool {
    phi.nx == 1 && phi.epi.is_recession_direction(&[-Rational::one(), Rational::zero()])
}

/// `phi o f` for a nondecreasing `phi` on the real line.
pub fn compose_monotone(phi: &PolyFunc, f: &PolyFunc) -> Result<PolyFunc> {
    if phi.nx != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: phi.nx });
    }
    if !is_nondecreasing(phi) {
        return Err(Error::NotMonotone);
    }
    let g = compose(&phi.epigraphical_map(), &f.epigraphical_map())?;
    PolyFunc::new(f.nx, g.graph)
}

/// `d(phi o f)(x)` against the union of `lambda (.) df(x)` over
/// `lambda in dphi(f(x))`.
pub fn monotone_compose(phi: &PolyFunc, f: &PolyFunc, x: &[Rational]) -> Result<RuleReport> {
    let comp = compose_monotone(phi, f)?;
    let y = f.value_at(x)?;
    if phi.evaluate(std::slice::from_ref(&y))?.finite().is_none() {
        return Err(Error::NotInDomain);
    }
    let lhs = comp.subdifferential(x)?;

    let nx = f.nx;
    let n = f.epi_normal(x)?;
    let flip = |c: &Constraint| {
        let mut a = c.a.clone();
        a[nx] = -&a[nx];
        Constraint::new(a, c.b.clone())
    };
    let mut joint = HPoly { dim: nx + 1, ineqs: n.ineqs.iter().map(flip).collect(), eqs: n.eqs.iter().map(flip).collect() };
    let dphi = phi.subdifferential(std::slice::from_ref(&y))?;
    joint = joint.intersect(&dphi.lift(nx + 1, &[nx]))?;
    let rhs = fm_eliminate(&joint, &[nx]);
    RuleReport::compare("monotone-compose", &lhs, &rhs)
}
