//! Separation of a polyhedron from the relative interior of another, and
//! the conversion from equality-block form to pure inequality form.
//!
//! In finite dimensions the intrinsic and quasi relative interiors of a
//! convex set both coincide with its relative interior, so the latter is
//! what is computed here.

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Vector};
use crate::arith::lp::{self, LpResult};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::polyhedra::{dd_convert, relative_interior, Constraint, HPoly};

pub use crate::polyhedra::codim;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum SepResult {
    /// `<x_star, x> <= alpha` on `P`, `alpha <= <x_star, y>` on `Omega`, and
    /// `alpha < <x_star, witness>` with `witness` in `Omega`.
    Separable { x_star: Vector, alpha: Rational, witness: Vector },
    /// A point of `P` in the relative interior of `Omega`.
    NotSeparable { common_point: Vector },
}

impl SepResult {
    pub fn is_separable(&self) -> bool {
        matches!(self, SepResult::Separable { .. })
    }

    /// Re-checks the certificate exactly against both sets.
    pub fn verify(&self, p: &HPoly, omega: &HPoly) -> Result<bool> {
        match self {
            SepResult::Separable { x_star, alpha, witness } => {
                let gp = dd_convert(p);
                let go = dd_convert(omega);
                let d = |v: &Vector| linalg::dot(x_star, v);
                Ok(gp.points.iter().all(|q| d(q) <= *alpha)
                    && gp.rays.iter().all(|r| !d(r).is_positive())
                    && gp.lines.iter().all(|l| d(l).is_zero())
                    && go.points.iter().all(|q| d(q) >= *alpha)
                    && go.rays.iter().all(|r| !d(r).is_negative())
                    && go.lines.iter().all(|l| d(l).is_zero())
                    && omega.contains(witness)?
                    && d(witness) > *alpha)
            }
            SepResult::NotSeparable { common_point } => {
                let ri = relative_interior(omega)?;
                Ok(p.contains(common_point)?
                    && omega.contains(common_point)?
                    && omega
                        .ineqs
                        .iter()
                        .zip(&ri.implicit)
                        .all(|(c, &imp)| imp || c.slack(common_point).is_positive()))
            }
        }
    }
}

/// Decides whether `P` and `Omega` can be separated by a closed hyperplane
/// not containing `Omega`, which happens exactly when `P` misses the
/// relative interior of `Omega`.
pub fn separate(p: &HPoly, omega: &HPoly) -> Result<SepResult> {
    linalg::check_dim(p.dim, omega.dim)?;
    if p.is_empty() || omega.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = p.dim;
    let ri = relative_interior(omega)?;

    // maximize a common slack s <= 1 on the non-implicit rows of Omega
    let pad = |c: &Constraint, s: Rational| {
        let mut a = c.a.clone();
        a.push(s);
        Constraint::new(a, c.b.clone())
    };
    let mut sys = HPoly::whole_space(n + 1);
    for c in &p.ineqs {
        sys.ineqs.push(pad(c, Rational::zero()));
    }
    for c in p.eqs.iter().chain(&omega.eqs) {
        sys.eqs.push(pad(c, Rational::zero()));
    }
    for (c, &imp) in omega.ineqs.iter().zip(&ri.implicit) {
        sys.ineqs.push(pad(c, if imp { Rational::zero() } else { Rational::one() }));
    }
    sys.ineqs.push(Constraint::new(linalg::unit(n + 1, n), Rational::one()));
    let mut obj = linalg::zeros(n + 1);
    obj[n] = Rational::one();
    if let LpResult::Optimal { value, point, .. } = lp::maximize(&obj, &sys)? {
        if value.is_positive() {
            return Ok(SepResult::NotSeparable { common_point: point[..n].to_vec() });
        }
    }
    certificate(p, omega)
}

/// LP over admissible `(x_star, alpha)` with `x_star` in `[-1, 1]^n`,
/// maximizing the total gap on the generators of `Omega`.
fn certificate(p: &HPoly, omega: &HPoly) -> Result<SepResult> {
    let n = p.dim;
    let gp = dd_convert(p);
    let go = dd_convert(omega);
    let row = |v: &Vector, alpha: i64| {
        let mut a = v.clone();
        a.push(Rational::from_integer(alpha));
        a
    };
    let zero = Rational::zero;
    let mut sys = HPoly::whole_space(n + 1);
    for q in &gp.points {
        sys.ineqs.push(Constraint::new(row(q, -1), zero()));
    }
    for r in &gp.rays {
        sys.ineqs.push(Constraint::new(row(r, 0), zero()));
    }
    for q in &go.points {
        sys.ineqs.push(Constraint::new(row(&linalg::neg(q), 1), zero()));
    }
    for r in &go.rays {
        sys.ineqs.push(Constraint::new(row(&linalg::neg(r), 0), zero()));
    }
    for l in gp.lines.iter().chain(&go.lines) {
        sys.eqs.push(Constraint::new(row(l, 0), zero()));
    }
    for i in 0..n {
        let e = linalg::unit(n + 1, i);
        sys.ineqs.push(Constraint::new(e.clone(), Rational::one()));
        sys.ineqs.push(Constraint::new(linalg::neg(&e), Rational::one()));
    }
    let mut obj = linalg::zeros(n + 1);
    for v in go.points.iter().chain(&go.rays) {
        obj = linalg::add(&obj, &row(v, 0));
    }
    obj[n] = -Rational::from_integer(go.points.len() as i64);

    let LpResult::Optimal { value, point, .. } = lp::maximize(&obj, &sys)? else {
        return Err(Error::Internal("certificate LP not optimal".into()));
    };
    if !value.is_positive() {
        return Err(Error::Internal("no strict separating functional".into()));
    }
    let x_star = point[..n].to_vec();
    let alpha = point[n].clone();
    let witness = match go.points.iter().find(|q| linalg::dot(&x_star, q) > alpha) {
        Some(q) => q.clone(),
        None => {
            let r = go
                .rays
                .iter()
                .find(|r| linalg::dot(&x_star, r).is_positive())
                .ok_or_else(|| Error::Internal("no strict generator".into()))?;
            linalg::add(&go.points[0], r)
        }
    };
    Ok(SepResult::Separable { x_star, alpha, witness })
}

/// Replaces each equality by two opposite inequalities.
pub fn gpcs_to_pcs(q: &HPoly) -> HPoly {
    q.equalities_as_inequalities()
}
