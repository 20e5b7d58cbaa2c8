use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Matrix, Vector};
use crate::arith::lp::{self, LpResult};
use crate::arith::Rational;
use crate::error::{Error, Result};

use super::{fm_eliminate, Constraint, HPoly};

/// `{p + q : p in P, q in Q}`, projected from `{(x, u) : u in P, x - u in Q}`.
pub fn minkowski_sum(p: &HPoly, q: &HPoly) -> Result<HPoly> {
    linalg::check_dim(p.dim, q.dim)?;
    let n = p.dim;
    let mut joint = p.lift(2 * n, &(n..2 * n).collect::<Vec<_>>());
    let diff = |c: &Constraint| {
        let mut a = c.a.clone();
        a.extend(linalg::neg(&c.a));
        Constraint::new(a, c.b.clone())
    };
    joint.ineqs.extend(q.ineqs.iter().map(diff));
    joint.eqs.extend(q.eqs.iter().map(diff));
    Ok(fm_eliminate(&joint, &(n..2 * n).collect::<Vec<_>>()))
}

/// `{A x + b : x in P}`.
pub fn affine_image(p: &HPoly, a: &Matrix, b: &[Rational]) -> Result<HPoly> {
    linalg::check_dim(a.ncols, p.dim)?;
    linalg::check_dim(a.nrows, b.len())?;
    let (m, n) = (a.nrows, a.ncols);
    let mut joint = p.lift(m + n, &(m..m + n).collect::<Vec<_>>());
    for (i, row) in a.rows.iter().enumerate() {
        let mut coef = linalg::unit(m, i);
        coef.extend(linalg::neg(row));
        joint.eqs.push(Constraint::new(coef, b[i].clone()));
    }
    Ok(fm_eliminate(&joint, &(m..m + n).collect::<Vec<_>>()))
}

/// `{x : A x + b in P}`.
pub fn affine_preimage(p: &HPoly, a: &Matrix, b: &[Rational]) -> Result<HPoly> {
    linalg::check_dim(a.nrows, p.dim)?;
    linalg::check_dim(a.nrows, b.len())?;
    let at = a.transpose();
    let sub = |c: &Constraint| {
        let coef = at.rows.iter().map(|col| linalg::dot(col, &c.a)).collect();
        Constraint::new(coef, &c.b - linalg::dot(&c.a, b))
    };
    Ok(HPoly {
        dim: a.ncols,
        ineqs: p.ineqs.iter().map(sub).collect(),
        eqs: p.eqs.iter().map(sub).collect(),
    })
}

/// Which inequalities hold with equality on all of `P`, together with a
/// point at which every other inequality is strictly slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelInt {
    pub implicit: Vec<bool>,
    pub point: Vector,
}

/// Slack maximization: repeatedly maximize the total (capped) slack of the
/// undecided inequalities; any that gets positive slack is not implicit,
/// and the optimum reaching zero proves the rest are. The average of the
/// optimal points is strictly slack on every non-implicit row.
pub fn relative_interior(p: &HPoly) -> Result<RelInt> {
    let n = p.dim;
    let mut implicit = vec![true; p.ineqs.len()];
    let mut cand: Vec<usize> = (0..p.ineqs.len()).collect();
    let mut points: Vec<Vector> = Vec::new();
    loop {
        let k = cand.len();
        let dim = n + k;
        let pad = |a: &Vector| {
            let mut v = a.clone();
            v.extend(linalg::zeros(k));
            v
        };
        let mut sys = HPoly::whole_space(dim);
        for (i, c) in p.ineqs.iter().enumerate() {
            if !cand.contains(&i) {
                sys.ineqs.push(Constraint::new(pad(&c.a), c.b.clone()));
            }
        }
        for (s, &i) in cand.iter().enumerate() {
            let mut a = pad(&p.ineqs[i].a);
            a[n + s] = Rational::one();
            sys.ineqs.push(Constraint::new(a, p.ineqs[i].b.clone()));
            sys.ineqs.push(Constraint::new(linalg::unit(dim, n + s), Rational::one()));
            sys.ineqs.push(Constraint::new(linalg::neg(&linalg::unit(dim, n + s)), Rational::zero()));
        }
        sys.eqs.extend(p.eqs.iter().map(|c| Constraint::new(pad(&c.a), c.b.clone())));
        let mut obj = linalg::zeros(dim);
        for s in 0..k {
            obj[n + s] = Rational::one();
        }
        match lp::maximize(&obj, &sys)? {
            LpResult::Infeasible { .. } => return Err(Error::EmptySet),
            LpResult::Unbounded { .. } => return Err(Error::Internal("slack LP unbounded".into())),
            LpResult::Optimal { value, point, .. } => {
                points.push(point[..n].to_vec());
                if value.is_zero() {
                    break;
                }
                let mut rest = Vec::new();
                for (s, &i) in cand.iter().enumerate() {
                    if point[n + s].is_positive() {
                        implicit[i] = false;
                    } else {
                        rest.push(i);
                    }
                }
                cand = rest;
                if cand.is_empty() {
                    break;
                }
            }
        }
    }
    let inv = Rational::from_integer(points.len() as i64).recip();
    let mut point = linalg::zeros(n);
    for q in &points {
        point = linalg::add(&point, q);
    }
    let point = linalg::scale(&point, &inv);
    debug_assert!(p.contains_unchecked(&point));
    debug_assert!(p
        .ineqs
        .iter()
        .zip(&implicit)
        .all(|(c, &imp)| imp || c.slack(&point).is_positive()));
    Ok(RelInt { implicit, point })
}

pub fn relative_interior_point(p: &HPoly) -> Result<Vector> {
    Ok(relative_interior(p)?.point)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineHull {
    pub eqs: Vec<Constraint>,
    pub dim: usize,
    pub codim: usize,
}

/// Equations of the affine hull (an independent system), its dimension and
/// codimension.
pub fn affine_hull(p: &HPoly) -> Result<AffineHull> {
    let ri = relative_interior(p)?;
    let mut h = HPoly::whole_space(p.dim);
    h.eqs = p.eqs.clone();
    for (c, &imp) in p.ineqs.iter().zip(&ri.implicit) {
        if imp {
            h.eqs.push(c.clone());
        }
    }
    let eqs = h.canonicalize().eqs;
    let codim = eqs.len();
    Ok(AffineHull { eqs, dim: p.dim - codim, codim })
}

/// Rank of the equality normals.
pub fn codim(m: &HPoly) -> usize {
    let rows: Vec<Vector> = m.eqs.iter().map(|c| c.a.clone()).collect();
    linalg::rank(&rows, m.dim)
}
