//! Polyhedral set-valued mappings, stored as graph polyhedra over `(x, y)`.

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Matrix, Vector};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::normal::normal_cone;
use crate::polyhedra::{
    dd_convert, fm_eliminate, minkowski_sum, relative_interior_point, Constraint, HPoly,
};
use crate::report::RuleReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct PolyMap {
    pub nx: usize,
    pub ny: usize,
    pub graph: HPoly,
}

#[derive(Deserialize)]
struct RawMap {
    nx: usize,
    ny: usize,
    graph: HPoly,
}

impl TryFrom<RawMap> for PolyMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<Self> {
        PolyMap::new(r.nx, r.ny, r.graph)
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

impl PolyMap {
    pub fn new(nx: usize, ny: usize, graph: HPoly) -> Result<Self> {
        linalg::check_dim(nx + ny, graph.dim)?;
        Ok(PolyMap { nx, ny, graph })
    }

    /// `x -> {A x + b}`.
    pub fn affine(a: &Matrix, b: &[Rational]) -> Result<Self> {
        linalg::check_dim(a.nrows, b.len())?;
        let (nx, ny) = (a.ncols, a.nrows);
        let eqs = a
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut coef = linalg::neg(row);
                coef.extend(linalg::unit(ny, i));
                Constraint::new(coef, b[i].clone())
            })
            .collect();
        PolyMap::new(nx, ny, HPoly::new(nx + ny, vec![], eqs)?)
    }

    pub fn identity(n: usize) -> Self {
        PolyMap::affine(&Matrix::identity(n), &linalg::zeros(n)).expect("square identity")
    }

    /// The indicator mapping: `{0}` on `theta`, empty elsewhere.
    pub fn indicator(theta: &HPoly, ny: usize) -> Self {
        let nx = theta.dim;
        let mut graph = theta.lift(nx + ny, &range(0, nx));
        for i in 0..ny {
            graph.eqs.push(Constraint::new(linalg::unit(nx + ny, nx + i), Rational::zero()));
        }
        PolyMap { nx, ny, graph }
    }

    pub fn point(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut z = x.to_vec();
        z.extend_from_slice(y);
        z
    }

    pub fn contains(&self, x: &[Rational], y: &[Rational]) -> Result<bool> {
        linalg::check_dim(self.nx, x.len())?;
        linalg::check_dim(self.ny, y.len())?;
        self.graph.contains(&self.point(x, y))
    }

    /// `F(x)` in constraint form.
    pub fn evaluate(&self, x: &[Rational]) -> Result<HPoly> {
        linalg::check_dim(self.nx, x.len())?;
        let mut vals: Vec<Option<Rational>> = x.iter().cloned().map(Some).collect();
        vals.extend(std::iter::repeat(None).take(self.ny));
        Ok(self.graph.fix_coordinates(&vals))
    }

    pub fn domain(&self) -> HPoly {
        fm_eliminate(&self.graph, &range(self.nx, self.nx + self.ny))
    }

    /// `{x : F(x) meets theta}`.
    pub fn preimage(&self, theta: &HPoly) -> Result<HPoly> {
        linalg::check_dim(self.ny, theta.dim)?;
        let n = self.nx + self.ny;
        let joint = self.graph.intersect(&theta.lift(n, &range(self.nx, n)))?;
        Ok(fm_eliminate(&joint, &range(self.nx, n)))
    }

    /// `D*F(x, y)(v) = {u : (u, -v) in N((x, y); gph F)}`; empty when `-v`
    /// falls outside the shadow of the normal cone.
    pub fn coderivative(&self, x: &[Rational], y: &[Rational], v: &[Rational]) -> Result<HPoly> {
        linalg::check_dim(self.ny, v.len())?;
        let n = self.graph_normal_hpoly(x, y)?;
        let mut vals: Vec<Option<Rational>> = vec![None; self.nx];
        vals.extend(v.iter().map(|c| Some(-c)));
        Ok(n.fix_coordinates(&vals).canonicalize())
    }

    /// `N((x, y); gph F)` in constraint form over `(u, w)`.
    pub fn graph_normal_hpoly(&self, x: &[Rational], y: &[Rational]) -> Result<HPoly> {
        if !self.contains(x, y)? {
            return Err(Error::NotInGraph);
        }
        Ok(normal_cone(&self.graph, &self.point(x, y))?.to_hpoly())
    }
}

/// `(F1 + F2)(x) = F1(x) + F2(x)`.
pub fn sum_mapping(f1: &PolyMap, f2: &PolyMap) -> Result<PolyMap> {
    linalg::check_dim(f1.nx, f2.nx)?;
    linalg::check_dim(f1.ny, f2.ny)?;
    let (nx, ny) = (f1.nx, f1.ny);
    // coordinates (x, y, y1, y2)
    let n = nx + 3 * ny;
    let mut joint = f1.graph.lift(n, &[range(0, nx), range(nx + ny, nx + 2 * ny)].concat());
    let g2 = f2.graph.lift(n, &[range(0, nx), range(nx + 2 * ny, n)].concat());
    joint = joint.intersect(&g2)?;
    for i in 0..ny {
        let mut a = linalg::zeros(n);
        a[nx + i] = Rational::one();
        a[nx + ny + i] = -Rational::one();
        a[nx + 2 * ny + i] = -Rational::one();
        joint.eqs.push(Constraint::new(a, Rational::zero()));
    }
    PolyMap::new(nx, ny, fm_eliminate(&joint, &range(nx + ny, n)))
}

/// `G o F`.
pub fn compose(g: &PolyMap, f: &PolyMap) -> Result<PolyMap> {
    linalg::check_dim(f.ny, g.nx)?;
    let (nx, ny, nz) = (f.nx, f.ny, g.ny);
    let n = nx + ny + nz;
    let joint = f.graph.lift(n, &range(0, nx + ny)).intersect(&g.graph.lift(n, &range(nx, n)))?;
    PolyMap::new(nx, nz, fm_eliminate(&joint, &range(nx, nx + ny)))
}

/// `{(y1, y2) : y1 + y2 = y, y1 in F1(x), y2 in F2(x)}`.
pub fn decomposition_set(f1: &PolyMap, f2: &PolyMap, x: &[Rational], y: &[Rational]) -> Result<HPoly> {
    linalg::check_dim(f1.nx, f2.nx)?;
    linalg::check_dim(f1.ny, f2.ny)?;
    linalg::check_dim(f1.ny, y.len())?;
    let v1 = f1.evaluate(x)?;
    let v2 = f2.evaluate(x)?;
    if v1.is_empty() || v2.is_empty() {
        return Err(Error::NotInDomain);
    }
    let ny = f1.ny;
    let mut s = v1.lift(2 * ny, &range(0, ny)).intersect(&v2.lift(2 * ny, &range(ny, 2 * ny)))?;
    for i in 0..ny {
        let mut a = linalg::zeros(2 * ny);
        a[i] = Rational::one();
        a[ny + i] = Rational::one();
        s.eqs.push(Constraint::new(a, y[i].clone()));
    }
    Ok(s)
}

/// `D*(F1 + F2)(x, y)(v) = D*F1(x, y1)(v) + D*F2(x, y2)(v)`.
pub fn check_sum_rule(
    f1: &PolyMap,
    f2: &PolyMap,
    x: &[Rational],
    y: &[Rational],
    y1: &[Rational],
    y2: &[Rational],
    v: &[Rational],
) -> Result<RuleReport> {
    let s = decomposition_set(f1, f2, x, y)?;
    let mut split = y1.to_vec();
    split.extend_from_slice(y2);
    if !s.contains(&split)? {
        return Err(Error::NotADecomposition);
    }
    let lhs = sum_mapping(f1, f2)?.coderivative(x, y, v)?;
    let rhs = minkowski_sum(&f1.coderivative(x, y1, v)?, &f2.coderivative(x, y2, v)?)?;
    RuleReport::compare("sum", &lhs, &rhs)
}

/// `M(x, z) = F(x) n G^{-1}(z)`.
pub fn chain_fiber(g: &PolyMap, f: &PolyMap, x: &[Rational], z: &[Rational]) -> Result<HPoly> {
    linalg::check_dim(f.ny, g.nx)?;
    linalg::check_dim(g.ny, z.len())?;
    let mut vals: Vec<Option<Rational>> = vec![None; g.nx];
    vals.extend(z.iter().cloned().map(Some));
    f.evaluate(x)?.intersect(&g.graph.fix_coordinates(&vals))
}

/// In constraint form over `(u, v)`: `(u, -v) in N`, where `N` lives over
/// `(u, w)` with `w` of length `v`'s.
fn negated_slice_system(n: &HPoly, nu: usize) -> HPoly {
    let flip = |c: &Constraint| {
        let mut a = c.a.clone();
        for e in &mut a[nu..] {
            *e = -&*e;
        }
        Constraint::new(a, c.b.clone())
    };
    HPoly { dim: n.dim, ineqs: n.ineqs.iter().map(flip).collect(), eqs: n.eqs.iter().map(flip).collect() }
}

/// `D*(G o F)(x, z)(w) = D*F(x, y)(D*G(y, z)(w))`.
pub fn check_chain_rule(
    g: &PolyMap,
    f: &PolyMap,
    x: &[Rational],
    z: &[Rational],
    y: &[Rational],
    w: &[Rational],
) -> Result<RuleReport> {
    linalg::check_dim(f.ny, g.nx)?;
    linalg::check_dim(g.ny, w.len())?;
    if !f.contains(x, y)? || !g.contains(y, z)? {
        return Err(Error::NotInGraph);
    }
    let lhs = compose(g, f)?.coderivative(x, z, w)?;

    let (nx, ny) = (f.nx, f.ny);
    // joint over (u, v): (u, -v) in N_F and (v, -w) in N_G
    let nf = negated_slice_system(&f.graph_normal_hpoly(x, y)?, nx);
    let ng = g.graph_normal_hpoly(y, z)?;
    let mut vals: Vec<Option<Rational>> = vec![None; ny];
    vals.extend(w.iter().map(|c| Some(-c)));
    let dg = ng.fix_coordinates(&vals);
    let joint = nf.intersect(&dg.lift(nx + ny, &range(nx, nx + ny)))?;
    let rhs = fm_eliminate(&joint, &range(nx, nx + ny));
    RuleReport::compare("chain", &lhs, &rhs)
}

/// `N(x; F^{-1}(theta)) = D*F(x, y)(N(y; theta))`.
pub fn check_preimage_rule(f: &PolyMap, theta: &HPoly, x: &[Rational], y: &[Rational]) -> Result<RuleReport> {
    if !f.contains(x, y)? {
        return Err(Error::NotInGraph);
    }
    if !theta.contains(y)? {
        return Err(Error::NotInSet);
    }
    let pre = f.preimage(theta)?;
    let lhs = normal_cone(&pre, x)?.to_genset();

    let (nx, ny) = (f.nx, f.ny);
    let nf = negated_slice_system(&f.graph_normal_hpoly(x, y)?, nx);
    let nt = normal_cone(theta, y)?.to_hpoly();
    let joint = nf.intersect(&nt.lift(nx + ny, &range(nx, nx + ny)))?;
    let rhs = fm_eliminate(&joint, &range(nx, nx + ny));
    RuleReport::compare("preimage", &lhs, &rhs)
}

/// Up to `k` distinct points of a nonempty polyhedron: a relative-interior
/// point first, then vertices, then midpoints of vertex pairs and points
/// pushed along rays and lines.
pub fn sample_points(p: &HPoly, k: usize) -> Result<Vec<Vector>> {
    let mut out = vec![relative_interior_point(p)?];
    let g = dd_convert(p);
    let push = |v: Vector, out: &mut Vec<Vector>| {
        if out.len() < k && !out.contains(&v) {
            out.push(v);
        }
    };
    for q in &g.points {
        push(q.clone(), &mut out);
    }
    for r in g.rays.iter().chain(&g.lines) {
        push(linalg::add(&g.points[0], r), &mut out);
    }
    for l in &g.lines {
        push(linalg::sub(&g.points[0], l), &mut out);
    }
    for i in 0..g.points.len() {
        for j in i + 1..g.points.len() {
            push(linalg::midpoint(&g.points[i], &g.points[j]), &mut out);
        }
    }
    out.truncate(k);
    Ok(out)
}
