//! Exact two-phase simplex over `{x : Ax <= b, Cx = d}` with free variables.
//!
//! Pivoting follows Bland's rule, which terminates in exact arithmetic.
//! Every outcome carries a certificate: dual multipliers at an optimum, a
//! Farkas combination for infeasible systems (read off the phase-one
//! multipliers), and an improving ray for unbounded problems.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::linalg::{self, Vector};
use super::scalar::Rational;
use crate::error::{Error, Result};
use crate::polyhedra::HPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Nonnegative multipliers on inequalities and free multipliers on
/// equalities, indexed like the polyhedron's constraint lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multipliers {
    pub ineq: Vector,
    pub eq: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum LpResult {
    /// For `Max`: `c = A^T ineq + C^T eq` and `value = b.ineq + d.eq`.
    /// For `Min`: `-c = A^T ineq + C^T eq` and `value = -(b.ineq + d.eq)`.
    Optimal { value: Rational, point: Vector, duals: Multipliers },
    /// `A^T ineq + C^T eq = 0` and `b.ineq + d.eq < 0`.
    Infeasible { farkas: Multipliers },
    /// `point` is feasible; `ray` is a recession direction with strictly
    /// improving objective.
    Unbounded { point: Vector, ray: Vector },
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal { .. } => LpStatus::Optimal,
            LpResult::Infeasible { .. } => LpStatus::Infeasible,
            LpResult::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&Vector> {
        match self {
            LpResult::Optimal { point, .. } | LpResult::Unbounded { point, .. } => Some(point),
            LpResult::Infeasible { .. } => None,
        }
    }

    /// Re-checks the certificate against the problem data exactly.
    pub fn verify(&self, objective: &[Rational], sense: Sense, p: &HPoly) -> bool {
        match self {
            LpResult::Optimal { value, point, duals } => {
                if !p.contains_unchecked(point) || &linalg::dot(objective, point) != value {
                    return false;
                }
                if duals.ineq.len() != p.ineqs.len() || duals.eq.len() != p.eqs.len() {
                    return false;
                }
                if duals.ineq.iter().any(Rational::is_negative) {
                    return false;
                }
                let (comb, rhs) = combine(p, duals);
                match sense {
                    Sense::Max => comb == objective && &rhs == value,
                    Sense::Min => comb == linalg::neg(objective) && -rhs == *value,
                }
            }
            LpResult::Infeasible { farkas } => {
                if farkas.ineq.len() != p.ineqs.len() || farkas.eq.len() != p.eqs.len() {
                    return false;
                }
                if farkas.ineq.iter().any(Rational::is_negative) {
                    return false;
                }
                let (comb, rhs) = combine(p, farkas);
                linalg::is_zero(&comb) && rhs.is_negative()
            }
            LpResult::Unbounded { point, ray } => {
                let improving = linalg::dot(objective, ray);
                let ok_dir = match sense {
                    Sense::Max => improving.is_positive(),
                    Sense::Min => improving.is_negative(),
                };
                ok_dir && p.contains_unchecked(point) && p.is_recession_direction(ray)
            }
        }
    }
}

fn combine(p: &HPoly, m: &Multipliers) -> (Vector, Rational) {
    let mut comb = linalg::zeros(p.dim);
    let mut rhs = Rational::zero();
    for (c, w) in p.ineqs.iter().zip(&m.ineq).chain(p.eqs.iter().zip(&m.eq)) {
        if !w.is_zero() {
            comb = linalg::axpy(&comb, w, &c.a);
            rhs += w * &c.b;
        }
    }
    (comb, rhs)
}

/// Solves `sense c.x` over `p`.
pub fn lp_solve(objective: &[Rational], sense: Sense, p: &HPoly) -> Result<LpResult> {
    linalg::check_dim(p.dim, objective.len())?;
    let max_obj: Vector = match sense {
        Sense::Max => objective.to_vec(),
        Sense::Min => linalg::neg(objective),
    };
    let mut d = Dictionary::build(p);
    let result = match d.phase_one()? {
        Some(farkas) => LpResult::Infeasible { farkas },
        None => match d.phase_two(&max_obj)? {
            None => {
                let point = d.primal();
                let value = linalg::dot(objective, &point);
                LpResult::Optimal { value, point, duals: d.multipliers() }
            }
            Some(ray) => LpResult::Unbounded { point: d.primal(), ray },
        },
    };
    debug_assert!(result.verify(objective, sense, p), "LP certificate failed verification");
    Ok(result)
}

/// A feasible point, or `None` when the polyhedron is empty.
pub fn feasible_point(p: &HPoly) -> Option<Vector> {
    let mut d = Dictionary::build(p);
    match d.phase_one() {
        Ok(None) => Some(d.primal()),
        _ => None,
    }
}

pub fn maximize(objective: &[Rational], p: &HPoly) -> Result<LpResult> {
    lp_solve(objective, Sense::Max, p)
}

pub fn minimize(objective: &[Rational], p: &HPoly) -> Result<LpResult> {
    lp_solve(objective, Sense::Min, p)
}

const ITERATION_LIMIT: usize = 1_000_000;

/// Integer with an inline fast path, used for fraction-free pivoting.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    fn zero() -> Int {
        Int::Small(0)
    }

    fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(b),
        }
    }

    fn big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    fn signum(&self) -> i8 {
        match self {
            Int::Small(v) => v.signum() as i8,
            Int::Big(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    fn neg(&self) -> Int {
        match self {
            Int::Small(v) => Int::from_i128(-(*v as i128)),
            Int::Big(b) => Int::from_big(-b),
        }
    }

    fn mul(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(*a as i128 * *b as i128),
            _ => Int::from_big(self.big() * o.big()),
        }
    }

    fn add(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(*a as i128 + *b as i128),
            _ => Int::from_big(self.big() + o.big()),
        }
    }

    /// `(a p - f q) / d`, where the division is known to be exact.
    fn bareiss(a: &Int, p: &Int, f: &Int, q: &Int, d: &Int) -> Int {
        if let (Int::Small(a), Int::Small(p), Int::Small(f), Int::Small(q), Int::Small(d)) = (a, p, f, q, d) {
            if let Some(v) = (*a as i128 * *p as i128).checked_sub(*f as i128 * *q as i128) {
                return Int::from_i128(v / *d as i128);
            }
        }
        Int::from_big((a.big() * p.big() - f.big() * q.big()) / d.big())
    }

    fn over(&self, den: &Int) -> Rational {
        match (self, den) {
            (Int::Small(n), Int::Small(d)) => Rational::new(*n, *d),
            _ => Rational::from_bigints(self.big(), den.big()),
        }
    }

    fn of(r: &Rational) -> Int {
        debug_assert!(r.is_integer());
        Int::from_big(r.numer())
    }
}

/// `a/b < c/d` for positive `b` and `d`.
fn ratio_less(a: &Int, b: &Int, c: &Int, d: &Int) -> bool {
    if let (Int::Small(a), Int::Small(b), Int::Small(c), Int::Small(d)) = (a, b, c, d) {
        return (*a as i128 * *d as i128) < (*c as i128 * *b as i128);
    }
    let l = a.mul(d);
    let r = c.mul(b);
    l.add(&r.neg()).signum() < 0
}

/// A positive factor that turns `v` into an integer vector, and the result.
fn integral(v: &[Rational]) -> (Rational, Vec<Int>) {
    if let Some(r) = integral_small(v) {
        return r;
    }
    match v.iter().position(|x| !x.is_zero()) {
        None => (Rational::one(), v.iter().map(|_| Int::zero()).collect()),
        Some(k) => {
            let p = linalg::primitive(v);
            let s = &p[k] / &v[k];
            (s, p.iter().map(Int::of).collect())
        }
    }
}

fn integral_small(v: &[Rational]) -> Option<(Rational, Vec<Int>)> {
    let parts: Vec<(i64, i64)> = v.iter().map(Rational::small_parts).collect::<Option<_>>()?;
    let mut l: i64 = 1;
    for &(_, d) in &parts {
        l = l.checked_mul(d / gcd(l, d))?;
    }
    let mut ints = Vec::with_capacity(parts.len());
    let mut g: i64 = 0;
    for &(n, d) in &parts {
        let x = n.checked_mul(l / d).filter(|&x| x != i64::MIN)?;
        g = gcd(g, x);
        ints.push(x);
    }
    if g == 0 {
        return Some((Rational::one(), vec![Int::zero(); v.len()]));
    }
    Some((Rational::new(l, g), ints.into_iter().map(|x| Int::Small(x / g)).collect()))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Artificial,
    Free,
    Slack,
    Fixed,
}

/// Simplex dictionary in fraction-free form. With `D = det` each row reads
/// `basic = (rhs + sum_j row[j] * cols[j]) / D` and the objective reads
/// `z = (obj_val + sum_j obj[j] * cols[j]) / (D * obj_scale)`, maximized.
///
/// Variable ids: `0` is the phase-one artificial, `1..=n` the free
/// coordinates, then one slack `s_i >= 0` per inequality and one slack
/// `t_k`, held at zero, per equality. Constraint `i` is stored scaled by
/// `row_scale[i]` so that its data is integral.
struct Dictionary {
    n: usize,
    m: usize,
    p: usize,
    det: Int,
    cols: Vec<usize>,
    basic: Vec<usize>,
    rows: Vec<Vec<Int>>,
    rhs: Vec<Int>,
    obj: Vec<Int>,
    obj_val: Int,
    obj_scale: Rational,
    row_scale: Vec<Rational>,
}

impl Dictionary {
    fn build(poly: &HPoly) -> Self {
        let n = poly.dim;
        let m = poly.ineqs.len();
        let mut rows = Vec::with_capacity(m + poly.eqs.len());
        let mut rhs = Vec::with_capacity(rows.capacity());
        let mut row_scale = Vec::with_capacity(rows.capacity());
        for c in poly.ineqs.iter().chain(&poly.eqs) {
            let mut v = c.a.clone();
            v.push(c.b.clone());
            let (s, mut ints) = integral(&v);
            rhs.push(ints.pop().expect("rhs entry"));
            rows.push(ints.iter().map(Int::neg).collect());
            row_scale.push(s);
        }
        Dictionary {
            n,
            m,
            p: poly.eqs.len(),
            det: Int::Small(1),
            cols: (1..=n).collect(),
            basic: (n + 1..=n + rows.len()).collect(),
            rows,
            rhs,
            obj: vec![Int::zero(); n],
            obj_val: Int::zero(),
            obj_scale: Rational::one(),
            row_scale,
        }
    }

    fn kind(&self, v: usize) -> Kind {
        if v == 0 {
            Kind::Artificial
        } else if v <= self.n {
            Kind::Free
        } else if v <= self.n + self.m {
            Kind::Slack
        } else {
            Kind::Fixed
        }
    }

    fn restricted(&self, v: usize) -> bool {
        matches!(self.kind(v), Kind::Artificial | Kind::Slack)
    }

    /// Exchanges the basic variable of row `r` with the nonbasic variable
    /// of column `e`.
    fn pivot(&mut self, r: usize, e: usize) {
        let piv = self.rows[r][e].clone();
        let flip = piv.signum() < 0;
        let orient = |x: Int| if flip { x.neg() } else { x };
        let d = self.det.clone();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        let update = |row: &mut Vec<Int>, val: &mut Int| {
            let f = row[e].clone();
            for (j, a) in row.iter_mut().enumerate() {
                if j == e || (a.is_zero() && (f.is_zero() || prow[j].is_zero())) {
                    continue;
                }
                *a = orient(Int::bareiss(a, &piv, &f, &prow[j], &d));
            }
            *val = orient(Int::bareiss(val, &piv, &f, &prhs, &d));
            row[e] = orient(f);
        };
        for (i, (row, val)) in self.rows.iter_mut().zip(self.rhs.iter_mut()).enumerate() {
            if i != r {
                update(row, val);
            }
        }
        update(&mut self.obj, &mut self.obj_val);
        let mut new_row: Vec<Int> = prow.iter().map(|x| orient(x.neg())).collect();
        new_row[e] = orient(d.clone());
        self.rows[r] = new_row;
        self.rhs[r] = orient(prhs.neg());
        self.det = orient(piv);
        std::mem::swap(&mut self.basic[r], &mut self.cols[e]);
    }

    fn drop_rows(&mut self, dead: &[usize]) {
        for &r in dead.iter().rev() {
            self.rows.remove(r);
            self.rhs.remove(r);
            self.basic.remove(r);
        }
    }

    /// Installs the objective `sum_v cost(v) * v`.
    fn set_objective(&mut self, cost: impl Fn(usize) -> Rational) {
        let costs: Vec<Rational> = (0..=self.n + self.m + self.p).map(&cost).collect();
        let (scale, ints) = integral(&costs);
        self.obj_scale = scale;
        self.obj = self.cols.iter().map(|&v| ints[v].mul(&self.det)).collect();
        self.obj_val = Int::zero();
        for ((row, val), &b) in self.rows.iter().zip(&self.rhs).zip(&self.basic) {
            let cb = &ints[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in self.obj.iter_mut().zip(row) {
                if !t.is_zero() {
                    *o = o.add(&cb.mul(t));
                }
            }
            self.obj_val = self.obj_val.add(&cb.mul(val));
        }
    }

    /// Bland's rule on the installed objective. Returns the entering column
    /// and its direction when the objective is unbounded.
    fn iterate(&mut self) -> Result<Option<(usize, bool)>> {
        for _ in 0..ITERATION_LIMIT {
            let mut entering: Option<(usize, bool)> = None;
            for (j, &v) in self.cols.iter().enumerate() {
                let s = self.obj[j].signum();
                let candidate = match self.kind(v) {
                    Kind::Fixed => None,
                    Kind::Free if s < 0 => Some((j, false)),
                    _ if s > 0 => Some((j, true)),
                    _ => None,
                };
                if let Some(c) = candidate {
                    if entering.is_none_or(|(k, _)| v < self.cols[k]) {
                        entering = Some(c);
                    }
                }
            }
            let Some((e, up)) = entering else {
                return Ok(None);
            };
            let mut leave: Option<(usize, Int)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !self.restricted(self.basic[i]) {
                    continue;
                }
                let rate = if up { row[e].neg() } else { row[e].clone() };
                if rate.signum() <= 0 {
                    continue;
                }
                let better = match &leave {
                    None => true,
                    Some((li, lrate)) => {
                        let (a, c) = (&self.rhs[i], &self.rhs[*li]);
                        ratio_less(a, &rate, c, lrate)
                            || (!ratio_less(c, lrate, a, &rate) && self.basic[i] < self.basic[*li])
                    }
                };
                if better {
                    leave = Some((i, rate));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Some((e, up)));
            };
            self.pivot(r, e);
        }
        Err(Error::Internal("simplex iteration limit reached".into()))
    }

    /// Minus the reduced costs of the slack columns, mapped back to the
    /// unscaled constraints. Basic slacks get zero.
    fn multipliers(&self) -> Multipliers {
        let mut w = self.zero_multipliers();
        let den = &self.obj_scale;
        for (j, &v) in self.cols.iter().enumerate() {
            let slot = match self.kind(v) {
                Kind::Slack => v - self.n - 1,
                Kind::Fixed => v - self.n - 1,
                _ => continue,
            };
            let y = -(self.obj[j].over(&self.det) * &self.row_scale[slot] / den);
            if slot < self.m {
                w.ineq[slot] = y;
            } else {
                w.eq[slot - self.m] = y;
            }
        }
        w
    }

    fn zero_multipliers(&self) -> Multipliers {
        Multipliers { ineq: linalg::zeros(self.m), eq: linalg::zeros(self.p) }
    }

    /// Brings the free coordinates into the basis, moves the equality
    /// slacks out of it and then minimizes an artificial to reach a
    /// feasible basis. Returns a Farkas certificate when there is none.
    fn phase_one(&mut self) -> Result<Option<Multipliers>> {
        let mut dead = Vec::new();
        for r in 0..self.rows.len() {
            if self.kind(self.basic[r]) != Kind::Fixed {
                continue;
            }
            let pick = |want: Kind| {
                (0..self.cols.len()).find(|&j| self.kind(self.cols[j]) == want && !self.rows[r][j].is_zero())
            };
            if let Some(j) = pick(Kind::Free).or_else(|| pick(Kind::Slack)) {
                self.pivot(r, j);
            } else if self.rhs[r].is_zero() {
                dead.push(r);
            } else {
                // t_k equals a nonzero constant plus fixed slacks
                let mut w = self.zero_multipliers();
                let one = if self.rhs[r].signum() > 0 { -Rational::one() } else { Rational::one() };
                let slot = |v: usize| v - self.n - self.m - 1;
                let k = slot(self.basic[r]);
                w.eq[k] = &one * &self.row_scale[self.m + k];
                for (j, &v) in self.cols.iter().enumerate() {
                    if self.kind(v) == Kind::Fixed && !self.rows[r][j].is_zero() {
                        let t = self.rows[r][j].over(&self.det);
                        w.eq[slot(v)] = -(t * &one) * &self.row_scale[self.m + slot(v)];
                    }
                }
                return Ok(Some(w));
            }
        }
        self.drop_rows(&dead);
        for j in 0..self.cols.len() {
            if self.kind(self.cols[j]) != Kind::Free {
                continue;
            }
            let r = (0..self.rows.len())
                .filter(|&r| self.kind(self.basic[r]) == Kind::Slack && !self.rows[r][j].is_zero())
                .min_by_key(|&r| self.basic[r]);
            if let Some(r) = r {
                self.pivot(r, j);
            }
        }

        let mut worst: Option<usize> = None;
        for r in 0..self.rows.len() {
            if !self.restricted(self.basic[r]) || self.rhs[r].signum() >= 0 {
                continue;
            }
            worst = match worst {
                Some(w) if !ratio_less(&self.rhs[r], &Int::Small(1), &self.rhs[w], &Int::Small(1)) => Some(w),
                _ => Some(r),
            };
        }
        let Some(worst) = worst else {
            return Ok(None);
        };
        let a = self.cols.len();
        self.cols.push(0);
        let det = self.det.clone();
        for (row, &b) in self.rows.iter_mut().zip(&self.basic) {
            let slack = b > self.n && b <= self.n + self.m;
            row.push(if slack { det.clone() } else { Int::zero() });
        }
        self.obj.push(Int::zero());
        self.pivot(worst, a);
        self.set_objective(|v| if v == 0 { -Rational::one() } else { Rational::zero() });
        if self.iterate()?.is_some() {
            return Err(Error::Internal("phase one cannot be unbounded".into()));
        }
        if self.obj_val.signum() < 0 {
            return Ok(Some(self.multipliers()));
        }
        if let Some(r) = self.basic.iter().position(|&b| b == 0) {
            let j = (0..self.cols.len())
                .filter(|&j| self.kind(self.cols[j]) == Kind::Slack && !self.rows[r][j].is_zero())
                .min_by_key(|&j| self.cols[j]);
            match j {
                Some(j) => self.pivot(r, j),
                None => self.drop_rows(&[r]),
            }
        }
        let a = self.cols.iter().position(|&v| v == 0).expect("artificial is nonbasic");
        self.cols.remove(a);
        self.obj.remove(a);
        for row in &mut self.rows {
            row.remove(a);
        }
        Ok(None)
    }

    /// Maximizes `c.x` from a feasible basis. Returns an improving ray
    /// when unbounded.
    fn phase_two(&mut self, c: &[Rational]) -> Result<Option<Vector>> {
        let n = self.n;
        self.set_objective(|v| if (1..=n).contains(&v) { c[v - 1].clone() } else { Rational::zero() });
        let Some((e, up)) = self.iterate()? else {
            return Ok(None);
        };
        let sign = |x: Rational| if up { x } else { -x };
        let mut ray = linalg::zeros(n);
        if self.kind(self.cols[e]) == Kind::Free {
            ray[self.cols[e] - 1] = sign(Rational::one());
        }
        for (row, &b) in self.rows.iter().zip(&self.basic) {
            if self.kind(b) == Kind::Free {
                ray[b - 1] = sign(row[e].over(&self.det));
            }
        }
        Ok(Some(ray))
    }

    fn primal(&self) -> Vector {
        let mut x = linalg::zeros(self.n);
        for (val, &b) in self.rhs.iter().zip(&self.basic) {
            if self.kind(b) == Kind::Free {
                x[b - 1] = val.over(&self.det);
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::linalg::ivec;
    use crate::polyhedra::HPoly;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn box_minimum() {
        let sq = HPoly::unit_box(2);
        let c = ivec(&[1, 0]);
        let r = lp_solve(&c, Sense::Min, &sq).unwrap();
        assert_eq!(r.value(), Some(&q(0)));
        assert!(r.verify(&c, Sense::Min, &sq));
    }

    #[test]
    fn contradictory_bounds_give_farkas() {
        // x <= -1, -x <= -1
        let p = HPoly::from_i64(1, &[(&[1], -1), (&[-1], -1)], &[]);
        let c = ivec(&[0]);
        let r = lp_solve(&c, Sense::Min, &p).unwrap();
        let LpResult::Infeasible { farkas } = &r else { panic!("expected infeasible") };
        assert!(r.verify(&c, Sense::Min, &p));
        // proportional to (1, 1)
        assert_eq!(farkas.ineq[0], farkas.ineq[1]);
        assert!(farkas.ineq[0].is_positive());
    }

    #[test]
    fn half_line_is_unbounded() {
        let p = HPoly::from_i64(1, &[(&[-1], 0)], &[]);
        let c = ivec(&[-1]);
        let r = lp_solve(&c, Sense::Min, &p).unwrap();
        let LpResult::Unbounded { ray, .. } = &r else { panic!("expected unbounded") };
        assert_eq!(ray, &ivec(&[1]));
        assert!(r.verify(&c, Sense::Min, &p));
    }

    #[test]
    fn equality_constrained_max_with_duals() {
        // max x1 + 2 x2 s.t. x1 + x2 = 1, x >= 0
        let p = HPoly::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)], &[(&[1, 1], 1)]);
        let c = ivec(&[1, 2]);
        let r = maximize(&c, &p).unwrap();
        assert_eq!(r.value(), Some(&q(2)));
        assert_eq!(r.point(), Some(&ivec(&[0, 1])));
        assert!(r.verify(&c, Sense::Max, &p));
    }

    #[test]
    fn free_variables_and_degenerate_vertex() {
        // cone x2 >= |x1| minimised in x2, plus redundant copies
        let p = HPoly::from_i64(
            2,
            &[(&[1, -1], 0), (&[-1, -1], 0), (&[0, -1], 0), (&[1, -1], 0), (&[2, -2], 0)],
            &[],
        );
        let c = ivec(&[0, 1]);
        let r = minimize(&c, &p).unwrap();
        assert_eq!(r.value(), Some(&q(0)));
        assert!(r.verify(&c, Sense::Min, &p));
        let r = maximize(&c, &p).unwrap();
        assert_eq!(r.status(), LpStatus::Unbounded);
        assert!(r.verify(&c, Sense::Max, &p));
    }

    #[test]
    fn whole_space_objective() {
        let p = HPoly::whole_space(3);
        let r = minimize(&ivec(&[0, 0, 0]), &p).unwrap();
        assert_eq!(r.value(), Some(&q(0)));
        let r = minimize(&ivec(&[0, 1, 0]), &p).unwrap();
        assert_eq!(r.status(), LpStatus::Unbounded);
        assert!(r.verify(&ivec(&[0, 1, 0]), Sense::Min, &p));
    }

    #[test]
    fn infeasible_equalities() {
        let p = HPoly::from_i64(2, &[], &[(&[1, 1], 1), (&[2, 2], 3)]);
        let c = ivec(&[1, 0]);
        let r = minimize(&c, &p).unwrap();
        assert_eq!(r.status(), LpStatus::Infeasible);
        assert!(r.verify(&c, Sense::Min, &p));
    }

    #[test]
    fn dimension_mismatch() {
        let p = HPoly::whole_space(2);
        assert!(matches!(
            minimize(&ivec(&[1]), &p),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let p = HPoly::from_i64(
            3,
            &[(&[1, 1, 1], 3), (&[-1, 0, 0], 0), (&[0, -1, 0], 0), (&[0, 0, -1], 0), (&[1, -1, 0], 1)],
            &[],
        );
        let c = ivec(&[1, 1, 0]);
        let a = maximize(&c, &p).unwrap();
        let b = maximize(&c, &p).unwrap();
        assert_eq!(a, b);
        assert!(a.verify(&c, Sense::Max, &p));
    }
}
