//! The optimal value function `mu(x) = inf { phi(x, y) : y in F(x) }`.

use serde::{Deserialize, Serialize};

use crate::arith::linalg;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::function::{FnValue, PolyFunc};
use crate::mapping::PolyMap;
use crate::polyhedra::{fm_eliminate, Constraint, HPoly};
use crate::report::RuleReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOvf")]
pub struct OvfInstance {
    pub phi: PolyFunc,
    #[serde(rename = "F")]
    pub f: PolyMap,
}

#[derive(Deserialize)]
struct RawOvf {
    phi: PolyFunc,
    #[serde(rename = "F")]
    f: PolyMap,
}

impl TryFrom<RawOvf> for OvfInstance {
    type Error = Error;
    fn try_from(r: RawOvf) -> Result<Self> {
        OvfInstance::new(r.phi, r.f)
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

impl OvfInstance {
    /// Checks dimensions and that `mu` is a proper polyhedral function.
    pub fn new(phi: PolyFunc, f: PolyMap) -> Result<Self> {
        linalg::check_dim(f.nx + f.ny, phi.nx)?;
        let inst = OvfInstance { phi, f };
        inst.mu_function()?;
        Ok(inst)
    }

    /// `{(x, y, t) : (x, y, t) in epi phi, (x, y) in gph F}`.
    fn joint(&self) -> HPoly {
        let n = self.phi.nx;
        self.phi
            .epi
            .intersect(&self.f.graph.lift(n + 1, &range(0, n)))
            .expect("matching dimensions")
    }

    /// `epi mu` as the projection of the joint system onto `(x, t)`.
    pub fn mu_function(&self) -> Result<PolyFunc> {
        let (nx, ny) = (self.f.nx, self.f.ny);
        let epi = fm_eliminate(&self.joint(), &range(nx, nx + ny));
        let mut down = linalg::zeros(nx + 1);
        down[nx] = -Rational::one();
        if !epi.is_empty() && epi.is_recession_direction(&down) {
            return Err(Error::ImproperValue);
        }
        PolyFunc::new(nx, epi)
    }

    /// `S(x) = {y in F(x) : phi(x, y) <= mu(x)}`.
    pub fn solution_set(&self, x: &[Rational]) -> Result<HPoly> {
        let mu = self.mu_function()?;
        let value = match mu.evaluate(x)? {
            FnValue::Finite(v) => v,
            FnValue::PosInf => return Err(Error::NotInDomain),
        };
        let mut vals: Vec<Option<Rational>> = x.iter().cloned().map(Some).collect();
        vals.extend(std::iter::repeat(None).take(self.f.ny));
        vals.push(Some(value));
        let s = self.joint().fix_coordinates(&vals);
        if s.is_empty() {
            return Err(Error::Internal("finite infimum not attained".into()));
        }
        Ok(s)
    }

    /// `d mu(x) = union over (u, v) in d phi(x, y) of u + D*F(x, y)(v)`.
    pub fn check_ovf_rule(&self, x: &[Rational], y: &[Rational]) -> Result<RuleReport> {
        if !self.solution_set(x)?.contains(y)? {
            return Err(Error::NotASolution);
        }
        let (nx, ny) = (self.f.nx, self.f.ny);
        let lhs = self.mu_function()?.subdifferential(x)?;

        let mut xy = x.to_vec();
        xy.extend_from_slice(y);
        let dphi = self.phi.subdifferential(&xy)?;
        let nf = self.f.graph_normal_hpoly(x, y)?;
        // joint over (w, u, v): (u, v) in d phi and (w - u, -v) in N
        let dim = 2 * nx + ny;
        let mut joint = dphi.lift(dim, &range(nx, dim));
        let map = |c: &Constraint| {
            let mut a = linalg::zeros(dim);
            for i in 0..nx {
                a[i] = c.a[i].clone();
                a[nx + i] = -&c.a[i];
            }
            for j in 0..ny {
                a[2 * nx + j] = -&c.a[nx + j];
            }
            Constraint::new(a, c.b.clone())
        };
        joint.ineqs.extend(nf.ineqs.iter().map(map));
        joint.eqs.extend(nf.eqs.iter().map(map));
        let rhs = fm_eliminate(&joint, &range(nx, dim));
        RuleReport::compare("ovf", &lhs, &rhs)
    }
}
