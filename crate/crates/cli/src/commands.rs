//! One function per compute command. Each returns the JSON to print and
//! whether the command counts as passing.

use serde::Serialize;
use serde_json::{json, Value};

use polycalc_core::arith::linalg::Vector;
use polycalc_core::function::{sublevel_normal_cone, PolyFunc};
use polycalc_core::mapping::{compose, sum_mapping, PolyMap};
use polycalc_core::normal::normal_cone;
use polycalc_core::ovf::OvfInstance;
use polycalc_core::polyhedra::{relative_interior_point, HPoly};
use polycalc_core::separation::{codim, gpcs_to_pcs, separate};
use polycalc_core::{Error, Rational};

use crate::input::CliResult;

pub struct Output {
    pub value: Value,
    pub ok: bool,
}

fn ok<T: Serialize>(v: &T) -> CliResult<Output> {
    Ok(Output { value: serde_json::to_value(v).expect("serializable"), ok: true })
}

fn tidy(mut m: PolyMap) -> PolyMap {
    m.graph = m.graph.minimized();
    m
}

pub fn normal_cone_cmd(p: &HPoly, x: &[Rational]) -> CliResult<Output> {
    ok(&normal_cone(p, x)?.to_genset().normalized())
}

pub fn subdiff(f: &PolyFunc, x: &[Rational]) -> CliResult<Output> {
    ok(&f.subdifferential(x)?.minimized())
}

pub fn singular_subdiff(f: &PolyFunc, x: &[Rational]) -> CliResult<Output> {
    ok(&f.singular_subdifferential(x)?.to_genset().normalized())
}

pub fn coderivative(f: &PolyMap, x: &[Rational], y: &[Rational], v: &[Rational]) -> CliResult<Output> {
    ok(&f.coderivative(x, y, v)?.minimized())
}

pub fn sum_map(f1: &PolyMap, f2: &PolyMap) -> CliResult<Output> {
    ok(&tidy(sum_mapping(f1, f2)?))
}

/// `g o f`.
pub fn compose_map(g: &PolyMap, f: &PolyMap) -> CliResult<Output> {
    ok(&tidy(compose(g, f)?))
}

pub fn preimage(f: &PolyMap, theta: &HPoly) -> CliResult<Output> {
    ok(&f.preimage(theta)?.minimized())
}

/// `gamma` defaults to `f(x)`.
pub fn sublevel_cone(f: &PolyFunc, gamma: Option<Rational>, x: &[Rational]) -> CliResult<Output> {
    let gamma = match gamma {
        Some(g) => g,
        None => f.evaluate(x)?.finite().cloned().ok_or(Error::NotInDomain)?,
    };
    ok(&sublevel_normal_cone(f, &gamma, x)?.to_genset().normalized())
}

/// The function itself, or its value at `x`.
pub fn mu(inst: &OvfInstance, x: Option<&Vector>) -> CliResult<Output> {
    let m = inst.mu_function()?;
    match x {
        Some(x) => ok(&json!({ "value": m.evaluate(x)? })),
        None => ok(&PolyFunc { nx: m.nx, epi: m.epi.minimized() }),
    }
}

pub fn solution_set(inst: &OvfInstance, x: &[Rational]) -> CliResult<Output> {
    ok(&inst.solution_set(x)?.minimized())
}

/// Checks the subdifferential formula for `mu` at `x` with the solution
/// `y`, by default a relative-interior point of `S(x)`.
pub fn ovf_subdiff(inst: &OvfInstance, x: &[Rational], y: Option<&Vector>) -> CliResult<Output> {
    let y = match y {
        Some(y) => y.clone(),
        None => relative_interior_point(&inst.solution_set(x)?)?,
    };
    let report = inst.check_ovf_rule(x, &y)?.with_digest(&(inst, x, &y));
    Ok(Output { ok: report.passed(), value: serde_json::to_value(&report).expect("serializable") })
}

pub fn separate_cmd(p: &HPoly, omega: &HPoly) -> CliResult<Output> {
    ok(&separate(p, omega)?)
}

pub fn to_pcs(q: &HPoly) -> CliResult<Output> {
    ok(&json!({ "pcs": gpcs_to_pcs(q), "codim": codim(q) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use polycalc_core::arith::linalg::ivec;

    fn abs() -> PolyFunc {
        PolyFunc::new(1, HPoly::from_i64(2, &[(&[1, -1], 0), (&[-1, -1], 0)], &[])).unwrap()
    }

    #[test]
    fn subdifferential_of_abs() {
        let out = subdiff(&abs(), &ivec(&[0])).unwrap();
        assert!(out.ok);
        let h: HPoly = serde_json::from_value(out.value).unwrap();
        assert!(h.contains(&ivec(&[1])).unwrap() && h.contains(&ivec(&[-1])).unwrap());
        assert!(!h.contains(&ivec(&[2])).unwrap());
    }

    #[test]
    fn normal_cone_output() {
        let p = HPoly::from_i64(2, &[(&[1, 0], 0), (&[0, 1], 0)], &[]);
        let out = normal_cone_cmd(&p, &ivec(&[0, 0])).unwrap();
        assert_eq!(out.value["rays"], json!([["0", "1"], ["1", "0"]]));
        assert!(matches!(normal_cone_cmd(&p, &ivec(&[1, 0])), Err(crate::input::CliError::Precondition(Error::NotInSet))));
    }

    #[test]
    fn pcs_conversion() {
        let m = HPoly::from_i64(2, &[], &[(&[1, 1], 0)]);
        let out = to_pcs(&m).unwrap();
        assert_eq!(out.value["codim"], json!(1));
        assert_eq!(out.value["pcs"]["ineqs"].as_array().unwrap().len(), 2);
    }
}
