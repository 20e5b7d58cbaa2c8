//! The seeded verification sweep: generates instances, runs each rule
//! checker and collects reports in canonical order.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use polycalc_core::arith::linalg;
use polycalc_core::arith::lp::{self, LpResult};
use polycalc_core::function::{
    check_affine_chain, check_subdiff_sum_rule, check_sublevel_rule, monotone_compose, multi_sublevel_normal_cone,
};
use polycalc_core::mapping::{chain_fiber, check_chain_rule, check_preimage_rule, check_sum_rule, decomposition_set, sample_points};
use polycalc_core::normal::{check_intersection_rule, normal_cone, normal_cone_oracle};
use polycalc_core::polyhedra::{affine_hull, dd_convert, dd_reverse, fm_eliminate, minkowski_sum, GenSet, HPoly, SetRef};
use polycalc_core::report::{ExtraCheck, RuleReport};
use polycalc_core::separation::{separate, SepResult};
use polycalc_core::{Error, Rational, Result};

use crate::gen::{Gen, Instance};

pub const RULES: [&str; 14] = [
    "normal-cone",
    "intersection",
    "sum",
    "chain",
    "preimage",
    "sublevel",
    "multi-sublevel",
    "subdiff-sum",
    "affine-chain",
    "monotone-compose",
    "ovf",
    "separation",
    "dd-roundtrip",
    "fm-vs-dd",
];

pub fn all_rules() -> Vec<String> {
    RULES.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Instances per rule.
    pub instances: usize,
    pub max_dim: usize,
    pub coeff_bound: i64,
    pub rules: Vec<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, instances: 20, max_dim: 4, coeff_bound: 3, rules: all_rules() }
    }
}

/// Harness knobs that do not affect which instances are drawn.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Deliberately break this rule's right-hand side.
    pub corrupt: Option<String>,
    pub timing: bool,
}

/// The result of one instance: the main report, or the error the checker
/// raised on an instance that should have been admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub rule: String,
    pub index: usize,
    pub passed: bool,
    /// Number of base choices checked: splits, intermediate points or
    /// solutions.
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RuleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSummary {
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub seed: u64,
    pub rules: BTreeMap<String, RuleSummary>,
    pub all_passed: bool,
}

pub fn summarize(seed: u64, outcomes: &[Outcome]) -> Summary {
    let mut rules: BTreeMap<String, RuleSummary> = BTreeMap::new();
    for o in outcomes {
        let s = rules.entry(o.rule.clone()).or_default();
        s.total += 1;
        s.passed += usize::from(o.passed);
    }
    Summary { seed, all_passed: outcomes.iter().all(|o| o.passed), rules }
}

/// A failing instance, written out so it can be replayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproducer {
    pub seed: u64,
    pub rule: String,
    pub index: usize,
    pub instance: Instance,
}

pub fn generate(cfg: &VerifyConfig, rule: &str, index: usize) -> Instance {
    Gen::for_instance(cfg.seed, rule, index, cfg.coeff_bound, cfg.max_dim).instance(rule)
}

/// Runs every configured rule on its instances. Work is spread over
/// threads; the result is ordered by rule, then index.
pub fn verify(cfg: &VerifyConfig, opts: &RunOptions) -> Vec<(Outcome, Instance)> {
    let jobs: Vec<(&str, usize)> =
        cfg.rules.iter().flat_map(|r| (0..cfg.instances).map(move |i| (r.as_str(), i))).collect();
    jobs.par_iter()
        .map(|&(rule, i)| {
            let inst = generate(cfg, rule, i);
            (run(rule, i, &inst, opts), inst)
        })
        .collect()
}

pub fn run(rule: &str, index: usize, inst: &Instance, opts: &RunOptions) -> Outcome {
    let start = Instant::now();
    let corrupt = opts.corrupt.as_deref() == Some(rule);
    let mut out = match check(inst) {
        Ok(c) => {
            let mut report = c.report.with_digest(inst);
            if corrupt {
                corrupt_report(&mut report);
            }
            Outcome {
                rule: rule.to_string(),
                index,
                passed: report.passed(),
                samples: c.samples,
                tags: c.tags,
                report: Some(report),
                error: None,
            }
        }
        Err(e) => Outcome {
            rule: rule.to_string(),
            index,
            passed: false,
            samples: 0,
            tags: vec![],
            report: None,
            error: Some(format!("{}: {e}", e.name())),
        },
    };
    if opts.timing {
        if let Some(r) = &mut out.report {
            r.timing_us = Some(start.elapsed().as_micros() as u64);
        }
    }
    out
}

/// Replaces the right-hand side by a set that certainly differs from the
/// left-hand side and recomputes the verdict.
fn corrupt_report(r: &mut RuleReport) {
    let dim = r.lhs.dim.max(1);
    let wrong = if r.lhs.is_empty() { GenSet::point(linalg::zeros(dim)) } else { GenSet::empty(dim) };
    let lhs = r.lhs.clone();
    let fresh = RuleReport::compare(&r.rule, SetRef::V(&lhs), SetRef::V(&wrong)).expect("matching dimensions");
    *r = RuleReport { instance: r.instance.take(), notes: vec!["corrupted".into()], ..fresh };
}

struct Checked {
    report: RuleReport,
    samples: usize,
    tags: Vec<String>,
}

impl From<RuleReport> for Checked {
    fn from(report: RuleReport) -> Self {
        Checked { report, samples: 1, tags: vec![] }
    }
}

fn check(inst: &Instance) -> Result<Checked> {
    Ok(match inst {
        Instance::NormalCone { p, x } => {
            let n = normal_cone(p, x)?.to_genset();
            let o = normal_cone_oracle(p, x)?.to_genset();
            RuleReport::compare("normal-cone", SetRef::V(&n), SetRef::V(&o))?.into()
        }
        Instance::Intersection { p, q, x } => check_intersection_rule(p, q, x)?.into(),
        Instance::Sum { f1, f2, x, y, v, indicator } => {
            let s = decomposition_set(f1, f2, x, y)?;
            let split_dim = affine_hull(&s)?.dim;
            let splits = sample_points(&s, 4)?;
            let ny = f1.ny;
            let (y1, y2) = splits[0].split_at(ny);
            let mut report = check_sum_rule(f1, f2, x, y, y1, y2, v)?;
            let lhs = report.lhs.clone();
            for (k, split) in splits.iter().enumerate().skip(1) {
                let (y1, y2) = split.split_at(ny);
                let rhs = minkowski_sum(&f1.coderivative(x, y1, v)?, &f2.coderivative(x, y2, v)?)?;
                report.add_check(&format!("split-{k}"), SetRef::V(&lhs), &rhs)?;
            }
            let mut tags = vec![format!("split-dim-{split_dim}")];
            if *indicator {
                tags.push("indicator".into());
            }
            Checked { report, samples: splits.len(), tags }
        }
        Instance::Chain { f, g, x, z, w } => {
            let m = chain_fiber(g, f, x, z)?;
            let ys = sample_points(&m, 4)?;
            let mut report = check_chain_rule(g, f, x, z, &ys[0], w)?;
            for (k, y) in ys.iter().enumerate().skip(1) {
                let other = check_chain_rule(g, f, x, z, y, w)?;
                report.add_check(&format!("y-{k}"), SetRef::V(&report.lhs.clone()), SetRef::V(&other.rhs))?;
            }
            Checked { report, samples: ys.len(), tags: vec![] }
        }
        Instance::Preimage { f, theta, x, y } => check_preimage_rule(f, theta, x, y)?.into(),
        Instance::Sublevel { f, x } => {
            let gamma = f.evaluate(x)?.finite().cloned().ok_or(Error::NotInDomain)?;
            check_sublevel_rule(f, &gamma, x)?.into()
        }
        Instance::MultiSublevel { fs, gammas, x, restricted } => {
            let report = multi_sublevel_normal_cone(fs, gammas, x)?;
            let mut tags = Vec::new();
            if *restricted {
                tags.push("restricted-domain".into());
            }
            if report.extra.iter().any(|e| e.name == "continuous-simplification") {
                tags.push("continuous".into());
            }
            Checked { report, samples: 1, tags }
        }
        Instance::SubdiffSum { f1, f2, x } => check_subdiff_sum_rule(f1, f2, x)?.into(),
        Instance::AffineChain { f, map, x } => check_affine_chain(f, map, x)?.into(),
        Instance::MonotoneCompose { phi, f, x } => monotone_compose(phi, f, x)?.into(),
        Instance::Ovf { inst, x } => {
            let s = inst.solution_set(x)?;
            let hull = affine_hull(&s)?;
            let ys = sample_points(&s, 4)?;
            let mut report = inst.check_ovf_rule(x, &ys[0])?;
            for (k, y) in ys.iter().enumerate().skip(1) {
                let other = inst.check_ovf_rule(x, y)?;
                report.add_check(&format!("y-{k}"), SetRef::V(&report.lhs.clone()), SetRef::V(&other.rhs))?;
            }
            let tags = if hull.dim > 0 { vec!["non-singleton".into()] } else { vec![] };
            Checked { report, samples: ys.len(), tags }
        }
        Instance::Separation { p, omega } => check_separation(p, omega)?,
        Instance::DdRoundtrip { g, h } => {
            let v = dd_convert(h);
            let back = dd_reverse(&v);
            let mut report = RuleReport::compare("dd-roundtrip", &back, h)?;
            if let Some(g) = g {
                report.add_check("generators", SetRef::V(&v), SetRef::V(g))?;
            }
            report.into()
        }
        Instance::FmVsDd { g, h, drop } => {
            let keep: Vec<usize> = (0..h.dim).filter(|i| !drop.contains(i)).collect();
            let fm = fm_eliminate(h, drop);
            let proj = match g {
                Some(g) => g.project(&keep),
                None => dd_convert(h).project(&keep),
            };
            RuleReport::compare("fm-vs-dd", &fm, SetRef::V(&proj))?.into()
        }
    })
}

/// Compares the verdict with an independent decision of whether `P` meets
/// the relative interior of `Omega`. Each side is recorded as the set of
/// common points it exhibits: a single point or nothing.
fn check_separation(p: &HPoly, omega: &HPoly) -> Result<Checked> {
    let res = separate(p, omega)?;
    let dim = p.dim;
    let claimed = match &res {
        SepResult::NotSeparable { common_point } => GenSet::point(common_point.clone()),
        SepResult::Separable { .. } => GenSet::empty(dim),
    };
    let oracle = match (meets_relative_interior(p, omega)?, &res) {
        (None, _) => GenSet::empty(dim),
        (Some((_, implicit)), SepResult::NotSeparable { common_point })
            if p.contains(common_point)?
                && omega.contains(common_point)?
                && omega.ineqs.iter().zip(&implicit).all(|(c, &t)| t || c.slack(common_point).is_positive()) =>
        {
            claimed.clone()
        }
        (Some((q, _)), _) => GenSet::point(q),
    };
    let mut report = RuleReport::compare("separation", SetRef::V(&claimed), SetRef::V(&oracle))?;
    report.extra.push(ExtraCheck { name: "certificate".into(), equal: res.verify(p, omega)?, counterexample: None });
    let tag = if res.is_separable() { "separable" } else { "not-separable" };
    Ok(Checked { report, samples: 1, tags: vec![tag.into()] })
}

/// A point of `P n Omega` strictly inside every inequality of `Omega` that
/// is not tight on all of `Omega`, found one row at a time and averaged,
/// together with the implicit-row flags.
fn meets_relative_interior(p: &HPoly, omega: &HPoly) -> Result<Option<(linalg::Vector, Vec<bool>)>> {
    let both = p.intersect(omega)?;
    let Some(base) = both.witness() else { return Ok(None) };
    let mut pts = vec![base];
    let mut implicit = Vec::new();
    for c in &omega.ineqs {
        let tight = matches!(lp::minimize(&c.a, omega)?, LpResult::Optimal { value, .. } if value == c.b);
        implicit.push(tight);
        if tight {
            continue;
        }
        match lp::minimize(&c.a, &both)? {
            LpResult::Optimal { value, point, .. } if value < c.b => pts.push(point),
            LpResult::Unbounded { point, .. } => pts.push(point),
            _ => return Ok(None),
        }
    }
    let n = Rational::from_integer(pts.len() as i64);
    let sum = pts.iter().fold(linalg::zeros(p.dim), |acc, q| linalg::add(&acc, q));
    Ok(Some((linalg::scale(&sum, &n.recip()), implicit)))
}
