//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line; run with `--nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use polycalc::gen::{Gen, Instance};
use polycalc::harness::{verify, Outcome, RunOptions, VerifyConfig};
use polycalc_core::arith::linalg;
use polycalc_core::arith::lp::{self, LpResult};
use polycalc_core::function::monotone_compose;
use polycalc_core::polyhedra::{Constraint, HPoly};
use polycalc_core::separation::separate;
use polycalc_core::{Error, Rational};

const SEED: u64 = 42;

fn sweep(rule: &str, instances: usize) -> Vec<(Outcome, Instance)> {
    let cfg = VerifyConfig { seed: SEED, instances, rules: vec![rule.to_string()], ..VerifyConfig::default() };
    verify(&cfg, &RunOptions::default())
}

fn tagged(results: &[(Outcome, Instance)], tag: &str) -> usize {
    results.iter().filter(|(o, _)| o.tags.iter().any(|t| t == tag)).count()
}

/// Instances that did not pass, listed by index with their error, if any.
fn failures(results: &[(Outcome, Instance)]) -> Vec<String> {
    results
        .iter()
        .filter(|(o, _)| !o.passed)
        .map(|(o, _)| format!("#{}{}", o.index, o.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()))
        .collect()
}

/// Prints the verdict line and fails the test with the listed problems.
fn conclude(criterion: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("PASS {criterion}");
    } else {
        println!("FAIL {criterion}: {}", problems.join("; "));
        panic!("{criterion}: {}", problems.join("; "));
    }
}

fn all_pass(criterion: &str, rule: &str, instances: usize) {
    let results = sweep(rule, instances);
    let mut problems = Vec::new();
    if results.len() != instances {
        problems.push(format!("expected {instances} instances, got {}", results.len()));
    }
    let failed = failures(&results);
    if !failed.is_empty() {
        problems.push(format!("{} failing: {}", failed.len(), failed.join(", ")));
    }
    conclude(criterion, problems);
}

fn require(problems: &mut Vec<String>, ok: bool, msg: String) {
    if !ok {
        problems.push(msg);
    }
}

#[test]
fn normal_cone_oracle_agreement() {
    let start = Instant::now();
    let results = sweep("normal-cone", 500);
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing: {}", failed.len(), failed.join(", ")));
    for d in 1..=4 {
        let n = results.iter().filter(|(_, i)| matches!(i, Instance::NormalCone { p, .. } if p.dim == d)).count();
        require(&mut problems, n > 0, format!("no instance of dimension {d}"));
    }
    let out_of_range = results.iter().any(|(_, i)| !matches!(i, Instance::NormalCone { p, .. } if (1..=4).contains(&p.dim)));
    require(&mut problems, !out_of_range, "dimension outside 1..=4".into());
    require(&mut problems, results.len() == 500, format!("{} instances", results.len()));
    require(&mut problems, elapsed < Duration::from_secs(60), format!("took {elapsed:?}"));
    conclude(&format!("normal-cone oracle agreement, 500 instances in {:.1}s", elapsed.as_secs_f64()), problems);
}

#[test]
fn intersection_rule() {
    all_pass("intersection rule, 300 instances", "intersection", 300);
}

#[test]
fn coderivative_sum_rule() {
    let results = sweep("sum", 300);
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing: {}", failed.len(), failed.join(", ")));
    let indicators = tagged(&results, "indicator");
    require(&mut problems, indicators >= 50, format!("only {indicators} indicator summands"));
    let mut spread = 0;
    for (o, _) in &results {
        if o.tags.iter().any(|t| t.starts_with("split-dim-") && t != "split-dim-0") {
            spread += 1;
            let splits = o.report.as_ref().map_or(0, |r| 1 + r.extra.iter().filter(|e| e.name.starts_with("split-")).count());
            require(&mut problems, splits >= 3, format!("#{} checks only {splits} splits", o.index));
        }
    }
    conclude(
        &format!("coderivative sum rule, 300 instances ({indicators} indicator, {spread} with a split set of dimension >= 1)"),
        problems,
    );
}

#[test]
fn chain_rule() {
    let results = sweep("chain", 300);
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing: {}", failed.len(), failed.join(", ")));
    for (o, _) in &results {
        let ys = o.report.as_ref().map_or(0, |r| 1 + r.extra.iter().filter(|e| e.name.starts_with("y-")).count());
        require(&mut problems, ys >= 3, format!("#{} checks only {ys} intermediate points", o.index));
    }
    conclude("chain rule, 300 instances with >= 3 intermediate points each", problems);
}

#[test]
fn preimage_rule() {
    all_pass("preimage rule, 300 instances", "preimage", 300);
}

#[test]
fn single_sublevel_rule() {
    all_pass("single-function sublevel rule, 300 instances", "sublevel", 300);
}

#[test]
fn multi_sublevel_rule() {
    let results = sweep("multi-sublevel", 300);
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing: {}", failed.len(), failed.join(", ")));
    let restricted = tagged(&results, "restricted-domain");
    require(&mut problems, restricted >= 50, format!("only {restricted} with a restricted domain"));
    let continuous = tagged(&results, "continuous");
    require(&mut problems, continuous >= 50, format!("only {continuous} exercising the continuous simplification"));
    conclude(
        &format!("multi-function sublevel rule, 300 instances ({restricted} restricted, {continuous} continuous)"),
        problems,
    );
}

#[test]
fn subdifferential_sum_rule() {
    all_pass("subdifferential sum rule, 300 instances", "subdiff-sum", 300);
}

#[test]
fn affine_chain_rule() {
    all_pass("affine chain rule, 300 instances", "affine-chain", 300);
}

#[test]
fn optimal_value_rule() {
    let results = sweep("ovf", 300);
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing: {}", failed.len(), failed.join(", ")));
    let wide = tagged(&results, "non-singleton");
    for (o, _) in results.iter().filter(|(o, _)| o.tags.iter().any(|t| t == "non-singleton")) {
        let ys = o.report.as_ref().map_or(0, |r| 1 + r.extra.iter().filter(|e| e.name.starts_with("y-")).count());
        require(&mut problems, ys >= 3, format!("#{} checks only {ys} solutions", o.index));
    }
    require(&mut problems, wide > 0, "no instance with a non-singleton solution set".into());
    conclude(&format!("optimal-value rule, 300 instances ({wide} with non-singleton solution sets)"), problems);
}

#[test]
fn monotone_composition() {
    all_pass("monotone composition, 200 instances", "monotone-compose", 200);
}

#[test]
fn non_monotone_outer_functions_are_rejected() {
    let mut problems = Vec::new();
    for i in 0..20 {
        let mut g = Gen::for_instance(SEED, "not-monotone", i, 3, 4);
        let nx = g.range(1, 3);
        let x = g.vector(nx);
        let f = g.function_through(&x, false);
        let phi = g.non_monotone_phi();
        match monotone_compose(&phi, &f, &x) {
            Err(Error::NotMonotone) => {}
            other => problems.push(format!("#{i}: {:?}", other.map(|r| r.passed()))),
        }
    }
    conclude("non-monotone outer functions rejected, 20 instances", problems);
}

/// Decides whether `P` meets the relative interior of `Omega` with one LP:
/// maximize `t <= 1` over `x in P n Omega` with `a.x + t <= b` on every row
/// of `Omega` that is not tight on all of `Omega`.
fn meets_relative_interior(p: &HPoly, omega: &HPoly) -> bool {
    let n = p.dim;
    let lift = |c: &Constraint, t: i64| {
        let mut a = c.a.clone();
        a.push(Rational::from_integer(t));
        Constraint::new(a, c.b.clone())
    };
    let mut sys = HPoly::whole_space(n + 1);
    for c in p.ineqs.iter().chain(&omega.ineqs) {
        sys.ineqs.push(lift(c, 0));
    }
    for c in p.eqs.iter().chain(&omega.eqs) {
        sys.eqs.push(lift(c, 0));
    }
    for c in &omega.ineqs {
        let tight = matches!(lp::minimize(&c.a, omega).unwrap(), LpResult::Optimal { value, .. } if value == c.b);
        if !tight {
            sys.ineqs.push(lift(c, 1));
        }
    }
    sys.ineqs.push(Constraint::new(linalg::unit(n + 1, n), Rational::one()));
    match lp::maximize(&linalg::unit(n + 1, n), &sys).unwrap() {
        LpResult::Optimal { value, .. } => value.is_positive(),
        LpResult::Infeasible { .. } => false,
        LpResult::Unbounded { .. } => unreachable!("t is bounded"),
    }
}

#[test]
fn separation_soundness_and_completeness() {
    let results = sweep("separation", 300);
    let mut problems = Vec::new();
    let failed = failures(&results);
    require(&mut problems, failed.is_empty(), format!("{} failing in the harness: {}", failed.len(), failed.join(", ")));
    let mut separable = 0;
    for (o, inst) in &results {
        let Instance::Separation { p, omega } = inst else { unreachable!() };
        let res = separate(p, omega).unwrap();
        separable += usize::from(res.is_separable());
        require(
            &mut problems,
            res.is_separable() != meets_relative_interior(p, omega),
            format!("#{}: verdict disagrees with the emptiness LP", o.index),
        );
        require(&mut problems, res.verify(p, omega).unwrap(), format!("#{}: certificate does not verify", o.index));
    }
    require(&mut problems, separable > 0 && separable < 300, format!("{separable} separable of 300"));
    conclude(&format!("separation soundness and completeness, 300 pairs ({separable} separable)"), problems);
}

#[test]
fn dd_round_trip() {
    all_pass("double description round trip, 500 instances", "dd-roundtrip", 500);
}

#[test]
fn fm_matches_dd_projection() {
    all_pass("Fourier-Motzkin against double description projection, 500 instances", "fm-vs-dd", 500);
}

#[test]
fn verify_is_deterministic() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_polycalc"))
            .args(["verify", "--seed", "42", "--repro-dir"])
            .arg(std::env::temp_dir())
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let (code_a, a) = run();
    let (code_b, b) = run();
    let mut problems = Vec::new();
    require(&mut problems, a == b, "reports differ between runs".into());
    require(&mut problems, code_a == Some(0) && code_b == Some(0), format!("exit codes {code_a:?}, {code_b:?}"));
    require(&mut problems, !a.is_empty(), "empty report".into());
    conclude(&format!("verify --seed 42 byte-identical across runs ({} bytes)", a.len()), problems);
}
