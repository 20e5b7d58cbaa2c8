use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polycalc::commands::{self, Output};
use polycalc::harness::{self, all_rules, Outcome, Reproducer, RunOptions, VerifyConfig};
use polycalc::input::{parse_point, parse_scalar, read_json, CliError, CliResult};

#[derive(Parser)]
#[command(name = "polycalc", version, about = "Exact calculus of normal cones, coderivatives and subdifferentials for polyhedral data")]
struct Cli {
    /// Compact single-line JSON instead of pretty output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the verification harness.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AtPoint {
    /// Comma-separated rationals, e.g. "0,1/2".
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal cone of a polyhedron at a point, in generator form.
    NormalCone { p: PathBuf, #[command(flatten)] at: AtPoint },
    /// Subdifferential of a function at a point.
    Subdiff { f: PathBuf, #[command(flatten)] at: AtPoint },
    /// Singular subdifferential of a function at a point.
    SingularSubdiff { f: PathBuf, #[command(flatten)] at: AtPoint },
    /// Coderivative of a mapping at (x, y) applied to v.
    Coderivative {
        mapping: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Graph of the sum of two mappings.
    SumMap { f1: PathBuf, f2: PathBuf },
    /// Graph of the composition G o F.
    ComposeMap { g: PathBuf, f: PathBuf },
    /// Preimage of a polyhedron under a mapping.
    Preimage { mapping: PathBuf, theta: PathBuf },
    /// Normal cone of a sublevel set built from the subdifferential.
    SublevelCone {
        f: PathBuf,
        #[command(flatten)]
        at: AtPoint,
        /// Level; defaults to the value at the point.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Optimal value function, or its value at a point.
    Mu {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Solution set of the inner minimization at a point.
    SolutionSet { instance: PathBuf, #[command(flatten)] at: AtPoint },
    /// Checks the subdifferential formula for the optimal value function.
    OvfSubdiff {
        instance: PathBuf,
        #[command(flatten)]
        at: AtPoint,
        /// A solution at the point; defaults to a relative-interior one.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Separation of P from the relative interior of Omega.
    Separate { p: PathBuf, omega: PathBuf },
    /// Replaces equalities by inequality pairs and reports the codimension.
    ToPcs { q: PathBuf },
    /// Seeded randomized verification of every rule.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Instances per rule.
    #[arg(long, default_value_t = 20)]
    instances: usize,
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    #[arg(long, default_value_t = 3)]
    coeff_bound: i64,
    /// Comma-separated subset of rules; all by default.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<String>,
    /// Test mode: deliberately break the named rule.
    #[arg(long)]
    corrupt: Option<String>,
    /// Record per-instance timings (makes the output nondeterministic).
    #[arg(long)]
    timing: bool,
    /// Directory for reproducer files of failing instances.
    #[arg(long, default_value = ".")]
    repro_dir: PathBuf,
    /// Rerun a reproducer file instead of generating instances.
    #[arg(long)]
    replay: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<u8> {
    let out = match &cli.cmd {
        Cmd::NormalCone { p, at } => commands::normal_cone_cmd(&read_json(p)?, &parse_point(&at.point)?)?,
        Cmd::Subdiff { f, at } => commands::subdiff(&read_json(f)?, &parse_point(&at.point)?)?,
        Cmd::SingularSubdiff { f, at } => commands::singular_subdiff(&read_json(f)?, &parse_point(&at.point)?)?,
        Cmd::Coderivative { mapping, x, y, v } => commands::coderivative(
            &read_json(mapping)?,
            &parse_point(x)?,
            &parse_point(y)?,
            &parse_point(v)?,
        )?,
        Cmd::SumMap { f1, f2 } => commands::sum_map(&read_json(f1)?, &read_json(f2)?)?,
        Cmd::ComposeMap { g, f } => commands::compose_map(&read_json(g)?, &read_json(f)?)?,
        Cmd::Preimage { mapping, theta } => commands::preimage(&read_json(mapping)?, &read_json(theta)?)?,
        Cmd::SublevelCone { f, at, gamma } => {
            let gamma = gamma.as_deref().map(parse_scalar).transpose()?;
            commands::sublevel_cone(&read_json(f)?, gamma, &parse_point(&at.point)?)?
        }
        Cmd::Mu { instance, point } => {
            let x = point.as_deref().map(parse_point).transpose()?;
            commands::mu(&read_json(instance)?, x.as_ref())?
        }
        Cmd::SolutionSet { instance, at } => commands::solution_set(&read_json(instance)?, &parse_point(&at.point)?)?,
        Cmd::OvfSubdiff { instance, at, y } => {
            let y = y.as_deref().map(parse_point).transpose()?;
            commands::ovf_subdiff(&read_json(instance)?, &parse_point(&at.point)?, y.as_ref())?
        }
        Cmd::Separate { p, omega } => commands::separate_cmd(&read_json(p)?, &read_json(omega)?)?,
        Cmd::ToPcs { q } => commands::to_pcs(&read_json(q)?)?,
        Cmd::Verify(args) => return run_verify(cli, args),
    };
    emit(cli, &render(cli, &out))?;
    Ok(if out.ok { 0 } else { 1 })
}

fn render(cli: &Cli, out: &Output) -> String {
    let mut s = if cli.json {
        serde_json::to_string(&out.value)
    } else {
        serde_json::to_string_pretty(&out.value)
    }
    .expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn outcome_line(o: &Outcome) -> String {
    let digest = o.report.as_ref().and_then(|r| r.instance.as_deref()).unwrap_or("-");
    let verdict = if o.passed { "PASS" } else { "FAIL" };
    let mut line = format!("{:<16} #{:04} {} {verdict}", o.rule, o.index, digest);
    if o.samples > 1 {
        line.push_str(&format!(" samples={}", o.samples));
    }
    if let Some(e) = &o.error {
        line.push_str(&format!(" error={e}"));
    }
    line
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> CliResult<u8> {
    let rules = if args.rules.is_empty() { all_rules() } else { args.rules.clone() };
    for r in rules.iter().chain(&args.corrupt) {
        if !harness::RULES.contains(&r.as_str()) {
            return Err(CliError::Parse(format!("unknown rule {r:?}; expected one of {}", harness::RULES.join(", "))));
        }
    }
    if args.max_dim < 2 || args.coeff_bound < 1 {
        return Err(CliError::Parse("--max-dim must be at least 2 and --coeff-bound at least 1".into()));
    }
    let cfg = VerifyConfig {
        seed: cli.seed,
        instances: args.instances,
        max_dim: args.max_dim,
        coeff_bound: args.coeff_bound,
        rules,
    };
    let opts = RunOptions { corrupt: args.corrupt.clone(), timing: args.timing };
    let results = match &args.replay {
        Some(path) => {
            let rep: Reproducer = read_json(path)?;
            vec![(harness::run(&rep.rule, rep.index, &rep.instance, &opts), rep.instance)]
        }
        None => harness::verify(&cfg, &opts),
    };

    let mut text = String::new();
    for (o, _) in &results {
        if cli.json {
            text.push_str(&serde_json::to_string(o).expect("serializable"));
        } else {
            text.push_str(&outcome_line(o));
        }
        text.push('\n');
    }
    let outcomes: Vec<Outcome> = results.iter().map(|(o, _)| o.clone()).collect();
    let summary = harness::summarize(cfg.seed, &outcomes);
    if cli.json {
        text.push_str(&serde_json::to_string(&serde_json::json!({ "summary": summary })).expect("serializable"));
        text.push('\n');
    } else {
        text.push_str(&format!("summary seed={}\n", summary.seed));
        for (rule, s) in &summary.rules {
            text.push_str(&format!("  {rule:<16} {}/{}\n", s.passed, s.total));
        }
        text.push_str(if summary.all_passed { "all rules passed\n" } else { "some rules FAILED\n" });
    }
    emit(cli, &text)?;

    if summary.all_passed {
        return Ok(0);
    }
    fs::create_dir_all(&args.repro_dir).map_err(|e| CliError::Io(e.to_string()))?;
    for (o, inst) in results.iter().filter(|(o, _)| !o.passed) {
        let rep = Reproducer { seed: cfg.seed, rule: o.rule.clone(), index: o.index, instance: inst.clone() };
        let path = repro_path(&args.repro_dir, o);
        let body = serde_json::to_string_pretty(&rep).expect("serializable");
        fs::write(&path, body + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        eprintln!("reproducer written to {}", path.display());
    }
    Ok(1)
}

fn repro_path(dir: &Path, o: &Outcome) -> PathBuf {
    dir.join(format!("repro-{}-{:04}.json", o.rule, o.index))
}
