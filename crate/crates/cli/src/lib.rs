//! Command implementations behind the `coupled-sched` binary.
//!
//! Every command returns its report text and an exit status; `main` only
//! parses arguments and prints.

pub mod bench;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use coupled_sched::schedule::parse_schedule;
use coupled_sched::solvers::{
    bounds, combined_bound_sweep, cmp_with_worst_combined, oracle_for, worst_combined_approx, Rational,
    DEFAULT_EXACT_LIMIT, MAX_SUBSET_VERTICES,
};
use coupled_sched::{
    generate, parse_instance, solve, validate_schedule, GenSpec, Instance, Regime, SolveError, SolveOptions,
    SolverId, TaskParams,
};

pub const ORACLE_LIMIT_ENV: &str = "COUPLED_SCHED_ORACLE_LIMIT";
pub const GANTT_MAX_COLS: usize = 200;

/// Exit statuses shared by all commands.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const ORACLE_LIMIT: i32 = 3;
}

/// A command's result: text for stdout, diagnostics for stderr, status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message.into(),
            code,
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(exit::USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Outcome::fail(exit::USAGE, format!("{}: {e}", path.display())))
}

pub fn run_gen(spec: &GenSpec, params: TaskParams, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let text = match generate(spec, params) {
        Ok(inst) => inst.to_text(),
        Err(e) => return Ok(Outcome::fail(exit::USAGE, e.to_string())),
    };
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome {
            stdout: text,
            ..Outcome::default()
        }),
    }
}

/// Oracle caps: an explicit flag wins over the environment, which wins over
/// the defaults. The value applies to both subset oracles.
pub fn oracle_options(flag: Option<usize>, env: Option<&str>) -> Result<(SolveOptions, Option<String>), String> {
    let chosen = match (flag, env) {
        (Some(v), _) => Some(v),
        (None, Some(s)) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("{ORACLE_LIMIT_ENV}={s} is not a vertex count"))?,
        ),
        (None, None) => None,
    };
    let Some(limit) = chosen else {
        return Ok((SolveOptions::default(), None));
    };
    if limit > MAX_SUBSET_VERTICES {
        return Err(format!("oracle limit {limit} exceeds the hard cap of {MAX_SUBSET_VERTICES}"));
    }
    let warning = (limit > DEFAULT_EXACT_LIMIT).then(|| {
        format!("warning: oracle limit raised to {limit}; the exact solvers take O(3^n) time and O(2^n) memory\n")
    });
    Ok((
        SolveOptions {
            exact_limit: limit,
            pi2_limit: limit,
        },
        warning,
    ))
}

/// The solver used when none is named.
pub fn default_solver(instance: &Instance) -> SolverId {
    match instance.regime() {
        Regime::Symmetric => SolverId::Pi2Heuristic,
        Regime::ShortGap => SolverId::ShortGap,
        _ => SolverId::Combined,
    }
}

pub fn solve_error_outcome(e: &SolveError) -> Outcome {
    let code = match e {
        SolveError::OracleLimit(_) => exit::ORACLE_LIMIT,
        _ => exit::USAGE,
    };
    Outcome::fail(code, format!("{e}\n"))
}

pub struct SolveArgs<'a> {
    pub instance: &'a Path,
    pub solver: Option<SolverId>,
    pub options: SolveOptions,
    pub out: Option<&'a Path>,
    pub gantt: bool,
    pub scale: u64,
}

pub fn run_solve(args: &SolveArgs<'_>) -> anyhow::Result<Outcome> {
    let inst = match read_instance(args.instance) {
        Ok(i) => i,
        Err(o) => return Ok(o),
    };
    let solver = args.solver.unwrap_or_else(|| default_solver(&inst));
    let report = match solve(&inst, solver, &args.options) {
        Ok(r) => r,
        Err(e) => return Ok(solve_error_outcome(&e)),
    };
    let (t_seq, t_idle) = report.decomposition();
    let schedule = report.schedule.clone().into_input_orientation(&inst);
    if let Some(path) = args.out {
        fs::write(path, schedule.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut stdout = format!("solver={solver} cost={} t_seq={t_seq} t_idle={t_idle}\n", report.cost);
    if args.gantt {
        stdout.push_str(&schedule.gantt(args.scale, GANTT_MAX_COLS));
    }
    if args.out.is_none() && !args.gantt {
        stdout.push_str(&schedule.to_text());
    }
    Ok(Outcome {
        stdout,
        ..Outcome::default()
    })
}

pub fn run_check(instance: &Path, schedule: &Path) -> anyhow::Result<Outcome> {
    let inst = match read_instance(instance) {
        Ok(i) => i,
        Err(o) => return Ok(o),
    };
    let text = match fs::read_to_string(schedule) {
        Ok(t) => t,
        Err(e) => return Ok(Outcome::fail(exit::USAGE, format!("cannot read {}: {e}\n", schedule.display()))),
    };
    let file = match parse_schedule(&text, inst.n(), inst.input_params()) {
        Ok(f) => f,
        Err(e) => return Ok(Outcome::fail(exit::USAGE, format!("{}: {e}\n", schedule.display()))),
    };
    Ok(check_report(&inst, &file.schedule, file.declared_makespan))
}

pub fn check_report(inst: &Instance, schedule: &coupled_sched::Schedule, declared: Option<u64>) -> Outcome {
    let mut stdout = String::new();
    let mut ok = true;
    if let Err(violations) = validate_schedule(inst, schedule) {
        ok = false;
        for v in violations {
            writeln!(stdout, "{v}").unwrap();
        }
    }
    let c = schedule.makespan();
    if let Some(d) = declared.filter(|&d| d != c) {
        ok = false;
        writeln!(stdout, "makespan: declared {d}, schedule ends at {c}").unwrap();
    }
    if ok {
        let (t_seq, t_idle) = schedule.decomposition();
        writeln!(stdout, "OK makespan={c} t_seq={t_seq} t_idle={t_idle}").unwrap();
    }
    Outcome {
        stdout,
        stderr: String::new(),
        code: if ok { exit::OK } else { exit::INVALID },
    }
}

fn ratio_text(r: Rational) -> String {
    format!("{}/{} ({:.5})", r.numer(), r.denom(), *r.numer() as f64 / *r.denom() as f64)
}

pub fn run_bounds(a: u64, b: u64, rho: Rational) -> Outcome {
    match bounds(TaskParams::new(a, b, a + b), rho) {
        Ok(t) => {
            let side = match t.crossover {
                std::cmp::Ordering::Less => "below",
                std::cmp::Ordering::Equal => "at",
                std::cmp::Ordering::Greater => "above",
            };
            Outcome {
                stdout: format!(
                    "a={a} b={b} rho_dpc={}/{}\nmatching_bound={}\ndpc_bound={}\ncombined_bound={}\ncrossover: a/b is {side} 1+sqrt(3)\n",
                    rho.numer(),
                    rho.denom(),
                    ratio_text(t.matching),
                    ratio_text(t.dpc),
                    ratio_text(t.combined),
                ),
                ..Outcome::default()
            }
        }
        Err(e) => Outcome::fail(exit::USAGE, format!("{e}\n")),
    }
}

pub fn run_bounds_sweep(b: u64, a_min: u64, a_max: u64) -> Outcome {
    match combined_bound_sweep(b, a_min, a_max) {
        Some((a, v)) => {
            let rel = match cmp_with_worst_combined(v) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Outcome {
                stdout: format!(
                    "b={b} a in [{a_min}, {a_max}]\nmax combined_bound at a={a}: {}\n{} {rel} (1+sqrt(3))/2 = {:.5}\n",
                    ratio_text(v),
                    ratio_text(v).split(' ').next().unwrap(),
                    worst_combined_approx()
                ),
                ..Outcome::default()
            }
        }
        None => Outcome::fail(exit::USAGE, format!("no a > b={b} in [{a_min}, {a_max}]\n")),
    }
}

/// The oracle cost for an instance, when one applies within the limits.
pub fn oracle_cost(inst: &Instance, options: &SolveOptions) -> Option<u64> {
    let id = oracle_for(inst)?;
    solve(inst, id, options).ok().map(|r| r.cost)
}
