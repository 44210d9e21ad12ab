use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coupled_sched::solvers::Rational;
use coupled_sched::{GenKind, GenSpec, SolverId, TaskParams};
use coupled_sched_cli::{bench, exit, oracle_options, Outcome, SolveArgs, ORACLE_LIMIT_ENV};

#[derive(Parser)]
#[command(name = "coupled-sched", version, about = "Coupled-task scheduling with compatibility graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Params {
    /// Length of the first sub-task.
    #[arg(long, default_value_t = 2)]
    a: u64,
    /// Length of the second sub-task.
    #[arg(long, default_value_t = 1)]
    b: u64,
    /// Exact gap between the two sub-tasks.
    #[arg(long = "L", default_value_t = 3)]
    l: u64,
}

impl Params {
    fn task_params(self) -> TaskParams {
        TaskParams::new(self.a, self.b, self.l)
    }
}

#[derive(Args, Clone)]
struct Generator {
    /// gnp, tree, hampath, path, cycle, star, complete or edgeless.
    #[arg(long, default_value = "gnp")]
    kind: String,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Edge probability (gnp).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Extra-edge probability (hampath).
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Generator {
    fn spec(&self) -> Result<GenSpec, String> {
        let kind: GenKind = self.kind.parse().map_err(|e: coupled_sched::GenError| e.to_string())?;
        Ok(GenSpec {
            kind,
            n: self.n,
            p: self.p,
            q: self.q,
            seed: self.seed,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance.
    Gen {
        #[command(flatten)]
        generator: Generator,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and print or write its schedule.
    Solve {
        instance: PathBuf,
        /// Defaults to combined, pi2-heur or shortgap by regime.
        #[arg(long)]
        solver: Option<SolverId>,
        /// Largest task count for the exact solvers.
        #[arg(long)]
        oracle_limit: Option<usize>,
        /// Schedule file to write.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a text Gantt chart.
        #[arg(long)]
        gantt: bool,
        /// Time units per Gantt column.
        #[arg(long, default_value_t = 1)]
        scale: u64,
    },
    /// Validate a schedule file against an instance.
    Check { instance: PathBuf, schedule: PathBuf },
    /// Run solvers over a directory of instances or a generated sweep.
    Bench {
        /// Directory of instance files; without it a sweep is generated.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Number of generated instances, seeds counting up from --seed.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        generator: Generator,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_delimiter = ',', default_value = "match,combined,exact")]
        solvers: Vec<SolverId>,
        #[arg(long)]
        oracle_limit: Option<usize>,
        /// Leave time_ms empty.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the analytic approximation bounds.
    Bounds {
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        /// Approximation ratio of the path cover used, as p/q.
        #[arg(long, default_value = "1")]
        rho: Rational,
        /// Maximize the combined bound over a in [a-min, a-max].
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 1)]
        a_min: u64,
        #[arg(long, default_value_t = 0)]
        a_max: u64,
    },
}

fn options(flag: Option<usize>) -> Result<(coupled_sched::SolveOptions, Option<String>), Outcome> {
    let env = std::env::var(ORACLE_LIMIT_ENV).ok();
    oracle_options(flag, env.as_deref()).map_err(|m| Outcome {
        stderr: m + "\n",
        code: exit::USAGE,
        ..Outcome::default()
    })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    Ok(match cli.command {
        Command::Gen { generator, params, out } => match generator.spec() {
            Ok(spec) => coupled_sched_cli::run_gen(&spec, params.task_params(), out.as_deref())?,
            Err(m) => Outcome {
                stderr: m + "\n",
                code: exit::USAGE,
                ..Outcome::default()
            },
        },
        Command::Solve {
            instance,
            solver,
            oracle_limit,
            out,
            gantt,
            scale,
        } => {
            let (options, warning) = match options(oracle_limit) {
                Ok(o) => o,
                Err(o) => return Ok(o),
            };
            let mut o = coupled_sched_cli::run_solve(&SolveArgs {
                instance: &instance,
                solver,
                options,
                out: out.as_deref(),
                gantt,
                scale,
            })?;
            if let Some(w) = warning {
                o.stderr.insert_str(0, &w);
            }
            o
        }
        Command::Check { instance, schedule } => coupled_sched_cli::run_check(&instance, &schedule)?,
        Command::Bench {
            dir,
            count,
            generator,
            params,
            solvers,
            oracle_limit,
            no_timing,
            out,
        } => {
            let (options, warning) = match options(oracle_limit) {
                Ok(o) => o,
                Err(o) => return Ok(o),
            };
            let inputs = match dir {
                Some(d) => bench::load_dir(&d)?,
                None => match generator.spec() {
                    Ok(spec) => bench::sweep(&spec, params.task_params(), count),
                    Err(m) => {
                        return Ok(Outcome {
                            stderr: m + "\n",
                            code: exit::USAGE,
                            ..Outcome::default()
                        })
                    }
                },
            };
            let csv = bench::to_csv(&bench::run(&inputs, &solvers, &options), !no_timing);
            let mut o = Outcome {
                stderr: warning.unwrap_or_default(),
                ..Outcome::default()
            };
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => o.stdout = csv,
            }
            o
        }
        Command::Bounds {
            a,
            b,
            rho,
            sweep,
            a_min,
            a_max,
        } => {
            if sweep {
                coupled_sched_cli::run_bounds_sweep(b, a_min, a_max)
            } else {
                coupled_sched_cli::run_bounds(a, b, rho)
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli).unwrap_or_else(|e| Outcome {
        stderr: format!("error: {e:#}\n"),
        code: exit::INVALID,
        ..Outcome::default()
    });
    // a closed pipe on stdout is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
