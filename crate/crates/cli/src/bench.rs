//! Benchmark harness: every (instance, solver) pair becomes one CSV row.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use coupled_sched::solvers::{oracle_for, Rational};
use coupled_sched::{generate, parse_instance, solve, GenSpec, Instance, SolveError, SolveOptions, SolverId, TaskParams};
use rayon::prelude::*;

pub const HEADER: &str = "instance,n,m,a,b,L,solver,cost,opt,ratio_num,ratio_den,time_ms,status";

/// An instance to benchmark, or the reason it could not be loaded.
pub struct BenchInput {
    pub name: String,
    pub instance: Result<Instance, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub shape: Option<(usize, usize, TaskParams)>,
    pub solver: SolverId,
    pub cost: Option<u64>,
    pub opt: Option<u64>,
    pub ratio: Option<Rational>,
    pub time_ms: Option<f64>,
    pub status: String,
}

fn status_of(e: &SolveError) -> &'static str {
    match e {
        SolveError::RegimeMismatch { .. } => "regime-mismatch",
        SolveError::OracleLimit(_) => "oracle-limit",
        SolveError::NotAForest(_) => "not-a-forest",
        SolveError::Schedule(_) => "schedule-error",
    }
}

fn bench_one(input: &BenchInput, solvers: &[SolverId], options: &SolveOptions) -> Vec<BenchRow> {
    let inst = match &input.instance {
        Ok(i) => i,
        Err(msg) => {
            return solvers
                .iter()
                .map(|&solver| BenchRow {
                    instance: input.name.clone(),
                    shape: None,
                    solver,
                    cost: None,
                    opt: None,
                    ratio: None,
                    time_ms: None,
                    status: format!("parse-error: {msg}"),
                })
                .collect();
        }
    };
    let shape = Some((inst.n(), inst.graph.m(), inst.input_params()));
    let oracle = oracle_for(inst).and_then(|id| solve(inst, id, options).ok().map(|r| r.cost));
    solvers
        .iter()
        .map(|&solver| {
            let mut row = BenchRow {
                instance: input.name.clone(),
                shape,
                solver,
                cost: None,
                opt: oracle,
                ratio: None,
                time_ms: None,
                status: "ok".to_string(),
            };
            match solve(inst, solver, options) {
                Ok(r) => {
                    row.cost = Some(r.cost);
                    row.time_ms = Some(r.elapsed.as_secs_f64() * 1e3);
                    row.ratio = oracle.map(|o| r.with_oracle(o).ratio().expect("oracle set"));
                }
                Err(e) => row.status = status_of(&e).to_string(),
            }
            row
        })
        .collect()
}

/// Runs every solver on every input, in parallel across inputs; rows come
/// back sorted by instance name, then solver name.
pub fn run(inputs: &[BenchInput], solvers: &[SolverId], options: &SolveOptions) -> Vec<BenchRow> {
    let mut rows: Vec<BenchRow> = inputs
        .par_iter()
        .flat_map_iter(|input| bench_one(input, solvers, options))
        .collect();
    rows.sort_by(|x, y| (&x.instance, x.solver.name()).cmp(&(&y.instance, y.solver.name())));
    rows
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV text; `timing = false` leaves `time_ms` empty so reruns compare
/// byte for byte.
pub fn to_csv(rows: &[BenchRow], timing: bool) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in rows {
        let (n, m, a, b, l) = match r.shape {
            Some((n, m, p)) => (n.to_string(), m.to_string(), p.a.to_string(), p.b.to_string(), p.gap.to_string()),
            None => Default::default(),
        };
        let time = if timing {
            r.time_ms.map(|t| format!("{t:.3}")).unwrap_or_default()
        } else {
            String::new()
        };
        writeln!(
            out,
            "{},{n},{m},{a},{b},{l},{},{},{},{},{},{time},{}",
            field(&r.instance),
            r.solver,
            opt(r.cost),
            opt(r.opt),
            opt(r.ratio.map(|q| *q.numer())),
            opt(r.ratio.map(|q| *q.denom())),
            field(&r.status),
        )
        .unwrap();
    }
    out
}

/// Every regular file of `dir`, by name.
pub fn load_dir(dir: &Path) -> std::io::Result<Vec<BenchInput>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let instance = fs::read_to_string(&p)
                .map_err(|e| e.to_string())
                .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()));
            BenchInput { name, instance }
        })
        .collect())
}

/// `count` generated instances with seeds `base.seed, base.seed + 1, ...`,
/// named `<kind>-n<n>-<index>` with the index zero-padded.
pub fn sweep(base: &GenSpec, params: TaskParams, count: usize) -> Vec<BenchInput> {
    let width = count.saturating_sub(1).to_string().len();
    (0..count)
        .map(|i| {
            let spec = GenSpec {
                seed: base.seed.wrapping_add(i as u64),
                ..*base
            };
            BenchInput {
                name: format!("{}-n{}-{i:0width$}", base.kind, base.n),
                instance: generate(&spec, params).map_err(|e| e.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use coupled_sched::GenKind;

    #[test]
    fn rows_and_statuses() {
        let inputs = vec![
            BenchInput {
                name: "p4".into(),
                instance: Ok(parse_instance("4 2 1 3\n0 1\n1 2\n2 3\n").unwrap()),
            },
            BenchInput {
                name: "bad".into(),
                instance: Err("line 1: malformed".into()),
            },
        ];
        let rows = run(&inputs, &[SolverId::Matching, SolverId::Combined, SolverId::ShortGap], &SolveOptions::default());
        let csv = to_csv(&rows, false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines[1], "bad,,,,,,combined,,,,,,parse-error: line 1: malformed");
        assert_eq!(lines[4], "p4,4,3,2,1,3,combined,15,15,1,1,,ok");
        assert_eq!(lines[5], "p4,4,3,2,1,3,match,16,15,16,15,,ok");
        assert_eq!(lines[6], "p4,4,3,2,1,3,shortgap,,15,,,,regime-mismatch");
    }

    #[test]
    fn sweep_names_sort_in_order() {
        let base = GenSpec::new(GenKind::Gnp, 5, 3);
        let inputs = sweep(&base, TaskParams::new(2, 1, 3), 12);
        assert_eq!(inputs[0].name, "gnp-n5-00");
        assert_eq!(inputs[11].name, "gnp-n5-11");
        let names: Vec<_> = inputs.iter().map(|i| i.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn commas_are_quoted() {
        assert_eq!(field("a,b"), "\"a,b\"");
        assert_eq!(field("plain"), "plain");
    }
}
