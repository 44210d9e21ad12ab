//! Acceptance battery: one PASS/FAIL line per criterion, non-zero exit if
//! any fails. Every expected value is computed here by an oracle that does
//! not share code with the solver under test, or is a closed-form number.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coupled_sched::matching::BRUTE_FORCE_MATCHING_LIMIT;
use coupled_sched::pathcover::BRUTE_FORCE_DPC_LIMIT;
use coupled_sched::schedule::parse_schedule;
use coupled_sched::solvers::*;
use coupled_sched::*;
use coupled_sched_cli::check_report;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const ISO: [(u64, u64); 4] = [(2, 1), (3, 1), (3, 2), (5, 4)];

fn iso(a: u64, b: u64) -> TaskParams {
    TaskParams::new(a, b, a + b)
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn exact(inst: &Instance) -> u64 {
    solve_exact(inst, 10).unwrap().cost
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Plain DFS over vertex orders.
fn dfs_hamiltonian(g: &Graph) -> bool {
    fn go(g: &Graph, v: usize, seen: &mut Vec<bool>, k: usize) -> bool {
        k == g.n()
            || g.neighbors(v).iter().any(|&w| {
                if seen[w] {
                    return false;
                }
                seen[w] = true;
                let ok = go(g, w, seen, k + 1);
                seen[w] = false;
                ok
            })
    }
    g.n() == 0
        || (0..g.n()).any(|s| {
            let mut seen = vec![false; g.n()];
            seen[s] = true;
            go(g, s, &mut seen, 1)
        })
}

/// Minimum cost over all partitions into compatible pairs and single tasks,
/// with the short-gap block costs, by exhaustive recursion.
fn pair_partition_oracle(g: &Graph, p: TaskParams) -> u64 {
    fn go(g: &Graph, p: TaskParams, used: &mut Vec<bool>) -> u64 {
        let Some(v) = used.iter().position(|&u| !u) else {
            return 0;
        };
        used[v] = true;
        let mut best = p.gap + go(g, p, used);
        if p.a <= p.gap {
            for &w in g.neighbors(v) {
                if !used[w] {
                    used[w] = true;
                    best = best.min(p.gap - p.b + go(g, p, used));
                    used[w] = false;
                }
            }
        }
        used[v] = false;
        best
    }
    g.n() as u64 * p.work() + go(g, p, &mut vec![false; g.n()])
}

fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, e).unwrap()
}

fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

fn ratio_bound_matching() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(0xA11CE);
    let mut checks = 0;
    for i in 0..500 {
        let n = 2 + i % 7;
        let p = [0.35, 0.6, 0.85][i % 3];
        let g = s.connected_gnp(n, p);
        for (a, b) in ISO {
            let inst = Instance::new(g.clone(), iso(a, b));
            let m = solve_matching(&inst).unwrap().cost;
            let opt = exact(&inst);
            ensure(m * (2 * a + 2 * b) <= opt * (3 * a + 2 * b), || {
                format!("graph {i} ({a},{b}): matching {m}, optimum {opt}")
            })?;
            checks += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("{checks} checks on 500 connected graphs, 0 violations, {t:.2?}"))
}

fn trees() -> Vec<Graph> {
    let mut s = Sampler::new(0x7EE5);
    (0..500).map(|i| s.tree(1 + i % 10)).collect()
}

fn lemma_bound_trees() -> Outcome {
    let mut checks = 0;
    for (i, t) in trees().iter().enumerate() {
        for (a, b) in ISO {
            let inst = Instance::new(t.clone(), iso(a, b));
            let d = solve_dpc(&inst, DpcAlgorithm::TreeExact).unwrap().cost;
            let opt = exact(&inst);
            ensure(d * a <= opt * (a + b), || format!("tree {i} ({a},{b}): dpc {d}, optimum {opt}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} checks on 500 trees, 0 violations"))
}

fn combined_bound_trees() -> Outcome {
    let mut checks = 0;
    for (i, t) in trees().iter().enumerate() {
        for (a, b) in ISO {
            let inst = Instance::new(t.clone(), iso(a, b));
            let c = solve_combined(&inst).unwrap().cost;
            let opt = exact(&inst);
            ensure(c * a <= opt * (a + b) && c * (2 * a + 2 * b) <= opt * (3 * a + 2 * b), || {
                format!("tree {i} ({a},{b}): combined {c}, optimum {opt}")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} checks on 500 trees, 0 violations"))
}

fn hamiltonian_equivalence() -> Outcome {
    // n starts at 3: with two tasks and one edge the pair block (cost 8)
    // undercuts (n+1)(a+b) = 9.
    let mut s = Sampler::new(0x4A3);
    let (mut yes, mut no) = (0, 0);
    for i in 0..240 {
        let n = 3 + i % 7;
        let g = if i % 2 == 0 { s.hampath(n, 0.15) } else { s.gnp(n, 0.3) };
        let inst = Instance::new(g, iso(2, 1));
        let tight = exact(&inst) == (n as u64 + 1) * 3;
        let ham = dfs_hamiltonian(&inst.graph);
        ensure(tight == ham, || format!("graph {i}: optimum tight={tight}, hamiltonian={ham}"))?;
        if ham {
            yes += 1
        } else {
            no += 1
        }
    }
    Ok(format!("240 graphs, n in 3..=9 ({yes} with a Hamiltonian path, {no} without), biconditional holds"))
}

fn crossover_sweep() -> Outcome {
    let (a, v) = combined_bound_sweep(1000, 1001, 5000).ok_or("empty sweep")?;
    let f = *v.numer() as f64 / *v.denom() as f64;
    ensure(a == 2732 && (1.3660..=1.3661).contains(&f), || format!("peak a={a} value {v} = {f}"))?;
    Ok(format!("peak at a={a}, combined bound {v} = {f:.6}"))
}

fn model_equivalence() -> Outcome {
    let mut s = Sampler::new(0x5EED);
    for i in 0..100 {
        let n = 1 + i % 5;
        let (a, b) = ISO[i % 4];
        let inst = Instance::new(s.gnp(n, [0.3, 0.6, 0.9][i % 3]), iso(a, b));
        let brute = solve_schedule_brute(&inst, None).unwrap().makespan;
        let opt = exact(&inst);
        ensure(brute == opt, || format!("instance {i}: schedule search {brute}, partition optimum {opt}"))?;
    }
    Ok("100 instances n <= 5, schedule search = partition optimum on all".into())
}

fn matching_engine() -> Outcome {
    let mut s = Sampler::new(0xB105);
    for i in 0..1000 {
        let n = i % 11;
        let g = s.gnp(n, [0.15, 0.3, 0.5, 0.8][i % 4]);
        let fast = max_matching(&g);
        let slow = brute_force_matching(&g, BRUTE_FORCE_MATCHING_LIMIT).unwrap();
        ensure(fast.is_valid_for(&g) && fast.cardinality() == slow.cardinality(), || {
            format!("graph {i}: blossom {}, brute force {}", fast.cardinality(), slow.cardinality())
        })?;
    }
    let p = max_matching(&petersen()).cardinality();
    ensure(p == 5, || format!("Petersen gives {p}"))?;
    Ok("1000 graphs n <= 10 agree with brute force; Petersen gives 5".into())
}

fn tree_dpc_exactness() -> Outcome {
    for (i, t) in trees().iter().enumerate() {
        let fast = tree_min_dpc(t).unwrap().path_count;
        let slow = brute_force_min_dpc(t, BRUTE_FORCE_DPC_LIMIT).unwrap().path_count;
        ensure(fast == slow, || format!("tree {i}: {fast} paths, oracle {slow}"))?;
    }
    Ok("500 trees n <= 10 match the exhaustive cover".into())
}

fn symmetric_case() -> Outcome {
    let k3 = Instance::new(complete(3), TaskParams::new(1, 1, 2));
    let r = solve_pi2_exact(&k3, 9).unwrap();
    ensure(r.cost == 6 && r.decomposition().1 == 0, || format!("K3 cost {}", r.cost))?;
    let mut s = Sampler::new(0x712);
    for i in 0..100 {
        let p = 1 + (i % 3) as u64;
        let inst = Instance::new(s.gnp(1 + i % 9, [0.3, 0.6, 0.9][i % 3]), TaskParams::new(p, p, 2 * p));
        let h = solve_pi2_heuristic(&inst).unwrap().cost;
        let e = solve_pi2_exact(&inst, 9).unwrap().cost;
        ensure(h >= e, || format!("instance {i}: heuristic {h} below exact {e}"))?;
    }
    for k in 1..=3 {
        let inst = Instance::new(complete(3 * k), TaskParams::new(1, 1, 2));
        let h = solve_pi2_heuristic(&inst).unwrap().cost;
        let e = solve_pi2_exact(&inst, 9).unwrap().cost;
        ensure(h == e && e == 6 * k as u64, || format!("K{}: heuristic {h}, exact {e}", 3 * k))?;
    }
    Ok("K3 costs 6 with no idle; heuristic >= exact on 100 instances; equal on K3, K6, K9".into())
}

fn tamper(text: &str, task: usize, f: impl Fn(&str) -> String) -> String {
    text.lines()
        .map(|l| {
            if l.starts_with(&format!("task {task} ")) {
                f(l)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn kinds_of(inst: &Instance, text: &str) -> Result<Vec<String>, String> {
    let file = parse_schedule(text, inst.n(), inst.input_params()).map_err(|e| e.to_string())?;
    let o = check_report(inst, &file.schedule, None);
    Ok(if o.code == 0 {
        Vec::new()
    } else {
        o.stdout.lines().map(|l| l.split(':').next().unwrap().to_string()).collect()
    })
}

fn validator_soundness() -> Outcome {
    let mut s = Sampler::new(0xC4EC);
    let mut checked = 0;
    let params = [iso(2, 1), iso(1, 2), iso(5, 4), TaskParams::new(2, 2, 4), TaskParams::new(3, 2, 4), TaskParams::new(3, 1, 2)];
    for i in 0..120 {
        let inst = Instance::new(s.gnp(1 + i % 9, 0.5), params[i % params.len()]);
        for id in SolverId::ALL {
            let Ok(r) = solve(&inst, id, &opts()) else { continue };
            let text = r.schedule.into_input_orientation(&inst).to_text();
            let file = parse_schedule(&text, inst.n(), inst.input_params()).map_err(|e| e.to_string())?;
            let o = check_report(&inst, &file.schedule, file.declared_makespan);
            ensure(o.code == 0, || format!("instance {i} {id}: {}", o.stdout))?;
            checked += 1;
        }
    }

    let pair = Instance::new(Graph::from_edges(2, [(0, 1)]).unwrap(), iso(2, 1));
    let good = solve_matching(&pair).unwrap().schedule.to_text();
    let shifted = tamper(&good, 1, |l| format!("{l} second 9"));
    let overlap = tamper(&good, 1, |_| "task 1 start 0".into());
    let loose = Instance::new(Graph::empty(2), iso(2, 1));
    let nested = "task 0 start 0\ntask 1 start 2\n";
    for (inst, text, want) in [(&pair, &shifted, "gap"), (&pair, &overlap, "overlap"), (&loose, &nested.to_string(), "compat")] {
        let k = kinds_of(inst, text)?;
        ensure(k.iter().any(|x| x == want), || format!("{want} mutation reported {k:?}"))?;
    }
    Ok(format!("{checked} solver schedules pass check; gap, overlap and compat mutations are flagged"))
}

fn short_gap() -> Outcome {
    let p = TaskParams::new(3, 2, 4);
    let mut s = Sampler::new(0x540);
    let (mut by_schedule, mut by_pairs) = (0, 0);
    for i in 0..200 {
        let n = 1 + i % 8;
        let inst = Instance::new(s.gnp(n, [0.3, 0.6][i % 2]), p);
        let got = solve_shortgap(&inst).unwrap().cost;
        let want = if n <= 5 {
            by_schedule += 1;
            solve_schedule_brute(&inst, None).unwrap().makespan
        } else {
            by_pairs += 1;
            pair_partition_oracle(&inst.graph, p)
        };
        ensure(got == want, || format!("instance {i}: shortgap {got}, oracle {want}"))?;
    }
    Ok(format!("200 graphs: {by_schedule} against schedule search, {by_pairs} against pair partitions"))
}

fn performance() -> Outcome {
    let mut s = Sampler::new(0xFA57);
    let dense = Instance::new(s.gnp(10, 0.8), iso(2, 1));
    let t = Instant::now();
    solve_exact(&dense, 10).map_err(|e| e.to_string())?;
    let exact_time = t.elapsed();
    ensure(exact_time < Duration::from_secs(60), || format!("exact took {exact_time:?}"))?;

    let n = 2000;
    let mut seen = std::collections::HashSet::new();
    while seen.len() < 20000 {
        let (u, v) = (s.below(n) as usize, s.below(n) as usize);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = seen.into_iter().collect();
    edges.sort();
    let big = Instance::new(Graph::from_edges(n as usize, edges).unwrap(), iso(2, 1));
    let t = Instant::now();
    let r = solve_combined(&big).map_err(|e| e.to_string())?;
    let combined_time = t.elapsed();
    ensure(combined_time < Duration::from_secs(10), || format!("combined took {combined_time:?}"))?;
    ensure(validate_schedule(&big, &r.schedule).is_ok(), || "large schedule invalid".into())?;
    Ok(format!(
        "exact n=10 m={} in {exact_time:.2?}; combined n=2000 m=20000 in {combined_time:.2?}",
        dense.graph.m()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("matching ratio bound", ratio_bound_matching),
        ("path cover bound on trees", lemma_bound_trees),
        ("combined bound on trees", combined_bound_trees),
        ("Hamiltonian path equivalence", hamiltonian_equivalence),
        ("crossover sweep", crossover_sweep),
        ("schedule and partition models agree", model_equivalence),
        ("matching engine", matching_engine),
        ("tree path cover exactness", tree_dpc_exactness),
        ("symmetric triangles", symmetric_case),
        ("validator soundness", validator_soundness),
        ("short gap", short_gap),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1)
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
