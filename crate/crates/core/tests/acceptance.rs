//! Acceptance criteria 1-9. Runs as a plain binary under `cargo test` and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

use gsnet::stabilizer::{trial_rng, verify_lc_unitary, verify_measurement_rules, VerifyConfig};
use gsnet::*;
use rand::Rng;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn traces_bicolorable(traces: &[Graph]) -> bool {
    traces.iter().all(Graph::is_bicolorable)
}

/// Graphs seen by criteria 1-3, collected for criterion 7.
#[derive(Default)]
struct Traces {
    graphs: Vec<Graph>,
}

fn keep_trace() -> MaxConnectOptions {
    MaxConnectOptions {
        keep_trace: true,
        ..Default::default()
    }
}

fn criterion1(traces: &mut Traces) -> Check {
    let mut runs = 0;
    for m in [1, 3, 5, 7, 9, 11] {
        for n in 0..=4 {
            let g = build_multi_star(&MultiStarSpec::homogeneous(m, n).map_err(|e| e.to_string())?);
            let out = generate_max_connect_with(&g, keep_trace()).map_err(|e| format!("m={m} n={n}: {e}"))?;
            ensure(out.alpha == (n + 1) * (m + 1) / 2, || {
                format!("m={m} n={n}: alpha {}", out.alpha)
            })?;
            ensure(out.cost.total == (n + 1) * (m - 1) / 2, || {
                format!("m={m} n={n}: cost {}", out.cost.total)
            })?;
            ensure(is_star_graph(&out.final_graph), || {
                format!("m={m} n={n}: {}", out.topology_class)
            })?;
            if out.alpha >= 3 {
                ensure(out.topology_class.kind_name() == "Star", || {
                    format!("m={m} n={n}: {}", out.topology_class)
                })?;
            }
            if out.alpha <= 10 {
                let lc = are_lc_equivalent(&out.final_graph, &build_complete(out.alpha), DEFAULT_MAX_ORBIT)
                    .map_err(|e| e.to_string())?;
                ensure(lc, || format!("m={m} n={n}: not LC-equivalent to K_{}", out.alpha))?;
            }
            traces.graphs.push(g);
            traces.graphs.extend(out.trace);
            runs += 1;
        }
    }
    Ok(format!("{runs} networks"))
}

fn criterion2(traces: &mut Traces) -> Check {
    for t in 0..100 {
        let mut rng = trial_rng(2024, t);
        let m: usize = 2 * rng.random_range(0..=4) + 1;
        let counts: Vec<usize> = (0..m).map(|_| rng.random_range(0..=4)).collect();
        let expected = m.div_ceil(2) + counts.iter().step_by(2).sum::<usize>();
        let spec = MultiStarSpec::new(counts.clone()).map_err(|e| e.to_string())?;
        let g = build_multi_star(&spec);
        let out = generate_max_connect_with(&g, keep_trace()).map_err(|e| format!("{counts:?}: {e}"))?;
        ensure(out.alpha == expected, || {
            format!("{counts:?}: alpha {} expected {expected}", out.alpha)
        })?;
        traces.graphs.push(g);
        traces.graphs.extend(out.trace);
    }
    Ok("100 specs".into())
}

fn criterion3(traces: &mut Traces) -> Check {
    let e = enumerate_configs(7).map_err(|e| e.to_string())?;
    ensure(e.configs.len() == 10 && e.canonical_count == 6, || {
        format!("{} sets, {} classes", e.configs.len(), e.canonical_count)
    })?;
    for n in 1..=3 {
        let all = classify_all(7, n).map_err(|e| e.to_string())?;
        for out in &all {
            let (row, _) = protocols::removal_table_row(&out.config.removal_set).map_err(|e| e.to_string())?;
            ensure(protocols::matches_table_row(&out.outcome, &row), || {
                format!(
                    "n={n} {:?}: {} heavy {:?}",
                    row.removal, out.topology_class, out.outcome.heavy
                )
            })?;
            traces.graphs.extend(out.outcome.trace.iter().cloned());
        }
        let kinds = distinct_results(&all);
        ensure(kinds.len() == 3, || format!("n={n}: {kinds:?}"))?;
    }
    Ok("10 sets, 6 classes, 3 results for n=1..3".into())
}

fn verify_config() -> VerifyConfig {
    VerifyConfig {
        max_vertices: 10,
        trials: 500,
        seed: 7,
        exhaustive_up_to: 5,
    }
}

fn criterion4() -> Check {
    let r = verify_measurement_rules(&verify_config(), Exec::default());
    ensure(r.all_passed(), || {
        format!("{} failed, first {:?} {:?}", r.failed, r.first_failure, r.first_error)
    })?;
    Ok(format!("{} cases", r.cases))
}

fn criterion5() -> Check {
    let r = verify_lc_unitary(&verify_config(), Exec::default());
    ensure(r.all_passed(), || {
        format!("{} failed, first {:?} {:?}", r.failed, r.first_failure, r.first_error)
    })?;
    Ok(format!("{} cases", r.cases))
}

fn criterion6() -> Check {
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            let out = generate_extranet(&build_bi_star(n1, n2)).map_err(|e| format!("({n1},{n2}): {e}"))?;
            let parts = complete_bipartite_parts(&out.final_graph).map(|(a, b)| (a.min(b), a.max(b)));
            ensure(parts == Some((n1.min(n2), n1.max(n2))), || {
                format!("({n1},{n2}): parts {parts:?}")
            })?;
            ensure(out.final_graph.size() == n1 * n2, || {
                format!("({n1},{n2}): {} edges", out.final_graph.size())
            })?;
        }
    }
    Ok("16 bi-stars".into())
}

fn criterion7(traces: &Traces) -> Check {
    ensure(!traces.graphs.is_empty(), || "no traces collected".into())?;
    ensure(traces_bicolorable(&traces.graphs), || {
        let bad = traces.graphs.iter().find(|g| !g.is_bicolorable()).unwrap();
        format!("not bicolorable: {}", bad.to_json())
    })?;
    Ok(format!("{} graphs", traces.graphs.len()))
}

fn criterion8() -> Check {
    let rows = cost_surface(11, 6, false, Exec::default()).map_err(|e| e.to_string())?;
    let csv = cost_csv(&rows, false);
    let mut lines = csv.lines();
    ensure(lines.next() == Some("m,n,predicted_cost,actual_cost"), || {
        "bad header".into()
    })?;
    let mut count = 0;
    for line in lines {
        let cols: Vec<usize> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (m, n) = (cols[0], cols[1]);
        ensure(m % 2 == 1 && m <= 11 && n <= 6, || format!("unexpected row {line}"))?;
        ensure(cols[2] == (n + 1) * (m - 1) / 2, || format!("prediction off in {line}"))?;
        ensure(cols[2] == cols[3], || format!("mismatch in {line}"))?;
        count += 1;
    }
    ensure(count == 6 * 7, || format!("{count} rows"))?;
    Ok(format!("{count} rows"))
}

fn criterion9() -> Check {
    for m in [2, 4, 6, 8] {
        for n in 0..=3 {
            let spec = MultiStarSpec::homogeneous(m, n).map_err(|e| e.to_string())?;
            for how in [EvenReduction::DropLast, EvenReduction::MeasureSecondToLast] {
                let out = generate_max_connect_even(&spec, how, MaxConnectOptions::default())
                    .map_err(|e| format!("m={m} n={n}: {e}"))?;
                ensure(out.alpha == (n + 1) * m / 2, || {
                    format!("m={m} n={n} {how:?}: alpha {}", out.alpha)
                })?;
            }
        }
    }
    Ok("16 networks, both reductions".into())
}

fn main() {
    let mut traces = Traces::default();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, budget: Duration, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {why}");
            }
        }
    };
    let s = Duration::from_secs;
    report(1, "maximal connectivity", s(5), &mut || criterion1(&mut traces));
    report(2, "heterogeneous survivors", s(5), &mut || criterion2(&mut traces));
    report(3, "m=7 removal table", s(10), &mut || criterion3(&mut traces));
    report(4, "measurement rules vs stabilizer oracle", s(120), &mut criterion4);
    report(5, "local complementation unitary", s(60), &mut criterion5);
    report(6, "extranet", s(5), &mut criterion6);
    report(7, "bicolorable traces", s(5), &mut || criterion7(&traces));
    report(8, "cost surface", s(5), &mut criterion8);
    report(9, "even switch counts", s(5), &mut criterion9);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
