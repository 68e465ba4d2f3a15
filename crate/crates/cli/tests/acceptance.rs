//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::process::Command as Process;
use std::sync::Arc;

use usalg_cli::harness::{random_instances, run_suites, standard_corpus, SUITES};
use usalg_cli::{parse_script, Environment, SuiteStatus};
use usalg_core::*;

/// Every verdict below is exact; these are the only numeric knobs.
const SEED: u64 = 0x5eed_2024;
const MIN_RANDOM_INSTANCES: usize = 100;
const RANDOM_INSTANCES: usize = 128;
const TOR_AGREEMENT_REQUIRED: f64 = 1.0;

const EXAMPLE: &str = include_str!("../corpus/example.ring");

fn example() -> (Arc<RingTable>, MulSet) {
    let env = Environment::build(&parse_script(EXAMPLE).unwrap(), Budget::default()).unwrap();
    let (_, r, s) = env.mulsets().next().unwrap();
    (Arc::clone(&r.ring), s.clone())
}

fn z(n: usize) -> Arc<RingTable> {
    Arc::new(zmod(n, &Budget::default()).unwrap())
}

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_ring() -> Outcome {
    let (r, set) = example();
    ensure(r.size() == 8, || format!("carrier size {}", r.size()))?;
    let u = is_u_s_vnr(&r, &set);
    ensure(u.verdict && u.replay(&r), || "is_u_s_vnr is not a replayable true".into())?;
    let s = u.uniform_s.map(|s| r.label(s).to_string());
    ensure(s.as_deref() == Some("(1,0)"), || format!("uniform_s = {s:?}"))?;
    let v = is_vnr(&r);
    ensure(!v.verdict && v.replay(&r), || "is_vnr is not a replayable false".into())?;
    let a = v.counterexample_a.ok_or("no counterexample")?;
    ensure(r.mul(a, a) == r.zero() && r.label(a) == "x", || format!("counterexample {}", r.label(a)))
}

fn localization() -> Outcome {
    let (_, set) = example();
    let loc = localize_ring(&set).map_err(|e| e.to_string())?;
    ensure(is_vnr(&loc.ring).verdict, || "R_S is not vNr".into())?;
    ensure(loc.ring.size() == 2, || format!("|R_S| = {}", loc.ring.size()))
}

fn nilpotent_shortcut() -> Outcome {
    let r = z(4);
    let two = r.find_label("2").unwrap();
    let set = mulclose(&r, &[two]);
    ensure(set.labels() == ["0", "1", "2"], || format!("S = {:?}", set.labels()))?;
    let u = is_u_s_vnr(&r, &set);
    ensure(u.verdict && u.uniform_s == Some(r.zero()), || format!("{u:?}"))?;
    let trivial = mulclose(&r, &[]);
    ensure(!is_u_s_vnr(&r, &trivial).verdict, || "S = {1} gave true".into())
}

fn regular_collapse() -> Outcome {
    let mut exceptions = Vec::new();
    let mut checked = 0;
    for n in 2..=12 {
        let r = z(n);
        let vnr = is_vnr(&r).verdict;
        for a in r.elements() {
            let set = mulclose(&r, &[a]);
            if is_regular_set(&set).verdict {
                checked += 1;
                if is_u_s_vnr(&r, &set).verdict != vnr {
                    exceptions.push(format!("zmod({n}) close({a})"));
                }
            }
        }
    }
    ensure(checked > 0 && exceptions.is_empty(), || format!("{checked} checked, exceptions {exceptions:?}"))
}

fn tor_oracle() -> Outcome {
    let b = Budget::default();
    let rings = [z(8), z(12), Arc::new(ring_product(&z(2), &z(4), &b).unwrap()), example().0];
    let (mut total, mut agree) = (0usize, 0usize);
    for r in rings {
        let ideals = all_ideals(&r, &b).map_err(|e| e.to_string())?;
        for i in &ideals {
            for j in &ideals {
                let t = tor(1, &module_cyclic(i).module, &module_cyclic(j).module, &b).map_err(|e| e.to_string())?;
                let o = tor1_cyclic_oracle(i, j).map_err(|e| e.to_string())?;
                total += 1;
                if find_module_isomorphism(&t, &o, &b).map_err(|e| e.to_string())?.is_some() {
                    agree += 1;
                }
            }
        }
    }
    let rate = agree as f64 / total as f64;
    ensure(rate >= TOR_AGREEMENT_REQUIRED, || format!("{agree}/{total} pairs agree"))
}

fn suites_pass(names: &[&str]) -> Outcome {
    let b = Budget::default();
    let results = run_suites(&standard_corpus(&b), names, &b);
    ensure(results.len() == names.len(), || "missing suites".into())?;
    for s in &results {
        ensure(s.status == SuiteStatus::Pass && s.cases > 0, || {
            format!("{} {:?} after {} cases: {:?}", s.name, s.status, s.cases, s.failures)
        })?;
    }
    Ok(())
}

fn flat_equivalences() -> Outcome {
    suites_pass(&["vnr_equivalences", "flat_tensored_sequences"])
}

fn local_characterizations() -> Outcome {
    suites_pass(&["local_vnr", "local_flat"])?;
    let rep = check_local_vnr(&z(4), &Budget::default()).map_err(|e| e.to_string())?;
    let m = rep.extra("failing_m").map(|n| n.label.clone());
    ensure(m.as_deref() == Some("<2>"), || format!("failing maximal ideal {m:?}"))
}

fn witness_arithmetic() -> Outcome {
    let b = Budget::default();
    let corpus = standard_corpus(&b);
    let instances = random_instances(&corpus, SEED, RANDOM_INSTANCES, &b).map_err(|e| e.to_string())?;
    ensure(instances.len() >= MIN_RANDOM_INSTANCES, || format!("only {} instances", instances.len()))?;
    let failed: Vec<&str> = instances.iter().filter(|i| !i.passed()).map(|i| i.description.as_str()).collect();
    ensure(failed.is_empty(), || format!("{} failures, first {:?}", failed.len(), failed.first()))?;
    suites_pass(&["two_of_three", "s_finite_composition", "tor_witness_propagation"])
}

fn determinism() -> Outcome {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let example = format!("{corpus}/example.ring");
    let cyclic = format!("{corpus}/cyclic.ring");
    let field = format!("{corpus}/field.ring");
    let commands: Vec<Vec<&str>> = vec![
        vec!["analyze", "--script", &example],
        vec!["check", "--script", &example, "--property", "usvnr"],
        vec!["check", "--script", &example, "--property", "vnr"],
        vec!["localize", "--script", &example],
        vec!["tor", "--script", &cyclic, "--n", "1", "--left", "cyclic(Z8; 2)", "--right", "cyclic(Z8; 4)"],
        vec!["verify", "--script", &example],
        vec!["verify", "--script", &field],
    ];
    for args in commands {
        let run = || {
            Process::new(env!("CARGO_BIN_EXE_usalg"))
                .args(&args)
                .arg("--json")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout && a.status == b.status, || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    assert!(SUITES.len() >= 9);
    let criteria: [Criterion; 9] = [
        ("1 example ring is u-S-vNr but not vNr", example_ring),
        ("2 localization of the example is a 2-element vNr ring", localization),
        ("3 nilpotent shortcut on zmod(4)", nilpotent_shortcut),
        ("4 regular sets collapse to vNr", regular_collapse),
        ("5 Tor_1 agrees with the cyclic oracle", tor_oracle),
        ("6 u-S-flat equivalence suite", flat_equivalences),
        ("7 local characterizations", local_characterizations),
        ("8 witness arithmetic on random instances", witness_arithmetic),
        ("9 CLI output is deterministic", determinism),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
