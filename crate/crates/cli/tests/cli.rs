use std::process::Command;
use std::sync::Arc;

use chardeg_cli::{run_with_hooks, Hooks, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use chardeg_core::qpoly::Count;
use serde_json::Value;

fn chardeg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chardeg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, stdout, stderr) = chardeg(&full);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn with_hooks(args: &[&str], hooks: Hooks) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_hooks(std::iter::once("chardeg").chain(args.iter().copied()), &mut out, &mut err, &hooks);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn sum_command() {
    let v = json(&["sum", "--family", "gsp", "--n", "1", "--q", "3", "--kind", "real_valued"]);
    assert_eq!(v["value"], "14");
    assert_eq!(v["poly"], "q^2 + q + 2");
    assert!(v["source_citation"].as_str().unwrap().len() > 10);

    let v = json(&["sum", "--family", "sp", "--n", "1", "--q", "5", "--kind", "fs_plus"]);
    assert_eq!(v["value"], "16");
    assert!(v["poly"].is_null());

    let (code, _, stderr) = chardeg(&["sum", "--family", "sp", "--n", "1", "--q", "3", "--kind", "fs_plus"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(stderr.contains("q = 1 mod 4"));

    let (code, _, stderr) = chardeg(&["sum", "--family", "go_plus_conn", "--n", "1", "--q", "3", "--kind", "all"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(stderr.contains("no formula in scope"));
}

#[test]
fn poly_command() {
    let (code, stdout, _) = chardeg(&["poly", "--family", "gl", "--n", "1", "--kind", "real_valued"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "2");
    let v = json(&["poly", "--family", "gl", "--n", "3", "--kind", "real_valued"]);
    assert_eq!(v["degree"], 4);
    let (code, _, _) = chardeg(&["poly", "--family", "sp", "--n", "1", "--kind", "fs_minus"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn census_command() {
    let v = json(&["census", "--family", "gl", "--n", "2", "--p", "3"]);
    assert_eq!(v["order"], "48");
    assert_eq!(v["involutions"]["total"], "14");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 6);
    for k in ["family", "n", "p", "order", "involutions", "twisted"] {
        assert!(keys.contains(&k));
    }

    let v = json(&["census", "--family", "go_minus", "--n", "1", "--p", "5"]);
    let skew_total: u64 = v["involutions"]["buckets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["mu"] == -1)
        .map(|b| b["count"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(skew_total, 0);

    let v = json(&["census", "--family", "gsp", "--n", "2", "--p", "3", "--twists", "-1"]);
    assert_eq!(v["twisted"]["-1"], "1620");
    assert!(v["twisted"].get("+1").is_none());

    let (code, _, stderr) = chardeg(&["census", "--family", "sp", "--n", "3", "--p", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(stderr.contains("estimated order"));
}

#[test]
fn verify_command() {
    let (code, stdout, _) = chardeg(&["verify", "--family", "o_plus", "--n", "2", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("1152"));
    assert!(stdout.contains("0 failed"));

    let v = json(&["verify", "--family", "gsp", "--n", "1", "--p", "5"]);
    let first = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with("first term"))
        .unwrap();
    assert_eq!(first["census"], "2");
    assert_eq!(first["pass"], true);

    let v = json(&["verify", "--family", "so_odd", "--n", "1", "--p", "7"]);
    let sum = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "involutions = all sum")
        .unwrap();
    assert_eq!(sum["formula"], "50");
}

#[test]
fn bounds_command() {
    let (code, stdout, _) = chardeg(&["bounds", "--family", "so_odd", "--n", "1..3", "--q", "3,5,9", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(
        lines[0],
        "family,n,q,d,r,weyl,sum,sum_kind,lower,conj_upper,refined_upper,kowalski_num,kowalski_den,pass_lower,pass_conj,pass_refined,pass_kowalski"
    );
    assert!(lines[1..].iter().all(|l| l.ends_with("true,true,true,true")));

    let (code, stdout, _) = chardeg(&["bounds", "--family", "gl", "--n", "1", "--q", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.lines().nth(1).unwrap().starts_with("gl,1,2,1,1,1,1,exact,1,"));

    let (code, _, stderr) = chardeg(&["bounds", "--family", "sp", "--n", "1", "--q", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(stderr.contains("inapplicable: center not connected"));

    let v = json(&["bounds", "--family", "go_plus_conn", "--n", "2", "--q", "3"]);
    assert_eq!(v[0]["sum"], "280");
    assert_eq!(v[0]["sum_kind"], "surrogate");
    assert_eq!(v[0]["pass_conj"], "not-evaluable");
}

#[test]
fn scan_command() {
    for (lemma, m_max, q_max) in [("binomineq", "40", "50"), ("even_dim", "1", "2"), ("odd_dim", "30", "50")] {
        let (code, stdout, _) = chardeg(&["scan", "--lemma", lemma, "--m-max", m_max, "--q-max", q_max]);
        assert_eq!(code, EXIT_OK, "{lemma}");
        assert!(stdout.contains(" 0 violations"), "{stdout}");
    }
    let (code, _, _) = chardeg(&["scan", "--lemma", "odd_dim", "--m-max", "0", "--q-max", "5"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(chardeg(&[]).0, EXIT_USAGE);
    assert_eq!(chardeg(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(chardeg(&["sum", "--family", "gl", "--n", "1"]).0, EXIT_USAGE);
    assert_eq!(chardeg(&["census", "--family", "gl", "--n", "1", "--p", "9"]).0, EXIT_USAGE);
    assert_eq!(chardeg(&["--format", "xml", "verify-all"]).0, EXIT_USAGE);
    assert_eq!(chardeg(&["--help"]).0, EXIT_OK);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["census", "--family", "gsp", "--n", "2", "--p", "3", "--format", "json"],
        vec!["verify", "--family", "o_minus", "--n", "2", "--p", "3", "--format", "csv"],
        vec!["scan", "--lemma", "even_dim", "--m-max", "10", "--q-max", "20", "--format", "json"],
        vec!["bounds", "--family", "gl,u,gsp", "--n", "1..4", "--q", "3,9", "--format", "csv"],
    ] {
        let base = chardeg(&args);
        assert_eq!(base.0, 0);
        for jobs in ["1", "3"] {
            let mut with_jobs = vec!["--jobs", jobs];
            with_jobs.extend(&args);
            assert_eq!(chardeg(&with_jobs).1, base.1, "{args:?} --jobs {jobs}");
        }
    }
}

#[test]
fn corrupted_census_forces_exit_1() {
    let hooks = Hooks {
        census: Some(Arc::new(|r| r.involution_total = &r.involution_total + &Count::from(1))),
        ..Hooks::default()
    };
    let (code, stdout) = with_hooks(&["verify", "--family", "gl", "--n", "2", "--p", "3"], hooks.clone());
    assert_eq!(code, EXIT_FAILURE);
    assert!(stdout.contains("FAIL"));
    let (code, _) = with_hooks(&["verify", "--family", "gl", "--n", "2", "--p", "3"], Hooks::default());
    assert_eq!(code, EXIT_OK);

    // Every single claim, corrupted alone, must flip the exit code.
    let (_, clean) = with_hooks(
        &["verify", "--family", "gsp", "--n", "1", "--p", "3", "--format", "json"],
        Hooks::default(),
    );
    let claims = serde_json::from_str::<Value>(&clean).unwrap()["claims"].as_array().unwrap().len();
    for target in 0..claims {
        let hooks = Hooks {
            census: Some(Arc::new(move |r| match target {
                0 => r.order = &r.order + &Count::from(1),
                1 => r.involution_total = Count::zero(),
                _ => {
                    for b in r.buckets.iter_mut() {
                        b.count = &b.count + &Count::from(1);
                    }
                    for c in r.twisted_counts.values_mut() {
                        *c = &*c + &Count::from(1);
                    }
                }
            })),
            ..Hooks::default()
        };
        let (code, _) = with_hooks(&["verify", "--family", "gsp", "--n", "1", "--p", "3"], hooks);
        assert_eq!(code, EXIT_FAILURE, "claim {target}");
    }
}

#[test]
fn corrupted_bounds_force_exit_1() {
    let hooks = Hooks {
        bounds: Some(Arc::new(|row| {
            if row.spec.q == 5 {
                row.sum_value = Count::zero();
                row.pass_lower = Some(false);
            }
        })),
        ..Hooks::default()
    };
    let (code, _) = with_hooks(&["bounds", "--family", "gl", "--n", "1..2", "--q", "3,5", "--format", "csv"], hooks);
    assert_eq!(code, EXIT_FAILURE);
}
