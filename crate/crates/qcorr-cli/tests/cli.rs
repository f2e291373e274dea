//! End-to-end tests of the qcorr binary: command grammar, file formats and
//! the exit-status contract (0 passed, 1 failed, 2 premise/usage).

use proptest::prelude::*;
use qcorr_cli::stateio;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
}

fn stdout_of(output: &std::process::Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

#[test]
fn gen_named_families_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.json");
    let status = bin()
        .args(["gen", "--family", "bell", "-o"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());

    let out = bin()
        .args(["eval"])
        .arg(&path)
        .args(["mutual", "1", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((value - 2.0).abs() < 1e-9);

    // nats conversion
    let out = bin()
        .args(["eval"])
        .arg(&path)
        .args(["mutual", "1", "2", "--log-base", "nats"])
        .output()
        .unwrap();
    let nats: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((nats - 2.0 * std::f64::consts::LN_2).abs() < 1e-9);
}

#[test]
fn gen_to_stdout_is_parseable() {
    let out = bin()
        .args(["gen", "--family", "random", "--dims", "2,2", "--rank", "3", "--seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let rho = stateio::parse_state(&stdout_of(&out), 4096).unwrap();
    assert_eq!(rho.dims(), &[2, 2]);
}

#[test]
fn eval_quantities_on_w3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w3.json");
    assert!(bin().args(["gen", "--family", "w3", "-o"]).arg(&path).status().unwrap().success());

    // single-qubit reductions of the W state have spectrum (2/3, 1/3), and
    // the {2,3} reduction of a pure state shares that spectrum:
    //   S_1 = log2(3) - 2/3,  I_{C={2,3}} = 2 S_1 - S_1 = S_1,
    //   I_total = 3 S_1 - 0
    let s1 = 3.0f64.log2() - 2.0 / 3.0;
    for (tokens, expected) in [
        (vec!["entropy"], 0.0),
        (vec!["within", "{2,3}"], s1),
        (vec!["corr"], 3.0 * s1),
    ] {
        let out = bin().args(["eval"]).arg(&path).args(&tokens).output().unwrap();
        assert!(out.status.success(), "{tokens:?}");
        let value: f64 = stdout_of(&out).trim().parse().unwrap();
        assert!((value - expected).abs() < 1e-9, "{tokens:?}: {value} vs {expected}");
    }
}

#[test]
fn verify_state_file_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ghz.json");
    assert!(bin().args(["gen", "--family", "ghz", "-o"]).arg(&path).status().unwrap().success());

    let out = bin()
        .args(["verify", "cluster-additivity", "--state"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // 5 partitions of a tripartite state, records on stdout as JSON
    let records = qcorr_cli::report::parse_json(&stdout_of(&out)).unwrap();
    assert_eq!(records.len(), 5);
    assert!(records.iter().all(|r| r.passed));
}

#[test]
fn verify_csv_report_has_fixed_header() {
    let out = bin()
        .args([
            "verify", "excess-pairing", "--dims", "2,2,2", "--samples", "2", "--out", "csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with(
        "check,lhs,rhs,residual,tolerance,passed,seed,context,timestamp,version\n"
    ));
    let records = qcorr_cli::report::parse_csv(&text).unwrap();
    assert_eq!(records.len(), 2);
}

#[test]
fn verify_subadditivity_product_equality_path() {
    let out = bin()
        .args([
            "verify", "subadditivity", "--product", "--dims", "2,2,2", "--samples", "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let records = qcorr_cli::report::parse_json(&stdout_of(&out)).unwrap();
    assert_eq!(records.len(), 10);
    assert!(records.iter().all(|r| r.check == "subadditivity-equality" && r.passed));
}

#[test]
fn verify_entropy_decomposition_and_family_checks() {
    for args in [
        vec!["verify", "entropy-decomposition", "--dims", "3", "--components", "3", "--samples", "5"],
        vec!["verify", "binary-chain", "--dims", "2,2,2,2", "--samples", "3"],
        vec!["verify", "product-discard", "--dims", "2,2,2,2", "--split-at", "2", "--samples", "3"],
        vec![
            "verify", "implied-biorthogonality", "--dims", "4,4,2", "--blocks", "2,2",
            "--samples", "3",
        ],
        vec![
            "verify", "monoorthogonal-mixing", "--dims", "4,3", "--blocks", "2,2", "--samples",
            "5",
        ],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "ssa", "--dims", "2,2,2", "--samples", "0"],
        vec!["verify", "ssa", "--dims", "2,2,2", "--tol", "-1"],
        vec!["verify", "biorthogonal-mixing", "--dims", "4,4"], // --blocks missing
        vec!["gen", "--family", "unknown-family"],
        vec!["gen", "--family", "random"], // --dims missing
        vec!["gen", "--family", "random", "--dims", "64,64,2"], // 8192 > default --max-dim
        vec!["eval", "/nonexistent/state.json", "corr"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?} stdout={} stderr={}",
            stdout_of(&out),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn failed_checks_exit_1() {
    let out = bin()
        .args([
            "verify", "excess-pairing", "--dims", "2,2,2", "--samples", "2", "--tol", "1e-300",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn state_format_round_trips(seed in 0u64..1_000_000, rank in 1usize..5) {
        let mut rng = qcorr::Rng::new(seed);
        let rho = qcorr::random_density(&[2, 2], rank, &mut rng).unwrap();
        let once = stateio::render_state(&rho);
        let parsed = stateio::parse_state(&once, 4096).unwrap();
        prop_assert_eq!(parsed.mat().data(), rho.mat().data());
        prop_assert_eq!(stateio::render_state(&parsed), once);
    }

    #[test]
    fn fmt17_round_trips_doubles(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let rendered = stateio::fmt17(x);
        let parsed: f64 = rendered.parse().unwrap();
        prop_assert_eq!(parsed.to_bits(), x.to_bits());
        prop_assert_eq!(stateio::fmt17(parsed), rendered);
    }
}
