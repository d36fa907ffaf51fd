//! Command-line behavior: deterministic output, golden-file regression mode,
//! exit codes, and the failure path of every verify subcommand.

use std::process::{Command, Output};

use serde_json::Value;

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_k3crc"));
    cmd.args(args).env_remove("K3CRC_MAX_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn expand_delta_matches_expected_values() {
    let out = run(&["expand", "delta", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let json = json_of(&out);
    assert_eq!(json["series"]["valuation"], 1);
    assert_eq!(json["series"]["trunc"], 6);
    let coeffs = json["series"]["coeffs"].as_array().unwrap();
    let expected = [(1, "1/1"), (2, "-24/1"), (3, "252/1"), (4, "-1472/1"), (5, "4830/1")];
    assert_eq!(coeffs.len(), expected.len());
    for (entry, (q_exp, re)) in coeffs.iter().zip(expected) {
        assert_eq!(entry["q_exp"], q_exp);
        assert_eq!(entry["terms"][0]["s_exp"], 0);
        assert_eq!(entry["terms"][0]["re"], re);
        assert_eq!(entry["terms"][0]["im"], "0/1");
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["expand", "theta", "--order", "5"],
        vec!["invariants", "sym", "--n", "2", "--hmax", "2", "--sign", "age-literal"],
        vec!["partitions", "--n", "3", "--basis", "2"],
        vec!["verify", "thm2", "--n", "2", "--order", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{:?}", args);
        assert_eq!(a.stdout, b.stdout, "{:?}", args);
    }
}

#[test]
fn golden_mode_writes_then_compares() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().to_str().unwrap();
    let args = ["expand", "delta", "--order", "6", "--golden", golden];

    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("expand-delta-order6.json");
    assert!(path.exists());

    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    // corrupt the golden file: the next run must fail with exit 1
    std::fs::write(&path, "corrupted\n").unwrap();
    let third = run(&args);
    assert_eq!(third.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&third.stderr).contains("golden mismatch"));
}

#[test]
fn verify_failure_paths_carry_first_mismatch() {
    // gottsche: bump the count at n = 2
    let out = run(&["verify", "gottsche", "--nmax", "3", "--inject-error", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let json = json_of(&out);
    assert_eq!(json["status"], "mismatch");
    assert_eq!(json["mismatch"]["n"], 2);
    assert_eq!(json["mismatch"]["enumerated"], 325);

    // thm2: bump the reassembled coefficient at h = 1, u^2
    let out = run(&["verify", "thm2", "--n", "2", "--order", "3", "--inject-error", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let json = json_of(&out);
    assert_eq!(json["mismatch"]["h"], 1);
    assert_eq!(json["mismatch"]["u_power"], 2);

    // yau-zaslow: bump the reference count at h = 3
    let out = run(&["verify", "yau-zaslow", "--hmax", "4", "--inject-error", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let json = json_of(&out);
    assert_eq!(json["mismatch"]["h"], 3);
    assert_eq!(json["mismatch"]["k"], 0);

    // pade-roundtrip: corrupt the Taylor data of case 5
    let out = run(&["verify", "pade-roundtrip", "--cases", "8", "--inject-error", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let json = json_of(&out);
    assert_eq!(json["mismatch"]["case"], 5);
}

#[test]
fn verify_success_paths_exit_zero() {
    for args in [
        vec!["verify", "gottsche", "--nmax", "3"],
        vec!["verify", "thm2", "--n", "1", "--order", "4", "--sign", "paper"],
        vec!["verify", "thm2", "--n", "1", "--order", "4", "--sign", "age-literal"],
        vec!["verify", "yau-zaslow"],
        vec!["verify", "pade-roundtrip", "--cases", "8"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{:?}", args);
        assert_eq!(json_of(&out)["status"], "ok", "{:?}", args);
    }
}

#[test]
fn sign_conventions_differ_in_reported_scalar() {
    let paper = json_of(&run(&["verify", "thm2", "--n", "1", "--order", "3", "--sign", "paper"]));
    assert_eq!(paper["report"]["global_scalar"]["re"], "0/1");
    assert_eq!(paper["report"]["global_scalar"]["im"], "1/1");
    let literal =
        json_of(&run(&["verify", "thm2", "--n", "1", "--order", "3", "--sign", "age-literal"]));
    assert_eq!(literal["report"]["global_scalar"]["re"], "1/1");
    assert_eq!(literal["report"]["global_scalar"]["im"], "0/1");
}

#[test]
fn usage_errors_exit_two() {
    // unknown flag (clap)
    assert_eq!(run(&["expand", "delta", "--bogus"]).status.code(), Some(2));
    // n = 0
    assert_eq!(run(&["expand", "kernel", "--n", "0"]).status.code(), Some(2));
    // zero order
    assert_eq!(run(&["expand", "delta", "--order", "0"]).status.code(), Some(2));
    // csv is only defined for tables
    assert_eq!(
        run(&["expand", "delta", "--order", "4", "--output", "csv"]).status.code(),
        Some(2)
    );
    // malformed fault location
    assert_eq!(
        run(&["verify", "thm2", "--n", "1", "--inject-error", "nonsense"]).status.code(),
        Some(2)
    );
    // fault location outside the checked range
    assert_eq!(
        run(&["verify", "thm2", "--n", "1", "--order", "3", "--inject-error", "9,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn max_order_cap_applies() {
    let ok = run_with_env(&["expand", "delta", "--order", "8"], &[("K3CRC_MAX_ORDER", "10")]);
    assert_eq!(ok.status.code(), Some(0));
    let capped = run_with_env(&["expand", "delta", "--order", "11"], &[("K3CRC_MAX_ORDER", "10")]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("K3CRC_MAX_ORDER"));
    let bad = run_with_env(&["expand", "delta"], &[("K3CRC_MAX_ORDER", "abc")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn partitions_count_only_and_listing() {
    let counted = json_of(&run(&["partitions", "--n", "2", "--count-only"]));
    assert_eq!(counted["count"], 324);
    assert!(counted.get("partitions").is_none());

    let listed = json_of(&run(&["partitions", "--n", "2", "--basis", "2"]));
    assert_eq!(listed["count"], 5);
    let items = listed["partitions"].as_array().unwrap();
    assert_eq!(items.len(), 5);
    // ages: (2,x) has age 1, (1,x)(1,y) has age 0
    let ages: Vec<u64> = items.iter().map(|p| p["age"].as_u64().unwrap()).collect();
    assert_eq!(ages.iter().filter(|&&a| a == 1).count(), 2);
    assert_eq!(ages.iter().filter(|&&a| a == 0).count(), 3);
}

#[test]
fn transform_tags_divisibility_above_two() {
    let normal = json_of(&run(&["transform", "--n", "2", "--h", "0"]));
    assert_eq!(normal["outside_proven_range"], false);
    assert_eq!(normal["series"]["valuation"], 2);

    let outside = json_of(&run(&["transform", "--n", "2", "--h", "0", "--divisibility", "3"]));
    assert_eq!(outside["outside_proven_range"], true);
}

#[test]
fn csv_and_pretty_formats_render_tables() {
    let csv = run(&["invariants", "hilb", "--n", "2", "--hmax", "0", "--output", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,h,k,value_re,value_im"));
    assert_eq!(lines.next(), Some("2,0,-1,1/1,0/1"));
    assert_eq!(lines.next(), Some("2,0,0,2/1,0/1"));
    assert_eq!(lines.next(), Some("2,0,1,1/1,0/1"));
    assert_eq!(lines.next(), None);

    let pretty = run(&["expand", "kernel", "--n", "1", "--order", "2", "--output", "pretty"]);
    let text = String::from_utf8(pretty.stdout).unwrap();
    assert!(text.contains("q^-1: (1)"));
    assert!(text.contains("q^0: (24)"));

    let three = run(&["invariants", "hilb", "--n", "2", "--hmax", "0", "--three-point", "--output", "csv"]);
    let text = String::from_utf8(three.stdout).unwrap();
    assert!(text.contains("2,0,0,1/1,0/1"));
    assert!(text.contains("2,0,-1,1/2,0/1"));
}

#[test]
fn sym_table_reports_expected_rows() {
    let json = json_of(&run(&[
        "invariants", "sym", "--n", "2", "--hmax", "1", "--sign", "age-literal",
    ]));
    let entries = json["entries"].as_array().unwrap();
    // h = 0 row at degree 4 holds 1/2
    let first = entries
        .iter()
        .find(|e| e["h"] == 0 && e["k"] == 4)
        .expect("degree-4 entry");
    assert_eq!(first["re"], "1/2");
    assert_eq!(first["im"], "0/1");
}
