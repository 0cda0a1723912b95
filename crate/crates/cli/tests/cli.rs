use std::process::{Command, Output};

use serde_json::Value;

fn flagchow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagchow")).args(args).env_remove("FLAGCHOW_MAXDEG").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = flagchow(&full);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("bad json for {args:?}: {e}"));
    (v, o.status.code().unwrap())
}

fn numbers(line: &str) -> Vec<u64> {
    line.split_whitespace().filter_map(|w| w.parse().ok()).collect()
}

#[test]
fn hilbert_of_unitary_flag_variety() {
    let args = ["hilbert", "--group", "U", "--rank", "3", "--prime", "2", "--maxdeg", "12"];
    let (v, code) = json(&args);
    assert_eq!(code, 0);
    let series: Vec<u64> = v["series"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(series, vec![1, 0, 2, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(v["total"], 6);

    let text = stdout(&flagchow(&args));
    let line = text.lines().find(|l| l.starts_with("series:")).unwrap();
    assert_eq!(numbers(line), series);
}

#[test]
fn rost_basis_for_n2_p2() {
    let (v, code) = json(&["rost", "--n", "2", "--p", "2"]);
    assert_eq!(code, 0);
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
    let mut degs: Vec<u64> = basis.iter().map(|b| b["topdeg"].as_u64().unwrap()).collect();
    degs.sort();
    assert_eq!(degs, vec![0, 4, 6]);
    for b in basis {
        assert_eq!(b["chowdeg"].as_u64().unwrap() * 2, b["topdeg"].as_u64().unwrap());
    }

    let text = stdout(&flagchow(&["rost", "--n", "2", "--p", "2"]));
    let mut text_degs: Vec<u64> =
        text.lines().filter_map(|l| l.split("topdeg").nth(1)).map(|rest| numbers(rest)[0]).collect();
    text_degs.sort();
    assert_eq!(text_degs, degs);
}

#[test]
fn rost_rejects_composite_prime() {
    assert_eq!(flagchow(&["rost", "--n", "2", "--p", "4"]).status.code(), Some(2));
    assert_eq!(flagchow(&["rost", "--n", "0", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes_with_ten_reports() {
    let (v, code) = json(&["verify", "--all"]);
    assert_eq!(code, 0);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() >= 10);
    for r in reports {
        assert_eq!(r["status"], "pass", "{}", r["id"]);
        assert!(r["diff"].as_array().unwrap().is_empty());
        assert!(!r["checks"].as_array().unwrap().is_empty());
    }
    assert_eq!(v["passed"].as_u64().unwrap() as usize, reports.len());

    let o = flagchow(&["verify", "--all", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), reports.len());
    let ids: Vec<&str> = text.lines().filter_map(|l| l.split_whitespace().nth(1)).take(reports.len()).collect();
    let json_ids: Vec<&str> = reports.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, json_ids);
}

#[test]
fn verify_needs_a_selection() {
    assert_eq!(flagchow(&["verify"]).status.code(), Some(2));
    let o = flagchow(&["verify", "--case", "no-such-case"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("torsion-index-so"));
}

#[test]
fn single_case_runs() {
    let (v, code) = json(&["verify", "--case", "squares-hit"]);
    assert_eq!(code, 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["id"], "squares-hit");
}

#[test]
fn torsion_index_json_schema() {
    let (v, code) = json(&["torsion-index", "--group", "SO(7)"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 8);
    assert_eq!(v["verification"], "EXACT");
    assert_eq!(v["monomials_checked"], 55);

    let text = stdout(&flagchow(&["torsion-index", "--group", "SO(7)"]));
    assert!(text.contains("torsion index 8 [EXACT]"));
    assert!(text.contains("checked: 55"));
}

#[test]
fn torsion_index_with_witness_and_count() {
    let (v, code) = json(&["torsion-index", "--group", "E8", "--prime", "2", "--witness"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 64);
    assert_eq!(v["verification"], "UPPER+COUNT");
    assert_eq!(v["witness"]["p_exponent"], 6);
    assert_eq!(v["count"]["bound"], 11);
    assert_eq!(v["count"]["top_count"], 12);

    let (bare, _) = json(&["torsion-index", "--group", "E8", "--prime", "2"]);
    assert!(bare.get("witness").is_none());
}

#[test]
fn undetermined_torsion_index_is_a_data_error() {
    let o = flagchow(&["torsion-index", "--group", "Spin(13)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_or_unsupported_groups_exit_two() {
    for args in [
        vec!["hilbert", "--group", "Q7"],
        vec!["hilbert", "--group", "SO(9)", "--prime", "3"],
        vec!["present", "--group", "PU(4)"],
    ] {
        let o = flagchow(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("supported cases"), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(flagchow(&["hilbert"]).status.code(), Some(2));
    assert_eq!(flagchow(&["--format", "yaml", "rost", "--n", "1", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--format", "json", "hilbert", "--group", "SO(9)", "--maxdeg", "30"],
        vec!["present", "--group", "E8", "--prime", "5"],
        vec!["--format", "json", "restrict", "--group", "E8", "--prime", "3"],
        vec!["--format", "json", "verify", "--case", "witness-products"],
    ] {
        let a = flagchow(&args);
        let b = flagchow(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn maxdeg_is_capped_by_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_flagchow"))
        .args(["--format", "json", "hilbert", "--group", "U", "--rank", "2", "--prime", "3", "--maxdeg", "40"])
        .env("FLAGCHOW_MAXDEG", "6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["maxdeg"], 6);
    assert_eq!(v["series"].as_array().unwrap().len(), 7);

    let (default, _) = json(&["hilbert", "--group", "U", "--rank", "2", "--prime", "3"]);
    assert_eq!(default["maxdeg"], 60);

    let bad = Command::new(env!("CARGO_BIN_EXE_flagchow"))
        .args(["hilbert", "--group", "U", "--rank", "2", "--prime", "3"])
        .env("FLAGCHOW_MAXDEG", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_reports_matching_series() {
    let (v, code) = json(&["decompose", "--group", "PU(3)", "--maxdeg", "30"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["chow_series"], v["product_series"]);
    let text = stdout(&flagchow(&["decompose", "--group", "PU(3)", "--maxdeg", "30"]));
    let chow = text.lines().find(|l| l.starts_with("CH*(X)/p:")).unwrap();
    let dims: Vec<u64> = v["chow_series"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(numbers(chow.trim_start_matches("CH*(X)/p:")), dims);
}

#[test]
fn present_prints_both_gradings() {
    let (v, code) = json(&["present", "--group", "SO(7)"]);
    assert_eq!(code, 0);
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 3);
    for r in rels {
        assert_eq!(r["chowdeg"].as_u64().unwrap() * 2, r["topdeg"].as_u64().unwrap());
    }
}

#[test]
fn missing_presentation_is_a_data_error() {
    let o = flagchow(&["present", "--group", "E8", "--prime", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no full presentation"));
}

#[test]
fn steenrod_queries() {
    let (v, code) = json(&["steenrod", "--group", "SO(7)", "--op", "Sq2", "--gen", "x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"]["text"], "x5");
    assert_eq!(v["topdeg"], 5);

    let (q, _) = json(&["steenrod", "--group", "SO(7)", "--op", "Q1", "--gen", "x3"]);
    assert_eq!(q["value"]["text"], "y6");
    assert_eq!(q["topdeg"], 6);
    assert_eq!(q["chowdeg"], 3);

    let o = flagchow(&["steenrod", "--group", "SO(7)", "--op", "Sq2", "--gen", "w9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn restriction_tables_pass() {
    let (v, code) = json(&["restrict", "--group", "E8", "--prime", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let t = &v["tables"][0];
    assert_eq!(t["image_basis"].as_array().unwrap().len(), 7);
}

#[test]
fn catalog_lists_every_entry() {
    let (v, code) = json(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 11);
    assert_eq!(v["valid"], true);

    let (e, code) = json(&["catalog", "--group", "F4"]);
    assert_eq!(code, 0);
    assert_eq!(e["prime"], 3);
    assert_eq!(e["torsion_index_p"], 3);
}
