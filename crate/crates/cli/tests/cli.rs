use std::process::{Command, Output};

fn achord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_achord"))
        .args(args)
        .env_remove("ACHORD_MAX_CHORDS")
        .env_remove("ACHORD_MAX_VERTICES")
        .env_remove("ACHORD_MAX_CURVE_EDGES")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = achord(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn check_twins() {
    let s = stdout(&["check", "abab"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "analytic");
    assert!(lines[2].contains("true twins"));
    assert!(lines.last().unwrap().ends_with("aa -> (empty)"));
}

#[test]
fn check_reports_a_witness() {
    let v = json(&["check", "abcadbecde", "--format", "json"]);
    assert_eq!(v["analytic"], false);
    assert_eq!(v["witness"]["shape"], "gem");
    assert!(stdout(&["check", "0,1,2,0,3,1,4,2,3,4"]).starts_with("not analytic\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(achord(&["check", "abb"]).status.code(), Some(1));
    assert_eq!(achord(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(achord(&["check", "abab", "--format", "bfile"]).status.code(), Some(2));
    assert_eq!(achord(&["check"]).status.code(), Some(2));
    let out = achord(&["decompose", "aabb"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not connected"));
}

#[test]
fn series_bfile() {
    let s = stdout(&["series", "--which", "A", "--order", "10", "--format", "bfile"]);
    let want = [1u64, 1, 3, 15, 105, 923, 9417, 105815, 1267681, 15875631, 205301361];
    let expect: String = want.iter().enumerate().map(|(n, a)| format!("{n} {a}\n")).collect();
    assert_eq!(s, expect);
}

#[test]
fn series_json_keeps_integers_exact() {
    let v = json(&["series", "--which", "C", "--order", "30", "--format", "json", "--verify"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 31);
    assert!(c.iter().all(|x| x.is_string()));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn enumerate_bfile_matches_series() {
    let e = stdout(&["enumerate", "--n", "6", "--filter", "analytic", "--format", "bfile"]);
    let s = stdout(&["series", "--which", "A", "--order", "6", "--format", "bfile"]);
    assert_eq!(e, s);
    let words = stdout(&["enumerate", "--n", "3", "--filter", "cyclic", "--emit", "diagrams"]);
    assert_eq!(words.lines().count(), 5);
}

#[test]
fn budgets_come_from_env_then_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_achord"))
        .args(["enumerate", "--n", "4"])
        .env("ACHORD_MAX_CHORDS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_achord"))
        .args(["enumerate", "--n", "4", "--max-chords", "4"])
        .env("ACHORD_MAX_CHORDS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn curve_counts() {
    assert_eq!(stdout(&["curves", "count", "--passport", "1", "--mode", "bruteforce"]), "1\n");
    assert_eq!(stdout(&["curves", "count", "--passport", "1", "--mode", "rooted"]), "1\n");
    assert_eq!(
        stdout(&["curves", "count", "--passport", "2", "--mode", "rooted", "--variant", "printed"]),
        "36\n"
    );
    let v = json(&["curves", "count", "--passport", "2,1", "--mode", "marked", "--format", "json"]);
    assert_eq!(v["count"], "24");
    assert_eq!(stdout(&["curves", "pluecker", "--d", "5", "--passport", "1,1,2"]), "admissible\n");
    assert_eq!(stdout(&["curves", "pluecker", "--d", "3", "--passport", "2"]), "not admissible\n");
}

#[test]
fn curve_inspect_counts_faces() {
    let v = json(&["curves", "inspect", "--diagrams", "abab;aa", "--alpha", "4,2,1,5,0,3", "--format", "json"]);
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["genus"], 0);
}

#[test]
fn constants_are_exact_rationals() {
    let v = json(&["constants", "--format", "json"]);
    assert_eq!(v["alpha"]["certified"], true);
    let lo = v["beta_inv"]["lo"].as_str().unwrap();
    let (p, q) = lo.split_once('/').unwrap();
    assert!(p.len() >= q.len());
}

fn well_formed(svg: &str) -> roxmltree::Document<'_> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc
}

#[test]
fn svg_outputs_parse() {
    let empty = stdout(&["render", ""]);
    let doc = well_formed(&empty);
    let kids: Vec<_> = doc.root_element().children().filter(|n| n.is_element()).collect();
    assert_eq!(kids.len(), 1);
    assert_eq!(kids[0].tag_name().name(), "circle");

    let ab = stdout(&["render", "abab"]);
    let doc = well_formed(&ab);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("path")).count(), 2);

    well_formed(&stdout(&["render", "abacdecbdfef", "--cordage", "--svg"]));
    well_formed(&stdout(&["decompose", "abacbdcede", "--format", "svg"]));
    well_formed(&stdout(&["render", "--curve", "abab;aa", "--alpha", "4,2,1,5,0,3"]));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["render", "abacdecbdfef", "--cordage"][..],
        &["constants", "--format", "json"],
        &["enumerate", "--n", "5", "--filter", "cyclic", "--format", "json"],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}
