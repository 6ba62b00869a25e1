use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    p.display().to_string()
}

fn lpmln(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpmln"))
        .args(args)
        .env_remove("LPMLN_MAX_ATOMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn query_prints_fixed_decimals() {
    let o = lpmln(&["query", &corpus("birds.lpmln"), "--query", "bird(jo)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "P = 1.000000\n");
    let o = lpmln(&["query", &corpus("birds_soft.lpmln"), "--query", "bird(jo)", "--digits", "3"]);
    assert_eq!(stdout(&o), "P = 0.910\n");
}

#[test]
fn conditional_query_and_json() {
    let o = lpmln(&[
        "query",
        &corpus("dice.plog"),
        "--query",
        "roll(d1)=6",
        "--given",
        "even(d1)",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["query"], "roll(d1)=6");
    assert_eq!(v["given"], "even(d1)");
    assert!((v["prob"].as_f64().unwrap() - 0.25 / 0.55).abs() < 1e-12);
}

#[test]
fn full_table_has_eight_rows() {
    let o = lpmln(&["models", &corpus("birds.lpmln"), "--list-all", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9, "{text}");
    assert!(lines[0].starts_with("I "));
    assert_eq!(lines.iter().filter(|l| l.ends_with("0.333333")).count(), 3);
}

#[test]
fn json_and_table_agree_to_printed_precision() {
    let file = corpus("birds_soft.lpmln");
    let table = stdout(&lpmln(&["models", &file]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&lpmln(&["models", &file, "--format", "json"]))).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), table.lines().count());
    for (row, line) in rows.iter().zip(table.lines()) {
        let p = row["prob"].as_f64().unwrap();
        assert!(line.ends_with(&format!("{p:.6}")), "{line} vs {p}");
    }
    let full: serde_json::Value =
        serde_json::from_str(&stdout(&lpmln(&["models", &file, "--list-all", "--format", "json"]))).unwrap();
    let empty = &full.as_array().unwrap()[0];
    assert_eq!(empty["atoms"], serde_json::json!([]));
    assert_eq!(empty["satisfied"], serde_json::json!([1, 2, 3]));
    assert_eq!(empty["weight"]["hard"], 3);
}

#[test]
fn dice_translation_matches_golden_and_reparses() {
    let o = lpmln(&["translate", &corpus("dice.plog"), "--to", "lpmln"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/dice_plog.lpmln");
    assert_eq!(stdout(&o), golden);

    let dir = std::env::temp_dir().join(format!("lpmln-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dice.lpmln");
    std::fs::write(&path, golden).unwrap();
    let o = lpmln(&["query", path.to_str().unwrap(), "--query", "even(d1)"]);
    assert_eq!(stdout(&o), "P = 0.550000\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn translate_to_json_follows_schema() {
    let o = lpmln(&["translate", &corpus("birds.lpmln"), "--to", "ground", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rules = v["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 5);
    assert_eq!(rules[0]["weight"], "alpha");
    assert_eq!(rules[0]["head"], serde_json::json!(["bird(jo)"]));
    assert_eq!(rules[0]["pos"], serde_json::json!(["residentBird(jo)"]));
    assert_eq!(rules[0]["neg"], serde_json::json!(true));
}

#[test]
fn completion_requires_tightness() {
    let o = lpmln(&["translate", &corpus("friends.lpmln"), "--to", "completion"]);
    assert_eq!(o.status.code(), Some(3));
    let o = lpmln(&["translate", &corpus("friends.lpmln"), "--to", "completion", "--force"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not tight"));
    let o = lpmln(&["check", &corpus("birds.lpmln"), "--tight"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tight"));
}

#[test]
fn alchemy_output_has_no_truth_constants() {
    let o = lpmln(&["translate", &corpus("birds_soft.lpmln"), "--to", "completion", "--alchemy"]);
    let text = stdout(&o);
    assert!(text.contains("2 ResidentBird(Jo)"), "{text}");
    assert!(!text.contains("#true") && !text.contains("#false"));
}

#[test]
fn exit_codes() {
    assert_eq!(lpmln(&["query"]).status.code(), Some(1));
    assert_eq!(lpmln(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lpmln(&["--help"]).status.code(), Some(0));
    assert_eq!(
        lpmln(&["query", &corpus("birds.lpmln"), "--query", "penguin(jo)"]).status.code(),
        Some(2)
    );
    assert_eq!(lpmln(&["check", "/nonexistent/x.lpmln"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("lpmln-cli-codes-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.lpmln");
    std::fs::write(&bad, "a :- .\n").unwrap();
    let o = lpmln(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":1:"));
    // As LP^MLN this program has the stable model {} of probability 1; as ASP it has none.
    let none = dir.join("none.lpmln");
    std::fs::write(&none, "a :- not a.\n").unwrap();
    assert_eq!(stdout(&lpmln(&["models", none.to_str().unwrap()])), "{}  1.000000\n");
    let none = dir.join("none.asp");
    std::fs::write(&none, "a :- not a.\n").unwrap();
    assert_eq!(lpmln(&["models", none.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn caps_come_from_flag_or_environment() {
    let file = corpus("dice.plog");
    let o = lpmln(&["query", &file, "--query", "even(d1)", "--max-atoms", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_lpmln"))
        .args(["models", &corpus("friends.lpmln"), "--list-all"])
        .env("LPMLN_MAX_ATOMS", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn selftest_is_deterministic() {
    let a = lpmln(&["selftest", "--seed", "5", "--n", "10"]);
    let b = lpmln(&["selftest", "--seed", "5", "--n", "10"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 14);
}
