use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyamory"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[derive(serde::Deserialize)]
struct Case {
    name: String,
    args: Vec<String>,
    exit: i32,
}

#[test]
fn golden_outputs() {
    let cases: Vec<Case> =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("cli_cases.json")).unwrap()).unwrap();
    assert!(cases.len() >= 20);
    for case in cases {
        let args: Vec<&str> = case.args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(case.exit), "{}", case.name);
        let expected = std::fs::read_to_string(fixtures().join("expected").join(format!("{}.txt", case.name))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{}", case.name);
        if case.exit != 0 {
            assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "), "{}", case.name);
        }
    }
}

#[test]
fn mutation_examples() {
    let out = stdout(&["mutate", "quivers/a2.json", "1"]);
    assert!(out.starts_with("cluster: (1 + x2)*x1^-1, x2\n"));
    let out = stdout(&["mutate", "quivers/a2.json", "2"]);
    assert!(out.starts_with("cluster: x1, (1 + x1)*x2^-1\n"));
    let out = stdout(&["mutate", "quivers/a2.json", "1", "2"]);
    assert!(out.contains(", (1 + x1 + x2)*x1^-1*x2^-1\n"));
    assert_eq!(stdout(&["mutate", "quivers/a2.json", "1", "1"]), stdout(&["mutate", "quivers/a2.json"]));
}

#[test]
fn enumeration_summaries() {
    assert!(stdout(&["enumerate", "quivers/a2.json"]).starts_with("5 variables, 5 clusters, closed\n"));
    assert!(stdout(&["enumerate", "quivers/a1.json"]).starts_with("2 variables, 2 clusters, closed\n"));
    assert!(stdout(&["enumerate", "quivers/a3.json"]).starts_with("9 variables, 14 clusters, closed\n"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["enumerate", "--cap", "50", "--format", "json", "quivers/kronecker.json"])).unwrap();
    assert_eq!(json["truncated"], true);
}

#[test]
fn polyamory_reports() {
    let out = stdout(&["polyamory", "quivers/a2.json", "specialisations/x2_minus.json"]);
    assert!(out.contains("vertex 1: polyamorous\n"));
    assert!(out.ends_with("algebra: polyamorous\n"));
    let out = stdout(&["polyamory", "quivers/a3.json", "{\"assign\": {\"1\": -1, \"3\": 1}}"]);
    assert!(out.contains("polyamorous vertices: {2}\n"));
    let n = |args: &[&str]| -> usize {
        let v: serde_json::Value = serde_json::from_str(&stdout(args)).unwrap();
        v.as_array().unwrap().len()
    };
    assert_eq!(n(&["enumerate-polyamorous", "--format", "json", "quivers/a2.json"]), 2);
    assert_eq!(n(&["enumerate-polyamorous", "--format", "json", "--include-vacuous", "quivers/a2.json"]), 6);
    assert_eq!(n(&["enumerate-polyamorous", "--format", "json", "quivers/kronecker.json"]), 0);
}

#[test]
fn conway_coxeter_layout() {
    let out = stdout(&["frieze", "--n", "2", "--spec", "specialisations/all_ones.json"]);
    let layout = "\
0 0 0 0 0 0 0 0 0 0
 1 1 1 1 1 1 1 1 1 1
2 2 1 3 1 2 2 1 3 1
 3 1 2 2 1 3 1 2 2 1
1 1 1 1 1 1 1 1 1 1
 0 0 0 0 0 0 0 0 0 0
";
    assert!(out.ends_with(layout), "{out}");
}

#[test]
fn family_friezes_verify() {
    for t in -3..=3 {
        let assign = format!("{{\"assign\": {{\"1\": {t}}}}}");
        let out = stdout(&["frieze", "--n", "2", "--spec", "specialisations/x2_minus.json", "--assign", &assign, "--verify"]);
        assert!(out.ends_with("diamond rule: pass\ntameness: pass\nglide symmetry: pass\n"), "t = {t}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["frieze", "--n", "2", "--spec", "specialisations/x2_plus.json", "--assign", "specialisations/x1_four.json"]), Some(4));
    assert_eq!(code(&["frieze", "--n", "2", "--spec", "specialisations/x2_minus.json"]), Some(2));
    assert_eq!(code(&["enumerate", "--cap", "0", "quivers/a2.json"]), Some(2));
    assert_eq!(code(&["enumerate", "{\"n\": 2, \"arrows\": [[1, 1, 1]]}"]), Some(2));
    assert_eq!(code(&["frieze", "--triangulation", "{\"n\": 2, \"diagonals\": [[0, 2], [1, 3]]}"]), Some(2));
    assert_eq!(code(&["polyamory", "quivers/a2.json", "{\"assign\": {\"x\": 1}}"]), Some(2));
    assert_eq!(code(&["no-such-command"]), Some(2));
}

#[test]
fn deterministic() {
    let args = ["enumerate", "--format", "json", "quivers/a3.json"];
    assert_eq!(stdout(&args), stdout(&args));
}
