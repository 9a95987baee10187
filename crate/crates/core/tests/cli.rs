use std::process::{Command, Output};

use carnot::liealg::{cumulative_dimension, witt_dimension, CarnotAlgebra};
use carnot::sym258::symmetric_model;
use carnot::vecfield::Frame;

fn carnot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carnot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_cells_agree_with_library() {
    for d in 1..=4u32 {
        let o = carnot(&["dims", "-d", &d.to_string(), "-r", "8", "--format", "json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for row in v["rows"].as_array().unwrap() {
            let i = row["i"].as_u64().unwrap() as u32;
            assert_eq!(row["dim"].as_str().unwrap(), witt_dimension(d, i).to_string());
            assert_eq!(row["cumulative"].as_str().unwrap(), cumulative_dimension(d, i).to_string());
        }
    }
}

#[test]
fn dims_small_tables() {
    let o = carnot(&["dims", "-d", "2", "-r", "1"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].split_whitespace().collect::<Vec<_>>(), ["1", "2", "2"]);

    let o = carnot(&["dims", "-d", "3", "-r", "3"]);
    let cols: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    assert_eq!(cols.iter().map(|c| c[1].as_str()).collect::<Vec<_>>(), ["3", "3", "8"]);
    assert_eq!(cols.iter().map(|c| c[2].as_str()).collect::<Vec<_>>(), ["3", "6", "14"]);
}

#[test]
fn export_round_trips_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (model, step) in [("sym", "4"), ("gg", "3"), ("gg", "5")] {
        let path = dir.path().join(format!("{model}{step}.json"));
        let o = carnot(&["export", "--model", model, "-r", step, "--format", "json", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let first = std::fs::read_to_string(&path).unwrap();
        let frame = Frame::from_json(&first).unwrap();
        assert_eq!(frame.to_json() + "\n", first);
    }
    let sym = Frame::from_json(&std::fs::read_to_string(dir.path().join("sym4.json")).unwrap()).unwrap();
    assert_eq!(&sym, symmetric_model().frame());
    assert_eq!(sym.len(), 8);
    assert!(sym.fields().iter().all(|f| f.dim() == 8));
}

#[test]
fn export_is_deterministic() {
    let a = carnot(&["export", "--model", "gg", "-r", "4"]);
    let b = carnot(&["export", "--model", "gg", "-r", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_rejects_bad_combinations() {
    let o = carnot(&["export", "--model", "gg", "-r", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = carnot(&["export", "--model", "sym", "-r", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = carnot(&["export", "--model", "gg", "-r", "12", "--max-dim", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max-dim"));
}

#[test]
fn export_step_two_latex() {
    let o = carnot(&["export", "--model", "gg", "-r", "2", "--format", "latex"]);
    let text = stdout(&o);
    assert!(text.contains(r"H_{2} &= \frac{\partial}{\partial x_{2}} - x_{1} \frac{\partial}{\partial x_{3}}"), "{text}");
    assert_eq!(text.matches("&=").count(), 3);
}

#[test]
fn structure_constants_json_parses() {
    let o = carnot(&["structure-constants", "--model", "sym", "--format", "json"]);
    let alg = CarnotAlgebra::from_json(&stdout(&o)).unwrap();
    assert_eq!(alg.dim(), 8);
    assert_eq!(alg.brackets().len(), 7);
}

#[test]
fn verify_all_exit_status() {
    let o = carnot(&["verify-all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = carnot(&["verify-all", "--step", "1"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("sym"));
    let o = carnot(&["verify-all", "--mutate", "X0:drop-x7-term"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  sym symmetry: [X0, X1] = X2"));
    let o = carnot(&["verify-all", "--mutate", "X3:nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_json_report() {
    let o = carnot(&["verify-all", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall"], serde_json::Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn symmetry_subcommands() {
    let o = carnot(&["symmetry", "--check"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c = 1"));
    let o = carnot(&["symmetry", "--derive"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("X3 P = x1*x2"));
    let o = carnot(&["sym-model", "--derive"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("a_2^6 = x1^3/6"));
}

#[test]
fn growth_vectors() {
    assert_eq!(stdout(&carnot(&["growth-vector"])).trim(), "(2, 3, 5, 8)");
    assert_eq!(stdout(&carnot(&["growth-vector", "--model", "gg", "-r", "5"])).trim(), "(2, 3, 5, 8, 14)");
}

#[test]
fn hall_listing() {
    let text = stdout(&carnot(&["hall", "-r", "4"]));
    assert!(text.contains("H6 = [[[X2, X1], X1], X1]"));
    assert_eq!(text.lines().count(), 8);
}
