use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curveclass"))
        .args(args)
        .env_remove("CURVECLASS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schemas/classification_report.schema.json"
    ))
    .unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

#[test]
fn validate_summaries() {
    let o = run(&["validate", &data("curves/line_f2.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("genus 0, q=2"));
    let o = run(&["validate", &data("curves/ell_f3_h4.json")]);
    assert!(stdout(&o).contains("genus 1, q=3, 1 point at infinity"));
}

#[test]
fn validate_rejects_singular() {
    let dir = tempdir();
    let path = dir.join("singular.json");
    std::fs::write(
        &path,
        r#"{"field":{"p":3},"model":{"kind":"double_cover","f":[0,0,1,1]}}"#,
    )
    .unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular model"));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curveclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn point_listings() {
    let o = run(&["points", &data("curves/line_f2.json"), "--max-degree", "2"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("d2#0 "));
    let o = run(&[
        "points",
        &data("curves/ell_f3_h4.json"),
        "--max-degree",
        "1",
    ]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["points", &data("curves/line_f2.json"), "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn unknown_flags_are_errors() {
    let o = run(&["points", &data("curves/line_f2.json"), "--bogus"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn classify_examples() {
    let o = run(&[
        "classify",
        &data("curves/line_f2.json"),
        "--p",
        "2",
        "--S",
        "d1#0",
        "--T",
        "d1#1",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "KPI1_TRUE");
    assert_eq!(v["cd_bound"], "=1");

    let o = run(&[
        "classify",
        &data("curves/line_f2.json"),
        "--p",
        "2",
        "--T",
        "d2#0",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "KPI1_FALSE");
    assert_eq!(v["pi1_description"], "cyclic of order p^r");
    assert_eq!(v["pi1_r"], 1);

    let o = run(&["classify", &data("curves/ell_f3_h4.json"), "--p", "2"]);
    assert!(stdout(&o).starts_with("verdict: KPI1_TRUE"));
}

#[test]
fn classify_exit_codes() {
    let o = run(&[
        "classify",
        &data("curves/line_f3.json"),
        "--p",
        "2",
        "--T",
        "d1#0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "classify",
        &data("curves/line_f3.json"),
        "--p",
        "3",
        "--T",
        "d1#7",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "classify",
        &data("curves/line_f3.json"),
        "--p",
        "3",
        "--S",
        "d1#0",
        "--T",
        "d1#0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_curveclass"))
        .args([
            "classify",
            &data("curves/line_f5.json"),
            "--p",
            "5",
            "--T",
            "d3#0",
        ])
        .env("CURVECLASS_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_reports_match_schema_and_round_trip() {
    let schema = schema();
    let table: Value =
        serde_json::from_str(&std::fs::read_to_string(data("truth_table.json")).unwrap()).unwrap();
    for inst in table["instances"].as_array().unwrap() {
        let mut args = vec![
            "--json".to_string(),
            "classify".into(),
            data(inst["curve"].as_str().unwrap()),
        ];
        args.extend(["--p".into(), inst["p"].to_string()]);
        for (flag, key) in [("--S", "S"), ("--T", "T")] {
            let ids = inst[key].as_array().unwrap();
            if !ids.is_empty() {
                args.push(flag.into());
                args.extend(ids.iter().map(|i| i.as_str().unwrap().to_string()));
            }
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert!(o.status.success(), "{}", inst["name"]);
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors
                .map(|e| format!("{} at {}", e, e.instance_path))
                .collect();
            panic!("{}: {msgs:?}", inst["name"]);
        }
        assert_eq!(
            serde_json::to_string_pretty(&v).unwrap() + "\n",
            text,
            "{}",
            inst["name"]
        );
        assert_eq!(
            v["verdict"], inst["expected"]["verdict"],
            "{}",
            inst["name"]
        );
    }
}

#[test]
fn zeta_and_oracle() {
    let o = run(&["--json", "zeta", &data("curves/g2_f7_h42.json"), "--p", "7"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["l_polynomial"], serde_json::json!([1, -1, 0, -7, 49]));
    assert_eq!(v["class_number"], 42);
    assert_eq!(v["pic_p_nontrivial"], true);

    let o = run(&["--json", "oracle", &data("curves/ell_f7_h12.json")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["structure"]["invariant_factors"],
        serde_json::json!([2, 6])
    );
    assert_eq!(v["agree"], true);

    let o = run(&["oracle", &data("curves/g2_f5_real.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gmodule_harness() {
    let o = run(&["gmodule", &data("gmodules/swap.json"), "--p", "3"]);
    assert!(stdout(&o).contains("equal=true"));
    let o = run(&["gmodule", &data("gmodules/sign.json"), "--p", "2"]);
    assert!(stdout(&o).contains("hypothesis-violation"));

    let o = run(&["gmodule", "--random", "200", "--seed", "7", "--p", "3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 200);
    for line in out.lines().filter(|l| !l.contains("p divides")) {
        assert!(line.contains("equal=true"), "{line}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--json", "gmodule", "--random", "50", "--seed", "3", "--p", "5",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["points", &data("curves/g2_f3_h6.json"), "--max-degree", "3"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
}
