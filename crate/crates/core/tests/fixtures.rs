//! Checked-in data files: every curve and module parses and round-trips, and
//! every truth-table instance classifies as recorded.

mod common;

use curveclass::gmodule::{GModule, GModuleSpec};
use curveclass::{classify, parse_curve, Budget, CurveSpec, MarkedInstance};
use serde::Deserialize;

#[derive(Deserialize)]
struct Table {
    instances: Vec<Instance>,
}

#[derive(Deserialize)]
#[allow(non_snake_case)]
struct Instance {
    name: String,
    curve: String,
    p: u64,
    S: Vec<String>,
    T: Vec<String>,
    expected: Expected,
}

#[derive(Deserialize)]
struct Expected {
    verdict: String,
    case: u8,
    pi1: Option<String>,
    cd: Option<String>,
}

#[test]
fn curve_files_round_trip() {
    for entry in std::fs::read_dir(common::data_dir().join("curves")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let curve = parse_curve(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = serde_json::to_string(&CurveSpec::from_curve(&curve)).unwrap();
        assert_eq!(
            parse_curve(&again).unwrap().model(),
            curve.model(),
            "{}",
            path.display()
        );
    }
}

#[test]
fn module_files_parse() {
    for entry in std::fs::read_dir(common::data_dir().join("gmodules")).unwrap() {
        let path = entry.unwrap().path();
        let spec: GModuleSpec =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let module =
            GModule::from_spec(&spec).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(module.to_spec().rank, spec.rank);
        assert!(module.group_order() >= 1);
    }
}

#[test]
fn truth_table_matches() {
    let text = std::fs::read_to_string(common::data_dir().join("truth_table.json")).unwrap();
    let table: Table = serde_json::from_str(&text).unwrap();
    assert!(table.instances.len() >= 20);
    let budget = Budget::default();
    let mut cases = std::collections::BTreeSet::new();
    for inst in &table.instances {
        let curve = common::load_curve(&inst.curve);
        let marked = MarkedInstance::new(curve, &inst.S, &inst.T, inst.p, &budget).unwrap();
        let report = classify(&marked, &budget).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
        let verdict = serde_json::to_value(report.verdict).unwrap();
        assert_eq!(verdict, inst.expected.verdict.as_str(), "{}", inst.name);
        assert_eq!(report.case_number, inst.expected.case, "{}", inst.name);
        if let Some(pi1) = &inst.expected.pi1 {
            assert_eq!(report.pi1_description.as_str(), pi1, "{}", inst.name);
        }
        if let Some(cd) = &inst.expected.cd {
            assert_eq!(report.cd_bound.as_str(), cd, "{}", inst.name);
        }
        cases.insert(report.case_number);
    }
    assert_eq!(cases.len(), 7);
}

#[test]
fn census_over_every_fixture() {
    let budget = Budget::default();
    for (name, curve) in common::all_curves() {
        let points = curve.closed_points(3, &budget).unwrap();
        let l = curveclass::l_polynomial(&curve, &budget).unwrap();
        for n in 1..=3u32 {
            let from_points: u64 = points
                .iter()
                .filter(|pt| n % pt.degree == 0)
                .map(|pt| pt.degree as u64)
                .sum();
            assert_eq!(
                from_points,
                curve.count_points(n, &budget).unwrap(),
                "{name} n={n}"
            );
            assert_eq!(l.predicted_count(n), from_points as i128, "{name} n={n}");
        }
    }
}
