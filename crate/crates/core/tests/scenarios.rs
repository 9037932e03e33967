use std::path::PathBuf;

use revforge::scenario::{export_dot, run_scenario, Format, RunTrace, Scenario};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_dot(name: &str) {
    let trace = run_scenario(golden(&format!("{name}.scenario"))).unwrap();
    let expected = std::fs::read_to_string(golden(&format!("{name}.dot"))).unwrap();
    assert_eq!(export_dot(&trace), expected, "{name}.dot");
}

#[test]
fn dot_single_tpo() {
    check_dot("single");
}

#[test]
fn dot_two_steps() {
    check_dot("two_step");
}

#[test]
fn dot_tied_blocks() {
    check_dot("tied");
}

#[test]
fn traces_are_deterministic() {
    for name in ["single", "two_step", "tied"] {
        let path = golden(&format!("{name}.scenario"));
        let a = run_scenario(&path).unwrap();
        let b = run_scenario(&path).unwrap();
        for format in [Format::Text, Format::Json, Format::Dot] {
            assert_eq!(a.render(format), b.render(format));
        }
    }
}

#[test]
fn embedded_scenario_replays() {
    let trace = run_scenario(golden("two_step.scenario")).unwrap();
    let json = trace.render(Format::Json);
    let loaded = RunTrace::from_json(&json).unwrap();
    assert_eq!(loaded.replay().unwrap().render(Format::Json), json);
}

#[test]
fn scenario_json_round_trip() {
    let s = Scenario::adder();
    assert_eq!(Scenario::from_json(&s.to_json()).unwrap(), s);
}

#[test]
fn two_step_text() {
    let trace = run_scenario(golden("two_step.scenario")).unwrap();
    let text = trace.to_text();
    assert!(text.contains("step 1: serial-revise B\n  input:   [{00} < {01} < {10} < {11}]\n  output:  [{01} < {00} < {10} < {11}]"), "{text}");
    assert!(text.contains("step 2: contract-set {B}"), "{text}");
    assert_eq!(trace.final_state().output.render(), "[{00,01} < {10} < {11}]");
}
