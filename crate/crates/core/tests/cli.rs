use std::path::PathBuf;
use std::process::Command;

use waldkit::cli::{is_evidence, run_suite, Status, Suite, SuiteConfig};
use waldkit::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_waldkit"))
}

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("waldkit-cli-{}-{}", name, std::process::id()));
    std::fs::create_dir_all(&p).unwrap();
    p
}

#[test]
fn axioms_on_pointed_sets_exit_zero() {
    let out = scratch("axioms");
    let st = bin().args(["run", "axioms", "--instance", "pointed_sets", "--size", "3", "--out"]).arg(&out).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("axioms.json")).unwrap()).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["config"]["instances"][0], "pointed_sets");
    assert!(json["header"]["k0_note"].as_str().unwrap().starts_with("K0"));
    assert_eq!(json["header"]["modules"]["qcat"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn additivity_reports_identity_counts() {
    let out = scratch("additivity");
    let st = bin()
        .args(["run", "additivity", "--instance", "pointed_sets", "--size", "2", "--n-max", "2", "--m-max", "1", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert_eq!(st.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("additivity.json")).unwrap()).unwrap();
    assert!(json["sections"][0]["data"]["identities_checked"].as_u64().unwrap() > 0);
}

#[test]
fn malformed_config_exits_two_with_location() {
    let dir = scratch("bad");
    for (text, needle) in [("n_max = \"two\"\n", "line 1"), ("size = 2\nsise = 3\n", "unknown field"), ("trunc = 1\nn_max = 2\n", "trunc")] {
        let p = dir.join("bad.toml");
        std::fs::write(&p, text).unwrap();
        let o = bin().args(["run", "k0", "--config"]).arg(&p).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{}", text);
        assert!(String::from_utf8_lossy(&o.stderr).contains(needle), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = bin().args(["run", "k0", "--instance", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_overflow_exits_three_with_partial_report() {
    let dir = scratch("budget");
    let p = dir.join("tight.toml");
    std::fs::write(&p, "budget = 5\ninstances = [\"pointed_sets:3\"]\n").unwrap();
    let st = bin().args(["run", "all", "--config"]).arg(&p).arg("--out").arg(&dir).output().unwrap().status;
    assert_eq!(st.code(), Some(3));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("all.json")).unwrap()).unwrap();
    assert_eq!(json["status"], "budget_exceeded");
    assert!(!json["sections"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { out: scratch("det"), ..SuiteConfig::default() };
    let a = run_suite(&cfg, Suite::K0).unwrap().to_json().unwrap();
    let b = run_suite(&cfg, Suite::K0).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_round_trip_and_validation() {
    let cfg = SuiteConfig::default();
    let text = toml::to_string(&cfg).unwrap();
    assert_eq!(SuiteConfig::from_toml(&text).unwrap(), cfg);
    assert!(matches!(SuiteConfig::from_toml("budget = 0"), Err(Error::Config(_))));
    assert!(matches!(SuiteConfig::from_toml("instances = [\"pointed_sets:x\"]"), Err(Error::Config(_))));
    let specs = SuiteConfig::from_toml("instances = [\"vect_f2\", \"pointed_sets:3\"]\nsize = 1").unwrap().instance_specs().unwrap();
    assert_eq!(specs.iter().map(|s| s.label()).collect::<Vec<_>>(), ["vect_f2:1", "pointed_sets:3"]);
}

#[test]
fn evidence_clauses_do_not_gate() {
    assert!(is_evidence("evidence_pi0_h0_h1"));
    assert!(is_evidence("prefix.evidence_pi0_h0_h1"));
    assert!(!is_evidence("k0_of_e_is_sum"));
    assert_eq!(Status::Pass.exit_code(), 0);
    assert_eq!(Status::CheckFailure.exit_code(), 1);
    assert_eq!(Status::BudgetExceeded.exit_code(), 3);
}
