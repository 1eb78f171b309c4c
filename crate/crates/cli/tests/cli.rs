use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ssbp_core::instances::format::parse_any;
use ssbp_core::instances::AnyInstance;
use tempfile::TempDir;

fn ssbp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssbp")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn ok(dir: &Path, args: &[&str]) {
    let o = ssbp(dir, args);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn generated_avgfree_set_verifies() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["gen", "avgfree", "--k", "2", "--n", "16", "--eps", "0.5", "-o", "s.json"]);
    assert_eq!(read_json(&d.path().join("s.json"))["elements"].as_array().unwrap().len(), 16);
    let o = ssbp(d.path(), &["verify", "avgfree", "--in", "s.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o)["status"], "PASS");
}

#[test]
fn progression_is_not_average_free() {
    let d = TempDir::new().unwrap();
    let o = ssbp(d.path(), &["verify", "avgfree", "--set", "1,2,3", "-k", "2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o)["status"], "FAIL");
}

#[test]
fn generation_is_reproducible() {
    let d = TempDir::new().unwrap();
    for name in ["a.json", "b.json"] {
        ok(d.path(), &["gen", "subset-sum", "--n", "10", "--max", "100", "--seed", "7", "-o", name]);
    }
    assert_eq!(fs::read(d.path().join("a.json")).unwrap(), fs::read(d.path().join("b.json")).unwrap());
    ok(d.path(), &["gen", "subset-sum", "--n", "10", "--max", "100", "--seed", "8", "-o", "c.json"]);
    assert_ne!(fs::read(d.path().join("a.json")).unwrap(), fs::read(d.path().join("c.json")).unwrap());
}

#[test]
fn worked_example_target_bits() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["gen", "csp", "--vars", "3", "--universe-bits", "1", "--paper-example", "-o", "csp.json"]);
    ok(d.path(), &["reduce", "csp2ss", "--in", "csp.json", "-o", "ss.json", "--layout", "paper-example"]);
    let ss = read_json(&d.path().join("ss.json"));
    assert_eq!(ss["target_bits"], "110000111111000010001000100");
    assert!(d.path().join("ss.witness.json").exists());
    let o = ssbp(d.path(), &["solve", "--algo", "brute", "--in", "ss.json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn split_into_two_groups() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("ss.json"), r#"{"items":["1","2","3","4"],"target":"5"}"#).unwrap();
    ok(d.path(), &["reduce", "ss2ksum", "-k", "2", "--in", "ss.json", "-o", "k.json"]);
    let k = read_json(&d.path().join("k.json"));
    assert_eq!(k, serde_json::json!({"groups": [["0", "1", "2", "3"], ["0", "3", "4"]], "target": "5"}));
}

#[test]
fn digit_expansion_keeps_two_lengths() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("k.json"), r#"{"groups":[["3","9","14"],["0","5","17"],["2","11"]],"target":"20"}"#).unwrap();
    ok(d.path(), &["reduce", "ksum2path", "--in", "k.json", "-o", "g.json"]);
    assert!(d.path().join("g.trace.json").exists());
    ok(d.path(), &["reduce", "digit-expand", "--tau", "1", "--in", "g.json", "-o", "h.json"]);
    let AnyInstance::Bicriteria(h) = parse_any(&fs::read_to_string(d.path().join("h.json")).unwrap()).unwrap() else {
        panic!("expected a bicriteria instance");
    };
    let (lengths, _) = h.distinct_weights();
    assert!(lengths <= 2, "{lengths} distinct lengths");
    let a = code(&ssbp(d.path(), &["solve", "--in", "g.json"]));
    let b = code(&ssbp(d.path(), &["solve", "--algo", "distinct-dp", "--cap-distinct", "2", "--in", "h.json"]));
    assert_eq!(a, b);
}

#[test]
fn solve_exit_codes() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("yes.json"), r#"{"items":["3","5","7"],"target":"12"}"#).unwrap();
    let o = ssbp(d.path(), &["solve", "--algo", "dp", "--in", "yes.json", "-o", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read_json(&d.path().join("r.json"))["answer"], "yes");
    let o = ssbp(d.path(), &["verify", "certificate", "--in", "yes.json", "--result", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o)["status"], "PASS");

    // no subset of {2, 4} sums to 3, so the gadget has no feasible path
    fs::write(d.path().join("no.json"), r#"{"items":["2","4"],"target":"3"}"#).unwrap();
    ok(d.path(), &["reduce", "or2path", "--in", "no.json", "-o", "gadget.json"]);
    let o = ssbp(d.path(), &["solve", "--algo", "joksch", "--in", "gadget.json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o)["answer"], "no");

    ok(d.path(), &["gen", "subset-sum", "--n", "30", "-o", "big.json"]);
    let o = ssbp(d.path(), &["solve", "--algo", "brute", "--in", "big.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn tampered_certificate_fails() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("s.json"), r#"{"items":["3","5","7"],"target":"12"}"#).unwrap();
    let bad = r#"{"answer":"yes","certificate":{"kind":"subset","items":[0,1]},"stats":{"states":0,"nanos":0}}"#;
    fs::write(d.path().join("r.json"), bad).unwrap();
    let o = ssbp(d.path(), &["verify", "certificate", "--in", "s.json", "--result", "r.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn type_mismatch_is_an_error() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("s.json"), r#"{"items":["1"],"target":"1"}"#).unwrap();
    let o = ssbp(d.path(), &["reduce", "ksum2path", "--in", "s.json", "-o", "g.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("subset-sum"));
    let o = ssbp(d.path(), &["solve", "--algo", "joksch", "--in", "s.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn dimacs_input_is_accepted() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["gen", "cnf", "--vars", "4", "--clauses", "6", "-o", "f.cnf"]);
    assert!(fs::read_to_string(d.path().join("f.cnf")).unwrap().starts_with("p cnf 4 6"));
    ok(d.path(), &["reduce", "sat2csp", "--group-bits", "2", "--in", "f.cnf", "-o", "csp.json"]);
    let a = code(&ssbp(d.path(), &["solve", "--in", "f.cnf"]));
    let b = code(&ssbp(d.path(), &["solve", "--in", "csp.json"]));
    assert!(a < 2 && a == b);
}

#[test]
fn equivalence_mode_passes_on_every_step() {
    let d = TempDir::new().unwrap();
    for (step, trials) in [
        ("sat2csp", "100"),
        ("csp2ss", "30"),
        ("ss2ksum", "100"),
        ("or2path", "100"),
        ("ksum2path", "100"),
        ("digit-expand", "100"),
        ("exact2bicrit", "100"),
        ("bicrit2exact", "40"),
    ] {
        let o = ssbp(d.path(), &["verify", "equivalence", "--step", step, "--trials", trials, "--max-vars", "3"]);
        assert_eq!(code(&o), 0, "{step}: {}", String::from_utf8_lossy(&o.stdout));
        let report = stdout(&o);
        assert_eq!(report["status"], "PASS");
        assert_eq!(report["detail"]["trials"], trials.parse::<u64>().unwrap());
    }
}

#[test]
fn pipeline_outputs_and_provenance() {
    let d = TempDir::new().unwrap();
    let gen = ["gen", "bicriteria", "--n", "6", "--edge-prob", "0.6", "--budget-length", "40", "--budget-cost", "40"];
    ok(d.path(), &[&gen[..], &["--seed", "1", "-o", "g.json"]].concat());
    ok(d.path(), &["reduce", "bicrit2exact", "-k", "2", "--in", "g.json", "-o", "e.jsonl"]);
    let lines = fs::read_to_string(d.path().join("e.jsonl")).unwrap().lines().count();
    let prov = read_json(&d.path().join("e.provenance.json"));
    assert_eq!(prov["instances"].as_array().unwrap().len(), lines);
    assert!(lines > 0);

    ok(d.path(), &["reduce", "bicrit2exact", "-k", "2", "--format", "json", "--in", "g.json", "-o", "dir"]);
    assert_eq!(fs::read_dir(d.path().join("dir")).unwrap().count(), lines);
    let first = fs::read_to_string(d.path().join("dir/000000.json")).unwrap();
    assert!(matches!(parse_any(&first).unwrap(), AnyInstance::ExactKPath(_)));

    let o = ssbp(d.path(), &["reduce", "bicrit2exact", "-k", "2", "--cap-outputs", "1", "--in", "g.json", "-o", "x"]);
    assert_eq!(code(&o), 2);

    let cc = code(&ssbp(d.path(), &["solve", "-k", "2", "--in", "g.json"]));
    let brute = code(&ssbp(d.path(), &["solve", "-k", "2", "--algo", "brute", "--in", "g.json"]));
    assert_eq!(cc, brute);
}

#[test]
fn bench_tables() {
    let d = TempDir::new().unwrap();
    let args = ["bench", "joksch", "--budgets", "1024,2048,4096,8192,16384", "--vertices", "12", "--reps", "1"];
    let o = ssbp(d.path(), &args);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert_eq!(csv.lines().count(), 6);

    // everything but the two timing columns
    let strip = |csv: &str| -> Vec<String> {
        csv.lines()
            .map(|l| l.split(',').enumerate().filter(|(i, _)| *i != 4 && *i != 6).map(|(_, c)| c).collect::<Vec<_>>().join(","))
            .collect()
    };
    let run = |seed: &str| {
        let o = ssbp(d.path(), &["bench", "dp-vs-mim", "--items", "6,10,14", "--max-item", "500", "--seed", seed]);
        assert_eq!(code(&o), 0);
        String::from_utf8(o.stdout).unwrap()
    };
    let (a, b) = (run("3"), run("3"));
    assert_eq!(a.lines().next().unwrap(), "items,target,answer,dp_states,dp_nanos,mim_states,mim_nanos");
    for line in a.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7);
        assert!(cols.iter().all(|c| !c.is_empty()));
    }
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn manifest_replays_byte_identical() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--manifest", "m.json", "gen", "subset-sum", "--from-cnf", "--seed", "5", "-o", "ss.json"]);
    let m = read_json(&d.path().join("m.json"));
    assert_eq!(m["seed"], 5);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 3);
    assert!(!m["command"].as_array().unwrap().iter().any(|a| a == "--manifest"));

    ok(d.path(), &["reduce", "ss2ksum", "-k", "3", "--in", "ss.json", "-o", "k.json", "--manifest", "r.json"]);
    let r = read_json(&d.path().join("r.json"));
    assert_eq!(r["inputs"][0]["sha256"], m["outputs"][0]["sha256"]);

    fs::write(d.path().join("k.json"), "scribbled").unwrap();
    let o = ssbp(d.path(), &["replay", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o)["status"], "PASS");

    let mut forged = r.clone();
    forged["outputs"][0]["sha256"] = serde_json::json!("00");
    fs::write(d.path().join("forged.json"), forged.to_string()).unwrap();
    let o = ssbp(d.path(), &["replay", "forged.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn csp_equivalence_at_full_scale() {
    let d = TempDir::new().unwrap();
    let o = ssbp(d.path(), &["verify", "equivalence", "--step", "csp2ss", "--trials", "500", "--max-vars", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let detail = &stdout(&o)["detail"];
    assert_eq!(detail["trials"], 500);
    // both answers must actually occur for the comparison to mean anything
    assert!(detail["yes"].as_u64().unwrap() > 0 && detail["no"].as_u64().unwrap() > 0);
}
