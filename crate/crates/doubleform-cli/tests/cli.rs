//! Black-box tests of the binary: golden payloads, reproducibility, and one
//! fixture per documented exit code.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doubleform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn envelope(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

const REGGE_T1: &str = r#"{"n":1,"vertices":[0,1],"dim":1,"p":1,"q":1,"coords":"affine","terms":[{"monomial":[0],"I":[0],"J":[0],"coeff":"1"}]}"#;

const AREA_T2: &str = r#"{"n":2,"vertices":[0,1,2],"dim":2,"p":1,"q":1,"coords":"affine","terms":[{"monomial":[0,0],"I":[0],"J":[1],"coeff":"1"},{"monomial":[0,0],"I":[1],"J":[0],"coeff":"-1"}]}"#;

const TRIANGLE_PAIR: &str = r#"{"num_vertices":4,"cells":[[0,1,2],[1,2,3]]}"#;

#[test]
fn dims_worked_example() {
    let out = run(&["dims", "--p", "3", "--q", "2", "--m", "0", "--n", "4", "--trace-free"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["status"], "ok");
    assert_eq!(env["payload"]["dim"], 5);
    assert_eq!(env["command"][0], "dims");
}

#[test]
fn payloads_are_byte_identical_across_runs() {
    let args = ["dim-table", "--n-max", "5"];
    let a = envelope(&run(&args));
    let b = envelope(&run(&args));
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(
        serde_json::to_string(&a["payload"]).unwrap(),
        serde_json::to_string(&b["payload"]).unwrap()
    );
    // seeded verification runs are reproducible too
    let args = ["verify", "--suite", "sphere", "--max-dim", "2", "--seed", "9"];
    let a = envelope(&run(&args));
    let b = envelope(&run(&args));
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["payload"]["seed"], 9);
}

#[test]
fn regge_fixture_extends_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fixture(&dir, "regge_T1.json", REGGE_T1);
    let out = run(&["extend", "--input", &input, "--m", "0", "--r", "0"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["status"], "ok");
    let ext = &env["payload"]["extension"];
    assert_eq!(ext["constant_c"], "2");
    let terms = ext["form"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coeff"] == "-1/2"));
}

#[test]
fn exit_codes_are_documented_behaviour() {
    let dir = tempfile::tempdir().unwrap();

    // 64: usage error
    let out = run(&["dims", "--p", "1", "--q", "1", "--m", "0", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(out.stdout.is_empty(), "usage errors print no report");

    // 64: conflicting format flags
    let mesh = write_fixture(&dir, "mesh.json", TRIANGLE_PAIR);
    let out = run(&[
        "basis", "--mesh", &mesh, "--p", "1", "--q", "1", "--m", "0", "--r", "0", "--json",
        "--pretty",
    ]);
    assert_eq!(out.status.code(), Some(64));

    // 2: the excluded r = 0, m = q case, reported as "unavailable"
    let area = write_fixture(&dir, "area_T2.json", AREA_T2);
    let out = run(&["extend", "--input", &area, "--m", "1", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let env = envelope(&out);
    assert_eq!(env["status"], "unavailable");

    // the same exclusion surfaces before any assembly work
    let out = run(&["basis", "--mesh", &mesh, "--p", "1", "--q", "1", "--m", "1", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(envelope(&out)["status"], "unavailable");

    // 3: nonvanishing facet trace
    let bad = write_fixture(
        &dir,
        "bad.json",
        r#"{"n":1,"vertices":[0,1],"dim":1,"p":0,"q":0,"coords":"affine","terms":[{"monomial":[1],"I":[],"J":[],"coeff":"1"}]}"#,
    );
    let out = run(&["extend", "--input", &bad, "--m", "0", "--r", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let env = envelope(&out);
    assert_eq!(env["status"], "failure");
    assert_eq!(env["payload"]["facet_role"], 0);

    // 1: invalid input that is not a usage error
    let out = run(&["dims", "--p", "1", "--q", "1", "--m", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(envelope(&out)["status"], "failure");

    // 0: --help is not an error
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_worked_example() {
    let out = run(&["verify", "--suite", "algebra", "--max-dim", "4", "--seed", "7"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["status"], "ok");
    let payload = &env["payload"];
    assert_eq!(payload["suite"], "algebra");
    assert_eq!(payload["seed"], 7);
    assert_eq!(payload["failures"].as_array().unwrap().len(), 0);
    assert!(payload["cases"].as_u64().unwrap() >= 100);
}

#[test]
fn pretty_basis_prints_symmetric_products() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = write_fixture(&dir, "mesh.json", TRIANGLE_PAIR);
    let out = run(&[
        "basis", "--mesh", &mesh, "--p", "1", "--q", "1", "--m", "0", "--r", "0", "--pretty",
    ]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["payload"]["num_elements"], 5);
    let texts: Vec<String> = env["payload"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|e| e["display"].as_array().unwrap().iter())
        .map(|d| d["text"].as_str().unwrap().to_string())
        .collect();
    // the shared edge {1,2} appears once per adjoining cell, same rendering
    let expected = [
        "-dλ_0⊙dλ_1",
        "-dλ_0⊙dλ_2",
        "-dλ_1⊙dλ_2",
        "-dλ_1⊙dλ_2",
        "-dλ_1⊙dλ_3",
        "-dλ_2⊙dλ_3",
    ];
    let mut sorted = texts.clone();
    sorted.sort();
    let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(sorted, want);
}

#[test]
fn dof_table_consistency() {
    let out = run(&["dof", "--p", "1", "--q", "1", "--m", "0", "--N", "3"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["payload"]["sum_matches"], true);
    assert_eq!(env["payload"]["total"], 6);
    assert_eq!(env["payload"]["rank_derived"], false);

    let out = run(&["dof", "--p", "1", "--q", "1", "--m", "0", "--N", "2", "--r", "1"]);
    let env = envelope(&out);
    assert_eq!(env["payload"]["rank_derived"], true);
    assert_eq!(env["payload"]["total"], 9);
}

#[test]
fn young_modes() {
    let out = run(&["young", "dim-gl", "--p", "2", "--q", "2", "--m", "1", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(envelope(&out)["payload"]["value"], 3);

    let out = run(&["young", "dim-sym", "--p", "3", "--q", "3", "--m", "1", "--n", "4"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["payload"]["value"], 6);
    assert_eq!(env["payload"]["matches"], true);

    let out = run(&["young", "diagram", "--p", "2", "--q", "2", "--m", "0", "--n", "3"]);
    let env = envelope(&out);
    assert_eq!(env["payload"]["summand"]["columns"], serde_json::json!([2, 2]));

    // mode names are vetted by the parser
    let out = run(&["young", "nonsense", "--p", "1", "--q", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(64));
}
