use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidforge"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn temp_model(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("braidforge-{}-{name}.json", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../core/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn bundled_fixtures_validate() {
    for name in ["flip_classical", "gl_q_2", "gl_q_2_rescaled", "anyon_zeta3", "scalar_c", "sl_q_2", "sl_q_2_braided"] {
        let o = run(&["validate", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn model_files_load_from_disk() {
    let p = temp_model("copy", &fixture_text("anyon_zeta3"));
    let o = run(&["validate", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["model"], "anyon_zeta3");
}

#[test]
fn perturbed_r_fails_with_a_witness() {
    let p = temp_model("bad", &fixture_text("gl_q_2").replace("\"q - 1/q\"", "\"q\""));
    let path = p.to_str().unwrap();
    let o = run(&["validate", path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["id"], "r braid equation");
    assert!(failed[0]["witness"]["column"].is_u64());
    // and a later suite fails with its own located witness
    let o = run(&["verify", path, "--suite", "hopf", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["suite"] == "hopf" && c["status"] == "fail"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["validate", "no_such_model"]).status.code(), Some(2));
    let p = temp_model("shape", &fixture_text("gl_q_2").replace("[\"0\", \"0\", \"0\", \"q\"]", "[\"0\", \"0\", \"q\"]"));
    assert_eq!(run(&["validate", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["dims", "gl_q_2", "--algebra", "ac"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run_env(&["validate", "gl_q_2"], &[("BRAIDFORGE_THREADS", "0")]).status.code(), Some(2));
}

#[test]
fn dimensions() {
    let dims = |args: &[&str]| -> Vec<u64> {
        let mut a = vec!["dims", "--format", "json"];
        a.extend_from_slice(args);
        let o = run(&a);
        assert_eq!(o.status.code(), Some(0));
        json(&o)["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
    };
    assert_eq!(dims(&["gl_q_2", "--algebra", "ar"]), [1, 4, 10, 20]);
    assert_eq!(dims(&["gl_q_2_rescaled", "--algebra", "v", "--max-degree", "4"]), [1, 2, 3, 4, 5]);
    assert_eq!(dims(&["anyon_zeta3", "--algebra", "vbullet", "--braiding", "psi", "--max-degree", "4"]), [1, 1, 1, 0, 0]);
    assert_eq!(dims(&["scalar_c", "--algebra", "arc"]), [1, 2, 2, 2]);
    assert_eq!(dims(&["flip_classical", "--algebra", "t", "--max-degree", "2"]), [1, 2, 4]);
}

#[test]
fn relations_of_the_quantum_plane_and_quantum_matrices() {
    let o = run(&["relations", "gl_q_2_rescaled", "--algebra", "v", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x1 x2 - (1/(q)) x2 x1 = 0"), "{}", stdout(&o));
    let o = run(&["relations", "gl_q_2", "--algebra", "ar", "--degree", "2", "--format", "json"]);
    assert_eq!(json(&o)["relations"].as_array().unwrap().len(), 6);
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"].as_array().unwrap().iter().map(|c| (c["id"].as_str().unwrap().into(), c["status"].as_str().unwrap().into())).collect()
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let args = ["verify", "sl_q_2", "--suite", "qbg", "--max-degree", "2", "--format", "json"];
    let one = run_env(&args, &[("BRAIDFORGE_THREADS", "1")]);
    let four = run_env(&args, &[("BRAIDFORGE_THREADS", "4")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(statuses(&json(&one)), statuses(&json(&four)));
    assert!(statuses(&json(&one)).iter().all(|(_, s)| s == "pass" || s == "skipped"));
}

#[test]
fn binomial_lists_shuffle_braids() {
    let o = run(&["binomial", "4", "2", "--format", "json"]);
    assert_eq!(json(&o)["terms"].as_array().unwrap().len(), 6);
    // [4 choose 2] at a primitive cube root of unity vanishes
    let o = run(&["binomial", "4", "2", "--model", "anyon_zeta3", "--format", "json"]);
    assert_eq!(json(&o)["value"], "0");
    let o = run(&["binomial", "3", "1", "--model", "flip_classical"]);
    assert!(stdout(&o).contains("3 terms"));
}

#[test]
fn calc_on_the_line_model() {
    let o = run(&["calc", "scalar_c"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ω = -e1⊗t^1_1⊗x1"), "{out}");
    assert!(out.contains("d(t^1_1) = 0"), "{out}");
    assert_eq!(run(&["calc", "gl_q_2"]).status.code(), Some(2));
}
