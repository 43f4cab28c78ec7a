use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn centroqx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_centroqx"))
        .args(args)
        .output()
        .expect("run centroqx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "i2.txt", "2 2\n1 0\n0 1\n");
    let o = centroqx(&["decompose", "--input", &input, "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# Q\n"));
    assert!(text.contains("# X\n"));
    let report: serde_json::Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(report["off_support"], 0.0);

    let out = dir.path().join("factors.txt");
    let o = centroqx(&["decompose", "--input", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), text);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let not_centro = write(dir.path(), "a.txt", "2 2\n1 2\n3 4\n");
    let o = centroqx(&["decompose", "--input", &not_centro]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));

    let garbage = write(dir.path(), "g.txt", "two by two\n");
    assert_eq!(centroqx(&["decompose", "--input", &garbage]).status.code(), Some(2));
    assert_eq!(centroqx(&["decompose", "--input", "/nonexistent/m.txt"]).status.code(), Some(2));

    let odd = write(dir.path(), "odd.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let o = centroqx(&["bounds", "--gen", "file", "--input", &odd]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(centroqx(&["bounds", "--m", "4", "--n", "3"]).status.code(), Some(2));
    assert_eq!(centroqx(&["bounds", "--m", "2", "--n", "4"]).status.code(), Some(2));
    assert_eq!(centroqx(&["bounds"]).status.code(), Some(2));
    assert_eq!(centroqx(&["bounds", "--gen", "file"]).status.code(), Some(2));
    assert_eq!(centroqx(&["bounds", "--m", "6", "--n", "4", "--gen", "toeplitz"]).status.code(), Some(2));
    assert_eq!(centroqx(&["table", "--preset", "t9"]).status.code(), Some(2));
    assert_eq!(centroqx(&["table", "--preset", "t1", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(centroqx(&["fd-check", "--m", "8", "--n", "4", "--eps", "1e-6,1e-5"]).status.code(), Some(2));
    assert_eq!(centroqx(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn bounds_reports_a_dominated_trial() {
    let o = centroqx(&["bounds", "--m", "8", "--n", "4", "--scale", "1e-8", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["config"]["m"], 8);
    assert!(rec["error"].is_null());
    let dom = rec["domination"].as_array().unwrap();
    assert!(!dom.is_empty());
    assert!(dom.iter().all(|d| d["dominated"] == true));
}

#[test]
fn bounds_accepts_every_selector() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.txt", "4 4\n4 1 0.5 0.25\n1 4 1 0.5\n0.5 1 4 1\n0.25 0.5 1 4\n");
    for args in [
        vec!["bounds", "--gen", "file", "--input", input.as_str(), "--k", "ones"],
        vec!["bounds", "--m", "6", "--n", "6", "--gen", "toeplitz", "--d", "identity"],
        vec!["bounds", "--m", "8", "--n", "4", "--size-cap", "10"],
    ] {
        let o = centroqx(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn cond_prints_exact_values_and_probe() {
    let o = centroqx(&["cond", "--m", "6", "--n", "4", "--probe", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["cond"]["exact"]["mx"].as_f64().unwrap() > 0.0);
    assert_eq!(v["probe"]["samples"], 20);
    let o = centroqx(&["cond", "--m", "6", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("probe").is_none());
}

#[test]
fn table_is_byte_identical_across_runs() {
    let a = centroqx(&["table", "--preset", "t1", "--seed", "42"]);
    let b = centroqx(&["table", "--preset", "t1", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().nth(1).unwrap().starts_with("1,\"(20,10)\",20,10,"));
    let c = centroqx(&["table", "--preset", "t1", "--seed", "7"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn table_formats_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t5.json");
    let o = centroqx(&["table", "--preset", "t5", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    let md = stdout(&centroqx(&["table", "--preset", "t6", "--format", "md"]));
    assert!(md.starts_with("| row | label |"));
}

#[test]
fn fd_check_passes_on_random_instances() {
    let o = centroqx(&["fd-check", "--m", "8", "--n", "4", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_passes_and_detects_a_fault() {
    let o = centroqx(&["verify", "--trials", "10", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = centroqx(&["verify", "--trials", "10", "--seed", "42", "--no-fd", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
    assert!(stdout(&o).contains("x_refined"));
}
