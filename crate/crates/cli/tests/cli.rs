use std::process::{Command, Output};

fn endok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endok"))
        .args(args)
        .env_remove("ENDOK_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn endo_doubling() {
    let out = endok(&["endo", "--matrix", "[[2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ktheory"]["labels"]["K0"], serde_json::json!(["Z"]));
    assert_eq!(v["ktheory"]["labels"]["K1"], serde_json::json!(["Z"]));
    assert_eq!(v["flags"]["simple"], true);
    assert_eq!(v["flags"]["purely_infinite"], true);
}

#[test]
fn poly_five_three() {
    let out = endok(&["poly", "--phi", "[[5]]", "--psi", "[[3]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ktheory"]["labels"]["K0"], serde_json::json!(["Z/2", "Z"]));
    assert_eq!(v["ktheory"]["labels"]["K1"], serde_json::json!(["Z"]));
    assert_eq!(v["validation"]["crt"]["ok"], true);
}

#[test]
fn dependent_pair_exits_2() {
    let out = endok(&["poly", "--phi", "[[2]]", "--psi", "[[2]]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("independence fails: φG + ψG ≠ G"), "{err}");
    assert_eq!(json(&out)["status"], "validation_error");
}

#[test]
fn not_exact_exits_2() {
    let out = endok(&["endo", "--matrix", "[[2,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not exact: factor x - 1"));
}

#[test]
fn solenoid_family() {
    let out = endok(&["endo", "--family", "solenoid:2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let compact = serde_json::to_string(&json(&out)).unwrap();
    assert!(compact.contains(r#""K0":["Z/2","Z[1/2]"]"#), "{compact}");
    assert!(compact.contains(r#""K1":["Z[1/2]"]"#), "{compact}");
    assert_eq!(endok(&["endo", "--family", "solenoid:2,4"]).status.code(), Some(2));
}

#[test]
fn shift_family() {
    let out = endok(&["endo", "--family", "shift:3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("K0 = Z/2"), "{text}");
    assert!(text.contains("K1 = 0"), "{text}");
}

#[test]
fn verify_and_caps() {
    let out = endok(&["verify", "--matrix", "[[2,1],[1,1]]", "--window", "8"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    let out = endok(&["verify", "--matrix", "[[2]]", "--window", "100000"]);
    assert_eq!(out.status.code(), Some(2));
    let out = endok(&["verify", "--matrix", "[[2]]", "--window", "2", "--min-compared", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn orbit_witness() {
    let out = endok(&["orbit", "--matrix", "[[2]]", "--x", "1/3", "--y", "5/12", "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let w = &v["orbit"]["same_orbit"];
    assert_eq!(w["verdict"], "found");
    assert_eq!((w["n"].as_u64(), w["m"].as_u64()), (Some(2), Some(1)));
    assert_eq!(w["point"], serde_json::json!(["2/3"]));
}

#[test]
fn malformed_input_exits_2() {
    let out = endok(&["endo", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = endok(&["endo", "--matrix", "[[2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "parse");
    let out = endok(&["verify", "--matrix", "[[2]]", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn job_file_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.toml");
    let report = dir.path().join("report.txt");
    std::fs::write(
        &job,
        format!(
            "command = \"complete\"\nphi = [[2]]\npsi = [[3]]\noutput = {:?}\nformat = \"text\"\n\n[parameters]\ndepth = 3\n",
            report.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = endok(&["run", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("status: Ok"), "{text}");

    std::fs::write(&job, "command = \"endo\"\nmatrix = [[2]\n").unwrap();
    let out = endok(&["run", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line"));
}

#[test]
fn format_from_environment_and_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_endok"))
            .args(["poly", "--phi", "[[3,1],[1,2]]", "--psi", "[[2,0],[0,2]]"])
            .env("ENDOK_FORMAT", "text")
            .output()
            .unwrap()
    };
    let a = run();
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("endok "));
    assert_eq!(a.stdout, run().stdout);
}
