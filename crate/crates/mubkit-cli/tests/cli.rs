//! End-to-end checks of the command-line contract: flag handling, exit
//! codes, file round trips and export shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn mubkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mubkit"))
}

fn run(args: &[&str]) -> Output {
    mubkit().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("mubkit-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_d2_has_three_bases() {
    let out = run(&["generate", "--dim", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["schema_version"], "mub/1");
    assert_eq!(doc["dim"], 2);
    assert_eq!(doc["method"], "prime");
    assert_eq!(doc["bases"].as_array().unwrap().len(), 3);
    // Every non-standard entry has modulus 1/sqrt(2).
    for basis in doc["bases"].as_array().unwrap().iter().skip(1) {
        for e in basis.as_array().unwrap() {
            let re = e[0].as_f64().unwrap();
            let im = e[1].as_f64().unwrap();
            let modulus = (re * re + im * im).sqrt();
            assert!((modulus - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
        }
    }
}

#[test]
fn generate_rejects_non_prime_power() {
    let out = run(&["generate", "--dim", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("6 = 2·3 is not a prime power"));
}

#[test]
fn generate_rejects_conflicting_flags() {
    let out = run(&["generate", "--dim", "4", "--p", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["generate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["generate", "--dim", "4", "--method", "sorcery"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_then_verify_round_trip() {
    let path = temp_path("d5.json");
    let out = run(&["generate", "--dim", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["passed"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_detects_scaled_vector() {
    let path = temp_path("d3-corrupt.json");
    let out = run(&["generate", "--dim", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    // Scale every entry of vector 0 in basis 1 by 1.01.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    {
        let basis = doc["bases"][1].as_array_mut().unwrap();
        for entry in basis.iter_mut().take(3) {
            let re = entry[0].as_f64().unwrap() * 1.01;
            let im = entry[1].as_f64().unwrap() * 1.01;
            *entry = serde_json::json!([re, im]);
        }
    }
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["passed"], false);
    // The orthonormality defect of basis 1 shows up at the 1e-2 scale.
    let worst = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"] == "orthonormal[1]")
        .map(|c| c["worst_deviation"].as_f64().unwrap())
        .next()
        .unwrap();
    assert!(worst > 1e-3 && worst < 1e-1, "worst {worst}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_rejects_malformed_input() {
    let path = temp_path("garbage.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    let out = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    let path = temp_path("bad-schema.json");
    let good = run(&["generate", "--dim", "2"]);
    let mut doc: serde_json::Value = serde_json::from_str(&stdout_str(&good)).unwrap();
    doc["schema_version"] = serde_json::json!("mub/9");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    let out = run(&["verify", "--in", "/nonexistent/mubkit-nope.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_classes_reports_full_operator_basis() {
    let path = temp_path("d3.json");
    let out = run(&["generate", "--dim", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", "--in", path.to_str().unwrap(), "--classes"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let count_check = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "operator_count_bound")
        .expect("operator count check present");
    // 1 + 4*(3-1) = 9 = d^2 pairwise-orthogonal matrices.
    assert_eq!(count_check["location"][0], 9);
    assert_eq!(count_check["location"][1], 9);
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_family_d4_golden_order() {
    let path = temp_path("d4.json");
    run(&["generate", "--dim", "4", "--out", path.to_str().unwrap()]);
    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "family",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "family_index,e00,e01,e10,e11",
            "0,0,0,0,0",
            "1,1,0,0,1",
            "2,0,1,1,1",
            "3,1,1,1,0",
        ]
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_classes_d4_shape() {
    let path = temp_path("d4c.json");
    run(&["generate", "--dim", "4", "--out", path.to_str().unwrap()]);
    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "classes",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    // Header plus 5 classes x 4 rows, identity row x=00 included.
    assert_eq!(lines.len(), 1 + 5 * 4);
    assert_eq!(lines[1], "0,00,00|00");
    assert!(lines.iter().filter(|l| l.ends_with("00|00")).count() == 5);
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_bases_csv_three_blocks() {
    let path = temp_path("d2b.json");
    run(&["generate", "--dim", "2", "--out", path.to_str().unwrap()]);
    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "bases",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let blocks = text.lines().filter(|l| l.starts_with("# basis")).count();
    assert_eq!(blocks, 3);
    // 3 header lines + 3 blocks of 2 rows.
    assert_eq!(text.lines().count(), 3 + 3 * 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_rejects_unknown_format_and_target() {
    let path = temp_path("d2e.json");
    run(&["generate", "--dim", "2", "--out", path.to_str().unwrap()]);
    let out = run(&["export", "--in", path.to_str().unwrap(), "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "spectra",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn info_lines() {
    let out = run(&["info", "--dim", "9"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("9 = 3²"));
    assert!(text.contains("prime power"));
    assert!(text.contains("10 MUBs"));
    assert!(text.contains("bound 10"));

    let out = run(&["info", "--dim", "6"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("6 = 2·3"));
    assert!(text.contains("not a prime power"));
    assert!(text.contains("bound 7"));

    let out = run(&["info", "--dim", "13"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("prime"));
    assert!(text.contains("14 MUBs"));
    assert!(text.contains("method prime"));
}

#[test]
fn generate_honors_user_polynomial() {
    let out = run(&["generate", "--p", "3", "--m", "2", "--poly", "2,1,1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["modulus_poly"], serde_json::json!([2, 1, 1]));
    assert_eq!(doc["bases"].as_array().unwrap().len(), 10);

    // A reducible polynomial is malformed input.
    let out = run(&["generate", "--p", "3", "--m", "2", "--poly", "0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tol_flag_overrides_file_tolerance() {
    let path = temp_path("d3-tol.json");
    run(&["generate", "--dim", "3", "--out", path.to_str().unwrap()]);
    // Corrupt one entry mildly.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let e = doc["bases"][1][0][0].as_f64().unwrap();
    doc["bases"][1][0][0] = serde_json::json!(e + 1e-6);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    // Fails at the file's own 1e-10, passes at a looser 1e-3.
    let out = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "--in", path.to_str().unwrap(), "--tol", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--in", path.to_str().unwrap(), "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_json_shapes() {
    let path = temp_path("d4-json.json");
    run(&["generate", "--dim", "4", "--out", path.to_str().unwrap()]);

    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "family",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["p"], 2);
    assert_eq!(doc["matrices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["matrices"][3], serde_json::json!([[1, 1], [1, 0]]));

    let out = run(&[
        "export",
        "--in",
        path.to_str().unwrap(),
        "--what",
        "classes",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let classes = doc.as_array().unwrap();
    assert_eq!(classes.len(), 5);
    for class in classes {
        assert_eq!(class["vectors"].as_array().unwrap().len(), 4);
    }
    // Symplectic vectors keep their wire shape.
    assert_eq!(
        classes[0]["vectors"][1],
        serde_json::json!({"alpha": [0, 0], "beta": [0, 1], "p": 2})
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_report_independent_of_thread_count() {
    let path = temp_path("d9-threads.json");
    let out = run(&["generate", "--dim", "9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let with_threads = |n: &str| {
        let out = mubkit()
            .env("MUBKIT_THREADS", n)
            .args(["verify", "--in", path.to_str().unwrap()])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(with_threads("1"), with_threads("4"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn generated_file_verifies_at_generation_tolerance() {
    // Emitted output always passes its own check; verify with no --tol uses
    // the tolerance recorded in the file.
    for dim in ["7", "8", "9"] {
        let path = temp_path(&format!("rt-{dim}.json"));
        let out = run(&["generate", "--dim", dim, "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "generate --dim {dim}");
        let out = run(&["verify", "--in", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "verify --dim {dim}");
        std::fs::remove_file(&path).ok();
    }
}
