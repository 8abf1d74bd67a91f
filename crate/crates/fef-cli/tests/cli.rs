use fef_core::linalg::Complex64;
use fef_core::states::{isotropic, werner};
use fef_core::ComplexMatrix;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fef"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fef-cli-tests");
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn report_value(stdout: &str, key: &str) -> f64 {
    let line = stdout
        .lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("no report line starts with {key:?}"));
    line[key.len()..].trim().parse().expect("numeric report field")
}

fn density_json(m: &ComplexMatrix, d: usize) -> String {
    let n = d * d;
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let entries: Vec<String> = (0..n)
                .map(|j| {
                    let z = m.get(i, j);
                    format!("[{:e}, {:e}]", z.re, z.im)
                })
                .collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!(
        "{{\"d\": {d}, \"kind\": \"density\", \"data\": [{}]}}",
        rows.join(", ")
    )
}

fn write_bell(name: &str) -> PathBuf {
    let path = scratch(name);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(
        &path,
        format!(
            "{{\"d\": 2, \"kind\": \"pure\", \"data\": [[{h}, 0.0], [0.0, 0.0], [0.0, 0.0], [{h}, 0.0]]}}"
        ),
    )
    .expect("writable scratch file");
    path
}

#[test]
fn compute_reports_both_methods_for_bell() {
    let path = write_bell("bell_both.json");
    let out = run(&["compute", "--input", path.to_str().unwrap(), "--method", "both"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("family: pure (rank one)"));
    assert!((report_value(&text, "fef_exact:") - 1.0).abs() < 1e-9);
    assert!((report_value(&text, "fef_numeric:") - 1.0).abs() < 1e-9);
    assert!(report_value(&text, "gap:") < 1e-9);
    assert!(text.contains("useful_for_teleportation: true"));
}

#[test]
fn compute_detects_isotropic_density_input() {
    let rho = isotropic(3, 0.5).unwrap();
    let path = scratch("iso3.json");
    std::fs::write(&path, density_json(rho.matrix(), 3)).unwrap();
    let out = run(&["compute", "--input", path.to_str().unwrap(), "--method", "exact"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("family: isotropic"), "report: {text}");
    assert!((report_value(&text, "fef_exact:") - 0.5).abs() < 1e-9);
}

#[test]
fn compute_detects_werner_density_input() {
    let rho = werner(4, -0.3).unwrap();
    let path = scratch("wer4.json");
    std::fs::write(&path, density_json(rho.matrix(), 4)).unwrap();
    let out = run(&["compute", "--input", path.to_str().unwrap(), "--method", "exact"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("family: werner"), "report: {text}");
    assert!((report_value(&text, "fef_exact:") - 1.3 / 12.0).abs() < 1e-9);
}

#[test]
fn compute_exits_3_when_exact_has_no_closed_form() {
    let state = scratch("generic.json");
    let made = run(&[
        "random", "--kind", "density", "--d", "2", "--rank", "3", "--seed", "5",
        "--output", state.to_str().unwrap(),
    ]);
    assert!(made.status.success());
    let out = run(&["compute", "--input", state.to_str().unwrap(), "--method", "exact"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("no closed form"));
}

#[test]
fn compute_exits_2_on_invalid_input() {
    let short = scratch("short.json");
    std::fs::write(&short, "{\"d\": 2, \"kind\": \"pure\", \"data\": [[1.0, 0.0]]}").unwrap();
    let out = run(&["compute", "--input", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("expected 4"));

    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"d\": 2, \"kind\":").unwrap();
    let out = run(&["compute", "--input", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("invalid StateFile JSON"));

    let ragged = scratch("ragged.json");
    std::fs::write(
        &ragged,
        "{\"d\": 2, \"kind\": \"density\", \"data\": [[[1.0, 0.0]], [], [], []]}",
    )
    .unwrap();
    let out = run(&["compute", "--input", ragged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("row 0"));

    let out = run(&["compute", "--input", scratch("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_scan_writes_reference_isotropic_rows() {
    let path = scratch("iso_scan.csv");
    let out = run(&[
        "family", "--family", "isotropic", "--d", "2", "--f-min", "0", "--f-max", "1",
        "--steps", "11", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'), "CSV must use LF line endings");
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "f,fef_exact,fef_numeric,abs_err,teleport_fidelity,useful");
    assert_eq!(lines.len(), 12);

    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first.len(), 6);
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert!((first[1].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert!(fields[3].parse::<f64>().unwrap() <= 1e-6);
    }
}

#[test]
fn family_scan_writes_reference_werner_rows() {
    let path = scratch("wer_scan.csv");
    let out = run(&[
        "family", "--family", "werner", "--d", "3", "--f-min", "-1", "--f-max", "1",
        "--steps", "21", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 22);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), -1.0);
    assert!((first[1].parse::<f64>().unwrap() - 2.0 / 9.0).abs() < 1e-12);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert!(fields[3].parse::<f64>().unwrap() <= 1e-6);
    }
}

#[test]
fn family_scan_rejects_out_of_domain_ranges() {
    let path = scratch("bad_scan.csv");
    let out = run(&[
        "family", "--family", "isotropic", "--d", "2", "--f-min", "0", "--f-max", "1.5",
        "--steps", "5", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("f range"));
}

#[test]
fn verify_all_passes_and_reports_every_property() {
    let out = run(&["verify", "--suite", "all", "--d", "2", "--samples", "10", "--seed", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text.matches("[pass]").count(), 15, "report: {text}");
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("15 of 15 properties passed"));
    for prefix in ["bounds/", "relations/", "mixtures/", "superposition/"] {
        assert!(text.contains(prefix), "missing suite {prefix}");
    }
}

#[test]
fn verify_rejects_out_of_range_dimension() {
    let out = run(&["verify", "--suite", "bounds", "--d", "7", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("between 2 and 6"));
}

#[test]
fn random_states_are_byte_identical_per_seed_and_round_trip() {
    let a = scratch("rand_a.json");
    let b = scratch("rand_b.json");
    for path in [&a, &b] {
        let out = run(&[
            "random", "--kind", "pure", "--d", "2", "--seed", "7",
            "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let out = run(&["compute", "--input", a.to_str().unwrap(), "--method", "exact"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("family: pure (rank one)"));

    let dens = scratch("rand_dens.json");
    let out = run(&[
        "random", "--kind", "density", "--d", "3", "--rank", "2", "--seed", "9",
        "--output", dens.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["compute", "--input", dens.to_str().unwrap(), "--method", "numeric"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
}

#[test]
fn random_rejects_rank_for_pure_states() {
    let out = run(&[
        "random", "--kind", "pure", "--d", "2", "--rank", "1",
        "--output", scratch("rank_pure.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn emit_unitary_writes_a_unitary_matrix() {
    let bell = write_bell("bell_emit.json");
    let upath = scratch("best_u.json");
    let out = run(&[
        "compute", "--input", bell.to_str().unwrap(), "--method", "numeric",
        "--emit-unitary", upath.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));

    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&upath).unwrap()).unwrap();
    assert_eq!(parsed["kind"], "unitary");
    assert_eq!(parsed["d"], 2);
    let data = parsed["data"].as_array().unwrap();
    let mut entries = Vec::new();
    for row in data {
        for pair in row.as_array().unwrap() {
            let pair = pair.as_array().unwrap();
            entries.push(Complex64::new(
                pair[0].as_f64().unwrap(),
                pair[1].as_f64().unwrap(),
            ));
        }
    }
    let u = ComplexMatrix::new(2, 2, entries).unwrap();
    assert!(u.unitarity_deviation() < 1e-8);

    let emitting_exact = run(&[
        "compute", "--input", bell.to_str().unwrap(), "--method", "exact",
        "--emit-unitary", upath.to_str().unwrap(),
    ]);
    assert_eq!(emitting_exact.status.code(), Some(2));
}
