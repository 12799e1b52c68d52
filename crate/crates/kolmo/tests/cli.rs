//! End-to-end tests of the `kolmo` binary: exit codes, file outputs,
//! manifests, and reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kolmo() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kolmo"))
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn rps_file(dir: &Path, alpha: f64, beta: f64) -> PathBuf {
    write(
        dir,
        "rps.json",
        &format!(
            r#"{{"type":"builtin","name":"rps","params":{{"alpha":{alpha},"beta":{beta},"sigma":0.5}}}}"#
        ),
    )
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn classify_persistent_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out = kolmo().args(["classify"]).arg(&model).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Persistence"), "{text}");
    assert!(text.contains("+0.023625"), "{text}");
    assert!(text.contains("case: 1.6"), "{text}");
}

#[test]
fn classify_attractor_panel() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "fig1.json",
        r#"{"type":"builtin","name":"figure1","params":{"variant":"i"}}"#,
    );
    let out = kolmo().args(["classify"]).arg(&model).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("AttractorSet {{1}}"), "{text}");
}

#[test]
fn classify_degenerate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.3, 0.7); // alpha + beta = 2
    let out = kolmo().args(["classify"]).arg(&model).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("Degenerate"));
}

#[test]
fn classify_malformed_matrix_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "bad.json",
        r#"{"type":"lotka_volterra","m":[1,1],"A":[[-1,0,0],[0,-1,0]],"sigma":[[0.06,0],[0,0.06]]}"#,
    );
    let out = kolmo().args(["classify"]).arg(&model).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("A must be"), "{}", stderr(&out));
}

#[test]
fn classify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out = kolmo()
        .args(["classify", "--json"])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["outcome"], "Persistence");
    assert_eq!(json["case"], "1.6");
    assert!(json["rows"].as_array().unwrap().len() == 4);
}

#[test]
fn exponents_analytic_single_support() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out = kolmo()
        .args(["exponents", "--support", "1"])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("+0.300000"), "{text}");
    assert!(text.contains("-0.150000"), "{text}");
}

#[test]
fn exponents_full_support_needs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out = kolmo()
        .args(["exponents", "--support", "1,2,3"])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("boundary supports"),
        "{}",
        stderr(&out)
    );

    let out = kolmo()
        .args(["exponents", "--support", "1,2,3", "--allow-full"])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exponents_analytic_rejects_general_drift() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "custom.json",
        r#"{"type":"custom_expression","f":["1 - x1 - 4*x2*x3","1 - x2 - 4*x1*x3","1 - x3 - x1*x2"],
            "sigma":[[0.0625,0,0],[0,0.0625,0],[0,0,0.0625]]}"#,
    );
    let out = kolmo()
        .args(["exponents", "--support", "1", "--method", "analytic"])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mc"), "{}", stderr(&out));

    // The Monte Carlo path handles it.
    let out = kolmo()
        .args([
            "exponents",
            "--support",
            "1",
            "--method",
            "mc",
            "--t-final",
            "200",
            "--seed",
            "3",
        ])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("se"), "{}", stdout(&out));
}

#[test]
fn simulate_row_count_determinism_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for out_path in [&out_a, &out_b] {
        let out = kolmo()
            .args([
                "simulate",
                "--t-final",
                "1",
                "--dt",
                "0.001",
                "--stride",
                "1",
                "--seed",
                "9",
                "--out",
            ])
            .arg(out_path)
            .arg(&model)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "same seed must give byte-identical CSV");
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1002); // header + 1001 rows
    assert!(text.starts_with("t,x1,x2,x3\n"));

    let manifest_path = dir.path().join("a.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest_path).unwrap()).unwrap();
    for key in ["command", "model_sha256", "config", "seed", "version"] {
        assert!(manifest.get(key).is_some(), "manifest missing {key}");
    }
    assert_eq!(manifest["seed"], 9);
}

#[test]
fn simulate_face_start_keeps_species_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out_path = dir.path().join("face.csv");
    let out = kolmo()
        .args(["simulate", "--t-final", "1", "--y0", "0.5,0,0.5", "--out"])
        .arg(&out_path)
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    for line in text.lines().skip(1) {
        let x2 = line.split(',').nth(2).unwrap();
        assert_eq!(x2, "0");
    }
}

#[test]
fn seed_env_var_is_default() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let out_path = dir.path().join("env.csv");
    let out = kolmo()
        .env("KOLMO_SEED", "1234")
        .args(["simulate", "--t-final", "1", "--out"])
        .arg(&out_path)
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("env.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["seed"], 1234);
}

#[test]
fn verify_persistent_ensemble_passes() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "ix.json",
        r#"{"type":"builtin","name":"figure1","params":{"variant":"ix"}}"#,
    );
    let out = kolmo()
        .args([
            "verify",
            "--trials",
            "4",
            "--t-final",
            "30",
            "--seed",
            "2",
            "--json",
        ])
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["outcome"], "Persistence");
}

#[test]
fn sweep_cycle_grid_and_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let model = rps_file(dir.path(), 1.2, 0.6);
    let grid = dir.path().join("grid.csv");
    let out = kolmo()
        .args([
            "sweep",
            "--param",
            "alpha=1.1:1.9:0.2",
            "--param",
            "beta=0.1:0.9:0.2",
            "--out",
        ])
        .arg(&grid)
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&grid).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,beta,outcome,case,criterion,ode_permanence");
    assert_eq!(lines.len(), 1 + 25);
    // Persistence exactly below the alpha + beta = 2 boundary; cells on the
    // boundary itself are reported degenerate rather than guessed.
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        let alpha: f64 = cols[0].parse().unwrap();
        let beta: f64 = cols[1].parse().unwrap();
        let expected = if (alpha + beta - 2.0).abs() < 1e-9 {
            "Degenerate"
        } else if alpha + beta < 2.0 {
            "Persistence"
        } else {
            "RpsBoundaryAttraction"
        };
        assert_eq!(cols[2], expected, "at alpha={alpha}, beta={beta}");
    }

    // A single-point sweep agrees with classify.
    let single = dir.path().join("single.csv");
    let out = kolmo()
        .args([
            "sweep",
            "--param",
            "alpha=1.2",
            "--param",
            "beta=0.6",
            "--out",
        ])
        .arg(&single)
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&single).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1.2,0.6,Persistence,1.6,"), "{row}");
}

#[test]
fn sweep_switching_death_rate_contrasts_ode_and_sde() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "switching.json",
        r#"{"type":"builtin","name":"switching",
            "params":{"r":1.0,"beta":1.2,"d":0.5,"c":0.1,"eps":0.05}}"#,
    );
    let grid = dir.path().join("d.csv");
    let out = kolmo()
        .args(["sweep", "--param", "d=0.42", "--param", "d2=0", "--out"])
        .arg(&grid)
        .arg(&model)
        .output()
        .unwrap();
    // Unknown parameter name is an input error.
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not addressable"));

    let out = kolmo()
        .args(["sweep", "--param", "d=0.42:0.92:0.1", "--out"])
        .arg(&grid)
        .arg(&model)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&grid).unwrap();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.to_string()).collect())
        .collect();
    // d = 0.42: ODE permanent, SDE persistent.
    assert_eq!(rows[0][1], "Persistence");
    assert_eq!(rows[0][4], "Permanent");
    // d = 0.52 and 0.62: ODE impermanent while the SDE still persists.
    for k in [1, 2, 3] {
        assert_eq!(rows[k][4], "Impermanent", "row {k}: {:?}", rows[k]);
    }
    assert_eq!(rows[1][1], "Persistence");
    assert_eq!(rows[2][1], "Persistence");
    // d = 0.92: past the second threshold even the SDE loses a species pair.
    assert_eq!(rows[5][1], "AttractorSet");
    assert_eq!(rows[5][4], "Impermanent");
}
