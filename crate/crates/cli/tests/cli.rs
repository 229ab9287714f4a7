//! End-to-end checks of the command-line interface against the shipped
//! example data.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bladeopt"))
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bladeopt_cli_{}_{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Config like the shipped one but with a small GA for fast runs.
fn small_config(tag: &str) -> PathBuf {
    let dir = temp_dir(tag);
    let base = std::fs::read_to_string(data_dir().join("run.cfg")).unwrap();
    let small = base
        .replace("100          NumGens", "3            NumGens")
        .replace("100          PopSize", "8            PopSize")
        .replace(
            "materials.csv  MATS_FILE",
            &format!("{}  MATS_FILE", data_dir().join("materials.csv").display()),
        )
        .replace(
            "blade.dat    BLD_FILE",
            &format!("{}  BLD_FILE", data_dir().join("blade.dat").display()),
        )
        .replace(
            "polars       AF_PATH",
            &format!("{}  AF_PATH", data_dir().join("polars").display()),
        );
    let path = dir.join("run.cfg");
    std::fs::write(&path, small).unwrap();
    path
}

#[test]
fn aero_writes_performance_csv() {
    let out = temp_dir("aero");
    let status = bin()
        .args(["--config"])
        .arg(data_dir().join("run.cfg"))
        .args(["--out"])
        .arg(&out)
        .arg("aero")
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(out.join("performance.csv")).unwrap();
    assert!(csv.starts_with("V_mps,P_kW,Cp,thrust_kN,torque_kNm,root_flap_kNm"));
    assert_eq!(csv.lines().count(), 24); // header + 23 speeds
}

#[test]
fn structure_reports_mass_and_frequencies() {
    let out = temp_dir("structure");
    let output = bin()
        .args(["--config"])
        .arg(data_dir().join("run.cfg"))
        .args(["--out"])
        .arg(&out)
        .arg("structure")
        .args(["--design"])
        .arg(data_dir().join("design.dat"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("mass ="), "{stdout}");
    assert!(stdout.contains("natural frequencies"), "{stdout}");
    let csv = std::fs::read_to_string(out.join("structure.csv")).unwrap();
    assert!(csv.starts_with("r_m,mass_per_m,EA,EI_flap,EI_edge,GJ"));
    assert!(csv.contains("# mass_kg = "));
}

#[test]
fn evaluate_prints_penalties() {
    let out = temp_dir("evaluate");
    let output = bin()
        .args(["--config"])
        .arg(data_dir().join("run.cfg"))
        .args(["--out"])
        .arg(&out)
        .arg("evaluate")
        .args(["--design"])
        .arg(data_dir().join("design.dat"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("penalized mass"), "{stdout}");
    assert!(stdout.contains("p8 ="), "{stdout}");
}

#[test]
fn missing_config_exits_with_code_2() {
    let status = bin()
        .args(["--config", "/does/not/exist.cfg", "aero"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn invalid_design_file_exits_with_code_2() {
    let dir = temp_dir("bad_design");
    let bad = dir.join("short.dat");
    std::fs::write(&bad, "0.1 0.2 0.3\n").unwrap();
    let status = bin()
        .args(["--config"])
        .arg(data_dir().join("run.cfg"))
        .args(["--out"])
        .arg(&dir)
        .arg("evaluate")
        .args(["--design"])
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn front_filters_dominated_rows() {
    let dir = temp_dir("front");
    let input = dir.join("points.csv");
    std::fs::write(&input, "mass,aep\n1,3\n2,2\n3,1\n2,3\n").unwrap();
    let output = bin()
        .arg("front")
        .args(["--input"])
        .arg(&input)
        .args(["--senses", "min,max"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, vec!["mass,aep", "1,3"]);
}

#[test]
fn optimize_is_deterministic_for_a_fixed_seed() {
    let cfg = small_config("opt");
    let run = |out: &Path| {
        let status = bin()
            .args(["--config"])
            .arg(&cfg)
            .args(["--out"])
            .arg(out)
            .args(["--seed", "9", "optimize", "--alpha", "1.0"])
            .status()
            .unwrap();
        assert!(status.success());
        (
            std::fs::read(out.join("best_design.dat")).unwrap(),
            std::fs::read(out.join("history_alpha_1.csv")).unwrap(),
        )
    };
    let a = run(&temp_dir("opt_a"));
    let b = run(&temp_dir("opt_b"));
    assert_eq!(a.0, b.0, "best design files differ between identical runs");
    assert_eq!(a.1, b.1, "history files differ between identical runs");
}

#[test]
fn echo_round_trips_through_the_parser() {
    let cfg = small_config("echo");
    let text = std::fs::read_to_string(&cfg).unwrap().replace(
        "False        Echo:",
        "True         Echo:",
    );
    std::fs::write(&cfg, text).unwrap();
    let out = temp_dir("echo_out");
    let status = bin()
        .args(["--config"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&out)
        .arg("aero")
        .status()
        .unwrap();
    assert!(status.success());
    let ech = out.join("run.ech");
    assert!(ech.exists(), "echo file missing");
    // the echoed deck drives a full evaluation (absolute data paths survive
    // the round trip)
    let status = bin()
        .args(["--config"])
        .arg(&ech)
        .args(["--out"])
        .arg(&out)
        .arg("evaluate")
        .args(["--design"])
        .arg(data_dir().join("design.dat"))
        .status()
        .unwrap();
    assert!(status.success(), "echoed config failed to drive a run");
}
