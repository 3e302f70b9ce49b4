use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn fracprop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracprop"))
        .args(args)
        .current_dir(dir)
        .env_remove("FRACPROP_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let mut rows = vec![rdr.headers().unwrap().iter().map(String::from).collect()];
    for rec in rdr.records() {
        rows.push(rec.unwrap().iter().map(String::from).collect());
    }
    rows
}

#[test]
fn ml_single_point_lands_in_default_directory() {
    let tmp = TempDir::new().unwrap();
    let out = fracprop(
        tmp.path(),
        &["ml", "--alpha", "1", "--delta", "1", "--re", "-1"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_rows(&tmp.path().join("results/ml.csv"));
    assert_eq!(rows[0], ["alpha", "delta", "re_z", "im_z", "re_E", "im_E"]);
    let re: f64 = rows[1][4].parse().unwrap();
    assert!((re - (-1.0f64).exp()).abs() < 1e-14);
}

#[test]
fn ml_reads_input_csv() {
    let tmp = TempDir::new().unwrap();
    let input = tmp.path().join("points.csv");
    fs::write(
        &input,
        "alpha,delta,re_z,im_z,note\n2,1,-4,0,cos\n1,2,0,0,origin\n",
    )
    .unwrap();
    let out = fracprop(
        tmp.path(),
        &[
            "ml",
            "--input",
            input.to_str().unwrap(),
            "--output",
            "e.csv",
        ],
    );
    assert!(out.status.success());
    let rows = read_rows(&tmp.path().join("e.csv"));
    assert_eq!(rows.len(), 3);
    let cos: f64 = rows[1][4].parse().unwrap();
    assert!((cos - 2f64.cos()).abs() < 1e-13);
    let origin: f64 = rows[2][4].parse().unwrap();
    assert_eq!(origin, 1.0);
}

#[test]
fn output_directory_from_environment() {
    let tmp = TempDir::new().unwrap();
    let target = tmp.path().join("env_out");
    let out = Command::new(env!("CARGO_BIN_EXE_fracprop"))
        .args(["table4"])
        .current_dir(tmp.path())
        .env("FRACPROP_OUT_DIR", &target)
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows = read_rows(&target.join("table4.csv"));
    assert_eq!(rows[0][0], "name");
    assert_eq!(rows.len(), 9);
    let cartan = rows.iter().find(|r| r[0] == "cartan").unwrap();
    assert_eq!(cartan[3], "false");
    assert!(rows[1..].iter().all(|r| r[5] == "true"));
}

#[test]
fn flag_overrides_set_which_overrides_config() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("bound.cfg");
    fs::write(
        &cfg,
        "# trajectory\nexperiment = bound\nbeta = 0.5\nlambda = 1\ntimes = 6\noutput = from_config.csv\n",
    )
    .unwrap();
    let out = fracprop(
        tmp.path(),
        &[
            "bound",
            "--config",
            "bound.cfg",
            "--set",
            "beta=0.7",
            "--set",
            "times=8",
            "--times",
            "7",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_rows(&tmp.path().join("from_config.csv"));
    assert_eq!(rows.len(), 1 + 7);
    let stdout = String::from_utf8_lossy(&out.stdout);
    // r = 3 for the default p = 2, q = 6, so the exponent is -0.7 / 3
    assert!(stdout.contains("exponent -0.233333333"), "{stdout}");
}

#[test]
fn mismatched_experiment_is_an_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("c.cfg"), "experiment = decay\n").unwrap();
    let out = fracprop(tmp.path(), &["bound", "--config", "c.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_key_is_an_error() {
    let tmp = TempDir::new().unwrap();
    let out = fracprop(tmp.path(), &["suite", "--set", "sead=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sead"));
    assert!(!tmp.path().join("results/theorem31.csv").exists());
}

#[test]
fn failed_check_exits_one_and_leaves_witness() {
    let tmp = TempDir::new().unwrap();
    // near-extreme indices: the bound holds but the ratio still rises on this window
    let args = [
        "decay", "--kind", "heat", "--beta", "0.5", "--dim", "2", "--points", "32", "--p", "1.01",
        "--q", "1000",
    ];
    let out = fracprop(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(1));
    let witness = fs::read_to_string(tmp.path().join("results/decay.csv.witness")).unwrap();
    assert!(witness.starts_with("experiment=decay\n"));
    assert!(witness.contains("ratio_slope="));
    assert!(tmp.path().join("results/decay.csv").exists());

    let out = fracprop(
        tmp.path(),
        &["decay", "--dim", "1", "--points", "64", "--t-min", "1"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(!tmp.path().join("results/decay.csv.witness").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = fracprop(
            tmp.path(),
            &["suite", "--seed", "9", "--count", "12", "--output", name],
        );
        assert!(out.status.success());
    }
    let a = fs::read(tmp.path().join("a.csv")).unwrap();
    let b = fs::read(tmp.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(read_rows(&tmp.path().join("a.csv")).len(), 13);
}

#[test]
fn figure1_rows_respect_envelope() {
    let tmp = TempDir::new().unwrap();
    let out = fracprop(
        tmp.path(),
        &[
            "figure1", "--alpha", "1.5", "--x-max", "20", "--points", "41",
        ],
    );
    assert!(out.status.success());
    let rows = read_rows(&tmp.path().join("results/figure1.csv"));
    assert_eq!(rows[0], ["x", "e_alpha_1", "e_alpha_2", "envelope"]);
    for row in &rows[1..] {
        let v: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        assert!(v[1].abs() <= v[3] && v[2].abs() <= v[3]);
    }
}
