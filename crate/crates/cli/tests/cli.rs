use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin-wigner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn kernel_spectrum_rows_ascend_in_m() {
    let text = stdout(&["kernel-spectrum", "3/2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,eigenvalue");
    let ms: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ms, vec![-1.5, -0.5, 0.5, 1.5]);
    let sum: f64 = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-12);
}

#[test]
fn qubit_negativity() {
    let v = json(&["negativity", "dicke:0.5,0.5"]);
    let expected = 1.0 / 3f64.sqrt() - 0.5;
    assert!((v["delta"].as_f64().unwrap() - expected).abs() < 1e-10);
    assert!((v["abs_integral"].as_f64().unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-10);
    assert_eq!(v["converged"], true);

    let v = json(&["negativity", "bloch:0,0,0.5"]);
    assert!(v["delta"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn ghz_is_noon_at_unit_phase() {
    let a = json(&["negativity", "ghz:3"]);
    let b = json(&["negativity", "noon:3,1.0"]);
    assert!((a["delta"].as_f64().unwrap() - b["delta"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn roots_of_coherent_state() {
    let v = json(&["roots", "6", "6"]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["roots"].as_array().unwrap().len(), 8);
}

#[test]
fn bad_input_exits_with_one() {
    for args in [
        &["negativity", "foo:1"][..],
        &["negativity", "dicke:2,0.5"],
        &["kernel-spectrum", "-1"],
        &["--tol", "1e-20", "negativity", "dicke:1,0"],
        &["paper-suite", "--only", "99"],
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    }
}

#[test]
fn output_file_and_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.csv");
    let out = run(&["sweep", "dicke-basis", "--j", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,delta");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("-2,"));
}

#[test]
fn thread_count_does_not_change_bytes() {
    let args = |t: &'static str| ["--threads", t, "sweep", "coherent-decay", "--j-max", "4"];
    assert_eq!(stdout(&args("1")), stdout(&args("2")));
    let args = |t: &'static str| ["--threads", t, "negativity", "cat:2,0.5pi,0"];
    assert_eq!(stdout(&args("1")), stdout(&args("3")));
}

#[test]
fn sequence_ends_with_planar_limit() {
    let text = stdout(&["sweep", "sequence", "--n", "2", "--j-max", "4"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,delta");
    assert_eq!(lines.len(), 1 + 4 + 1);
    assert!(lines[1].starts_with("1,"));
    let last = lines.last().unwrap();
    assert!(last.starts_with("planar_limit,"));
}

#[test]
fn grid_csv_layout() {
    let text = stdout(&["grid", "dicke:1,0", "--n-theta", "4", "--n-phi", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,phi,w");
    assert_eq!(lines.len(), 1 + 12);
}

#[test]
fn cat_bound_reports_both_values() {
    let v = json(&["cat-bound", "2"]);
    assert!(v["bound"].as_f64().unwrap() > 0.0);
    assert!(v["exact"].as_f64().unwrap() > 0.0);
}

#[test]
fn planar_ground_state_is_positive() {
    let v = json(&["planar-number", "0"]);
    assert_eq!(v["delta"].as_f64().unwrap(), 0.0);
    let v = json(&["planar-number", "1"]);
    assert!((v["delta"].as_f64().unwrap() - (2.0 * (-0.5f64).exp() - 1.0)).abs() < 1e-9);
}
