use std::process::{Command, Output};

fn luka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luka")).args(args).output().expect("run luka")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn critical_prints_three_halves() {
    let o = luka(&["critical", "--k", "0", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a_c = 1.5"), "{}", stdout(&o));
}

#[test]
fn area_bijection_passes() {
    let o = luka(&["bijection", "--which", "area", "--k", "0", "--l", "inf", "--n", "8", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "pass"));
}

#[test]
fn enumerate_count() {
    let o = luka(&["enumerate", "--k", "1", "--l", "1", "--n", "4", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["critical", "--k", "2", "--l", "1"][..],
        &["critical", "--k", "1", "--l", "one"],
        &["critical", "--k", "1", "--l", "2", "--tol", "-1"],
        &["bijection", "--which", "rise", "--n", "3"],
        &["bijection", "--which", "sideways", "--n", "3"],
        &["nonsense"],
    ] {
        let o = luka(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = luka(&["critical", "--k", "1", "--l", "one"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--l"));
}

#[test]
fn computation_errors_exit_one() {
    let o = luka(&["critical", "--k", "0", "--l", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = luka(&["enumerate", "--k", "0", "--l", "inf", "--n", "12", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("100"));
}

#[test]
fn ac_sweep_has_expected_endpoints() {
    let o = luka(&["ac-sweep", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<(&str, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (e, a) = l.split_once(',').unwrap();
            (e, a.parse().unwrap())
        })
        .collect();
    assert_eq!(text.lines().next(), Some("ell,a_c"));
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0], ("1", 2.0));
    assert_eq!(rows[8], ("inf", 3.0));
    assert!(rows.iter().all(|&(_, a)| (2.0..=3.0).contains(&a)));
}

#[test]
fn phase_csv_is_deterministic_and_matches_json() {
    let args = ["phase", "--k", "1", "--l", "2", "--a-max", "6", "--samples", "26"];
    let a = luka(&args);
    let b = luka(&args);
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let js: serde_json::Value = serde_json::from_slice(&luka(&json_args).stdout).unwrap();
    let rows = js["rows"].as_array().unwrap();
    assert_eq!(csv.lines().count(), rows.len() + 1);
    for (line, row) in csv.lines().skip(1).zip(rows) {
        let vals: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let expect: Vec<f64> = ["a", "z_c", "kappa"].iter().map(|k| row[k].as_f64().unwrap()).collect();
        assert_eq!(vals, expect);
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("luka_cli_{}.csv", std::process::id()));
    let o = luka(&["ac-sweep", "--k", "0", "--l-max", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("ell,a_c\n1,1.5\n"), "{text}");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn series_verify_and_json() {
    let o = luka(&["series", "--k", "1", "--l", "2", "--order", "8", "--area", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    let o = luka(&["series", "--k", "0", "--l", "inf", "--order", "3", "--format", "json"]);
    let js: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(js[3]["weights"], serde_json::json!({"1,0": 2, "2,0": 2, "3,0": 1}));
}

#[test]
fn enumerate_json_paths_are_step_arrays() {
    let o = luka(&["enumerate", "--k", "0", "--l", "1", "--n", "2", "--format", "json"]);
    let js: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(js[0]["steps"], serde_json::json!([0, 0]));
    assert_eq!(js[1]["steps"], serde_json::json!([1, -1]));
    assert_eq!(js[1]["contacts"], 1);
    assert_eq!(js[1]["area"], 1);
}

#[test]
fn checks_report_pass() {
    for args in [
        &["discriminant-check", "--k", "0", "--l", "2"][..],
        &["identity-check", "--order", "8"],
        &["bijection", "--which", "motzkin", "--n", "7", "--verify"],
        &["bijection", "--which", "rise", "--k", "1", "--l", "3", "--n", "7", "--verify"],
    ] {
        let o = luka(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = luka(&["discriminant-check", "--k", "1", "--l", "1", "--format", "json"]);
    let js: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(js["pass"], true);
    assert_eq!(js["expected_exponent"], 2);
}

#[test]
fn crit_poly_text() {
    let o = luka(&["crit-poly", "--k", "1", "--l", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2*a^3 - 14*a^2 + 35*a - 31"));
}

#[test]
fn qseries_routes_agree() {
    let base = ["qseries", "--k", "1", "--l", "inf", "--order", "7", "--what", "r", "--format", "csv"];
    let it = luka(&[&base[..], &["--route", "iteration"]].concat());
    let hr = luka(&[&base[..], &["--route", "h-ratio"]].concat());
    assert_eq!(it.status.code(), Some(0));
    assert_eq!(it.stdout, hr.stdout);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(luka(&["--help"]).status.code(), Some(0));
    assert_eq!(luka(&["--version"]).status.code(), Some(0));
}
