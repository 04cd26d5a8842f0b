use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_holder-im"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn holder-im");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn fit_single_row_is_one_point_region() {
    let csv = stdout(&run(&["fit", "-"], "t,y\n0.5,1.0\n"));
    assert_eq!(csv, "t,y,lower,upper\n0.5,1,-0.95996398454,2.95996398454\n");
}

#[test]
fn fit_duplicate_t_is_domain_error_naming_rows() {
    let out = run(&["fit", "-"], "t,y\n0.3,1.0\n0.1,2.0\n0.3,0.5\n");
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("lines 2 and 4"), "{msg}");
}

#[test]
fn fit_malformed_csv_exits_2() {
    assert_eq!(run(&["fit", "-"], "t,y\n0.3,abc\n").status.code(), Some(2));
    assert_eq!(run(&["fit", "-"], "x,y\n0.3,1\n").status.code(), Some(2));
    assert_eq!(run(&["fit", "-"], "t,y\n0.3,1,7\n").status.code(), Some(2));
    assert_eq!(
        run(&["fit", "/nonexistent/input.csv"], "").status.code(),
        Some(2)
    );
}

#[test]
fn fit_without_observations_exits_3() {
    assert_eq!(
        run(&["fit", "-"], "t,y\n0.3,\n0.4,\n").status.code(),
        Some(3)
    );
}

#[test]
fn fit_unobserved_neighbor_is_widened_by_bound() {
    let eps: f64 = 1e-4;
    let input = format!("t,y\n{},\n0.25,0.0\n", 0.25 + eps);
    let csv = stdout(&run(&["fit", "-"], &input));
    let (lower, upper) = (column(&csv, "lower"), column(&csv, "upper"));
    let b = eps.sqrt();
    assert!((lower[1] - (lower[0] - b)).abs() < 1e-9);
    assert!((upper[1] - (upper[0] + b)).abs() < 1e-9);
    assert_eq!(column(&csv, "t"), vec![0.25, 0.25 + eps]);
}

#[test]
fn fit_is_idempotent_on_its_own_output() {
    let input = "t,y\n0.9,1.2\n0.1,0.3\n0.35,\n0.6,0.8\n0.45,0.1\n";
    let first = stdout(&run(&["fit", "-", "--sigma", "0.5"], input));
    let echoed: String = std::iter::once("t,y\n".to_string())
        .chain(first.lines().skip(1).map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            format!("{},{}\n", f[0], f[1])
        }))
        .collect();
    let second = stdout(&run(&["fit", "-", "--sigma", "0.5"], &echoed));
    assert_eq!(first, second);
}

#[test]
fn fit_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let output = dir.path().join("out.csv");
    std::fs::write(&input, "t,y\n0.5,1.0\n").unwrap();
    let out = run(
        &[
            "fit",
            input.to_str().unwrap(),
            "-o",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(output).unwrap();
    assert!(written.starts_with("t,y,lower,upper\n0.5,1,"));
}

#[test]
fn two_point_experiment_columns() {
    let csv = stdout(&run(
        &[
            "experiment",
            "two-point",
            "--trials",
            "100",
            "--seed",
            "1234",
        ],
        "",
    ));
    assert!(csv.starts_with("trial,B,marginal,mixture,conservative\n"));
    let marginal = column(&csv, "marginal");
    assert_eq!(marginal.len(), 100);
    assert!(marginal.iter().all(|w| (w - 3.919928).abs() < 1e-6));
    let mixture = column(&csv, "mixture");
    let conservative = column(&csv, "conservative");
    assert!(mixture.iter().zip(&conservative).all(|(a, b)| a <= b));
}

#[test]
fn alpha_half_changes_marginal_width() {
    let csv = stdout(&run(&["experiment", "two-point", "--alpha", "0.5"], ""));
    assert!(column(&csv, "marginal")
        .iter()
        .all(|w| (w - 1.348980).abs() < 1e-6));
}

#[test]
fn n_point_mixture_is_narrowest() {
    let csv = stdout(&run(
        &["experiment", "n-point", "--n", "3", "--trials", "500"],
        "",
    ));
    assert!(
        csv.starts_with("trial,point,B_sum,marginal,mixture,cond_1pt,cond_all,covered_mixture\n")
    );
    let mix = column(&csv, "mixture");
    assert_eq!(mix.len(), 1500);
    for other in ["marginal", "cond_1pt", "cond_all"] {
        assert!(mix
            .iter()
            .zip(column(&csv, other))
            .all(|(a, b)| *a <= b + 1e-9));
    }
}

#[test]
fn n_point_single_target() {
    let csv = stdout(&run(
        &[
            "experiment",
            "n-point",
            "--n",
            "5",
            "--trials",
            "7",
            "--point",
            "2",
        ],
        "",
    ));
    assert!(column(&csv, "point").iter().all(|p| *p == 2.0));
    assert_eq!(csv.lines().count(), 8);
    assert_eq!(
        run(&["experiment", "n-point", "--n", "5", "--point", "5"], "")
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "experiment",
        "n-point",
        "--n",
        "6",
        "--trials",
        "40",
        "--design",
        "equispaced",
    ];
    let first = run(&args, "").stdout;
    let second = run(&args, "").stdout;
    let single = Command::new(env!("CARGO_BIN_EXE_holder-im"))
        .args(args)
        .env("HOLDER_IM_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    assert!(!first.is_empty());
    assert_eq!(first, second);
    assert_eq!(first, single);
}

#[test]
fn coverage_single_trial_has_zero_se() {
    let csv = stdout(&run(&["coverage", "--trials", "1"], ""));
    assert!(csv.starts_with("method,rate,se,trials,alpha\n"));
    assert_eq!(csv.lines().count(), 6);
    for rate in column(&csv, "rate") {
        assert!(rate == 0.0 || rate == 1.0);
    }
    assert!(column(&csv, "se").iter().all(|s| *s == 0.0));
}

#[test]
fn coverage_one_point_is_exact() {
    let csv = stdout(&run(
        &[
            "coverage",
            "--method",
            "one-point",
            "--trials",
            "10000",
            "--alpha",
            "0.05",
        ],
        "",
    ));
    let (rate, se) = (column(&csv, "rate")[0], column(&csv, "se")[0]);
    assert!((rate - 0.95).abs() <= 3.0 * se, "rate {rate} se {se}");
}

#[test]
fn coverage_partial_is_valid() {
    let csv = stdout(&run(
        &[
            "coverage", "--method", "partial", "--n", "2", "--trials", "10000",
        ],
        "",
    ));
    let (rate, se) = (column(&csv, "rate")[0], column(&csv, "se")[0]);
    assert!(rate >= 0.95 - 3.0 * se, "rate {rate} se {se}");
}

#[test]
fn invalid_flags_are_usage_errors() {
    assert_eq!(
        run(&["coverage", "--alpha", "1.5"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["coverage", "--sigma", "-1"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["experiment", "three-point"], "").status.code(),
        Some(2)
    );
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_holder-im"))
        .args(["coverage", "--trials", "1"])
        .env("HOLDER_IM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn neighbor_methods_need_two_points() {
    let out = run(
        &[
            "coverage", "--method", "partial", "--n", "1", "--trials", "5",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(3));
    let csv = stdout(&run(&["coverage", "--n", "1", "--trials", "5"], ""));
    assert_eq!(csv.lines().count(), 3);
}
