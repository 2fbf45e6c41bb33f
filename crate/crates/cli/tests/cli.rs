use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robiniso"))
}

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Value of a `# key: value` header line.
fn header(csv: &str, key: &str) -> String {
    let prefix = format!("# {key}: ");
    csv.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no {key} in\n{csv}")).to_string()
}

/// Column of the data rows by name.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let head: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = head.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(j).unwrap().to_string()).collect()
}

#[test]
fn eig_ball_examples() {
    let o = run(&["eig-ball", "--n", "3", "--radius", "1", "--alpha", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = column(&stdout(&o), "lambda1")[0].parse().unwrap();
    assert!(v.abs() < 1e-10);

    let o = run(&["eig-ball", "--alpha", "dirichlet", "--format", "csv"]);
    let v: f64 = column(&stdout(&o), "lambda1")[0].parse().unwrap();
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((v - pi2).abs() < 1e-8 * pi2);

    // −k² with k coth k = 2
    let o = run(&["eig-ball", "--alpha", "-1", "--format", "csv"]);
    let text = stdout(&o);
    let v: f64 = column(&text, "lambda1")[0].parse().unwrap();
    let k = (-v).sqrt();
    assert!((k / k.tanh() - 2.0).abs() < 1e-8);
    assert_eq!(column(&text, "version")[0], env!("CARGO_PKG_VERSION"));
    assert_eq!(header(&text, "tol"), "1.00000000000e-8");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["eig-ball", "--alpha", "wet"]).status.code(), Some(64));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["chain", "--spec", "/nonexistent.json"]).status.code(), Some(64));
    assert_eq!(run(&["eig-shell", "--inner", "2", "--outer", "1", "--alpha", "-1"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn sphere_chain_has_zero_shell_margin() {
    let o = run(&["chain", "--spec", spec("sphere.json").to_str().unwrap(), "--format", "csv", "--grid", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(column(&text, "r1")[0], "0.00000000000e0");
    let m: f64 = column(&text, "margin_shell")[0].parse().unwrap();
    assert_eq!(m, 0.0);
    assert_eq!(column(&text, "holds")[0], "true");
}

#[test]
fn spheroid_chain_holds() {
    let o = run(&["chain", "--spec", spec("spheroid.json").to_str().unwrap(), "--format", "csv", "--grid", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["margin_direct", "margin_shell"] {
        let v: f64 = column(&text, name)[0].parse().unwrap();
        assert!(v > 0.0, "{name} = {v}");
    }
}

#[test]
fn failing_mean_condition_is_informational() {
    let o = run(&["chain", "--spec", spec("torus.json").to_str().unwrap(), "--format", "csv", "--no-direct"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(column(&text, "admissibility")[0], "Inadmissible");
    assert_eq!(header(&text, "informational_only"), "true");
}

#[test]
fn mean_check_reports_both_conventions() {
    let o = run(&["mean-check", "--spec", spec("thin_torus.json").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(column(&text, "convention"), ["averaged", "sum"]);
    assert_eq!(column(&text, "holds"), ["true", "true"]);
    assert_eq!(header(&text, "closed_form_holds"), "true");

    let o = run(&["mean-check", "--spec", spec("sphere.json").to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&o);
    let lhs: f64 = column(&text, "lhs")[0].parse().unwrap();
    let rhs: f64 = column(&text, "rhs")[0].parse().unwrap();
    assert!((lhs - 1.0).abs() < 1e-10 && (rhs - 1.0).abs() < 1e-10);
}

#[test]
fn torus_condition_sweep_brackets_threshold() {
    let o = run(&["sweep", "--family", "torus-condition", "--range", "0.05:0.45:9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let holds = column(&text, "holds");
    assert_eq!(holds.first().unwrap(), "true");
    assert_eq!(holds.last().unwrap(), "false");
    let m: f64 = header(&text, "threshold").parse().unwrap();
    assert!(m > 0.35 && m < 0.4);
}

#[test]
fn shell_sweep_is_deterministic_and_holds() {
    let args = ["sweep", "--family", "shell", "--range", "0.1:0.9:9", "--alpha", "-2,-0.5,0", "--n", "2,3", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(column(&text, "holds").len(), 54);
    assert!(column(&text, "holds").iter().all(|h| h == "true"));
}

#[test]
fn spheroid_sweep_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = run(&[
        "sweep", "--family", "spheroid", "--range", "0.5:0.9:3", "--alpha", "-1", "--grid", "6",
        "--format", "csv", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(column(&text, "m").len(), 3);
    assert!(column(&text, "holds").iter().all(|h| h == "true"));
}

#[test]
fn reduce_and_curvature_tables() {
    let o = run(&["reduce", "--spec", spec("sphere.json").to_str().unwrap(), "--levels", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let t = column(&text, "t");
    let r = column(&text, "r");
    for (t, r) in t.iter().zip(&r) {
        let (t, r): (f64, f64) = (t.parse().unwrap(), r.parse().unwrap());
        assert!((r - (1.0 - t)).abs() < 1e-10);
    }
    assert_eq!(header(&text, "rprime_certificate"), "true");

    let o = run(&["curvature", "--spec", spec("sphere.json").to_str().unwrap(), "--grid", "4", "--format", "csv"]);
    let text = stdout(&o);
    for v in column(&text, "mean").iter().chain(&column(&text, "gauss")) {
        let v: f64 = v.parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}
