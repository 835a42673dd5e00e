use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alpha-energy"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn energy_of_closed_shadow() {
    let o = run(&["energy", "op:closed-shadow:C4", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7.0\n");
}

#[test]
fn energy_at_alpha_one_is_usage_error() {
    let o = run(&["energy", "C4", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["energy", "C4"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["energy", "Z9", "--alpha", "0.1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["energy", "C4", "--alpha", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["op", "twist", "C4"]).status.code(), Some(2));
}

#[test]
fn verify_ebd_passes() {
    let o = run(&["verify", "ebd", "C6", "--alphas", "0:0.75:0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|v| v["pass"] == true));
}

#[test]
fn verify_failure_exits_one() {
    let o = run(&["verify", "middle", "K4", "--alphas", "0.5", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_scaling_and_exact() {
    assert_eq!(
        run(&[
            "verify",
            "duplicate:2",
            "C4",
            "--alphas",
            "0.3",
            "--tol",
            "1e-9"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", "line:2", "K4", "--alphas", "0.3", "--tol", "1e-6"])
            .status
            .code(),
        Some(0)
    );
    let o = run(&["verify", "central", "K4", "--alphas", "1/4", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact_max_dev"));
}

#[test]
fn gen_and_op_print_edge_lists() {
    let o = run(&["gen", "C4"]);
    assert_eq!(o.status.code(), Some(0));
    let g = alpha_energy::graph::read_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g, alpha_energy::graph::cycle(4).unwrap());
    let o = run(&["op", "shadow:2", "K2"]);
    let g = alpha_energy::graph::read_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g, alpha_energy::graph::cycle(4).unwrap());
}

#[test]
fn file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(
        &path,
        alpha_energy::graph::write_edge_list(&alpha_energy::graph::petersen()),
    )
    .unwrap();
    let src = format!("file:{}", path.display());
    let o = run(&["energy", &src, "--alpha", "0"]);
    assert_eq!(stdout(&o), "16.0\n");
}

#[test]
fn spectrum_text_and_json() {
    let o = run(&["spectrum", "C4", "--alpha", "0"]);
    assert_eq!(
        stdout(&o),
        "2.0000000000\t1\n0.0000000000\t2\n-2.0000000000\t1\n"
    );
    let o = run(&[
        "spectrum", "K3", "--alpha", "1/2", "--exact", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph"]["p"], 3);
    assert!(v["charpoly"].as_str().unwrap().starts_with("x^3"));
    assert_eq!(v["exact_eigenvalues"][1]["multiplicity"], 2);
}

#[test]
fn energy_json_schema() {
    let o = run(&["energy", "petersen", "--alpha", "0.25", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph"]["id"], "petersen");
    assert_eq!(v["graph"]["regular"], 3);
    assert!((v["offset"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!((v["energy"].as_f64().unwrap() - 12.0).abs() < 1e-9);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_csv_is_stable() {
    let args = ["sweep", "C4", "K3,3", "--alphas", "0:0.5:0.25"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    assert_eq!(a, "graph,alpha_0.0,alpha_0.25,alpha_0.5\nC4,4.0000,3.0000,2.0000\n\"K3,3\",6.0000,4.5000,3.0000\n");
    let o = run(&["sweep", "C4", "--alphas", "0,0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn classify_reports_partners() {
    let o = run(&[
        "classify",
        "op:shadow:2:C5",
        "--alpha",
        "0.4",
        "--peers",
        "op:duplicate:1:C5",
        "K10",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "neither");
    assert_eq!(
        v["equal_partners"],
        serde_json::json!(["op:duplicate:1:C5"])
    );
    let o = run(&["classify", "op:closed-shadow:C4", "--alpha", "0.3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "borderenergetic");
}

#[test]
fn table1_csv_header_and_rows() {
    let o = run(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "graph,alpha_0.0,alpha_0.1,alpha_0.2,alpha_0.3,alpha_0.4,alpha_0.5,alpha_0.6,alpha_0.7,alpha_0.8,alpha_0.9"
    );
    assert_eq!(lines.count(), 27);
    assert!(text.contains("Ebd(C6),16.0000,14.4000,12.8000,11.2000,9.6000,8.0000,"));
    assert!(text.contains("Lambda(C5),16.9860,15.1326,13.3447,11.8961,10.5946,9.3861,8.4907,"));
}

#[test]
fn observations_exit_status_reflects_report() {
    let o = run(&["observations", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let all = v["observations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|b| b["pass"] == true);
    assert_eq!(o.status.code(), Some(if all { 0 } else { 1 }));
    assert_eq!(v["observations"].as_array().unwrap().len(), 6);
}
