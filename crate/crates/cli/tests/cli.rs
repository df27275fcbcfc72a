use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn odsk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odsk"))
        .args(args)
        .env_remove("ODSK_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mediated_airline_distance() {
    let o = odsk(&["omspace", "mediate", &fixture("airlines.cxt"), &fixture("airlines_dist.csv")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("Scandinavian")).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    let col = header.iter().position(|h| *h == "Austrian A.").unwrap();
    assert_eq!(row.split('\t').nth(col), Some("1563"));
}

#[test]
fn bundesliga_dimension_from_table_and_edge_list() {
    let from_table = odsk(&[
        "dimension",
        &fixture("bundesliga.csv"),
        "--spec",
        &fixture("bundesliga_scaling.json"),
    ]);
    assert!(from_table.status.success());
    assert!(stdout(&from_table).contains("dimension: 3\nverified: true\n"));
    let from_edges = odsk(&["dimension", &fixture("bundesliga.tsv")]);
    assert_eq!(stdout(&from_edges), stdout(&from_table));
    let weak = odsk(&[
        "dimension",
        &fixture("bundesliga.csv"),
        "--spec",
        &fixture("bundesliga_scaling.json"),
        "--weak",
    ]);
    assert!(stdout(&weak).contains("dimension: 2\n"));
}

#[test]
fn points_check() {
    let o = odsk(&[
        "pareto",
        &fixture("bundesliga.csv"),
        "--spec",
        &fixture("bundesliga_scaling.json"),
        "--verify-points",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("points check: ok"));
    assert!(text.contains("FC Bayern München"));
}

#[test]
fn empty_context_has_one_concept() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.cxt");
    fs::write(&path, "B\n\n0\n0\n\n").unwrap();
    let o = odsk(&["--json", "concepts", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["concepts"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(odsk(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(odsk(&["--help"]).status.code(), Some(0));
    assert_eq!(odsk(&["concepts", "/no/such/file.cxt"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxt");
    fs::write(&bad, "not a context\n").unwrap();
    assert_eq!(odsk(&["concepts", bad.to_str().unwrap()]).status.code(), Some(2));

    let capped = odsk(&["dimension", &fixture("bundesliga.tsv"), "--max-k", "1"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(stdout(&capped).contains("lower: 2\nupper: 3\n"));
    let starved = odsk(&["dimension", &fixture("bundesliga.tsv"), "--budget-ms", "0"]);
    assert_eq!(starved.status.code(), Some(3));
    assert!(stdout(&starved).contains("stopped: budget"));
}

#[test]
fn json_output_parses() {
    let o = odsk(&["--json", "dimension", &fixture("bundesliga.tsv")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 3);
    let o = odsk(&["--json", "implications", &fixture("rembrandt.cxt")]);
    assert!(serde_json::from_str::<serde_json::Value>(&stdout(&o)).is_ok());
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["concepts".to_string(), fixture("rembrandt.cxt")],
        vec!["factors".to_string(), fixture("socialnet.cxt")],
        vec!["draw".to_string(), fixture("rembrandt.cxt"), "--format".into(), "dot".into()],
        vec!["--seed".to_string(), "7".into(), "draw".into(), fixture("bundesliga.tsv")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = odsk(&args);
        let b = odsk(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn scale_writes_a_context() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("league.cxt");
    let o = odsk(&[
        "scale",
        &fixture("bundesliga.csv"),
        "--spec",
        &fixture("bundesliga_scaling.json"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("B\n\n18\n"));
    let again = odsk(&["concepts", out.to_str().unwrap()]);
    assert!(again.status.success());
}

#[test]
fn draw_writes_svg_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("lattice.svg");
    let dot = dir.path().join("lattice.dot");
    for (path, algo) in [(&svg, "dimdraw"), (&dot, "layered")] {
        let o = odsk(&["draw", &fixture("rembrandt.cxt"), "--algo", algo, "-o", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = fs::read_to_string(svg).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let dot = fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("pos=\""));
}

#[test]
fn unknown_layout_is_an_input_error() {
    let o = odsk(&["draw", &fixture("rembrandt.cxt"), "--algo", "spring"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimdraw"));
}
