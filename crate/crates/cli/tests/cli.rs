use std::fs;
use std::process::{Command, Output};

fn bcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn strut_dimension_in_connected_quotient() {
    let o = bcr(&[
        "dims",
        "--space",
        "Ac",
        "--max-vertices",
        "2",
        "--max-edges",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with('#'));
    assert!(text.lines().any(|l| l == "vertices,edges,Ac"));
    assert!(text.lines().any(|l| l == "2,1,1"));
}

#[test]
fn dims_json_lists_every_space() {
    let o = bcr(&[
        "dims",
        "--max-vertices",
        "4",
        "--max-edges",
        "4",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["header"]["format_version"], 1);
    assert_eq!(v["spaces"].as_array().unwrap().len(), 5);
    let strut = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["vertices"] == 2 && r["edges"] == 1)
        .unwrap();
    assert_eq!(strut["dimensions"]["B"], 1);
}

#[test]
fn injected_fault_fails_with_replay() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = bcr(&[
        "verify",
        "--suite",
        "pbw",
        "--max-vertices",
        "4",
        "--max-edges",
        "4",
        "--fault-inject",
        "stu-sign",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("replay: bcr verify --suite pbw"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn clean_suite_passes() {
    let o = bcr(&[
        "verify",
        "--suite",
        "ihx-in-stu",
        "--max-vertices",
        "6",
        "--max-edges",
        "6",
        "--parity",
        "odd",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn export_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = [
            "--jobs",
            "2",
            "export",
            "--max-vertices",
            "6",
            "--max-edges",
            "6",
            "--out",
            path.to_str().unwrap(),
        ];
        assert!(bcr(&args).status.success());
        fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn syntax_and_validation_errors_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = dir.path().join("syntax.txt");
    fs::write(&syntax, "parity even\next 0 1\ndashed (1) 0-\n").unwrap();
    let invalid = dir.path().join("invalid.txt");
    // An external vertex with two dashed edges.
    fs::write(&invalid, "parity even\next 0 1 2\ndashed (1) 0-1 (2) 0-2\n").unwrap();
    let a = bcr(&["sigma", "--graph", syntax.to_str().unwrap()]);
    let b = bcr(&["sigma", "--graph", invalid.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(3));
    assert_eq!(b.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&a.stderr).contains("error"));
}

#[test]
fn sigma_and_resolve_of_enumerated_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let graphs = dir.path().join("graphs.txt");
    let o = bcr(&[
        "enumerate",
        "--vertices",
        "4",
        "--edges",
        "4",
        "--out",
        graphs.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&graphs).unwrap();
    assert!(text.contains("# count 2"));

    let sigma = bcr(&[
        "sigma",
        "--graph",
        graphs.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(sigma.status.success());
    let v: serde_json::Value = serde_json::from_slice(&sigma.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);

    // The chord diagram resolves to itself under every strategy.
    for strategy in ["min", "max", "seed:7"] {
        let o = bcr(&[
            "resolve",
            "--graph",
            graphs.to_str().unwrap(),
            "--strategy",
            strategy,
        ]);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(
            out.contains("kappa(e:xxxx:s0-1.s0-2.d0-1.d2-3) =\n  (1, e:xxxx:s0-1.s0-2.d0-1.d2-3)"),
            "{out}"
        );
    }
}

#[test]
fn relation_matrix_export() {
    let o = bcr(&[
        "relations",
        "--type",
        "4t",
        "--vertices",
        "6",
        "--edges",
        "6",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["relation"], "4T");
    assert_eq!(v["header"]["command"], "relations");
}
