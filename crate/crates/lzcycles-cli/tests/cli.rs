use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lzcycles::fixtures;
use lzcycles_cli::json::Report;
use lzcycles_cli::wpc::{self, WpcFile};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzcycles"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn data_files_match_fixtures() {
    let cases = [
        ("torus.wpc", fixtures::make_torus(8, 8, (0.1, 0.05))),
        ("coarse-octahedron.wpc", fixtures::compatibility_pair().0),
        (
            "monkey-saddle.wpc",
            fixtures::make_monkey_saddle().with_random_weights(6, 4),
        ),
    ];
    for (name, fx) in cases {
        let text = std::fs::read_to_string(data(name)).unwrap();
        assert_eq!(
            wpc::parse(&text, Some(1)).unwrap(),
            WpcFile::from_fixture(&fx),
            "{name}"
        );
        assert_eq!(wpc::serialize(&WpcFile::from_fixture(&fx)), text, "{name}");
    }
}

#[test]
fn torus_barcode_has_two_bars() {
    let o = run(&["barcode", path(&data("torus.wpc")), "--dim", "1"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("0 oo [1, 4]"), "{lines:?}");
    assert!(lines[1].starts_with("1 cc [2, 3]"), "{lines:?}");

    let o = run(&["barcode", path(&data("torus.wpc")), "--format", "json"]);
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let kinds: Vec<&str> = r.intervals.iter().map(|i| i.kind.as_str()).collect();
    assert_eq!(kinds, ["oo", "cc"]);
    assert_eq!(
        (r.intervals[1].birth_value, r.intervals[1].death_value),
        (-1.0, 1.0)
    );
}

#[test]
fn oracle_cross_check() {
    let o = run(&[
        "cycles",
        path(&data("monkey-saddle.wpc")),
        "--dim",
        "1",
        "--oracle",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.matches("optimal=oracle").count(), 3, "{out}");

    let o = run(&[
        "cycles",
        path(&data("torus.wpc")),
        "--dim",
        "1",
        "--interval",
        "0",
        "--oracle",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("oracle=skipped"));
}

#[test]
fn validate_reports_incompatible_simplices() {
    let o = run(&[
        "validate",
        path(&data("coarse-octahedron.wpc")),
        "--dim",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("compatibility"))
        .unwrap();
    assert!(
        line.contains("[1, 2, 4]") && line.contains("[1, 2, 5]"),
        "{line}"
    );
    let triangles = line
        .split('[')
        .filter(|s| s.matches(',').count() == 2)
        .count();
    assert_eq!(triangles, 2, "{line}");

    let o = run(&["validate", path(&data("torus.wpc"))]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["barcode", path(&data("coarse-octahedron.wpc"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.wpc");
    std::fs::write(&bad, "dim 2\nvertex 0 0\nvertex 1 1\nsimplex 0 7\n").unwrap();
    let o = run(&["barcode", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    std::fs::write(
        &bad,
        "dim 2\nvertex 0 0\nvertex 1 1\nvertex 2 2\nsimplex 0 1 2 w=3\n",
    )
    .unwrap();
    let o = run(&["barcode", bad.to_str().unwrap(), "--dim", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));

    let o = run(&["cycles", path(&data("torus.wpc")), "--interval", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_totals_match_listed_simplices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("monkey.json");
    let src = data("monkey-saddle.wpc");
    let o = run(&[
        "export",
        path(&src),
        "--dim",
        "1",
        "-o",
        out.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert!(o.status.success());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let file = wpc::parse(&std::fs::read_to_string(&src).unwrap(), Some(1)).unwrap();
    let weight = |vs: &Vec<u32>| {
        file.simplices
            .iter()
            .find(|(s, _)| s == vs)
            .and_then(|(_, w)| *w)
            .unwrap_or(1.0)
    };
    let mut total = 0.0;
    for c in &r.cycles {
        let w: f64 = c.simplices.iter().map(weight).sum();
        assert_eq!(w, c.weight);
        total += w;
    }
    assert_eq!(Some(total), r.total_weight);
    assert_eq!(r.intervals.len(), 3);
    assert_eq!(r.cycles.len(), 4 + 2 + 3);
}

#[test]
fn select_by_type_and_values() {
    let o = run(&[
        "cycles",
        path(&data("torus.wpc")),
        "--type",
        "cc",
        "--birth=-1",
        "--death=1",
        "--jobs",
        "1",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("interval 1 cc [2, 3] cycles=3"), "{out}");
    let o = run(&["cycles", path(&data("torus.wpc")), "--type", "co"]);
    assert_eq!(o.status.code(), Some(2));
}
