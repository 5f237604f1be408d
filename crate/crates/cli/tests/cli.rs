use std::path::PathBuf;
use std::process::{Command, Output};

use tubefrieze::tubes::TubeReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubefrieze")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"));
    path.to_string_lossy().into_owned()
}

#[test]
fn growth_of_422_is_8() {
    let o = run(&["growth", "--quiddity", "4,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s = 8\n");
}

#[test]
fn frieze_rows_reparse() {
    let o = run(&["frieze", "--quiddity", "4,2,2", "--rows", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<u64>> = text
        .lines()
        .filter_map(|l| l.split_once(':').filter(|(h, _)| h.starts_with("Row ")).map(|(_, b)| b))
        .map(|b| b.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    let mut row2 = rows[2].clone();
    row2.sort();
    assert_eq!(row2, vec![3, 7, 7]);
    assert!(!text.contains("Row -1"));
    assert!(stdout(&run(&["frieze", "--quiddity", "4,2,2", "--rows", "2", "--show-zeros"])).contains("Row -1: "));
}

#[test]
fn band_reports_degenerate_oriented_cycle() {
    let o = run(&["band", "--word", "D"]);
    assert_eq!(stdout(&o), "count       2\ndegenerate  yes\n");
    assert_eq!(stdout(&run(&["band", "--word", "UU"])), "count       4\ndegenerate  no\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["fence", "--word", "DXUD"]).status.code(), Some(2));
    assert_eq!(run(&["fence", "--word", "DD", "--extra"]).status.code(), Some(2));
    assert_eq!(run(&["disk", "analyze", "--input", "missing.file"]).status.code(), Some(2));
    assert_eq!(run(&["disk", "gen", "--seed", "1", "--b", "2", "--p", "3", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["disk", "analyze", "--input", &fixture("case_ii_minimal"), "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn machine_report_round_trips() {
    for name in ["case_ii_minimal", "case_iii_minimal", "triangul_quidd"] {
        let o = run(&["disk", "analyze", "--input", &fixture(name), "--format", "machine"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let report: TubeReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(report.all_equal);
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", stdout(&o));
        let text = stdout(&run(&["disk", "analyze", "--input", &fixture(name)]));
        assert_eq!(text, report.to_string());
    }
}

#[test]
fn generated_files_analyze_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    for (k, (case, b, p, q)) in [("i", 5, 2, 3), ("ii", 2, 3, 3), ("iii", 3, 7, 1)].into_iter().enumerate() {
        let path = dir.path().join(format!("t{k}.json"));
        let path = path.to_str().unwrap();
        let args = ["disk", "gen", "--seed", "11", "--case", case, "--b", &b.to_string(), "--p", &p.to_string(), "--q", &q.to_string(), "--out", path];
        assert_eq!(run(&args).status.code(), Some(0), "{case}");
        let first = std::fs::read(path).unwrap();
        run(&args);
        assert_eq!(std::fs::read(path).unwrap(), first, "{case}: generation is not deterministic");
        let o = run(&["disk", "analyze", "--input", path, "--format", "machine"]);
        assert_eq!(o.status.code(), Some(0), "{case}");
        let report: TubeReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!((report.p, report.q), (p, q));
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["disk", "verify", "--random", "30", "--seed", "7", "--b", "4", "--pmax", "3", "--qmax", "3"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&run(&args)), stdout(&first));
    assert_eq!(run(&["disk", "verify", "--random", "10", "--seed", "7"]).status.code(), Some(0));
}

#[test]
fn closed_frieze_is_marked() {
    let text = stdout(&run(&["frieze", "--quiddity", "3,1,2,2,1", "--rows", "5"]));
    let marked: Vec<&str> = text.lines().filter(|l| l.contains("closing")).collect();
    assert_eq!(marked.len(), 1);
    assert!(marked[0].starts_with("Row 3:"));
}
