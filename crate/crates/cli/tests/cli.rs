use std::path::PathBuf;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jhp-lab")).args(args).env_remove("JHP_LAB_BOUND").output().expect("spawn jhp-lab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn table1_has_fourteen_rows() {
    let o = lab(&["tables", "--which", "table1"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["w", "supp", "inv", "Binv", "#simp", "jhp"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 14);
    let non_jhp: Vec<&str> = rows.iter().filter(|r| &r[5] == "false").map(|r| r.get(0).unwrap()).collect();
    assert_eq!(non_jhp, vec!["3412"]);
    let r4312 = rows.iter().find(|r| &r[0] == "4312").unwrap();
    assert_eq!(&r4312[3], "{(1,3),(2,3),(3,4)}");
}

#[test]
fn table2_simp_column() {
    let o = lab(&["tables", "--which", "table2"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let simp: Vec<String> = r.records().map(|x| x.unwrap()[4].to_string()).collect();
    assert_eq!(simp.join(","), "4,4,5,5,4,4,5,5,4,6,4,5,4,4");
}

#[test]
fn census_line() {
    let o = lab(&["tables", "--which", "census", "--quiver", "1<2>3<4"]);
    assert!(stdout(&o).ends_with("42,34,8\n"));
    let j = json(&lab(&["tables", "--which", "census", "--format", "json"]));
    assert_eq!(j["faithful_jhp"], 8);
}

#[test]
fn tables_to_file() {
    let out = tmp("table1.csv");
    let o = lab(&["tables", "--which", "table1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&lab(&["tables", "--which", "table1"])));
}

#[test]
fn analyze_examples() {
    for (q, w, jhp, atoms, rank) in [("1>2<3", "3412", false, 4, 3), ("1>2<3", "1234", true, 0, 0), ("1<2>3<4", "45231", false, 6, 4)] {
        let o = lab(&["analyze", "--quiver", q, "--w", w]);
        assert!(o.status.success(), "{w}");
        let j = json(&o);
        assert_eq!(j["jhp"], jhp, "{w}");
        assert_eq!(j["atoms"].as_array().unwrap().len(), atoms, "{w}");
        assert_eq!(j["k0"]["rank"], rank, "{w}");
    }
}

#[test]
fn analyze_writes_dot() {
    let dot = tmp("f4312.dot");
    let o = lab(&["analyze", "--quiver", "1>2<3", "--w", "4312", "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let o = lab(&["analyze", "--quiver", "1>2<3", "--w", "4312", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn analyze_spec_files() {
    let j = json(&lab(&["analyze", "--spec", &data("nakayama-cyclic.txt")]));
    assert_eq!(j["jhp"], true);
    assert_eq!(j["k0"]["rank"], 2);
    let j = json(&lab(&["analyze", "--spec", &data("loop-algebra.pres")]));
    assert_eq!(j["cancellative"]["certificate"]["a"], "M");
    assert_eq!(j["cancellative"]["certificate"]["y"], "P2");
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", "--quiver", "1<2>3<4", "--w", "45231"];
    assert_eq!(lab(&args).stdout, lab(&args).stdout);
    assert_eq!(lab(&["regress"]).stdout, lab(&["regress"]).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["analyze", "--quiver", "1>2<3", "--w", "4231"]).status.code(), Some(3));
    assert_eq!(lab(&["analyze", "--quiver", "1>>2", "--w", "123"]).status.code(), Some(3));
    assert_eq!(lab(&["analyze", "--quiver", "1>2<3", "--w", "12345"]).status.code(), Some(3));
    assert_eq!(lab(&["analyze", "--spec", "/nonexistent/spec.txt"]).status.code(), Some(2));
    let out = "/nonexistent/dir/t.csv";
    assert_eq!(lab(&["tables", "--which", "table1", "--out", out]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_jhp-lab"))
        .args(["analyze", "--quiver", "1>2<3", "--w", "3412"])
        .env("JHP_LAB_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn invalid_nakayama_class_is_rejected() {
    let f = tmp("not-closed.txt");
    std::fs::write(&f, "kupisch: 1,2,3\nclass: 3:3\n").unwrap();
    let o = lab(&["analyze", "--spec", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));
}

#[test]
fn regress_full_run() {
    let o = lab(&["regress"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("PASS compex(1,1) Case2"));
    assert!(text.contains("PASS loop-algebra non-cancellative"));
}

#[test]
fn regress_only() {
    let o = lab(&["regress", "--only", "nonulp1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS nonulp1") && text.contains("[2, 3]"));
    assert_eq!(lab(&["regress", "--only", "nothing"]).status.code(), Some(3));
}

#[test]
fn corrupted_relation_file_fails_by_name() {
    let good = std::fs::read_to_string(data("loop-algebra.pres")).unwrap();
    let bad = good.replace("P1 + I1 = 2*M", "P1 + I1 = P1 + I1");
    assert_ne!(good, bad);
    let f = tmp("corrupt.pres");
    std::fs::write(&f, bad).unwrap();
    let o = lab(&["regress", "--spec", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL loop-algebra non-cancellative"));
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1);
}
