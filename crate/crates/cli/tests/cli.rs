use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn voro(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voro"))
        .args(args)
        .env("VORO_CACHE_DIR", cache)
        .env("VORO_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn minvec_of_hexagonal_form() {
    let tmp = tempfile::tempdir().unwrap();
    let f = tmp.path().join("a2.txt");
    fs::write(&f, "2\n1 1/2\n1/2 1\n").unwrap();
    let o = voro(tmp.path(), &["minvec", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "# minimum 1\n2 3\n0 1\n1 -1\n1 0\n");
}

#[test]
fn realize_reports_both_verdicts() {
    let tmp = tempfile::tempdir().unwrap();
    let yes = tmp.path().join("yes.txt");
    fs::write(&yes, "2 3\n1 0\n0 1\n1 1\n").unwrap();
    let o = voro(tmp.path(), &["realize", yes.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("REALIZABLE\n"));
    let no = tmp.path().join("no.txt");
    fs::write(&no, "2 4\n1 0\n0 1\n1 1\n1 -1\n").unwrap();
    let o = voro(tmp.path(), &["realize", no.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NOT REALIZABLE\n"));
}

#[test]
fn enumerate_writes_records_and_resumes_from_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("r5.txt");
    let o = voro(tmp.path(), &["enumerate", "--dim", "4", "--rank", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.matches("# index=").count(), 3);
    assert!(tmp.path().join("n4/r5/manifest.txt").exists());
    let again = tmp.path().join("again.txt");
    let o = voro(tmp.path(), &["enumerate", "--dim", "4", "--rank", "5", "--resume", "--out", again.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(again).unwrap(), text);
}

#[test]
fn count_only_counts_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = voro(tmp.path(), &["enumerate", "--dim", "4", "--rank", "4", "--count-only", "--max-index", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().map(|l| l.split('=').nth(1).unwrap().split(' ').next().unwrap()).collect::<Vec<_>>(), ["2", "3", "5"]);
}

#[test]
fn perfect_forms_in_dimension_four() {
    let tmp = tempfile::tempdir().unwrap();
    let o = voro(tmp.path(), &["perfect", "--dim", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("# index=").count(), 2);
}

#[test]
fn isom_and_stab() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a.txt");
    let b = tmp.path().join("b.txt");
    let c = tmp.path().join("c.txt");
    fs::write(&a, "2 3\n1 0\n0 1\n1 1\n").unwrap();
    fs::write(&b, "2 3\n1 0\n0 1\n1 -1\n").unwrap();
    fs::write(&c, "2 2\n1 0\n0 1\n").unwrap();
    let o = voro(tmp.path(), &["isom", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = voro(tmp.path(), &["isom", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(stdout(&o), "NONE\n");
    let o = voro(tmp.path(), &["stab", a.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("order 12\norientation-faithful 0\n"));
}

#[test]
fn complex_and_homology_in_dimension_three() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cx");
    let o = voro(tmp.path(), &["complex", "--dim", "3", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("dd=0 verified\n"));
    assert!(dir.join("d6.txt").exists());
    let o = voro(tmp.path(), &["homology", "--dim", "3"]);
    assert!(o.status.success());
    assert!(!stdout(&o).is_empty());
}

#[test]
fn reproduce_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = voro(tmp.path(), &["reproduce", "table1", "--max-dim", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = voro(tmp.path(), &["reproduce", "table3", "--budget-secs", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = voro(tmp.path(), &["reproduce", "table9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_input_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let f = tmp.path().join("bad.txt");
    fs::write(&f, "2 3\n1 0\n0 1\n").unwrap();
    let o = voro(tmp.path(), &["stab", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
