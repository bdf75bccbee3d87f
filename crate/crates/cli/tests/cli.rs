use std::fs;
use std::process::{Command, Output};

fn latchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn poly_real_rooted_exit_codes() {
    let yes = latchain(&["poly", "real-rooted", "1 4 5 2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "true");
    let no = latchain(&["poly", "real-rooted", "1 0 1"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(
        latchain(&["poly", "unit-rooted", "1 37 155 245 168 42"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        latchain(&["poly", "roots-in", "2 3 1", "-2", "-1"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn poly_transforms() {
    assert_eq!(
        stdout(&latchain(&["poly", "eulerian", "3", "2"])).trim(),
        "1 12 8"
    );
    assert_eq!(stdout(&latchain(&["poly", "count", "1 3 2"])).trim(), "2");
    assert_eq!(
        stdout(&latchain(&["poly", "count", "1 3 2", "-1", "0"])).trim(),
        "1"
    );
    let h = stdout(&latchain(&["poly", "h-from-f", "1 6 6", "2"]));
    assert_eq!(
        stdout(&latchain(&["poly", "f-from-h", h.trim(), "2"])).trim(),
        "1 6 6"
    );
    assert_eq!(
        latchain(&["poly", "interlaces", "1 4 1", "1 180 729"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(
        latchain(&["poly", "real-rooted", "1 x"]).status.code(),
        Some(2)
    );
    assert_eq!(latchain(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(latchain(&["build", "boolean:x"]).status.code(), Some(2));
}

#[test]
fn suite_from_instance_file_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("inst.txt");
    fs::write(
        &list,
        "# a comment\nvamos\ntrunc-boolean:6:2\n\nfano-design\n",
    )
    .unwrap();
    let json = dir.path().join("out.jsonl");
    let csv = dir.path().join("out.csv");
    let out = latchain(&[
        "suite",
        "paving",
        "--instances",
        list.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("suite paving: 3 instances"), "{text}");
    let lines: Vec<serde_json::Value> = fs::read_to_string(&json)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().all(|v| v["verdict"] == "pass"));
    assert!(lines.iter().any(|v| v["instance"] == "vamos"));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), lines.len() + 1);
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = stdout(&latchain(&["suite", "oracle", "--jobs", "1"]));
    let par = stdout(&latchain(&["suite", "oracle", "--jobs", "4"]));
    assert_eq!(seq, par);
}

#[test]
fn build_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b3.poset");
    let status = latchain(&["build", "boolean:3", "--out", out.to_str().unwrap()]).status;
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("poset 8"));
    let inst = dir.path().join("inst.txt");
    fs::write(&inst, format!("file:{}\n", out.display())).unwrap();
    let run = latchain(&[
        "suite",
        "incidence",
        "--instances",
        inst.to_str().unwrap(),
        "-q",
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stdout(&run));
}

#[test]
fn paving_from_dpartition_file() {
    let dir = tempfile::tempdir().unwrap();
    let dp = dir.path().join("fano.txt");
    fs::write(
        &dp,
        "dpartition 7 2\nblock 1 2 3\nblock 1 4 5\nblock 1 6 7\nblock 2 4 6\nblock 2 5 7\nblock 3 4 7\nblock 3 5 6\n",
    )
    .unwrap();
    let inst = dir.path().join("inst.txt");
    fs::write(&inst, format!("paving:file={}\n", dp.display())).unwrap();
    let run = latchain(&["suite", "paving", "--instances", inst.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", stdout(&run));
}

#[test]
fn dowling_rows_build() {
    let text = stdout(&latchain(&["build", "dowling-rows:m=1:N=3"]));
    assert!(!text.trim().is_empty());
}
