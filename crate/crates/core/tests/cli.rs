use std::process::{Command, Output};

use serde_json::Value;
use wallcross::Partition;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

#[test]
fn single_maps() {
    let out = run(&["mullineux", "--e", "3", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2,1\n");
    assert_eq!(stdout(&run(&["cross", "--e", "19", "29"])), "18,11\n");
    assert_eq!(stdout(&run(&["mprime", "--e", "2", "6,2"])), "4,2^2\n");
    assert_eq!(
        stdout(&run(&["mtilde", "--wall", "1/9", "1^29"])),
        "18,11\n"
    );
    assert_eq!(
        stdout(&run(&["mtilde-prime", "--wall", "28/29", "29"])),
        "29\n"
    );
    assert_eq!(stdout(&run(&["farey", "--n", "3"])), "1/3\n1/2\n2/3\n");
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["mullineux", "--e", "3"],
        &["mullineux", "--e", "3", "1,2"],
        &["mullineux", "--e", "1", "3"],
        &["verify-sign", "--p", "4"],
        &["verify-bez", "--n", "9"],
        &["calibrate", "--n", "8"],
        &["mtilde", "--wall", "1/6", "1^5"],
        &["predict", "--p", "29", "--m", "29"],
        &["render"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn predict_table_and_schema() {
    let out = run(&["predict", "--p", "29", "--m", "3"]);
    assert_eq!(
        stdout(&out),
        "3/29\t29\n2/19\t18,11\n1/9\t7^3,4^2\n1/8\t3^8,1^5\n2/15\t2^8,1^13\n3/22\t1^29\n"
    );
    let doc = json(&["predict", "--p", "29", "--m", "3"]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["n"], 29);
    assert_eq!(doc["start"], "1^29");
    assert_eq!(doc["source"], "predictor");
    assert_eq!(doc["steps"], doc["change_points"]);
    assert_eq!(doc["steps"][1]["wall"], "2/19");
}

#[test]
fn predict_check_flags_the_printed_equation() {
    assert_eq!(
        run(&["predict", "--p", "29", "--m", "3", "--check"])
            .status
            .code(),
        Some(0)
    );
    let out = run(&[
        "predict",
        "--p",
        "29",
        "--m",
        "3",
        "--check",
        "--printed-fourth",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("30 vs 8"));
}

#[test]
fn trajectory_output_round_trips() {
    let doc = json(&["trajectory", "--start", "1^7"]);
    assert_eq!(doc["source"], "engine");
    let steps = doc["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 17);
    for step in steps {
        let text = step["after"].as_str().unwrap();
        let p: Partition = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(p.size(), 7);
    }
    let window = stdout(&run(&["trajectory", "--start", "1^29", "--m", "3"]));
    assert_eq!(window.lines().count(), 6);
    assert!(window.starts_with("3/29\t29\n2/19\t18,11\n"));
    let prime = json(&["trajectory", "--start", "29", "--prime"]);
    assert_eq!(prime["change_points"].as_array().unwrap().len(), 0);
}

#[test]
fn verification_exit_codes_follow_the_report() {
    let out = run(&["verify-bez", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS (all cases): 2 cases"));

    let out = run(&["verify-sign", "--p", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS (all cases): 12 cases"));
    assert!(stdout(&out).contains("first differing wall"));

    for n in ["4", "5"] {
        let out = run(&["verify-bez", "--n", n]);
        let failed = stdout(&out).contains("\nFAIL: ");
        assert_eq!(out.status.code(), Some(if failed { 1 } else { 0 }));
    }

    let out = run(&[
        "verify-bez",
        "--n",
        "29",
        "--start",
        "1^29",
        "--wall",
        "1/9",
        "--convention",
        "rows",
        "--wallset",
        "strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("A=18 B=0"));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    for args in [
        &["verify-sign"][..],
        &["verify-bez", "--n", "6"],
        &["calibrate", "--n", "4"],
    ] {
        for format in ["text", "json"] {
            let mut one = args.to_vec();
            one.extend(["--format", format, "--jobs", "1"]);
            let mut eight = args.to_vec();
            eight.extend(["--format", format, "--jobs", "8"]);
            assert_eq!(run(&one).stdout, run(&eight).stdout, "{args:?} {format}");
        }
    }
}

#[test]
fn cache_file_is_used_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.cache");
    let p = path.to_str().unwrap();
    let first = run(&["trajectory", "--start", "1^11", "--cache-file", p]);
    assert_eq!(first.status.code(), Some(0));
    let size = std::fs::metadata(&path).unwrap().len();
    assert!(size > 0);
    let second = run(&["trajectory", "--start", "1^11", "--cache-file", p]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::metadata(&path).unwrap().len(), size);

    std::fs::write(&path, "3;3;1^3\n").unwrap();
    let bad = run(&["mullineux", "--e", "3", "3", "--cache-file", p]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let out = run(&[
        "render",
        "--p",
        "29",
        "--m",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("2/19") && svg.contains("7^3,4^2"));
    let inline = stdout(&run(&["render", "--start", "1^5"]));
    assert_eq!(inline.matches("rows").count(), 10);
}
