//! End-to-end tests of the `logsurf` binary: exit codes, the documented
//! examples, determinism and the published JSON schema.

mod common;

use common::{fixture, fixtures};
use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const COMMANDS: [&str; 13] = [
    "analyze",
    "discriminant",
    "bark",
    "coeffs",
    "classify",
    "peel",
    "squeeze",
    "redundant",
    "ale",
    "mmp",
    "amm",
    "enumerate-runs",
    "dot",
];

fn logsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn fixture_path(file: &str) -> String {
    fixture(file).path.to_string_lossy().into_owned()
}

fn temp_document(text: &str) -> tempfile_path::TempPath {
    tempfile_path::TempPath::new(text)
}

/// A file in the system temp directory, removed on drop.
mod tempfile_path {
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    static COUNTER: AtomicUsize = AtomicUsize::new(0);

    pub struct TempPath(pub PathBuf);

    impl TempPath {
        pub fn new(text: &str) -> Self {
            let k = COUNTER.fetch_add(1, Ordering::SeqCst);
            let path = std::env::temp_dir()
                .join(format!("logsurf-cli-test-{}-{k}.json", std::process::id()));
            std::fs::write(&path, text).expect("writable temp dir");
            TempPath(path)
        }

        pub fn arg(&self) -> String {
            self.0.to_string_lossy().into_owned()
        }
    }

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn coeffs_of_the_rod() {
    let o = logsurf(&["coeffs", &fixture_path("rod_3_2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("coefficients: (2/5, 1/5)\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn almost_minimal_model_that_is_not_lc() {
    let o = logsurf(&["amm", &fixture_path("aMM_not_dlt.json"), "--r", "9/10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("almost minimal model:"))
        .expect("verdict line");
    assert!(line.contains("not (1-r)-lc"), "{line}");
    assert!(line.contains("not (1-r)-dlt"), "{line}");
    // T3 = [3] meets the contracted (-1)-curve: cf(T3; X') = 1 - 4(1-r)/5 = 23/25 > r.
    assert!(line.contains("T3 (23/25)"), "{line}");
}

#[test]
fn dot_of_d4() {
    let o = logsurf(&["dot", &fixture_path("d4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("graph "), "{out}");
    for id in ["B", "P", "Q", "S"] {
        assert!(out.contains(&format!("label=\"{id}\\n-2\"")), "{out}");
    }
    assert_eq!(out.matches(" -- ").count(), 3);
    assert_eq!(out.matches("fillcolor=grey").count(), 4);
}

#[test]
fn out_flag_writes_the_report() {
    let target = std::env::temp_dir().join(format!("logsurf-cli-out-{}.txt", std::process::id()));
    let o = logsurf(&[
        "coeffs",
        &fixture_path("rod_3_2.json"),
        "--out",
        &target.to_string_lossy(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    let _ = std::fs::remove_file(&target);
    assert!(written.starts_with("coefficients: (2/5, 1/5)"));
}

#[test]
fn usage_errors_exit_with_one() {
    let rod = fixture_path("rod_3_2.json");
    let syntax = temp_document("{ \"vertices\": [ }");
    let decimal = temp_document(
        &std::fs::read_to_string(&rod)
            .unwrap()
            .replace("\"1/2\"", "\"0.5\""),
    );
    let cases: Vec<Vec<String>> = vec![
        vec![],
        vec!["frobnicate".into(), rod.clone()],
        vec![
            "coeffs".into(),
            rod.clone(),
            "--kind".into(),
            "third".into(),
        ],
        vec!["coeffs".into(), rod.clone(), "--r".into(), "0.5".into()],
        vec!["coeffs".into(), rod.clone(), "--eps".into(), "1/0".into()],
        vec!["coeffs".into(), "no/such/file.json".into()],
        vec!["coeffs".into(), syntax.arg()],
        vec!["coeffs".into(), decimal.arg()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = logsurf(&refs);
        assert_eq!(
            o.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = logsurf(&["coeffs", &decimal.arg()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("field r"));
    let o = logsurf(&["coeffs", &syntax.arg()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn domain_errors_exit_with_two() {
    let unknown_edge = temp_document(
        r#"{"vertices": [{"id": "A", "weight": 2}], "edges": [{"a": "A", "b": "Z"}]}"#,
    );
    let not_contractible =
        temp_document(r#"{"vertices": [{"id": "A", "weight": 0}], "contracted": ["A"]}"#);
    let d4 = fixture_path("d4.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["coeffs".into(), unknown_edge.arg()],
        vec!["coeffs".into(), not_contractible.arg()],
        vec!["bark".into(), d4.clone()],
        vec!["discriminant".into(), d4, "--set".into(), "B+X".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = logsurf(&refs);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error: "),
            "{args:?}"
        );
    }
}

#[test]
fn help_exits_with_zero() {
    let o = logsurf(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("enumerate-runs"));
}

#[test]
fn reports_are_reproducible() {
    for f in fixtures() {
        let path = f.path.to_string_lossy().into_owned();
        for cmd in COMMANDS {
            for json in [false, true] {
                let mut args = vec![cmd, path.as_str()];
                if json {
                    args.push("--json");
                }
                let a = logsurf(&args);
                let b = logsurf(&args);
                assert_eq!(a.status.code(), b.status.code(), "{args:?}");
                assert_eq!(a.stdout, b.stdout, "{args:?}");
                assert_eq!(a.stderr, b.stderr, "{args:?}");
            }
        }
    }
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Every successful `--json` report, tagged by command.
fn json_reports() -> Vec<(String, String, Value)> {
    let mut out = Vec::new();
    for f in fixtures() {
        let path = f.path.to_string_lossy().into_owned();
        for cmd in COMMANDS {
            let o = logsurf(&[cmd, &path, "--json"]);
            if o.status.code() == Some(0) {
                let v: Value = serde_json::from_slice(&o.stdout)
                    .unwrap_or_else(|e| panic!("{cmd} {}: {e}", f.file));
                out.push((cmd.to_string(), f.file.clone(), v));
            } else {
                assert_eq!(o.status.code(), Some(2), "{cmd} {}", f.file);
            }
        }
    }
    out
}

#[test]
fn json_reports_carry_the_schema_fields() {
    let schema = schema();
    for (cmd, file, report) in json_reports() {
        let def = &schema["$defs"][cmd.as_str()];
        let props = def["properties"]
            .as_object()
            .unwrap_or_else(|| panic!("no schema for {cmd}"));
        let keys = report
            .as_object()
            .unwrap_or_else(|| panic!("{cmd} {file}: not an object"));
        let mut expected: Vec<&String> = props.keys().collect();
        let mut actual: Vec<&String> = keys.keys().collect();
        expected.sort();
        actual.sort();
        assert_eq!(actual, expected, "{cmd} {file}");
    }
}

/// Full validation with Python's `jsonschema` when it is installed.
#[test]
fn json_reports_validate_against_the_schema() {
    let probe = Command::new("python3")
        .args(["-c", "import jsonschema"])
        .output();
    if !probe.is_ok_and(|o| o.status.success()) {
        println!("SKIP: python3 with the jsonschema module is not available");
        return;
    }
    let reports = json_reports();
    let batch: Vec<Value> = reports
        .iter()
        .map(|(cmd, file, v)| serde_json::json!([cmd, file, v]))
        .collect();
    let script = r##"
import json, sys, jsonschema
schema = json.load(open(sys.argv[1]))
validator = jsonschema.Draft202012Validator(schema)
bad = 0
for cmd, name, report in json.load(sys.stdin):
    sub = dict(schema)
    sub.pop("oneOf")
    sub["$ref"] = "#/$defs/" + cmd
    for errors in (list(validator.iter_errors(report)), list(jsonschema.Draft202012Validator(sub).iter_errors(report))):
        for e in errors:
            bad += 1
            print(cmd, name, e.message)
sys.exit(1 if bad else 0)
"##;
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let mut child = Command::new("python3")
        .args(["-c", script, &schema_path.to_string_lossy()])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(serde_json::to_string(&batch).unwrap().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    println!("validated {} reports", reports.len());
}
