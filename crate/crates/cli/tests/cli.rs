use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vvsingular"))
        .args(args)
        .env_remove("VVSINGULAR_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (doc, out.status.code().unwrap())
}

#[test]
fn rsyt_lists_contents() {
    let (doc, code) = json(&["rsyt", "--shape", "2,1"]);
    assert_eq!(code, 0);
    let contents: Vec<Value> = doc["tableaux"].as_array().unwrap().iter().map(|t| t["contents"].clone()).collect();
    assert_eq!(contents, vec![serde_json::json!([1, -1, 0]), serde_json::json!([-1, 1, 0])]);
}

#[test]
fn predict_jack_example() {
    let (doc, code) = json(&["predict", "--family", "jack", "--shape", "5,5,5,4,4,2,2", "--cell", "3,5", "--m", "1"]);
    assert_eq!(code, 0);
    let kappas: Vec<&str> = doc["data"].as_array().unwrap().iter().map(|d| d["kappa"].as_str().unwrap()).collect();
    assert_eq!(kappas, ["1/3", "-1/5", "-1/9"]);
    assert_eq!(
        doc["coefficient"],
        "(1 + 9κ)(1 + 5κ)(1 - 3κ) / ((1 + 7κ)(1 + 3κ)(1 - κ))"
    );
}

#[test]
fn verify_macdonald_example() {
    let (doc, code) = json(&["verify", "--family", "macdonald", "--shape", "1,1", "--cell", "2,1", "--m", "1"]);
    assert_eq!(code, 0);
    let r = &doc["reports"][0];
    assert_eq!(r["residual"], "0");
    assert_eq!(r["isotype"], "2");
    assert_eq!(r["status"], "singular");
}

#[test]
fn rsyt_round_trips_through_verify() {
    for shape in ["3", "2,1", "1,1,1", "3,1", "2,2", "2,1,1"] {
        let (doc, _) = json(&["rsyt", "--shape", shape]);
        for t in doc["tableaux"].as_array().unwrap() {
            let tableau = t["tableau"].as_str().unwrap();
            for family in ["jack", "macdonald"] {
                let (v, code) = json(&["verify", "--family", family, "--shape", shape, "--tableau", tableau, "--m", "1"]);
                assert_eq!(code, 0, "{family} {shape} {tableau}: {v}");
                for r in v["reports"].as_array().unwrap() {
                    assert_eq!(r["tableau"], tableau);
                    assert_eq!(r["status"], "singular");
                }
            }
        }
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "verify", "--family", "macdonald", "--shape", "2,1,1", "--cell", "3,1", "--m", "4", "--all-tableaux", "--seed",
        "11", "--no-timing",
    ];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "2"]].concat());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[&args[..10], &["--seed", "12", "--no-timing"]].concat());
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn isotype_matches_prediction() {
    let (doc, code) = json(&["isotype", "--family", "jack", "--shape", "3,1", "--cell", "2,1", "--m", "1", "--all-tableaux"]);
    assert_eq!(code, 0, "{doc}");
    for e in doc["isotypes"].as_array().unwrap() {
        assert_eq!(e["sigma"], e["expected_sigma"]);
        assert_eq!(e["matches"], true);
    }
}

#[test]
fn numeric_field_mode() {
    let (doc, code) = json(&["verify", "--family", "jack", "--shape", "2,1", "--cell", "2,1", "--m", "1", "--field", "numeric"]);
    assert_eq!(code, 0, "{doc}");
    assert!(doc["reports"][0]["residual"].is_number());
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("vvsingular-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rsyt.json");
    let out = run(&["rsyt", "--shape", "2,2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["dim"], 2);
    // a directory cannot be written as a file
    let out = run(&["rsyt", "--shape", "2,2", "--output", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["rsyt", "--shape", "2,x"],
        &["rsyt", "--shape", "1,2"],
        &["predict", "--family", "hall", "--shape", "2,1", "--cell", "2,1", "--m", "1"],
        &["predict", "--family", "jack", "--shape", "2,1", "--cell", "1,1", "--m", "1"],
        &["predict", "--family", "jack", "--shape", "2,1", "--cell", "2,1", "--m", "0"],
        &["verify", "--family", "jack", "--shape", "2,1", "--tableau", "2;1", "--m", "1"],
        &["verify", "--family", "jack", "--shape", "2,1", "--tableau", "3,1;2", "--cell", "2,1", "--m", "1"],
        &["verify", "--family", "jack", "--shape", "2,1", "--m", "1"],
        &["verify", "--family", "jack", "--shape", "2,1", "--cell", "2,1", "--m", "1", "--field", "fuzzy"],
        &["selftest", "--level", "medium"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}
