//! End-to-end checks of the command-line interface: deterministic output,
//! schema-valid JSON, and the documented exit codes.

use std::process::Command;

fn algchar(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_algchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["denom", "--system", "A2", "--check"],
        vec!["denom", "--system", "BC1", "--json"],
        vec!["char", "weyl", "--system", "A2", "--highest", "1,1", "--json"],
        vec!["branch", "sl2-tensor", "2", "2", "--terms", "5"],
        vec![
            "kernel", "basis", "--system", "BC1", "--roots", "2;4", "--powers", "1,1",
            "--window", "-20:20", "--reps", "0;1", "--json",
        ],
        vec!["branch", "so3-blattner", "--window", "-50:50", "--json"],
    ];
    for args in cases {
        let a = algchar(&args);
        let b = algchar(&args);
        assert!(a.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{:?} not deterministic", args);
    }
}

#[test]
fn json_outputs_parse_against_the_schema() {
    let out = algchar(&[
        "char", "weyl", "--system", "A1", "--highest", "2", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // fraction schema: num (series schema) + den entries
    let num = &v["fraction"]["num"];
    assert!(num["terms"].is_array());
    assert_eq!(num["support"]["kind"], "finite");
    for term in num["terms"].as_array().unwrap() {
        assert!(term["w"].is_array());
        assert!(term["c"].is_string());
    }
    assert!(v["fraction"]["den"].is_array());
    // expansion terms come out in lexicographic coordinate order
    let coords: Vec<i64> = v["expansion"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["w"][0].as_i64().unwrap())
        .collect();
    let mut sorted = coords.clone();
    sorted.sort();
    assert_eq!(coords, sorted);
}

#[test]
fn series_json_roundtrips_through_kernel_check() {
    // a kernel element passes membership through the CLI
    let dir = std::env::temp_dir().join("algchar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("y1.json");
    // y_α^{(1)} on the window [-15, 15]: all odd coordinates, coefficient 1
    let terms: Vec<serde_json::Value> = (-8..=7)
        .map(|k| serde_json::json!({"w": [2 * k + 1], "c": "1"}))
        .collect();
    let series = serde_json::json!({
        "terms": terms,
        "support": {"kind": "window", "box": [[-15, 15]], "exact": [[-15, 15]]},
    });
    std::fs::write(&path, serde_json::to_string(&series).unwrap()).unwrap();
    let out = algchar(&[
        "kernel",
        "check",
        "--system",
        "A1",
        "--roots",
        "2",
        "--powers",
        "1",
        "--window",
        "-15:15",
        "--series",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["in_span"], true);
    assert_eq!(v["coordinates"][0], "1");
    assert_eq!(v["coordinates"][1], "0");
}

#[test]
fn exit_codes() {
    // domain error: non-dominant highest weight → 1
    let out = algchar(&["char", "weyl", "--system", "A1", "--highest", "-2"]);
    assert_eq!(out.status.code(), Some(1));
    // usage error: unknown flag → 2
    let out = algchar(&["denom", "--system", "A1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // success → 0
    let out = algchar(&["denom", "--system", "A1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn explicit_cartan_data_file() {
    let dir = std::env::temp_dir().join("algchar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bc1.txt");
    std::fs::write(
        &path,
        "rank 1\ngram 1/2\npositive 2 1\npositive 4 2\nsimple 2\n",
    )
    .unwrap();
    let out = algchar(&["rootdatum", "--file", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["positive"][1]["mult"], 2);
    // invalid data is a domain error
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "rank 1\ngram -1\npositive 2 1\nsimple 2\n").unwrap();
    let out = algchar(&["rootdatum", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
