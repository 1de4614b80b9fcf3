use std::path::{Path, PathBuf};
use std::process::Command;

use conelab::cli::{run_args, run_corpus};

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Compares with a checked-in file; `UPDATE_GOLDEN=1` rewrites it instead.
fn check_golden(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|e| {
        panic!(
            "{}: {e} (run with UPDATE_GOLDEN=1 to create)",
            path.display()
        )
    });
    if expected != actual {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .map_or("end".to_string(), |i| (i + 1).to_string());
        panic!(
            "{} differs from the golden file at line {line}",
            path.display()
        );
    }
}

fn bundled_corpus() -> String {
    std::fs::read_to_string(manifest_dir().join("corpus/paper_examples.corpus")).unwrap()
}

#[test]
fn bundled_corpus_meets_expectations() {
    let out = run_corpus(&bundled_corpus());
    assert!(out.summary.failed.is_empty(), "{}", out.to_text());
    assert!(out.summary.expectations_checked >= 80);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn bundled_corpus_golden_json() {
    let out = run_corpus(&bundled_corpus());
    let mut json = serde_json::to_string_pretty(&out).unwrap();
    json.push('\n');
    check_golden(
        &manifest_dir().join("corpus/paper_examples.golden.json"),
        &json,
    );
}

#[test]
fn single_command_goldens() {
    let cases: [(&str, &[&str]); 4] = [
        (
            "inseparable_point.json",
            &[
                "point",
                "--field",
                "F2(a)",
                "--vars",
                "X,Y",
                "--poly",
                "Y^2 + a*X^2 + X^3",
                "--point",
                "0,0",
            ],
        ),
        (
            "planes_subvariety.json",
            &[
                "subvariety",
                "--field",
                "Q",
                "--vars",
                "x1,x2,x3",
                "--poly",
                "x1*x2^2 - x3^2",
                "--sub-vars",
                "x2,x3",
            ],
        ),
        (
            "coordinate_points.json",
            &[
                "points-generic",
                "--proj-dim",
                "2",
                "--points",
                "1:0:0;0:1:0;0:0:1",
            ],
        ),
        (
            "node.txt",
            &[
                "--format",
                "text",
                "point",
                "--vars",
                "x,y",
                "--poly",
                "y^2 - x^2 - x^3",
            ],
        ),
    ];
    for (file, args) in cases {
        let out = run_args(std::iter::once("conelab").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{file}: {}", out.stderr);
        check_golden(&manifest_dir().join("tests/golden").join(file), &out.stdout);
    }
}

#[test]
fn report_keys_are_fixed() {
    let keys = |args: &[&str]| -> Vec<String> {
        let out = run_args(std::iter::once("conelab").chain(args.iter().copied()));
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        v.as_object().unwrap().keys().cloned().collect()
    };
    let a = keys(&["point", "--vars", "x,y", "--poly", "y^2 - x^3"]);
    let b = keys(&["points-generic", "--points", "1:0;0:1"]);
    let c = keys(&[
        "subvariety",
        "--vars",
        "x,y,z",
        "--poly",
        "x^2 - y^2*z",
        "--sub-vars",
        "x,y",
    ]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a[0], "schema");
    for key in [
        "multiplicity",
        "embedding_dimension",
        "essential_rank",
        "tangent_count",
        "ordinary",
        "graded_reduced_base",
        "graded_reduced_geometric",
        "tangents",
        "branches",
        "generic_position",
        "notes",
    ] {
        assert!(a.iter().any(|k| k == key), "missing {key}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_conelab");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = run(&["point", "--vars", "x,y", "--poly", "y^2 - x^3"]);
    assert_eq!(ok.status.code(), Some(0));
    let again = run(&["point", "--vars", "x,y", "--poly", "y^2 - x^3"]);
    assert_eq!(ok.stdout, again.stdout);
    assert_eq!(
        run(&["point", "--vars", "x,y", "--poly", "y^^2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["point", "--vars", "x,y", "--poly", "y", "--point", "0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "subvariety",
            "--vars",
            "x,y,z",
            "--poly",
            "x^2 - y^2*z",
            "--sub-vars",
            "x,y",
            "--point",
            "1,0,0"
        ])
        .status
        .code(),
        Some(2)
    );
    // undetermined is a completed analysis
    let undetermined = run(&["point", "--vars", "x,y,z", "--poly", "x*y*z + x^4"]);
    assert_eq!(undetermined.status.code(), Some(0));
    assert!(
        String::from_utf8_lossy(&undetermined.stdout).contains("\"ordinary\": \"undetermined\"")
    );
}

#[test]
fn corpus_files_through_the_binary() {
    let bin = env!("CARGO_BIN_EXE_conelab");
    let dir = std::env::temp_dir().join(format!("conelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.corpus");
    std::fs::write(&empty, "").unwrap();
    let out = Command::new(bin)
        .arg("corpus")
        .arg(&empty)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["total"], 0);

    let mixed = dir.join("mixed.corpus");
    std::fs::write(
        &mixed,
        "name=good command=point vars=x,y poly=\"y^2 - x^2\"\nname=bad command=point vars=x,y poly=\"y^2 +\"\n",
    )
    .unwrap();
    let out = Command::new(bin)
        .arg("corpus")
        .arg(&mixed)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["records"][0]["report"]["ordinary"], "yes");
    assert_eq!(v["records"][1]["exit_code"], 1);
    assert_eq!(v["summary"]["failed"], serde_json::json!(["bad"]));

    let missing = Command::new(bin)
        .arg("corpus")
        .arg(dir.join("nope"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
