use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conetensor::report::{verify_report, Report};

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conetensor-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conetensor"))
        .args(args)
        .output()
        .unwrap()
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (report, code)
}

fn value<'a>(r: &'a Report, id: &str, key: &str) -> &'a str {
    &r.claims.iter().find(|c| c.id == id).unwrap().values[key]
}

#[test]
fn analyze_reports_predicates() {
    let (r, code) = json_report(&["analyze", "--cone", &data("square")]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "extremal-rays", "count"), "4");
    assert_eq!(value(&r, "simplex", "simplex"), "false");
    let (r, _) = json_report(&["analyze", "--cone", &data("random-simplex-3")]);
    assert_eq!(value(&r, "simplex", "simplex"), "true");
    let (r, code) = json_report(&["analyze", "--cone", &data("half-space-3")]);
    assert_eq!(code, 0);
    let proper = r.claims.iter().find(|c| c.id == "proper").unwrap();
    assert!(proper.statement.contains("not proper"));
}

#[test]
fn tensor_products_of_squares() {
    let dir = scratch("tensor");
    let min = dir.join("min.json");
    let (r, code) = json_report(&[
        "tensor",
        "min",
        "--cone",
        &data("square"),
        "--cone",
        &data("square"),
        "--result",
        min.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "extremal-rays", "count"), "16");
    assert!(fs::read_to_string(&min).unwrap().contains("generators"));

    let max = dir.join("max.json");
    let (r, _) = json_report(&[
        "tensor",
        "max",
        "--cone",
        &data("square"),
        "--cone",
        &data("square"),
        "--result",
        max.to_str().unwrap(),
    ]);
    assert_eq!(value(&r, "description", "inequalities"), "16");
    let file: serde_json::Value = serde_json::from_str(&fs::read_to_string(&max).unwrap()).unwrap();
    assert_eq!(file["inequalities"].as_array().unwrap().len(), 16);

    let (r, _) = json_report(&[
        "tensor",
        "min",
        "--cone",
        &data("orthant-2"),
        "--cone",
        &data("orthant-3"),
    ]);
    assert_eq!(value(&r, "extremal-rays", "count"), "6");
}

#[test]
fn theorem_checks() {
    let (r, code) = json_report(&["check", "thm-min-equals-max", "--cone", &data("square")]);
    assert_eq!(code, 0);
    for id in [
        "simplex",
        "identity-separable",
        "nonnegative-trace",
        "min-eq-max",
    ] {
        assert_eq!(value(&r, id, "holds"), "false");
    }
    let (r, code) = json_report(&["check", "aubrun-example"]);
    assert_eq!(code, 0);
    assert!(verify_report(&r).ok());
    let (r, code) = json_report(&[
        "check",
        "thm-3x3",
        "--cone",
        &data("polygon-pair-0-E"),
        "--cone",
        &data("polygon-pair-0-F"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "C-rays", "count"), "4");
    let (r, code) = json_report(&[
        "check",
        "duality",
        "--cone",
        &data("square"),
        "--cone",
        &data("orthant-2"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.claims.len(), 3);
}

#[test]
fn separability_verdicts() {
    let dir = scratch("sep");
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let id3 = write(
        "id3.json",
        r#"{"matrix": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
    );
    let (r, code) = json_report(&[
        "separable",
        "--map",
        &id3,
        "--cone",
        &data("orthant-3"),
        "--cone",
        &data("orthant-3"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "factorization", "n"), "3");
    let (r, _) = json_report(&[
        "separable",
        "--map",
        &id3,
        "--cone",
        &data("square"),
        "--cone",
        &data("square"),
    ]);
    assert_eq!(r.claims[1].statement, "the map is not separable");
    // x -> (z) (1, 0, 1): rank one, square to square
    let rank_one = write(
        "r1.json",
        r#"{"matrix": [["0","0","1"],["0","0","0"],["0","0","1"]]}"#,
    );
    let (r, _) = json_report(&[
        "separable",
        "--map",
        &rank_one,
        "--cone",
        &data("square"),
        "--cone",
        &data("square"),
    ]);
    assert_eq!(value(&r, "factorization", "n"), "1");
}

#[test]
fn retracts_and_files() {
    let dir = scratch("retract");
    let out = dir.join("r.json");
    let (r, code) = json_report(&[
        "retract",
        "vertex-figure",
        "--cone",
        &data("cube-4"),
        "--index",
        "0",
        "--result",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(verify_report(&r).ok());
    let file: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["sub"]["dim"], 3);
    let (_, code) = json_report(&[
        "retract",
        "facet",
        "--cone",
        &data("square"),
        "--index",
        "2",
    ]);
    assert_eq!(code, 0);
    let (r, _) = json_report(&["retract", "scan3", "--cone", &data("orthant-4")]);
    assert!(r.claims[0].statement.contains("simplex cone"));
}

#[test]
fn verify_catches_tampering() {
    let dir = scratch("verify");
    let report = dir.join("report.json");
    let out = run(&[
        "analyze",
        "--cone",
        &data("square"),
        "--format",
        "json",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        run(&["verify", report.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let text = fs::read_to_string(&report)
        .unwrap()
        .replacen("\"1\"", "\"2\"", 1);
    fs::write(&report, text).unwrap();
    assert_eq!(
        run(&["verify", report.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "--cone", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "min-eq-max", "--cone", &data("square")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["retract", "facet", "--cone", &data("square")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bundled_data_matches_generator() {
    let dir = scratch("corpus");
    let out = run(&["corpus", "--dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut names: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), fs::read_dir(&bundled).unwrap().count());
    for n in names {
        assert_eq!(
            fs::read(dir.join(&n)).unwrap(),
            fs::read(bundled.join(&n)).unwrap(),
            "{n:?}"
        );
    }
}
