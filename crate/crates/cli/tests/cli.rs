use std::path::Path;
use std::process::{Command, Output};

fn hgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn even_table_matches_reference_cells() {
    let o = hgc(&["table", "--m", "2", "--n", "2", "--max-loops", "3", "--max-hairs", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "h,r=1,r=2,r=3\n1,1_0,,1_1\n2,,,\n3,1_4,,\n");
}

#[test]
fn negative_degrees_use_braces() {
    let o = hgc(&["table", "--m", "3", "--n", "3", "--max-loops", "3", "--max-hairs", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "h,r=1,r=2,r=3\n1,,1_{-2},1_{-2}\n");
}

#[test]
fn reruns_are_byte_identical() {
    for format in ["json", "csv", "pretty"] {
        let args = ["table", "--m", "1", "--n", "2", "--max-loops", "3", "--max-hairs", "3", "--seed", "5", "--format", format];
        let a = hgc(&args);
        let b = hgc(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn json_schema() {
    let o = hgc(&["table", "--m", "1", "--n", "2", "--max-loops", "2", "--max-hairs", "2", "--format", "json", "--primes", "1000003,1000033"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["m"], 1);
    assert_eq!(v["primes"], serde_json::json!([1000003, 1000033]));
    let cell = v["cells"].as_array().unwrap().iter().find(|c| c["r"] == 2 && c["h"] == 2).unwrap();
    assert_eq!(cell["homology"], serde_json::json!([{"degree": 2, "dim": 1}]));
}

fn cache_files(dir: &Path) -> usize {
    std::fs::read_dir(dir).unwrap().filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json")).count()
}

#[test]
fn warm_cache_gives_the_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["table", "--m", "2", "--n", "3", "--max-loops", "3", "--max-hairs", "3", "--format", "json", "--cache-dir", cache];
    let plain = hgc(&args[..11]);
    let cold = hgc(&args);
    assert_eq!(cache_files(dir.path()), 12);
    let warm = hgc(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(plain.stdout, cold.stdout);
    let exact = hgc(&[&args[..], &["--exact"]].concat());
    assert_eq!(cache_files(dir.path()), 24);
    let a: serde_json::Value = serde_json::from_slice(&warm.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&exact.stdout).unwrap();
    assert_eq!(a["cells"], b["cells"]);
}

#[test]
fn dump_complex_writes_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let o = hgc(&["table", "--max-loops", "1", "--max-hairs", "2", "--dump-complex", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("hgc_m2_n2_r1_h1.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["r"], 1);
}

#[test]
fn verify_suites_exit_zero() {
    for args in [
        vec!["verify", "loop01", "--m", "2", "--n", "2", "--max-hairs", "5"],
        vec!["verify", "loop01", "--m", "1", "--n", "2", "--max-hairs", "5"],
        vec!["verify", "1", "--m", "2", "--n", "2", "--max-hairs", "2"],
        vec!["verify", "2", "--m", "1", "--n", "2", "--max-hairs", "2"],
        vec!["verify", "tables", "--m", "3", "--n", "3", "--max-hairs", "4"],
        vec!["verify", "r2", "--format", "json"],
    ] {
        let o = hgc(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn verify_with_wrong_parity_is_a_usage_error() {
    let o = hgc(&["verify", "1", "--m", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));
}

#[test]
fn hedgehogs_in_odd_codimension() {
    let o = hgc(&["verify", "loop01", "--m", "1", "--n", "2", "--max-hairs", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let one_loop: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["claim"] == "H(HGC^1) = hedgehog closed form" && c["lhs"] != serde_json::json!({}))
        .map(|c| (c["parameters"]["h"].as_u64().unwrap(), c["lhs"].clone()))
        .collect();
    assert_eq!(one_loop, vec![(1, serde_json::json!({"0": 1})), (5, serde_json::json!({"4": 1}))]);
}

#[test]
fn gc_examples() {
    let o = hgc(&["gc", "--coeff", "Det*Sym2(H1)", "--r", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["total"].as_u64(), v["closed_form"].as_u64()), (Some(1), Some(1)));
    for coeff in ["K", "Sym3(H1)"] {
        let o = hgc(&["gc", "--coeff", coeff, "--r", "2", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["total"], 0, "{coeff}");
    }
}

#[test]
fn gc_parse_errors_report_positions() {
    let o = hgc(&["gc", "--coeff", "Det*Sym2(H2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 9"));
}

#[test]
fn bad_primes_are_rejected() {
    let o = hgc(&["table", "--primes", "15,17"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generator_bound_marks_skipped_cells() {
    let o = hgc(&["table", "--max-loops", "3", "--max-hairs", "2", "--max-generators", "20", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("skipped"));
}
