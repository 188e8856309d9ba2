use std::process::Command;

use bidouble::catalog::{read_catalog, write_catalog, CatalogRecord, InvariantsReport, Payload};
use bidouble::cli::reverify_catalog;
use bidouble::{is_catanese_tuple, validate_type, zariski_certificate, CoverType};
use proptest::prelude::*;

fn pair() -> Vec<CoverType> {
    vec![
        validate_type(16, 22, 52, 4).unwrap(),
        validate_type(28, 10, 28, 10).unwrap(),
    ]
}

#[test]
fn certificate_survives_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.jsonl");
    let cert = zariski_certificate(&pair(), &[5, 6]).unwrap();
    write_catalog(
        &path,
        &[CatalogRecord::new(Payload::Certificate(cert.clone()), true)],
    )
    .unwrap();

    let back = read_catalog(&path).unwrap();
    assert_eq!(back.len(), 1);
    let Payload::Certificate(read) = &back[0].payload else {
        panic!("wrong kind")
    };
    assert_eq!(*read, cert);
    assert!(is_catanese_tuple(&read.members).unwrap().is_catanese);
    read.verify().unwrap();
    assert_eq!(reverify_catalog(&path).unwrap(), 1);
}

#[test]
fn tampered_catalog_fails_reverification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.jsonl");
    let cert = zariski_certificate(&pair(), &[5]).unwrap();
    write_catalog(
        &path,
        &[CatalogRecord::new(Payload::Certificate(cert), false)],
    )
    .unwrap();
    let text = std::fs::read_to_string(&path)
        .unwrap()
        .replace("3585792", "3563328");
    std::fs::write(&path, text).unwrap();
    assert!(reverify_catalog(&path).is_err());
}

#[test]
fn missing_file_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = read_catalog(&dir.path().join("absent.jsonl")).unwrap_err();
    assert!(matches!(err, bidouble::catalog::CatalogError::Io { .. }));
}

fn admissible() -> impl Strategy<Value = CoverType> {
    let half = (3i64..200).prop_flat_map(|y| {
        let lo = if y % 2 == 1 { 2 * y + 1 } else { 2 * y + 2 };
        (0i64..200).prop_map(move |k| (lo + 2 * k, y))
    });
    (half.clone(), half).prop_map(|((a, n2), (m2, b))| validate_type(a, b, m2, n2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn invariants_records_round_trip(types in prop::collection::vec(admissible(), 1..6), stamp in any::<bool>()) {
        let records: Vec<CatalogRecord> = types
            .iter()
            .map(|t| CatalogRecord::new(Payload::Invariants(InvariantsReport::new(t)), stamp))
            .collect();
        let lines: Vec<String> = records.iter().map(|r| r.to_json_line().unwrap()).collect();
        for (i, (line, rec)) in lines.iter().zip(&records).enumerate() {
            let back = CatalogRecord::from_json_line(line, i + 1).unwrap();
            prop_assert_eq!(&back, rec);
            prop_assert_eq!(&back.to_json_line().unwrap(), line);
        }
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bidouble"))
}

#[test]
fn binary_exit_codes() {
    let ok = bin()
        .args(["invariants", "--type", "16,22,52,4"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["invariants"]["kk"], 10368);
    assert_eq!(v["invariants"]["r"], 18);

    let bad = bin()
        .args(["invariants", "--type", "16,22,52,5"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("ConstraintViolation"));

    let usage = bin().args(["invariants", "--typo", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("--type"));
}

#[test]
fn binary_search_catalog_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.jsonl");
    let run = |path: &std::path::Path| {
        bin()
            .args([
                "search",
                "--bound",
                "60",
                "--k",
                "2",
                "--no-timestamp",
                "--out",
            ])
            .arg(path)
            .output()
            .unwrap()
    };
    let first = run(&out);
    assert_eq!(first.status.code(), Some(0));
    let n = reverify_catalog(&out).unwrap();
    assert!(n >= 1);

    let other = dir.path().join("cat2.jsonl");
    let second = run(&other);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&other).unwrap());
}
