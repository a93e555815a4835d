use std::io::BufReader;

use matkls::lab::{scan, Check, Family, ScanOptions, ScanReport};

#[test]
fn random_family_scans_are_deterministic() {
    let f = Family::BasesRandom { count: 40, ground_size: 7, rank: 3, seed: 2024 };
    let a = scan(&f, &Check::ALL, &ScanOptions { workers: Some(3), ..Default::default() }).unwrap();
    let b = scan(&f, &Check::ALL, &ScanOptions { workers: Some(1), ..Default::default() }).unwrap();
    assert_eq!(a, b);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    a.write_jsonl(&mut x).unwrap();
    b.write_jsonl(&mut y).unwrap();
    assert_eq!(x, y);
    assert!(a.is_self_consistent());
    assert_eq!(a.summary.errors, 0);
    assert!(!a.summary.falsified());
}

#[test]
fn reports_survive_a_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let f = Family::GraphicConnectedSimple { min_vertices: 2, max_vertices: 5 };
    let r = scan(&f, &Check::ALL, &ScanOptions::default()).unwrap();
    r.write_jsonl(std::fs::File::create(&path).unwrap()).unwrap();
    let back = ScanReport::read_jsonl(BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(back, r);
    assert!(back.is_self_consistent());
}

#[test]
fn tampered_records_are_detected() {
    let r = scan(&Family::Uniform { max_m: 3, max_d: 5 }, &Check::ALL, &ScanOptions::default()).unwrap();
    let mut bad = r.clone();
    let v = bad.records[4].verdicts.as_mut().unwrap();
    v.real_roots = v.real_roots.map(|n| n + 1);
    assert!(r.is_self_consistent());
    assert!(!bad.is_self_consistent());
}

#[test]
fn real_root_counts_in_records() {
    let r = scan(&Family::Uniform { max_m: 5, max_d: 5 }, &[Check::RealRoots], &ScanOptions::default()).unwrap();
    let flagged: Vec<&str> = r.records.iter().filter(|x| x.non_real_rooted()).map(|x| x.label.as_str()).collect();
    assert_eq!(flagged, vec!["U(1,5)", "U(2,5)"]);
    // linear polynomials are reported with their single root
    let u13 = r.records.iter().find(|x| x.label == "U(1,3)").unwrap();
    assert_eq!(u13.verdicts.as_ref().unwrap().real_roots, Some(1));
    assert!(r.records.iter().all(|x| x.verdicts.as_ref().unwrap().nonnegative.is_none()));
}
