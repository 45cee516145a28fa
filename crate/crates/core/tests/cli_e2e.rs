mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};
use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use rand::Rng;
use serde_json::Value;
use subspace_angles::cli::{self, DistanceMatrixOutput, SubspaceFile};
use subspace_angles::*;
use tempfile::TempDir;

use common::*;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("subspace-angles").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CONTRACTION: &str = r#"{"field":"real","ambient_dim":5,"subspaces":[
    {"id":"A","vectors":[[2,-1,0,0,0],[2,0,1,0,0]]},
    {"id":"B","vectors":[[0,1,0,0,1],[0,0,1,-1,0]]},
    {"id":"C","vectors":[[0,1,0,0,1],[0,0,1,-1,0],[0,0,0,1,0]]},
    {"id":"D","vectors":[[2,-1,0,0,0],[2,0,1,0,0],[0,0,1,0,0]]}]}"#;

const NESTED: &str = r#"{"field":"real","ambient_dim":3,"subspaces":[
    {"id":"V","vectors":[[1,0,0]]},
    {"id":"W","vectors":[[1,0,0],[0,1,0]]}]}"#;

const REAL_PAIR: &str = r#"{"field":"real","ambient_dim":5,"subspaces":[
    {"id":"V","vectors":[[0.7071067811865476,0,0.7071067811865476,0,0],[0,0.7071067811865476,0,0.7071067811865476,0]]},
    {"id":"W","vectors":[[1,0,0,0,0],[0,1,0,0,0],[0,0,0,0,1]]}]}"#;

fn formula_bases() -> String {
    let xi = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let x2 = xi * xi;
    let z = |c: C64| format!("[{:?},{:?}]", c.re, c.im);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    format!(
        r#"{{"field":"complex","ambient_dim":3,"subspaces":[
            {{"id":"V","vectors":[[{},{},{}],[{},{},{}]]}},
            {{"id":"W","vectors":[[{},{},{}],[{},{},{}]]}}]}}"#,
        z(one),
        z(-xi),
        z(zero),
        z(zero),
        z(xi),
        z(-x2),
        z(one),
        z(zero),
        z(zero),
        z(zero),
        z(xi),
        z(zero),
    )
}

fn matrix_values(r: &Run) -> Vec<Vec<f64>> {
    assert_eq!(r.code, 0, "{}", r.err);
    let m: DistanceMatrixOutput = serde_json::from_str(&r.out).unwrap();
    m.values
}

#[test]
fn angles_on_contraction_example() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "contraction.json", CONTRACTION);
    let r = run(&[
        "angles",
        s(&path),
        "--from",
        "A",
        "--to",
        "B",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc: Value = serde_json::from_str(&r.out).unwrap();
    let deg = |k: &str| doc["report"][k].as_f64().unwrap().to_degrees();
    assert!((deg("theta_vw") - 80.40).abs() <= 0.01);
    assert!((deg("upsilon") - (17f64.sqrt() / 6.0).asin().to_degrees()).abs() <= 0.01);
    assert_eq!(deg("psi"), 0.0);

    let text = run(&["angles", s(&path), "--from", "A", "--to", "B"]);
    assert_eq!(text.code, 0);
    assert!(text.out.contains("80.405932°"), "{}", text.out);
    assert!(text.out.contains("rad"));
    assert!(text.out.contains("projection factor"));
}

#[test]
fn angles_on_formula_bases() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "xi.json", &formula_bases());
    for route in ["principal", "gram", "exterior"] {
        let r = run(&[
            "angles",
            s(&path),
            "--from",
            "V",
            "--to",
            "W",
            "--route",
            route,
            "--format",
            "json",
        ]);
        assert_eq!(r.code, 0, "{}", r.err);
        let doc: Value = serde_json::from_str(&r.out).unwrap();
        let deg = |k: &str| doc["report"][k].as_f64().unwrap().to_degrees();
        assert!((deg("theta_vw") - 54.74).abs() <= 0.01, "{route}");
        assert!(deg("upsilon").abs() <= 1e-7, "{route}");
        assert!((deg("psi") - 54.74).abs() <= 0.01, "{route}");
    }
}

#[test]
fn identical_ids_give_zero_angles() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c.json", CONTRACTION);
    let r = run(&[
        "angles",
        s(&path),
        "--from",
        "C",
        "--to",
        "C",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&r.out).unwrap();
    for k in ["theta_vw", "theta_wv", "upsilon", "psi"] {
        assert!(doc["report"][k].as_f64().unwrap().abs() <= 1e-12, "{k}");
    }
}

#[test]
fn angles_output_equals_library_exactly() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c.json", CONTRACTION);
    let t = tol();
    let file = SubspaceFile::read(&path).unwrap();
    for route in AngleRoute::ALL {
        let r = run(&[
            "angles",
            s(&path),
            "--from",
            "A",
            "--to",
            "C",
            "--route",
            route.flag(),
            "--format",
            "json",
        ]);
        let doc: Value = serde_json::from_str(&r.out).unwrap();
        let got: AngleReport = serde_json::from_value(doc["report"].clone()).unwrap();
        let want = angle_report(
            &file.subspace("A", &t).unwrap(),
            &file.subspace("C", &t).unwrap(),
            route,
            &t,
        )
        .unwrap();
        assert_eq!(got, want);
    }
}

#[test]
fn matrix_output_equals_library_exactly() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c.json", CONTRACTION);
    let t = tol();
    let file = SubspaceFile::read(&path).unwrap();
    let subspaces = file.all_subspaces(&t).unwrap();
    for name in MetricName::ALL {
        let values = matrix_values(&run(&["matrix", s(&path), "--metric", name.as_str()]));
        let desc = MetricDescriptor::new(name);
        for (i, row) in values.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = asymmetric_distance(&desc, &subspaces[i], &subspaces[j], &t)
                    .unwrap()
                    .value;
                assert_eq!(x.to_bits(), want.to_bits(), "{name} ({i}, {j})");
            }
        }
    }
}

#[test]
fn matrix_examples() {
    let dir = TempDir::new().unwrap();
    let nested = write(&dir, "nested.json", NESTED);
    assert_eq!(
        matrix_values(&run(&["matrix", s(&nested), "--metric", "fubini_study"])),
        vec![vec![0.0, 0.0], vec![FRAC_PI_2, 0.0]]
    );
    assert_eq!(
        matrix_values(&run(&[
            "matrix",
            s(&nested),
            "--metric",
            "fubini_study",
            "--symmetrize",
            "max"
        ])),
        vec![vec![0.0, FRAC_PI_2], vec![FRAC_PI_2, 0.0]]
    );
    let pair = write(&dir, "pair.json", REAL_PAIR);
    let v = matrix_values(&run(&["matrix", s(&pair), "--metric", "fubini_study"]));
    assert!((v[0][1] - FRAC_PI_3).abs() <= 1e-7);
    assert!((v[1][0] - FRAC_PI_2).abs() <= 1e-7);
    assert!(v[0][0].abs() <= 1e-9 && v[1][1].abs() <= 1e-9);
}

#[test]
fn matrix_diagonal_and_symmetry() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c.json", CONTRACTION);
    for metric in cli::MatrixMetric::all() {
        let r = run(&["matrix", s(&path), "--metric", metric.name()]);
        let m: DistanceMatrixOutput = serde_json::from_str(&r.out).unwrap();
        assert_eq!(m.direction_convention, "row→column");
        assert_eq!(m.ids, ["A", "B", "C", "D"]);
        for i in 0..4 {
            assert!(
                m.values[i][i] <= 1e-9,
                "{metric} diagonal {}",
                m.values[i][i]
            );
        }
        let r = run(&[
            "matrix",
            s(&path),
            "--metric",
            metric.name(),
            "--symmetrize",
            "mean",
        ]);
        let m: DistanceMatrixOutput = serde_json::from_str(&r.out).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (m.values[i][j], m.values[j][i]);
                assert!(a == b || (a - b).abs() <= 1e-9, "{metric} ({i}, {j})");
            }
        }
    }
}

#[test]
fn matrix_csv_and_output_file() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "nested.json", NESTED);
    let out = dir.path().join("m.csv");
    let r = run(&[
        "matrix",
        s(&path),
        "--metric",
        "geodesic",
        "--format",
        "csv",
        "--output",
        s(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# metric=geodesic units=radians direction=row→column"));
    assert_eq!(lines[1], "from\\to,V,W");
    let w_row: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(w_row[1].parse::<f64>().unwrap(), FRAC_PI_2 * 2f64.sqrt());
}

#[test]
fn martin_infinity_is_null() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "lines.json",
        r#"{"field":"real","ambient_dim":2,"subspaces":[
        {"id":"x","vectors":[[1,0]]},{"id":"y","vectors":[[0,1]]}]}"#,
    );
    let r = run(&["matrix", s(&path), "--metric", "martin"]);
    assert_eq!(r.code, 0);
    let doc: Value = serde_json::from_str(&r.out).unwrap();
    assert!(doc["values"][0][1].is_null());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "c.json", CONTRACTION);

    let r = run(&["angles", s(&good), "--from", "A", "--to", "Z"]);
    assert_eq!(r.code, 2);
    assert!(
        r.err.contains("\"Z\"") && r.err.contains("A, B, C, D"),
        "{}",
        r.err
    );

    let r = run(&["matrix", s(&good), "--metric", "hausdorff"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("fubini_study"));

    let bad = write(
        &dir,
        "bad.json",
        r#"{"field":"real","ambient_dim":2,"subspaces":[{"id":"a","vectors":[[1e999,0]]}]}"#,
    );
    assert_eq!(run(&["verify", s(&bad)]).code, 2);
    let short = write(
        &dir,
        "short.json",
        r#"{"field":"real","ambient_dim":3,"subspaces":[{"id":"a","vectors":[[1,0]]}]}"#,
    );
    assert_eq!(run(&["matrix", s(&short), "--metric", "asimov"]).code, 2);
    let dup = write(
        &dir,
        "dup.json",
        r#"{"field":"real","ambient_dim":1,"subspaces":[{"id":"a","vectors":[[1]]},{"id":"a","vectors":[[1]]}]}"#,
    );
    assert_eq!(run(&["matrix", s(&dup), "--metric", "asimov"]).code, 2);
    assert_eq!(
        run(&[
            "angles",
            "/nonexistent/file.json",
            "--from",
            "a",
            "--to",
            "b"
        ])
        .code,
        2
    );
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["verify", "--builtin", "--rank-tol", "-1"]).code, 2);

    // Directional distance from the zero subspace is undefined.
    let zero = write(
        &dir,
        "zero.json",
        r#"{"field":"real","ambient_dim":2,"subspaces":[{"id":"o","vectors":[]},{"id":"x","vectors":[[1,0]]}]}"#,
    );
    let r = run(&["matrix", s(&zero), "--metric", "directional"]);
    assert_ne!(r.code, 0);
}

#[test]
fn verify_builtin_passes_and_fails_when_tightened() {
    let r = run(&["verify", "--builtin"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("checks passed"));
    let r = run(&["verify", "--builtin", "--match-tol", "1e-15"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("first failing identity"), "{}", r.err);
}

#[test]
fn verify_on_a_file() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c.json", CONTRACTION);
    let r = run(&["verify", s(&path), "--seed", "7", "--random-pairs", "20"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    for suite in ["pythagorean", "route_agreement", "perp_duality", "triangle"] {
        assert!(r.out.contains(suite), "{suite} missing from\n{}", r.out);
    }
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_subspace-angles");
    let status = Command::new(exe)
        .args(["verify", "--builtin", "--match-tol", "1e-15"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let status = Command::new(exe).args(["matrix"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let out = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subspace_files_round_trip_bit_for_bit(n in 1usize..6, count in 1usize..4, complex: bool, seed: u64) {
        let f = if complex { FieldTag::Complex } else { FieldTag::Real };
        let mut r = rng(seed);
        let sets: Vec<(String, Matrix)> = (0..count)
            .map(|k| {
                let p = r.random_range(0..=n);
                (format!("s{k}"), subspace_angles::subspace::gaussian_matrix(n, p, f, &mut r))
            })
            .collect();
        let named: Vec<(&str, &Matrix)> = sets.iter().map(|(id, m)| (id.as_str(), m)).collect();
        let file = SubspaceFile::from_spanning_sets(f, n, &named);
        let again = SubspaceFile::parse(&file.to_json()).unwrap();
        for (entry, (_, m)) in again.subspaces.iter().zip(&sets) {
            let back = again.spanning_set(entry);
            prop_assert_eq!(back.shape(), m.shape());
            for (a, b) in back.data().iter().zip(m.data()) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
        }
        let t = tol();
        let before = file.all_subspaces(&t).unwrap();
        let after = again.all_subspaces(&t).unwrap();
        for (x, y) in before.iter().zip(&after) {
            prop_assert_eq!(x.basis(), y.basis());
        }
    }
}
