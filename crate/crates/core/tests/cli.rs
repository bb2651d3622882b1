use std::path::{Path, PathBuf};
use std::process::Command;

use numrad::ComplexMatrix;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn numrad(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_numrad")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write_matrix(dir: &Path, name: &str, m: &ComplexMatrix) -> String {
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, m.to_json_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

struct Fixture {
    dir: TempDir,
    n: String,
    d: String,
    d12: String,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let n = write_matrix(dir.path(), "n.json", &ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap());
    let d = write_matrix(dir.path(), "d.json", &ComplexMatrix::diag_real(&[0.0, 1.0]));
    let d12 = write_matrix(dir.path(), "d12.json", &ComplexMatrix::diag_real(&[1.0, 2.0]));
    Fixture { dir, n, d, d12 }
}

#[test]
fn scalar_commands() {
    let f = fixture();
    let r = numrad(&["radius", &f.n]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().next().unwrap(), "0.5");
    assert!(r.stdout.contains("certificate=["));
    let r = numrad(&["crawford", &f.d12]);
    assert_eq!((r.code, r.stdout.lines().next().unwrap()), (0, "1"));
    let r = numrad(&["dist", &f.d]);
    assert_eq!((r.code, r.stdout.lines().next().unwrap()), (0, "0.5 at lambda=0.5+0i"));
}

#[test]
fn parse_and_io_errors() {
    let f = fixture();
    let bad = f.dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\":2,").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(numrad(&["radius", bad]).code, 2);
    assert_eq!(numrad(&["bounds", bad, &f.n]).code, 2);
    let missing = f.dir.path().join("missing.json");
    let r = numrad(&["radius", missing.to_str().unwrap()]);
    assert_eq!(r.code, 4);
    assert!(!r.stderr.is_empty());
    assert_eq!(numrad(&["radius", &f.n, "--tol", "0"]).code, 2);
    assert_eq!(numrad(&["radius", &f.n, "--frobnicate"]).code, 2);
    assert_eq!(numrad(&[]).code, 2);
    let out = f.dir.path().join("no/such/dir/out.csv");
    assert_eq!(numrad(&["range", &f.n, "--out", out.to_str().unwrap()]).code, 4);
}

#[test]
fn bounds_command() {
    let f = fixture();
    let r = numrad(&["bounds", &f.n, &f.n]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let classic = &v["CLASSIC_NORM"];
    assert_eq!(classic["holds"], true);
    let lower = classic["lower_terms"][0]["value"].as_f64().unwrap();
    assert!((classic["center"].as_f64().unwrap() - lower).abs() < 1e-8);

    let r = numrad(&["bounds", &f.d, &f.d, "--format", "csv"]);
    assert_eq!(r.code, 0);
    let row = r.stdout.lines().find(|l| l.starts_with("RADIUS_PRODUCT,")).unwrap();
    assert!(row.contains("lower.radius_product=1;") && row.contains("upper.min_radius_norm=1;"), "{row}");
    let (rest, slack) = row.rsplit_once(',').unwrap();
    assert!(rest.ends_with(",true") && slack.parse::<f64>().unwrap().abs() < 1e-12, "{row}");

    let out = f.dir.path().join("bounds.json");
    let r = numrad(&["bounds", &f.n, &f.d, "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("CRAWFORD_GAP"));
}

#[test]
fn range_command() {
    let f = fixture();
    let r = numrad(&["range", &f.n, "--points", "360"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "theta,re,im,support_value");
    assert_eq!(lines.len(), 361);
    for l in &lines[1..] {
        let cols: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((cols[1].hypot(cols[2]) - 0.5).abs() < 1e-9);
    }
    let r = numrad(&["range", &f.d, "--points", "8"]);
    for l in r.stdout.lines().skip(1) {
        let cols: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(cols[2].abs() < 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&cols[1]));
    }
    assert_eq!(numrad(&["range", &f.n, "--points", "2"]).code, 2);
    assert_eq!(numrad(&["range", &f.n]).stdout, numrad(&["range", &f.n]).stdout);
}

#[test]
fn equality_command() {
    let f = fixture();
    let r = numrad(&["equality", &f.n, &f.n, "half"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("\"consistent\": true"));
    assert_eq!(numrad(&["equality", &f.d, &f.d, "half"]).code, 1);
    assert_eq!(numrad(&["equality", &f.n, &f.n, "quarter"]).code, 0);
    assert_eq!(numrad(&["equality", &f.n, &f.n, "half", "--grid", "3"]).code, 2);
    assert_eq!(numrad(&["equality", &f.n, &f.n, "third"]).code, 2);
}

#[test]
fn verify_command() {
    let f = fixture();
    let out = f.dir.path().join("report.json");
    let r = numrad(&["verify", "--trials", "100", "--dims", "2,3", "--ensembles", "GINIBRE:GINIBRE", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v["diffable"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1100);
    assert!(rows.iter().all(|r| r["holds"] == true));
    assert_eq!(v["diffable"]["trials"].as_array().unwrap().len(), 100);

    let r = numrad(&["verify", "--trials", "30", "--ensembles", "SQUARE_ZERO:NORMAL", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next().unwrap(), "# numrad-verify-csv v1");
    assert_eq!(lines.next().unwrap(), "trial,ensemble_a,ensemble_b,dim_a,dim_b,bound_id,center,min_slack,holds");
    let classic: Vec<f64> = r
        .stdout
        .lines()
        .filter(|l| l.contains(",CLASSIC_NORM,"))
        .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
        .collect();
    assert_eq!(classic.len(), 30);
    assert!(classic.iter().all(|s| *s <= 1e-6));

    assert_eq!(numrad(&["verify", "--trials", "0"]).code, 2);
    assert_eq!(numrad(&["verify", "--ensembles", "GINIBRE:WIGNER"]).code, 2);
    assert_eq!(numrad(&["verify", "--format", "xml"]).code, 2);
}

#[test]
fn verify_is_deterministic_across_workers() {
    let args = ["verify", "--trials", "24", "--dims", "2,3,4", "--seed", "7"];
    let serial = numrad(&args);
    let again = numrad(&args);
    let parallel = numrad(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(serial.code, 0);
    let diffable = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["diffable"].to_string();
    assert_eq!(diffable(&serial.stdout), diffable(&again.stdout));
    assert_eq!(diffable(&serial.stdout), diffable(&parallel.stdout));
}
