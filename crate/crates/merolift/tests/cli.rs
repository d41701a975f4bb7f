use std::process::{Command, Output};

use merolift::cli::{PairBoth, PointValue, RealPointValue, VerifyReport};
use merolift::pairing::PairingResult;
use merolift::ClassData;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merolift")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const G4: [&str; 8] = ["--m", "2", "--N", "1", "--beta", "0", "--D", "-4"];

#[test]
fn enumerate_examples() {
    let o = run(&["enumerate", "--N", "1", "--beta", "0", "--D", "-4"]);
    assert_eq!(o.status.code(), Some(0));
    let c: ClassData = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c.classes.len(), 1);
    assert_eq!(c.classes[0].stab, 2);

    let o = run(&["enumerate", "--N", "1", "--beta", "1", "--D", "-23"]);
    let c: ClassData = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c.classes.len(), 3);

    let o = run(&["enumerate", "--N", "1", "--beta", "1", "--D", "-23", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = run(&["enumerate", "--N", "1", "--beta", "1", "--D", "-4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn eval_point_values() {
    let mut a = vec!["eval", "--what", "green", "--z", "0.1+1.3i"];
    a.extend(G4);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0));
    let g: RealPointValue = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(g.value.is_finite());

    let mut a = vec!["eval", "--what", "comp", "--p", "0", "--z", "0.1+1.3i"];
    a.extend(G4);
    let comp: PointValue = serde_json::from_str(&stdout(&run(&a))).unwrap();
    let mut a = vec!["eval", "--what", "phi", "--z", "0.1+1.3i"];
    a.extend(G4);
    let phi: PointValue = serde_json::from_str(&stdout(&run(&a))).unwrap();
    assert!((comp.value - phi.value).norm() <= 1e-12 * phi.value.norm());
}

#[test]
fn eval_exit_codes() {
    // i is a pole of f for D = -4
    let mut a = vec!["eval", "--what", "f", "--z", "0+1i"];
    a.extend(G4);
    assert_eq!(run(&a).status.code(), Some(3));
    let mut a = vec!["eval", "--what", "f", "--z", "0.1-1i"];
    a.extend(G4);
    assert_eq!(run(&a).status.code(), Some(2));
    let o = run(&["eval", "--what", "f", "--z", "0.1+1i", "--m", "2", "--N", "1", "--beta", "1", "--D", "-4"]);
    assert_eq!(o.status.code(), Some(2));
    let mut a = vec!["eval", "--what", "f", "--grid", "0:1:0,1:2:3"];
    a.extend(G4);
    assert_eq!(run(&a).status.code(), Some(2));
}

#[test]
fn grid_csv_has_one_row_per_point() {
    let dir = std::env::temp_dir().join(format!("merolift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let mut a = vec!["eval", "--what", "deltaPhi", "--grid", "-0.5:0.5:4,0.9:1.5:3", "--format", "csv", "--out"];
    a.push(path.to_str().unwrap());
    a.extend(G4);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,v,re,im,tailBound,singular"));
    assert_eq!(lines.count(), 12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn pair_residue_is_bit_stable() {
    let mut a = vec!["pair", "--lift-beta", "1", "--lift-D", "-3", "--method", "residue"];
    a.extend(G4);
    let (x, y) = (run(&a), run(&a));
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, y.stdout);
    let r: PairingResult = serde_json::from_str(&stdout(&x)).unwrap();
    assert!((r.value.re - 1.9566685e-3).abs() < 1e-9);
}

#[test]
fn pair_both_reports_the_gap() {
    let mut a = vec!["pair", "--lift-beta", "1", "--lift-D", "-3", "--method", "both"];
    a.extend(G4);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0));
    let b: PairBoth = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(b.relative_gap < 1e-3);
    // an absurd gap tolerance turns the same run into a disagreement
    a.extend(["--gap-tol", "1e-12"]);
    assert_eq!(run(&a).status.code(), Some(4));
}

#[test]
fn pair_rejects_mismatched_m_parity_config() {
    let o = run(&["pair", "--m", "0", "--N", "1", "--beta", "0", "--D", "-4", "--lift-beta", "1", "--lift-D", "-3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_geometry_suite() {
    let o = run(&["verify", "--suite", "geometry"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.passed && !r.checks.is_empty());
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_merolift"))
        .args(["enumerate", "--N", "1", "--beta", "1", "--D", "-3"])
        .env("MEROLIFT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_merolift"))
        .args(["enumerate", "--N", "1", "--beta", "1", "--D", "-3"])
        .env("MEROLIFT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
