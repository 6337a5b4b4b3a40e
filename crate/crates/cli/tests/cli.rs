use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use billiard_beta::billiards::{beta_disk, ModelTag};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_billiard-beta"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// Data rows of a CSV with a header line, split on commas outside quotes.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|line| {
            let mut out = vec![String::new()];
            let mut quoted = false;
            for c in line.chars() {
                match c {
                    '"' => quoted = !quoted,
                    ',' if !quoted => out.push(String::new()),
                    _ => out.last_mut().unwrap().push(c),
                }
            }
            out
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

#[test]
fn beta_on_the_disk() {
    let o = run(&["beta", "--domain", "disk:1", "--model", "birkhoff", "--rot", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 1);
    assert!((num(&r[0][3]) + 3f64.sqrt()).abs() < 1e-8);

    let o = run(&["beta", "--domain", "disk:1", "--model", "outer", "--rot", "1/4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["beta"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert_eq!(v["rho"], "1/4");
}

#[test]
fn gutkin_beta_is_below_the_disk_bound() {
    let o = run(&["beta", "--domain", "gutkin:4,0.05", "--model", "birkhoff", "--rot", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let b = num(&rows(&stdout(&o))[0][3]);
    // perimeter of h = 1 + ε cos 4φ is 2π
    assert!(b < -2.0 * (PI / 3.0).sin() - 1e-6, "{b}");
}

#[test]
fn all_models_skip_unsupported_rotations() {
    let o = run(&["beta", "--rot", "1/3,1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 5);
    assert!(r.iter().filter(|row| row[2] == "1/2").all(|row| row[1] == "birkhoff"));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--theorem", "T4.3", "--domain", "ellipse:2,1", "--rot", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!((r[0][6].as_str(), r[0][7].as_str()), ("true", "true"));

    let o = run(&["verify", "--theorem", "CE6.5", "--domain", "squeezed:0.1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["gap"].as_f64().unwrap() > 1e-4);
    assert!(v["note"].as_str().unwrap().contains("counterexample direction"));

    let o = run(&["verify", "--theorem", "C6.3", "--domain", "disk:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&stdout(&o))[0][7], "true");
}

#[test]
fn verify_equality_statements() {
    let o = run(&["verify", "--theorem", "gutkin", "--domain", "gutkin:4,0.02"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&stdout(&o))[0][7], "true");

    assert_eq!(run(&["verify", "--theorem", "constwidth"]).status.code(), Some(0));
    // an ellipse is not of constant width
    let o = run(&["verify", "--theorem", "constwidth", "--domain", "ellipse:1.2,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_radon() {
    assert_eq!(run(&["verify", "--theorem", "radon", "--domain", "ellipse:2,1"]).status.code(), Some(0));
    let o = run(&["verify", "--theorem", "radon", "--domain", "gutkin:3,0.05"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["radon"]["is_centrally_symmetric"], false);
}

#[test]
fn verify_main_inequalities_over_several_rotations() {
    let o = run(&["verify", "--theorem", "T4.2", "--domain", "gutkin:5,0.03", "--rot", "1/3,1/4,2/5,1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 4);
    assert_eq!(r.iter().map(|x| x[2].as_str()).collect::<Vec<_>>(), ["1/3", "1/4", "2/5", "1/2"]);
    assert!(r.iter().all(|x| x[6] == "true"));
    // odd n gives constant width, so only 1/2 is sharp
    assert_eq!(r.iter().map(|x| x[7].as_str()).collect::<Vec<_>>(), ["false", "false", "false", "true"]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["beta", "--domain", "blob:1", "--rot", "1/3"][..],
        &["beta", "--domain", "disk:1", "--rot", "1/x"],
        &["beta", "--domain", "disk:1", "--rot", "3/4"],
        &["beta", "--domain", "disk:1", "--model", "outer", "--rot", "1/2"],
        &["beta", "--domain", "disk:1", "--model", "pinball", "--rot", "1/3"],
        &["beta", "--domain", "gutkin:4,0.5", "--rot", "1/3"],
        &["verify", "--theorem", "T9.9"],
        &["verify", "--theorem", "gutkin", "--domain", "disk:1"],
        &["verify", "--theorem", "C6.3", "--rot", "1/3"],
        &["toy", "--term", "1,0.1"],
        &["sweep", "--qmax", "2"],
        &["beta", "--rot", "1/3", "--bogus"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn thread_variable_is_validated() {
    let o = bin().args(["beta", "--rot", "1/3"]).env("BILLIARD_BETA_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dom.json");
    std::fs::write(&path, r#"{"a0": 1.0, "modes": [[0.0, 0.0], [0.0, 0.0], [0.02, 0.0]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let from_file = run(&["beta", "--domain-file", p, "--model", "symplectic", "--rot", "1/4"]);
    let named = run(&["beta", "--domain", "gutkin:3,0.02", "--model", "symplectic", "--rot", "1/4"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(rows(&stdout(&from_file))[0][3], rows(&stdout(&named))[0][3]);

    std::fs::write(&path, r#"{"a0": 1.0, "modes": [[0.0, 0.0], [0.5, 0.0]]}"#).unwrap();
    assert_eq!(run(&["beta", "--domain-file", p, "--rot", "1/3"]).status.code(), Some(2));
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(run(&["beta", "--domain-file", p, "--rot", "1/3"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["beta", "--domain-file", missing.to_str().unwrap(), "--rot", "1/3"]).status.code(), Some(2));
}

#[test]
fn disk_sweep_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    let orbit = dir.path().join("orbit.csv");
    let o = run(&[
        "sweep",
        "--domain",
        "disk:1",
        "--qmax",
        "10",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--orbit",
        orbit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&std::fs::read_to_string(&csv).unwrap());
    // 0 < p/q < 1/2 with q ≤ 10
    let grid = 15;
    assert_eq!(r.len(), 4 * grid);
    for tag in ModelTag::ALL {
        let curve: Vec<(f64, f64)> = r
            .iter()
            .filter(|x| x[1] == tag.as_str())
            .map(|x| (num(&x[4]), num(&x[5])))
            .collect();
        assert_eq!(curve.len(), grid);
        for &(rho, b) in &curve {
            assert!((b - beta_disk(tag, rho).unwrap()).abs() < 1e-8, "{tag} at {rho}");
        }
        for w in curve.windows(3) {
            let [(x1, y1), (x2, y2), (x3, y3)] = [w[0], w[1], w[2]];
            assert!(y2 <= y1 + (y3 - y1) * (x2 - x1) / (x3 - x1) + 1e-8, "{tag} not convex at {x2}");
        }
    }

    let s = std::fs::read_to_string(&svg).unwrap();
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("<polyline").count(), 4);
    assert_eq!(s.matches("<polygon").count(), 2);

    let pts = rows(&std::fs::read_to_string(&orbit).unwrap());
    assert_eq!(pts.len(), 3);
    for p in &pts {
        let (phi, x, y) = (num(&p[1]), num(&p[2]), num(&p[3]));
        assert!((x - phi.cos()).abs() < 1e-9 && (y - phi.sin()).abs() < 1e-9);
    }
}

fn sweep_bytes(dir: &Path, name: &str, threads: &str) -> Vec<u8> {
    let out = dir.join(name);
    let o = bin()
        .args(["sweep", "--domain", "gutkin:5,0.03", "--qmax", "7", "--seed", "3", "--out", out.to_str().unwrap()])
        .env("BILLIARD_BETA_THREADS", threads)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    std::fs::read(out).unwrap()
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep_bytes(dir.path(), "a.csv", "1");
    let b = sweep_bytes(dir.path(), "b.csv", "4");
    let c = sweep_bytes(dir.path(), "c.csv", "4");
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn toy_without_potential_is_integrable() {
    let o = run(&["toy", "--qmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 33);
    for x in &r {
        let rho = num(&x[2]);
        assert!((num(&x[3]) - rho * rho / 2.0).abs() < 1e-10);
    }
}

fn max_toy_gap(kappa: &str) -> f64 {
    let o = run(&["toy", "--kappa", kappa, "--qmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let gaps: Vec<f64> = rows(&stdout(&o)).iter().map(|x| num(&x[5])).collect();
    assert!(gaps.iter().all(|&g| g >= -1e-10));
    gaps.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn toy_gap_vanishes_with_kappa() {
    let g: Vec<f64> = ["0.05", "0.01", "0.002"].iter().map(|k| max_toy_gap(k)).collect();
    assert!(g[0] > 1e-6);
    assert!(g[0] > g[1] && g[1] > g[2] && g[2] > 0.0, "{g:?}");
}

#[test]
fn toy_terms() {
    let o = run(&["toy", "--term", "1,0.01,0", "--term", "2,0,0.004", "--qmax", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 13);
    assert!(lines.iter().any(|v| v["gap"].as_f64().unwrap() > 1e-6));
}
