use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_soltrans"));
    c.env_remove("SOLTRANS_OUTDIR");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_vertical_without_translator() {
    let (code, out, _) = run(&["classify", "--X", "0,0,1", "--V", "1,1,0", "--theta0", "0"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["family"], "NonExistent");
    assert_eq!(doc["verdict"]["exists"], false);
}

#[test]
fn classify_reductions() {
    for (x, v, family, reduction) in [
        ("1,0,0", "0,3,0", "GrimReaperSlab", "F1"),
        ("0,2,0", "3,0,0", "GrimReaperSlab", "MirroredF2"),
        ("1,1,0", "0,1,0", "SlantedGraph", "Slanted"),
        ("1,1,0", "0,1,1", "NonExistent", "Slanted"),
        ("1,0,1", "0,0,1", "VerticalPlaneY", "Vertical"),
    ] {
        let (code, out, err) = run(&[
            "classify",
            "--X",
            x,
            "--V",
            v,
            "--theta0",
            "1.5707963267948966",
        ]);
        assert_eq!(code, 0, "{x} {v}: {err}");
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["family"], family, "{x} {v}");
        assert_eq!(doc["params"]["reduction"], reduction);
    }
}

#[test]
fn figure_one_limits() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, err) = run(&["figure", "1", "--outdir", d, "--u-samples", "2"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("GrimReaperSlab"));
    let doc = json_file(&dir.path().join("fig1_classification.json"));
    assert_eq!(doc["family"], "GrimReaperSlab");
    let z = |i: usize| doc["ends"][i]["z0"].as_f64().unwrap();
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert!((z(1) - (3.0 / (3.0 - half_pi)).ln()).abs() < 1e-5);
    assert!((z(0) - (3.0 / (3.0 + half_pi)).ln()).abs() < 1e-5);
    // Fitted tails agree with the closed form too.
    for i in 0..2 {
        let fit = doc["fits"][i]["model"]["z0"].as_f64().unwrap();
        assert!((fit - z(i)).abs() < 1e-5);
    }
}

#[test]
fn figure_four_counts_and_ends() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["figure", "4", "--u-samples", "2"])
        .env("SOLTRANS_OUTDIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json_file(&dir.path().join("fig4_classification.json"));
    assert_eq!(doc["critical_points"]["count_y"], 2);
    assert_eq!(doc["critical_points"]["count_z"], 1);
    for i in 0..2 {
        assert_eq!(doc["ends"][i]["kind"], "VerticalPlane");
        assert_eq!(doc["ends"][i]["y_value"], 0.0);
    }
}

#[test]
fn integrate_and_mesh_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("c.csv");
    let obj = dir.path().join("sub/s.obj");
    let (code, _, err) = run(&[
        "integrate",
        "--X",
        "1,0,0",
        "--V",
        "0,1,-0.5",
        "--theta0",
        "0.3",
        "--smax",
        "5",
        "--out",
        curve.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&curve).unwrap();
    assert!(text
        .lines()
        .any(|l| l == "s,y,z,theta,first_integral_residual"));

    let (code, _, err) = run(&[
        "mesh",
        "--X",
        "0,0,1",
        "--V",
        "0,1,0",
        "--theta0",
        "0",
        "--smax",
        "2",
        "--u-samples",
        "3",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(obj.exists() && dir.path().join("sub/s.normals.csv").exists());
}

#[test]
fn empty_u_range_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("m.obj");
    for range in [
        ["--u-min", "1", "--u-max", "1"],
        ["--u-min", "2", "--u-max", "-2"],
    ] {
        let mut args = vec![
            "mesh",
            "--X",
            "1,0,0",
            "--V",
            "0,1,0",
            "--theta0",
            "1",
            "--out",
            obj.to_str().unwrap(),
        ];
        args.extend(range);
        let (code, _, err) = run(&args);
        assert_eq!(code, 1);
        assert!(err.contains("u range"), "{err}");
        assert!(!obj.exists());
    }
}

#[test]
fn usage_errors_exit_one_and_name_the_token() {
    for (args, token) in [
        (
            vec![
                "classify", "--X", "1,0,0", "--V", "0,1,0", "--theta0", "abc",
            ],
            "abc",
        ),
        (
            vec!["classify", "--X", "1,x,0", "--V", "0,1,0", "--theta0", "0"],
            "'x'",
        ),
        (
            vec![
                "classify",
                "--X",
                "1,0,0",
                "--V",
                "0,1,0",
                "--theta0",
                "0",
                "--frobnicate",
            ],
            "--frobnicate",
        ),
        (vec!["figure", "9"], "9"),
        (
            vec![
                "sweep",
                "--grid",
                "lambda=1,mu=q,theta0=0",
                "--out",
                "/nonexistent/r.csv",
            ],
            "'q'",
        ),
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.contains(token), "{args:?}: {err}");
    }
    let (code, _, err) = run(&[
        "integrate",
        "--X",
        "0,0,1",
        "--V",
        "1,1,0",
        "--theta0",
        "0",
        "--out",
        "x.csv",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("no translator"), "{err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("figure"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("soltrans "));
}

#[test]
fn verify_preset_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("v.csv");
    let (code, out, err) = run(&["verify", "--preset", "3", "--out", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("502 checks, 0 failed"));
    let text = std::fs::read_to_string(report).unwrap();
    assert!(text.starts_with("# preset 3"));
}

#[test]
fn verify_fails_with_exit_two() {
    // Seed 11 contains draws whose drift exceeds 1e-8 (see the acceptance run).
    let (code, out, _) = run(&["verify", "--random", "40", "--seed", "11"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("first_integral_drift"));
}

#[test]
fn sweep_report_records_seed_and_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&[
        "sweep",
        "--grid",
        "lambda=-1:1:2,mu=0:1:2,theta0=1",
        "--out",
        p,
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# grid lambda=-1:1:2,mu=0:1:2,theta0=1 smax=30");
    assert!(lines[1].starts_with("lambda,mu,theta0,family"));
    assert_eq!(lines.len(), 2 + 4);

    let (code, _, _) = run(&["sweep", "--random", "3", "--seed", "5", "--out", p]);
    assert_eq!(code, 0);
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(first.starts_with("# random draws=3 generator=ChaCha8 seed=5"));
    run(&["sweep", "--random", "3", "--seed", "5", "--out", p]);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
}
