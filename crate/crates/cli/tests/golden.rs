//! Byte-exact outputs of `figure 1..7`. Classification and oracle reports
//! are stored whole, curve, mesh and sidecar by SHA-256 digest.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p soltrans --test golden`.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use soltrans::cli::{cli_main, FigureFiles};

const U_SAMPLES: &str = "3";

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn figure(id: u8, dir: &Path) -> FigureFiles {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = [
        "soltrans",
        "figure",
        &id.to_string(),
        "--outdir",
        dir.to_str().unwrap(),
        "--u-samples",
        U_SAMPLES,
    ];
    let code = cli_main(args, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    FigureFiles::new(dir, id)
}

fn digest(path: &Path) -> String {
    let bytes = std::fs::read(path).unwrap();
    Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn digests(f: &FigureFiles) -> String {
    [&f.curve, &f.mesh, &f.sidecar]
        .iter()
        .map(|p| {
            format!(
                "{}  {}\n",
                digest(p),
                p.file_name().unwrap().to_string_lossy()
            )
        })
        .collect()
}

fn check(name: &str, actual: &[u8], update: bool, stale: &mut Vec<String>) {
    let path = golden_dir().join(name);
    if update {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    match std::fs::read(&path) {
        Ok(expected) if expected == actual => {}
        Ok(_) => stale.push(format!("{name} differs")),
        Err(e) => stale.push(format!("{name}: {e}")),
    }
}

#[test]
fn figures_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let dir = tempfile::tempdir().unwrap();
    let mut stale = Vec::new();
    for id in 1..=7u8 {
        let f = figure(id, dir.path());
        let json = std::fs::read(&f.classification).unwrap();
        check(
            &format!("fig{id}_classification.json"),
            &json,
            update,
            &mut stale,
        );
        let oracles = std::fs::read(&f.oracles).unwrap();
        check(
            &format!("fig{id}_oracles.csv"),
            &oracles,
            update,
            &mut stale,
        );
        check(
            &format!("fig{id}.sha256"),
            digests(&f).as_bytes(),
            update,
            &mut stale,
        );
    }
    assert!(stale.is_empty(), "{stale:#?}");
}

#[test]
fn figure_output_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for id in [2u8, 6] {
        let (fa, fb) = (figure(id, a.path()), figure(id, b.path()));
        for (pa, pb) in [
            (&fa.curve, &fb.curve),
            (&fa.mesh, &fb.mesh),
            (&fa.sidecar, &fb.sidecar),
            (&fa.classification, &fb.classification),
            (&fa.oracles, &fb.oracles),
        ] {
            assert_eq!(
                std::fs::read(pa).unwrap(),
                std::fs::read(pb).unwrap(),
                "{}",
                pa.display()
            );
        }
    }
}
