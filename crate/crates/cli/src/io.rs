//! File formats: trajectory CSV, OBJ with a metric-normal sidecar, oracle
//! report CSV and JSON documents. Formatting is fixed so that identical
//! inputs give identical bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use soltrans_core::geometry::inner;
use soltrans_core::profile::{first_integral, ProfileSystem, Trajectory};
use soltrans_core::surface::SurfaceMesh;

use crate::error::Error;
use crate::oracles::Check;

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// 10 significant digits, enough for viewers and a 9-digit round trip.
fn fmt_obj(v: f64) -> String {
    format!("{v:.9e}")
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_comments<W: Write>(w: &mut W, path: &Path, comments: &[String]) -> Result<(), Error> {
    for c in comments {
        writeln!(w, "# {c}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

fn csv_writer<'a>(
    path: &Path,
    comments: &[String],
    out: &'a mut BufWriter<File>,
) -> Result<csv::Writer<&'a mut BufWriter<File>>, Error> {
    write_comments(out, path, comments)?;
    Ok(csv::Writer::from_writer(out))
}

fn finish<W: Write>(mut w: csv::Writer<W>, path: &Path) -> Result<(), Error> {
    w.flush().map_err(|e| Error::io(path, e))
}

/// `s, y, z, theta, first_integral_residual`; the residual is NaN for
/// systems without a first integral.
pub fn write_trajectory_csv(
    tr: &Trajectory,
    path: &Path,
    comments: &[String],
) -> Result<(), Error> {
    if tr.samples.is_empty() {
        return Err(Error::Usage("trajectory is empty".into()));
    }
    let mut out = create(path)?;
    let mut w = csv_writer(path, comments, &mut out)?;
    let csv_err = |e| Error::csv(path, e);
    w.write_record(["s", "y", "z", "theta", "first_integral_residual"])
        .map_err(csv_err)?;
    for st in &tr.samples {
        let residual = match &tr.system {
            ProfileSystem::F1(p) => first_integral(st, p),
            ProfileSystem::Slanted(_) => f64::NAN,
        };
        w.write_record([st.s, st.y, st.z, st.theta, residual].map(fmt_f64))
            .map_err(csv_err)?;
    }
    finish(w, path)
}

/// Path of the metric-normal sidecar written next to an OBJ file.
pub fn sidecar_path(obj: &Path) -> PathBuf {
    let stem = obj
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    obj.with_file_name(format!("{stem}.normals.csv"))
}

/// OBJ with `v`, `vn` (Euclidean-normalised coordinate normals) and `f`
/// records, plus a CSV sidecar holding the normals unit in the Sol₃ metric
/// and the mean curvature per vertex. Returns the sidecar path.
pub fn write_obj(mesh: &SurfaceMesh, path: &Path, comments: &[String]) -> Result<PathBuf, Error> {
    if mesh.is_empty() || mesh.triangles.is_empty() {
        return Err(Error::Usage("mesh is empty".into()));
    }
    let io_err = |e| Error::io(path, e);
    let mut out = create(path)?;
    write_comments(&mut out, path, comments)?;
    for p in &mesh.vertices {
        writeln!(out, "v {} {} {}", fmt_obj(p.x), fmt_obj(p.y), fmt_obj(p.z)).map_err(io_err)?;
    }
    for n in &mesh.normals {
        let len = n.euclidean_norm();
        let [a, b, c] = n.to_array().map(|v| v / len);
        writeln!(out, "vn {} {} {}", fmt_obj(a), fmt_obj(b), fmt_obj(c)).map_err(io_err)?;
    }
    for t in &mesh.triangles {
        let [a, b, c] = t.map(|i| i + 1);
        writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;

    let side = sidecar_path(path);
    let mut out = create(&side)?;
    let mut w = csv_writer(&side, comments, &mut out)?;
    let csv_err = |e| Error::csv(&side, e);
    w.write_record([
        "vertex",
        "u",
        "s",
        "x",
        "y",
        "z",
        "nx",
        "ny",
        "nz",
        "metric_norm",
        "mean_curvature",
    ])
    .map_err(csv_err)?;
    let n_s = mesh.s_values.len();
    for (k, (p, n)) in mesh.vertices.iter().zip(&mesh.normals).enumerate() {
        let (u, s) = (mesh.u_values[k / n_s], mesh.s_values[k % n_s]);
        let norm = inner(*p, *n, *n).sqrt();
        let mut rec = vec![(k + 1).to_string()];
        rec.extend(
            [
                u,
                s,
                p.x,
                p.y,
                p.z,
                n.vx,
                n.vy,
                n.vz,
                norm,
                mesh.mean_curvature[k],
            ]
            .map(fmt_f64),
        );
        w.write_record(&rec).map_err(csv_err)?;
    }
    finish(w, &side)?;
    Ok(side)
}

pub fn write_checks_csv(checks: &[Check], path: &Path, comments: &[String]) -> Result<(), Error> {
    let mut out = create(path)?;
    let mut w = csv_writer(path, comments, &mut out)?;
    let csv_err = |e| Error::csv(path, e);
    w.write_record([
        "subject",
        "quantity",
        "u",
        "s",
        "h",
        "analytic",
        "oracle",
        "error",
        "tolerance",
        "pass",
    ])
    .map_err(csv_err)?;
    for c in checks {
        let mut rec = vec![c.subject.clone(), c.quantity.to_string()];
        rec.extend([c.u, c.s, c.h, c.analytic, c.oracle, c.error, c.tolerance].map(fmt_f64));
        rec.push(c.pass().to_string());
        w.write_record(&rec).map_err(csv_err)?;
    }
    finish(w, path)
}

/// Rows of an arbitrary table, for sweep reports.
pub fn write_table_csv(
    header: &[&str],
    rows: &[Vec<String>],
    path: &Path,
    comments: &[String],
) -> Result<(), Error> {
    let mut out = create(path)?;
    let mut w = csv_writer(path, comments, &mut out)?;
    let csv_err = |e| Error::csv(path, e);
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    finish(w, path)
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(doc: &T, path: &Path) -> Result<(), Error> {
    let text = to_json(doc)?;
    let mut out = create(path)?;
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formats() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-3.0), "-3.0000000000000000e0");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(fmt_obj(1.0 / 3.0), "3.333333333e-1");
        let back: f64 = fmt_f64(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn sidecar_sits_next_to_obj() {
        assert_eq!(
            sidecar_path(Path::new("out/fig1.obj")),
            Path::new("out/fig1.normals.csv")
        );
        assert_eq!(
            sidecar_path(Path::new("mesh")),
            Path::new("mesh.normals.csv")
        );
    }
}
