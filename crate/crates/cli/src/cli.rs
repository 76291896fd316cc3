//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use soltrans_core::classifier::{cross_check, Reduction};
use soltrans_core::geometry::KillingField;
use soltrans_core::ode::IntegratorConfig;
use soltrans_core::profile::critical_points;
use soltrans_core::surface::URange;

use crate::error::Error;
use crate::io;
use crate::oracles::{self, failures, Check, FIT_HORIZON};
use crate::pipeline::{profile, reduction_name, Profile, Request};
use crate::presets::{preset, PRESETS};
use crate::random::GENERATOR;
use crate::report::{classification_doc, counts};
use crate::sweep::{sweep_row, Grid, HEADER};

/// Default directory for `figure` output when `--outdir` is absent.
pub const OUTDIR_ENV: &str = "SOLTRANS_OUTDIR";

#[derive(Debug, Parser)]
#[command(
    name = "soltrans",
    version,
    about = "Invariant translating solitons of mean curvature flow in Sol3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<KillingField, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated coefficients, got {}",
            parts.len()
        ));
    }
    let mut c = [0.0; 3];
    for (slot, tok) in c.iter_mut().zip(&parts) {
        *slot = tok
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("malformed number '{tok}'"))?;
    }
    Ok(KillingField::new(c[0], c[1], c[2]))
}

fn parse_finite(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("malformed number '{s}'"))
}

fn parse_positive(s: &str) -> Result<f64, String> {
    parse_finite(s).and_then(|v| {
        if v > 0.0 {
            Ok(v)
        } else {
            Err(format!("'{s}' must be positive"))
        }
    })
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Symmetry generator a,b,c for aF1 + bF2 + cF3.
    #[arg(long = "X", value_name = "A,B,C", value_parser = parse_field, allow_hyphen_values = true)]
    pub x: KillingField,
    /// Translation direction eta,lambda,mu for etaF1 + lambdaF2 + muF3.
    #[arg(long = "V", value_name = "ETA,LAMBDA,MU", value_parser = parse_field, allow_hyphen_values = true)]
    pub v: KillingField,
    /// Initial angle of the profile.
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub theta0: f64,
}

impl FieldArgs {
    fn request(&self) -> Request {
        Request {
            x: self.x,
            v: self.v,
            theta0: self.theta0,
        }
    }
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[arg(long, default_value_t = -3.0, value_parser = parse_finite, allow_hyphen_values = true)]
    pub u_min: f64,
    #[arg(long, default_value_t = 3.0, value_parser = parse_finite, allow_hyphen_values = true)]
    pub u_max: f64,
    #[arg(long, default_value_t = 64)]
    pub u_samples: usize,
}

impl MeshArgs {
    fn range(&self) -> Result<URange, Error> {
        URange::new(self.u_min, self.u_max, self.u_samples).map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the classification as JSON.
    Classify {
        #[command(flatten)]
        fields: FieldArgs,
        /// Horizon for integration and tail fits.
        #[arg(long, default_value_t = FIT_HORIZON, value_parser = parse_positive)]
        smax: f64,
    },
    /// Write the profile curve as CSV.
    Integrate {
        #[command(flatten)]
        fields: FieldArgs,
        #[arg(long, default_value_t = 30.0, value_parser = parse_positive)]
        smax: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the surface as OBJ plus a metric-normal CSV sidecar.
    Mesh {
        #[command(flatten)]
        fields: FieldArgs,
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long, default_value_t = 30.0, value_parser = parse_positive)]
        smax: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write curve, mesh, classification and oracle report for a built-in preset.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        id: u8,
        /// Defaults to $SOLTRANS_OUTDIR, then the current directory.
        #[arg(long)]
        outdir: Option<PathBuf>,
        #[arg(long, default_value_t = 30.0, value_parser = parse_positive)]
        smax: f64,
        #[arg(long, default_value_t = 64)]
        u_samples: usize,
    },
    /// Run the oracle suites; exit 2 if any check exceeds its tolerance.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7), conflicts_with = "random")]
        preset: Option<u8>,
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long, requires = "random")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 30.0, value_parser = parse_positive)]
        smax: f64,
        /// Oracle report CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a grid or a random sample of F1 problems into a CSV report.
    Sweep {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        grid: Option<String>,
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long, requires = "random")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 30.0, value_parser = parse_positive)]
        smax: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn fmt_field(k: &KillingField) -> String {
    format!("{},{},{}", k.c_f1, k.c_f2, k.c_f3)
}

fn request_comments(req: &Request, reduction: &Reduction, s_max: f64) -> Vec<String> {
    vec![
        format!(
            "X={} V={} theta0={}",
            fmt_field(&req.x),
            fmt_field(&req.v),
            req.theta0
        ),
        format!("reduction={} smax={s_max}", reduction_name(reduction)),
    ]
}

fn write_line(out: &mut dyn Write, line: &str) -> Result<(), Error> {
    writeln!(out, "{line}").map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn classify_cmd(fields: &FieldArgs, smax: f64, out: &mut dyn Write) -> Result<(), Error> {
    let req = fields.request();
    let cfg = IntegratorConfig::precise();
    let cls = req.classify(&cfg, smax)?;
    let cc = match cls.reduction {
        Reduction::F1(p) | Reduction::MirroredF2(p) => Some(cross_check(&p, &cfg, smax)?),
        _ => None,
    };
    let doc = classification_doc(&req, &cls, cc.as_ref());
    out.write_all(io::to_json(&doc)?.as_bytes())
        .map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn integrated(fields: &FieldArgs, smax: f64) -> Result<(Request, Reduction, Profile), Error> {
    let req = fields.request();
    let cfg = IntegratorConfig::precise();
    let cls = req.classify(&cfg, smax)?;
    let prof = profile(&req, &cls, &cfg, smax)?;
    Ok((req, cls.reduction, prof))
}

fn integrate_cmd(
    fields: &FieldArgs,
    smax: f64,
    path: &Path,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let (req, reduction, prof) = integrated(fields, smax)?;
    let tr = prof.trajectory().ok_or_else(|| {
        Error::Usage("X has an F3 component: the profile is a line in z = 0, use `mesh`".into())
    })?;
    io::write_trajectory_csv(tr, path, &request_comments(&req, &reduction, smax))?;
    write_line(
        out,
        &format!("wrote {} ({} samples)", path.display(), tr.samples.len()),
    )
}

fn mesh_cmd(
    fields: &FieldArgs,
    mesh: &MeshArgs,
    smax: f64,
    path: &Path,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let u = mesh.range()?;
    let (req, reduction, prof) = integrated(fields, smax)?;
    let m = prof.mesh(smax, &u)?;
    let side = io::write_obj(&m, path, &request_comments(&req, &reduction, smax))?;
    write_line(
        out,
        &format!(
            "wrote {} and {} ({} vertices)",
            path.display(),
            side.display(),
            m.len()
        ),
    )
}

fn outdir(given: Option<&Path>) -> PathBuf {
    given
        .map(Path::to_path_buf)
        .or_else(|| {
            std::env::var_os(OUTDIR_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        })
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Files written by `figure`.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureFiles {
    pub curve: PathBuf,
    pub mesh: PathBuf,
    pub sidecar: PathBuf,
    pub classification: PathBuf,
    pub oracles: PathBuf,
}

impl FigureFiles {
    pub fn new(dir: &Path, id: u8) -> Self {
        let f = |suffix: &str| dir.join(format!("fig{id}_{suffix}"));
        FigureFiles {
            curve: f("curve.csv"),
            mesh: f("mesh.obj"),
            sidecar: f("mesh.normals.csv"),
            classification: f("classification.json"),
            oracles: f("oracles.csv"),
        }
    }
}

fn figure_cmd(
    id: u8,
    dir: Option<&Path>,
    smax: f64,
    u_samples: usize,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let fp = preset(id).ok_or_else(|| Error::Usage(format!("no preset '{id}'")))?;
    let u = MeshArgs {
        u_min: -3.0,
        u_max: 3.0,
        u_samples,
    }
    .range()?;
    let files = FigureFiles::new(&outdir(dir), id);
    let req = Request {
        x: fp.x,
        v: fp.v,
        theta0: fp.theta0,
    };
    let cfg = IntegratorConfig::precise();
    let cls = req.classify(&cfg, smax)?;
    let (p, tr) = oracles::preset_trajectory(fp, smax)?;
    let prof = Profile::Integrated {
        trajectory: tr.clone(),
        generator: fp.x,
        mirrored: false,
    };
    let mesh = prof.mesh(smax, &u)?;

    let cc = cross_check(&p, &cfg, FIT_HORIZON)?;
    let mut doc = classification_doc(&req, &cls, Some(&cc));
    let family_matches = cc.class.family == fp.expected.family;
    doc.critical_points = Some(counts(
        &critical_points(&tr),
        smax,
        &fp.expected,
        family_matches,
    ));
    let checks = oracles::f1_checks(
        &oracles::preset_subject(fp),
        &p,
        fp.v,
        &tr,
        smax,
        oracles::PRESET_POINTS,
    )?;

    let comments = request_comments(&req, &cls.reduction, smax);
    let mut header = vec![format!("figure {id}: {}", fp.description)];
    header.extend(comments);
    io::write_trajectory_csv(&tr, &files.curve, &header)?;
    io::write_obj(&mesh, &files.mesh, &header)?;
    io::write_json(&doc, &files.classification)?;
    io::write_checks_csv(&checks, &files.oracles, &header)?;

    let cp = doc
        .critical_points
        .as_ref()
        .map(|c| (c.count_y, c.count_z))
        .unwrap_or_default();
    write_line(
        out,
        &format!(
            "figure {id}: {} count_y={} count_z={}",
            doc.family, cp.0, cp.1
        ),
    )?;
    for f in [
        &files.curve,
        &files.mesh,
        &files.sidecar,
        &files.classification,
        &files.oracles,
    ] {
        write_line(out, &format!("wrote {}", f.display()))?;
    }
    report_checks(&checks, out)
}

/// Summary line plus one line per failing check.
fn report_checks(checks: &[Check], out: &mut dyn Write) -> Result<(), Error> {
    let failed = failures(checks);
    write_line(out, &format!("{} checks, {failed} failed", checks.len()))?;
    for c in checks.iter().filter(|c| !c.pass()) {
        write_line(
            out,
            &format!(
                "FAIL {} {} u={} s={}: error {:e} > {:e}",
                c.subject, c.quantity, c.u, c.s, c.error, c.tolerance
            ),
        )?;
    }
    if failed > 0 {
        return Err(Error::VerificationFailed {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}

fn verify_cmd(
    preset_id: Option<u8>,
    random: Option<(usize, u64)>,
    smax: f64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let (checks, comments) = match (preset_id, random) {
        (Some(id), _) => {
            let fp = preset(id).ok_or_else(|| Error::Usage(format!("no preset '{id}'")))?;
            (
                oracles::preset_checks(fp, smax)?,
                vec![format!("preset {id} smax={smax}")],
            )
        }
        (None, Some((k, seed))) => (
            oracles::random_checks(k, seed)?,
            vec![format!(
                "random draws={k} generator={GENERATOR} seed={seed}"
            )],
        ),
        (None, None) => {
            let mut all = oracles::module_checks()?;
            for fp in &PRESETS {
                all.extend(oracles::preset_checks(fp, smax)?);
            }
            (all, vec![format!("modules and presets 1-7 smax={smax}")])
        }
    };
    if let Some(path) = path {
        io::write_checks_csv(&checks, path, &comments)?;
    }
    report_checks(&checks, out)
}

fn sweep_cmd(
    grid: Option<&str>,
    random: Option<(usize, u64)>,
    smax: f64,
    path: &Path,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let (points, comment) = match (grid, random) {
        (Some(spec), _) => (
            Grid::parse(spec)?.points(),
            format!("grid {spec} smax={smax}"),
        ),
        (None, Some((k, seed))) => (
            crate::random::draws(k, seed),
            format!("random draws={k} generator={GENERATOR} seed={seed} smax={smax}"),
        ),
        (None, None) => return Err(Error::Usage("sweep needs --grid or --random".into())),
    };
    let rows: Vec<Vec<String>> = points.iter().map(|p| sweep_row(p, smax)).collect();
    io::write_table_csv(&HEADER, &rows, path, &[comment])?;
    write_line(
        out,
        &format!("wrote {} ({} points)", path.display(), rows.len()),
    )
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Error> {
    match &cli.command {
        Command::Classify { fields, smax } => classify_cmd(fields, *smax, out),
        Command::Integrate {
            fields,
            smax,
            out: path,
        } => integrate_cmd(fields, *smax, path, out),
        Command::Mesh {
            fields,
            mesh,
            smax,
            out: path,
        } => mesh_cmd(fields, mesh, *smax, path, out),
        Command::Figure {
            id,
            outdir,
            smax,
            u_samples,
        } => figure_cmd(*id, outdir.as_deref(), *smax, *u_samples, out),
        Command::Verify {
            preset,
            random,
            seed,
            smax,
            out: path,
        } => {
            let random = random.zip(*seed);
            verify_cmd(*preset, random, *smax, path.as_deref(), out)
        }
        Command::Sweep {
            grid,
            random,
            seed,
            smax,
            out: path,
        } => sweep_cmd(grid.as_deref(), random.zip(*seed), *smax, path, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 on usage and other
/// errors, 2 when a verification check fails.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
