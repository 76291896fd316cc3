//! From a `(X, V, θ₀)` request to a classification, a profile and a mesh.

use soltrans_core::classifier::{classify, Classification, Family, Reduction};
use soltrans_core::geometry::KillingField;
use soltrans_core::ode::IntegratorConfig;
use soltrans_core::profile::{integrate, ProfileSystem, SlantedParams, Trajectory};
use soltrans_core::surface::{build_curve_mesh, build_mesh, PlaneCurve, SurfaceMesh, URange};

use crate::error::Error;

/// Spacing of the `s` grid for witness meshes, which have no adaptive grid.
pub const WITNESS_DS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Request {
    pub x: KillingField,
    pub v: KillingField,
    pub theta0: f64,
}

impl Request {
    pub fn classify(&self, cfg: &IntegratorConfig, s_max: f64) -> Result<Classification, Error> {
        Ok(classify(&self.x, &self.v, self.theta0, cfg, s_max)?)
    }
}

pub fn reduction_name(r: &Reduction) -> &'static str {
    match r {
        Reduction::F1(_) => "F1",
        Reduction::MirroredF2(_) => "MirroredF2",
        Reduction::Slanted { .. } => "Slanted",
        Reduction::Vertical => "Vertical",
    }
}

/// What sweeps out the surface.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// An integrated profile swept by `generator`. With `mirrored` set the
    /// result is mapped through `(x, y, z) ↦ (y, x, −z)`.
    Integrated {
        trajectory: Trajectory,
        generator: KillingField,
        mirrored: bool,
    },
    /// A line in `z = 0` for a generator with an `F₃` component.
    Witness {
        curve: PlaneCurve,
        generator: KillingField,
    },
}

fn no_translator(req: &Request, why: &str) -> Error {
    Error::NoTranslator(format!(
        "X = ({}, {}, {}), V = ({}, {}, {}): {why}",
        req.x.c_f1, req.x.c_f2, req.x.c_f3, req.v.c_f1, req.v.c_f2, req.v.c_f3
    ))
}

/// The profile of the translator, integrated over `|s| ≤ s_max`.
pub fn profile(
    req: &Request,
    cls: &Classification,
    cfg: &IntegratorConfig,
    s_max: f64,
) -> Result<Profile, Error> {
    if cls.class.family == Family::NonExistent {
        let why = cls.verdict.map_or("V has an F3 component", |v| v.note);
        return Err(no_translator(req, why));
    }
    let integrated = |system, generator, mirrored| -> Result<Profile, Error> {
        Ok(Profile::Integrated {
            trajectory: integrate(system, s_max, cfg)?,
            generator,
            mirrored,
        })
    };
    match cls.reduction {
        Reduction::F1(p) => integrated(ProfileSystem::F1(p), req.x, false),
        // Integrate the mirror image, swept by the matching multiple of F₁.
        Reduction::MirroredF2(p) => integrated(
            ProfileSystem::F1(p),
            KillingField::new(req.x.c_f2, 0.0, 0.0),
            true,
        ),
        Reduction::Slanted { b, v } => {
            let sp = SlantedParams::new(b, v.c_f2 - b * v.c_f1, req.theta0)?;
            integrated(ProfileSystem::Slanted(sp), req.x, false)
        }
        Reduction::Vertical => {
            let curve = match cls.class.family {
                Family::VerticalPlaneY => PlaneCurve::LineY { y0: 0.0 },
                _ => PlaneCurve::LineX { x0: 0.0 },
            };
            Ok(Profile::Witness {
                curve,
                generator: req.x,
            })
        }
    }
}

impl Profile {
    pub fn trajectory(&self) -> Option<&Trajectory> {
        match self {
            Profile::Integrated { trajectory, .. } => Some(trajectory),
            Profile::Witness { .. } => None,
        }
    }

    pub fn mesh(&self, s_max: f64, u: &URange) -> Result<SurfaceMesh, Error> {
        match self {
            Profile::Integrated {
                trajectory,
                generator,
                mirrored,
            } => {
                let m = build_mesh(trajectory, *generator, u)?;
                Ok(if *mirrored { m.mirrored() } else { m })
            }
            Profile::Witness { curve, generator } => {
                let n = (s_max / WITNESS_DS).ceil().max(1.0) as usize;
                let s: Vec<f64> = (-(n as i64)..=n as i64)
                    .map(|k| s_max * k as f64 / n as f64)
                    .collect();
                Ok(build_curve_mesh(*generator, curve, &s, u)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use soltrans_core::geometry::inner;

    fn run(x: KillingField, v: KillingField, theta0: f64) -> Result<(Profile, SurfaceMesh), Error> {
        let req = Request { x, v, theta0 };
        let cfg = IntegratorConfig::default();
        let cls = req.classify(&cfg, 10.0)?;
        let prof = profile(&req, &cls, &cfg, 10.0)?;
        let mesh = prof.mesh(10.0, &URange::new(-1.0, 1.0, 3)?)?;
        Ok((prof, mesh))
    }

    #[test]
    fn every_reduction_meshes() {
        let cases = [
            (KillingField::F1, KillingField::new(0.0, 1.0, 0.5), 0.3),
            (
                KillingField::new(0.0, 2.0, 0.0),
                KillingField::new(1.0, 0.0, 0.5),
                0.3,
            ),
            (
                KillingField::new(1.0, 2.0, 0.0),
                KillingField::new(0.0, 1.0, 0.0),
                0.3,
            ),
            (KillingField::F3, KillingField::new(0.0, 1.0, 0.0), 0.0),
        ];
        for (x, v, t) in cases {
            let (_, mesh) = run(x, v, t).unwrap();
            for (p, n) in mesh.vertices.iter().zip(&mesh.normals) {
                assert!((inner(*p, *n, *n) - 1.0).abs() < 1e-10, "{x:?}");
            }
        }
    }

    #[test]
    fn mirrored_mesh_sits_in_the_mirrored_orbit() {
        // X = 2F₂: vertices are (y(s), 2u, −z(s)) for the reduced profile.
        let (prof, mesh) = run(
            KillingField::new(0.0, 2.0, 0.0),
            KillingField::new(1.0, 0.0, 0.5),
            0.3,
        )
        .unwrap();
        let tr = prof.trajectory().unwrap();
        let j = tr.samples.len() / 3;
        let st = tr.samples[j];
        let p = mesh.vertices[mesh.index(2, j)];
        assert_eq!((p.x, p.y, p.z), (st.y, 2.0, -st.z));
    }

    #[test]
    fn nonexistent_is_an_error() {
        let e = run(KillingField::F3, KillingField::new(1.0, 1.0, 0.0), 0.0).unwrap_err();
        assert!(matches!(e, Error::NoTranslator(_)), "{e}");
        let e = run(KillingField::new(1.0, 1.0, 0.0), KillingField::F3, 0.5).unwrap_err();
        assert!(matches!(e, Error::NoTranslator(_)), "{e}");
    }
}
