//! Structured classification output.
//!
//! End models of `F₁` and mirrored-`F₂` reductions refer to the reduced
//! profile `(y(s), z(s))`; for the mirrored case the surface itself is the
//! image under `(x, y, z) ↦ (y, x, −z)`.

use serde::Serialize;
use soltrans_core::classifier::{
    reduced_coefficients, AsymptoticEnd, Classification, CrossCheck, EndKind, Reduction,
};
use soltrans_core::profile::CriticalPoints;

use crate::pipeline::{reduction_name, Request};
use crate::presets::Expected;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum EndModel {
    HorizontalPlane { z0: f64 },
    Logarithmic { sign: i8, y0: Option<f64>, z0: f64 },
    HalfLogarithmic { sign: i8, y0: Option<f64>, z0: f64 },
    TiltedPlane { c1: f64, c0: Option<f64> },
    VerticalPlane { y_value: f64 },
    DivergentLinear { sigma1: f64, sigma2: f64 },
}

impl From<EndKind> for EndModel {
    fn from(k: EndKind) -> Self {
        match k {
            EndKind::HorizontalPlane { z0 } => EndModel::HorizontalPlane { z0 },
            EndKind::Logarithmic { sign, y0, z0 } => EndModel::Logarithmic { sign, y0, z0 },
            EndKind::HalfLogarithmic { sign, y0, z0 } => EndModel::HalfLogarithmic { sign, y0, z0 },
            EndKind::TiltedPlane { c1, c0 } => EndModel::TiltedPlane { c1, c0 },
            EndKind::VerticalPlane { y_value } => EndModel::VerticalPlane { y_value },
            EndKind::DivergentLinear { sigma1, sigma2 } => {
                EndModel::DivergentLinear { sigma1, sigma2 }
            }
        }
    }
}

const END_NAMES: [&str; 2] = ["backward", "forward"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndEntry {
    pub end: &'static str,
    #[serde(flatten)]
    pub model: EndModel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitEntry {
    pub end: &'static str,
    pub model: Option<EndModel>,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_tilde: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_tilde: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    #[serde(rename = "X")]
    pub x: [f64; 3],
    #[serde(rename = "V")]
    pub v: [f64; 3],
    pub theta0: f64,
    pub reduction: &'static str,
    pub reduced: ReducedParams,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub exists: bool,
    pub witness: &'static str,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counts {
    pub s_max: f64,
    pub count_y: usize,
    pub count_z: usize,
    pub y_locations: Vec<f64>,
    pub z_locations: Vec<f64>,
    pub expected_y: Option<usize>,
    pub expected_z: Option<usize>,
    pub expected_family: &'static str,
    pub matches_expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationDoc {
    pub family: &'static str,
    pub tangency: bool,
    pub ends: Vec<EndEntry>,
    pub fit_residuals: Vec<Option<f64>>,
    pub fits: Vec<FitEntry>,
    pub fits_agree: Option<bool>,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_points: Option<Counts>,
}

fn fit_entry(end: &'static str, fit: &Result<AsymptoticEnd, impl ToString>) -> FitEntry {
    match fit {
        Ok(f) => FitEntry {
            end,
            model: Some(f.kind.into()),
            residual: f.fit_residual,
            error: None,
        },
        Err(e) => FitEntry {
            end,
            model: None,
            residual: None,
            error: Some(e.to_string()),
        },
    }
}

fn reduced(req: &Request, r: &Reduction) -> ReducedParams {
    let mut out = ReducedParams {
        lambda: None,
        mu: None,
        b: None,
        eta_tilde: None,
        lambda_tilde: None,
    };
    match *r {
        Reduction::F1(p) | Reduction::MirroredF2(p) => {
            out.lambda = Some(p.lambda);
            out.mu = Some(p.mu);
        }
        Reduction::Slanted { b, v } => {
            out.b = Some(b);
            out.lambda_tilde = Some(v.c_f2 - b * v.c_f1);
        }
        Reduction::Vertical => {
            let (eta, lambda) = reduced_coefficients(&req.x, &req.v);
            out.eta_tilde = Some(eta);
            out.lambda_tilde = Some(lambda);
        }
    }
    out
}

/// `cc` carries tail fits for `F₁`-type reductions.
pub fn classification_doc(
    req: &Request,
    cls: &Classification,
    cc: Option<&CrossCheck>,
) -> ClassificationDoc {
    let class = cc.map_or(cls.class, |c| c.class);
    let ends = class
        .ends
        .map(|e| {
            e.iter()
                .zip(END_NAMES)
                .map(|(a, end)| EndEntry {
                    end,
                    model: a.kind.into(),
                })
                .collect()
        })
        .unwrap_or_default();
    let fits: Vec<FitEntry> = cc
        .filter(|_| class.ends.is_some())
        .map(|c| {
            c.fits
                .iter()
                .zip(END_NAMES)
                .map(|(f, end)| fit_entry(end, f))
                .collect()
        })
        .unwrap_or_default();
    ClassificationDoc {
        family: class.family.name(),
        tangency: class.tangency,
        ends,
        fit_residuals: fits.iter().map(|f| f.residual).collect(),
        fits,
        fits_agree: cc.map(|c| c.agree),
        params: Params {
            x: [req.x.c_f1, req.x.c_f2, req.x.c_f3],
            v: [req.v.c_f1, req.v.c_f2, req.v.c_f3],
            theta0: req.theta0,
            reduction: reduction_name(&cls.reduction),
            reduced: reduced(req, &cls.reduction),
        },
        verdict: cls.verdict.map(|v| Verdict {
            exists: v.exists,
            witness: v.witness.family.name(),
            note: v.note,
        }),
        critical_points: None,
    }
}

pub fn counts(
    cp: &CriticalPoints,
    s_max: f64,
    expected: &Expected,
    family_matches: bool,
) -> Counts {
    let matches_expected = family_matches
        && expected.count_y.is_none_or(|n| n == cp.count_y())
        && expected.count_z.is_none_or(|n| n == cp.count_z());
    Counts {
        s_max,
        count_y: cp.count_y(),
        count_z: cp.count_z(),
        y_locations: cp.y_locations.clone(),
        z_locations: cp.z_locations.clone(),
        expected_y: expected.count_y,
        expected_z: expected.count_z,
        expected_family: expected.family.name(),
        matches_expected,
    }
}

/// One-line summary of an end model, as used in sweep reports.
pub fn end_label(k: &EndKind) -> String {
    let opt = |v: Option<f64>| v.map_or("?".to_string(), |v| v.to_string());
    match *k {
        EndKind::HorizontalPlane { z0 } => format!("HorizontalPlane(z0={z0})"),
        EndKind::Logarithmic { sign, y0, z0 } => {
            format!("Logarithmic(sign={sign},y0={},z0={z0})", opt(y0))
        }
        EndKind::HalfLogarithmic { sign, y0, z0 } => {
            format!("HalfLogarithmic(sign={sign},y0={},z0={z0})", opt(y0))
        }
        EndKind::TiltedPlane { c1, c0 } => format!("TiltedPlane(c1={c1},c0={})", opt(c0)),
        EndKind::VerticalPlane { y_value } => format!("VerticalPlane(y={y_value})"),
        EndKind::DivergentLinear { sigma1, sigma2 } => {
            format!("DivergentLinear(sigma1={sigma1},sigma2={sigma2})")
        }
    }
}
