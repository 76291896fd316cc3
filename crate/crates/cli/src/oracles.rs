//! Oracle suites behind `verify` and `figure`: every row compares an
//! analytic value with an independent numerical one against a fixed
//! tolerance.

use soltrans_core::classifier::cross_check;
use soltrans_core::geometry::{flow, killing_residual, KillingField, Point, DEFAULT_FD_STEP};
use soltrans_core::ode::IntegratorConfig;
use soltrans_core::profile::{f_eval, integrate, F1Params, ProfileSystem, Trajectory};
use soltrans_core::surface::{forms_f1, trace_against, PlaneCurve};
use soltrans_core::verifier::{
    fd_forms, flow_velocity_normal, profile_speed, translator_residual, u_independence_check,
    OracleReport, ProfileImmersion, DEFAULT_STEP, TRANSLATOR_TOL,
};

use crate::error::Error;
use crate::presets::FigurePreset;
use crate::random::draws;

pub const FLOW_TOL: f64 = 1e-4;
pub const ARC_LENGTH_TOL: f64 = 1e-8;
pub const TRACE_TOL: f64 = 1e-10;
pub const DRIFT_TOL: f64 = 1e-8;
pub const DRIFT_WINDOW: f64 = 20.0;
pub const KILLING_TOL: f64 = 1e-6;
pub const HOMOMORPHISM_TOL: f64 = 1e-10;
pub const MINIMAL_TOL: f64 = 1e-5;
pub const WITNESS_TOL: f64 = 1e-6;
/// Sample points per preset.
pub const PRESET_POINTS: usize = 100;
/// Horizon for the tail fits of random draws.
pub const FIT_HORIZON: f64 = 200.0;
const FLOW_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub subject: String,
    pub quantity: &'static str,
    pub u: f64,
    pub s: f64,
    pub h: f64,
    pub analytic: f64,
    pub oracle: f64,
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(subject: &str, r: OracleReport, tolerance: f64) -> Self {
        Check {
            subject: subject.to_string(),
            quantity: r.quantity,
            u: r.u,
            s: r.s,
            h: r.h,
            analytic: r.analytic,
            oracle: r.oracle,
            error: r.error,
            tolerance,
        }
    }

    /// NaN errors fail.
    pub fn pass(&self) -> bool {
        self.error <= self.tolerance
    }
}

pub fn failures(checks: &[Check]) -> usize {
    checks.iter().filter(|c| !c.pass()).count()
}

/// Evenly spread `(u, s)` sample points over `[−3, 3] × (−s_max, s_max)`.
fn sample_point(k: usize, n: usize, s_max: f64) -> (f64, f64) {
    let s = -s_max + 2.0 * s_max * (k as f64 + 0.5) / n as f64;
    let u = -3.0 + 6.0 * ((k * 37) % n) as f64 / n as f64;
    (u, s)
}

/// Oracles along an `F₁` profile: translator residual, flow velocity, arc
/// length, fd against analytic `H`, the trace identity, the start value of
/// `θ′` and first-integral drift on `|s| ≤ 20`.
pub fn f1_checks(
    subject: &str,
    p: &F1Params,
    v: KillingField,
    tr: &Trajectory,
    s_max: f64,
    points: usize,
) -> Result<Vec<Check>, Error> {
    let mut out = Vec::with_capacity(5 * points + 2);
    for k in 0..points {
        let (u, s) = sample_point(k, points, s_max);
        let lp = tr.local(s);
        let imm = ProfileImmersion::new(lp, KillingField::F1)?;
        let chart = |u, s| imm.chart(u, s);
        let fd = fd_forms(chart, u, s, DEFAULT_STEP)?;
        let pt = imm.point(u, s);
        out.push(Check::new(
            subject,
            translator_residual(&fd, pt, v, DEFAULT_STEP, u, s),
            TRANSLATOR_TOL,
        ));

        let an = forms_f1(&lp.at(s), p);
        let fl = flow_velocity_normal(pt, an.nu, v, FLOW_STEP)?;
        out.push(Check::new(
            subject,
            OracleReport::new("flow_velocity", an.h, fl, FLOW_STEP, u, s),
            FLOW_TOL,
        ));
        let speed = profile_speed(chart, u, s, DEFAULT_STEP);
        out.push(Check::new(
            subject,
            OracleReport::new("arc_length", 1.0, speed, DEFAULT_STEP, u, s),
            ARC_LENGTH_TOL,
        ));
        out.push(Check::new(
            subject,
            OracleReport::new("fd_mean_curvature", an.h, fd.h, DEFAULT_STEP, u, s),
            TRANSLATOR_TOL,
        ));
        let trace = trace_against(&an.a, &an.g);
        out.push(Check::new(
            subject,
            OracleReport::new("trace_identity", an.h, trace, 0.0, u, s),
            TRACE_TOL * (1.0 + an.h.abs()),
        ));
    }
    let imm = ProfileImmersion::new(tr.local(0.0), KillingField::F1)?;
    let h0 = fd_forms(|u, s| imm.chart(u, s), 0.0, 0.0, DEFAULT_STEP)?.h;
    out.push(Check::new(
        subject,
        OracleReport::new(
            "start_curvature",
            f_eval(p.theta0, p),
            h0,
            DEFAULT_STEP,
            0.0,
            0.0,
        ),
        TRANSLATOR_TOL,
    ));
    out.push(drift_check(subject, tr, s_max.min(DRIFT_WINDOW)));
    Ok(out)
}

fn drift_check(subject: &str, tr: &Trajectory, window: f64) -> Check {
    let drift = tr.first_integral_drift(window).unwrap_or(f64::NAN);
    Check::new(
        subject,
        OracleReport::new("first_integral_drift", 0.0, drift, 0.0, 0.0, window),
        DRIFT_TOL,
    )
}

pub fn preset_subject(preset: &FigurePreset) -> String {
    format!("fig{}", preset.id)
}

/// The preset's profile over `|s| ≤ s_max` at the precise tolerances.
pub fn preset_trajectory(
    preset: &FigurePreset,
    s_max: f64,
) -> Result<(F1Params, Trajectory), Error> {
    let p = F1Params::new(preset.v.c_f2, preset.v.c_f3, preset.theta0);
    let tr = integrate(ProfileSystem::F1(p), s_max, &IntegratorConfig::precise())?;
    Ok((p, tr))
}

pub fn preset_checks(preset: &FigurePreset, s_max: f64) -> Result<Vec<Check>, Error> {
    let (p, tr) = preset_trajectory(preset, s_max)?;
    f1_checks(
        &preset_subject(preset),
        &p,
        preset.v,
        &tr,
        s_max,
        PRESET_POINTS,
    )
}

/// Per draw: drift on `|s| ≤ 20`, the translator residual at four points,
/// the Killing residual of `V`, and agreement of symbolic and fitted ends.
pub fn random_checks(k: usize, seed: u64) -> Result<Vec<Check>, Error> {
    let cfg = IntegratorConfig::precise();
    let mut out = Vec::new();
    for (i, p) in draws(k, seed).into_iter().enumerate() {
        let subject = format!("random{i}");
        let v = KillingField::new(0.0, p.lambda, p.mu);
        let tr = integrate(ProfileSystem::F1(p), DRIFT_WINDOW, &cfg)?;
        out.push(drift_check(&subject, &tr, DRIFT_WINDOW));
        for (u, s) in [(-1.3, -15.0), (0.4, -5.0), (2.1, 5.0), (-0.6, 15.0)] {
            let lp = tr.local(s);
            let imm = ProfileImmersion::new(lp, KillingField::F1)?;
            let fd = fd_forms(|u, s| imm.chart(u, s), u, s, DEFAULT_STEP)?;
            let pt = imm.point(u, s);
            out.push(Check::new(
                &subject,
                translator_residual(&fd, pt, v, DEFAULT_STEP, u, s),
                TRANSLATOR_TOL,
            ));
        }
        let st = tr.local(5.0).at(5.0);
        let r = killing_residual(v, Point::new(0.0, st.y, st.z), DEFAULT_FD_STEP)?;
        out.push(Check::new(
            &subject,
            OracleReport::new("killing_residual", 0.0, r, DEFAULT_FD_STEP, 0.0, 5.0),
            KILLING_TOL,
        ));
        let cc = cross_check(&p, &cfg, FIT_HORIZON)?;
        let agree = if cc.agree { 1.0 } else { 0.0 };
        out.push(Check::new(
            &subject,
            OracleReport::new("asymptote_agreement", 1.0, agree, 0.0, 0.0, FIT_HORIZON),
            0.0,
        ));
    }
    Ok(out)
}

/// Fixed checks of the geometry and surface oracles that do not depend on
/// a profile: Killing residuals, the flow homomorphism, minimal planes and
/// logarithmic surfaces, and a `u`-independent witness.
pub fn module_checks() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let points = [
        Point::new(0.3, -0.7, 0.4),
        Point::new(-1.2, 0.5, -1.1),
        Point::new(2.0, 1.5, 0.9),
    ];
    for (name, k) in [
        ("F1", KillingField::F1),
        ("F2", KillingField::F2),
        ("F3", KillingField::F3),
    ] {
        let subject = format!("killing {name}");
        for p in points {
            let r = killing_residual(k, p, DEFAULT_FD_STEP)?;
            out.push(Check::new(
                &subject,
                OracleReport::new("killing_residual", 0.0, r, DEFAULT_FD_STEP, p.x, p.y),
                KILLING_TOL,
            ));
        }
    }
    for k in [
        KillingField::new(0.5, -1.0, 0.8),
        KillingField::new(1.0, 2.0, 0.0),
    ] {
        for (s, t) in [(0.3, -1.1), (1.7, 0.4)] {
            let lhs = flow(k, s + t)?;
            let rhs = flow(k, s)?.compose(flow(k, t)?);
            out.push(Check::new(
                "flow",
                OracleReport::new("flow_homomorphism", 0.0, lhs.max_abs_diff(rhs), 0.0, s, t),
                HOMOMORPHISM_TOL,
            ));
        }
    }
    let surfaces: [(&str, fn(f64, f64) -> Point); 3] = [
        ("plane z=0.4", |u, s| Point::new(u, s, 0.4)),
        ("plane y=-0.3", |u, s| Point::new(u, -0.3, s)),
        ("log z=ln(1+y)", |u, w| Point::new(u, w, (1.0 + w).ln())),
    ];
    for (subject, m) in surfaces {
        for (u, s) in [(-1.0, 0.2), (0.5, 0.8)] {
            let h = fd_forms(m, u, s, DEFAULT_STEP)?.h;
            out.push(Check::new(
                subject,
                OracleReport::new("fd_mean_curvature", 0.0, h, DEFAULT_STEP, u, s),
                MINIMAL_TOL,
            ));
        }
    }
    let rep = u_independence_check(
        KillingField::F3,
        PlaneCurve::LineX { x0: 1.0 },
        KillingField::F2,
        0.3,
        &[-1.0, 0.0, 1.0],
        DEFAULT_STEP,
    )?;
    out.push(Check::new(
        "witness x=1",
        OracleReport::new(
            "u_independence_residual",
            0.0,
            rep.max_residual(),
            DEFAULT_STEP,
            0.0,
            rep.s,
        ),
        WITNESS_TOL,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_checks_pass() {
        let checks = module_checks().unwrap();
        let bad: Vec<_> = checks.iter().filter(|c| !c.pass()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn nan_fails() {
        let c = Check::new(
            "x",
            OracleReport::new("q", 0.0, f64::NAN, 0.0, 0.0, 0.0),
            1.0,
        );
        assert!(!c.pass());
    }

    #[test]
    fn sample_points_stay_inside() {
        for k in 0..100 {
            let (u, s) = sample_point(k, 100, 30.0);
            assert!(u.abs() <= 3.0 && s.abs() < 30.0);
        }
    }
}
