//! Parameter sweeps over `F₁` problems.

use soltrans_core::classifier::cross_check;
use soltrans_core::ode::IntegratorConfig;
use soltrans_core::profile::{critical_points, integrate, End, F1Params, ProfileSystem};

use crate::error::Error;
use crate::io::fmt_f64;
use crate::oracles::{DRIFT_WINDOW, FIT_HORIZON};
use crate::report::end_label;

pub const AXES: [&str; 3] = ["lambda", "mu", "theta0"];

pub const HEADER: [&str; 12] = [
    "lambda",
    "mu",
    "theta0",
    "family",
    "tangency",
    "end_backward",
    "end_forward",
    "count_y",
    "count_z",
    "first_integral_drift",
    "fits_agree",
    "error",
];

/// Values per axis, in [`AXES`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub axes: [Vec<f64>; 3],
}

fn parse_number(tok: &str, whole: &str) -> Result<f64, Error> {
    tok.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Usage(format!("malformed number '{tok}' in grid '{whole}'")))
}

/// `a:b:n` is `n` evenly spaced values from `a` to `b`; a bare number is
/// a single value.
fn parse_axis(spec: &str, whole: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![parse_number(v, whole)?]),
        [a, b, n] => {
            let (a, b) = (parse_number(a, whole)?, parse_number(b, whole)?);
            let n: usize =
                n.trim().parse().ok().filter(|n| *n >= 1).ok_or_else(|| {
                    Error::Usage(format!("malformed count '{n}' in grid '{whole}'"))
                })?;
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect())
        }
        _ => Err(Error::Usage(format!(
            "malformed axis '{spec}' in grid '{whole}'"
        ))),
    }
}

impl Grid {
    /// `lambda=a:b:n,mu=...,theta0=...`; every axis is required once.
    pub fn parse(spec: &str) -> Result<Grid, Error> {
        let mut axes: [Option<Vec<f64>>; 3] = [None, None, None];
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected key=value, got '{item}'")))?;
            let i = AXES
                .iter()
                .position(|a| *a == key.trim())
                .ok_or_else(|| Error::Usage(format!("unknown grid axis '{}'", key.trim())))?;
            if axes[i].is_some() {
                return Err(Error::Usage(format!("grid axis '{}' given twice", AXES[i])));
            }
            axes[i] = Some(parse_axis(val, spec)?);
        }
        let [l, m, t] = axes;
        match (l, m, t) {
            (Some(l), Some(m), Some(t)) => Ok(Grid { axes: [l, m, t] }),
            (l, m, _) => {
                let missing = if l.is_none() {
                    "lambda"
                } else if m.is_none() {
                    "mu"
                } else {
                    "theta0"
                };
                Err(Error::Usage(format!(
                    "grid '{spec}' lacks axis '{missing}'"
                )))
            }
        }
    }

    pub fn points(&self) -> Vec<F1Params> {
        let [l, m, t] = &self.axes;
        let mut out = Vec::with_capacity(l.len() * m.len() * t.len());
        for &lambda in l {
            for &mu in m {
                for &theta0 in t {
                    out.push(F1Params::new(lambda, mu, theta0));
                }
            }
        }
        out
    }
}

/// Classification, critical points on `|s| ≤ s_max`, drift on `|s| ≤ 20`
/// and fit agreement for one point. Failures land in the `error` column.
pub fn sweep_row(p: &F1Params, s_max: f64) -> Vec<String> {
    let cfg = IntegratorConfig::precise();
    let mut row = vec![fmt_f64(p.lambda), fmt_f64(p.mu), fmt_f64(p.theta0)];
    let result = cross_check(p, &cfg, FIT_HORIZON).and_then(|cc| {
        let tr = integrate(ProfileSystem::F1(*p), s_max.max(DRIFT_WINDOW), &cfg)?;
        Ok((cc, tr))
    });
    match result {
        Ok((cc, tr)) => {
            let end = |e: End| {
                cc.class
                    .end(e)
                    .map_or(String::new(), |a| end_label(&a.kind))
            };
            let cp = critical_points(&tr);
            let drift = tr.first_integral_drift(DRIFT_WINDOW).unwrap_or(f64::NAN);
            row.extend([
                cc.class.family.name().to_string(),
                cc.class.tangency.to_string(),
                end(End::Backward),
                end(End::Forward),
                cp.count_y().to_string(),
                cp.count_z().to_string(),
                fmt_f64(drift),
                cc.agree.to_string(),
                String::new(),
            ]);
        }
        Err(e) => {
            row.extend(std::iter::repeat(String::new()).take(HEADER.len() - 4));
            row.push(e.to_string());
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_expands_in_axis_order() {
        let g = Grid::parse("lambda=-1:1:3,mu=0,theta0=0.5:1.5:2").unwrap();
        assert_eq!(g.axes[0], vec![-1.0, 0.0, 1.0]);
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1], F1Params::new(-1.0, 0.0, 1.5));
    }

    #[test]
    fn grid_errors_name_the_token() {
        for (spec, token) in [
            ("lambda=1,mu=x,theta0=0", "'x'"),
            ("lambda=1,nu=0,theta0=0", "'nu'"),
            ("lambda=1,theta0=0", "'mu'"),
            ("lambda=1:2:0,mu=0,theta0=0", "'0'"),
            ("lambda=1,mu=0,theta0", "'theta0'"),
        ] {
            let e = Grid::parse(spec).unwrap_err().to_string();
            assert!(e.contains(token), "{spec}: {e}");
        }
    }

    #[test]
    fn trivial_direction_is_reported_in_the_row() {
        let row = sweep_row(&F1Params::new(0.0, 0.0, 1.0), 5.0);
        assert_eq!(row.len(), HEADER.len());
        assert!(row.last().unwrap().contains("(0, 0)"));
    }
}
