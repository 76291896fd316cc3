//! The seven built-in presets.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use soltrans_core::classifier::Family;
use soltrans_core::geometry::KillingField;

/// Critical-point counts and family a preset is documented to show.
/// `None` where the description leaves a count open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expected {
    pub count_y: Option<usize>,
    pub count_z: Option<usize>,
    pub family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub id: u8,
    pub x: KillingField,
    pub v: KillingField,
    pub theta0: f64,
    pub expected: Expected,
    pub description: &'static str,
}

const fn expected(count_y: Option<usize>, count_z: Option<usize>, family: Family) -> Expected {
    Expected {
        count_y,
        count_z,
        family,
    }
}

pub const PRESETS: [FigurePreset; 7] = [
    FigurePreset {
        id: 1,
        x: KillingField::F1,
        v: KillingField::new(0.0, 3.0, 0.0),
        theta0: FRAC_PI_2,
        expected: expected(Some(1), Some(0), Family::GrimReaperSlab),
        description: "tilted grim reaper",
    },
    FigurePreset {
        id: 2,
        x: KillingField::F1,
        v: KillingField::new(0.0, FRAC_PI_4, 0.0),
        theta0: FRAC_PI_2,
        expected: expected(Some(1), Some(0), Family::HalfPlaneGraph),
        description: "graph over a half-plane, one critical point of y",
    },
    FigurePreset {
        id: 3,
        x: KillingField::F1,
        v: KillingField::new(0.0, -PI / 8.0, 0.0),
        theta0: FRAC_PI_4,
        expected: expected(Some(0), Some(0), Family::HalfPlaneGraph),
        description: "graph over a half-plane, y without critical points",
    },
    FigurePreset {
        id: 4,
        x: KillingField::F1,
        v: KillingField::new(0.0, 0.0, -1.0),
        theta0: 0.0,
        expected: expected(Some(2), Some(1), Family::GeneralF1),
        description: "z -> -inf both ways, symmetric",
    },
    FigurePreset {
        id: 5,
        x: KillingField::F1,
        v: KillingField::new(0.0, 2.0, -1.0),
        theta0: 0.0,
        expected: expected(Some(2), Some(1), Family::GeneralF1),
        description: "z -> -inf both ways, not symmetric",
    },
    FigurePreset {
        id: 6,
        x: KillingField::F1,
        v: KillingField::new(0.0, 0.8, -0.3),
        theta0: 2.0,
        expected: expected(Some(1), Some(0), Family::GeneralF1),
        description: "z unbounded both ways and strictly monotone",
    },
    FigurePreset {
        id: 7,
        x: KillingField::F1,
        v: KillingField::new(0.0, 3.0, 3.0),
        theta0: 2.0,
        // z -> +inf both ways, so z has one minimum.
        expected: expected(None, Some(1), Family::GeneralF1),
        description: "z -> +inf both ways",
    },
];

pub fn preset(id: u8) -> Option<&'static FigurePreset> {
    PRESETS.iter().find(|p| p.id == id)
}
