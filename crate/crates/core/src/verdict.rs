//! Three-valued outcomes of numerical checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Width of the guard band, in units of the check tolerance.
pub const GUARD: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
}

/// Whether the checked statement is a theorem (a violation is a defect of
/// the computation) or an open or disputed statement (a violation is a
/// finding).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Theorem,
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub kind: Kind,
    pub status: Status,
    /// Positive when the statement holds with room to spare.
    pub margin: f64,
    /// Set when `|margin|` is inside the guard band.
    pub boundary: bool,
    pub witness: Value,
    pub tolerances: BTreeMap<String, f64>,
}

impl Verdict {
    pub fn from_margin(check: &str, kind: Kind, margin: f64, tol: f64, witness: Value) -> Self {
        let status = classify(margin, tol);
        let mut tolerances = BTreeMap::new();
        tolerances.insert("margin".to_string(), tol);
        Self {
            check: check.to_string(),
            kind,
            status,
            margin,
            boundary: status == Status::Inconclusive,
            witness,
            tolerances,
        }
    }

    /// A semidecision that found nothing: inconclusive by construction.
    pub fn inconclusive(check: &str, kind: Kind, witness: Value) -> Self {
        Self {
            check: check.to_string(),
            kind,
            status: Status::Inconclusive,
            margin: f64::NAN,
            boundary: false,
            witness,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn with_tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn violated(&self) -> bool {
        self.status == Status::Violated
    }

    /// Holds or sits on the boundary.
    pub fn not_violated(&self) -> bool {
        self.status != Status::Violated
    }
}

pub fn classify(margin: f64, tol: f64) -> Status {
    if margin.is_nan() {
        Status::Inconclusive
    } else if margin > GUARD * tol {
        Status::Holds
    } else if margin < -GUARD * tol {
        Status::Violated
    } else {
        Status::Inconclusive
    }
}

/// Default absolute tolerance for a configuration of the given scale.
pub fn default_tolerance(scale: f64) -> f64 {
    1e-9 * (1.0 + scale)
}
