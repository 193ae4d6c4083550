//! Checkers for the statements relating zeros, critical points and
//! variances. Each returns a [`Verdict`] (or a report containing verdicts)
//! with the margin by which the statement holds and a witness from which the
//! outcome can be recomputed.

mod exclusion;
mod measure;
mod univalence;
mod variance;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{p_variance, WeightedPointSet};
use crate::poly::{Polynomial, RootMultiset};
use crate::verdict::default_tolerance;

pub use exclusion::{critical_identities, exclusion_check, ExclusionReport, IdentityReport};
pub use measure::{cauchy_conjecture_check, CauchyReport};
pub use univalence::{nonunivalence_search, NonunivalenceReport, DEFAULT_POLAR_GRID};
pub use variance::{
    grace_circulant_check, real_zero_refined_check, reverse_check, schmeisser_check, variance_check,
    DEFAULT_GRID_DENSITY,
};

type C64 = Complex64;

/// Zeros and critical points of a polynomial of degree at least two.
pub(crate) struct Configuration {
    pub zeros: RootMultiset,
    pub crit: RootMultiset,
    pub degree: usize,
    pub scale: f64,
}

impl Configuration {
    pub fn new(f: &Polynomial) -> Result<Self> {
        if f.degree() < 2 {
            return Err(Error::DegreeTooSmall { required: 2, found: f.degree() });
        }
        let zeros = f.roots()?;
        let crit = f.critical_points()?;
        let scale = zeros.max_modulus();
        Ok(Self {
            zeros,
            crit,
            degree: f.degree(),
            scale,
        })
    }

    pub fn tolerance(&self, tol: Option<f64>) -> f64 {
        tol.unwrap_or_else(|| default_tolerance(self.scale))
    }

    pub fn sigma(&self, p: f64) -> Result<f64> {
        Ok(p_variance(&WeightedPointSet::from_roots(&self.zeros)?, p)?.value)
    }

    pub fn zero_locations(&self) -> Vec<C64> {
        self.zeros.locations()
    }

    pub fn crit_locations(&self) -> Vec<C64> {
        self.crit.locations()
    }
}

pub(crate) fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub(crate) fn pairs(zs: &[C64]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| pair(z)).collect()
}
