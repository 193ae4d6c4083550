use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{pair, Configuration};
use crate::error::Result;
use crate::geometry::{distance_to_set, Disk};
use crate::poly::Polynomial;
use crate::verdict::{Kind, Verdict};

type C64 = Complex64;

/// Radii and angles per polar grid in [`nonunivalence_search`].
pub const DEFAULT_POLAR_GRID: usize = 48;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonunivalenceReport {
    pub found: bool,
    pub pair: Option<[C64; 2]>,
    pub residual: Option<f64>,
    pub disk: Disk,
    /// `R sin(π/n)` with `R` the distance from the center to the nearest
    /// critical point: `F` is univalent on the concentric disk of this radius.
    pub univalence_radius: f64,
    /// `σ₁(F) sin(π/n)`: beyond this radius the conjecture predicts a pair.
    pub conjecture_radius: f64,
    pub verdict: Verdict,
}

/// `(F(z) - F(z1)) / (z - z1)`.
fn difference_quotient(f: &Polynomial, z1: C64) -> Result<Polynomial> {
    let c = f.coeffs();
    let n = f.degree();
    let mut q = vec![C64::new(0.0, 0.0); n];
    q[n - 1] = c[n];
    for k in (1..n).rev() {
        q[k - 1] = c[k] + z1 * q[k];
    }
    Polynomial::new(q)
}

fn refine(f: &Polynomial, target: C64, mut z: C64) -> C64 {
    for _ in 0..30 {
        let (v, d) = f.eval_with_derivative(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = (v - target) / d;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Searches the closed disk for `z1 != z2` with `F(z1) = F(z2)`.
///
/// For each `z1` on a `grid x grid` polar grid (plus the center), all roots
/// `z2` of the difference quotient are computed; a pair is accepted when both
/// points lie in the disk, they are more than `1e-6` apart, and the
/// Newton-refined residual is at most `1e-10 max(1, |F(z1)|)`. Finding no pair
/// proves nothing, so the verdict is then inconclusive.
pub fn nonunivalence_search(f: &Polynomial, disk: Disk, grid: usize) -> Result<NonunivalenceReport> {
    let cfg = Configuration::new(f)?;
    let n = cfg.degree;
    let grid = grid.max(1);
    let mut starts = vec![disk.center];
    for i in 1..=grid {
        let r = disk.radius * i as f64 / grid as f64;
        starts.extend((0..grid).map(|j| disk.center + C64::from_polar(r, TAU * j as f64 / grid as f64)));
    }
    let inside = |z: C64| (z - disk.center).norm() <= disk.radius * (1.0 + 1e-12);
    let hit = starts.par_iter().find_map_first(|&z1| {
        let target = f.evaluate(z1);
        let q = difference_quotient(f, z1).ok()?;
        let roots = q.roots().ok()?;
        roots.locations().into_iter().find_map(|z2| {
            let z2 = refine(f, target, z2);
            let residual = (f.evaluate(z2) - target).norm();
            (inside(z2) && (z2 - z1).norm() > 1e-6 && residual <= 1e-10 * target.norm().max(1.0))
                .then_some(([z1, z2], residual))
        })
    });
    let sin = (PI / n as f64).sin();
    let univalence_radius = distance_to_set(disk.center, &cfg.crit_locations()) * sin;
    let conjecture_radius = cfg.sigma(1.0)? * sin;
    let witness = json!({
        "disk": { "center": pair(disk.center), "radius": disk.radius },
        "pair": hit.map(|(p, _)| [pair(p[0]), pair(p[1])]),
        "univalence_radius": univalence_radius,
        "conjecture_radius": conjecture_radius,
        "grid": grid,
    });
    let verdict = match hit {
        Some((p, _)) => Verdict::from_margin("nonunivalence", Kind::Conjecture, (p[0] - p[1]).norm(), 1e-7, witness),
        None => Verdict::inconclusive("nonunivalence", Kind::Conjecture, witness),
    };
    Ok(NonunivalenceReport {
        found: hit.is_some(),
        pair: hit.map(|h| h.0),
        residual: hit.map(|h| h.1),
        disk,
        univalence_radius,
        conjecture_radius,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn quadratic_collides_across_the_critical_point() {
        let a = c(1.0, 0.0);
        let f = Polynomial::new(vec![c(0.0, 0.0), -a, c(1.0, 0.0)]).unwrap();
        let disk = Disk { center: c(0.0, 0.0), radius: 0.55 };
        let r = nonunivalence_search(&f, disk, DEFAULT_POLAR_GRID).unwrap();
        assert!(r.found);
        let [z1, z2] = r.pair.unwrap();
        assert!((z1 + z2 - a).norm() < 1e-9);
        assert_eq!(r.verdict.status, Status::Holds);
        assert!((r.conjecture_radius - 0.5).abs() < 1e-9);
    }

    #[test]
    fn monomial_rotations() {
        let f = Polynomial::from_real(&[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = nonunivalence_search(&f, Disk { center: c(0.0, 0.0), radius: 0.3 }, 12).unwrap();
        let [z1, z2] = r.pair.unwrap();
        assert!((z1.powi(4) - z2.powi(4)).norm() < 1e-10);
    }

    #[test]
    fn small_disk_finds_nothing() {
        let f = Polynomial::from_real(&[0.0, -1.0, 1.0]).unwrap();
        let r = nonunivalence_search(&f, Disk { center: c(0.0, 0.0), radius: 0.2 }, 16).unwrap();
        assert!(!r.found);
        assert_eq!(r.verdict.status, Status::Inconclusive);
    }
}
