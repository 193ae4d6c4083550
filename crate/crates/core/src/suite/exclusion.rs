use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{pair, pairs, Configuration};
use crate::error::{Error, Result};
use crate::geometry::distance_to_set;
use crate::poly::{refine_critical_point, Polynomial};
use crate::verdict::{Kind, Verdict};

type C64 = Complex64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub zero: C64,
    pub multiplicity: usize,
    pub degree: usize,
    /// Distance `d` to the nearest other zero.
    pub separation: f64,
    /// `m₁ d / n`.
    pub walsh_radius: f64,
    /// Distance to the nearest critical point other than the zero itself.
    pub nearest_critical_distance: f64,
    pub walsh: Verdict,
    /// Largest number of zeros strictly on one side of a line through the zero.
    pub side_count: usize,
    pub nagy_center: C64,
    pub nagy_radius: f64,
    pub nagy: Verdict,
}

/// Largest count (with multiplicity) of `others` strictly on one side of a
/// line through `z`. Counts only change where the line passes through one of
/// the points, so it suffices to test one direction between consecutive
/// critical angles.
fn side_count(z: C64, others: &[(C64, usize)]) -> usize {
    let mut angles: Vec<f64> = others.iter().map(|&(w, _)| (w - z).arg().rem_euclid(PI)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut dirs: Vec<f64> = angles.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    if let (Some(&first), Some(&last)) = (angles.first(), angles.last()) {
        dirs.push((last + first + PI) / 2.0);
    }
    dirs.into_iter()
        .map(|theta| {
            let rot = C64::from_polar(1.0, -theta);
            let (mut left, mut right) = (0, 0);
            for &(w, m) in others {
                let y = ((w - z) * rot).im;
                if y > 0.0 {
                    left += m;
                } else if y < 0.0 {
                    right += m;
                }
            }
            left.max(right)
        })
        .max()
        .unwrap_or(0)
}

/// Critical-point exclusion around the zero with index `zero_index` (into
/// the distinct zeros as ordered by the root finder).
///
/// The Alexander–Walsh disk has radius `m₁ d / n`; the Sz.-Nagy disk is
/// internally tangent at the zero to the disk `K` of diameter `d` through the
/// zero and its nearest neighbour, with diameter `m₁ d / (m₁ + s)`. Both
/// statements concern critical points other than the zero itself, which is
/// a critical point of multiplicity `m₁ - 1`.
pub fn exclusion_check(f: &Polynomial, zero_index: usize, tol: Option<f64>) -> Result<ExclusionReport> {
    let cfg = Configuration::new(f)?;
    let entries = cfg.zeros.entries();
    if zero_index >= entries.len() {
        return Err(Error::IndexOutOfRange(zero_index));
    }
    if entries.len() < 2 {
        return Err(Error::SingleDistinctZero);
    }
    let z1 = entries[zero_index].location;
    let m1 = entries[zero_index].multiplicity;
    let others: Vec<(C64, usize)> = entries
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != zero_index)
        .map(|(_, r)| (r.location, r.multiplicity))
        .collect();
    let (z2, d) = others
        .iter()
        .map(|&(w, _)| (w, (w - z1).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two distinct zeros");
    let mut crit = cfg.crit.expanded();
    for _ in 1..m1 {
        let k = (0..crit.len())
            .min_by(|&a, &b| (crit[a] - z1).norm().total_cmp(&(crit[b] - z1).norm()))
            .expect("m₁ - 1 critical points at the zero");
        crit.swap_remove(k);
    }
    let n = cfg.degree;
    let tol = cfg.tolerance(tol);

    let walsh_radius = m1 as f64 * d / n as f64;
    let nearest = distance_to_set(z1, &crit);
    let walsh = Verdict::from_margin(
        "alexander_walsh",
        Kind::Theorem,
        nearest - walsh_radius,
        tol,
        json!({ "zero": pair(z1), "radius": walsh_radius, "nearest_critical_distance": nearest }),
    );

    let s = side_count(z1, &others);
    let diameter = m1 as f64 / (m1 + s) as f64 * d;
    let u = (z2 - z1) / d;
    let center = z1 + u * (diameter / 2.0);
    let clearance = distance_to_set(center, &crit) - diameter / 2.0;
    let nagy = Verdict::from_margin(
        "sz_nagy",
        Kind::Theorem,
        clearance,
        tol,
        json!({
            "zero": pair(z1),
            "side_count": s,
            "center": pair(center),
            "radius": diameter / 2.0,
            "critical_points": pairs(&crit),
        }),
    );
    Ok(ExclusionReport {
        zero: z1,
        multiplicity: m1,
        degree: n,
        separation: d,
        walsh_radius,
        nearest_critical_distance: nearest,
        walsh,
        side_count: s,
        nagy_center: center,
        nagy_radius: diameter / 2.0,
        nagy,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub critical_point: C64,
    pub psi: f64,
    /// `|Σ sin φ_k / r_k|`.
    pub sine_residual: f64,
    /// `|Σ_{one side} 1/d_k - Σ_{other side} 1/d_k|`.
    pub diameter_residual: f64,
    /// `Σ 1/r_k`, the scale of both residuals.
    pub scale: f64,
    pub within_tolerance: bool,
    /// Indices into the zeros listed with multiplicity.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub on_line: Vec<usize>,
    /// `|r_k / sin φ_k|`, infinite for zeros on the line.
    pub diameters: Vec<f64>,
}

/// The angular identities at a critical point `w` for the line through `w`
/// at angle `psi`. `w` is first refined against the zeros of `f` (see
/// [`refine_critical_point`]), so a critical point taken from
/// [`Polynomial::critical_points`] is evaluated at full accuracy.
pub fn critical_identities(f: &Polynomial, w: C64, psi: f64) -> Result<IdentityReport> {
    let cfg = Configuration::new(f)?;
    let w = refine_critical_point(&cfg.zeros, w);
    let zeros = cfg.zeros.expanded();
    if distance_to_set(w, &zeros) <= 1e-10 * (1.0 + cfg.scale) {
        return Err(Error::PointIsZero);
    }
    let rot = C64::from_polar(1.0, -psi);
    let mut report = IdentityReport {
        critical_point: w,
        psi,
        sine_residual: 0.0,
        diameter_residual: 0.0,
        scale: 0.0,
        within_tolerance: false,
        left: vec![],
        right: vec![],
        on_line: vec![],
        diameters: vec![],
    };
    let (mut sines, mut left_sum, mut right_sum) = (0.0, 0.0, 0.0);
    for (k, &z) in zeros.iter().enumerate() {
        let rel = (z - w) * rot;
        let r = rel.norm();
        let sin = rel.im / r;
        sines += sin / r;
        report.scale += 1.0 / r;
        if sin.abs() <= 1e-12 {
            report.on_line.push(k);
            report.diameters.push(f64::INFINITY);
        } else {
            report.diameters.push((r / sin).abs());
            if sin > 0.0 {
                report.left.push(k);
                left_sum += sin / r;
            } else {
                report.right.push(k);
                right_sum -= sin / r;
            }
        }
    }
    report.sine_residual = sines.abs();
    report.diameter_residual = (left_sum - right_sum).abs();
    report.within_tolerance = report.sine_residual.max(report.diameter_residual) <= 1e-8 * report.scale;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn example1_sits_on_the_walsh_boundary() {
        for n in 3..=10 {
            let mut roots = vec![c(1.0, 0.0); n - 1];
            roots.push(c(0.0, 0.0));
            let f = Polynomial::from_root_list(&roots, c(1.0, 0.0)).unwrap();
            let idx = f.roots().unwrap().entries().iter().position(|r| r.location.norm() < 1e-9).unwrap();
            let r = exclusion_check(&f, idx, None).unwrap();
            assert!((r.walsh_radius - 1.0 / n as f64).abs() < 1e-12);
            assert!((r.nearest_critical_distance - 1.0 / n as f64).abs() < 1e-9);
            assert!(r.walsh.not_violated() && r.nagy.not_violated());
            assert_eq!(r.side_count, n - 1);
        }
    }

    #[test]
    fn repeated_zero_is_not_its_own_obstruction() {
        let f = Polynomial::from_root_list(&[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        let idx = f.roots().unwrap().entries().iter().position(|r| r.multiplicity == 3).unwrap();
        let r = exclusion_check(&f, idx, None).unwrap();
        assert_eq!(r.multiplicity, 3);
        // free critical point at 3/2, exclusion radius 3/2
        assert!((r.nearest_critical_distance - 1.5).abs() < 1e-9 && r.walsh.not_violated());
    }

    #[test]
    fn degenerate_inputs() {
        let f = Polynomial::from_root_list(&[c(1.0, 0.0); 3], c(1.0, 0.0)).unwrap();
        assert_eq!(exclusion_check(&f, 0, None).unwrap_err(), Error::SingleDistinctZero);
        let g = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(exclusion_check(&g, 5, None).unwrap_err(), Error::IndexOutOfRange(5));
        assert_eq!(critical_identities(&g, c(1.0, 0.0), 0.0).unwrap_err(), Error::PointIsZero);
    }

    #[test]
    fn identities_at_cubic_critical_point() {
        let f = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]).unwrap();
        let r = critical_identities(&f, c(1.0 / 3f64.sqrt(), 0.0), PI / 2.0).unwrap();
        assert!(r.within_tolerance && r.on_line.is_empty());
        let g = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let r = critical_identities(&g, c(0.0, 0.0), 0.0).unwrap();
        assert_eq!(r.on_line.len(), 2);
        assert!(r.within_tolerance);
    }
}
