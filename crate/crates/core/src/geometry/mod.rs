//! Variance statistics of weighted planar point sets and Hausdorff distances.
//!
//! Every statistic here is invariant under rigid motions and homogeneous of
//! degree one under scaling. The solvers therefore work on a normalized copy
//! of the input (translated to the barycenter and scaled to unit spread) and
//! map the result back.

mod disk;
mod hull;
mod variance;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use disk::{chebyshev_disk, chebyshev_disk_seeded};
pub use hull::{convex_hull, distance_to_hull, max_distance_to_set_over_hull, point_in_hull};
pub use variance::{optimality_residual, p_variance};

use crate::error::{Error, Result};
use crate::poly::RootMultiset;

type C64 = Complex64;

/// A finite set of points with positive weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct WeightedPointSet {
    points: Vec<(C64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct RawAtom {
    re: f64,
    im: f64,
    #[serde(default = "unit_weight")]
    w: f64,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    atoms: Vec<RawAtom>,
}

impl TryFrom<RawSet> for WeightedPointSet {
    type Error = Error;
    fn try_from(raw: RawSet) -> Result<Self> {
        WeightedPointSet::new(raw.atoms.into_iter().map(|a| (C64::new(a.re, a.im), a.w)).collect())
    }
}

impl From<WeightedPointSet> for RawSet {
    fn from(s: WeightedPointSet) -> Self {
        RawSet {
            atoms: s
                .points
                .into_iter()
                .map(|(z, w)| RawAtom { re: z.re, im: z.im, w })
                .collect(),
        }
    }
}

impl WeightedPointSet {
    pub fn new(points: Vec<(C64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for &(z, w) in &points {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight(w));
            }
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::Parse(format!("non-finite point {z}")));
            }
        }
        Ok(Self { points })
    }

    /// Unit weight on every point.
    pub fn uniform(points: &[C64]) -> Result<Self> {
        Self::new(points.iter().map(|&z| (z, 1.0)).collect())
    }

    /// Distinct zeros weighted by multiplicity.
    pub fn from_roots(roots: &RootMultiset) -> Result<Self> {
        Self::new(
            roots
                .entries()
                .iter()
                .map(|r| (r.location, r.multiplicity as f64))
                .collect(),
        )
    }

    pub fn points(&self) -> &[(C64, f64)] {
        &self.points
    }

    pub fn locations(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.points.iter().map(|p| p.1).sum()
    }

    /// Image under `z -> a z + b`, weights unchanged.
    pub fn affine(&self, a: C64, b: C64) -> Self {
        Self {
            points: self.points.iter().map(|&(z, w)| (a * z + b, w)).collect(),
        }
    }
}

/// Optimal center and value of a p-variance problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterResult {
    pub center: C64,
    pub value: f64,
    /// `f64::INFINITY` for the Chebyshev radius.
    pub p: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: C64,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, z: C64, slack: f64) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HausdorffMode {
    OneSided,
    Symmetric,
}

pub fn barycenter(s: &WeightedPointSet) -> C64 {
    let total = s.total_weight();
    s.points.iter().map(|&(z, w)| z * w).sum::<C64>() / total
}

/// `(Σ w |z - c|^p / Σ w)^(1/p)` for finite `p`, or `max |z - c|`.
pub fn objective(s: &WeightedPointSet, c: C64, p: f64) -> f64 {
    if p.is_infinite() {
        return s.points.iter().map(|&(z, _)| (z - c).norm()).fold(0.0, f64::max);
    }
    let total = s.total_weight();
    let sum: f64 = s.points.iter().map(|&(z, w)| w * (z - c).norm().powf(p)).sum();
    (sum / total).powf(1.0 / p)
}

/// Distance from `z` to the nearest point of `set`.
pub fn distance_to_set(z: C64, set: &[C64]) -> f64 {
    set.iter().map(|&w| (z - w).norm()).fold(f64::INFINITY, f64::min)
}

/// `max_{a in A} min_{b in B} |a - b|`, or its symmetrization.
pub fn hausdorff(a: &[C64], b: &[C64], mode: HausdorffMode) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty);
    }
    let one = |x: &[C64], y: &[C64]| x.iter().map(|&z| distance_to_set(z, y)).fold(0.0, f64::max);
    Ok(match mode {
        HausdorffMode::OneSided => one(a, b),
        HausdorffMode::Symmetric => one(a, b).max(one(b, a)),
    })
}

/// Index of the point of `a` realizing the one-sided distance to `b`.
pub fn hausdorff_witness(a: &[C64], b: &[C64]) -> Option<(usize, f64)> {
    a.iter()
        .enumerate()
        .map(|(i, &z)| (i, distance_to_set(z, b)))
        .max_by(|x, y| x.1.total_cmp(&y.1))
}

/// Circular deviation of `n` points for `n` in {2, 3, 4}.
///
/// The unimodular zero-sum vectors are, up to rotation and permutation,
/// `(1, -1)`, `(1, ω, ω²)` and `(1, -1, c, -c)`. For four points the free
/// phase `c` aligns the two differences, leaving a maximum over pairings.
pub fn circular_deviation(points: &[C64]) -> Result<f64> {
    let z = points;
    match z.len() {
        2 => Ok((z[0] - z[1]).norm() / 2.0),
        3 => {
            let omega = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
            let w2 = omega * omega;
            let a = (z[0] + omega * z[1] + w2 * z[2]).norm();
            let b = (z[0] + w2 * z[1] + omega * z[2]).norm();
            Ok(a.max(b) / 3.0)
        }
        4 => {
            let pair = |i: usize, j: usize, k: usize, l: usize| (z[i] - z[j]).norm() + (z[k] - z[l]).norm();
            Ok(pair(0, 1, 2, 3).max(pair(0, 2, 1, 3)).max(pair(0, 3, 1, 2)) / 4.0)
        }
        n => Err(Error::UnsupportedSize(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn barycenters() {
        let s = WeightedPointSet::uniform(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(barycenter(&s), c(0.5, 0.0));
        let n = 3.0;
        let s = WeightedPointSet::new(vec![(c(1.0, 0.0), 1.0), (c(0.0, 1.0), n), (c(0.0, -1.0), n)]).unwrap();
        assert!((barycenter(&s) - c(1.0 / 7.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hausdorff_examples() {
        let n = 5.0;
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.0 / n, 0.0), c(1.0, 0.0)];
        assert!((hausdorff(&a, &b, HausdorffMode::OneSided).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(hausdorff(&a, &a, HausdorffMode::Symmetric).unwrap(), 0.0);
        let b = [c(3.0, 0.0), c(0.0, 4.0)];
        assert_eq!(hausdorff(&[c(0.0, 0.0)], &b, HausdorffMode::OneSided).unwrap(), 3.0);
        assert_eq!(hausdorff(&[c(0.0, 0.0)], &b, HausdorffMode::Symmetric).unwrap(), 4.0);
        assert!(hausdorff(&[], &b, HausdorffMode::OneSided).is_err());
    }

    #[test]
    fn circular_deviation_examples() {
        let v = circular_deviation(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(circular_deviation(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(), 1.0);
        assert!(circular_deviation(&[c(0.0, 0.0); 5]).is_err());
    }

    #[test]
    fn json_weights_default_to_one() {
        let s: WeightedPointSet = serde_json::from_str(r#"{"atoms":[{"re":1,"im":0},{"re":0,"im":2,"w":3}]}"#).unwrap();
        assert_eq!(s.weights(), vec![1.0, 3.0]);
        assert!(serde_json::from_str::<WeightedPointSet>(r#"{"atoms":[{"re":1,"im":0,"w":-1}]}"#).is_err());
    }
}
