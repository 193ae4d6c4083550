//! Cauchy transforms `C_μ(z) = Σ α_k / (z - z_k)` of finite positive atomic
//! measures and the zero sets attached to them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{chebyshev_disk, distance_to_set, WeightedPointSet};
use crate::linalg::{eigenvalues, ComplexMatrix};
use crate::operator::compress;
use crate::poly::Polynomial;

type C64 = Complex64;

/// A finite positive measure with pairwise distinct atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightedPointSet", into = "WeightedPointSet")]
pub struct PointMeasure {
    atoms: Vec<(C64, f64)>,
}

impl TryFrom<WeightedPointSet> for PointMeasure {
    type Error = Error;
    fn try_from(s: WeightedPointSet) -> Result<Self> {
        PointMeasure::new(s.points().to_vec())
    }
}

impl From<PointMeasure> for WeightedPointSet {
    fn from(m: PointMeasure) -> Self {
        WeightedPointSet::new(m.atoms).expect("validated on construction")
    }
}

impl PointMeasure {
    /// Validates weights and merges atoms closer than `1e-12 · scale`.
    pub fn new(atoms: Vec<(C64, f64)>) -> Result<Self> {
        let set = WeightedPointSet::new(atoms)?;
        let scale = 1.0 + set.points().iter().map(|p| p.0.norm()).fold(0.0, f64::max);
        let mut merged: Vec<(C64, f64)> = Vec::new();
        for &(z, w) in set.points() {
            match merged.iter_mut().find(|(y, _)| (z - *y).norm() <= 1e-12 * scale) {
                Some(slot) => slot.1 += w,
                None => merged.push((z, w)),
            }
        }
        Ok(Self { atoms: merged })
    }

    /// Unit mass on every listed point (repeated points accumulate).
    pub fn uniform(points: &[C64]) -> Result<Self> {
        Self::new(points.iter().map(|&z| (z, 1.0)).collect())
    }

    pub fn atoms(&self) -> &[(C64, f64)] {
        &self.atoms
    }

    pub fn locations(&self) -> Vec<C64> {
        self.atoms.iter().map(|a| a.0).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.1).collect()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Self {
        let t = self.total_mass();
        Self {
            atoms: self.atoms.iter().map(|&(z, w)| (z, w / t)).collect(),
        }
    }

    pub fn as_point_set(&self) -> WeightedPointSet {
        self.clone().into()
    }

    fn scale(&self) -> f64 {
        1.0 + self.atoms.iter().map(|a| a.0.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureStats {
    pub barycenter: C64,
    /// `(p, (Σ α_k |z_k - E|^p)^(1/p))` for the normalized measure.
    pub sigma_p: Vec<(f64, f64)>,
    pub sigma_inf: f64,
    /// Indices of the atoms of minimal weight.
    pub s_min: Vec<usize>,
}

pub fn measure_stats(mu: &PointMeasure, ps: &[f64]) -> Result<MeasureStats> {
    let nu = mu.normalized();
    let e: C64 = nu.atoms.iter().map(|&(z, w)| z * w).sum();
    let mut sigma_p = Vec::with_capacity(ps.len());
    for &p in ps {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        let v = if p.is_infinite() {
            nu.atoms.iter().map(|&(z, _)| (z - e).norm()).fold(0.0, f64::max)
        } else {
            nu.atoms.iter().map(|&(z, w)| w * (z - e).norm().powf(p)).sum::<f64>().powf(1.0 / p)
        };
        sigma_p.push((p, v));
    }
    let min_w = nu.atoms.iter().map(|a| a.1).fold(f64::INFINITY, f64::min);
    let s_min = (0..nu.len()).filter(|&k| nu.atoms[k].1 <= min_w * (1.0 + 1e-12)).collect();
    Ok(MeasureStats {
        barycenter: e,
        sigma_p,
        sigma_inf: chebyshev_disk(&nu.locations()).radius,
        s_min,
    })
}

pub fn sigma2(mu: &PointMeasure) -> f64 {
    measure_stats(mu, &[2.0]).map(|s| s.sigma_p[0].1).unwrap_or(f64::NAN)
}

pub fn cauchy_eval(mu: &PointMeasure, z: C64) -> Result<C64> {
    let tol = 1e-14 * mu.scale();
    let mut sum = C64::new(0.0, 0.0);
    for &(zk, w) in &mu.atoms {
        let d = z - zk;
        if d.norm() <= tol {
            return Err(Error::AtAtom);
        }
        sum += w / d;
    }
    Ok(sum)
}

/// Zeros of the Cauchy transform: the eigenvalues of the compression of
/// `diag(z_k)` to the complement of `(√α_k)`.
pub fn transform_zeros(mu: &PointMeasure) -> Result<Vec<C64>> {
    if mu.len() < 2 {
        return Err(Error::DegreeTooSmall { required: 2, found: mu.len() });
    }
    let total = mu.total_mass();
    let v: Vec<C64> = mu.atoms.iter().map(|&(_, w)| C64::new((w / total).sqrt(), 0.0)).collect();
    let b = compress(&ComplexMatrix::from_diag(&mu.locations()), &v)?;
    eigenvalues(&b)
}

/// `Σ α_k Π_{j≠k} (z - z_j)`, whose zeros are the transform zeros.
pub fn numerator(mu: &PointMeasure) -> Result<Polynomial> {
    let locs = mu.locations();
    let mut coeffs = vec![C64::new(0.0, 0.0); locs.len()];
    for (k, &(_, w)) in mu.atoms.iter().enumerate() {
        let others: Vec<C64> = locs.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &z)| z).collect();
        let term = Polynomial::from_root_list(&others, C64::new(w, 0.0))?;
        for (c, t) in coeffs.iter_mut().zip(term.coeffs()) {
            *c += t;
        }
    }
    Polynomial::new(coeffs)
}

/// Transform zeros together with the barycenter, as a set.
pub fn extended_zero_set(mu: &PointMeasure) -> Result<Vec<C64>> {
    let mut out = transform_zeros(mu)?;
    out.push(measure_stats(mu, &[])?.barycenter);
    let tol = 1e-12 * mu.scale();
    let mut set: Vec<C64> = Vec::with_capacity(out.len());
    for z in out {
        if set.iter().all(|y| (z - y).norm() > tol) {
            set.push(z);
        }
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankOnePerturbation {
    /// `A + T_a`.
    pub operator: ComplexMatrix,
    /// `T_a`.
    pub perturbation: ComplexMatrix,
}

/// The rank-one perturbation whose spectrum is `{a}` together with the
/// transform zeros, written in the orthonormal basis of `L²(μ)` given by the
/// normalized atom indicators. There `A = diag(z_k)` and
/// `T_a = -u vᵀ` with `u_l = √α_l (z_l - a)` and `v_k = √α_k`, so that
/// `‖T_E‖ = σ₂(μ)` and `T_E² = 0` at the barycenter `E`.
pub fn rank_one_perturbation(mu: &PointMeasure, a: C64) -> Result<RankOnePerturbation> {
    if !mu.is_normalized() {
        return Err(Error::NotNormalized(mu.total_mass()));
    }
    let sq: Vec<f64> = mu.atoms.iter().map(|a| a.1.sqrt()).collect();
    let u: Vec<C64> = mu.atoms.iter().zip(&sq).map(|(&(z, _), &s)| -(z - a) * s).collect();
    let v: Vec<C64> = sq.iter().map(|&s| C64::new(s, 0.0)).collect();
    let t = ComplexMatrix::outer(&u, &v);
    let op = &ComplexMatrix::from_diag(&mu.locations()) + &t;
    Ok(RankOnePerturbation {
        operator: op,
        perturbation: t,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub extended_zero_set: Vec<C64>,
    pub expected: Vec<C64>,
    /// Largest distance between computed and closed-form points.
    pub deviation: f64,
    pub all_real: bool,
    pub sigma_inf: f64,
    /// Distance from `i` to the extended zero set.
    pub distance_from_i: f64,
    /// `distance_from_i > sigma_inf`: the Hausdorff claims fail.
    pub claims_violated: bool,
}

/// The measure `(δ_1 + n δ_i + n δ_{-i}) / (2n + 1)` of `(z-1)(z²+1)ⁿ`.
pub fn counterexample_measure(n: usize) -> Result<PointMeasure> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, found: n });
    }
    let t = (2 * n + 1) as f64;
    let nf = n as f64;
    PointMeasure::new(vec![
        (C64::new(1.0, 0.0), 1.0 / t),
        (C64::new(0.0, 1.0), nf / t),
        (C64::new(0.0, -1.0), nf / t),
    ])
}

pub fn counterexample_family(n: usize) -> Result<(PointMeasure, CounterexampleReport)> {
    let mu = counterexample_measure(n)?;
    let we = extended_zero_set(&mu)?;
    let t = (2 * n + 1) as f64;
    let nf = n as f64;
    let root = (nf * nf - 2.0 * nf - 1.0).sqrt();
    let expected = vec![
        C64::new((nf + root) / t, 0.0),
        C64::new((nf - root) / t, 0.0),
        C64::new(1.0 / t, 0.0),
    ];
    let deviation = crate::linalg::multiset_distance(&we, &expected);
    let scale = mu.scale();
    let stats = measure_stats(&mu, &[])?;
    let distance_from_i = distance_to_set(C64::new(0.0, 1.0), &we);
    let report = CounterexampleReport {
        n,
        all_real: we.iter().all(|z| z.im.abs() <= 1e-10 * scale),
        extended_zero_set: we,
        expected,
        deviation,
        sigma_inf: stats.sigma_inf,
        distance_from_i,
        claims_violated: distance_from_i > stats.sigma_inf,
    };
    Ok((mu, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::multiset_distance;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn evaluation() {
        let d0 = PointMeasure::new(vec![(c(0.0, 0.0), 1.0)]).unwrap();
        assert_eq!(cauchy_eval(&d0, c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(cauchy_eval(&d0, c(0.0, 0.0)), Err(Error::AtAtom));
        let sym = PointMeasure::new(vec![(c(1.0, 0.0), 0.5), (c(-1.0, 0.0), 0.5)]).unwrap();
        assert_eq!(cauchy_eval(&sym, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn duplicates_merge() {
        let m = PointMeasure::new(vec![(c(1.0, 0.0), 1.0), (c(1.0, 0.0), 2.0), (c(0.0, 0.0), 1.0)]).unwrap();
        assert_eq!(m.atoms(), &[(c(1.0, 0.0), 3.0), (c(0.0, 0.0), 1.0)]);
    }

    #[test]
    fn two_atoms_zero_at_weight() {
        let alpha = 0.3;
        let m = PointMeasure::new(vec![(c(0.0, 0.0), alpha), (c(1.0, 0.0), 1.0 - alpha)]).unwrap();
        let z = transform_zeros(&m).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0] - c(alpha, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn uniform_on_two_points() {
        let m = PointMeasure::uniform(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let we = extended_zero_set(&m).unwrap();
        assert_eq!(we.len(), 1);
        assert!((we[0] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn counterexample_three() {
        let (mu, rep) = counterexample_family(3).unwrap();
        assert!(rep.deviation < 1e-12 && rep.all_real && rep.claims_violated);
        assert!((rep.sigma_inf - 1.0).abs() < 1e-15);
        let zeros = transform_zeros(&mu).unwrap();
        let r2 = 2f64.sqrt();
        assert!(multiset_distance(&zeros, &[c((3.0 + r2) / 7.0, 0.0), c((3.0 - r2) / 7.0, 0.0)]) < 1e-12);
        // the barycenter joins the extended set without being a zero of the transform
        assert!(cauchy_eval(&mu, c(1.0 / 7.0, 0.0)).unwrap().norm() > 1e-2);
        assert!(counterexample_family(2).is_err());
    }

    #[test]
    fn rank_one_at_barycenter() {
        let m = PointMeasure::uniform(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap().normalized();
        let r = rank_one_perturbation(&m, c(0.5, 0.0)).unwrap();
        let ev = eigenvalues(&r.operator).unwrap();
        assert!(multiset_distance(&ev, &[c(0.5, 0.0), c(0.5, 0.0)]) < 1e-7);
        let t2 = r.perturbation.matmul(&r.perturbation).unwrap();
        assert!(t2.max_abs() < 1e-15);
        assert!((r.perturbation.spectral_norm() - 0.5).abs() < 1e-12);
        assert!(rank_one_perturbation(&PointMeasure::uniform(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn numerator_agrees_with_compression() {
        let m = PointMeasure::new(vec![(c(0.0, 1.0), 0.2), (c(2.0, 0.0), 0.5), (c(-1.0, -1.0), 0.3), (c(0.5, 0.5), 1.0)]).unwrap();
        let a = transform_zeros(&m).unwrap();
        let b = numerator(&m).unwrap().roots().unwrap().expanded();
        assert!(multiset_distance(&a, &b) < 1e-10);
    }
}
