//! Circulant and Toeplitz forms of the zero matrix in the differentiator
//! basis.
//!
//! In the basis of [`super::differentiator_basis`], `diag(z)` becomes the
//! circulant with entry `(l, m)` equal to `a_{(m-l) mod n}` where
//! `a_j = (1/n) Σ_k z_k e^{2πikj/n}` (`k = 0..n`). When `z_0 = 0` the
//! coefficients sum to zero, and deleting row and column `0` leaves the
//! Toeplitz compression whose spectrum is the critical set.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix};

type C64 = Complex64;

fn dft_coefficients(zeros: &[C64]) -> Vec<C64> {
    let n = zeros.len();
    (0..n)
        .map(|j| {
            zeros
                .iter()
                .enumerate()
                .map(|(k, &z)| z * C64::from_polar(1.0, std::f64::consts::TAU * ((k * j) % n) as f64 / n as f64))
                .sum::<C64>()
                / n as f64
        })
        .collect()
}

/// The circulant representing `diag(zeros)` and its coefficients `a_0..a_{n-1}`.
pub fn circulant_from_zeros(zeros: &[C64]) -> (ComplexMatrix, Vec<C64>) {
    let n = zeros.len();
    let a = dft_coefficients(zeros);
    let m = ComplexMatrix::from_fn(n, n, |l, k| a[(k + n - l) % n]);
    (m, a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzInstance {
    /// `a_1..a_{n-1}`.
    pub a: Vec<C64>,
    pub a0: C64,
    pub matrix: ComplexMatrix,
}

impl ToeplitzInstance {
    pub fn new(a: Vec<C64>) -> Result<Self> {
        let n = a.len() + 1;
        if n < 3 {
            return Err(Error::DegreeTooSmall { required: 3, found: n });
        }
        let a0 = -a.iter().sum::<C64>();
        let coef = |d: usize| if d == 0 { a0 } else { a[d - 1] };
        let matrix = ComplexMatrix::from_fn(n - 1, n - 1, |i, j| coef((j + n - i) % n));
        Ok(Self { a, a0, matrix })
    }

    pub fn n(&self) -> usize {
        self.a.len() + 1
    }

    /// `Σ_{k>=1} |a_k|²`.
    pub fn bound(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Instance built from a zero set, re-indexed so that zero `index` is first
/// and translated to the origin. The matrix spectrum is then the critical
/// set shifted by `-zeros[index]`, and the bound is `σ₂²`.
pub fn toeplitz_from_zeros(zeros: &[C64], index: usize) -> Result<ToeplitzInstance> {
    if index >= zeros.len() {
        return Err(Error::IndexOutOfRange(index));
    }
    let origin = zeros[index];
    let mut z: Vec<C64> = vec![C64::new(0.0, 0.0)];
    z.extend(zeros.iter().enumerate().filter(|&(k, _)| k != index).map(|(_, &w)| w - origin));
    let a = dft_coefficients(&z);
    ToeplitzInstance::new(a[1..].to_vec())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzReport {
    pub n: usize,
    pub min_abs_eig_sq: f64,
    pub bound: f64,
    /// `bound - min_abs_eig_sq`.
    pub margin: f64,
    pub holds: bool,
    pub eigenvalues: Vec<C64>,
}

pub fn toeplitz_check(a: &[C64]) -> Result<ToeplitzReport> {
    let inst = ToeplitzInstance::new(a.to_vec())?;
    let ev = eigenvalues(&inst.matrix)?;
    let min = ev.iter().map(|z| z.norm_sqr()).fold(f64::INFINITY, f64::min);
    let bound = inst.bound();
    Ok(ToeplitzReport {
        n: inst.n(),
        min_abs_eig_sq: min,
        bound,
        margin: bound - min,
        holds: min <= bound + 1e-9,
        eigenvalues: ev,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzScan {
    pub trials: usize,
    pub violations: usize,
    /// Smallest relative margin `(bound - min|λ|²) / bound` seen.
    pub worst_relative_margin: f64,
    /// Coefficients `a_1..a_{n-1}` of the worst instance.
    pub worst: Vec<C64>,
}

/// Random instances with `n` uniform in `3..=max_n` and coefficients uniform
/// in the square `[-1, 1]²`. Trial `t` draws from a generator seeded with
/// `seed ^ t`, so the result does not depend on the thread count.
pub fn toeplitz_scan(trials: usize, max_n: usize, seed: u64) -> Result<ToeplitzScan> {
    if max_n < 3 {
        return Err(Error::InvalidConfig("max_n must be at least 3".into()));
    }
    let results: Vec<Result<(f64, bool, Vec<C64>)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
            let n = rng.gen_range(3..=max_n);
            let a: Vec<C64> = (0..n - 1)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let rep = toeplitz_check(&a)?;
            Ok((rep.margin / rep.bound.max(f64::MIN_POSITIVE), rep.holds, a))
        })
        .collect();
    let mut scan = ToeplitzScan {
        trials,
        violations: 0,
        worst_relative_margin: f64::INFINITY,
        worst: vec![],
    };
    for r in results {
        let (rel, holds, a) = r?;
        if !holds {
            scan.violations += 1;
        }
        if rel < scan.worst_relative_margin {
            scan.worst_relative_margin = rel;
            scan.worst = a;
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::multiset_distance;
    use crate::poly::Polynomial;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn boundary_instance() {
        let inst = ToeplitzInstance::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(inst.a0, c(-1.0, 0.0));
        assert_eq!(inst.matrix[(0, 0)], c(-1.0, 0.0));
        assert_eq!(inst.matrix[(0, 1)], c(1.0, 0.0));
        assert_eq!(inst.matrix[(1, 0)], c(0.0, 0.0));
        let rep = toeplitz_check(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((rep.min_abs_eig_sq - 1.0).abs() < 1e-12 && rep.bound == 1.0 && rep.holds);
    }

    #[test]
    fn circulant_spectrum_is_the_zero_set() {
        let zeros = [c(0.3, 1.0), c(-1.0, 0.2), c(2.0, -0.5), c(0.0, 0.0), c(0.7, 0.7)];
        let (m, _) = circulant_from_zeros(&zeros);
        assert!(multiset_distance(&eigenvalues(&m).unwrap(), &zeros) < 1e-12);
    }

    #[test]
    fn toeplitz_from_zeros_gives_critical_points() {
        let zeros = [c(1.0, 1.0), c(-1.0, 0.5), c(0.5, -2.0), c(2.0, 0.0)];
        let f = Polynomial::from_root_list(&zeros, c(1.0, 0.0)).unwrap();
        let crit: Vec<C64> = f.critical_points().unwrap().expanded().into_iter().map(|w| w - zeros[2]).collect();
        let inst = toeplitz_from_zeros(&zeros, 2).unwrap();
        assert!(multiset_distance(&eigenvalues(&inst.matrix).unwrap(), &crit) < 1e-12);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = toeplitz_scan(200, 8, 3).unwrap();
        let b = toeplitz_scan(200, 8, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
    }
}
