#![allow(dead_code)]

use polyvar::poly::{Polynomial, Root, RootMultiset};
use polyvar::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn in_disk(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    loop {
        let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm_sqr() <= 1.0 {
            return z * r;
        }
    }
}

/// `k` points in the disk of radius `r`, pairwise at least `sep` apart.
pub fn separated(rng: &mut ChaCha8Rng, k: usize, r: f64, sep: f64) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::with_capacity(k);
    while out.len() < k {
        let z = in_disk(rng, r);
        if out.iter().all(|w| (z - w).norm() >= sep) {
            out.push(z);
        }
    }
    out
}

/// `k` reals in `[-r, r]`, pairwise at least `sep` apart.
pub fn separated_reals(rng: &mut ChaCha8Rng, k: usize, r: f64, sep: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(k);
    while out.len() < k {
        let x = rng.gen_range(-r..r);
        if out.iter().all(|y| (x - y).abs() >= sep) {
            out.push(x);
        }
    }
    out
}

pub fn monic(zeros: &[C64]) -> Polynomial {
    Polynomial::from_root_list(zeros, c(1.0, 0.0)).unwrap()
}

pub fn with_multiplicities(locations: &[C64], mults: &[usize]) -> Polynomial {
    let entries = locations
        .iter()
        .zip(mults)
        .map(|(&location, &multiplicity)| Root { location, multiplicity })
        .collect();
    Polynomial::from_roots(&RootMultiset::new(entries).unwrap(), c(1.0, 0.0)).unwrap()
}

/// Random polynomial with simple zeros in the unit disk, degree in `lo..=hi`.
pub fn random_simple(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> (Polynomial, Vec<C64>) {
    let n = rng.gen_range(lo..=hi);
    let z = separated(rng, n, 1.0, 1e-2);
    (monic(&z), z)
}

/// At most three distinct zeros with random multiplicities, degree at most 12.
pub fn random_three_distinct(rng: &mut ChaCha8Rng) -> Polynomial {
    let k = rng.gen_range(2..=3);
    let z = separated(rng, k, 1.0, 0.2);
    let m: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
    with_multiplicities(&z, &m)
}

/// Real zeros with multiplicities up to two, degree at most 16.
pub fn random_real_rooted(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> (Polynomial, Vec<f64>) {
    let k = rng.gen_range(lo..=hi);
    let x = separated_reals(rng, k, 1.0, 2e-2);
    let z: Vec<C64> = x.iter().map(|&x| c(x, 0.0)).collect();
    let m: Vec<usize> = (0..k).map(|_| if rng.gen_bool(0.2) { 2 } else { 1 }).collect();
    (with_multiplicities(&z, &m), x)
}

/// Random normalized atomic measure with `k` atoms.
pub fn random_measure(rng: &mut ChaCha8Rng, k: usize) -> polyvar::cauchy::PointMeasure {
    let z = separated(rng, k, 1.0, 1e-2);
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    polyvar::cauchy::PointMeasure::new(z.into_iter().zip(w.into_iter().map(|w| w / total)).collect()).unwrap()
}
