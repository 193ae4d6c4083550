//! Exploration of the scale-free ratio `ρ_p(F) = h(F, F') / σ_p(F)` over
//! polynomials of fixed degree, parametrized by their zeros.

mod catalog;
mod simplex;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_to_set, p_variance, WeightedPointSet};
use crate::poly::{find_roots, Polynomial, RootOptions};

pub use catalog::{named_instance, named_instances, Instance, NamedInstance, MILLER};
pub use simplex::SimplexParams;

type C64 = Complex64;

/// Reports of `ρ` above `1 + CANDIDATE_SLACK` are candidate violations.
pub const CANDIDATE_SLACK: f64 = 1e-6;

/// `ρ_p` of the monic polynomial with the given zeros (listed with
/// multiplicity), with critical points found under `opts`.
pub fn ratio_of_roots(roots: &[C64], p: f64, opts: &RootOptions) -> Result<f64> {
    if roots.len() < 2 {
        return Err(Error::DegreeTooSmall { required: 2, found: roots.len() });
    }
    let f = Polynomial::from_root_list(roots, C64::new(1.0, 0.0))?;
    let crit = find_roots(&f.derivative()?, opts)?.locations();
    let h = roots.iter().map(|&z| distance_to_set(z, &crit)).fold(0.0, f64::max);
    let sigma = p_variance(&WeightedPointSet::uniform(roots)?, p)?.value;
    let scale = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(sigma > 1e-14 * (1.0 + scale)) {
        return Err(Error::DegenerateSpread);
    }
    Ok(h / sigma)
}

/// `h(F, F') / σ_p(F)`; invariant under `z -> az + b`.
pub fn ratio(f: &Polynomial, p: f64) -> Result<f64> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall { required: 2, found: f.degree() });
    }
    let zeros = f.roots()?;
    let crit = f.critical_points()?.locations();
    let h = zeros.locations().iter().map(|&z| distance_to_set(z, &crit)).fold(0.0, f64::max);
    let sigma = p_variance(&WeightedPointSet::from_roots(&zeros)?, p)?.value;
    if !(sigma > 1e-14 * (1.0 + zeros.max_modulus())) {
        return Err(Error::DegenerateSpread);
    }
    Ok(h / sigma)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub degree: usize,
    pub p: f64,
    pub starts: usize,
    pub seed: u64,
    /// Function evaluations allowed per start.
    pub max_evaluations: usize,
    /// Simplex restarts allowed per start after a collapse.
    pub max_restarts: usize,
    pub simplex: SimplexParams,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            degree: 4,
            p: 2.0,
            starts: 100,
            seed: 0,
            max_evaluations: 2000,
            max_restarts: 3,
            simplex: SimplexParams::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 3 {
            return Err(Error::InvalidConfig(format!("degree must be at least 3, got {}", self.degree)));
        }
        if self.p.is_nan() || self.p < 1.0 {
            return Err(Error::InvalidExponent(self.p));
        }
        if self.starts == 0 || self.max_evaluations == 0 {
            return Err(Error::InvalidConfig("starts and evaluation caps must be positive".into()));
        }
        let s = &self.simplex;
        if !(s.initial_step > 0.0 && s.collapse > 0.0 && s.contraction > 0.0 && s.contraction < 1.0 && s.shrink > 0.0 && s.shrink < 1.0) {
            return Err(Error::InvalidConfig("invalid simplex parameters".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StartRecord {
    pub index: usize,
    pub initial_ratio: f64,
    pub final_ratio: f64,
    pub evaluations: usize,
    /// The last simplex collapsed without improving on the previous one.
    pub converged: bool,
    /// Best ratio after each simplex run.
    pub trajectory: Vec<f64>,
    pub roots: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub config: SearchConfig,
    /// Recomputed from `best_roots`.
    pub best_ratio: f64,
    pub best_roots: Vec<C64>,
    pub best_start: usize,
    pub evaluations: usize,
    pub starts: Vec<StartRecord>,
    /// Ratio of the best roots with a ten times tighter root-finder floor.
    pub verified_ratio: f64,
    /// `ρ > 1 + CANDIDATE_SLACK` at both precisions.
    pub candidate: bool,
}

fn unit_disk(rng: &mut ChaCha8Rng) -> C64 {
    loop {
        let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

/// Roots uniform in the unit disk, except every fifth start, which places
/// `n - 1` roots near the unit circle and one anywhere in the disk.
fn initial_roots(n: usize, index: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    if index % 5 == 4 {
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut roots: Vec<C64> = (0..n - 1)
            .map(|k| C64::from_polar(1.0, phase + std::f64::consts::TAU * k as f64 / (n - 1) as f64) + unit_disk(rng) * 0.05)
            .collect();
        roots.push(unit_disk(rng));
        roots
    } else {
        (0..n).map(|_| unit_disk(rng)).collect()
    }
}

fn to_coords(roots: &[C64]) -> Vec<f64> {
    roots.iter().flat_map(|z| [z.re, z.im]).collect()
}

fn to_roots(x: &[f64]) -> Vec<C64> {
    x.chunks(2).map(|c| C64::new(c[0], c[1])).collect()
}

/// Translates to the barycenter and scales to unit spread; `ρ` is unchanged.
fn normalize(roots: &[C64]) -> Vec<C64> {
    let c = roots.iter().sum::<C64>() / roots.len() as f64;
    let r = roots.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
    if r > 0.0 {
        roots.iter().map(|z| (z - c) / r).collect()
    } else {
        roots.to_vec()
    }
}

fn run_start(cfg: &SearchConfig, index: usize) -> StartRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ index as u64);
    let opts = RootOptions::default();
    let objective = |x: &[f64]| -ratio_of_roots(&to_roots(x), cfg.p, &opts).unwrap_or(f64::NEG_INFINITY);
    let mut roots = normalize(&initial_roots(cfg.degree, index, &mut rng));
    let initial = ratio_of_roots(&roots, cfg.p, &opts).unwrap_or(f64::NAN);
    let mut best = initial;
    let mut evaluations = 0;
    let mut trajectory = vec![];
    let mut converged = false;
    for _ in 0..=cfg.max_restarts {
        let budget = cfg.max_evaluations.saturating_sub(evaluations);
        if budget == 0 {
            break;
        }
        let out = simplex::minimize(objective, &to_coords(&roots), &cfg.simplex, budget);
        evaluations += out.evaluations;
        let value = -out.value;
        trajectory.push(value);
        let improved = value > best + 1e-12 || best.is_nan();
        if value > best || best.is_nan() {
            best = value;
            roots = normalize(&to_roots(&out.x));
        }
        if out.collapsed && !improved {
            converged = true;
            break;
        }
    }
    StartRecord {
        index,
        initial_ratio: initial,
        final_ratio: ratio_of_roots(&roots, cfg.p, &opts).unwrap_or(f64::NAN),
        evaluations,
        converged,
        trajectory,
        roots,
    }
}

/// Runs `body` on a pool of at most `POLYVAR_THREADS` workers when that
/// variable is set.
pub fn with_worker_pool<R: Send>(body: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var("POLYVAR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0);
    match threads.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(body),
        None => body(),
    }
}

/// Multistart simplex ascent of `ρ_p`. Start `i` draws from a generator
/// seeded with `seed ^ i`; the result does not depend on the worker count.
pub fn local_search(cfg: &SearchConfig) -> Result<SearchRecord> {
    cfg.validate()?;
    let starts: Vec<StartRecord> = with_worker_pool(|| (0..cfg.starts).into_par_iter().map(|i| run_start(cfg, i)).collect());
    let best = starts
        .iter()
        .filter(|s| !s.final_ratio.is_nan())
        .fold(None::<&StartRecord>, |acc, s| match acc {
            Some(b) if b.final_ratio >= s.final_ratio => Some(b),
            _ => Some(s),
        })
        .ok_or_else(|| Error::InvalidConfig("no start produced a finite ratio".into()))?;
    let tight = RootOptions {
        cluster_floor: RootOptions::default().cluster_floor / 10.0,
        ..RootOptions::default()
    };
    let verified_ratio = ratio_of_roots(&best.roots, cfg.p, &tight)?;
    Ok(SearchRecord {
        config: cfg.clone(),
        best_ratio: best.final_ratio,
        best_roots: best.roots.clone(),
        best_start: best.index,
        evaluations: starts.iter().map(|s| s.evaluations).sum(),
        candidate: best.final_ratio > 1.0 + CANDIDATE_SLACK && verified_ratio > 1.0 + CANDIDATE_SLACK,
        verified_ratio,
        starts,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub base_ratio: f64,
    pub trials: usize,
    pub increases: usize,
    pub fraction: f64,
    /// Largest `ρ' - ρ` seen.
    pub max_change: f64,
    pub radius: f64,
}

/// Relative change in `ρ` below which a perturbation counts as no increase.
pub const PROBE_NOISE: f64 = 1e-10;

/// Moves every zero by an independent uniform offset in the disk of radius
/// `radius · σ_p(F)` and counts how often `ρ_p` increases (by more than
/// [`PROBE_NOISE`] relative). A local maximum gives fraction zero.
pub fn local_max_probe(f: &Polynomial, p: f64, trials: usize, radius: f64, seed: u64) -> Result<ProbeReport> {
    if f.degree() < 3 {
        return Err(Error::DegreeTooSmall { required: 3, found: f.degree() });
    }
    let roots = f.roots()?.expanded();
    let opts = RootOptions::default();
    let base = ratio(f, p)?;
    let sigma = p_variance(&WeightedPointSet::uniform(&roots)?, p)?.value;
    let changes: Vec<f64> = with_worker_pool(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
                let moved: Vec<C64> = roots.iter().map(|&z| z + unit_disk(&mut rng) * (radius * sigma)).collect();
                ratio_of_roots(&moved, p, &opts).map(|r| r - base).unwrap_or(f64::NEG_INFINITY)
            })
            .collect()
    });
    let increases = changes.iter().filter(|&&d| d > PROBE_NOISE * base).count();
    Ok(ProbeReport {
        base_ratio: base,
        trials,
        increases,
        fraction: if trials == 0 { 0.0 } else { increases as f64 / trials as f64 },
        max_change: changes.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ratios() {
        let unity = Polynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = ratio(&unity, 2.0).unwrap();
        assert!((r - 1.0).abs() < 1e-12, "{r}");
        let ex1 = Polynomial::from_root_list(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!((ratio(&ex1, 1.0).unwrap() - 1.0).abs() < 1e-9);
        assert!(ratio(&ex1, 2.0).unwrap() < 1.0);
        let moved = ex1.affine_image(c(0.0, 5.0), c(0.3, -2.0)).unwrap();
        assert!((ratio(&moved, 2.0).unwrap() - ratio(&ex1, 2.0).unwrap()).abs() < 1e-9);
        let flat = Polynomial::from_root_list(&[c(1.0, 0.0); 3], c(1.0, 0.0)).unwrap();
        assert_eq!(ratio(&flat, 2.0), Err(Error::DegenerateSpread));
    }

    #[test]
    fn search_is_deterministic_and_bounded() {
        let cfg = SearchConfig { degree: 3, p: 2.0, starts: 8, seed: 11, max_evaluations: 600, ..SearchConfig::default() };
        let a = local_search(&cfg).unwrap();
        let b = local_search(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.best_ratio <= 1.0 + CANDIDATE_SLACK && !a.candidate);
        let again = ratio_of_roots(&a.best_roots, 2.0, &RootOptions::default()).unwrap();
        assert!((again - a.best_ratio).abs() <= 1e-9);
    }

    #[test]
    fn invalid_configs() {
        assert!(local_search(&SearchConfig { degree: 2, ..SearchConfig::default() }).is_err());
        assert!(local_search(&SearchConfig { p: 0.5, ..SearchConfig::default() }).is_err());
        assert!(local_search(&SearchConfig { starts: 0, ..SearchConfig::default() }).is_err());
    }

    #[test]
    fn generic_point_is_not_a_maximum() {
        let f = Polynomial::from_root_list(&[c(0.1, 0.2), c(-0.7, 0.1), c(0.4, -0.5), c(0.6, 0.6)], c(1.0, 0.0)).unwrap();
        let r = local_max_probe(&f, 2.0, 400, 1e-3, 5).unwrap();
        assert!(r.fraction > 0.0);
    }
}
