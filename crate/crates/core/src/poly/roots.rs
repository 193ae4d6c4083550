//! Simultaneous root finding (Aberth–Ehrlich) with multiplicity recovery.
//!
//! Multiple zeros come out of floating-point iteration as clusters whose
//! diameter grows like `eps^(1/m)`. Clusters are identified as connected
//! components of overlapping Weierstrass inclusion disks (plus a small
//! absolute floor), merged to their centroid, and the centroid is polished by
//! Newton steps on the `(m-1)`-th derivative, which has a simple zero there.

use num_complex::Complex64;

use super::{Polynomial, Root, RootMultiset};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix};

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Clone, Debug)]
pub struct RootOptions {
    /// Iteration cap for the simultaneous iteration.
    pub max_iter: usize,
    /// Relative floor of the merge radius, scaled by `1 + max|root|`.
    pub cluster_floor: f64,
    /// Skip the iteration and go straight to the companion eigenvalues.
    pub force_companion: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            max_iter: 500,
            cluster_floor: 1e-7,
            force_companion: false,
        }
    }
}

/// Value, derivative and a running rounding-error bound of Horner's scheme.
fn horner_with_bound(coeffs: &[C64], z: C64) -> (C64, C64, f64) {
    let az = z.norm();
    let mut p = ZERO;
    let mut dp = ZERO;
    let mut abs = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        abs = abs * az + c.norm();
    }
    let n = coeffs.len() as f64;
    (p, dp, 4.0 * n * f64::EPSILON * abs)
}

fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let bound = (0..n)
        .map(|k| (coeffs[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max);
    let radius = 1.0 + bound;
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            // small deterministic jitter keeps symmetric inputs off saddle orbits
            let r = radius * (1.0 + 0.01 * ((k * 7 % 5) as f64 - 2.0));
            C64::from_polar(r, theta)
        })
        .collect()
}

/// Returns `None` when the iteration cap is hit before every approximation
/// has settled.
fn aberth(coeffs: &[C64], max_iter: usize) -> Option<Vec<C64>> {
    let n = coeffs.len() - 1;
    let mut z = initial_guesses(coeffs);
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = horner_with_bound(coeffs, z[i]);
            if p.norm() <= bound {
                done[i] = true;
                continue;
            }
            let step = aberth_step(&z, i, p, dp);
            z[i] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done && done.iter().all(|&d| d) {
            return Some(z);
        }
    }
    None
}

fn aberth_step(z: &[C64], i: usize, p: C64, dp: C64) -> C64 {
    let ratio = if dp.norm() > 0.0 { p / dp } else { C64::new(1e-8, 1e-8) * (1.0 + z[i].norm()) };
    let repulsion: C64 = (0..z.len())
        .filter(|&j| j != i)
        .map(|j| {
            let d = z[i] - z[j];
            if d.norm() > 0.0 { d.inv() } else { ZERO }
        })
        .sum();
    let denom = C64::new(1.0, 0.0) - ratio * repulsion;
    if denom.norm() > 0.0 { ratio / denom } else { ratio }
}

/// Newton steps on `F` for an isolated zero, each kept only if it lowers
/// `|F|` and stays within `cap` of the start. The stopping test of the
/// iteration accepts any residual below a rounding bound, and that bound can
/// exceed the attainable residual by orders of magnitude when the terms of
/// Horner's scheme cancel.
fn polish_simple(coeffs: &[C64], start: C64, cap: f64) -> C64 {
    let mut z = start;
    let (mut p, mut dp, _) = horner_with_bound(coeffs, z);
    for _ in 0..6 {
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if (next - start).norm() > cap {
            break;
        }
        let (p_next, dp_next, _) = horner_with_bound(coeffs, next);
        if p_next.norm() >= p.norm() {
            break;
        }
        (z, p, dp) = (next, p_next, dp_next);
    }
    z
}

fn companion_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    eigenvalues(&m)
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut k = i;
    while parent[k] != r {
        let next = parent[k];
        parent[k] = r;
        k = next;
    }
    r
}

/// Spread expected of `k` approximations to a single `k`-fold zero at `c`:
/// the radius at which the local term `a_k h^k` of the Taylor expansion
/// drops to the residual level accepted by the iteration.
fn rounding_spread(coeffs: &[C64], c: C64, k: usize) -> f64 {
    let shifted = Polynomial { coeffs: coeffs.to_vec() }.taylor_shift(c);
    let ak = shifted.coeffs[k].norm();
    if ak == 0.0 {
        return f64::INFINITY;
    }
    let (_, _, bound) = horner_with_bound(coeffs, c);
    (bound / ak).powf(1.0 / k as f64)
}

/// Whether the points look like one `k`-fold zero blurred by rounding, with
/// `k = points.len()`. About their centroid `c`, with `F(c + w) = sum a_j w^j`
/// and `rho = (bound / |a_k|)^(1/k)`, a perturbation of size `bound` can make
/// `c` an exact `k`-fold zero only if `|a_j| rho^j` is of the order of
/// `bound` for every `j < k`, and the points must lie within a few `rho`.
fn blurred_zero(coeffs: &[C64], points: &[C64]) -> bool {
    let k = points.len();
    let c = points.iter().sum::<C64>() / k as f64;
    let shifted = Polynomial { coeffs: coeffs.to_vec() }.taylor_shift(c);
    let ak = shifted.coeffs[k].norm();
    let (_, _, bound) = horner_with_bound(coeffs, c);
    if ak == 0.0 || bound == 0.0 {
        return false;
    }
    let rho = (bound / ak).powf(1.0 / k as f64);
    let width = points.iter().map(|&z| (z - c).norm()).fold(0.0, f64::max);
    width <= 4.0 * rho
        && shifted.coeffs[..k]
            .iter()
            .enumerate()
            .all(|(j, a)| a.norm() * rho.powi(j as i32) <= 16.0 * bound)
}

/// Groups approximations into clusters, one per distinct zero.
///
/// Edges of the minimum spanning tree are visited in increasing length, and
/// the two clusters an edge joins are merged when the edge is shorter than
/// the absolute floor, or when the merged set passes [`blurred_zero`].
/// Inclusion-disk overlap is not used: the disks of approximations to a
/// multiple zero are inflated by their tiny mutual distances and chain
/// distinct zeros together.
fn cluster(coeffs: &[C64], approx: &[C64], floor: f64) -> Vec<Vec<usize>> {
    let n = approx.len();
    let scale = 1.0 + approx.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    for j in 1..n {
        best[j] = ((approx[0] - approx[j]).norm(), 0);
    }
    for _ in 1..n {
        let j = (0..n).filter(|&j| !in_tree[j]).min_by(|&a, &b| best[a].0.total_cmp(&best[b].0)).unwrap();
        in_tree[j] = true;
        edges.push((best[j].0, best[j].1, j));
        for t in 0..n {
            let d = (approx[j] - approx[t]).norm();
            if !in_tree[t] && d < best[t].0 {
                best[t] = (d, j);
            }
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut parent: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for (length, i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        let merged: Vec<usize> = members[a].iter().chain(&members[b]).copied().collect();
        let points: Vec<C64> = merged.iter().map(|&t| approx[t]).collect();
        if length <= floor * scale || blurred_zero(coeffs, &points) {
            parent[a] = b;
            members[b] = merged;
            members[a].clear();
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).map(|i| std::mem::take(&mut members[i])).collect()
}

/// Newton polish of a cluster centroid on the `(m-1)`-th derivative.
fn polish(poly: &Polynomial, start: C64, multiplicity: usize, spread: f64) -> C64 {
    let Ok(target) = poly.nth_derivative(multiplicity - 1) else {
        return start;
    };
    let mut z = start;
    let (mut best_val, _) = target.eval_with_derivative(z);
    let mut best = z;
    for _ in 0..8 {
        let (p, dp) = target.eval_with_derivative(z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if (next - start).norm() > spread {
            break;
        }
        z = next;
        let (v, _) = target.eval_with_derivative(z);
        if v.norm() < best_val.norm() {
            best_val = v;
            best = z;
        }
        if (p / dp).norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    best
}

/// All zeros of `poly` with multiplicities.
///
/// Exact zero coefficients at the low end are removed first and reported as
/// a zero at the origin of exact multiplicity.
pub fn find_roots(poly: &Polynomial, opts: &RootOptions) -> Result<RootMultiset> {
    let degree = poly.degree();
    if degree == 0 {
        return Err(Error::DegreeTooSmall { required: 1, found: 0 });
    }
    let monic = poly.monic();
    let all = monic.coeffs();
    let zeros_at_origin = all.iter().take_while(|c| c.norm() == 0.0).count();
    let coeffs = &all[zeros_at_origin..];
    let reduced = Polynomial::new(coeffs.to_vec())?;
    let m = coeffs.len() - 1;

    let mut entries = Vec::new();
    if zeros_at_origin > 0 {
        entries.push(Root {
            location: ZERO,
            multiplicity: zeros_at_origin,
        });
    }
    if m == 1 {
        entries.push(Root {
            location: -coeffs[0] / coeffs[1],
            multiplicity: 1,
        });
    } else if m >= 2 {
        let approx = match (!opts.force_companion).then(|| aberth(coeffs, opts.max_iter)).flatten() {
            Some(z) => z,
            None => {
                let z = companion_roots(coeffs)?;
                let scale = reduced.max_coeff();
                let ok = z.iter().all(|&r| {
                    reduced.evaluate(r).norm() <= 1e-6 * (1.0 + r.norm()).powi(m as i32) * scale
                });
                if !ok {
                    return Err(Error::RootsDidNotConverge { degree });
                }
                z
            }
        };
        for group in cluster(coeffs, &approx, opts.cluster_floor) {
            let k = group.len();
            let centroid: C64 = group.iter().map(|&i| approx[i]).sum::<C64>() / k as f64;
            let location = if k == 1 {
                let gap = approx
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != group[0])
                    .map(|(_, &w)| (w - centroid).norm())
                    .fold(f64::INFINITY, f64::min);
                polish_simple(coeffs, centroid, 0.1 * gap)
            } else {
                let spread = group
                    .iter()
                    .map(|&i| (approx[i] - centroid).norm())
                    .fold(0.0, f64::max);
                let cap = spread.max(2.0 * rounding_spread(coeffs, centroid, k));
                polish(&reduced, centroid, k, cap.max(1e-12 * (1.0 + centroid.norm())))
            };
            entries.push(Root {
                location,
                multiplicity: k,
            });
        }
    }
    // real parts are bucketed so that conjugate pairs with rounding noise in
    // the real part still come out in (re, im) order
    let q = 1e-9 * (1.0 + entries.iter().map(|r| r.location.norm()).fold(0.0, f64::max));
    entries.sort_by(|a, b| {
        let (ka, kb) = ((a.location.re / q).round() + 0.0, (b.location.re / q).round() + 0.0);
        ka.total_cmp(&kb).then(a.location.im.total_cmp(&b.location.im))
    });
    RootMultiset::new(entries)
}
