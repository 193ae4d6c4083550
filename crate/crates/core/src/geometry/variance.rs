//! Solvers for `min_c (Σ w |z - c|^p / Σ w)^(1/p)`.
//!
//! * `p = 1`: the weighted geometric median. Each data point is first tested
//!   as an anchor (it is optimal iff the pull of the other points does not
//!   exceed its own weight); otherwise Weiszfeld's iteration, polished by
//!   Newton steps.
//! * `p = 2`: the barycenter.
//! * other finite `p`: damped Newton on `Σ w (|z - c|² + ε²)^(p/2)`. For
//!   `p < 2` the smoothing parameter follows `1e-4, 1e-6, ..., 1e-12, 0`.
//! * `p = ∞`: the smallest enclosing disk.

use num_complex::Complex64;

use super::{barycenter, chebyshev_disk, objective, CenterResult, WeightedPointSet};
use crate::error::{Error, Result};

type C64 = Complex64;

const WEISZFELD_CAP: usize = 100_000;
const NEWTON_CAP: usize = 200;

struct Normalized {
    pts: Vec<C64>,
    w: Vec<f64>,
    shift: C64,
    scale: f64,
}

impl Normalized {
    fn new(s: &WeightedPointSet) -> Self {
        let shift = barycenter(s);
        let scale = s.points().iter().map(|&(z, _)| (z - shift).norm()).fold(0.0, f64::max);
        let total = s.total_weight();
        Self {
            pts: s.points().iter().map(|&(z, _)| (z - shift) / scale).collect(),
            w: s.points().iter().map(|&(_, w)| w / total).collect(),
            shift,
            scale,
        }
    }

    fn restore(&self, c: C64) -> C64 {
        c * self.scale + self.shift
    }
}

/// Minimizes the p-variance objective over centers `c`.
pub fn p_variance(s: &WeightedPointSet, p: f64) -> Result<CenterResult> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let done = |center: C64, iterations: usize| CenterResult {
        center,
        value: objective(s, center, p),
        p,
        iterations,
    };
    if p.is_infinite() {
        let d = chebyshev_disk(&s.locations());
        return Ok(CenterResult {
            center: d.center,
            value: d.radius,
            p,
            iterations: 0,
        });
    }
    let norm = Normalized::new(s);
    if norm.scale == 0.0 || p == 2.0 {
        return Ok(done(norm.shift, 0));
    }
    let (c, iters) = if p == 1.0 {
        median(&norm)
    } else {
        let mut c = C64::new(0.0, 0.0);
        let mut total = 0;
        let schedule: &[f64] = if p < 2.0 { &[1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 0.0] } else { &[0.0] };
        for &eps in schedule {
            let (next, it) = newton(&norm, p, eps, c);
            c = next;
            total += it;
        }
        (c, total)
    };
    Ok(done(norm.restore(c), iters))
}

fn median(norm: &Normalized) -> (C64, usize) {
    let (pts, w) = (&norm.pts, &norm.w);
    let tiny = 1e-14;
    for k in 0..pts.len() {
        let mut pull = C64::new(0.0, 0.0);
        let mut own = 0.0;
        for j in 0..pts.len() {
            let d = pts[j] - pts[k];
            if d.norm() <= tiny {
                own += w[j];
            } else {
                pull += w[j] * d / d.norm();
            }
        }
        if pull.norm() <= own * (1.0 + 1e-12) {
            return (pts[k], 0);
        }
    }
    let mut c = C64::new(0.0, 0.0);
    let mut iters = 0;
    while iters < WEISZFELD_CAP {
        iters += 1;
        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0;
        for (z, wt) in pts.iter().zip(w) {
            let r = (z - c).norm().max(tiny);
            num += z * (wt / r);
            den += wt / r;
        }
        let next = num / den;
        let step = (next - c).norm();
        c = next;
        if step <= 1e-13 {
            break;
        }
    }
    let (c, it) = newton(norm, 1.0, 0.0, c);
    (c, iters + it)
}

fn smoothed(norm: &Normalized, p: f64, eps: f64, c: C64) -> f64 {
    norm.pts
        .iter()
        .zip(&norm.w)
        .map(|(z, w)| w * ((z - c).norm_sqr() + eps * eps).powf(p / 2.0))
        .sum()
}

/// Gradient and Hessian (as `[[a, b], [b, d]]`) of the smoothed objective.
fn derivatives(norm: &Normalized, p: f64, eps: f64, c: C64) -> ([f64; 2], [f64; 3]) {
    let mut g = [0.0; 2];
    let mut h = [0.0; 3];
    for (z, w) in norm.pts.iter().zip(&norm.w) {
        let d = c - z;
        let s = d.norm_sqr() + eps * eps;
        if s == 0.0 {
            continue;
        }
        let a = w * p * s.powf(p / 2.0 - 1.0);
        let b = w * p * (p - 2.0) * s.powf(p / 2.0 - 2.0);
        g[0] += a * d.re;
        g[1] += a * d.im;
        h[0] += a + b * d.re * d.re;
        h[1] += b * d.re * d.im;
        h[2] += a + b * d.im * d.im;
    }
    (g, h)
}

fn newton(norm: &Normalized, p: f64, eps: f64, start: C64) -> (C64, usize) {
    let mut c = start;
    let mut f = smoothed(norm, p, eps, c);
    for it in 0..NEWTON_CAP {
        let (g, h) = derivatives(norm, p, eps, c);
        let gn = g[0].hypot(g[1]);
        if gn <= 1e-15 {
            return (c, it);
        }
        let reg = 1e-14 * (h[0] + h[2]).abs().max(1e-300);
        let (a, b, d) = (h[0] + reg, h[1], h[2] + reg);
        let det = a * d - b * b;
        let mut dir = if det > 0.0 && det.is_finite() {
            C64::new(-(d * g[0] - b * g[1]) / det, -(a * g[1] - b * g[0]) / det)
        } else {
            C64::new(-g[0], -g[1])
        };
        let mut slope = g[0] * dir.re + g[1] * dir.im;
        if slope >= 0.0 {
            dir = C64::new(-g[0], -g[1]);
            slope = -gn * gn;
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = c + dir * t;
            let ft = smoothed(norm, p, eps, trial);
            if ft <= f + 1e-4 * t * slope {
                let moved = (trial - c).norm();
                c = trial;
                f = ft;
                accepted = true;
                if moved <= 1e-15 {
                    return (c, it + 1);
                }
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return (c, it + 1);
        }
    }
    (c, NEWTON_CAP)
}

/// First-order optimality residual of `c` for the (unsmoothed, weight
/// normalized) p-th power objective, measured in units where the point set
/// has unit spread. Zero means `c` is a minimizer.
pub fn optimality_residual(s: &WeightedPointSet, c: C64, p: f64) -> f64 {
    let norm = Normalized::new(s);
    if norm.scale == 0.0 {
        return 0.0;
    }
    let u = (c - norm.shift) / norm.scale;
    let mut g = C64::new(0.0, 0.0);
    let mut anchored = 0.0;
    for (z, w) in norm.pts.iter().zip(&norm.w) {
        let d = u - z;
        let r = d.norm();
        if r <= 1e-12 {
            anchored += w;
        } else {
            g += w * p * r.powf(p - 2.0) * d;
        }
    }
    if p == 1.0 {
        (g.norm() - anchored).max(0.0)
    } else {
        g.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn example_one_median_sits_on_the_heavy_point() {
        let s = WeightedPointSet::new(vec![(c(0.0, 0.0), 1.0), (c(1.0, 0.0), 4.0)]).unwrap();
        let r = p_variance(&s, 1.0).unwrap();
        assert_eq!(r.center, c(1.0, 0.0));
        assert!((r.value - 0.2).abs() < 1e-15);
    }

    #[test]
    fn three_collinear_points() {
        let s = WeightedPointSet::uniform(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = p_variance(&s, 1.0).unwrap();
        assert!(r.center.norm() < 1e-15);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn sharp_real_two_variance() {
        let s = WeightedPointSet::new(vec![(c(1.0, 0.0), 2.0), (c(-1.0, 0.0), 2.0)]).unwrap();
        let r = p_variance(&s, 2.0).unwrap();
        assert!(r.center.norm() < 1e-15 && (r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn weiszfeld_interior_optimum() {
        // equilateral triangle: median at the centroid
        let pts: Vec<C64> = (0..3).map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0) + c(2.0, -1.0)).collect();
        let s = WeightedPointSet::uniform(&pts).unwrap();
        let r = p_variance(&s, 1.0).unwrap();
        assert!((r.center - c(2.0, -1.0)).norm() < 1e-12);
        assert!(optimality_residual(&s, r.center, 1.0) < 1e-9);
    }

    #[test]
    fn general_exponents_are_stationary() {
        let pts = [c(0.3, 0.1), c(-1.2, 0.7), c(2.0, -0.4), c(0.1, 1.9), c(-0.5, -0.5)];
        let s = WeightedPointSet::new(pts.iter().enumerate().map(|(k, &z)| (z, 1.0 + k as f64)).collect()).unwrap();
        for p in [1.0, 1.1, 1.5, 3.0, 7.0] {
            let r = p_variance(&s, p).unwrap();
            assert!(optimality_residual(&s, r.center, p) < 1e-9, "p = {p}");
        }
    }

    #[test]
    fn rejects_small_exponent() {
        let s = WeightedPointSet::uniform(&[c(0.0, 0.0)]).unwrap();
        assert_eq!(p_variance(&s, 0.5), Err(Error::InvalidExponent(0.5)));
    }
}
