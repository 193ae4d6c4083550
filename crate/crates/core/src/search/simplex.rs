//! Nelder–Mead minimization.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// The simplex has collapsed once its diameter falls below this.
    pub collapse: f64,
}

impl Default for SimplexParams {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.1,
            collapse: 1e-10,
        }
    }
}

pub(crate) struct Outcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub collapsed: bool,
}

fn diameter(pts: &[Vec<f64>]) -> f64 {
    let best = &pts[0];
    pts[1..]
        .iter()
        .map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Minimizes `g` from `x0` with at most `budget` evaluations.
pub(crate) fn minimize(mut g: impl FnMut(&[f64]) -> f64, x0: &[f64], params: &SimplexParams, budget: usize) -> Outcome {
    let m = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = g(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..m {
        let mut p = x0.to_vec();
        p[i] += params.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, &mut evals)).collect();
    let scale = 1.0 + x0.iter().map(|x| x.abs()).fold(0.0, f64::max);
    loop {
        let mut order: Vec<usize> = (0..=m).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        let collapsed = diameter(&pts) < params.collapse * scale;
        if collapsed || evals >= budget {
            return Outcome {
                x: pts[0].clone(),
                value: vals[0],
                evaluations: evals,
                collapsed,
            };
        }
        let mut centroid = vec![0.0; m];
        for p in &pts[..m] {
            centroid.iter_mut().zip(p).for_each(|(c, x)| *c += x / m as f64);
        }
        let worst = pts[m].clone();
        let xr = combine(&centroid, &worst, -params.reflection);
        let fr = eval(&xr, &mut evals);
        if fr < vals[0] {
            let xe = combine(&centroid, &worst, -params.reflection * params.expansion);
            let fe = eval(&xe, &mut evals);
            if fe < fr {
                pts[m] = xe;
                vals[m] = fe;
            } else {
                pts[m] = xr;
                vals[m] = fr;
            }
            continue;
        }
        if fr < vals[m - 1] {
            pts[m] = xr;
            vals[m] = fr;
            continue;
        }
        let toward = if fr < vals[m] { &xr } else { &worst };
        let xc = combine(&centroid, toward, params.contraction);
        let fc = eval(&xc, &mut evals);
        if fc < vals[m].min(fr) {
            pts[m] = xc;
            vals[m] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=m {
            pts[i] = combine(&best, &pts[i], params.shrink);
            vals[i] = eval(&pts[i], &mut evals);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let out = minimize(f, &[-1.2, 1.0], &SimplexParams::default(), 10_000);
        assert!(out.value < 1e-12, "{}", out.value);
        assert!((out.x[0] - 1.0).abs() < 1e-5);
    }
}
