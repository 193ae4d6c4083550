use num_complex::Complex64;
use serde_json::{json, Value};

use super::{pair, pairs, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{circular_deviation, convex_hull, distance_to_set, max_distance_to_set_over_hull, point_in_hull};
use crate::linalg::charpoly;
use crate::operator::cubic_circulant;
use crate::poly::Polynomial;
use crate::verdict::{Kind, Verdict, GUARD};

type C64 = Complex64;

/// Sample points per hull diameter in [`schmeisser_check`].
pub const DEFAULT_GRID_DENSITY: usize = 25;

pub(crate) fn p_value(p: f64) -> Value {
    if p.is_infinite() {
        json!("inf")
    } else {
        json!(p)
    }
}

fn nearest(z: C64, set: &[C64]) -> C64 {
    *set.iter()
        .min_by(|a, b| (z - **a).norm().total_cmp(&(z - **b).norm()))
        .expect("nonempty")
}

/// `max_{a in from} dist(a, to)` with the realizing point and its nearest
/// partner.
fn directed(from: &[C64], to: &[C64]) -> (f64, C64, C64) {
    let mut best = (f64::NEG_INFINITY, from[0], to[0]);
    for &a in from {
        let d = distance_to_set(a, to);
        if d > best.0 {
            best = (d, a, nearest(a, to));
        }
    }
    best
}

/// Settled cases of `h <= σ_∞`, obtained from the known cases of Sendov's
/// conjecture by scaling the Chebyshev disk to the unit disk.
fn sendov_settled(f: &Polynomial, cfg: &Configuration) -> bool {
    let zeros = cfg.zero_locations();
    let disk = crate::geometry::chebyshev_disk(&zeros);
    let slack = 1e-9 * (1.0 + cfg.scale);
    let terms = f.coeffs().iter().filter(|c| c.norm() > 1e-14 * f.max_coeff()).count();
    let on_circle = zeros.iter().all(|z| ((z - disk.center).norm() - disk.radius).abs() <= slack);
    let centered = zeros.iter().any(|z| (z - disk.center).norm() <= slack);
    zeros.len() <= 8 || terms <= 3 || on_circle || centered || convex_hull(&zeros).len() <= 3
}

/// `h(F, F') <= σ_p(F)`.
///
/// The verdict kind is [`Kind::Theorem`] in the settled cases: at most three
/// distinct zeros or all zeros real with `p >= 2`, cubics for every `p`, and
/// for `p = ∞` the known cases of Sendov's conjecture (at most eight distinct
/// zeros, trinomials, zeros on the Chebyshev circle, a zero at the Chebyshev
/// center, a triangular or degenerate convex hull).
pub fn variance_check(f: &Polynomial, p: f64, tol: Option<f64>) -> Result<Verdict> {
    let cfg = Configuration::new(f)?;
    let sigma = cfg.sigma(p)?;
    let sigma_inf = cfg.sigma(f64::INFINITY)?;
    let (h, zero, crit) = directed(&cfg.zero_locations(), &cfg.crit_locations());
    let tol = cfg.tolerance(tol);
    let n = cfg.degree;
    let distinct = cfg.zeros.len();
    let real = cfg.zeros.locations().iter().all(|z| z.im.abs() <= 1e-8 * (1.0 + cfg.scale));
    let proved = (p >= 2.0 && (distinct <= 3 || real)) || n == 3 || (p.is_infinite() && sendov_settled(f, &cfg));
    let kind = if proved { Kind::Theorem } else { Kind::Conjecture };
    let margin = sigma - h;
    let asymptotic = 2f64.powf(1.0 / n as f64) * sigma_inf;
    let witness = json!({
        "p": p_value(p),
        "h": h,
        "sigma_p": sigma,
        "ratio": h / sigma,
        "zero": pair(zero),
        "nearest_critical_point": pair(crit),
        "equality": margin.abs() <= GUARD * tol,
        "extremal_form": f.extremal_form(1e-8).is_some(),
        "sigma_inf": sigma_inf,
        "asymptotic_bound": asymptotic,
        "asymptotic_margin": asymptotic - h,
        "zeros": pairs(&cfg.zeros.expanded()),
        "critical_points": pairs(&cfg.crit.expanded()),
    });
    Ok(Verdict::from_margin("variance", kind, margin, tol, witness))
}

/// `h(F', F) <= σ_1(F)`.
pub fn reverse_check(f: &Polynomial, tol: Option<f64>) -> Result<Verdict> {
    let cfg = Configuration::new(f)?;
    let sigma1 = cfg.sigma(1.0)?;
    let (h, crit, zero) = directed(&cfg.crit_locations(), &cfg.zero_locations());
    let witness = json!({
        "h_reverse": h,
        "sigma_1": sigma1,
        "critical_point": pair(crit),
        "nearest_zero": pair(zero),
        "zeros": pairs(&cfg.zeros.expanded()),
        "critical_points": pairs(&cfg.crit.expanded()),
    });
    Ok(Verdict::from_margin("reverse", Kind::Theorem, sigma1 - h, cfg.tolerance(tol), witness))
}

/// For real zeros, every disk `D(z_l, σ₂/√(n-1))` holds a critical point.
/// The witness also reports `σ₂ - h(F', F)`, which vanishes for the sharp
/// instance `(z² - 1)²`.
pub fn real_zero_refined_check(f: &Polynomial, tol: Option<f64>) -> Result<Verdict> {
    let cfg = Configuration::new(f)?;
    let zeros = cfg.zero_locations();
    if let Some(z) = zeros.iter().find(|z| z.im.abs() > 1e-8 * cfg.scale.max(1.0)) {
        return Err(Error::NonRealZero(format!("{z}")));
    }
    let sigma2 = cfg.sigma(2.0)?;
    let radius = sigma2 / ((cfg.degree - 1) as f64).sqrt();
    let crit = cfg.crit_locations();
    let margins: Vec<f64> = zeros.iter().map(|&z| radius - distance_to_set(z, &crit)).collect();
    let worst = (0..zeros.len()).min_by(|&a, &b| margins[a].total_cmp(&margins[b])).expect("nonempty");
    let tol = cfg.tolerance(tol);
    let (h_rev, _, _) = directed(&crit, &zeros);
    let ii = sigma2 - h_rev;
    let witness = json!({
        "radius": radius,
        "sigma_2": sigma2,
        "zero": pair(zeros[worst]),
        "zeros": pairs(&zeros),
        "margins": margins,
        "critical_points": pairs(&cfg.crit.expanded()),
        "statement_ii_margin": ii,
        "statement_ii_sharp": ii.abs() <= GUARD * tol,
    });
    Ok(Verdict::from_margin("real_zero_refined", Kind::Theorem, margins[worst], tol, witness))
}

fn grid_samples(hull: &[C64], density: usize) -> (Vec<C64>, f64) {
    let mut samples = hull.to_vec();
    let diam = hull
        .iter()
        .flat_map(|&a| hull.iter().map(move |&b| (a - b).norm()))
        .fold(0.0, f64::max);
    if diam == 0.0 || density == 0 {
        return (samples, diam);
    }
    let step = diam / density as f64;
    let k = hull.len();
    let edges = if k == 2 { 1 } else { k };
    for i in 0..edges {
        let (a, b) = (hull[i], hull[(i + 1) % k]);
        let m = ((b - a).norm() / step).ceil() as usize;
        samples.extend((1..m).map(|j| a + (b - a) * (j as f64 / m as f64)));
    }
    if k >= 3 {
        let (lo_re, hi_re) = hull.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), z| (l.min(z.re), h.max(z.re)));
        let (lo_im, hi_im) = hull.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), z| (l.min(z.im), h.max(z.im)));
        let row = step * 3f64.sqrt() / 2.0;
        let rows = ((hi_im - lo_im) / row).ceil() as usize;
        let cols = ((hi_re - lo_re) / step).ceil() as usize + 1;
        for r in 0..=rows {
            let offset = if r % 2 == 1 { step / 2.0 } else { 0.0 };
            for c in 0..=cols {
                let z = C64::new(lo_re + offset + c as f64 * step, lo_im + r as f64 * row);
                if point_in_hull(hull, z, 0.0) {
                    samples.push(z);
                }
            }
        }
    }
    (samples, step)
}

/// For every `ζ` in the convex hull of the zeros, the closed disk
/// `D(ζ, σ_∞)` contains a critical point.
///
/// The maximum over the hull of the distance to the critical set is computed
/// exactly (see [`max_distance_to_set_over_hull`]) and cross-checked against
/// a triangular grid with `grid_density` points per hull diameter: the
/// distance is 1-Lipschitz, so the grid maximum plus the spacing bounds it
/// from above.
pub fn schmeisser_check(f: &Polynomial, grid_density: usize, tol: Option<f64>) -> Result<Verdict> {
    let cfg = Configuration::new(f)?;
    let hull = convex_hull(&cfg.zero_locations());
    let crit = cfg.crit_locations();
    let (exact, at) = max_distance_to_set_over_hull(&hull, &crit);
    let (samples, spacing) = grid_samples(&hull, grid_density);
    let grid_max = samples.iter().map(|&z| distance_to_set(z, &crit)).fold(0.0, f64::max);
    let sigma_inf = cfg.sigma(f64::INFINITY)?;
    let sigma1 = cfg.sigma(1.0)?;
    let sigma2 = cfg.sigma(2.0)?;
    let witness = json!({
        "sigma_inf": sigma_inf,
        "max_distance": exact,
        "farthest_point": pair(at),
        "grid_max": grid_max,
        "grid_spacing": spacing,
        "grid_points": samples.len(),
        "grid_consistent": exact >= grid_max - 1e-12 * (1.0 + cfg.scale) && exact <= grid_max + spacing,
        "sigma_p_margins": { "1": sigma1 - exact, "2": sigma2 - exact },
        "hull": pairs(&hull),
        "critical_points": pairs(&cfg.crit.expanded()),
    });
    Ok(Verdict::from_margin("schmeisser", Kind::Conjecture, sigma_inf - exact, cfg.tolerance(tol), witness))
}

/// The cubic with circulant matrix `(-a-b, a, b)`: the disk about the origin
/// of radius `σ_circ = max(|a|, |b|)` contains a critical point.
pub fn grace_circulant_check(a: C64, b: C64, tol: Option<f64>) -> Result<Verdict> {
    let f = Polynomial::new(charpoly(&cubic_circulant(a, b)))?;
    let cfg = Configuration::new(&f)?;
    let radius = a.norm().max(b.norm());
    let crit = cfg.crit_locations();
    let closest = nearest(C64::new(0.0, 0.0), &crit);
    let dfdz = f.derivative()?.scale(C64::new(1.0 / 3.0, 0.0))?;
    let one = C64::new(1.0, 0.0);
    let plus = Polynomial::new(vec![a * b, a + b, one])?;
    let minus = Polynomial::new(vec![a * b, -(a + b), one])?;
    let apolar_plus = dfdz.apolar_form(&plus)?;
    let apolar_minus = dfdz.apolar_form(&minus)?;
    let witness = json!({
        "sigma_circ": radius,
        "circular_deviation": circular_deviation(&cfg.zeros.expanded())?,
        "closest_critical_point": pair(closest),
        "apolar_plus": pair(apolar_plus),
        "apolar_minus": pair(apolar_minus),
        "zeros": pairs(&cfg.zeros.expanded()),
    });
    Ok(Verdict::from_margin("grace_circulant", Kind::Theorem, radius - closest.norm(), cfg.tolerance(tol), witness))
}
