//! Summary quantities of a single input.

use anyhow::Result;
use polyvar::cauchy::{extended_zero_set, measure_stats, transform_zeros, PointMeasure};
use polyvar::gauss_lucas::{gauss_lucas_matrix, stochasticity_report};
use polyvar::geometry::{barycenter, hausdorff, p_variance, HausdorffMode, WeightedPointSet};
use polyvar::io::Input;
use polyvar::linalg::{charpoly, eigenvalues, ComplexMatrix};
use polyvar::operator::{cubic_circulant, min_shift_norm, toeplitz_check};
use polyvar::poly::{Polynomial, RootMultiset};
use serde_json::{json, Map, Value};

use crate::params::p_label;

fn roots_json(r: &RootMultiset) -> Value {
    r.entries()
        .iter()
        .map(|e| json!({"re": e.location.re, "im": e.location.im, "mult": e.multiplicity}))
        .collect()
}

fn gauss_lucas_json(f: &Polynomial) -> Value {
    let n = f.degree() as f64;
    let gl = match gauss_lucas_matrix(f) {
        Ok(gl) => gl,
        Err(e) => return json!({ "error": e.to_string() }),
    };
    let (plain, augmented) = match (
        stochasticity_report(&gl.entries, 1e-8),
        stochasticity_report(&gl.augmented().entries, 1e-8),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return json!({ "error": e.to_string() }),
    };
    let below: Vec<usize> = (0..plain.col_maxima.len()).filter(|&j| plain.col_maxima[j] < 1.0 / n).collect();
    json!({
        "entries": gl.entries,
        "zeros": gl.zero_locations,
        "multiplicities": gl.multiplicities,
        "critical_points": gl.crit_locations,
        "transport_residual": gl.transport_residual(),
        "row_sums": plain.row_sums,
        "column_maxima": plain.col_maxima,
        "columns_below_1_over_n": below,
        "augmented": {
            "column_sums": augmented.col_sums,
            "max_deviation": augmented.max_deviation(),
            "doubly_stochastic": augmented.is_doubly,
        },
    })
}

pub fn polynomial(f: &Polynomial, ps: &[f64]) -> Result<Value> {
    let zeros = f.roots()?;
    let crit = f.critical_points()?;
    let set = WeightedPointSet::from_roots(&zeros)?;
    let z = zeros.locations();
    let w = crit.locations();
    let h = hausdorff(&z, &w, HausdorffMode::OneSided)?;
    let h_reverse = hausdorff(&w, &z, HausdorffMode::OneSided)?;
    let mut sigma = Map::new();
    let mut ratio = Map::new();
    for &p in ps {
        let s = p_variance(&set, p)?.value;
        sigma.insert(p_label(p), json!(s));
        ratio.insert(p_label(p), json!(h / s));
    }
    let sigma_inf = p_variance(&set, f64::INFINITY)?;
    Ok(json!({
        "kind": "polynomial",
        "degree": f.degree(),
        "coefficients": f.coeffs(),
        "roots": roots_json(&zeros),
        "critical_points": roots_json(&crit),
        "barycenter": barycenter(&set),
        "sigma": sigma,
        "sigma_inf": sigma_inf.value,
        "chebyshev_center": sigma_inf.center,
        "h": h,
        "h_reverse": h_reverse,
        "ratio": ratio,
        "discriminant": f.discriminant_resultant().ok(),
        "gauss_lucas": gauss_lucas_json(f),
    }))
}

pub fn measure(mu: &PointMeasure, ps: &[f64]) -> Result<Value> {
    let stats = measure_stats(mu, ps)?;
    let sigma: Map<String, Value> = stats.sigma_p.iter().map(|&(p, s)| (p_label(p), json!(s))).collect();
    let atoms = mu.locations();
    Ok(json!({
        "kind": "measure",
        "atoms": mu.atoms().iter().map(|&(z, w)| json!({"re": z.re, "im": z.im, "w": w})).collect::<Vec<_>>(),
        "total_mass": mu.total_mass(),
        "barycenter": stats.barycenter,
        "sigma": sigma,
        "sigma_inf": stats.sigma_inf,
        "s_min": stats.s_min.iter().map(|&k| atoms[k]).collect::<Vec<_>>(),
        "transform_zeros": transform_zeros(mu)?,
        "extended_zero_set": extended_zero_set(mu)?,
    }))
}

fn matrix(m: &ComplexMatrix) -> Result<Value> {
    let shift = min_shift_norm(m)?;
    Ok(json!({
        "kind": "matrix",
        "rows": m.to_rows(),
        "eigenvalues": eigenvalues(m)?,
        "spectral_norm": m.spectral_norm(),
        "commutator_norm": m.commutator_norm(),
        "min_shift_norm": shift.value,
        "shift_center": shift.center,
    }))
}

pub fn analyze(input: &Input, ps: &[f64]) -> Result<Value> {
    match input {
        Input::Polynomial { polynomial: f } => polynomial(f, ps),
        Input::Measure { measure: mu } => measure(mu, ps),
        Input::Matrix { matrix: m } => matrix(m),
        Input::Toeplitz { a } => Ok(json!({ "kind": "toeplitz", "report": toeplitz_check(a)? })),
        Input::Circulant { a, b } => {
            let m = cubic_circulant(*a, *b);
            let f = Polynomial::new(charpoly(&m))?;
            Ok(json!({
                "kind": "circulant",
                "a": a,
                "b": b,
                "sigma_circ": a.norm().max(b.norm()),
                "rows": m.to_rows(),
                "polynomial": polynomial(&f, ps)?,
            }))
        }
    }
}
