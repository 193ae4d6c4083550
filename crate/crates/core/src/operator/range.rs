//! Numerical ranges, the shift norm `min_c ‖A - cI‖`, and the normal-matrix
//! submatrix spectra conjecture.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{differentiator_basis, off_block_norm};
use crate::error::{Error, Result};
use crate::geometry::{chebyshev_disk, convex_hull, distance_to_hull, max_distance_to_set_over_hull};
use crate::linalg::{eigenvalues, inner, top_eigenpair, top_singular, vec_norm, ComplexMatrix};
use crate::verdict::{default_tolerance, Kind, Verdict};

type C64 = Complex64;

/// Support points of `W(A)`: for each of `samples` equally spaced angles θ,
/// `x* A x` for a top eigenvector `x` of the Hermitian part of `e^{-iθ} A`.
pub fn numerical_range_boundary(a: &ComplexMatrix, samples: usize) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Dimension("numerical range of a non-square matrix".into()));
    }
    if samples < 16 {
        return Err(Error::InvalidConfig(format!("need at least 16 samples, got {samples}")));
    }
    let adj = a.adjoint();
    Ok((0..samples)
        .into_par_iter()
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / samples as f64;
            let rot = C64::from_polar(1.0, -theta);
            let h = &a.scale(rot * 0.5) + &adj.scale(rot.conj() * 0.5);
            let (_, x) = top_eigenpair(&h);
            inner(&a.mul_vec(&x), &x)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub center: C64,
    pub value: f64,
    pub iterations: usize,
}

/// `min_c ‖A - cI‖` by the central-cut ellipsoid method in the plane.
///
/// With `(A - cI) v = σ u` for a top singular pair, `-u* v` (read as a
/// vector in R²) is a subgradient of `c -> ‖A - cI‖`.
pub fn min_shift_norm(a: &ComplexMatrix) -> Result<ShiftResult> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Dimension("min_shift_norm needs a nonempty square matrix".into()));
    }
    let n = a.rows();
    let norm = a.spectral_norm();
    let trace: C64 = a.diag().iter().sum();
    let mut x = trace / n as f64;
    if norm == 0.0 {
        return Ok(ShiftResult { center: x, value: 0.0, iterations: 0 });
    }
    // every minimizer lies within 2‖A‖ of the origin
    let r0 = 2.0 * norm + x.norm();
    let mut p = [r0 * r0, 0.0, r0 * r0];
    let mut best = (f64::INFINITY, x);
    let mut iterations = 0;
    while iterations < 3000 {
        iterations += 1;
        let t = top_singular(&a.shift(x));
        if t.value < best.0 {
            best = (t.value, x);
        }
        let uv = inner(&t.right, &t.left);
        let g = [-uv.re, uv.im];
        let pg = [p[0] * g[0] + p[1] * g[1], p[1] * g[0] + p[2] * g[1]];
        let gpg = g[0] * pg[0] + g[1] * pg[1];
        if gpg <= 0.0 || !gpg.is_finite() {
            break;
        }
        let s = gpg.sqrt();
        let d = [pg[0] / s, pg[1] / s];
        x -= C64::new(d[0], d[1]) / 3.0;
        let k = 4.0 / 3.0;
        p = [
            k * (p[0] - 2.0 / 3.0 * d[0] * d[0]),
            k * (p[1] - 2.0 / 3.0 * d[0] * d[1]),
            k * (p[2] - 2.0 / 3.0 * d[1] * d[1]),
        ];
        let largest = 0.5 * (p[0] + p[2]) + (0.25 * (p[0] - p[2]).powi(2) + p[1] * p[1]).sqrt();
        if largest.sqrt() <= 1e-13 * norm {
            break;
        }
    }
    Ok(ShiftResult {
        center: best.1,
        value: best.0,
        iterations,
    })
}

/// For a normal matrix, compares the symmetric Hausdorff distance between
/// `W(A)` (the convex hull of the spectrum) and the union of the spectra of
/// the principal `(n-1) x (n-1)` submatrices with `min_c ‖A - cI‖`.
pub fn submatrix_spectra_check(a: &ComplexMatrix, tol: Option<f64>) -> Result<Verdict> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::Dimension("need a square matrix of size at least 2".into()));
    }
    let norm = a.spectral_norm();
    let comm = a.commutator_norm();
    if comm > 1e-8 * norm * norm.max(1.0) {
        return Err(Error::NotNormal(comm));
    }
    let n = a.rows();
    let spectrum = eigenvalues(a)?;
    let hull = convex_hull(&spectrum);
    let mut union = Vec::new();
    for k in 0..n {
        union.extend(eigenvalues(&a.minor(k))?);
    }
    let (from_range, at) = max_distance_to_set_over_hull(&hull, &union);
    let from_union = union.iter().map(|&u| distance_to_hull(&hull, u)).fold(0.0, f64::max);
    let h = from_range.max(from_union);
    let shift = min_shift_norm(a)?;
    let cheb = chebyshev_disk(&spectrum);
    let tol = tol.unwrap_or_else(|| default_tolerance(norm));
    Ok(Verdict::from_margin(
        "submatrix_spectra",
        Kind::Conjecture,
        shift.value - h,
        tol,
        json!({
            "hausdorff": h,
            "farthest_point": [at.re, at.im],
            "min_shift_norm": shift.value,
            "shift_center": [shift.center.re, shift.center.im],
            "chebyshev_radius": cheb.radius,
        }),
    ))
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            for r in &rows {
                let c = inner(&v, r);
                v.iter_mut().zip(r).for_each(|(x, y)| *x -= c * y);
            }
        }
        let nv = vec_norm(&v);
        if nv > 1e-8 {
            rows.push(v.into_iter().map(|z| z / nv).collect());
        }
    }
    ComplexMatrix::from_rows(&rows).expect("square")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvertibilityScan {
    pub trials: usize,
    /// Singular normal matrices that nonetheless met every hypothesis.
    pub violations: usize,
    /// Largest hypothesis slack seen; a positive value is a violation.
    pub closest: f64,
}

/// Monte-Carlo scan of the invertibility statement on singular normal
/// matrices: with an orthonormal basis `v_l`, every compression to `v_l⊥`
/// having its spectrum outside the closed unit disk and every
/// `‖P_l A Q_l‖ <= 1` would contradict the statement. Even trials use the
/// differentiator basis, odd trials a random one.
pub fn invertibility_scan(trials: usize, n: usize, seed: u64) -> Result<InvertibilityScan> {
    if n < 2 {
        return Err(Error::InvalidConfig("dimension must be at least 2".into()));
    }
    let slacks: Vec<Result<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
            let radius = rng.gen_range(0.5..3.0);
            let mut diag = vec![C64::new(0.0, 0.0)];
            while diag.len() < n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if z.norm() <= 1.0 {
                    diag.push(z * radius);
                }
            }
            let u = random_unitary(n, &mut rng);
            let a = u.adjoint().matmul(&ComplexMatrix::from_diag(&diag))?.matmul(&u)?;
            let basis = if t % 2 == 0 { differentiator_basis(n) } else { random_unitary(n, &mut rng) };
            let mut slack = f64::INFINITY;
            for l in 0..n {
                let v = basis.row(l).to_vec();
                let b = super::compress(&a, &v)?;
                let min_eig = eigenvalues(&b)?.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
                let off = off_block_norm(&a, &v)?;
                slack = slack.min(min_eig - 1.0).min(1.0 - off);
            }
            Ok(slack)
        })
        .collect();
    let mut scan = InvertibilityScan {
        trials,
        violations: 0,
        closest: f64::NEG_INFINITY,
    };
    for s in slacks {
        let s = s?;
        if s > 0.0 {
            scan.violations += 1;
        }
        scan.closest = scan.closest.max(s);
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn nilpotent_range_is_a_disk() {
        let j = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        for z in numerical_range_boundary(&j, 64).unwrap() {
            assert!((z.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn two_by_two_range_is_an_ellipse_with_eigenvalue_foci() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        for z in numerical_range_boundary(&a, 64).unwrap() {
            assert!((z.norm() + (z - 1.0).norm() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_norm_of_diagonals() {
        let r = min_shift_norm(&ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10 && (r.center - c(0.5, 0.0)).norm() < 1e-8);
        let r = min_shift_norm(&ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)])).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn scalar_matrix_has_zero_distance() {
        let v = submatrix_spectra_check(&ComplexMatrix::identity(3).scale(c(2.0, 1.0)), None).unwrap();
        assert_eq!(v.witness["hausdorff"], 0.0);
        assert!(v.not_violated());
    }

    #[test]
    fn non_normal_rejected() {
        let j = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(submatrix_spectra_check(&j, None), Err(Error::NotNormal(_))));
    }
}
