//! The matrix side of the theory: a polynomial `F` with zeros `z_k` is the
//! characteristic polynomial of `A = diag(z_k)`, and compressing `A` to the
//! orthogonal complement of any vector with entries of modulus `1/√n` gives
//! a matrix whose characteristic polynomial is `F'/n`.

mod range;
mod toeplitz;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vec_norm, ComplexMatrix};

pub use range::{
    invertibility_scan, min_shift_norm, numerical_range_boundary, submatrix_spectra_check, InvertibilityScan,
    ShiftResult,
};
pub use toeplitz::{circulant_from_zeros, toeplitz_check, toeplitz_from_zeros, toeplitz_scan, ToeplitzInstance, ToeplitzReport, ToeplitzScan};

type C64 = Complex64;

/// Unitary matrix whose row `l` is `v_k = e^{2πikl/n} / √n`.
pub fn differentiator_basis(n: usize) -> ComplexMatrix {
    let s = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |l, k| {
        C64::from_polar(s, std::f64::consts::TAU * ((k * l) % n) as f64 / n as f64)
    })
}

fn check_unit(v: &[C64]) -> Result<()> {
    let nv = vec_norm(v);
    if (nv - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit(nv));
    }
    Ok(())
}

/// Householder reflector `H` (Hermitian and unitary) with `H v = β e_1`,
/// `|β| = 1`. Columns `1..n` of `H` are an orthonormal basis of `v⊥`.
pub fn householder(v: &[C64]) -> ComplexMatrix {
    let n = v.len();
    let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { C64::new(1.0, 0.0) };
    let beta = -phase * vec_norm(v);
    let mut u = v.to_vec();
    u[0] -= beta;
    let un2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if un2 == 0.0 {
        return ComplexMatrix::identity(n);
    }
    ComplexMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        C64::new(delta, 0.0) - 2.0 * u[i] * u[j].conj() / un2
    })
}

/// Compression of `A` to `v⊥`, written in the basis given by [`householder`].
pub fn compress(a: &ComplexMatrix, v: &[C64]) -> Result<ComplexMatrix> {
    if !a.is_square() || a.rows() != v.len() {
        return Err(Error::Dimension(format!("{}x{} matrix with vector of length {}", a.rows(), a.cols(), v.len())));
    }
    check_unit(v)?;
    let n = v.len();
    let h = householder(v);
    let hah = h.matmul(a)?.matmul(&h)?;
    Ok(hah.block(1, n, 1, n))
}

/// `‖P A Q‖` with `Q = v v*` and `P = I - Q`. The operator has rank one, so
/// its norm is `‖(I - v v*) A v‖`.
pub fn off_block_norm(a: &ComplexMatrix, v: &[C64]) -> Result<f64> {
    if !a.is_square() || a.rows() != v.len() {
        return Err(Error::Dimension("off_block_norm".into()));
    }
    check_unit(v)?;
    let av = a.mul_vec(v);
    let coef: C64 = av.iter().zip(v).map(|(x, y)| x * y.conj()).sum();
    let r: Vec<C64> = av.iter().zip(v).map(|(x, y)| x - coef * y).collect();
    Ok(vec_norm(&r))
}

/// The circulant with first row `(-a-b, a, b)`; its characteristic
/// polynomial has a zero at the origin and every 2x2 principal submatrix has
/// characteristic polynomial `(z+a+b)² - ab`.
pub fn cubic_circulant(a: C64, b: C64) -> ComplexMatrix {
    let d = -a - b;
    ComplexMatrix::from_rows(&[vec![d, a, b], vec![b, d, a], vec![a, b, d]]).expect("3x3")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteinerFoci {
    pub foci: [C64; 2],
    /// The three points are collinear and the inellipse degenerates.
    pub degenerate: bool,
}

/// Foci of the Steiner inellipse, i.e. the zeros of
/// `3z² - 2(z1+z2+z3)z + (z1z2+z1z3+z2z3)`.
pub fn steiner_foci(z1: C64, z2: C64, z3: C64) -> SteinerFoci {
    let s1 = z1 + z2 + z3;
    let s2 = z1 * z2 + z1 * z3 + z2 * z3;
    // roots of z² - (2/3)s1 z + s2/3
    let b = -2.0 * s1 / 3.0;
    let c = s2 / 3.0;
    let disc = (b * b - 4.0 * c).sqrt();
    let q = if (-b + disc).norm() >= (-b - disc).norm() { (-b + disc) / 2.0 } else { (-b - disc) / 2.0 };
    let foci = if q.norm() == 0.0 { [q, q] } else { [q, c / q] };
    let area = ((z2 - z1).conj() * (z3 - z1)).im;
    let scale = (z2 - z1).norm_sqr().max((z3 - z1).norm_sqr());
    SteinerFoci {
        foci,
        degenerate: area.abs() <= 1e-12 * scale,
    }
}

/// `(‖Bx‖² + ‖B*x‖²) / ‖x‖²`.
pub fn indefinite_lemma_probe(b: &ComplexMatrix, x: &[C64]) -> Result<f64> {
    if !b.is_square() || b.rows() != x.len() {
        return Err(Error::Dimension("indefinite_lemma_probe".into()));
    }
    let nx = vec_norm(x);
    if nx == 0.0 {
        return Err(Error::Empty);
    }
    let bx = vec_norm(&b.mul_vec(x));
    let bsx = vec_norm(&b.adjoint().mul_vec(x));
    Ok((bx * bx + bsx * bsx) / (nx * nx))
}

/// Upper triangular unipotent matrix `[[1, -a, a²], [0, 1, -a], [0, 0, 1]]`.
pub fn unipotent_counterexample(a: f64) -> ComplexMatrix {
    let r = |x: f64| C64::new(x, 0.0);
    ComplexMatrix::from_rows(&[
        vec![r(1.0), r(-a), r(a * a)],
        vec![r(0.0), r(1.0), r(-a)],
        vec![r(0.0), r(0.0), r(1.0)],
    ])
    .expect("3x3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, multiset_distance};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_is_unitary() {
        for n in [2, 3, 8] {
            let u = differentiator_basis(n);
            let uu = u.matmul(&u.adjoint()).unwrap();
            assert!((&uu - &ComplexMatrix::identity(n)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn two_point_compression() {
        let a = ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let s = 1.0 / 2f64.sqrt();
        let v = [c(s, 0.0), c(s, 0.0)];
        let b = compress(&a, &v).unwrap();
        assert!((b[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((off_block_norm(&a, &v).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cubic_compression_gives_critical_points() {
        let a = ComplexMatrix::from_diag(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let s = 1.0 / 3f64.sqrt();
        let ev = eigenvalues(&compress(&a, &[c(s, 0.0); 3]).unwrap()).unwrap();
        assert!(multiset_distance(&ev, &[c(s, 0.0), c(-s, 0.0)]) < 1e-14);
    }

    #[test]
    fn non_unit_vector_rejected() {
        let a = ComplexMatrix::identity(2);
        assert_eq!(compress(&a, &[c(1.0, 0.0), c(1.0, 0.0)]), Err(Error::NotUnit(2f64.sqrt())));
    }

    #[test]
    fn steiner_examples() {
        let s = steiner_foci(c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(s.degenerate);
        let r = 1.0 / 3f64.sqrt();
        assert!(multiset_distance(&s.foci, &[c(r, 0.0), c(-r, 0.0)]) < 1e-15);
        let w = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let s = steiner_foci(c(1.0, 0.0), w, w * w);
        // a double focus: rounding of order eps in the coefficients moves it by sqrt(eps)
        assert!(!s.degenerate && s.foci.iter().all(|f| f.norm() < 1e-7));
    }

    #[test]
    fn unipotent_ratio_collapses() {
        let b = unipotent_counterexample(100.0);
        let r = indefinite_lemma_probe(&b, &[c(1.0, 0.0), c(100.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(r < 0.01, "{r}");
        assert_eq!(indefinite_lemma_probe(&ComplexMatrix::identity(2), &[c(0.3, 1.0), c(2.0, 0.0)]).unwrap(), 2.0);
    }
}
