//! General complex eigenvalues: Householder reduction to upper Hessenberg
//! form followed by the explicitly shifted QR iteration with Wilkinson shifts.

use num_complex::Complex64;

use super::matrix::{solve, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Largest supported dimension.
pub const MAX_DIM: usize = 200;

/// Reduces a square matrix to upper Hessenberg form by a unitary similarity.
pub fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = vec_norm(&x);
        if alpha <= f64::MIN_POSITIVE || x[1..].iter().all(|z| z.norm() == 0.0) {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let mut v = x.clone();
        v[0] += phase * alpha;
        let vn = vec_norm(&v);
        v.iter_mut().for_each(|z| *z /= vn);
        // H <- (I - 2vv*) H on rows k+1..n
        for j in 0..n {
            let s: C64 = (0..v.len()).map(|t| v[t].conj() * h[(k + 1 + t, j)]).sum();
            for t in 0..v.len() {
                h[(k + 1 + t, j)] -= 2.0 * v[t] * s;
            }
        }
        // H <- H (I - 2vv*) on columns k+1..n
        for i in 0..n {
            let s: C64 = (0..v.len()).map(|t| h[(i, k + 1 + t)] * v[t]).sum();
            for t in 0..v.len() {
                h[(i, k + 1 + t)] -= 2.0 * s * v[t].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let r = an.hypot(b.norm());
    if r == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    (an / r, (a / an) * b.conj() / r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix, with algebraic multiplicity.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Dimension("eigenvalues of a non-square matrix".into()));
    }
    let n = a.rows();
    if n > MAX_DIM {
        return Err(Error::UnsupportedSize(n));
    }
    if !a.is_finite() {
        return Err(Error::EigenDidNotConverge { dim: n });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let mut h = hessenberg(a);
    let norm = h.max_abs().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut values = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        if hi == 0 {
            values[0] = h[(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            values[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > 200 {
            return Err(Error::EigenDidNotConverge { dim: n });
        }
        let mu = if iter % 10 == 0 {
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + C64::new(0.75 * sub, 0.4 * sub)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            rots.push((c, s));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (c, s) = rots[idx];
            for i in l..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    Ok(values)
}

/// Characteristic polynomial `det(zI - A)` (ascending coefficients) by the
/// determinant recurrence on the Hessenberg form.
pub fn charpoly(a: &ComplexMatrix) -> Vec<C64> {
    assert!(a.is_square());
    let h = hessenberg(a);
    let n = h.rows();
    // polys[k] = characteristic polynomial of the leading k x k block
    let mut polys: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![ZERO; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= h[(k, k)] * c;
        }
        let mut prod = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            prod *= h[(i + 1, i)];
            let coef = h[(i, k)] * prod;
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] -= coef * c;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Unit eigenvector for an (approximate) eigenvalue by inverse iteration.
pub fn eigenvector(a: &ComplexMatrix, lambda: C64) -> Vec<C64> {
    let n = a.rows();
    let scale = a.max_abs().max(1.0);
    let mut x = vec![C64::new(1.0, 0.0); n];
    for (k, z) in x.iter_mut().enumerate() {
        *z = C64::new(1.0 + 0.1 * k as f64, 0.05 * k as f64);
    }
    let mut delta = 1e-13 * scale;
    for _ in 0..3 {
        let shifted = a.shift(lambda + C64::new(delta, delta));
        match solve(&shifted, &x) {
            Some(y) => {
                let nrm = vec_norm(&y);
                if nrm.is_finite() && nrm > 0.0 {
                    x = y.into_iter().map(|z| z / nrm).collect();
                }
            }
            None => delta *= 10.0,
        }
    }
    let nrm = vec_norm(&x);
    x.into_iter().map(|z| z / nrm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_spectrum() {
        let d = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0), c(2.0, -1.0)];
        let ev = sorted(eigenvalues(&ComplexMatrix::from_diag(&d)).unwrap());
        for (a, b) in ev.iter().zip(sorted(d)) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn nilpotent_block() {
        let j = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let ev = eigenvalues(&j).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let r = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let ev = sorted(eigenvalues(&r).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn hessenberg_preserves_trace_and_shape() {
        let a = ComplexMatrix::from_fn(5, 5, |i, j| c((i * 7 + j * 3) as f64 % 5.0, (i as f64 - j as f64) * 0.3));
        let h = hessenberg(&a);
        let tr_a: C64 = a.diag().iter().sum();
        let tr_h: C64 = h.diag().iter().sum();
        assert!((tr_a - tr_h).norm() < 1e-12);
        for i in 2..5 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn charpoly_of_companion_like_matrix() {
        // [[1,2],[3,4]] -> z^2 - 5z - 2
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]).unwrap();
        let p = charpoly(&a);
        assert!((p[0] - c(-2.0, 0.0)).norm() < 1e-13);
        assert!((p[1] - c(-5.0, 0.0)).norm() < 1e-13);
        assert!((p[2] - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn inverse_iteration_residual() {
        let a = ComplexMatrix::from_fn(6, 6, |i, j| c(((i + 2 * j) % 5) as f64, ((3 * i + j) % 4) as f64 - 1.5));
        for lambda in eigenvalues(&a).unwrap() {
            let v = eigenvector(&a, lambda);
            let av = a.mul_vec(&v);
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - lambda * y).norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-8 * a.spectral_norm(), "residual {r}");
        }
    }
}
