//! Hermitian eigenproblems via the real symmetric embedding
//! `H = R + iS  ->  [[R, -S], [S, R]]`, solved with cyclic Jacobi rotations.
//!
//! Every eigenvalue of `H` appears twice in the embedding and an eigenvector
//! `(u, v)` of the embedding maps to the eigenvector `u + iv` of `H`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

type C64 = Complex64;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a real symmetric
/// matrix given row-major. Eigenvector `k` is column `k` of the returned matrix.
fn jacobi_symmetric(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= 1e-17 * total || total == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + new] = v[k * n + old];
        }
    }
    (values, vectors)
}

fn embed(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // Symmetrize so that tiny non-Hermitian rounding does not leak in.
            let z = 0.5 * (h[(i, j)] + h[(j, i)].conj());
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    a
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    assert!(h.is_square());
    let n = h.rows();
    let (values, _) = jacobi_symmetric(embed(h), 2 * n);
    values.into_iter().step_by(2).collect()
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
pub fn top_eigenpair(h: &ComplexMatrix) -> (f64, Vec<C64>) {
    assert!(h.is_square());
    let n = h.rows();
    let m = 2 * n;
    let (values, vectors) = jacobi_symmetric(embed(h), m);
    let top = m - 1;
    let x: Vec<C64> = (0..n)
        .map(|k| C64::new(vectors[k * m + top], vectors[(k + n) * m + top]))
        .collect();
    (values[top], x)
}

/// Top singular triple `A v = value * u`.
#[derive(Clone, Debug)]
pub struct SingularTriple {
    pub value: f64,
    pub left: Vec<C64>,
    pub right: Vec<C64>,
}

pub fn top_singular(a: &ComplexMatrix) -> SingularTriple {
    if a.rows() == 0 || a.cols() == 0 {
        return SingularTriple {
            value: 0.0,
            left: vec![],
            right: vec![],
        };
    }
    let gram = a.adjoint().matmul(a).expect("conformable");
    let (lambda, v) = top_eigenpair(&gram);
    let av = a.mul_vec(&v);
    let value = super::matrix::vec_norm(&av).max(lambda.max(0.0).sqrt());
    let left = if value > 0.0 {
        av.iter().map(|z| z / value).collect()
    } else {
        let mut e = vec![C64::new(0.0, 0.0); a.rows()];
        e[0] = C64::new(1.0, 0.0);
        e
    };
    SingularTriple {
        value,
        left,
        right: v,
    }
}
