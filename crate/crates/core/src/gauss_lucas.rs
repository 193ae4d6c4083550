//! Gauss–Lucas matrices: the row-stochastic matrices carrying the distinct
//! zeros of `F` to the critical points of `F` that are not zeros of `F`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_to_set, p_variance, WeightedPointSet};
use crate::linalg::ComplexMatrix;
use crate::poly::{refine_critical_point, Polynomial, RootMultiset};

type C64 = Complex64;

/// Critical points that are not zeros of `F`: for each zero of multiplicity
/// `m >= 2`, the `m - 1` critical points nearest to it are removed.
pub fn free_critical_points(zeros: &RootMultiset, crit: &RootMultiset) -> Vec<C64> {
    let mut pool = crit.expanded();
    for r in zeros.entries().iter().filter(|r| r.multiplicity >= 2) {
        for _ in 0..r.multiplicity - 1 {
            let nearest = pool
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - r.location).norm().total_cmp(&(b.1 - r.location).norm()))
                .map(|(i, _)| i);
            if let Some(i) = nearest {
                pool.swap_remove(i);
            }
        }
    }
    pool.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pool
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GLMatrix {
    /// `(k-1) x k`, row `i` for critical point `i`, column `j` for zero `j`.
    pub entries: Vec<Vec<f64>>,
    pub zero_locations: Vec<C64>,
    pub multiplicities: Vec<usize>,
    pub crit_locations: Vec<C64>,
}

impl GLMatrix {
    pub fn degree(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `max_i |(G z)_i - w_i|`.
    pub fn transport_residual(&self) -> f64 {
        self.entries
            .iter()
            .zip(&self.crit_locations)
            .map(|(row, &w)| {
                let gz: C64 = row.iter().zip(&self.zero_locations).map(|(&g, &z)| z * g).sum();
                (gz - w).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Appends the row `m_j / n`.
    pub fn augmented(&self) -> AugmentedGLMatrix {
        let n = self.degree() as f64;
        let mut entries = self.entries.clone();
        entries.push(self.multiplicities.iter().map(|&m| m as f64 / n).collect());
        AugmentedGLMatrix { entries }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AugmentedGLMatrix {
    pub entries: Vec<Vec<f64>>,
}

/// Builds the Gauss–Lucas matrix on the distinct zeros of `f`.
pub fn gauss_lucas_matrix(f: &Polynomial) -> Result<GLMatrix> {
    let zeros = f.roots()?;
    if zeros.len() < 2 {
        return Err(Error::SingleDistinctZero);
    }
    let crit = f.critical_points()?;
    let z = zeros.locations();
    let m = zeros.multiplicities();
    let w: Vec<C64> = free_critical_points(&zeros, &crit)
        .into_iter()
        .map(|w| refine_critical_point(&zeros, w))
        .collect();
    let radius = 1e-7 * (1.0 + zeros.max_modulus());
    let mut entries = Vec::with_capacity(w.len());
    for &wi in &w {
        let mut row = Vec::with_capacity(z.len());
        for (&zj, &mj) in z.iter().zip(&m) {
            let d2 = (wi - zj).norm_sqr();
            if d2.sqrt() <= radius {
                return Err(Error::DegenerateCriticalPoint {
                    crit: wi.to_string(),
                    zero: zj.to_string(),
                });
            }
            row.push(mj as f64 / d2);
        }
        let total: f64 = row.iter().sum();
        row.iter_mut().for_each(|g| *g /= total);
        entries.push(row);
    }
    Ok(GLMatrix {
        entries,
        zero_locations: z,
        multiplicities: m,
        crit_locations: w,
    })
}

pub fn augmented_matrix(f: &Polynomial) -> Result<AugmentedGLMatrix> {
    Ok(gauss_lucas_matrix(f)?.augmented())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StochasticityReport {
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
    pub col_maxima: Vec<f64>,
    pub is_row: bool,
    pub is_doubly: bool,
}

impl StochasticityReport {
    /// Largest deviation of a row or column sum from one.
    pub fn max_deviation(&self) -> f64 {
        self.row_sums
            .iter()
            .chain(&self.col_sums)
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_col_deviation(&self) -> f64 {
        self.col_sums.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Row and column sums of a nonnegative matrix. `is_doubly` also requires
/// the matrix to be square.
pub fn stochasticity_report(m: &[Vec<f64>], tol: f64) -> Result<StochasticityReport> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut col_sums = vec![0.0; cols];
    let mut col_maxima = vec![0.0f64; cols];
    let mut row_sums = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, &x) in row.iter().enumerate() {
            if x < 0.0 {
                return Err(Error::NegativeEntry(i, j));
            }
            col_sums[j] += x;
            col_maxima[j] = col_maxima[j].max(x);
        }
        row_sums.push(row.iter().sum());
    }
    let ok = |s: &f64| (s - 1.0).abs() <= tol;
    let is_row = row_sums.iter().all(ok);
    let is_doubly = is_row && rows == cols && col_sums.iter().all(ok);
    Ok(StochasticityReport {
        row_sums,
        col_sums,
        col_maxima,
        is_row,
        is_doubly,
    })
}

/// Entrywise squared modulus.
pub fn phi(m: &ComplexMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| z.norm_sqr()).collect())
        .collect()
}

/// For exactly three distinct zeros, the unitary matrix with rows
/// `(√m_j / (w_1 - z_j))`, `conj(√m_j / (w_2 - z_j))` and `(√m_j)`
/// normalized. Its image under [`phi`] is the augmented matrix.
pub fn three_zero_unitary(f: &Polynomial) -> Result<ComplexMatrix> {
    let gl = gauss_lucas_matrix(f)?;
    if gl.zero_locations.len() != 3 {
        return Err(Error::UnsupportedSize(gl.zero_locations.len()));
    }
    let sq: Vec<f64> = gl.multiplicities.iter().map(|&m| (m as f64).sqrt()).collect();
    let (w1, w2) = (gl.crit_locations[0], gl.crit_locations[1]);
    let z = &gl.zero_locations;
    let rows: Vec<Vec<C64>> = vec![
        (0..3).map(|j| sq[j] / (w1 - z[j])).collect(),
        (0..3).map(|j| (sq[j] / (w2 - z[j])).conj()).collect(),
        (0..3).map(|j| C64::new(sq[j], 0.0)).collect(),
    ];
    let rows = rows
        .into_iter()
        .map(|r| {
            let n = crate::linalg::vec_norm(&r);
            r.into_iter().map(|x| x / n).collect()
        })
        .collect::<Vec<_>>();
    ComplexMatrix::from_rows(&rows)
}

/// Per-column consequence of the 2-variance inequality chain: a column with
/// an entry of at least `1/n` forces a critical point within `σ₂(F)` of the
/// column's zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnCertificate {
    pub zero: C64,
    pub multiplicity: usize,
    pub column_max: f64,
    /// Whether the column has an entry `>= 1/n`.
    pub certified: bool,
    pub nearest_critical: f64,
    pub sigma2: f64,
}

pub fn two_variance_certificates(f: &Polynomial) -> Result<Vec<ColumnCertificate>> {
    let gl = gauss_lucas_matrix(f)?;
    let n = gl.degree() as f64;
    let set = WeightedPointSet::new(
        gl.zero_locations
            .iter()
            .zip(&gl.multiplicities)
            .map(|(&z, &m)| (z, m as f64))
            .collect(),
    )?;
    let sigma2 = p_variance(&set, 2.0)?.value;
    let crit = f.critical_points()?.locations();
    Ok((0..gl.zero_locations.len())
        .map(|j| {
            let column_max = gl.entries.iter().map(|r| r[j]).fold(0.0, f64::max);
            ColumnCertificate {
                zero: gl.zero_locations[j],
                multiplicity: gl.multiplicities[j],
                column_max,
                certified: column_max >= 1.0 / n,
                nearest_critical: distance_to_set(gl.zero_locations[j], &crit),
                sigma2,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cubic_rows() {
        let f = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]).unwrap();
        let gl = gauss_lucas_matrix(&f).unwrap();
        assert_eq!(gl.entries.len(), 2);
        let w = 1.0 / 3f64.sqrt();
        let raw = [(w + 1.0).powi(-2), w.powi(-2), (w - 1.0).powi(-2)];
        let total: f64 = raw.iter().sum();
        let row = &gl.entries[1];
        for j in 0..3 {
            assert!((row[j] - raw[j] / total).abs() < 1e-12);
        }
        assert!(gl.transport_residual() < 1e-12);
        let aug = gl.augmented();
        assert_eq!(aug.entries[2], vec![1.0 / 3.0; 3]);
    }

    #[test]
    fn two_point() {
        let gl = gauss_lucas_matrix(&Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(gl.entries, vec![vec![0.5, 0.5]]);
    }

    #[test]
    fn quartic_is_not_doubly_stochastic() {
        let f = Polynomial::from_real(&[-4.0, 0.0, -3.0, 0.0, 1.0]).unwrap();
        let rep = stochasticity_report(&augmented_matrix(&f).unwrap().entries, 1e-8).unwrap();
        assert!(rep.is_row && !rep.is_doubly);
        assert!(rep.max_col_deviation() > 1e-3);
    }

    #[test]
    fn shared_roots_are_removed() {
        // z (z-1)^4: critical points {1/5, 1, 1, 1}
        let f = Polynomial::from_root_list(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0)).unwrap();
        let gl = gauss_lucas_matrix(&f).unwrap();
        assert_eq!(gl.crit_locations.len(), 1);
        assert!((gl.crit_locations[0] - c(0.2, 0.0)).norm() < 1e-12);
        let rep = stochasticity_report(&gl.augmented().entries, 1e-8).unwrap();
        assert!(rep.is_doubly);
    }

    #[test]
    fn phi_of_fourier_and_lemma_unitary() {
        let f3 = ComplexMatrix::from_fn(3, 3, |i, j| C64::from_polar(1.0 / 3f64.sqrt(), std::f64::consts::TAU * (i * j) as f64 / 3.0));
        for row in phi(&f3) {
            assert!(row.iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-15));
        }
        let f = Polynomial::from_root_list(&[c(0.0, 0.0), c(2.0, 1.0), c(2.0, 1.0), c(-1.0, 3.0)], c(1.0, 0.0)).unwrap();
        let u = three_zero_unitary(&f).unwrap();
        let uu = u.matmul(&u.adjoint()).unwrap();
        assert!((&uu - &ComplexMatrix::identity(3)).max_abs() < 1e-12);
        let aug = augmented_matrix(&f).unwrap().entries;
        let ph = phi(&u);
        for i in 0..3 {
            for j in 0..3 {
                assert!((ph[i][j] - aug[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn negative_entry_rejected() {
        assert_eq!(stochasticity_report(&[vec![1.0, -0.1]], 1e-8), Err(Error::NegativeEntry(0, 1)));
    }
}
