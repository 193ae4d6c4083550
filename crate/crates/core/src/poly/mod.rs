//! Complex polynomials, their zeros and critical points.

mod roots;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use roots::{find_roots, RootOptions};

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Smallest leading-coefficient magnitude accepted.
pub const LEADING_FLOOR: f64 = 1e-300;

/// A zero (or critical point) together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub location: C64,
    pub multiplicity: usize,
}

/// Distinct locations with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RootMultiset {
    entries: Vec<Root>,
}

impl RootMultiset {
    pub fn new(entries: Vec<Root>) -> Result<Self> {
        if entries.iter().any(|r| r.multiplicity == 0) {
            return Err(Error::InvalidConfig("multiplicity must be positive".into()));
        }
        Ok(Self { entries })
    }

    /// Every location with multiplicity one.
    pub fn simple(locations: &[C64]) -> Self {
        Self {
            entries: locations
                .iter()
                .map(|&location| Root {
                    location,
                    multiplicity: 1,
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[Root] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|r| r.multiplicity).sum()
    }

    pub fn locations(&self) -> Vec<C64> {
        self.entries.iter().map(|r| r.location).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.multiplicity).collect()
    }

    /// Locations repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<C64> {
        self.entries
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.location, r.multiplicity))
            .collect()
    }

    /// Largest modulus among the locations.
    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|r| r.location.norm()).fold(0.0, f64::max)
    }
}

/// Discriminant `prod_{k>l} (z_k - z_l)^2` and resultant
/// `prod_k prod_j (z_k - w_j)` of a monic polynomial and its derivative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscriminantResultant {
    pub discriminant: C64,
    pub resultant: C64,
}

/// `F(z) = a (z - c)^n - b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalForm {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

/// Polynomial with complex coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    /// Trailing coefficients of magnitude at most [`LEADING_FLOOR`] are dropped.
    pub fn new(mut coeffs: Vec<C64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.norm() <= LEADING_FLOOR) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Parse("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn constant(c: C64) -> Result<Self> {
        Self::new(vec![c])
    }

    /// `leading * prod (z - r)^m` over the multiset.
    pub fn from_roots(roots: &RootMultiset, leading: C64) -> Result<Self> {
        Self::from_root_list(&roots.expanded(), leading)
    }

    /// `leading * prod (z - r)` over a list with repetitions.
    pub fn from_root_list(roots: &[C64], leading: C64) -> Result<Self> {
        if leading.norm() <= LEADING_FLOOR {
            return Err(Error::ZeroLeading);
        }
        let mut coeffs = vec![leading];
        for &r in roots {
            coeffs.push(ZERO);
            for k in (1..coeffs.len()).rev() {
                let lower = coeffs[k - 1];
                coeffs[k] = lower - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> C64 {
        *self.coeffs.last().unwrap()
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        Self {
            coeffs: self.coeffs.iter().map(|c| c / lead).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficientwise derivative. A constant polynomial has the zero
    /// polynomial as derivative, reported as [`Error::ZeroDerivative`].
    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            return Err(Error::ZeroDerivative);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// `k`-th derivative; the zero polynomial is reported as an error.
    pub fn nth_derivative(&self, k: usize) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative()?;
        }
        Ok(p)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// The polynomial with zeros `a z_k + b` and the same leading
    /// coefficient, `a^n F((w - b) / a)`.
    pub fn affine_image(&self, a: C64, b: C64) -> Result<Self> {
        if a == ZERO {
            return Err(Error::InvalidConfig("affine map with a = 0".into()));
        }
        let n = self.degree();
        let mut pow = C64::new(1.0, 0.0);
        let mut coeffs = self.coeffs.clone();
        for k in (0..=n).rev() {
            coeffs[k] *= pow;
            pow *= a;
        }
        Ok(Self { coeffs }.taylor_shift(-b))
    }

    /// Coefficients of `F(z + c)`.
    pub fn taylor_shift(&self, c: C64) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let hi = a[k + 1];
                a[k] += c * hi;
            }
        }
        Self { coeffs: a }
    }

    /// Zeros with multiplicities (see [`find_roots`]).
    pub fn roots(&self) -> Result<RootMultiset> {
        find_roots(self, &RootOptions::default())
    }

    /// Zeros of the derivative; their total count is `degree - 1`.
    pub fn critical_points(&self) -> Result<RootMultiset> {
        if self.degree() < 2 {
            return Err(Error::DegreeTooSmall {
                required: 2,
                found: self.degree(),
            });
        }
        self.derivative()?.roots()
    }

    pub fn discriminant_resultant(&self) -> Result<DiscriminantResultant> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall { required: 2, found: n });
        }
        let monic = self.monic();
        let zeros = monic.roots()?.expanded();
        let crits = monic.critical_points()?.expanded();
        let mut discriminant = ONE;
        for k in 0..zeros.len() {
            for l in 0..k {
                let d = zeros[k] - zeros[l];
                discriminant *= d * d;
            }
        }
        let mut resultant = ONE;
        for z in &zeros {
            for w in &crits {
                resultant *= z - w;
            }
        }
        Ok(DiscriminantResultant {
            discriminant,
            resultant,
        })
    }

    /// Apolarity pairing `sum_k (-1)^k C(n,k) a_k b_{n-k}` where
    /// `F = sum C(n,k) a_k z^k` and `G = sum C(n,k) b_k z^k`.
    pub fn apolar_form(&self, other: &Self) -> Result<C64> {
        let n = self.degree();
        if other.degree() != n {
            return Err(Error::DegreeMismatch(n, other.degree()));
        }
        let binom = binomials(n);
        let a: Vec<C64> = self.coeffs.iter().zip(&binom).map(|(c, b)| c / b).collect();
        let b: Vec<C64> = other.coeffs.iter().zip(&binom).map(|(c, b)| c / b).collect();
        Ok((0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom[k] * a[k] * b[n - k]
            })
            .sum())
    }

    /// Recognizes `a (z - c)^n - b` up to a relative tolerance on the
    /// middle coefficients of `F(z + c)`, with `c` the barycenter of the zeros.
    pub fn extremal_form(&self, tol: f64) -> Option<ExtremalForm> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let a = self.leading();
        let c = -self.coeffs[n - 1] / (a * n as f64);
        let shifted = self.taylor_shift(c);
        let d = shifted.coeffs();
        let b = -d[0];
        let radius = (b.norm() / a.norm()).powf(1.0 / n as f64);
        let top = a.norm() * radius.powi(n as i32);
        let middle = (1..n)
            .map(|k| d[k].norm() * radius.powi(k as i32))
            .fold(0.0, f64::max);
        if top == 0.0 {
            return (middle == 0.0).then_some(ExtremalForm { a, b, c });
        }
        (middle <= tol * top).then_some(ExtremalForm { a, b, c })
    }
}

fn binomials(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    row
}


/// Newton on `sum m_k / (w - z_k)` from `start`, which pins a critical point
/// that is not a zero down from the zeros instead of from the coefficients
/// of `F'`. Near clustered zeros the coefficients of `F'` only fix it to
/// about `eps / |F''(w)|`.
pub fn refine_critical_point(zeros: &RootMultiset, start: C64) -> C64 {
    let log_derivative = |w: C64| {
        zeros.entries().iter().fold((C64::new(0.0, 0.0), C64::new(0.0, 0.0)), |(g, dg), r| {
            let inv = (w - r.location).inv();
            let m = r.multiplicity as f64;
            (g + inv * m, dg - inv * inv * m)
        })
    };
    let cap = 1e-3 * (1.0 + start.norm());
    let mut w = start;
    let (mut g, mut dg) = log_derivative(w);
    for _ in 0..6 {
        if !g.is_finite() || dg.norm() == 0.0 {
            break;
        }
        let next = w - g / dg;
        if (next - start).norm() > cap {
            break;
        }
        let (g_next, dg_next) = log_derivative(next);
        if !(g_next.norm() < g.norm()) {
            break;
        }
        (w, g, dg) = (next, g_next, dg_next);
    }
    w
}
