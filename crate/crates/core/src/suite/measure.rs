use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::pairs;
use crate::cauchy::{extended_zero_set, measure_stats, transform_zeros, PointMeasure};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff, HausdorffMode};
use crate::verdict::{default_tolerance, Kind, Verdict};

type C64 = Complex64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    /// `h(S_min(μ), V(μ)) <= σ_∞(μ)`.
    pub conjecture: Verdict,
    /// `H(S(μ), W_e(μ)) <= σ₂(μ)`, known to fail.
    pub claim_sigma2: Verdict,
    /// `H(S(μ), W_e(μ)) <= σ_∞(μ)`, known to fail.
    pub claim_sigma_inf: Verdict,
    /// `σ₂(μ) - h(S_min(μ), V(μ))`; nonnegative for three atoms.
    pub sigma2_margin: f64,
}

/// Weighted analogue of the variance conjecture for the zeros of the Cauchy
/// transform, with the two stronger statements about the extended zero set
/// reported alongside. The measure is normalized first.
pub fn cauchy_conjecture_check(mu: &PointMeasure, tol: Option<f64>) -> Result<CauchyReport> {
    if mu.len() < 2 {
        return Err(Error::DegreeTooSmall { required: 2, found: mu.len() });
    }
    let nu = mu.normalized();
    let stats = measure_stats(&nu, &[2.0])?;
    let sigma2 = stats.sigma_p[0].1;
    let sigma_inf = stats.sigma_inf;
    let atoms = nu.locations();
    let s_min: Vec<C64> = stats.s_min.iter().map(|&k| atoms[k]).collect();
    let v = transform_zeros(&nu)?;
    let we = extended_zero_set(&nu)?;
    let h = hausdorff(&s_min, &v, HausdorffMode::OneSided)?;
    let big_h = hausdorff(&atoms, &we, HausdorffMode::Symmetric)?;
    let scale = atoms.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = tol.unwrap_or_else(|| default_tolerance(scale));
    let witness = json!({
        "s_min": pairs(&s_min),
        "transform_zeros": pairs(&v),
        "extended_zero_set": pairs(&we),
        "h_s_min": h,
        "hausdorff_extended": big_h,
        "sigma_2": sigma2,
        "sigma_inf": sigma_inf,
        "atoms": nu.atoms().iter().map(|&(z, w)| json!({"re": z.re, "im": z.im, "w": w})).collect::<Vec<_>>(),
    });
    Ok(CauchyReport {
        conjecture: Verdict::from_margin("cauchy_s_min", Kind::Conjecture, sigma_inf - h, tol, witness.clone()),
        claim_sigma2: Verdict::from_margin("cauchy_claim_sigma_2", Kind::Conjecture, sigma2 - big_h, tol, witness.clone()),
        claim_sigma_inf: Verdict::from_margin("cauchy_claim_sigma_inf", Kind::Conjecture, sigma_inf - big_h, tol, witness),
        sigma2_margin: sigma2 - h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::counterexample_measure;
    use crate::verdict::Status;

    #[test]
    fn counterexample_instances() {
        for n in 3..=6 {
            let r = cauchy_conjecture_check(&counterexample_measure(n).unwrap(), None).unwrap();
            assert_eq!(r.claim_sigma_inf.status, Status::Violated, "{n}");
            assert_eq!(r.claim_sigma2.status, Status::Violated, "{n}");
            assert_eq!(r.conjecture.status, Status::Holds, "{n}");
        }
    }

    #[test]
    fn single_atom_rejected() {
        let m = PointMeasure::new(vec![(C64::new(0.0, 0.0), 1.0)]).unwrap();
        assert!(cauchy_conjecture_check(&m, None).is_err());
    }
}
