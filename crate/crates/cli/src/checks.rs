//! Dispatch of the verification suite by input shape, and re-verification
//! of conjecture violations under an affine change of variables.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use anyhow::{bail, Result};
use num_complex::Complex64;
use polyvar::cauchy::PointMeasure;
use polyvar::geometry::{p_variance, Disk, WeightedPointSet};
use polyvar::io::Input;
use polyvar::linalg::{charpoly, ComplexMatrix};
use polyvar::operator::{cubic_circulant, submatrix_spectra_check, toeplitz_check};
use polyvar::poly::Polynomial;
use polyvar::suite::{
    cauchy_conjecture_check, critical_identities, exclusion_check, grace_circulant_check, nonunivalence_search,
    real_zero_refined_check, reverse_check, schmeisser_check, variance_check, DEFAULT_GRID_DENSITY,
    DEFAULT_POLAR_GRID,
};
use polyvar::verdict::{Kind, Status, Verdict};
use serde::Serialize;
use serde_json::json;

use crate::params::{p_label, Tolerances};

type C64 = Complex64;

pub const POLYNOMIAL_CHECKS: [&str; 8] = [
    "variance",
    "reverse",
    "real_zero_refined",
    "schmeisser",
    "exclusion",
    "critical_identities",
    "nonunivalence",
    "cauchy",
];

pub const ALL_CHECKS: [&str; 11] = [
    "variance",
    "reverse",
    "real_zero_refined",
    "schmeisser",
    "exclusion",
    "critical_identities",
    "nonunivalence",
    "cauchy",
    "grace_circulant",
    "toeplitz",
    "submatrix_spectra",
];

/// The checks that apply to an input shape.
pub fn applicable(input: &Input) -> Vec<&'static str> {
    match input {
        Input::Polynomial { .. } => POLYNOMIAL_CHECKS.to_vec(),
        Input::Measure { .. } => vec!["cauchy"],
        Input::Circulant { .. } => {
            let mut v = vec!["grace_circulant"];
            v.extend(POLYNOMIAL_CHECKS);
            v
        }
        Input::Toeplitz { .. } => vec!["toeplitz"],
        Input::Matrix { .. } => vec!["submatrix_spectra"],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    /// The requested check this verdict belongs to.
    pub group: String,
    /// Sub-target, such as the exponent or the zero index.
    pub target: Option<String>,
    pub verdict: Verdict,
    /// For conjecture violations: whether the violation persisted on the
    /// transformed input.
    pub reverified: Option<bool>,
}

fn entry(group: &str, target: Option<String>, verdict: Verdict) -> CheckEntry {
    CheckEntry {
        group: group.to_string(),
        target,
        verdict,
        reverified: None,
    }
}

/// Checks run under a change of variables; tolerances given on the command
/// line are absolute and scale with the input.
struct Context<'a> {
    ps: &'a [f64],
    tol: &'a Tolerances,
    /// Factor by which lengths have been scaled.
    length_scale: f64,
}

impl Context<'_> {
    fn margin_tol(&self, power: i32) -> Option<f64> {
        self.tol.margin.map(|t| t * self.length_scale.powi(power))
    }
}

fn circulant_polynomial(a: C64, b: C64) -> Result<Polynomial> {
    Ok(Polynomial::new(charpoly(&cubic_circulant(a, b)))?)
}

fn real_rooted(f: &Polynomial) -> Result<bool> {
    let roots = f.roots()?;
    let floor = 1e-8 * roots.max_modulus().max(1.0);
    Ok(roots.locations().iter().all(|z| z.im.abs() <= floor))
}

fn polynomial_check(f: &Polynomial, name: &str, explicit: bool, ctx: &Context) -> Result<Vec<CheckEntry>> {
    let tol = ctx.margin_tol(1);
    let mut out = vec![];
    match name {
        "variance" => {
            for &p in ctx.ps {
                out.push(entry(name, Some(format!("p={}", p_label(p))), variance_check(f, p, tol)?));
            }
        }
        "reverse" => out.push(entry(name, None, reverse_check(f, tol)?)),
        "real_zero_refined" => {
            if explicit || real_rooted(f)? {
                out.push(entry(name, None, real_zero_refined_check(f, tol)?));
            }
        }
        "schmeisser" => {
            let density = ctx.tol.grid_density.unwrap_or(DEFAULT_GRID_DENSITY);
            out.push(entry(name, None, schmeisser_check(f, density, tol)?));
        }
        "exclusion" => {
            let zeros = f.roots()?;
            if zeros.len() < 2 {
                if explicit {
                    bail!("exclusion needs at least two distinct zeros");
                }
                return Ok(out);
            }
            for k in 0..zeros.len() {
                let r = exclusion_check(f, k, tol)?;
                let target = format!("zero {k}");
                out.push(entry(name, Some(target.clone()), r.walsh));
                out.push(entry(name, Some(target), r.nagy));
            }
        }
        "critical_identities" => {
            let zeros = f.roots()?.expanded();
            let scale = 1.0 + zeros.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let mut worst = 0.0f64;
            let mut reports = vec![];
            for w in f.critical_points()?.locations() {
                if polyvar::geometry::distance_to_set(w, &zeros) <= 1e-10 * scale {
                    continue;
                }
                for psi in [0.0, PI / 3.0] {
                    let r = critical_identities(f, w, psi)?;
                    worst = worst.max(r.sine_residual.max(r.diameter_residual) / r.scale);
                    reports.push(r);
                }
            }
            let witness = json!({ "max_relative_residual": worst, "reports": reports });
            let verdict = Verdict::from_margin("critical_identities", Kind::Theorem, 1e-8 - worst, 1e-10, witness);
            out.push(entry(name, None, verdict));
        }
        "nonunivalence" => {
            let origin_is_zero = f.coeffs()[0].norm() <= 1e-12 * f.max_coeff();
            if !origin_is_zero {
                if explicit {
                    bail!("nonunivalence needs F(0) = 0");
                }
                return Ok(out);
            }
            let n = f.degree() as f64;
            let sigma1 = p_variance(&WeightedPointSet::from_roots(&f.roots()?)?, 1.0)?.value;
            let radius = match ctx.tol.disk_radius {
                Some(r) => r * ctx.length_scale,
                None => 1.05 * sigma1 * (PI / n).sin(),
            };
            let disk = Disk {
                center: C64::new(0.0, 0.0),
                radius,
            };
            let grid = ctx.tol.polar_grid.unwrap_or(DEFAULT_POLAR_GRID);
            let r = nonunivalence_search(f, disk, grid)?;
            out.push(entry(name, None, r.verdict));
        }
        "cauchy" => {
            let zeros = f.roots()?;
            let mu = PointMeasure::new(zeros.entries().iter().map(|r| (r.location, r.multiplicity as f64)).collect())?;
            if mu.len() < 2 {
                if explicit {
                    bail!("cauchy needs at least two distinct zeros");
                }
                return Ok(out);
            }
            let r = cauchy_conjecture_check(&mu, tol)?;
            out.push(entry(name, Some("conjecture".into()), r.conjecture));
        }
        _ => bail!("check `{name}` does not apply to a polynomial"),
    }
    Ok(out)
}

fn measure_checks(mu: &PointMeasure, ctx: &Context) -> Result<Vec<CheckEntry>> {
    let r = cauchy_conjecture_check(mu, ctx.margin_tol(1))?;
    Ok(vec![
        entry("cauchy", Some("conjecture".into()), r.conjecture),
        entry("cauchy", Some("claim sigma_2".into()), r.claim_sigma2),
        entry("cauchy", Some("claim sigma_inf".into()), r.claim_sigma_inf),
    ])
}

fn run(input: &Input, names: &[String], explicit: bool, ctx: &Context) -> Result<Vec<CheckEntry>> {
    let allowed = applicable(input);
    let mut out = vec![];
    for name in names {
        if !allowed.contains(&name.as_str()) {
            bail!("check `{name}` does not apply to this input");
        }
        match input {
            Input::Polynomial { polynomial } => out.extend(polynomial_check(polynomial, name, explicit, ctx)?),
            Input::Measure { measure } => out.extend(measure_checks(measure, ctx)?),
            Input::Circulant { a, b } => {
                if name == "grace_circulant" {
                    out.push(entry(name, None, grace_circulant_check(*a, *b, ctx.margin_tol(1))?));
                } else {
                    out.extend(polynomial_check(&circulant_polynomial(*a, *b)?, name, explicit, ctx)?);
                }
            }
            Input::Toeplitz { a } => {
                let r = toeplitz_check(a)?;
                let tol = ctx.margin_tol(2).unwrap_or(1e-10 * (1.0 + r.bound));
                let witness = serde_json::to_value(&r)?;
                out.push(entry(name, None, Verdict::from_margin("toeplitz", Kind::Conjecture, r.margin, tol, witness)));
            }
            Input::Matrix { matrix } => out.push(entry(name, None, submatrix_spectra_check(matrix, ctx.margin_tol(1))?)),
        }
    }
    Ok(out)
}

/// The map `z -> A z + B` used for re-verification; `A = 2 e^{i/2}`.
const A: C64 = C64::new(1.7551651237807455, 0.958851077208406);
const B: C64 = C64::new(0.25, -0.5);

fn transformed(input: &Input) -> Result<Input> {
    Ok(match input {
        Input::Polynomial { polynomial } => Input::Polynomial {
            polynomial: polynomial.affine_image(A, B)?,
        },
        Input::Measure { measure } => Input::Measure {
            measure: PointMeasure::new(measure.atoms().iter().map(|&(z, w)| (A * z + B, w)).collect())?,
        },
        Input::Circulant { a, b } => Input::Circulant { a: A * a, b: A * b },
        Input::Toeplitz { a } => Input::Toeplitz {
            a: a.iter().map(|&x| A * x).collect(),
        },
        Input::Matrix { matrix } => Input::Matrix {
            matrix: shifted(matrix),
        },
    })
}

fn shifted(m: &ComplexMatrix) -> ComplexMatrix {
    m.scale(A).shift(B)
}

#[derive(Debug, Serialize)]
pub struct SuiteOutcome {
    pub checks: Vec<CheckEntry>,
    pub counts: BTreeMap<String, usize>,
    pub theorem_violations: usize,
    pub confirmed_discoveries: usize,
    pub unconfirmed_violations: usize,
    pub exit_code: i32,
}

/// Runs the named checks (all applicable ones when `names` is empty) and
/// re-runs every check with a conjecture violation on the transformed input.
pub fn run_suite(input: &Input, names: &[String], ps: &[f64], tol: &Tolerances) -> Result<SuiteOutcome> {
    for name in names {
        if !ALL_CHECKS.contains(&name.as_str()) {
            bail!("unknown check `{name}`; known checks: {}", ALL_CHECKS.join(", "));
        }
    }
    let explicit = !names.is_empty();
    let names: Vec<String> = if explicit {
        names.to_vec()
    } else {
        applicable(input).iter().map(|s| s.to_string()).collect()
    };
    let ctx = Context {
        ps,
        tol,
        length_scale: 1.0,
    };
    let mut checks = run(input, &names, explicit, &ctx)?;
    let moved = transformed(input)?;
    let moved_ctx = Context {
        ps,
        tol,
        length_scale: A.norm(),
    };
    for c in checks.iter_mut() {
        if c.verdict.kind == Kind::Conjecture && c.verdict.violated() {
            let again = run(&moved, std::slice::from_ref(&c.group), explicit, &moved_ctx)?;
            let persisted = again
                .iter()
                .any(|e| e.verdict.check == c.verdict.check && (e.target == c.target || c.group == "exclusion") && e.verdict.violated());
            c.reverified = Some(persisted);
        }
    }
    let mut counts = BTreeMap::new();
    for c in &checks {
        let key = match c.verdict.status {
            Status::Holds => "HOLDS",
            Status::Violated => "VIOLATED",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        *counts.entry(key.to_string()).or_insert(0) += 1;
    }
    let violated = |kind: Kind| checks.iter().filter(move |c| c.verdict.kind == kind && c.verdict.violated());
    let theorem_violations = violated(Kind::Theorem).count();
    let confirmed_discoveries = violated(Kind::Conjecture).filter(|c| c.reverified == Some(true)).count();
    let unconfirmed_violations = violated(Kind::Conjecture).count() - confirmed_discoveries;
    let exit_code = if theorem_violations > 0 {
        1
    } else if confirmed_discoveries > 0 {
        2
    } else {
        0
    };
    Ok(SuiteOutcome {
        checks,
        counts,
        theorem_violations,
        confirmed_discoveries,
        unconfirmed_violations,
        exit_code,
    })
}
