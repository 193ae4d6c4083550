//! The acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so that every line is printed whether it
//! passes or not; the process fails if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use polyvar::cauchy::{counterexample_family, numerator, rank_one_perturbation, transform_zeros};
use polyvar::gauss_lucas::{augmented_matrix, gauss_lucas_matrix, stochasticity_report};
use polyvar::geometry::{distance_to_set, hausdorff, p_variance, HausdorffMode, WeightedPointSet};
use polyvar::linalg::{eigenvalues, multiset_distance, ComplexMatrix};
use polyvar::operator::{compress, differentiator_basis, off_block_norm, toeplitz_check, toeplitz_scan};
use polyvar::poly::Polynomial;
use polyvar::search::{local_max_probe, local_search, named_instance, Instance, SearchConfig};
use polyvar::suite::{cauchy_conjecture_check, critical_identities, exclusion_check, real_zero_refined_check};
use polyvar::verdict::Status;
use polyvar::Complex64 as C64;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn example1(n: usize) -> Polynomial {
    let mut z = vec![c(1.0, 0.0); n - 1];
    z.push(c(0.0, 0.0));
    monic(&z)
}

fn polynomial(name: &str) -> Polynomial {
    match named_instance(name).unwrap().instance {
        Instance::Polynomial { polynomial } => polynomial,
        _ => unreachable!(),
    }
}

fn sigma(f: &Polynomial, p: f64) -> Result<f64, String> {
    let set = ok(WeightedPointSet::from_roots(&ok(f.roots())?))?;
    Ok(ok(p_variance(&set, p))?.value)
}

fn c1_example1() -> Outcome {
    for n in 3..=12 {
        let f = example1(n);
        let z = ok(f.roots())?.locations();
        let w = ok(f.critical_points())?.locations();
        let h = ok(hausdorff(&z, &w, HausdorffMode::OneSided))?;
        let nf = n as f64;
        ensure!((h - 1.0 / nf).abs() <= 1e-9, "n = {n}: h = {h}");
        let s1 = sigma(&f, 1.0)?;
        ensure!((s1 - 1.0 / nf).abs() <= 1e-9, "n = {n}: sigma_1 = {s1}");
        let si = sigma(&f, f64::INFINITY)?;
        ensure!((si - 0.5).abs() <= 1e-9, "n = {n}: sigma_inf = {si}");
    }
    Ok("n = 3..12".into())
}

fn c2_monotonicity() -> Outcome {
    let mut rng = rng(2);
    let ps = [1.0, 1.5, 2.0, 3.0, 7.0, f64::INFINITY];
    for t in 0..1000 {
        let k = rng.gen_range(1..=12);
        let pts: Vec<(C64, f64)> = (0..k).map(|_| (in_disk(&mut rng, 3.0), rng.gen_range(0.1..2.0))).collect();
        let set = ok(WeightedPointSet::new(pts))?;
        let values = ps.iter().map(|&p| p_variance(&set, p).map(|r| r.value)).collect::<Result<Vec<_>, _>>();
        let values = ok(values)?;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                ensure!(values[i] <= values[j] + 1e-9, "set {t}: sigma_{} = {} > sigma_{} = {}", ps[i], values[i], ps[j], values[j]);
            }
        }
    }
    Ok("1000 weighted sets".into())
}

fn doubly(f: &Polynomial) -> Result<f64, String> {
    let m = ok(augmented_matrix(f))?;
    let r = ok(stochasticity_report(&m.entries, 1e-8))?;
    Ok(if r.is_doubly { r.max_deviation() } else { f64::INFINITY })
}

fn c3_doubly_stochastic() -> Outcome {
    let mut rng = rng(3);
    let mut worst = 0.0f64;
    for t in 0..500 {
        let f = random_three_distinct(&mut rng);
        let d = doubly(&f)?;
        ensure!(d <= 1e-8, "three-zero polynomial {t}: deviation {d}");
        worst = worst.max(d);
    }
    for t in 0..500 {
        let (f, _) = random_real_rooted(&mut rng, 2, 8);
        let d = doubly(&f)?;
        ensure!(d <= 1e-8, "real-rooted polynomial {t}: deviation {d}");
        worst = worst.max(d);
    }
    let q = polynomial("quartic");
    let m = ok(augmented_matrix(&q))?;
    let dev = ok(stochasticity_report(&m.entries, 1e-8))?.max_col_deviation();
    ensure!(dev > 1e-3, "z^4 - 3z^2 - 4 column deviation only {dev}");
    Ok(format!("max deviation {worst:.1e}; quartic column deviation {dev:.3}"))
}

fn c4_miller() -> Outcome {
    let f = polynomial("miller");
    let gl = ok(gauss_lucas_matrix(&f))?;
    let n = f.degree() as f64;
    for target in [c(0.909090818, 0.330014556), c(0.909090818, -0.330014556)] {
        let (j, d) = gl
            .zero_locations
            .iter()
            .enumerate()
            .map(|(j, z)| (j, (z - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        ensure!(d <= 1e-6, "no zero within 1e-6 of {target} (closest {d})");
        let max = gl.entries.iter().map(|row| row[j]).fold(0.0, f64::max);
        ensure!(max < 1.0 / n, "column of {target} has entry {max} >= 1/19");
    }
    Ok("both columns below 1/19".into())
}

fn c5_differentiator() -> Outcome {
    let mut rng = rng(5);
    let (mut worst_eig, mut worst_norm) = (0.0f64, 0.0f64);
    for t in 0..200 {
        let (f, z) = random_simple(&mut rng, 2, 15);
        let n = z.len();
        let crit = ok(f.critical_points())?.expanded();
        let s2 = sigma(&f, 2.0)?;
        let a = ComplexMatrix::from_diag(&z);
        let basis = differentiator_basis(n);
        for l in 0..n {
            let v = basis.row(l).to_vec();
            let ev = ok(eigenvalues(&ok(compress(&a, &v))?))?;
            let d = multiset_distance(&ev, &crit);
            ensure!(d < 1e-7, "polynomial {t}, row {l}: assignment distance {d}");
            let pn = ok(off_block_norm(&a, &v))?;
            ensure!((pn - s2).abs() <= 1e-9, "polynomial {t}, row {l}: |PAQ| = {pn}, sigma_2 = {s2}");
            worst_eig = worst_eig.max(d);
            worst_norm = worst_norm.max((pn - s2).abs());
        }
    }
    Ok(format!("eigen {worst_eig:.1e}, norm {worst_norm:.1e}"))
}

fn c6_discriminant() -> Outcome {
    let mut rng = rng(6);
    let mut worst = 0.0f64;
    for t in 0..200 {
        let (f, z) = random_simple(&mut rng, 2, 10);
        let n = z.len();
        let dr = ok(f.discriminant_resultant())?;
        let lhs = dr.discriminant.norm();
        let rhs = (n as f64).powi(n as i32) * dr.resultant.norm();
        let mut oracle = 1.0;
        for i in 0..n {
            for j in 0..i {
                oracle *= (z[i] - z[j]).norm_sqr();
            }
        }
        let rel = ((lhs - rhs) / lhs).abs();
        ensure!(rel < 1e-8, "polynomial {t}: |Discr| = {lhs}, n^n |R| = {rhs}");
        ensure!(((lhs - oracle) / oracle).abs() < 1e-8, "polynomial {t}: |Discr| = {lhs}, from zeros {oracle}");
        worst = worst.max(rel);
    }
    let cube = ok(Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]))?;
    let d = ok(cube.discriminant_resultant())?.discriminant;
    ensure!((d.norm() - 27.0).abs() <= 1e-9, "Discr(z^3 - 1) = {d}");
    let mut max_product = 0.0f64;
    for t in 0..200 {
        let n = rng.gen_range(2..=10);
        let mut z = separated(&mut rng, n, 1.0, 1e-2);
        if t % 2 == 0 {
            let r = z[0].norm();
            z[0] /= r;
        }
        let f = monic(&z);
        let product: f64 = ok(f.critical_points())?.expanded().iter().map(|&w| f.evaluate(w).norm()).product();
        ensure!(product <= 1.0 + 1e-9, "polynomial {t}: product {product}");
        max_product = max_product.max(product);
    }
    Ok(format!("max relative error {worst:.1e}; Discr(z^3-1) = {d:.3}; max product {max_product:.3}"))
}

/// Transform zeros of a three-atom measure by the quadratic formula.
fn quadratic_transform_zeros(mu: &polyvar::cauchy::PointMeasure) -> Vec<C64> {
    let a = mu.atoms();
    let (mut q2, mut q1, mut q0) = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let (zi, zj, w) = (a[i].0, a[j].0, a[k].1);
        q2 += w;
        q1 -= (zi + zj) * w;
        q0 += zi * zj * w;
    }
    let disc = (q1 * q1 - q2 * q0 * 4.0).sqrt();
    vec![(-q1 + disc) / (q2 * 2.0), (-q1 - disc) / (q2 * 2.0)]
}

fn c7_claim_disproof() -> Outcome {
    for n in 3..=6 {
        let (mu, r) = ok(counterexample_family(n))?;
        let t = (2 * n + 1) as f64;
        let nf = n as f64;
        let root = (nf * nf - 2.0 * nf - 1.0).sqrt();
        let expected = [c((nf + root) / t, 0.0), c((nf - root) / t, 0.0), c(1.0 / t, 0.0)];
        let d = multiset_distance(&r.extended_zero_set, &expected);
        ensure!(d <= 1e-8, "n = {n}: W_e off by {d}");
        ensure!(r.extended_zero_set.iter().all(|z| z.im.abs() <= 1e-8), "n = {n}: W_e not real");
        ensure!((r.sigma_inf - 1.0).abs() <= 1e-9, "n = {n}: sigma_inf = {}", r.sigma_inf);
        let di = distance_to_set(c(0.0, 1.0), &r.extended_zero_set);
        ensure!(di > 1.0, "n = {n}: dist(i, W_e) = {di}");
        let check = ok(cauchy_conjecture_check(&mu, None))?;
        ensure!(check.conjecture.status == Status::Holds, "n = {n}: conjecture {:?}", check.conjecture.status);
    }
    let mut rng = rng(7);
    let mut worst = f64::INFINITY;
    for t in 0..1000 {
        let mu = random_measure(&mut rng, 3);
        let stats = ok(polyvar::cauchy::measure_stats(&mu, &[2.0]))?;
        let s2 = stats.sigma_p[0].1;
        let v = quadratic_transform_zeros(&mu);
        let lib = ok(transform_zeros(&mu))?;
        ensure!(multiset_distance(&v, &lib) <= 1e-8, "measure {t}: transform zeros disagree with the quadratic formula");
        for &k in &stats.s_min {
            let d = distance_to_set(mu.atoms()[k].0, &v);
            ensure!(d <= s2 + 1e-9, "measure {t}: minimal atom at distance {d} > sigma_2 = {s2}");
            worst = worst.min(s2 - d);
        }
    }
    Ok(format!("n = 3..6 reproduced; 1000 three-atom measures, min slack {worst:.3}"))
}

/// The critical points of a polynomial with simple real zeros, one per gap,
/// by bisection on `Σ 1/(x - x_k)`, which decreases from +∞ to -∞ there.
fn real_critical_points(x: &[f64]) -> Vec<f64> {
    let mut x = x.to_vec();
    x.sort_by(f64::total_cmp);
    x.windows(2)
        .map(|gap| {
            let g = |t: f64| x.iter().map(|&xk| 1.0 / (t - xk)).sum::<f64>();
            let (mut lo, mut hi) = (gap[0], gap[1]);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if g(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

fn c8_real_zero_refinement() -> Outcome {
    let mut rng = rng(8);
    let mut min_slack = f64::INFINITY;
    for t in 0..500 {
        let n = rng.gen_range(3..=12);
        let x = separated_reals(&mut rng, n, 1.0, 1e-2);
        let f = monic(&x.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        let v = ok(real_zero_refined_check(&f, None))?;
        ensure!(v.status != Status::Violated, "polynomial {t}: VIOLATED with margin {}", v.margin);
        let crit = real_critical_points(&x);
        let mean = x.iter().sum::<f64>() / n as f64;
        let s2 = (x.iter().map(|xk| (xk - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
        let radius = s2 / ((n - 1) as f64).sqrt();
        for &xk in &x {
            let d = crit.iter().map(|w| (w - xk).abs()).fold(f64::INFINITY, f64::min);
            ensure!(d <= radius + 1e-9, "polynomial {t}: zero {xk} at distance {d} > {radius}");
            min_slack = min_slack.min(radius - d);
        }
    }
    let cubic = polynomial("cubic");
    let v = ok(real_zero_refined_check(&cubic, None))?;
    ensure!(v.status != Status::Violated, "z^3 - z VIOLATED");
    Ok(format!("500 polynomials, min slack {min_slack:.2e}; z^3 - z {:?}", v.status))
}

fn c9_rank_one() -> Outcome {
    let mut rng = rng(9);
    let (mut worst_spec, mut worst_sq, mut worst_norm) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..200 {
        let k = rng.gen_range(2..=8);
        let mu = random_measure(&mut rng, k);
        let v = ok(ok(numerator(&mu))?.roots())?.expanded();
        let a = in_disk(&mut rng, 1.0);
        let op = ok(rank_one_perturbation(&mu, a))?.operator;
        let mut expected = v.clone();
        expected.push(a);
        let d = multiset_distance(&ok(eigenvalues(&op))?, &expected);
        ensure!(d <= 1e-7, "measure {t}: spectrum off by {d}");
        worst_spec = worst_spec.max(d);
        let stats = ok(polyvar::cauchy::measure_stats(&mu, &[2.0]))?;
        let te = ok(rank_one_perturbation(&mu, stats.barycenter))?.perturbation;
        let sq = ok(te.matmul(&te))?.spectral_norm();
        ensure!(sq <= 1e-10, "measure {t}: |T_E^2| = {sq}");
        let dn = (te.spectral_norm() - stats.sigma_p[0].1).abs();
        ensure!(dn <= 1e-9, "measure {t}: |T_E| - sigma_2 = {dn}");
        worst_sq = worst_sq.max(sq);
        worst_norm = worst_norm.max(dn);
    }
    Ok(format!("spectrum {worst_spec:.1e}, |T_E^2| {worst_sq:.1e}, norm {worst_norm:.1e}"))
}

fn c10_toeplitz() -> Outcome {
    let scan = ok(toeplitz_scan(10_000, 12, 10))?;
    let boundary = ok(toeplitz_check(&[c(1.0, 0.0), c(0.0, 0.0)]))?;
    ensure!(boundary.margin.abs() <= 1e-12, "a = (1, 0): margin {}", boundary.margin);
    let note = if scan.violations > 0 {
        format!("{} candidate violations for the discovery path", scan.violations)
    } else {
        "no violations".into()
    };
    Ok(format!("{} instances, {note}, worst relative margin {:.3e}; boundary margin {:.1e}", scan.trials, scan.worst_relative_margin, boundary.margin))
}

fn c11_exclusion() -> Outcome {
    for n in 3..=10 {
        let f = example1(n);
        let idx = ok(f.roots())?.entries().iter().position(|r| r.location.norm() < 1e-9).unwrap();
        let r = ok(exclusion_check(&f, idx, None))?;
        let nf = n as f64;
        ensure!((r.walsh_radius - 1.0 / nf).abs() <= 1e-12, "n = {n}: radius {}", r.walsh_radius);
        ensure!(r.nearest_critical_distance >= 1.0 / nf - 1e-9, "n = {n}: critical point inside the open disk");
        ensure!((r.nearest_critical_distance - 1.0 / nf).abs() <= 1e-9, "n = {n}: nearest at {}", r.nearest_critical_distance);
        ensure!(r.walsh.status != Status::Violated, "n = {n}: Alexander-Walsh VIOLATED");
    }
    let mut rng = rng(11);
    let mut worst = 0.0f64;
    let mut count = 0;
    for t in 0..200 {
        let (f, z) = random_simple(&mut rng, 2, 12);
        for w in ok(f.critical_points())?.locations() {
            if distance_to_set(w, &z) < 1e-8 {
                continue;
            }
            let psi = rng.gen_range(0.0..PI);
            let r = ok(critical_identities(&f, w, psi))?;
            let res = r.sine_residual.max(r.diameter_residual);
            ensure!(r.within_tolerance && res < 1e-8, "polynomial {t}: residual {res} at scale {}", r.scale);
            worst = worst.max(res);
            count += 1;
        }
    }
    Ok(format!("n = 3..10 on the boundary; {count} critical points, max residual {worst:.1e}"))
}

fn c12_search() -> Outcome {
    let mut best = 0.0f64;
    for n in 3..=5 {
        for p in [1.0, 2.0, f64::INFINITY] {
            let cfg = SearchConfig {
                degree: n,
                p,
                starts: 100,
                seed: 12,
                ..SearchConfig::default()
            };
            let rec = ok(local_search(&cfg))?;
            ensure!(rec.best_ratio <= 1.0 + 1e-6, "n = {n}, p = {p}: rho = {}", rec.best_ratio);
            ensure!(!rec.candidate, "n = {n}, p = {p}: candidate reported");
            best = best.max(rec.best_ratio);
        }
    }
    let mut fractions = vec![];
    for name in ["roots-of-unity(5)", "miller"] {
        let r = ok(local_max_probe(&polynomial(name), 2.0, 10_000, 1e-3, 12))?;
        ensure!(r.fraction == 0.0, "{name}: increase fraction {}", r.fraction);
        fractions.push(format!("{name} {}", r.fraction));
    }
    Ok(format!("max rho {best:.6}; probes: {}", fractions.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("example 1 exactness", c1_example1),
        ("p-variance monotonicity", c2_monotonicity),
        ("doubly stochastic lemmas", c3_doubly_stochastic),
        ("Miller reproduction", c4_miller),
        ("differentiator identity", c5_differentiator),
        ("discriminant identity", c6_discriminant),
        ("claim disproof reproduction", c7_claim_disproof),
        ("real-zero refinement", c8_real_zero_refinement),
        ("rank-one perturbation", c9_rank_one),
        ("Toeplitz scan", c10_toeplitz),
        ("exclusion boundary", c11_exclusion),
        ("search sanity", c12_search),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
