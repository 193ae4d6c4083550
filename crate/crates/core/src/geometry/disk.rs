//! Smallest enclosing disk by randomized incremental construction
//! (move-to-front form of Welzl's algorithm).

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Disk;

type C64 = Complex64;

const DEFAULT_SEED: u64 = 0x5eed_d15c;

fn inside(d: &Disk, z: C64) -> bool {
    (z - d.center).norm() <= d.radius + 1e-12 * (1.0 + d.radius)
}

fn diameter_disk(a: C64, b: C64) -> Disk {
    Disk {
        center: (a + b) / 2.0,
        radius: (a - b).norm() / 2.0,
    }
}

fn circumscribed(a: C64, b: C64, c: C64) -> Disk {
    let (b1, c1) = (b - a, c - a);
    let d = 2.0 * (b1.re * c1.im - b1.im * c1.re);
    let scale = b1.norm_sqr().max(c1.norm_sqr());
    if d.abs() <= 1e-14 * scale {
        // collinear: the farthest pair spans the disk
        let cands = [diameter_disk(a, b), diameter_disk(a, c), diameter_disk(b, c)];
        return cands.into_iter().max_by(|x, y| x.radius.total_cmp(&y.radius)).unwrap();
    }
    let (bn, cn) = (b1.norm_sqr(), c1.norm_sqr());
    let ux = (c1.im * bn - b1.im * cn) / d;
    let uy = (b1.re * cn - c1.re * bn) / d;
    let u = C64::new(ux, uy);
    Disk {
        center: a + u,
        radius: u.norm().max((b - a - u).norm()).max((c - a - u).norm()),
    }
}

/// Smallest closed disk containing `points` (fixed internal seed).
pub fn chebyshev_disk(points: &[C64]) -> Disk {
    chebyshev_disk_seeded(points, DEFAULT_SEED)
}

/// Smallest closed disk containing `points`; the seed fixes the insertion
/// order. An empty input gives the zero disk at the origin.
pub fn chebyshev_disk_seeded(points: &[C64], seed: u64) -> Disk {
    let mut pts = points.to_vec();
    if pts.is_empty() {
        return Disk {
            center: C64::new(0.0, 0.0),
            radius: 0.0,
        };
    }
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut d = Disk {
        center: pts[0],
        radius: 0.0,
    };
    for i in 1..pts.len() {
        if inside(&d, pts[i]) {
            continue;
        }
        d = Disk {
            center: pts[i],
            radius: 0.0,
        };
        for j in 0..i {
            if inside(&d, pts[j]) {
                continue;
            }
            d = diameter_disk(pts[i], pts[j]);
            for k in 0..j {
                if !inside(&d, pts[k]) {
                    d = circumscribed(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn examples() {
        let d = chebyshev_disk(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((d.center - c(0.5, 0.0)).norm() < 1e-15 && (d.radius - 0.5).abs() < 1e-15);
        let d = chebyshev_disk(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)]);
        assert!(d.center.norm() < 1e-15 && (d.radius - 1.0).abs() < 1e-15);
        let d = chebyshev_disk(&[c(2.0, 3.0)]);
        assert_eq!(d.radius, 0.0);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let d = chebyshev_disk(&[c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.1)]);
        assert!(d.center.norm() < 1e-15 && (d.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_points() {
        let d = chebyshev_disk(&[c(0.0, 0.0), c(1.0, 1.0), c(3.0, 3.0), c(2.0, 2.0)]);
        assert!((d.center - c(1.5, 1.5)).norm() < 1e-14);
    }
}
