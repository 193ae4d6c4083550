//! Planar convex hulls and the exact maximum over a convex polygon of the
//! distance to a finite set.

use num_complex::Complex64;

use super::distance_to_set;

type C64 = Complex64;

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Vertices of the convex hull in counterclockwise order, without repeated
/// or collinear points. Degenerate inputs give one or two vertices.
pub fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let scale = pts.iter().map(|z| z.norm()).fold(1.0, f64::max);
    pts.dedup_by(|a, b| (*a - *b).norm() <= 1e-14 * scale);
    if pts.len() <= 2 {
        return pts;
    }
    let tol = 1e-14 * scale * scale;
    let mut lower: Vec<C64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<C64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Whether `z` lies in the polygon `hull` (counterclockwise vertices, as
/// returned by [`convex_hull`]) up to distance `slack`.
pub fn point_in_hull(hull: &[C64], z: C64, slack: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (z - hull[0]).norm() <= slack,
        2 => segment_distance(z, hull[0], hull[1]) <= slack,
        n => (0..n).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            cross(a, b, z) >= -slack * (b - a).norm()
        }),
    }
}

/// Distance from `z` to the polygon `hull`; zero inside.
pub fn distance_to_hull(hull: &[C64], z: C64) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        _ if point_in_hull(hull, z, 0.0) => 0.0,
        n => (0..n)
            .map(|i| segment_distance(z, hull[i], hull[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min),
    }
}

fn edges(hull: &[C64]) -> Vec<(C64, C64)> {
    match hull.len() {
        0 | 1 => vec![],
        2 => vec![(hull[0], hull[1])],
        n => (0..n).map(|i| (hull[i], hull[(i + 1) % n])).collect(),
    }
}

/// Intersection of segment `ab` with the perpendicular bisector of `pq`.
fn bisector_cut(a: C64, b: C64, p: C64, q: C64) -> Option<C64> {
    let n = q - p;
    let m = (p + q) / 2.0;
    let fa = ((a - m) * n.conj()).re;
    let fb = ((b - m) * n.conj()).re;
    if fa == fb || fa * fb > 0.0 {
        return None;
    }
    let t = fa / (fa - fb);
    Some(a + (b - a) * t)
}

fn circumcenter(a: C64, b: C64, c: C64) -> Option<C64> {
    let (b1, c1) = (b - a, c - a);
    let d = 2.0 * (b1.re * c1.im - b1.im * c1.re);
    if d.abs() <= 1e-14 * b1.norm_sqr().max(c1.norm_sqr()) {
        return None;
    }
    let (bn, cn) = (b1.norm_sqr(), c1.norm_sqr());
    Some(a + C64::new((c1.im * bn - b1.im * cn) / d, (b1.re * cn - c1.re * bn) / d))
}

/// `max_{ζ ∈ hull} min_j |ζ - sites_j|` and a maximizing point.
///
/// On the intersection of the polygon with a Voronoi cell the distance is
/// convex, so the maximum sits at a vertex of that piece: a polygon vertex,
/// a crossing of an edge with a bisector, or a Voronoi vertex inside the
/// polygon. All such candidates are enumerated.
pub fn max_distance_to_set_over_hull(hull: &[C64], sites: &[C64]) -> (f64, C64) {
    let mut best = (f64::NEG_INFINITY, C64::new(0.0, 0.0));
    let mut consider = |z: C64| {
        let d = distance_to_set(z, sites);
        if d > best.0 {
            best = (d, z);
        }
    };
    for &v in hull {
        consider(v);
    }
    let m = sites.len();
    for &(a, b) in &edges(hull) {
        for i in 0..m {
            for j in i + 1..m {
                if let Some(z) = bisector_cut(a, b, sites[i], sites[j]) {
                    consider(z);
                }
            }
        }
    }
    if hull.len() >= 3 {
        let scale = hull.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if let Some(z) = circumcenter(sites[i], sites[j], sites[k]) {
                        if point_in_hull(hull, z, 1e-13 * scale) {
                            consider(z);
                        }
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn square_with_interior_points() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.5, 0.5), c(0.5, 0.0)];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(point_in_hull(&h, c(0.2, 0.9), 0.0));
        assert!(!point_in_hull(&h, c(1.2, 0.9), 1e-9));
    }

    #[test]
    fn collinear_hull_is_a_segment() {
        let h = convex_hull(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(h, vec![c(-1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn polygon_maximum_matches_dense_sampling() {
        let hull = convex_hull(&[c(0.0, 0.0), c(3.0, 0.0), c(2.5, 2.0), c(0.2, 1.5)]);
        let sites = [c(0.5, 0.5), c(2.0, 0.4), c(1.4, 1.4)];
        let (exact, at) = max_distance_to_set_over_hull(&hull, &sites);
        assert!(point_in_hull(&hull, at, 1e-12));
        let mut sampled: f64 = 0.0;
        for i in 0..=300 {
            for j in 0..=300 {
                let z = c(3.0 * i as f64 / 300.0, 2.0 * j as f64 / 300.0);
                if point_in_hull(&hull, z, 0.0) {
                    sampled = sampled.max(distance_to_set(z, &sites));
                }
            }
        }
        assert!(exact >= sampled - 1e-12);
        assert!(exact - sampled < 0.02);
    }
}
