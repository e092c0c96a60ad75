//! Small convex hulls: gift wrapping in the plane, supporting-plane enumeration in space.

use nalgebra::{Vector2, Vector3};

/// Relative tolerance for orientation tests.
const REL_EPS: f64 = 1e-10;

fn scale2(points: &[Vector2<f64>]) -> f64 {
    points.iter().fold(0.0f64, |m, p| m.max(p.amax())).max(1.0)
}

fn cross2(o: &Vector2<f64>, a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    (a - o).perp(&(b - o))
}

/// Indices of the hull vertices in counter-clockwise order (collinear points dropped).
pub fn hull2d(points: &[Vector2<f64>]) -> Vec<usize> {
    if points.len() < 3 {
        return (0..points.len()).collect();
    }
    let eps = REL_EPS * scale2(points).powi(2);
    let start = (0..points.len())
        .min_by(|&i, &j| points[i].x.total_cmp(&points[j].x).then(points[i].y.total_cmp(&points[j].y)))
        .expect("non-empty");
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = if cur == 0 { 1 } else { 0 };
        for i in 0..points.len() {
            if i == cur {
                continue;
            }
            let c = cross2(&points[cur], &points[next], &points[i]);
            let farther = (points[i] - points[cur]).norm_squared() > (points[next] - points[cur]).norm_squared();
            if c < -eps || (c.abs() <= eps && farther) {
                next = i;
            }
        }
        if next == start || hull.len() > points.len() {
            break;
        }
        if (points[next] - points[cur]).norm() <= eps.sqrt() {
            break;
        }
        hull.push(next);
        cur = next;
    }
    hull
}

/// Area of the convex hull of planar points.
pub fn area2d(points: &[Vector2<f64>]) -> f64 {
    let h = hull2d(points);
    if h.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..h.len() {
        let (a, b) = (points[h[i]], points[h[(i + 1) % h.len()]]);
        s += a.perp(&b);
    }
    0.5 * s.abs()
}

/// Edges of a planar hull as (outward unit normal, length).
pub fn edges2d(points: &[Vector2<f64>]) -> Vec<(Vector2<f64>, f64)> {
    let h = hull2d(points);
    if h.len() < 3 {
        return Vec::new();
    }
    (0..h.len())
        .map(|i| {
            let d = points[h[(i + 1) % h.len()]] - points[h[i]];
            let len = d.norm();
            (Vector2::new(d.y, -d.x) / len, len)
        })
        .collect()
}

/// A facet of a 3-D polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet3 {
    pub normal: Vector3<f64>,
    pub offset: f64,
    pub area: f64,
}

fn plane_basis(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let u = n.cross(&helper).normalize();
    (u, n.cross(&u))
}

/// Facets of the hull of spatial points, by enumerating supporting planes through point triples.
/// Returns an empty list when the points are coplanar.
pub fn facets3d(points: &[Vector3<f64>]) -> Vec<Facet3> {
    let scale = points.iter().fold(0.0f64, |m, p| m.max(p.amax())).max(1.0);
    let eps = REL_EPS * scale;
    let mut facets: Vec<Facet3> = Vec::new();
    let m = points.len();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let raw = (points[j] - points[i]).cross(&(points[k] - points[i]));
                if raw.norm() <= eps * scale {
                    continue;
                }
                let mut n = raw.normalize();
                let mut d = n.dot(&points[i]);
                let (mut above, mut below) = (false, false);
                for p in points {
                    let s = n.dot(p) - d;
                    above |= s > eps;
                    below |= s < -eps;
                }
                if above && below {
                    continue;
                }
                if !above && !below {
                    return Vec::new();
                }
                if above {
                    n = -n;
                    d = -d;
                }
                if facets.iter().any(|f| (f.normal - n).norm() < 1e-9 && (f.offset - d).abs() < eps) {
                    continue;
                }
                let (u, v) = plane_basis(&n);
                let on: Vec<Vector2<f64>> =
                    points.iter().filter(|p| (n.dot(p) - d).abs() <= eps).map(|p| Vector2::new(u.dot(p), v.dot(p))).collect();
                let area = area2d(&on);
                if area > 0.0 {
                    facets.push(Facet3 { normal: n, offset: d, area });
                }
            }
        }
    }
    facets
}

/// Volume of the hull of spatial points (0 when coplanar).
pub fn volume3d(points: &[Vector3<f64>]) -> f64 {
    let facets = facets3d(points);
    if facets.is_empty() {
        return 0.0;
    }
    let c = points.iter().fold(Vector3::zeros(), |s, p| s + p) / points.len() as f64;
    facets.iter().map(|f| f.area * (f.offset - f.normal.dot(&c)) / 3.0).sum()
}
