//! Facet-sum evaluation of the Lorentz-invariant valuations phi+ and phi- of degree n-1.

use nalgebra::{DMatrix, DVector, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{PvError, Result};
use crate::hull::{area2d, edges2d, facets3d};
use crate::quadform::QuadSpace;
use crate::tolerances::{EPS_CLOSURE, EPS_FACET};

/// One atom of a surface area measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetData {
    pub normal: Vec<f64>,
    pub measure: f64,
}

/// A polytope given by vertices or by its surface area measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ConvexBody {
    Vertices {
        points: Vec<Vec<f64>>,
        #[serde(default)]
        label: String,
    },
    Facets {
        facets: Vec<FacetData>,
        #[serde(default)]
        label: String,
    },
}

impl ConvexBody {
    pub fn from_points(points: Vec<Vec<f64>>) -> Self {
        ConvexBody::Vertices { points, label: String::new() }
    }

    pub fn label(&self) -> &str {
        match self {
            ConvexBody::Vertices { label, .. } | ConvexBody::Facets { label, .. } => label,
        }
    }

    /// Ambient dimension (validated for consistency).
    pub fn dim(&self) -> Result<usize> {
        let dims: Vec<usize> = match self {
            ConvexBody::Vertices { points, .. } => points.iter().map(Vec::len).collect(),
            ConvexBody::Facets { facets, .. } => facets.iter().map(|f| f.normal.len()).collect(),
        };
        let n = *dims.first().ok_or_else(|| PvError::DegenerateBody("empty body".into()))?;
        if let Some(&d) = dims.iter().find(|&&d| d != n) {
            return Err(PvError::DimensionMismatch { expected: n, got: d });
        }
        Ok(n)
    }

    /// Image under a linear map (vertex mode) or under the induced action on area vectors (facet mode).
    pub fn transformed(&self, g: &DMatrix<f64>) -> Result<ConvexBody> {
        match self {
            ConvexBody::Vertices { points, label } => Ok(ConvexBody::Vertices {
                points: points.iter().map(|p| (g * DVector::from_column_slice(p)).as_slice().to_vec()).collect(),
                label: label.clone(),
            }),
            ConvexBody::Facets { facets, label } => {
                let det = g.determinant();
                let inv_t = g.clone().try_inverse().ok_or(PvError::SingularMap)?.transpose();
                let facets = facets
                    .iter()
                    .map(|f| {
                        let a = &inv_t * DVector::from_column_slice(&f.normal) * (f.measure * det.abs());
                        let m = a.norm();
                        FacetData { normal: (a / m).as_slice().to_vec(), measure: m }
                    })
                    .collect();
                Ok(ConvexBody::Facets { facets, label: label.clone() })
            }
        }
    }

    /// t K (vertex mode only needs scaling of points; facet measures scale by t^{n-1}).
    pub fn scaled(&self, t: f64) -> Result<ConvexBody> {
        let n = self.dim()?;
        Ok(match self {
            ConvexBody::Vertices { points, label } => {
                ConvexBody::Vertices { points: points.iter().map(|p| p.iter().map(|x| x * t).collect()).collect(), label: label.clone() }
            }
            ConvexBody::Facets { facets, label } => ConvexBody::Facets {
                facets: facets
                    .iter()
                    .map(|f| FacetData { normal: f.normal.clone(), measure: f.measure * t.abs().powi(n as i32 - 1) })
                    .collect(),
                label: label.clone(),
            },
        })
    }

    /// -K.
    pub fn reflected(&self) -> Result<ConvexBody> {
        let n = self.dim()?;
        self.transformed(&(-DMatrix::<f64>::identity(n, n)))
    }
}

fn closure_check(facets: &[FacetData], n: usize) -> Result<()> {
    let mut s = DVector::zeros(n);
    let mut total = 0.0;
    for f in facets {
        s += DVector::from_column_slice(&f.normal) * f.measure;
        total += f.measure;
    }
    let defect = s.norm() / total.max(1.0);
    if defect > EPS_CLOSURE {
        return Err(PvError::NotClosed(defect));
    }
    Ok(())
}

fn simplex_facets(points: &[Vec<f64>], n: usize) -> Result<Vec<FacetData>> {
    let v: Vec<DVector<f64>> = points.iter().map(|p| DVector::from_column_slice(p)).collect();
    let mut out = Vec::with_capacity(n + 1);
    let fact: f64 = (1..n).map(|i| i as f64).product();
    for skip in 0..=n {
        let others: Vec<&DVector<f64>> = v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, x)| x).collect();
        let base = others[0];
        let edges = DMatrix::from_columns(&others[1..].iter().map(|x| *x - base).collect::<Vec<_>>());
        let gram = edges.transpose() * &edges;
        let area = gram.determinant().max(0.0).sqrt() / fact;
        // Normal: component of (opposite vertex - base) orthogonal to the facet span.
        let d = &v[skip] - base;
        let proj = &edges
            * gram.clone().try_inverse().ok_or_else(|| PvError::DegenerateBody("degenerate simplex".into()))?
            * (edges.transpose() * &d);
        let perp = d - proj;
        let len = perp.norm();
        if len <= EPS_FACET || area <= EPS_FACET {
            return Err(PvError::DegenerateBody("simplex is not full-dimensional".into()));
        }
        out.push(FacetData { normal: (-perp / len).as_slice().to_vec(), measure: area });
    }
    Ok(out)
}

fn box_facets(points: &[Vec<f64>], n: usize) -> Option<Vec<FacetData>> {
    if points.len() != 1 << n {
        return None;
    }
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for p in points {
        for i in 0..n {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let tol = 1e-12 * hi.iter().chain(lo.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    let mut seen = vec![false; 1 << n];
    for p in points {
        let mut code = 0;
        for i in 0..n {
            if (p[i] - lo[i]).abs() <= tol {
            } else if (p[i] - hi[i]).abs() <= tol {
                code |= 1 << i;
            } else {
                return None;
            }
        }
        seen[code] = true;
    }
    if !seen.iter().all(|&s| s) || (0..n).any(|i| hi[i] - lo[i] <= tol) {
        return None;
    }
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let area: f64 = (0..n).filter(|&j| j != i).map(|j| hi[j] - lo[j]).product();
        for s in [1.0, -1.0] {
            let mut normal = vec![0.0; n];
            normal[i] = s;
            out.push(FacetData { normal, measure: area });
        }
    }
    Some(out)
}

/// Facet normals and (n-1)-volumes. Vertex mode supports n = 2, 3 in general and
/// simplices or axis-aligned boxes in any dimension up to 4.
pub fn surface_area_measure(body: &ConvexBody) -> Result<Vec<FacetData>> {
    let n = body.dim()?;
    let facets = match body {
        ConvexBody::Facets { facets, .. } => facets.clone(),
        ConvexBody::Vertices { points, .. } => match n {
            2 => {
                let pts: Vec<Vector2<f64>> = points.iter().map(|p| Vector2::new(p[0], p[1])).collect();
                if area2d(&pts) <= EPS_FACET {
                    return Err(PvError::DegenerateBody("planar points are collinear".into()));
                }
                edges2d(&pts).into_iter().map(|(nv, l)| FacetData { normal: vec![nv.x, nv.y], measure: l }).collect()
            }
            3 => {
                let pts: Vec<Vector3<f64>> = points.iter().map(|p| Vector3::new(p[0], p[1], p[2])).collect();
                let f = facets3d(&pts);
                if f.is_empty() {
                    return Err(PvError::DegenerateBody("points are coplanar".into()));
                }
                f.into_iter().map(|x| FacetData { normal: x.normal.as_slice().to_vec(), measure: x.area }).collect()
            }
            4 => {
                if points.len() == 5 {
                    simplex_facets(points, 4)?
                } else if let Some(f) = box_facets(points, 4) {
                    f
                } else {
                    return Err(PvError::UnsupportedDimension("4-D bodies must be simplices or axis-aligned boxes".into()));
                }
            }
            _ => return Err(PvError::UnsupportedDimension(format!("vertex bodies in dimension {n}"))),
        },
    };
    closure_check(&facets, n)?;
    Ok(facets)
}

fn check_lorentz(space: &QuadSpace, body: &ConvexBody) -> Result<usize> {
    if space.q() != 1 || space.p() == 0 {
        return Err(PvError::InvalidSignature { p: space.p(), q: space.q() });
    }
    let n = body.dim()?;
    if n != space.n() {
        return Err(PvError::DimensionMismatch { expected: space.n(), got: n });
    }
    Ok(n)
}

fn q_norm_sq(space: &QuadSpace, v: &[f64]) -> f64 {
    v.iter().enumerate().map(|(i, x)| space.sign(i) * x * x).sum()
}

/// Sum over facets with timelike normal of area * sign(n_n) * |Q(n)|^{1/2}.
pub fn phi_minus(space: &QuadSpace, body: &ConvexBody) -> Result<f64> {
    let n = check_lorentz(space, body)?;
    let facets = surface_area_measure(body)?;
    Ok(facets
        .iter()
        .map(|f| {
            let qn = q_norm_sq(space, &f.normal);
            let t = f.normal[n - 1];
            if qn < 0.0 && t.abs() >= EPS_FACET {
                f.measure * t.signum() * (-qn).sqrt()
            } else {
                0.0
            }
        })
        .sum())
}

/// Sum over all facets of area * |Q(n)|^{1/2}.
pub fn phi_plus(space: &QuadSpace, body: &ConvexBody) -> Result<f64> {
    check_lorentz(space, body)?;
    let facets = surface_area_measure(body)?;
    Ok(facets.iter().map(|f| f.measure * q_norm_sq(space, &f.normal).abs().sqrt()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: usize) -> QuadSpace {
        QuadSpace::new(p, 1).unwrap()
    }

    fn square() -> ConvexBody {
        ConvexBody::from_points(vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]])
    }

    fn triangle() -> ConvexBody {
        ConvexBody::from_points(vec![vec![0., 0.], vec![1., 0.], vec![0., 1.]])
    }

    fn cube() -> ConvexBody {
        ConvexBody::from_points((0..8).map(|i| vec![(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]).collect())
    }

    #[test]
    fn surface_measures() {
        assert_eq!(surface_area_measure(&square()).unwrap().len(), 4);
        let t = surface_area_measure(&triangle()).unwrap();
        assert_eq!(t.len(), 3);
        let total: f64 = t.iter().map(|f| f.measure).sum();
        assert!((total - 2.0 - 2f64.sqrt()).abs() < 1e-14);
        let c = surface_area_measure(&cube()).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|f| (f.measure - 1.0).abs() < 1e-12));
    }

    #[test]
    fn four_dimensional_data() {
        let simplex = ConvexBody::from_points(vec![
            vec![0., 0., 0., 0.],
            vec![1., 0., 0., 0.],
            vec![0., 1., 0., 0.],
            vec![0., 0., 1., 0.],
            vec![0., 0., 0., 1.],
        ]);
        let f = surface_area_measure(&simplex).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.iter().filter(|x| (x.measure - 1.0 / 6.0).abs() < 1e-14).count() == 4);
        let cube4 = ConvexBody::from_points((0..16).map(|i| (0..4).map(|b| ((i >> b) & 1) as f64 * 2.0).collect()).collect());
        let f = surface_area_measure(&cube4).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|x| (x.measure - 8.0).abs() < 1e-12));
        let bad = ConvexBody::from_points(vec![vec![0.; 4]; 7]);
        assert!(matches!(surface_area_measure(&bad), Err(PvError::UnsupportedDimension(_))));
    }

    #[test]
    fn degenerate_and_unclosed() {
        let line = ConvexBody::from_points(vec![vec![0., 0.], vec![1., 1.], vec![2., 2.]]);
        assert!(matches!(surface_area_measure(&line), Err(PvError::DegenerateBody(_))));
        let open = ConvexBody::Facets { facets: vec![FacetData { normal: vec![1., 0.], measure: 1.0 }], label: String::new() };
        assert!(matches!(surface_area_measure(&open), Err(PvError::NotClosed(_))));
    }

    #[test]
    fn valuation_examples() {
        assert!(phi_minus(&sp(1), &square()).unwrap().abs() < 1e-15);
        assert!((phi_minus(&sp(1), &triangle()).unwrap() + 1.0).abs() < 1e-14);
        assert!(phi_minus(&sp(2), &cube()).unwrap().abs() < 1e-14);
        assert!((phi_plus(&sp(1), &square()).unwrap() - 4.0).abs() < 1e-14);
        let light = ConvexBody::Facets {
            facets: vec![
                FacetData { normal: vec![0.5f64.sqrt(), 0.5f64.sqrt()], measure: 1.0 },
                FacetData { normal: vec![-(0.5f64.sqrt()), -(0.5f64.sqrt())], measure: 1.0 },
            ],
            label: String::new(),
        };
        assert!(phi_plus(&sp(1), &light).unwrap().abs() < 1e-15);
    }

    #[test]
    fn wrong_signature() {
        assert!(phi_minus(&QuadSpace::new(2, 0).unwrap(), &square()).is_err());
        assert!(phi_minus(&sp(2), &square()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b: ConvexBody = serde_json::from_str(r#"{"mode":"vertices","points":[[0,0],[1,0],[0,1]],"label":"t"}"#).unwrap();
        assert_eq!(b.label(), "t");
        let f: ConvexBody =
            serde_json::from_str(r#"{"mode":"facets","facets":[{"normal":[1,0],"measure":1},{"normal":[-1,0],"measure":1}]}"#).unwrap();
        assert_eq!(f.dim().unwrap(), 2);
    }
}
