//! Grassmannian geometry: planes, cos 2theta, psi_g, the S^2 x S^2 cover of Gr_2(R^4) and projection volumes.

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen, Vector2, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{PvError, Result};
use crate::hull;
use crate::lorentz::ConvexBody;
use crate::quadform::QuadSpace;
use crate::tolerances::EPS_SUBSPACE;

/// A k-plane in R^n stored by a Euclidean-orthonormal n x k basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Orthonormalizes the columns of `m` (which must be linearly independent).
    pub fn from_columns(m: &DMatrix<f64>) -> Result<Self> {
        let (n, k) = m.shape();
        if k > n {
            return Err(PvError::RankDeficient);
        }
        if k == 0 {
            return Ok(Self { basis: DMatrix::zeros(n, 0) });
        }
        let qr = m.clone().qr();
        let r = qr.r();
        let big = (0..k).fold(0.0f64, |s, i| s.max(r[(i, i)].abs()));
        if big == 0.0 || (0..k).any(|i| r[(i, i)].abs() < 1e-10 * big) {
            return Err(PvError::RankDeficient);
        }
        Ok(Self { basis: qr.q() })
    }

    pub fn from_vectors(vs: &[DVector<f64>]) -> Result<Self> {
        let Some(first) = vs.first() else {
            return Err(PvError::WrongDimension("empty vector list".into()));
        };
        let n = first.len();
        if let Some(bad) = vs.iter().find(|v| v.len() != n) {
            return Err(PvError::DimensionMismatch { expected: n, got: bad.len() });
        }
        Self::from_columns(&DMatrix::from_columns(vs))
    }

    /// Span of the given row vectors.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let vs: Vec<DVector<f64>> = rows.iter().map(|r| DVector::from_vec(r.clone())).collect();
        Self::from_vectors(&vs)
    }

    /// Span of standard basis vectors `e_i`, `i` in `idx` (0-based).
    pub fn coordinate(n: usize, idx: &[usize]) -> Result<Self> {
        let vs: Vec<DVector<f64>> = idx
            .iter()
            .map(|&i| {
                let mut v = DVector::zeros(n);
                v[i] = 1.0;
                v
            })
            .collect();
        Self::from_vectors(&vs)
    }

    pub fn full(n: usize) -> Self {
        Self { basis: DMatrix::identity(n, n) }
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }
    pub fn n(&self) -> usize {
        self.basis.nrows()
    }
    pub fn k(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projector `B B^T`.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Subspace equality by projector comparison.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.n() == other.n() && self.k() == other.k() && (self.projector() - other.projector()).amax() < EPS_SUBSPACE
    }

    /// Euclidean orthogonal complement (possibly the zero subspace).
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.n();
        let eig = SymmetricEigen::new(DMatrix::identity(n, n) - self.projector());
        let cols: Vec<DVector<f64>> =
            (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).map(|i| eig.eigenvectors.column(i).into_owned()).collect();
        if cols.is_empty() {
            return Self { basis: DMatrix::zeros(n, 0) };
        }
        Self { basis: DMatrix::from_columns(&cols) }
    }

    /// Image `gE` under an invertible map.
    pub fn transformed(&self, g: &DMatrix<f64>) -> Result<Subspace> {
        if g.ncols() != self.n() || g.nrows() != self.n() {
            return Err(PvError::DimensionMismatch { expected: self.n(), got: g.ncols() });
        }
        Subspace::from_columns(&(g * &self.basis)).map_err(|_| PvError::SingularMap)
    }
}

/// A point of S^2 x S^2 lifting an oriented 2-plane in R^4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePair {
    pub z: Vector3<f64>,
    pub w: Vector3<f64>,
}

impl SpherePair {
    /// Validates unit length to 1e-12.
    pub fn new(z: Vector3<f64>, w: Vector3<f64>) -> Result<Self> {
        for v in [&z, &w] {
            if (v.norm() - 1.0).abs() > 1e-12 {
                return Err(PvError::WrongDimension(format!("sphere pair needs unit vectors, |v| = {}", v.norm())));
            }
        }
        Ok(Self { z, w })
    }

    /// Normalizes both components.
    pub fn normalized(z: Vector3<f64>, w: Vector3<f64>) -> Self {
        Self { z: z.normalize(), w: w.normalize() }
    }

    /// Deck transformation (z, w) -> (-z, -w).
    pub fn antipode(&self) -> Self {
        Self { z: -self.z, w: -self.w }
    }

    /// Plucker coordinates [x12, x13, x14, x23, x24, x34].
    pub fn plucker(&self) -> [f64; 6] {
        let (z, w) = (&self.z, &self.w);
        [0.5 * (w.x + z.x), -0.5 * (w.y + z.y), 0.5 * (w.z + z.z), 0.5 * (w.z - z.z), 0.5 * (w.y - z.y), 0.5 * (w.x - z.x)]
    }

    /// Inverse of [`SpherePair::plucker`] for a unit simple bivector.
    pub fn from_plucker(x: &[f64; 6]) -> Self {
        let [x12, x13, x14, x23, x24, x34] = *x;
        Self { z: Vector3::new(x12 - x34, -x13 - x24, x14 - x23), w: Vector3::new(x12 + x34, x24 - x13, x14 + x23) }
    }

    /// Bivector inner product (z.z' + w.w')/2.
    pub fn bivector_dot(&self, o: &SpherePair) -> f64 {
        0.5 * (self.z.dot(&o.z) + self.w.dot(&o.w))
    }
}

/// cos 2theta(E) = det(B^T Q B); defined for every k.
pub fn cos2theta(space: &QuadSpace, e: &Subspace) -> Result<f64> {
    Ok(space.restricted_gram(e.basis())?.determinant())
}

/// psi_g(E) = 1/det(B^T g^T g B).
pub fn psi_g(space: &QuadSpace, g: &DMatrix<f64>, e: &Subspace) -> Result<f64> {
    if g.nrows() != space.n() || g.ncols() != space.n() || e.n() != space.n() {
        return Err(PvError::DimensionMismatch { expected: space.n(), got: g.ncols() });
    }
    let gb = g * e.basis();
    let d = (gb.transpose() * gb).determinant();
    if !(d > 1e-300) {
        return Err(PvError::SingularMap);
    }
    Ok(1.0 / d)
}

/// |det(B_E^T B_F)| for planes of equal dimension.
pub fn cosine_between(e: &Subspace, f: &Subspace) -> Result<f64> {
    if e.n() != f.n() || e.k() != f.k() {
        return Err(PvError::DimensionMismatch { expected: e.k(), got: f.k() });
    }
    Ok((e.basis().transpose() * f.basis()).determinant().abs())
}

/// Cosine pairing of planes of complementary dimension: |det[B_E | B_F]|.
pub fn complementary_cosine(e: &Subspace, f: &Subspace) -> Result<f64> {
    if e.n() != f.n() || e.k() + f.k() != e.n() {
        return Err(PvError::DimensionMismatch { expected: e.n() - e.k(), got: f.k() });
    }
    let mut m = DMatrix::zeros(e.n(), e.n());
    m.columns_mut(0, e.k()).copy_from(e.basis());
    m.columns_mut(e.k(), f.k()).copy_from(f.basis());
    Ok(m.determinant().abs())
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
}

/// O(n)-invariant random k-plane.
pub fn random_plane_rng(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        if let Ok(s) = Subspace::from_columns(&gaussian_matrix(n, k, rng)) {
            return s;
        }
    }
}

/// O(n)-invariant random k-plane from a seed.
pub fn random_plane(n: usize, k: usize, seed: u64) -> Result<Subspace> {
    if k == 0 || k > n {
        return Err(PvError::WrongDimension(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(random_plane_rng(n, k, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Haar-random rotation in SO(n).
pub fn random_rotation_rng(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let c = -q.column(j);
            q.set_column(j, &c);
        }
    }
    if q.determinant() < 0.0 {
        let c = -q.column(0);
        q.set_column(0, &c);
    }
    q
}

/// The plane of a point of S^2 x S^2: eigenvectors of -X^2 with eigenvalue 1,
/// where X is the antisymmetric matrix of the bivector.
pub fn plane_from_sphere_pair(pair: &SpherePair) -> Subspace {
    let x = pair.plucker();
    let mut m = Matrix4::zeros();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (v, &(i, j)) in x.iter().zip(pairs.iter()) {
        m[(i, j)] = *v;
        m[(j, i)] = -*v;
    }
    let proj = -(m * m);
    let eig = SymmetricEigen::new(proj);
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let cols = [eig.eigenvectors.column(idx[0]).into_owned(), eig.eigenvectors.column(idx[1]).into_owned()];
    let b = DMatrix::from_fn(4, 2, |r, c| cols[c][r]);
    Subspace::from_columns(&b).expect("eigenvectors of a symmetric matrix are independent")
}

/// Plucker coordinates of E in R^4 from its orthonormal basis.
pub fn plucker_of_plane(e: &Subspace) -> Result<[f64; 6]> {
    if e.n() != 4 || e.k() != 2 {
        return Err(PvError::WrongDimension("Plucker coordinates need a 2-plane in R^4".into()));
    }
    let b = e.basis();
    let x = |i: usize, j: usize| b[(i, 0)] * b[(j, 1)] - b[(j, 0)] * b[(i, 1)];
    Ok([x(0, 1), x(0, 2), x(0, 3), x(1, 2), x(1, 3), x(2, 3)])
}

/// One of the two lifts of E to S^2 x S^2.
pub fn sphere_pair_of_plane(e: &Subspace) -> Result<SpherePair> {
    Ok(SpherePair::from_plucker(&plucker_of_plane(e)?))
}

/// cos^2 of the Kahler angle for the complex structure e1 -> e3, e2 -> e4.
pub fn kaehler_angle_sq(e: &Subspace) -> Result<f64> {
    let [x12, x13, x14, x23, x24, x34] = plucker_of_plane(e)?;
    Ok(x13 * x13 + x24 * x24 + 2.0 * x12 * x34 + 2.0 * x14 * x23)
}

/// k-volume of the orthogonal projection of the hull of `points` onto E (k <= 3).
pub fn projection_volume_points(e: &Subspace, points: &[DVector<f64>]) -> Result<f64> {
    if let Some(bad) = points.iter().find(|p| p.len() != e.n()) {
        return Err(PvError::DimensionMismatch { expected: e.n(), got: bad.len() });
    }
    let coords: Vec<DVector<f64>> = points.iter().map(|p| e.basis().transpose() * p).collect();
    match e.k() {
        1 => {
            let (lo, hi) = coords.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), c| (l.min(c[0]), h.max(c[0])));
            Ok(if coords.is_empty() { 0.0 } else { hi - lo })
        }
        2 => Ok(hull::area2d(&coords.iter().map(|c| Vector2::new(c[0], c[1])).collect::<Vec<_>>())),
        3 => Ok(hull::volume3d(&coords.iter().map(|c| Vector3::new(c[0], c[1], c[2])).collect::<Vec<_>>())),
        k => Err(PvError::UnsupportedDimension(format!("projection volume for k = {k}"))),
    }
}

/// Projection volume of a body given by vertices.
pub fn projection_volume(e: &Subspace, body: &ConvexBody) -> Result<f64> {
    match body {
        ConvexBody::Vertices { points, .. } => {
            let pts: Vec<DVector<f64>> = points.iter().map(|p| DVector::from_vec(p.clone())).collect();
            projection_volume_points(e, &pts)
        }
        ConvexBody::Facets { .. } => Err(PvError::UnsupportedCombination("projection volume needs vertices".into())),
    }
}
