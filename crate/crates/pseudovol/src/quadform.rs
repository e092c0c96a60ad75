//! Quadratic forms of signature (p, q) and the orbit labels of subspaces.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PvError, Result};
use crate::grassmann::Subspace;
use crate::tolerances::EPS_SIG;

/// R^n with Q = diag(+1 (p times), -1 (q times)) and the compatible Euclidean form P = I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadSpace {
    p: usize,
    q: usize,
}

impl QuadSpace {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(PvError::InvalidSignature { p, q });
        }
        Ok(Self { p, q })
    }

    /// Normalizes a non-degenerate symmetric Gram matrix by congruence.
    /// Returns the space and `T` with `T^T G T = diag(+1.., -1..)`.
    pub fn from_gram(gram: &DMatrix<f64>) -> Result<(Self, DMatrix<f64>)> {
        let n = gram.nrows();
        if gram.ncols() != n || n == 0 {
            return Err(PvError::DimensionMismatch { expected: n, got: gram.ncols() });
        }
        let sym = 0.5 * (gram + gram.transpose());
        let eig = SymmetricEigen::new(sym);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let mut t = DMatrix::zeros(n, n);
        let mut p = 0;
        for (col, &i) in idx.iter().enumerate() {
            let lam = eig.eigenvalues[i];
            if lam.abs() < EPS_SIG {
                return Err(PvError::DegenerateSubspace(lam.abs()));
            }
            if lam > 0.0 {
                p += 1;
            }
            t.set_column(col, &(eig.eigenvectors.column(i) / lam.abs().sqrt()));
        }
        Ok((Self::new(p, n - p)?, t))
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal entry of Q in the standard basis.
    pub fn sign(&self, i: usize) -> f64 {
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    pub fn gram_q(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n(), self.n(), |i, j| if i == j { self.sign(i) } else { 0.0 })
    }

    pub fn gram_p(&self) -> DMatrix<f64> {
        DMatrix::identity(self.n(), self.n())
    }

    /// S = P^{-1} Q.
    pub fn involution(&self) -> DMatrix<f64> {
        self.gram_q()
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(PvError::DimensionMismatch { expected: self.n(), got: len });
        }
        Ok(())
    }

    /// Q-Gram matrix `B^T Q B` of a basis matrix.
    pub fn restricted_gram(&self, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.check(b.nrows())?;
        Ok(b.transpose() * self.gram_q() * b)
    }
}

/// Inertia (a, b, r) of Q restricted to a k-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub a: usize,
    pub b: usize,
    pub r: usize,
}

impl OrbitLabel {
    pub fn new(a: usize, b: usize, r: usize) -> Self {
        Self { a, b, r }
    }

    pub fn k(&self) -> usize {
        self.a + self.b + self.r
    }

    pub fn is_feasible(&self, p: usize, q: usize) -> bool {
        self.a + self.r <= p && self.b + self.r <= q
    }

    pub fn is_open(&self) -> bool {
        self.r == 0
    }

    /// The closed orbit of Gr_k has a = max(0, k-q), b = max(0, k-p).
    pub fn is_closed(&self, p: usize, q: usize) -> bool {
        let k = self.k();
        self.a == k.saturating_sub(q) && self.b == k.saturating_sub(p)
    }

    /// Dimension of the orbit inside Gr_k(R^n).
    pub fn orbit_dim(&self, n: usize) -> usize {
        let k = self.k();
        k * (n - k) - self.r * (self.r + 1) / 2
    }
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.r)
    }
}

/// Signature together with the raw eigenvalues and a near-threshold flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureReport {
    pub label: OrbitLabel,
    pub eigenvalues: Vec<f64>,
    pub near_threshold: bool,
}

/// `u^T Q v`.
pub fn q_inner(space: &QuadSpace, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    space.check(u.len())?;
    space.check(v.len())?;
    Ok((0..space.n()).map(|i| space.sign(i) * u[i] * v[i]).sum())
}

/// Eigenvalue counts of the restricted Gram matrix, with diagnostics.
pub fn signature_report(space: &QuadSpace, e: &Subspace) -> Result<SignatureReport> {
    let m = space.restricted_gram(e.basis())?;
    let eig = SymmetricEigen::new(m);
    let mut label = OrbitLabel::new(0, 0, 0);
    let mut near = false;
    for &lam in eig.eigenvalues.iter() {
        if lam > EPS_SIG {
            label.a += 1;
        } else if lam < -EPS_SIG {
            label.b += 1;
        } else {
            label.r += 1;
        }
        let mag = lam.abs();
        if mag > EPS_SIG * 1e-3 && mag < EPS_SIG * 1e3 {
            near = true;
        }
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(SignatureReport { label, eigenvalues, near_threshold: near })
}

/// Orbit label (a, b, r) of E.
pub fn signature_of_restriction(space: &QuadSpace, e: &Subspace) -> Result<OrbitLabel> {
    signature_report(space, e).map(|r| r.label)
}

/// The Q-orthogonal complement E^Q = S(E^perp).
pub fn q_complement(space: &QuadSpace, e: &Subspace) -> Result<Subspace> {
    space.check(e.n())?;
    let perp = e.orthogonal_complement();
    let s = space.involution();
    Subspace::from_columns(&(s * perp.basis()))
}

/// Q-orthonormal basis of a non-degenerate E, positive vectors first.
pub fn q_orthonormal_basis(space: &QuadSpace, e: &Subspace) -> Result<Vec<DVector<f64>>> {
    let m = space.restricted_gram(e.basis())?;
    let eig = SymmetricEigen::new(m);
    let k = e.k();
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |acc, l| acc.min(l.abs()));
    if k > 0 && min < EPS_SIG {
        return Err(PvError::DegenerateSubspace(min));
    }
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    Ok(idx.into_iter().map(|i| e.basis() * eig.eigenvectors.column(i) / eig.eigenvalues[i].abs().sqrt()).collect())
}

/// For isotropic E of dimension n/2, the isotropic complement F = E^P.
pub fn isotropic_complement(space: &QuadSpace, e: &Subspace) -> Result<Subspace> {
    let n = space.n();
    space.check(e.n())?;
    if n % 2 != 0 || 2 * e.k() != n {
        return Err(PvError::WrongDimension(format!("need dim E = n/2, got k={} n={}", e.k(), n)));
    }
    let m = space.restricted_gram(e.basis())?;
    let worst = m.amax();
    if worst > EPS_SIG {
        return Err(PvError::NotIsotropic(worst));
    }
    Ok(e.orthogonal_complement())
}

/// Representative plane of the orbit with label (a, b, r).
pub fn constructive_plane(space: &QuadSpace, a: usize, b: usize, r: usize) -> Result<Subspace> {
    let (p, q, n) = (space.p(), space.q(), space.n());
    let label = OrbitLabel::new(a, b, r);
    if !label.is_feasible(p, q) || label.k() == 0 {
        return Err(PvError::InfeasibleLabel { a, b, r, p, q });
    }
    let mut cols = Vec::with_capacity(label.k());
    for i in 0..r {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v[p + i] = 1.0;
        cols.push(v);
    }
    for i in 0..a {
        let mut v = DVector::zeros(n);
        v[r + i] = 1.0;
        cols.push(v);
    }
    for i in 0..b {
        let mut v = DVector::zeros(n);
        v[p + r + i] = 1.0;
        cols.push(v);
    }
    Subspace::from_vectors(&cols)
}

/// Random element of so(p,q): A = Q K with K antisymmetric, entries uniform in [-scale, scale].
pub fn random_lie_element<R: Rng>(space: &QuadSpace, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let n = space.n();
    let mut k = DMatrix::zeros(n, n);
    if scale > 0.0 {
        for i in 0..n {
            for j in (i + 1)..n {
                let x = rng.random_range(-scale..=scale);
                k[(i, j)] = x;
                k[(j, i)] = -x;
            }
        }
    }
    space.gram_q() * k
}

/// exp of a random so(p,q) element; lies in the identity component SO+(p,q).
pub fn random_pseudo_orthogonal(space: &QuadSpace, scale: f64, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_lie_element(space, scale, &mut rng).exp()
}

/// Boost by rapidity `alpha` in the (e_i, e_j) plane, i positive and j negative.
pub fn boost(space: &QuadSpace, i: usize, j: usize, alpha: f64) -> Result<DMatrix<f64>> {
    if i >= space.p() || j < space.p() || j >= space.n() {
        return Err(PvError::WrongDimension(format!("boost needs i < p <= j < n, got ({i},{j})")));
    }
    let mut g = DMatrix::identity(space.n(), space.n());
    let (c, s) = (alpha.cosh(), alpha.sinh());
    g[(i, i)] = c;
    g[(j, j)] = c;
    g[(i, j)] = s;
    g[(j, i)] = s;
    Ok(g)
}
