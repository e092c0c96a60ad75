//! Invariant Klain sections kappa_a and the actions on their coefficient vectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{PvError, Result};
use crate::grassmann::{cos2theta, Subspace};
use crate::quadform::{signature_of_restriction, OrbitLabel, QuadSpace};
use crate::tolerances::EPS_KLAIN;

/// Index range `[max(0, k-q), min(k, p)]` of open orbits in Gr_k(R^{p,q}).
pub fn index_range(p: usize, q: usize, k: usize) -> Option<(usize, usize)> {
    if k > p + q {
        return None;
    }
    Some((k.saturating_sub(q), k.min(p)))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawCoeffs {
    List(Vec<f64>),
    Map(BTreeMap<String, f64>),
}

#[derive(Debug, Clone, Deserialize)]
struct RawKlain {
    p: usize,
    q: usize,
    k: usize,
    coeffs: RawCoeffs,
}

/// Coefficients c_a of the section sum_a c_a kappa_a, stored from the lowest index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawKlain")]
pub struct KlainVector {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub coeffs: Vec<f64>,
}

impl TryFrom<RawKlain> for KlainVector {
    type Error = PvError;
    fn try_from(raw: RawKlain) -> Result<Self> {
        match raw.coeffs {
            RawCoeffs::List(c) => KlainVector::new(raw.p, raw.q, raw.k, c),
            RawCoeffs::Map(m) => {
                let mut pairs = BTreeMap::new();
                for (key, v) in m {
                    let a: usize =
                        key.trim().parse().map_err(|_| PvError::KlainMismatch(format!("coefficient key '{key}' is not an index")))?;
                    pairs.insert(a, v);
                }
                KlainVector::from_map(raw.p, raw.q, raw.k, &pairs)
            }
        }
    }
}

impl KlainVector {
    /// `coeffs[i]` is c_{lo + i}.
    pub fn new(p: usize, q: usize, k: usize, coeffs: Vec<f64>) -> Result<Self> {
        let (lo, hi) = index_range(p, q, k).ok_or_else(|| PvError::KlainMismatch(format!("k={k} exceeds n={}", p + q)))?;
        if coeffs.len() != hi - lo + 1 {
            return Err(PvError::KlainMismatch(format!(
                "expected {} coefficients for indices {lo}..={hi}, got {}",
                hi - lo + 1,
                coeffs.len()
            )));
        }
        Ok(Self { p, q, k, coeffs })
    }

    /// From an explicit index map; missing indices are zero.
    pub fn from_map(p: usize, q: usize, k: usize, m: &BTreeMap<usize, f64>) -> Result<Self> {
        let (lo, hi) = index_range(p, q, k).ok_or_else(|| PvError::KlainMismatch(format!("k={k} exceeds n={}", p + q)))?;
        if let Some((&a, _)) = m.iter().find(|(&a, _)| a < lo || a > hi) {
            return Err(PvError::IndexOutOfRange { a, lo, hi });
        }
        Ok(Self { p, q, k, coeffs: (lo..=hi).map(|a| m.get(&a).copied().unwrap_or(0.0)).collect() })
    }

    pub fn zeros(p: usize, q: usize, k: usize) -> Result<Self> {
        let (lo, hi) = index_range(p, q, k).ok_or_else(|| PvError::KlainMismatch(format!("k={k} exceeds n={}", p + q)))?;
        Self::new(p, q, k, vec![0.0; hi - lo + 1])
    }

    pub fn range(&self) -> (usize, usize) {
        index_range(self.p, self.q, self.k).expect("validated at construction")
    }

    /// c_a (zero outside the range).
    pub fn get(&self, a: usize) -> f64 {
        let (lo, hi) = self.range();
        if a < lo || a > hi {
            0.0
        } else {
            self.coeffs[a - lo]
        }
    }

    pub fn to_map(&self) -> BTreeMap<usize, f64> {
        let (lo, _) = self.range();
        self.coeffs.iter().enumerate().map(|(i, &c)| (lo + i, c)).collect()
    }
}

/// kappa_a(E) = |cos 2theta(E)|^{1/2} on the orbit (a, k-a, 0), zero elsewhere.
pub fn kappa_value(space: &QuadSpace, a: usize, e: &Subspace) -> Result<f64> {
    let k = e.k();
    let (lo, hi) = index_range(space.p(), space.q(), k).ok_or(PvError::IndexOutOfRange { a, lo: 0, hi: 0 })?;
    if a < lo || a > hi {
        return Err(PvError::IndexOutOfRange { a, lo, hi });
    }
    if signature_of_restriction(space, e)? != OrbitLabel::new(a, k - a, 0) {
        return Ok(0.0);
    }
    Ok(cos2theta(space, e)?.abs().sqrt())
}

/// sum_a c_a kappa_a(E).
pub fn evaluate(v: &KlainVector, space: &QuadSpace, e: &Subspace) -> Result<f64> {
    if v.p != space.p() || v.q != space.q() || v.k != e.k() || e.n() != space.n() {
        return Err(PvError::KlainMismatch(format!(
            "vector for (p,q,k)=({},{},{}) evaluated on ({},{}) plane of dim {}",
            v.p,
            v.q,
            v.k,
            space.p(),
            space.q(),
            e.k()
        )));
    }
    let label = signature_of_restriction(space, e)?;
    if !label.is_open() {
        return Ok(0.0);
    }
    Ok(v.get(label.a) * cos2theta(space, e)?.abs().sqrt())
}

/// Admissibility c_{a+1} + c_{a-1} = 0 for interior a, with tolerance.
pub fn is_in_klain_image_tol(v: &KlainVector, tol: f64) -> bool {
    let (lo, hi) = v.range();
    ((lo + 1)..hi).all(|a| (v.get(a + 1) + v.get(a - 1)).abs() < tol)
}

/// Admissibility with the exact-input tolerance.
pub fn is_in_klain_image(v: &KlainVector) -> bool {
    is_in_klain_image_tol(v, EPS_KLAIN)
}

/// Fourier action: degree n-k with c'_{p-a} = c_a.
pub fn fourier(v: &KlainVector) -> KlainVector {
    let (lo, hi) = v.range();
    let mut m = BTreeMap::new();
    for a in lo..=hi {
        m.insert(v.p - a, v.get(a));
    }
    KlainVector::from_map(v.p, v.q, v.p + v.q - v.k, &m).expect("Fourier maps ranges onto ranges")
}

/// j action for p = q: c'_a = c_{k-a}.
pub fn j_action(v: &KlainVector) -> Result<KlainVector> {
    if v.p != v.q {
        return Err(PvError::NotSplitSignature { p: v.p, q: v.q });
    }
    let (lo, hi) = v.range();
    let m: BTreeMap<usize, f64> = (lo..=hi).map(|a| (a, v.get(v.k - a))).collect();
    KlainVector::from_map(v.p, v.q, v.k, &m)
}

/// Restriction to R^{p', q'} with p' <= p, q' <= q.
pub fn restrict(v: &KlainVector, p2: usize, q2: usize) -> Result<KlainVector> {
    if p2 > v.p || q2 > v.q || v.k > p2 + q2 {
        return Err(PvError::InfeasibleTarget { p: p2, q: q2, k: v.k });
    }
    let (lo, hi) = index_range(p2, q2, v.k).ok_or(PvError::InfeasibleTarget { p: p2, q: q2, k: v.k })?;
    KlainVector::new(p2, q2, v.k, (lo..=hi).map(|a| v.get(a)).collect())
}
