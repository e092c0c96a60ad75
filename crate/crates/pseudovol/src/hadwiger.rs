//! Dimension tables of invariant valuations and orbit censuses.

use serde::{Deserialize, Serialize};

use crate::error::{PvError, Result};
use crate::klain::index_range;
use crate::quadform::OrbitLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Continuous,
    Generalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "soplus")]
    SOplus,
    #[serde(rename = "fullo")]
    FullO,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimQuery {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub space_kind: SpaceKind,
    pub parity: Parity,
    pub group: Group,
}

impl DimQuery {
    pub fn new(p: usize, q: usize, k: usize, space_kind: SpaceKind, parity: Parity, group: Group) -> Self {
        Self { p, q, k, space_kind, parity, group }
    }
}

/// (even, odd) split for the SO+ table.
fn split_soplus(p: usize, q: usize, k: usize, kind: SpaceKind) -> (usize, usize) {
    let n = p + q;
    let m = p.min(q);
    if k == 0 || k == n {
        return (1, 0);
    }
    let rich = kind == SpaceKind::Generalized || k == n - 1;
    if !rich {
        return (usize::from(m == 0), 0);
    }
    match (m, p == 1 && q == 1) {
        (0, _) => (1, 0),
        (_, true) => (2, 2),
        (1, false) => (2, 1),
        _ => (2, 0),
    }
}

/// dim of the space of invariant translation-invariant valuations of degree k.
pub fn dim_invariant_valuations(query: &DimQuery) -> Result<usize> {
    let DimQuery { p, q, k, space_kind, parity, group } = *query;
    let n = p + q;
    if n == 0 {
        return Err(PvError::InvalidQuery("p + q must be positive".into()));
    }
    if k > n {
        return Err(PvError::InvalidQuery(format!("k = {k} exceeds n = {n}")));
    }
    let (even, odd) = split_soplus(p, q, k, space_kind);
    let odd = if group == Group::FullO { 0 } else { odd };
    Ok(match parity {
        Parity::Even => even,
        Parity::Odd => odd,
        Parity::All => even + odd,
    })
}

/// One orbit of the Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub label: OrbitLabel,
    pub open: bool,
    pub closed: bool,
    pub dim: usize,
}

/// All orbits of SO+(p,q) on Gr_k(R^{p+q}), ordered by r then decreasing a.
pub fn orbit_census_grassmannian(p: usize, q: usize, k: usize) -> Vec<CensusEntry> {
    let n = p + q;
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for r in 0..=k {
        for a in (0..=(k - r)).rev() {
            let label = OrbitLabel::new(a, k - r - a, r);
            if label.is_feasible(p, q) {
                out.push(CensusEntry { label, open: label.is_open(), closed: label.is_closed(p, q), dim: label.orbit_dim(n) });
            }
        }
    }
    out
}

/// Orbits on oriented lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveCensus {
    pub open_count: usize,
    pub closed_count: usize,
    pub open_names: Vec<String>,
    pub closed_names: Vec<String>,
}

pub fn orbit_census_projective(p: usize, q: usize) -> ProjectiveCensus {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (open, closed) = match (p.min(q), p, q) {
        (0, _, 0) => (names(&["M+"]), vec![]),
        (0, _, _) => (names(&["M-"]), vec![]),
        (1, 1, 1) => (names(&["M1+", "M2+", "M1-", "M2-"]), names(&["M0++", "M0+-", "M0-+", "M0--"])),
        (1, _, 1) => (names(&["M1-", "M2-", "M+"]), names(&["M1_0", "M2_0"])),
        (1, _, _) => (names(&["M1+", "M2+", "M-"]), names(&["M1_0", "M2_0"])),
        _ => (names(&["M+", "M-"]), names(&["M0"])),
    };
    ProjectiveCensus { open_count: open.len(), closed_count: closed.len(), open_names: open, closed_names: closed }
}

/// Rank of an integer matrix by fraction-free elimination.
fn integer_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let (a, b) = (rows[rank][c], rows[i][c]);
                let g = gcd(a.abs(), b.abs());
                let (ma, mb) = (b / g, a / g);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * mb - rows[rank][j] * ma;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Open-orbit count minus the rank of the constraints c_{a+1} + c_{a-1} = 0.
pub fn klain_image_dimension(p: usize, q: usize, k: usize) -> usize {
    let Some((lo, hi)) = index_range(p, q, k) else { return 0 };
    let count = hi - lo + 1;
    let rows: Vec<Vec<i64>> = ((lo + 1)..hi)
        .map(|a| {
            let mut r = vec![0; count];
            r[a + 1 - lo] = 1;
            r[a - 1 - lo] = 1;
            r
        })
        .collect();
    count - integer_rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Group::*;
    use Parity::*;
    use SpaceKind::*;

    fn d(p: usize, q: usize, k: usize, s: SpaceKind, par: Parity, g: Group) -> usize {
        dim_invariant_valuations(&DimQuery::new(p, q, k, s, par, g)).unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(d(1, 1, 1, Continuous, All, SOplus), 4);
        assert_eq!(d(2, 2, 2, Continuous, All, SOplus), 0);
        assert_eq!(d(2, 2, 2, Generalized, All, SOplus), 2);
        assert_eq!(d(2, 1, 1, Generalized, Odd, SOplus), 1);
        assert!(dim_invariant_valuations(&DimQuery::new(1, 1, 3, Continuous, All, SOplus)).is_err());
        assert!(dim_invariant_valuations(&DimQuery::new(0, 0, 0, Continuous, All, SOplus)).is_err());
    }

    #[test]
    fn grassmannian_census() {
        let c = orbit_census_grassmannian(2, 2, 2);
        let open: Vec<_> = c.iter().filter(|e| e.open).map(|e| (e.label.a, e.label.b)).collect();
        assert_eq!(open, vec![(2, 0), (1, 1), (0, 2)]);
        let closed: Vec<_> = c.iter().filter(|e| e.closed).collect();
        assert_eq!(closed.len(), 1);
        assert_eq!(closed[0].label, OrbitLabel::new(0, 0, 2));
        let c = orbit_census_grassmannian(2, 2, 1);
        let closed = c.iter().find(|e| e.closed).unwrap();
        assert_eq!((closed.label, closed.dim), (OrbitLabel::new(0, 0, 1), 2));
        let c = orbit_census_grassmannian(4, 0, 2);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label, OrbitLabel::new(2, 0, 0));
    }

    #[test]
    fn projective_census() {
        let c = orbit_census_projective(3, 1);
        assert_eq!((c.open_count, c.closed_count), (3, 2));
        let c = orbit_census_projective(1, 1);
        assert_eq!((c.open_count, c.closed_count), (4, 4));
        let c = orbit_census_projective(2, 2);
        assert_eq!((c.open_count, c.closed_count), (2, 1));
        let c = orbit_census_projective(3, 0);
        assert_eq!((c.open_count, c.closed_count), (1, 0));
    }

    #[test]
    fn klain_image_examples() {
        assert_eq!(klain_image_dimension(2, 2, 2), 2);
        assert_eq!(klain_image_dimension(5, 0, 3), 1);
        assert_eq!(klain_image_dimension(4, 4, 4), 2);
    }

    #[test]
    fn integer_rank_handles_dependence() {
        assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(vec![vec![0, 3], vec![5, 1]]), 2);
    }
}
