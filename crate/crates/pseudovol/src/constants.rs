//! Reference constants of the (2,2) theory, recomputed and compared with closed forms.

use std::f64::consts::PI;

use serde::Serialize;

use crate::crofton::{
    integrate_kappa, klain_from_crofton, pair_m00, pair_mminus, pair_mplus, planar_body_average, solve_klain_coefficients,
    CroftonMeasureSpec, Haar,
};
use crate::error::Result;
use crate::gamma::beta_fp;
use crate::grassmann::Subspace;
use crate::lorentz::ConvexBody;
use crate::regularize::i_lambda;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TolKind {
    Abs,
    Rel,
}

/// One reference constant with its pinned tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ConstantSpec {
    pub name: &'static str,
    pub expected: f64,
    pub tol: f64,
    pub kind: TolKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRow {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub tol_kind: TolKind,
    pub pass: bool,
}

const EIGHT_PI_3: f64 = 8.0 * PI / 3.0;

pub fn specs() -> Vec<ConstantSpec> {
    let k0 = (1.0 - 2f64.ln()) / 6.0;
    let c = |name, expected, tol, kind| ConstantSpec { name, expected, tol, kind };
    vec![
        c("kl_phi10_e1", -EIGHT_PI_3, 1e-6, TolKind::Rel),
        c("kl_phi10_e3", 0.0, 1e-6, TolKind::Abs),
        c("kl_phi01_e3", -EIGHT_PI_3, 1e-6, TolKind::Rel),
        c("i_lambda_minus_5_2", -4.0 * 2f64.sqrt() / 3.0, 1e-9, TolKind::Rel),
        c("phi00_s12", 0.0, 1e-6, TolKind::Abs),
        c("phi_minus_s12", 1.0 / 3.0, 1e-4, TolKind::Rel),
        c("two_root2_beta", 0.0, 1e-10, TolKind::Abs),
        c("kappa1_real", PI / 6.0, 1e-6, TolKind::Rel),
        c("kappa0_real", k0, 1e-6, TolKind::Rel),
        c("kappa2_real", k0, 1e-6, TolKind::Rel),
        c("kappa1_complex", PI / 4.0, 1e-6, TolKind::Rel),
        c("kappa0_complex", 0.0, 1e-6, TolKind::Abs),
        c("m00_kl_mu21", 1.0 / 6.0, 1e-5, TolKind::Rel),
        c("m00_kl_mu20", 0.0, 1e-5, TolKind::Abs),
        c("mplus_kl_mu21", -PI / 6.0, 1e-5, TolKind::Rel),
        c("mplus_kl_mu20", 0.0, 1e-5, TolKind::Abs),
        c("coef_a", 0.0, 1e-5, TolKind::Abs),
        c("coef_b", 1.0 / (3.0 * PI), 1e-5, TolKind::Abs),
        c("coef_a_prime", 0.0, 1e-5, TolKind::Abs),
        c("coef_b_prime", -1.0 / 3.0, 1e-5, TolKind::Abs),
        c("ratio_plus_over_00", -PI, 1e-4, TolKind::Abs),
    ]
}

fn hyperplane(axis: usize) -> Subspace {
    let idx: Vec<usize> = (0..4).filter(|&i| i != axis).collect();
    Subspace::coordinate(4, &idx).expect("coordinate hyperplane")
}

fn square12() -> ConvexBody {
    ConvexBody::from_points(vec![vec![0., 0., 0., 0.], vec![1., 0., 0., 0.], vec![1., 1., 0., 0.], vec![0., 1., 0., 0.]])
}

/// Computes the value of one named constant.
pub fn compute(name: &str) -> Result<f64> {
    let deg1 = |a, b, axis| klain_from_crofton(&CroftonMeasureSpec::open_orbit_deg1(a, b, -2.5)?, &hyperplane(axis));
    Ok(match name {
        "kl_phi10_e1" => deg1(1, 0, 0)?,
        "kl_phi10_e3" => deg1(1, 0, 2)?,
        "kl_phi01_e3" => deg1(0, 1, 2)?,
        "i_lambda_minus_5_2" => i_lambda(-2.5)?,
        "phi00_s12" => pair_m00(&planar_body_average(&square12())?)?,
        "phi_minus_s12" => pair_mminus(&planar_body_average(&square12())?)?,
        "two_root2_beta" => 2.0 * 2f64.sqrt() * beta_fp((-1.5).into(), 1.5.into())?,
        "kappa1_real" => integrate_kappa(Haar::Euclidean, 1)?,
        "kappa0_real" => integrate_kappa(Haar::Euclidean, 0)?,
        "kappa2_real" => integrate_kappa(Haar::Euclidean, 2)?,
        "kappa1_complex" => integrate_kappa(Haar::Complex, 1)?,
        "kappa0_complex" => integrate_kappa(Haar::Complex, 0)?,
        "m00_kl_mu21" => pair_m00(&crate::crofton::klain_mu21_average())?,
        "m00_kl_mu20" => pair_m00(&crate::crofton::klain_mu20_average())?,
        "mplus_kl_mu21" => pair_mplus(&crate::crofton::klain_mu21_average())?,
        "mplus_kl_mu20" => pair_mplus(&crate::crofton::klain_mu20_average())?,
        "coef_a" => solve_klain_coefficients()?.a,
        "coef_b" => solve_klain_coefficients()?.b,
        "coef_a_prime" => solve_klain_coefficients()?.a_prime,
        "coef_b_prime" => solve_klain_coefficients()?.b_prime,
        "ratio_plus_over_00" => solve_klain_coefficients()?.ratio,
        other => return Err(crate::error::PvError::InvalidQuery(format!("unknown constant '{other}'"))),
    })
}

/// Compares a computed value with its reference entry; `tol_override` replaces the pinned tolerance.
pub fn check(spec: &ConstantSpec, computed: f64, tol_override: Option<f64>) -> ConstantRow {
    let tol = tol_override.unwrap_or(spec.tol);
    let abs_err = (computed - spec.expected).abs();
    let rel_err = if spec.expected != 0.0 { abs_err / spec.expected.abs() } else { abs_err };
    let err = match spec.kind {
        TolKind::Abs => abs_err,
        TolKind::Rel => rel_err,
    };
    ConstantRow {
        name: spec.name.to_string(),
        computed,
        expected: spec.expected,
        abs_err,
        rel_err,
        tolerance: tol,
        tol_kind: spec.kind,
        pass: computed.is_finite() && err <= tol,
    }
}

/// The whole table, sequentially.
pub fn table(tol_override: Option<f64>) -> Result<Vec<ConstantRow>> {
    specs().iter().map(|s| Ok(check(s, compute(s.name)?, tol_override))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_computable() {
        let s = specs();
        assert_eq!(s.len(), 21);
        let mut names: Vec<_> = s.iter().map(|x| x.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 21);
        assert!(compute("nope").is_err());
    }

    #[test]
    fn over_tight_tolerance_fails() {
        let spec = specs()[3];
        let v = compute(spec.name).unwrap();
        assert!(check(&spec, v, None).pass);
        assert!(!check(&spec, v * (1.0 + 1e-6), None).pass);
    }
}
