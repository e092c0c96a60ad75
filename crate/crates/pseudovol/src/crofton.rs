//! Invariant Crofton measures on R^{2,2} paired against torus-averaged test functions.
//!
//! Oriented 2-planes of R^4 lift to S^2 x S^2 via (z, w); in these coordinates
//! cos 2theta = z1^2 + w1^2 - 1 and every invariant pairing sees a test function
//! only through its average Phi(z1, w1) over the two circles fixing z1 and w1.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, Vector2, Vector3, Vector4};
use serde::Serialize;

use crate::deriv::{derivative, Estimate, Stencil};
use crate::error::{PvError, Result};
use crate::grassmann::{
    complementary_cosine, cos2theta, cosine_between, plane_from_sphere_pair, sphere_pair_of_plane, SpherePair, Subspace,
};
use crate::hull::area2d;
use crate::lorentz::ConvexBody;
use crate::quad::{adaptive, tanh_sinh, uniform_breaks, CompositeGauss};
use crate::quadform::QuadSpace;
use crate::regularize::{fp_power_integral, fp_tan_measure_odd, MeroScalar, Side, SmoothFn};
use crate::tolerances::{DELTA_SING, N_TOR, SMOOTHNESS_TOL};

pub type PhiFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type LineFn = Arc<dyn Fn(&Vector4<f64>) -> f64 + Send + Sync>;
pub type PlaneFn = Arc<dyn Fn(&Subspace) -> f64 + Send + Sync>;
pub type PairFn = Arc<dyn Fn(&SpherePair) -> f64 + Send + Sync>;

const GAUSS_ORDER: usize = 24;
const CIRCLE_PANELS: usize = 8;

/// Phi(z1, w1) on [-1, 1]^2.
#[derive(Clone)]
pub struct TorusAverage {
    phi: PhiFn,
    pub n_tor: usize,
}

impl std::fmt::Debug for TorusAverage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TorusAverage").field("n_tor", &self.n_tor).finish()
    }
}

impl TorusAverage {
    /// Wraps a known Phi.
    pub fn from_fn<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self { phi: Arc::new(f), n_tor: N_TOR }
    }

    pub fn eval(&self, z1: f64, w1: f64) -> f64 {
        (self.phi)(z1, w1)
    }

    pub fn scaled(&self, s: f64) -> Self {
        let phi = self.phi.clone();
        Self { phi: Arc::new(move |z, w| s * phi(z, w)), n_tor: self.n_tor }
    }
}

fn circle_point(c: f64, angle: f64) -> Vector3<f64> {
    let rho = (1.0 - c * c).max(0.0).sqrt();
    Vector3::new(c, rho * angle.cos(), rho * angle.sin())
}

/// Lift with prescribed first coordinates and circle angles a, b.
pub fn torus_pair(z1: f64, w1: f64, a: f64, b: f64) -> SpherePair {
    SpherePair { z: circle_point(z1, a), w: circle_point(w1, b) }
}

/// Trapezoidal mean over the torus, doubling from 16 points per circle up to `n_max`.
fn trapezoid_torus<F: Fn(f64, f64) -> f64>(g: F, n_max: usize) -> f64 {
    let mut n = 16.min(n_max.max(1));
    let mut prev: Option<f64> = None;
    loop {
        let step = 2.0 * PI / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += g(i as f64 * step, j as f64 * step);
            }
        }
        s /= (n * n) as f64;
        let done = n >= n_max || prev.is_some_and(|p| (s - p).abs() <= 1e-13 * s.abs().max(1.0));
        if done {
            return s;
        }
        prev = Some(s);
        n *= 2;
    }
}

/// Torus average of a function of planes (generic and slow: one eigen-solve per node).
pub fn average_over_torus(f: PlaneFn) -> TorusAverage {
    average_over_torus_with(f, N_TOR)
}

pub fn average_over_torus_with(f: PlaneFn, n_tor: usize) -> TorusAverage {
    let phi = move |z1: f64, w1: f64| trapezoid_torus(|a, b| f(&plane_from_sphere_pair(&torus_pair(z1, w1, a, b))), n_tor);
    TorusAverage { phi: Arc::new(phi), n_tor }
}

/// Torus average of a function given directly on S^2 x S^2.
pub fn average_over_torus_pairs(f: PairFn) -> TorusAverage {
    let n_tor = N_TOR;
    let phi = move |z1: f64, w1: f64| trapezoid_torus(|a, b| f(&torus_pair(z1, w1, a, b)), n_tor);
    TorusAverage { phi: Arc::new(phi), n_tor }
}

/// Mean of |u + beta cos b| over b.
fn abs_cos_mean(u: f64, beta: f64) -> f64 {
    if beta <= 0.0 || u.abs() >= beta {
        u.abs()
    } else {
        let r = (u / beta).clamp(-1.0, 1.0);
        (2.0 / PI) * (u * r.asin() + (beta * beta - u * u).max(0.0).sqrt())
    }
}

/// Mean over a of M(c + alpha cos a, beta), split where |c + alpha cos a| = beta or 0.
fn double_circle_mean(c: f64, alpha: f64, beta: f64) -> f64 {
    if alpha <= 1e-15 {
        return abs_cos_mean(c, beta);
    }
    let mut breaks = vec![0.0, PI];
    for target in [beta, -beta, 0.0] {
        let ca = (target - c) / alpha;
        if ca > -1.0 && ca < 1.0 {
            breaks.push(ca.acos());
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let g = |a: f64| abs_cos_mean(c + alpha * a.cos(), beta);
    breaks.windows(2).map(|w| tanh_sinh(g, w[0], w[1], 1e-15)).sum::<f64>() / PI
}

/// Torus average of F -> cosine_between(E0, F) in closed form up to one 1-D quadrature.
pub fn cosine_average(e0: &Subspace) -> Result<TorusAverage> {
    let p0 = sphere_pair_of_plane(e0)?;
    let (zc, wc) = (p0.z.x, p0.w.x);
    let zp = (p0.z.y.powi(2) + p0.z.z.powi(2)).sqrt();
    let wp = (p0.w.y.powi(2) + p0.w.z.powi(2)).sqrt();
    let phi = move |z1: f64, w1: f64| {
        let rz = (1.0 - z1 * z1).max(0.0).sqrt();
        let rw = (1.0 - w1 * w1).max(0.0).sqrt();
        0.5 * double_circle_mean(zc * z1 + wc * w1, zp * rz, wp * rw)
    };
    Ok(TorusAverage { phi: Arc::new(phi), n_tor: N_TOR })
}

/// Klain function of the hermitian valuation mu_{2,1}: z2^2 on lifts.
pub fn klain_mu21_pair(p: &SpherePair) -> f64 {
    p.z.y * p.z.y
}

/// Klain function of mu_{2,0}: 1 - z2^2 on lifts.
pub fn klain_mu20_pair(p: &SpherePair) -> f64 {
    1.0 - p.z.y * p.z.y
}

/// Phi of Kl mu_{2,1}.
pub fn klain_mu21_average() -> TorusAverage {
    TorusAverage::from_fn(|z, _| 0.5 * (1.0 - z * z))
}

/// Phi of Kl mu_{2,0}.
pub fn klain_mu20_average() -> TorusAverage {
    TorusAverage::from_fn(|z, _| 0.5 * (1.0 + z * z))
}

/// Shadow average of a polygon lying in a 2-plane of R^4: area times the cosine average.
pub fn planar_body_average(body: &ConvexBody) -> Result<TorusAverage> {
    let ConvexBody::Vertices { points, .. } = body else {
        return Err(PvError::UnsupportedCombination("Crofton evaluation needs a vertex body".into()));
    };
    let n = body.dim()?;
    if n != 4 {
        return Err(PvError::UnsupportedCombination(format!("Crofton valuations live on R^(2,2), body has dimension {n}")));
    }
    let base = &points[0];
    let diffs = DMatrix::from_fn(4, points.len() - 1, |r, c| points[c + 1][r] - base[r]);
    let svd = diffs.clone().svd(true, false);
    let scale = svd.singular_values.max().max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-10 * scale).count();
    if rank != 2 {
        return Err(PvError::UnsupportedCombination(format!(
            "Crofton evaluation supports polygons spanning a 2-plane, body spans dimension {rank}"
        )));
    }
    let u = svd.u.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let basis = DMatrix::from_columns(&[u.column(order[0]).into_owned(), u.column(order[1]).into_owned()]);
    let plane = Subspace::from_columns(&basis)?;
    let coords: Vec<Vector2<f64>> = (0..diffs.ncols())
        .map(|c| {
            let v = basis.transpose() * diffs.column(c);
            Vector2::new(v[0], v[1])
        })
        .chain(std::iter::once(Vector2::zeros()))
        .collect();
    Ok(cosine_average(&plane)?.scaled(area2d(&coords)))
}

/// Radial operator at P: -d^2/dbeta^2 Phi(cos(beta) P) / |P|^2, which equals P.grad Phi / |P|^2.
fn radial_q(phi: &TorusAverage, z: f64, w: f64) -> Estimate {
    let d = derivative(&|b: f64| phi.eval(b.cos() * z, b.cos() * w), 0.0, 2, Stencil::Central);
    let r2 = z * z + w * w;
    Estimate { value: -d.value / r2, err: d.err / r2 }
}

fn boundary_points(x: f64) -> [(f64, f64); 4] {
    [(1.0, x), (x, 1.0), (-1.0, -x), (-x, -1.0)]
}

fn boundary_sum(phi: &TorusAverage, x: f64) -> f64 {
    boundary_points(x).iter().map(|&(z, w)| phi.eval(z, w)).sum()
}

fn check_smooth(e: &Estimate) -> Result<f64> {
    if !e.value.is_finite() || !(e.err <= SMOOTHNESS_TOL) {
        return Err(PvError::NonSmoothAtLightCone(e.err));
    }
    Ok(e.value)
}

/// Residue pairing with m_{0,0} from the four-fold rotational average Phi_4 at (1, 0):
/// -(1/12) d^2Phi_4/dw^2 + (1/6)(Phi_4 - dPhi_4/dz).
pub fn pair_m00(phi: &TorusAverage) -> Result<f64> {
    let phi4 = |z: f64, w: f64| 0.25 * (phi.eval(z, w) + phi.eval(-w, z) + phi.eval(-z, -w) + phi.eval(w, -z));
    let dww = check_smooth(&derivative(&|w: f64| phi4(1.0, w), 0.0, 2, Stencil::Central))?;
    let dz = check_smooth(&derivative(&|z: f64| phi4(z, 0.0), 1.0, 1, Stencil::Backward))?;
    Ok(-dww / 12.0 + (phi4(1.0, 0.0) - dz) / 6.0)
}

/// The same residue written through the boundary sum h and the radial operator.
pub fn pair_m00_boundary_form(phi: &TorusAverage) -> Result<f64> {
    let h0 = boundary_sum(phi, 0.0);
    let h2 = check_smooth(&derivative(&|x: f64| boundary_sum(phi, x), 0.0, 2, Stencil::Central))?;
    let mut rq = 0.0;
    for (z, w) in boundary_points(0.0) {
        rq += check_smooth(&radial_q(phi, z, w))?;
    }
    Ok(-(h2 - 2.0 * h0) / 48.0 - rq / 24.0)
}

/// (1/8) FP int_0^1 x^{-5/2} Psi(x) dx with Psi(x) the circle integral of Phi at radius sqrt(1-x).
pub fn pair_mplus(phi: &TorusAverage) -> Result<f64> {
    Ok(mplus_family(phi, -2.5)?.value() / 8.0)
}

/// FP int_0^1 x^lambda Psi(x) dx.
pub fn mplus_family(phi: &TorusAverage, lambda: f64) -> Result<MeroScalar> {
    let rule = Arc::new(CompositeGauss::new(GAUSS_ORDER));
    let breaks = uniform_breaks(0.0, 2.0 * PI, CIRCLE_PANELS);
    let p = phi.clone();
    let psi = SmoothFn::one_sided(move |x: f64| {
        let r = (1.0 - x).max(0.0).sqrt();
        rule.integrate(|t| p.eval(r * t.cos(), r * t.sin()), &breaks)
    });
    fp_power_integral(&psi, lambda.into(), Side::Plus)
}

fn radial_derivs(phi: &TorusAverage, t: f64, r: f64, rmax: f64) -> (f64, f64) {
    let (c, s) = (t.cos(), t.sin());
    let g = |rho: f64| phi.eval(rho * c, rho * s);
    let stencil = if r + 0.011 <= rmax { Stencil::Central } else { Stencil::Backward };
    (derivative(&g, r, 1, stencil).value, derivative(&g, r, 2, stencil).value)
}

/// Interior remainder after two recursion steps: signed sum over the four sectors of
/// int dt int_0^{arcosh(rmax)} (g''/r - g'/r^2)(cosh s) ds, g(r) = Phi(r cos t, r sin t).
fn interior_remainder(phi: &TorusAverage) -> f64 {
    let outer = |t: f64| {
        let m = t.cos().abs().max(t.sin().abs());
        let rmax = 1.0 / m;
        let smax = rmax.acosh();
        if smax < 1e-14 {
            return 0.0;
        }
        let sign = if t.sin() * t.cos() > 0.0 { 1.0 } else { -1.0 };
        let inner = |s: f64| {
            let r = s.cosh().min(rmax);
            let (g1, g2) = radial_derivs(phi, t, r, rmax);
            g2 / r - g1 / (r * r)
        };
        sign * adaptive(inner, &[0.0, smax], 1e-11, 1e-10)
    };
    adaptive(outer, &uniform_breaks(0.0, 2.0 * PI, 8), 1e-10, 1e-10)
}

/// Pairing with m_- at lambda = -5/2 through two steps of the boundary recursion.
pub fn pair_mminus(phi: &TorusAverage) -> Result<f64> {
    for (z, w) in boundary_points(0.0) {
        let e = radial_q(phi, z, w);
        if !e.value.is_finite() || e.err > SMOOTHNESS_TOL {
            return Err(PvError::NonSmoothBoundary(e.err));
        }
    }
    let p1 = phi.clone();
    let psi1 = SmoothFn::new(move |t: f64| boundary_sum(&p1, t.tan()));
    let t1 = fp_tan_measure_odd(&psi1, (-2.5).into())?.value();
    let p2 = phi.clone();
    let psi2 = SmoothFn::new(move |t: f64| {
        let x = t.tan();
        boundary_points(x).iter().map(|&(z, w)| radial_q(&p2, z, w).value).sum()
    });
    let t2 = fp_tan_measure_odd(&psi2, (-1.5).into())?.value();
    let d2 = interior_remainder(phi);
    Ok(-(t1 + t2 - d2) / 12.0)
}

/// Composite rule over the torus of the join coordinates.
fn join_average(f: &LineFn, theta: f64, rule: &CompositeGauss, breaks: &[f64]) -> f64 {
    let (ct, st) = (theta.cos(), theta.sin());
    rule.integrate(
        |t1| {
            let (a, b) = (ct * t1.cos(), ct * t1.sin());
            rule.integrate(|t2| f(&Vector4::new(a, b, st * t2.cos(), st * t2.sin())), breaks)
        },
        breaks,
    )
}

/// (1/4) FP int_0^1 x^lambda A(theta(x)) dx over the open orbit (1,0) or (0,1) of lines,
/// with A the integral of f over the join torus at angle theta and x = |cos 2theta|.
pub fn pair_deg1(f: LineFn, orbit: (usize, usize), lambda: f64) -> Result<MeroScalar> {
    let sign = match orbit {
        (1, 0) => 1.0,
        (0, 1) => -1.0,
        (a, b) => return Err(PvError::InfeasibleLabel { a, b, r: 0, p: 2, q: 2 }),
    };
    let rule = CompositeGauss::new(GAUSS_ORDER);
    let breaks = uniform_breaks(0.0, 2.0 * PI, CIRCLE_PANELS);
    let a_of_x = SmoothFn::new(move |x: f64| {
        let theta = 0.5 * (sign * x).clamp(-1.0, 1.0).acos();
        join_average(&f, theta, &rule, &breaks)
    });
    Ok(fp_power_integral(&a_of_x, lambda.into(), Side::Plus)? * 0.25)
}

/// Probability Haar measures on Gr_2(R^4) and on complex lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Haar {
    Euclidean,
    Complex,
}

/// Which measure a [`CroftonMeasureSpec`] describes.
#[derive(Debug, Clone, PartialEq)]
pub enum CroftonKind {
    OpenOrbitDeg1 { a: usize, b: usize, lambda: f64 },
    M00,
    MPlus,
    MMinus,
    EuclideanHaar,
    ComplexHaar,
    PointMass(Subspace),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CroftonMeasureSpec {
    kind: CroftonKind,
    degree: usize,
}

impl CroftonMeasureSpec {
    pub fn new(kind: CroftonKind, degree: usize) -> Result<Self> {
        let ok = match &kind {
            CroftonKind::OpenOrbitDeg1 { a, b, .. } => degree == 1 && matches!((a, b), (1, 0) | (0, 1)),
            CroftonKind::PointMass(e) => e.k() == degree,
            _ => degree == 2,
        };
        if !ok {
            return Err(PvError::WrongDimension(format!("{kind:?} is not a degree-{degree} measure")));
        }
        Ok(Self { kind, degree })
    }

    pub fn open_orbit_deg1(a: usize, b: usize, lambda: f64) -> Result<Self> {
        Self::new(CroftonKind::OpenOrbitDeg1 { a, b, lambda }, 1)
    }

    pub fn m00() -> Self {
        Self { kind: CroftonKind::M00, degree: 2 }
    }

    pub fn mplus() -> Self {
        Self { kind: CroftonKind::MPlus, degree: 2 }
    }

    pub fn mminus() -> Self {
        Self { kind: CroftonKind::MMinus, degree: 2 }
    }

    pub fn haar(h: Haar) -> Self {
        let kind = match h {
            Haar::Euclidean => CroftonKind::EuclideanHaar,
            Haar::Complex => CroftonKind::ComplexHaar,
        };
        Self { kind, degree: 2 }
    }

    pub fn point_mass(e: Subspace) -> Self {
        let degree = e.k();
        Self { kind: CroftonKind::PointMass(e), degree }
    }

    pub fn kind(&self) -> &CroftonKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Klain value at E0 of the valuation with the given Crofton measure: the pairing of the
/// measure with the cosine function of E0.
pub fn klain_from_crofton(measure: &CroftonMeasureSpec, e0: &Subspace) -> Result<f64> {
    if let CroftonKind::PointMass(e) = &measure.kind {
        if e.n() != e0.n() {
            return Err(PvError::DimensionMismatch { expected: e.n(), got: e0.n() });
        }
        return if e.k() == e0.k() { cosine_between(e0, e) } else { complementary_cosine(e0, e) };
    }
    if e0.n() != 4 || e0.k() + measure.degree != 4 {
        return Err(PvError::WrongDimension(format!(
            "E0 must have dimension {} in R^4, got {} in R^{}",
            4 - measure.degree,
            e0.k(),
            e0.n()
        )));
    }
    match measure.kind {
        CroftonKind::OpenOrbitDeg1 { a, b, lambda } => {
            let normal = e0.orthogonal_complement().basis().column(0).into_owned();
            let n = Vector4::new(normal[0], normal[1], normal[2], normal[3]);
            let f: LineFn = Arc::new(move |v: &Vector4<f64>| n.dot(v).abs());
            Ok(pair_deg1(f, (a, b), lambda)?.value())
        }
        CroftonKind::EuclideanHaar => {
            // z0.z and w0.w are independent and uniform on [-1, 1].
            let rule = CompositeGauss::new(GAUSS_ORDER);
            let v = rule.integrate(
                |u| {
                    let brk = [-1.0, (-u).clamp(-1.0, 1.0), 1.0];
                    rule.integrate(|v| (u + v).abs(), &brk)
                },
                &[-1.0, 1.0],
            );
            Ok(v / 8.0)
        }
        CroftonKind::ComplexHaar => {
            // Complex lines lift to z = (0, 1, 0) with w uniform on the sphere.
            let c = sphere_pair_of_plane(e0)?.z.y;
            let rule = CompositeGauss::new(GAUSS_ORDER);
            let cut = (-c).clamp(-1.0, 1.0);
            Ok(0.25 * rule.integrate(|u| (c + u).abs(), &[-1.0, cut, 1.0]))
        }
        CroftonKind::M00 | CroftonKind::MPlus | CroftonKind::MMinus => {
            let c2 = cos2theta(&QuadSpace::new(2, 2)?, e0)?;
            if c2.abs() <= DELTA_SING {
                return Err(PvError::SingularSupportCollision(c2));
            }
            let phi = cosine_average(e0)?;
            match measure.kind {
                CroftonKind::M00 => pair_m00(&phi),
                CroftonKind::MPlus => pair_mplus(&phi),
                _ => pair_mminus(&phi),
            }
        }
        CroftonKind::PointMass(_) => unreachable!("handled above"),
    }
}

/// sqrt|z^2 + w^2 - 1| restricted to the region of orbit index i.
pub fn kappa_integrand(i: usize, z: f64, w: f64) -> f64 {
    let s = z * z + w * w - 1.0;
    let region = if s < 0.0 {
        1
    } else if z * w > 0.0 {
        2
    } else if z * w < 0.0 {
        0
    } else {
        return 0.0;
    };
    if region == i {
        s.abs().sqrt()
    } else {
        0.0
    }
}

/// Integral of kappa_i against a Haar probability measure.
pub fn integrate_kappa(measure: Haar, i: usize) -> Result<f64> {
    if i > 2 {
        return Err(PvError::IndexOutOfRange { a: i, lo: 0, hi: 2 });
    }
    Ok(match measure {
        Haar::Euclidean => {
            // Archimedes: (z1, w1) uniform on the square; polar coordinates centred at 0.
            let outer = |t: f64| {
                let (c, s) = (t.cos(), t.sin());
                let rmax = 1.0 / c.abs().max(s.abs());
                if i == 1 {
                    tanh_sinh(|r| r * kappa_integrand(1, r * c, r * s), 0.0, 1.0, 1e-15)
                } else {
                    tanh_sinh(|r| r * kappa_integrand(i, r * c, r * s), 1.0, rmax, 1e-15)
                }
            };
            0.25 * adaptive(outer, &uniform_breaks(0.0, 2.0 * PI, 8), 1e-13, 1e-12)
        }
        Haar::Complex => 0.5 * tanh_sinh(|u| kappa_integrand(i, 0.0, u), -1.0, 1.0, 1e-15),
    })
}

/// Klain coefficients of phi_{0,0} = a(kappa_0 + kappa_2) + b kappa_1 and of
/// phi_+ = a'(kappa_0 + kappa_2) + b' kappa_1, with the data they were solved from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KlainSolution {
    pub a: f64,
    pub b: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    pub ratio: f64,
    pub kappa_real: [f64; 3],
    pub kappa_complex: [f64; 3],
    pub m00_mu21: f64,
    pub m00_mu20: f64,
    pub mplus_mu21: f64,
    pub mplus_mu20: f64,
}

/// Weights of Kl mu_{2,0}, Kl mu_{2,1} in the Klain functions of the valuations
/// with Crofton measures m_C and m_R.
const MIX_COMPLEX: (f64, f64) = (0.25, 0.5);
const MIX_REAL: (f64, f64) = (1.0 / 3.0, 1.0 / 3.0);

fn solve2(m: [[f64; 2]; 2], r: [f64; 2]) -> Result<(f64, f64)> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() < 1e-14 {
        return Err(PvError::SingularMap);
    }
    Ok(((r[0] * m[1][1] - m[0][1] * r[1]) / det, (m[0][0] * r[1] - m[1][0] * r[0]) / det))
}

pub fn solve_klain_coefficients() -> Result<KlainSolution> {
    let mut kr = [0.0; 3];
    let mut kc = [0.0; 3];
    for i in 0..3 {
        kr[i] = integrate_kappa(Haar::Euclidean, i)?;
        kc[i] = integrate_kappa(Haar::Complex, i)?;
    }
    let (mu21, mu20) = (klain_mu21_average(), klain_mu20_average());
    let m00_21 = pair_m00(&mu21)?;
    let m00_20 = pair_m00(&mu20)?;
    let mp_21 = pair_mplus(&mu21)?;
    let mp_20 = pair_mplus(&mu20)?;
    let mat = [[kc[0] + kc[2], kc[1]], [kr[0] + kr[2], kr[1]]];
    let mix = |v20: f64, v21: f64| [MIX_COMPLEX.0 * v20 + MIX_COMPLEX.1 * v21, MIX_REAL.0 * v20 + MIX_REAL.1 * v21];
    let (a, b) = solve2(mat, mix(m00_20, m00_21))?;
    let (a_prime, b_prime) = solve2(mat, mix(mp_20, mp_21))?;
    Ok(KlainSolution {
        a,
        b,
        a_prime,
        b_prime,
        ratio: b_prime / b,
        kappa_real: kr,
        kappa_complex: kc,
        m00_mu21: m00_21,
        m00_mu20: m00_20,
        mplus_mu21: mp_21,
        mplus_mu20: mp_20,
    })
}
