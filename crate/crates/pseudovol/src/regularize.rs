//! Hadamard finite parts of x^lambda families and the tan-power measures built from them.

use std::ops::{Add, Mul};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::deriv::{taylor_coefficients, Stencil};
use crate::error::{PvError, Result};
use crate::quad::{jacobi_power_rule, tanh_sinh, CompositeGauss};
use crate::tolerances::{M_MAX, M_MAX_NUMERIC, NEAR_POLE, POLE_WINDOW};

pub use crate::gamma::beta_fp;

const JACOBI_DEGREE: usize = 30;
const TAIL_TOL: f64 = 1e-14;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// A smooth test function with optional analytic derivatives at 0.
#[derive(Clone)]
pub struct SmoothFn {
    f: RealFn,
    derivs: Option<DerivFn>,
    left_defined: bool,
}

impl std::fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFn").field("analytic_derivatives", &self.derivs.is_some()).field("left_defined", &self.left_defined).finish()
    }
}

impl SmoothFn {
    /// A function that may also be evaluated slightly left of 0 (central differences).
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self { f: Arc::new(f), derivs: None, left_defined: true }
    }

    /// A function defined only on [0, ...] (forward differences).
    pub fn one_sided<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self { f: Arc::new(f), derivs: None, left_defined: false }
    }

    /// Attaches `d(j) = f^(j)(0)`.
    pub fn with_derivatives<D: Fn(usize) -> f64 + Send + Sync + 'static>(mut self, d: D) -> Self {
        self.derivs = Some(Arc::new(d));
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn has_derivatives(&self) -> bool {
        self.derivs.is_some()
    }

    /// Deepest subtraction this function supports.
    pub fn max_depth(&self) -> usize {
        if self.has_derivatives() {
            M_MAX
        } else {
            M_MAX_NUMERIC
        }
    }

    pub fn is_left_defined(&self) -> bool {
        self.left_defined
    }

    /// Taylor coefficients at 0 for `j < m`.
    pub fn taylor(&self, m: usize) -> Vec<f64> {
        match &self.derivs {
            Some(d) => {
                let mut fact = 1.0;
                (0..m)
                    .map(|j| {
                        if j > 0 {
                            fact *= j as f64;
                        }
                        d(j) / fact
                    })
                    .collect()
            }
            None => {
                let stencil = if self.left_defined { Stencil::Central } else { Stencil::Forward };
                let f = &self.f;
                taylor_coefficients(&|x| f(x), 0.0, m, stencil).into_iter().map(|e| e.value).collect()
            }
        }
    }

    /// x -> f(-x).
    pub fn reflected(&self) -> Self {
        let f = self.f.clone();
        Self {
            f: Arc::new(move |x| f(-x)),
            derivs: self.derivs.clone().map(|d| -> DerivFn { Arc::new(move |j| if j % 2 == 0 { d(j) } else { -d(j) }) }),
            left_defined: self.left_defined,
        }
    }
}

/// Which half-line family: x_+^lambda on [0,1] or |x|_-^lambda on [-1,0].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Laurent data of a meromorphic family at a point: constant term and simple-pole residue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeroScalar {
    pub lambda0: Complex64,
    pub finite_part: Complex64,
    pub residue: Complex64,
    pub pole_order: u8,
    /// Set when lambda0 lies within the conditioning window of a pole.
    pub near_pole: bool,
}

impl MeroScalar {
    /// Real part of the finite part.
    pub fn value(&self) -> f64 {
        self.finite_part.re
    }
}

impl Add for MeroScalar {
    type Output = MeroScalar;
    fn add(self, o: MeroScalar) -> MeroScalar {
        MeroScalar {
            lambda0: self.lambda0,
            finite_part: self.finite_part + o.finite_part,
            residue: self.residue + o.residue,
            pole_order: self.pole_order.max(o.pole_order),
            near_pole: self.near_pole || o.near_pole,
        }
    }
}

impl Mul<f64> for MeroScalar {
    type Output = MeroScalar;
    fn mul(self, s: f64) -> MeroScalar {
        MeroScalar { finite_part: self.finite_part * s, residue: self.residue * s, ..self }
    }
}

/// Subtraction depth m = ceil(-Re lambda) (0 for Re lambda >= 0).
pub fn subtraction_depth(lambda: Complex64) -> usize {
    if lambda.re >= 0.0 {
        0
    } else {
        (-lambda.re - 1e-12).ceil().max(0.0) as usize
    }
}

/// Index n >= 1 with lambda = -n within `window`, if any.
fn pole_index(lambda: Complex64, window: f64) -> Option<usize> {
    let n = (-lambda.re).round();
    if n >= 1.0 && (lambda + n).norm() < window {
        Some(n as usize)
    } else {
        None
    }
}

fn cpow(x: f64, lambda: Complex64) -> Complex64 {
    if lambda.im == 0.0 {
        Complex64::from(x.powf(lambda.re))
    } else {
        Complex64::from_polar(x.powf(lambda.re), lambda.im * x.ln())
    }
}

/// int_0^{1/2} x^lambda r(x) dx for complex lambda on panels [2^{-k-1}, 2^{-k}]; the innermost
/// piece uses r(x) ~ x^m r_m with r_m sampled at its midpoint.
fn graded_low<R: Fn(f64) -> f64>(rem: &R, lambda: Complex64, m: usize) -> Complex64 {
    const LEVELS: i32 = 24;
    let rule = CompositeGauss::new(20);
    let f_re = |x: f64| (cpow(x, lambda) * rem(x)).re;
    let f_im = |x: f64| (cpow(x, lambda) * rem(x)).im;
    let mut acc = Complex64::from(0.0);
    for k in 1..=LEVELS {
        let (a, b) = (0.5f64.powi(k + 1), 0.5f64.powi(k));
        acc += Complex64::new(rule.integrate(f_re, &[a, b]), rule.integrate(f_im, &[a, b]));
    }
    let eps = 0.5f64.powi(LEVELS + 1);
    let mid = 0.5 * eps;
    let r_m = rem(mid) / mid.powi(m as i32);
    let e = lambda + (m + 1) as f64;
    acc + cpow(eps, e) * r_m / e
}

/// Extra Taylor coefficients used for the series tail near 0 when m >= TAIL_DEPTH.
const TAIL_TERMS: usize = 6;
const TAIL_DEPTH: usize = 4;

/// int_0^1 near 0 for deep subtraction: rem(x) = g - T_{m-1} cancels badly for small x,
/// so [0, delta] uses the series sum_i ext_i x^{m+i} and [delta, 1/2] plain Gauss-Legendre.
fn series_low<R: Fn(f64) -> f64>(rem: &R, ext: &[f64], lambda: Complex64, m: usize) -> Complex64 {
    // Balances rounding (~eps delta^{1-m}) against truncation (~delta^{TAIL_TERMS+1}).
    let delta = 1e-16f64.powf(1.0 / (m + TAIL_TERMS) as f64).min(0.2);
    let mut acc = Complex64::from(0.0);
    for (i, &e) in ext.iter().enumerate() {
        let p = lambda + (m + i + 1) as f64;
        acc += cpow(delta, p) * e / p;
    }
    let pieces = 12;
    let ratio = (0.5 / delta).powf(1.0 / pieces as f64);
    let breaks: Vec<f64> = (0..=pieces).map(|i| delta * ratio.powi(i)).collect();
    let rule = CompositeGauss::new(20);
    let re = rule.integrate(|x| (cpow(x, lambda) * rem(x)).re, &breaks);
    let im = if lambda.im == 0.0 { 0.0 } else { rule.integrate(|x| (cpow(x, lambda) * rem(x)).im, &breaks) };
    acc + Complex64::new(re, im)
}

/// FP int_0^1 x^lambda g(x) dx given g and its Taylor coefficients c_j (j < m),
/// followed by TAIL_TERMS further coefficients when m >= TAIL_DEPTH.
fn fp_core<G: Fn(f64) -> f64>(g: &G, c_all: &[f64], lambda: Complex64) -> MeroScalar {
    let m = subtraction_depth(lambda);
    let (c, ext) = c_all.split_at(m.min(c_all.len()));
    let pole = pole_index(lambda, POLE_WINDOW);
    let near = pole.is_none() && pole_index(lambda, NEAR_POLE).is_some();
    let taylor = |x: f64| c.iter().rev().fold(0.0, |acc, cj| acc * x + cj);
    let rem = |x: f64| g(x) - taylor(x);

    let low = if m >= TAIL_DEPTH && ext.len() == TAIL_TERMS && ext.iter().all(|e| e.is_finite()) {
        series_low(&rem, ext, lambda, m)
    } else if lambda.im == 0.0 {
        let rule = jacobi_power_rule(lambda.re + m as f64, 0.5, JACOBI_DEGREE);
        Complex64::from(rule.iter().map(|&(x, w)| w * rem(x) / x.powi(m as i32)).sum::<f64>())
    } else {
        graded_low(&rem, lambda, m)
    };
    let high_re = tanh_sinh(|x| (cpow(x, lambda) * rem(x)).re, 0.5, 1.0, TAIL_TOL);
    let high_im = if lambda.im == 0.0 { 0.0 } else { tanh_sinh(|x| (cpow(x, lambda) * rem(x)).im, 0.5, 1.0, TAIL_TOL) };

    let mut fp = low + Complex64::new(high_re, high_im);
    let mut residue = Complex64::from(0.0);
    for (j, &cj) in c.iter().enumerate() {
        if pole == Some(j + 1) {
            residue = Complex64::from(cj);
            continue;
        }
        fp += cj / (lambda + (j + 1) as f64);
    }
    MeroScalar { lambda0: lambda, finite_part: fp, residue, pole_order: u8::from(pole.is_some()), near_pole: near }
}

fn taylor_len(m: usize) -> usize {
    if m >= TAIL_DEPTH {
        m + TAIL_TERMS
    } else {
        m
    }
}

/// Finite part of int_0^1 x^lambda f(x) dx (Plus) or int_{-1}^0 |x|^lambda f(x) dx (Minus).
pub fn fp_power_integral(f: &SmoothFn, lambda: Complex64, side: Side) -> Result<MeroScalar> {
    let m = subtraction_depth(lambda);
    if m > f.max_depth() {
        return Err(PvError::DepthExceeded { m, max: f.max_depth() });
    }
    let g = match side {
        Side::Plus => f.clone(),
        Side::Minus => f.reflected(),
    };
    let c = g.taylor(taylor_len(m));
    Ok(fp_core(&|x| g.eval(x), &c, lambda))
}

/// Real-lambda convenience wrapper on the Plus side.
pub fn fp_power_integral_real(f: &SmoothFn, lambda: f64) -> Result<MeroScalar> {
    fp_power_integral(f, Complex64::from(lambda), Side::Plus)
}

fn tan_density(psi: &SmoothFn) -> SmoothFn {
    let p = psi.clone();
    let f = move |x: f64| p.eval(x.atan()) / (1.0 + x * x);
    if psi.is_left_defined() {
        SmoothFn::new(f)
    } else {
        SmoothFn::one_sided(f)
    }
}

/// int_0^{pi/4} tan^{2 lambda + 2}(t) psi(t) dt, continued in lambda.
/// At lambda = -m/2 the residue is F^{(m-3)}(0) / (2 (m-3)!), F(x) = psi(atan x)/(1+x^2).
pub fn fp_tan_measure(psi: &SmoothFn, lambda: Complex64) -> Result<MeroScalar> {
    let mu = lambda * 2.0 + 2.0;
    let r = fp_power_integral(&tan_density(psi), mu, Side::Plus)?;
    Ok(MeroScalar { lambda0: lambda, residue: r.residue * 0.5, ..r })
}

/// Odd-combined measure sign(t)|tan t|^{2 lambda + 2} dt on [-pi/4, pi/4];
/// psi must be defined on the whole interval.
pub fn fp_tan_measure_odd(psi: &SmoothFn, lambda: Complex64) -> Result<MeroScalar> {
    let dens = tan_density(psi);
    let odd = SmoothFn::new(move |x| dens.eval(x) - dens.eval(-x));
    let mu = lambda * 2.0 + 2.0;
    let m = subtraction_depth(mu);
    if m > M_MAX_NUMERIC {
        return Err(PvError::DepthExceeded { m, max: M_MAX_NUMERIC });
    }
    // Even Taylor coefficients of an odd function vanish identically.
    let mut c = odd.taylor(taylor_len(m));
    for (j, cj) in c.iter_mut().enumerate() {
        if j % 2 == 0 {
            *cj = 0.0;
        }
    }
    let r = fp_core(&|x| odd.eval(x), &c, mu);
    Ok(MeroScalar { lambda0: lambda, residue: r.residue * 0.5, ..r })
}

/// I(lambda) = int_0^1 s^lambda sqrt(1+s) ds continued by
/// (2 lambda + 5) I(lambda + 1) + (2 lambda + 2) I(lambda) = 4 sqrt 2.
pub fn i_lambda_complex(lambda: Complex64) -> Result<Complex64> {
    if let Some(n) = pole_index(lambda, POLE_WINDOW) {
        return Err(PvError::PoleHit(-(n as f64)));
    }
    let mut steps = 0usize;
    while lambda.re + (steps as f64) <= 1.0 {
        steps += 1;
    }
    let top = lambda + steps as f64;
    let direct = |part: fn(Complex64) -> f64| tanh_sinh(|s| part(cpow(s, top) * (1.0 + s).sqrt()), 0.0, 1.0, 1e-15);
    let mut val = Complex64::new(direct(|z| z.re), if top.im == 0.0 { 0.0 } else { direct(|z| z.im) });
    let four_root2 = 4.0 * 2f64.sqrt();
    for i in (0..steps).rev() {
        let l = lambda + i as f64;
        val = (four_root2 - (l * 2.0 + 5.0) * val) / (l * 2.0 + 2.0);
    }
    Ok(val)
}

/// Real-argument I(lambda).
pub fn i_lambda(lambda: f64) -> Result<f64> {
    i_lambda_complex(Complex64::from(lambda)).map(|z| z.re)
}
