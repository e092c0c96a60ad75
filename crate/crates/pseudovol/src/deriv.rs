//! Richardson-extrapolated finite differences.

use crate::tolerances::{RICHARDSON_H0, RICHARDSON_LEVELS};

/// Stencil placement relative to the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Central,
    Forward,
    Backward,
}

/// A derivative value with an error estimate from the extrapolation tableau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn difference<F: Fn(f64) -> f64>(f: &F, x0: f64, order: usize, h: f64, stencil: Stencil) -> f64 {
    let mut s = 0.0;
    for i in 0..=order {
        let c = binom(order, i) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let x = match stencil {
            Stencil::Central => x0 + (0.5 * order as f64 - i as f64) * h,
            Stencil::Forward => x0 + (order - i) as f64 * h,
            Stencil::Backward => x0 - i as f64 * h,
        };
        s += c * f(x);
    }
    s / h.powi(order as i32)
}

/// `order`-th derivative of `f` at `x0` using steps `h0, h0/2, ...` and Richardson extrapolation.
pub fn derivative_with<F: Fn(f64) -> f64>(f: &F, x0: f64, order: usize, stencil: Stencil, h0: f64, levels: usize) -> Estimate {
    if order == 0 {
        return Estimate { value: f(x0), err: 0.0 };
    }
    let p = if stencil == Stencil::Central { 2 } else { 1 };
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut best = Estimate { value: f64::NAN, err: f64::INFINITY };
    let mut h = h0;
    for i in 0..levels {
        let mut row = vec![difference(f, x0, order, h, stencil)];
        for l in 1..=i {
            let fac = 2f64.powi((p * l) as i32);
            let v = row[l - 1] + (row[l - 1] - table[i - 1][l - 1]) / (fac - 1.0);
            let e = (v - row[l - 1]).abs().max((v - table[i - 1][l - 1]).abs());
            if e < best.err {
                best = Estimate { value: v, err: e };
            }
            row.push(v);
        }
        table.push(row);
        h *= 0.5;
    }
    if !best.value.is_finite() {
        best = Estimate { value: table[levels - 1][0], err: f64::INFINITY };
    }
    best
}

/// Derivative with the default step schedule.
pub fn derivative<F: Fn(f64) -> f64>(f: &F, x0: f64, order: usize, stencil: Stencil) -> Estimate {
    derivative_with(f, x0, order, stencil, RICHARDSON_H0, RICHARDSON_LEVELS)
}

/// Initial step for the j-th Taylor coefficient; high orders lose more to rounding at small h.
/// Capped so a forward stencil stays inside [0, 1/2].
fn taylor_step(j: usize) -> f64 {
    if j <= 2 {
        RICHARDSON_H0
    } else {
        (0.025 * j as f64).min(0.5 / j as f64)
    }
}

/// Taylor coefficients `f^(j)(x0)/j!` for `j < m`.
pub fn taylor_coefficients<F: Fn(f64) -> f64>(f: &F, x0: f64, m: usize, stencil: Stencil) -> Vec<Estimate> {
    let mut fact = 1.0;
    (0..m)
        .map(|j| {
            if j > 0 {
                fact *= j as f64;
            }
            let d = derivative_with(f, x0, j, stencil, taylor_step(j), RICHARDSON_LEVELS);
            Estimate { value: d.value / fact, err: d.err / fact }
        })
        .collect()
}
