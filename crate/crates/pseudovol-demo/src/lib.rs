//! Browser demo: orbit map of planes in R^{2,2}, finite-part curves in lambda,
//! and boost invariance of the Lorentz valuations on a user polygon.

use nalgebra::DMatrix;
use pseudovol::crofton::torus_pair;
use pseudovol::grassmann::{cos2theta, plane_from_sphere_pair};
use pseudovol::lorentz::{phi_minus, phi_plus};
use pseudovol::quadform::{boost, signature_of_restriction};
use pseudovol::regularize::fp_power_integral_real;
use pseudovol::{ConvexBody, PvError, QuadSpace, SmoothFn};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Orbit of the plane with sphere-pair heights (z1, w1): cos 2theta and the open index a
/// (or -1 on the degenerate set).
pub fn orbit_at(z1: f64, w1: f64) -> (f64, i32) {
    let space = QuadSpace::new(2, 2).expect("signature (2,2)");
    let e = plane_from_sphere_pair(&torus_pair(z1, w1, 0.3, 1.1));
    let c = cos2theta(&space, &e).unwrap_or(f64::NAN);
    let idx = match signature_of_restriction(&space, &e) {
        Ok(l) if l.is_open() => l.a as i32,
        _ => -1,
    };
    (c, idx)
}

/// Row-major grid over [-1,1]^2: interleaved (cos 2theta, open index).
#[wasm_bindgen]
pub fn orbit_field(steps: usize) -> Vec<f64> {
    let steps = steps.clamp(2, 400);
    let mut out = Vec::with_capacity(2 * steps * steps);
    for i in 0..steps {
        let w1 = 1.0 - 2.0 * i as f64 / (steps - 1) as f64;
        for j in 0..steps {
            let z1 = -1.0 + 2.0 * j as f64 / (steps - 1) as f64;
            let (c, a) = orbit_at(z1, w1);
            out.push(c);
            out.push(a as f64);
        }
    }
    out
}

fn integrand(kind: &str) -> Option<SmoothFn> {
    Some(match kind {
        "one" => SmoothFn::new(|_| 1.0).with_derivatives(|j| if j == 0 { 1.0 } else { 0.0 }),
        "exp" => SmoothFn::new(f64::exp).with_derivatives(|_| 1.0),
        "cos" => SmoothFn::new(f64::cos).with_derivatives(|j| match j % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        }),
        _ => return None,
    })
}

/// Finite part of int_0^1 x^lambda f(x) dx sampled on [lo, hi]; at a pole the residue is nonzero.
/// Output is interleaved (lambda, value, residue).
pub fn fp_curve_values(kind: &str, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>, String> {
    let f = integrand(kind).ok_or_else(|| format!("unknown integrand '{kind}'"))?;
    if !(lo < hi) || lo < -12.0 || hi > 12.0 {
        return Err("need -12 <= lo < hi <= 12".into());
    }
    let samples = samples.clamp(2, 2000);
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let l = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        match fp_power_integral_real(&f, l) {
            Ok(m) => {
                out.extend([l, m.value(), m.residue.re]);
            }
            Err(PvError::PoleHit(_)) => out.extend([l, f64::NAN, f64::NAN]),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn fp_curve(kind: &str, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    fp_curve_values(kind, lo, hi, samples).map_err(|e| JsError::new(&e))
}

/// phi_- and phi_+ of a polygon in R^{1,1} before and after the boost by rapidity alpha.
pub fn boost_check_json(points_json: &str, alpha: f64) -> Result<String, String> {
    let points: Vec<[f64; 2]> = serde_json::from_str(points_json).map_err(|e| e.to_string())?;
    let space = QuadSpace::new(1, 1).expect("signature (1,1)");
    let body = ConvexBody::from_points(points.iter().map(|p| p.to_vec()).collect());
    let g: DMatrix<f64> = boost(&space, 0, 1, alpha).map_err(|e| e.to_string())?;
    let moved = body.transformed(&g).map_err(|e| e.to_string())?;
    let v = |b: &ConvexBody| -> Result<(f64, f64), String> {
        Ok((phi_minus(&space, b).map_err(|e| e.to_string())?, phi_plus(&space, b).map_err(|e| e.to_string())?))
    };
    let ((m0, p0), (m1, p1)) = (v(&body)?, v(&moved)?);
    let boosted: Vec<[f64; 2]> =
        points.iter().map(|p| [g[(0, 0)] * p[0] + g[(0, 1)] * p[1], g[(1, 0)] * p[0] + g[(1, 1)] * p[1]]).collect();
    Ok(json!({
        "phi_minus": m0, "phi_plus": p0,
        "phi_minus_boosted": m1, "phi_plus_boosted": p1,
        "boosted_points": boosted,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn boost_check(points_json: &str, alpha: f64) -> Result<String, JsError> {
    boost_check_json(points_json, alpha).map_err(|e| JsError::new(&e))
}
