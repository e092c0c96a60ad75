//! Complex Gamma and the continued Beta function.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{PvError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Whether `z` is (numerically) a pole of Gamma.
pub fn is_gamma_pole(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-12
}

/// Gamma via Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::from(PI) / (s * gamma(Complex64::from(1.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// 1/Gamma, exactly zero at the poles of Gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_gamma_pole(z) {
        return Complex64::from(0.0);
    }
    if z.re < 0.5 {
        return (z * PI).sin() * gamma(Complex64::from(1.0) - z) / PI;
    }
    1.0 / gamma(z)
}

/// Beta function continued through Gamma; zero when a + b is a pole and a, b are not.
pub fn beta_complex(a: Complex64, b: Complex64) -> Result<Complex64> {
    let (pa, pb, pab) = (is_gamma_pole(a), is_gamma_pole(b), is_gamma_pole(a + b));
    if pa || pb {
        return Err(if pab { PvError::IndeterminateBeta { a: a.re, b: b.re } } else { PvError::BetaPole { a: a.re, b: b.re } });
    }
    Ok(gamma(a) * gamma(b) * rgamma(a + b))
}

/// Real part of the continued Beta function.
pub fn beta_fp(a: Complex64, b: Complex64) -> Result<f64> {
    beta_complex(a, b).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::from(x)
    }

    #[test]
    fn gamma_integers_and_half() {
        assert!((gamma(c(5.0)).re - 24.0).abs() < 1e-11);
        assert!((gamma(c(0.5)).re - PI.sqrt()).abs() < 1e-13);
        assert!((gamma(c(-0.5)).re + 2.0 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma_recurrence_complex() {
        let z = Complex64::new(0.3, 1.7);
        let lhs = gamma(z + 1.0);
        let rhs = z * gamma(z);
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(0.0)).norm(), 0.0);
        assert_eq!(rgamma(c(-3.0)).norm(), 0.0);
    }

    #[test]
    fn beta_values() {
        assert!((beta_fp(c(1.0), c(1.0)).unwrap() - 1.0).abs() < 1e-13);
        assert!((beta_fp(c(0.5), c(0.5)).unwrap() - PI).abs() < 1e-12);
        assert_eq!(beta_fp(c(-1.5), c(1.5)).unwrap(), 0.0);
        assert!(matches!(beta_fp(c(-1.0), c(-1.0)), Err(PvError::IndeterminateBeta { .. })));
        assert!(matches!(beta_fp(c(-1.0), c(2.5)), Err(PvError::BetaPole { .. })));
    }
}
