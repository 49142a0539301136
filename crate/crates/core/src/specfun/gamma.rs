//! Gamma, log-Gamma, reciprocal Gamma and digamma for real arguments.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Distance from a non-positive integer below which an argument is treated
/// as sitting on a Gamma pole.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 4.742_187_5;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// `sin(πx)` with exact argument reduction, so integer `x` gives exactly 0.
pub fn sin_pi(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    }
}

/// `Some(m)` when `x` lies within [`POLE_TOL`] of the non-positive integer `-m`.
pub fn pole_index(x: f64) -> Option<u64> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= POLE_TOL {
        Some((-r) as u64)
    } else {
        None
    }
}

fn lanczos_sum(xm1: f64) -> f64 {
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (xm1 + i as f64);
    }
    sum
}

/// Γ(x) for real `x`. Uses the reflection relation for `x < 0.5`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if pole_index(x).is_some() {
        return Err(Error::GammaPole(x));
    }
    if !x.is_finite() {
        return Err(Error::Range(format!("gamma_real({x})")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_unchecked(1.0 - x))
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        let sum = lanczos_sum(xm1);
        // split the power so that t^(x - 1/2) does not overflow before e^-t
        let half = t.powf(0.5 * (xm1 + 0.5));
        (2.0 * PI).sqrt() * sum * half * (half * (-t).exp())
    }
}

/// ln|Γ(x)| for real `x` that is not a pole.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        (PI / sin_pi(x).abs()).ln() - ln_gamma(1.0 - x)
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
    }
}

/// Digamma ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> f64 {
    if x < 0.5 {
        return digamma(1.0 - x) - PI * cos_pi(x) / sin_pi(x);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Bernoulli tail: B2k / (2k y^2k) for k = 1..7
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    acc + y.ln() - 0.5 / y - tail
}

/// Reciprocal Gamma `1/Γ(z)` and its derivative, split as `exp(ln_factor) · (value, slope)`.
///
/// `1/Γ` is entire; at a pole argument `value` is exactly zero while `slope`
/// stays finite. Splitting off the common factor keeps both usable for
/// arguments far beyond the range where Γ itself is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRecipGamma {
    pub ln_factor: f64,
    pub value: f64,
    pub slope: f64,
}

pub fn recip_gamma_scaled(z: f64) -> ScaledRecipGamma {
    if z > 0.5 {
        ScaledRecipGamma {
            ln_factor: -ln_gamma(z),
            value: 1.0,
            slope: -digamma(z),
        }
    } else {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let sin = if pole_index(z).is_some() { 0.0 } else { sin_pi(z) };
        ScaledRecipGamma {
            ln_factor: ln_gamma(1.0 - z) - PI.ln(),
            value: sin,
            slope: PI * cos_pi(z) - sin * digamma(1.0 - z),
        }
    }
}

/// `1/Γ(z)`, exactly zero on the poles of Γ.
pub fn recip_gamma(z: f64) -> f64 {
    let r = recip_gamma_scaled(z);
    if r.value == 0.0 {
        0.0
    } else {
        r.value * r.ln_factor.exp()
    }
}
