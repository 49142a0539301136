//! Physicists' Hermite polynomials and normalized Hermite functions.

use std::f64::consts::PI;

use crate::{Error, Result};

/// `H_n(y)` by the three-term recurrence `H_{n+1} = 2y H_n − 2n H_{n−1}`.
pub fn hermite_h(n: u32, y: f64) -> Result<f64> {
    if n > 200 {
        return Err(Error::Range(format!("hermite order {n} > 200")));
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * y * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite functions `h_n(y) = (2ⁿ n! √π)^(−½) H_n(y) e^(−y²/2)`
/// for `n = 0..=n_max` at one point, orthonormal on the real line.
///
/// The recurrence runs on a rescaled copy and the Gaussian factor is applied
/// at the end, so large `y` and large `n` neither underflow nor overflow
/// until the true value does.
pub fn hermite_functions(n_max: usize, y: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    // log of the factor still owed to every entry
    let mut ln_owed = -0.5 * y * y - 0.25 * PI.ln();
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut raw = vec![(0.0f64, 0.0f64); n_max + 1];
    raw[0] = (cur, ln_owed);
    for n in 0..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * y * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            prev *= 1e-150;
            cur *= 1e-150;
            ln_owed += 150.0 * std::f64::consts::LN_10;
        }
        raw[n + 1] = (cur, ln_owed);
    }
    for (slot, (v, ln)) in out.iter_mut().zip(raw) {
        *slot = if v == 0.0 { 0.0 } else { v.signum() * (v.abs().ln() + ln).exp() };
    }
    out
}

/// `(h_n(0), h_n'(0))` for one order.
pub fn hermite_function_origin(n: usize) -> (f64, f64) {
    // h_n(0) = -sqrt((n-1)/n) h_{n-2}(0); h_n'(0) = sqrt(2n) h_{n-1}(0)
    let at_zero = |m: usize| -> f64 {
        if m % 2 == 1 {
            return 0.0;
        }
        let mut v = PI.powf(-0.25);
        let mut k = 2;
        while k <= m {
            v *= -((k - 1) as f64 / k as f64).sqrt();
            k += 2;
        }
        v
    };
    let value = at_zero(n);
    let deriv = if n == 0 { 0.0 } else { (2.0 * n as f64).sqrt() * at_zero(n - 1) };
    (value, deriv)
}
