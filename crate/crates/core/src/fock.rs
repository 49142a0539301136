//! Truncated Fock-space algebra: ladder operators act as weighted shifts on
//! coefficient vectors over an eigenbasis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::ln_gamma;
use crate::{Error, Result};

/// Which eigenbasis the coefficients refer to. The algebra is identical; the
/// tag decides which energies drive time evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Basis {
    Full { s: f64 },
    Subspace { p: u64, q: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub coeffs: Vec<Complex64>,
    pub basis: Basis,
}

impl FockVector {
    pub fn zeros(truncation: usize, basis: Basis) -> Self {
        FockVector {
            coeffs: vec![Complex64::new(0.0, 0.0); truncation],
            basis,
        }
    }

    /// The basis state `e_n`.
    pub fn basis_state(n: usize, truncation: usize, basis: Basis) -> Self {
        let mut v = Self::zeros(truncation, basis);
        v.coeffs[n] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if self.basis != other.basis || self.truncation() != other.truncation() {
            return Err(Error::BasisMismatch(format!(
                "{:?} (N = {}) vs {:?} (N = {})",
                self.basis,
                self.truncation(),
                other.basis,
                other.truncation()
            )));
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum())
    }

    /// `‖self − other‖`, assuming equal lengths.
    pub fn distance(&self, other: &FockVector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> FockVector {
        FockVector {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            basis: self.basis,
        }
    }

    /// Index past the last coefficient with `|c_n|² > threshold`.
    pub fn occupied(&self, threshold: f64) -> usize {
        self.coeffs.iter().rposition(|c| c.norm_sqr() > threshold).map_or(0, |i| i + 1)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im,prob\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{:.16e},{:.16e},{:.16e}\n", c.re, c.im, c.norm_sqr()));
        }
        out
    }
}

/// `(â v)_n = √(n+1) c_{n+1}`; the top coefficient has no source and is zero.
pub fn ladder_lower(v: &FockVector) -> FockVector {
    let n = v.truncation();
    let mut out = FockVector::zeros(n, v.basis);
    for k in 0..n.saturating_sub(1) {
        out.coeffs[k] = v.coeffs[k + 1] * ((k + 1) as f64).sqrt();
    }
    out
}

/// Result of [`ladder_raise`]: the truncated vector and the squared
/// magnitude pushed beyond the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Raised {
    pub vector: FockVector,
    pub leakage: f64,
}

/// `(â⁺ v)_n = √n c_{n−1}`.
pub fn ladder_raise(v: &FockVector) -> Raised {
    let n = v.truncation();
    let mut out = FockVector::zeros(n, v.basis);
    for k in 1..n {
        out.coeffs[k] = v.coeffs[k - 1] * (k as f64).sqrt();
    }
    let leakage = v.coeffs.last().map_or(0.0, |c| c.norm_sqr() * n as f64);
    Raised { vector: out, leakage }
}

/// `(N̂ v)_n = n c_n`.
pub fn number(v: &FockVector) -> FockVector {
    FockVector {
        coeffs: v.coeffs.iter().enumerate().map(|(n, c)| c * n as f64).collect(),
        basis: v.basis,
    }
}

/// `c_n = e^(−|α|²/2) αⁿ/√(n!)`, `n < truncation`.
pub fn coherent_coefficients(alpha: Complex64, truncation: usize, basis: Basis) -> FockVector {
    let mut v = FockVector::zeros(truncation, basis);
    let r = alpha.norm();
    if r == 0.0 {
        if truncation > 0 {
            v.coeffs[0] = Complex64::new(1.0, 0.0);
        }
        return v;
    }
    let (ln_r, theta) = (r.ln(), alpha.arg());
    for (n, c) in v.coeffs.iter_mut().enumerate() {
        let nf = n as f64;
        let modulus = (-0.5 * r * r + nf * ln_r - 0.5 * ln_gamma(nf + 1.0)).exp();
        *c = Complex64::from_polar(modulus, nf * theta);
    }
    v
}

/// `Σ_{n ≥ a} e^(−x) xⁿ/n!`: the probability mass a coherent state with
/// `|α|² = x` has beyond a truncation `a`. Equals the regularized lower
/// incomplete gamma function `P(a, x)`.
pub fn poisson_tail(a: usize, x: f64) -> f64 {
    if a == 0 {
        return 1.0;
    }
    if x <= 0.0 {
        return 0.0;
    }
    let af = a as f64;
    if x > af {
        // the head is the short side
        return 1.0 - poisson_head(a, x);
    }
    let mut term = (-x + af * x.ln() - ln_gamma(af + 1.0)).exp();
    let mut sum = 0.0;
    let mut n = af;
    while term > 1e-18 * sum || sum == 0.0 {
        sum += term;
        n += 1.0;
        term *= x / n;
        if term == 0.0 {
            break;
        }
    }
    sum
}

fn poisson_head(a: usize, x: f64) -> f64 {
    // Σ_{n < a} e^(−x) xⁿ/n!, summed downward from the largest term
    let mut sum = 0.0;
    let mut n = (a - 1) as f64;
    let mut term = (-x + n * x.ln() - ln_gamma(n + 1.0)).exp();
    loop {
        sum += term;
        if n == 0.0 || term < 1e-18 * sum {
            break;
        }
        term *= n / x;
        n -= 1.0;
    }
    sum
}

/// Result of [`displace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Displaced {
    pub vector: FockVector,
    /// Bound on the neglected Taylor remainder.
    pub remainder_bound: f64,
    /// `|α|² > N/4`: truncation of the generator itself is no longer negligible.
    pub truncation_warning: bool,
}

/// `exp(α â⁺ − α* â) e₀` with the truncated generator.
///
/// The generator `G` is anti-Hermitian and tridiagonal with `‖G‖ ≤ 2|α|√N`.
/// It is applied in `m` equal sub-steps with `‖G‖/m ≤ 1`, each a Taylor series
/// cut where the remainder `e/(K+1)!` drops below `1e-20`.
pub fn displace(alpha: Complex64, truncation: usize, basis: Basis) -> Displaced {
    let n = truncation;
    let mut v = FockVector::basis_state(0, n, basis);
    let bound = 2.0 * alpha.norm() * (n as f64).sqrt();
    let steps = bound.ceil().max(1.0) as usize;
    let a = alpha / steps as f64;
    const ORDER: usize = 22;
    let step_remainder = std::f64::consts::E / (1..=ORDER + 1).map(|k| k as f64).product::<f64>();
    let apply = |w: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            if k + 1 < n {
                // α√(k+1) moves c_k up, −α*√(k+1) moves c_{k+1} down
                let s = ((k + 1) as f64).sqrt();
                out[k + 1] += a * s * w[k];
                out[k] -= a.conj() * s * w[k + 1];
            }
        }
        out
    };
    for _ in 0..steps {
        let mut term = v.coeffs.clone();
        let mut acc = v.coeffs.clone();
        for order in 1..=ORDER {
            term = apply(&term);
            let inv = 1.0 / order as f64;
            term.iter_mut().for_each(|t| *t *= inv);
            acc.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        }
        v.coeffs = acc;
    }
    Displaced {
        vector: v,
        remainder_bound: steps as f64 * step_remainder,
        truncation_warning: alpha.norm_sqr() > n as f64 / 4.0,
    }
}
