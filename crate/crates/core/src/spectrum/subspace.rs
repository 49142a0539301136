//! Equidistant sub-ladders for rational `s = p/q`.
//!
//! When both `ν₊ = n₊` and `ν₋ = n₋` are non-negative integers of equal
//! parity, the two branches are Hermite functions whose origin value (even
//! orders) or origin derivative (odd orders) vanishes on both sides at once,
//! so the level is an eigenvalue without any transcendental matching. With
//! `s = p/q` this happens for `n₊(k) = kq + (q−1)/2`, `n₋(k) = kp + (p−1)/2`,
//! provided `p ≡ q (mod 4)`.

use serde::{Deserialize, Serialize};

use super::{OscillatorConfig, Spectrum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRule {
    pub p: u64,
    pub q: u64,
    pub valid: bool,
}

impl SubspaceRule {
    pub fn n_plus(&self, k: u64) -> u64 {
        k * self.q + (self.q - 1) / 2
    }

    pub fn n_minus(&self, k: u64) -> u64 {
        k * self.p + (self.p - 1) / 2
    }

    pub fn s(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn config(&self) -> OscillatorConfig {
        OscillatorConfig::new(self.s()).expect("p >= q gives s >= 1")
    }

    /// Level spacing `qω₊` in natural units (equal to `p`).
    pub fn quantum(&self) -> f64 {
        self.q as f64 * self.s()
    }

    /// Energy of sub-ladder level `k` in natural units, `(n₊(k) + ½)ω₊`.
    pub fn energy(&self, k: u64) -> f64 {
        (self.n_plus(k) as f64 + 0.5) * self.s()
    }

    /// `(k, n₊(k), n₋(k))` for `k = 0..=k_max`.
    pub fn index_table(&self, k_max: u64) -> Vec<(u64, u64, u64)> {
        (0..=k_max).map(|k| (k, self.n_plus(k), self.n_minus(k))).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Classify `s = p/q`. Pairs that are even, not coprime or have `p < q` are
/// rejected; odd coprime pairs with `p ≢ q (mod 4)` are returned with
/// `valid = false`.
pub fn subspace_rule(p: u64, q: u64) -> Result<SubspaceRule> {
    let reject = |reason: &str| Err(Error::InvalidRule {
        p,
        q,
        reason: reason.to_string(),
    });
    if p == 0 || q == 0 {
        return reject("p and q must be positive");
    }
    if p.is_multiple_of(2) || q.is_multiple_of(2) {
        return reject("p and q must be odd");
    }
    if gcd(p, q) != 1 {
        return reject("p and q must be coprime");
    }
    if p < q {
        return reject("p must not be smaller than q (s >= 1)");
    }
    Ok(SubspaceRule {
        p,
        q,
        valid: p % 4 == q % 4,
    })
}

/// Full-spectrum positions of the sub-ladder levels `k = 0, 1, …` up to the
/// top of `spectrum`.
pub fn locate_subspace_in_spectrum(rule: &SubspaceRule, spectrum: &Spectrum) -> Result<Vec<usize>> {
    if !rule.valid {
        return Err(Error::InvalidRule {
            p: rule.p,
            q: rule.q,
            reason: "p and q differ mod 4, no glued sub-ladder exists".into(),
        });
    }
    if (spectrum.s() - rule.s()).abs() > 1e-12 * rule.s() {
        return Err(Error::BasisMismatch(format!(
            "spectrum computed for s = {}, rule needs s = {}/{}",
            spectrum.s(),
            rule.p,
            rule.q
        )));
    }
    let top = spectrum.levels.last().map_or(f64::NEG_INFINITY, |l| l.nu_plus);
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let target = rule.n_plus(k) as f64;
        if target > top + 1e-6 {
            break;
        }
        let n = spectrum
            .levels
            .iter()
            .position(|l| (l.nu_plus - target).abs() <= 1e-6)
            .ok_or(Error::LevelNotFound {
                k: k as usize,
                nu_plus: target,
            })?;
        out.push(n);
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonance_identity() {
        for (p, q) in [(5, 1), (7, 3), (9, 1), (13, 5), (11, 7)] {
            let r = subspace_rule(p, q).unwrap();
            assert!(r.valid);
            for k in 0..20 {
                assert_eq!((2 * r.n_minus(k) + 1) * q, (2 * r.n_plus(k) + 1) * p);
                assert_eq!(r.n_minus(k) % 2, r.n_plus(k) % 2);
            }
        }
    }

    #[test]
    fn classification() {
        assert!(!subspace_rule(3, 1).unwrap().valid);
        assert!(subspace_rule(1, 1).unwrap().valid);
        assert!(subspace_rule(7, 7).is_err());
        assert!(subspace_rule(4, 1).is_err());
        assert!(subspace_rule(1, 5).is_err());
        let r = subspace_rule(7, 3).unwrap();
        assert_eq!(r.n_plus(0), 1);
        assert_eq!(r.n_plus(1), 4);
        assert!((r.quantum() - 7.0).abs() < 1e-15);
    }
}
