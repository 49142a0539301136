//! Coherent states over the full eigenbasis or over an equidistant
//! sub-ladder, their time evolution, and checks of their defining
//! properties.

mod diagnostics;

use num_complex::Complex64;

use crate::fock::{coherent_coefficients, poisson_tail, Basis, FockVector};
use crate::optimize::nelder_mead;
use crate::quadrature::gauss_legendre_on;
use crate::spectrum::{locate_subspace_in_spectrum, Spectrum, SubspaceRule};
use crate::wavefun::{assemble_eigenfunction, assemble_subspace, ComplexGridFunction, Grid, GridFunction};
use crate::{Error, Result};

pub use diagnostics::{
    dephased_left_probability, gaussianity_diagnostic, left_probability, position_matrix, position_trace,
    spectral_peaks, SpectralPeak,
};

/// Where the basis of a coherent state comes from.
#[derive(Debug, Clone, Copy)]
pub enum BasisSource<'a> {
    /// All eigenstates of a solved spectrum.
    Full(&'a Spectrum),
    /// The sub-ladder `n₊(k)` of a valid rule. When a spectrum is supplied
    /// the predicted levels are also located in it as a cross-check.
    Subspace {
        rule: SubspaceRule,
        spectrum: Option<&'a Spectrum>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub alpha: Complex64,
    pub fock: FockVector,
    /// Level energies in natural units, one per coefficient.
    pub energies: Vec<f64>,
    /// Full-spectrum positions of the basis levels when known.
    pub positions: Option<Vec<usize>>,
    /// `1 − Σ|c_n|²`.
    pub tail_mass: f64,
}

impl CoherentState {
    pub fn basis(&self) -> Basis {
        self.fock.basis
    }

    pub fn truncation(&self) -> usize {
        self.fock.truncation()
    }
}

/// Default truncation `max(64, ⌈4|α|²⌉)`.
pub fn auto_truncation(alpha: Complex64) -> usize {
    (4.0 * alpha.norm_sqr()).ceil().max(64.0) as usize
}

pub fn build_coherent(alpha: Complex64, source: BasisSource<'_>, truncation: usize) -> Result<CoherentState> {
    if truncation == 0 {
        return Err(Error::Config("truncation must be at least 1".into()));
    }
    let (basis, energies, positions) = match source {
        BasisSource::Full(spectrum) => {
            if spectrum.levels.len() < truncation {
                return Err(Error::InsufficientSpectrum {
                    have: spectrum.levels.len(),
                    need: truncation,
                });
            }
            let e = spectrum.energies()[..truncation].to_vec();
            (Basis::Full { s: spectrum.s() }, e, Some((0..truncation).collect()))
        }
        BasisSource::Subspace { rule, spectrum } => {
            if !rule.valid {
                return Err(Error::InvalidRule {
                    p: rule.p,
                    q: rule.q,
                    reason: "p and q differ mod 4, no glued sub-ladder exists".into(),
                });
            }
            let positions = match spectrum {
                Some(sp) => {
                    let pos = locate_subspace_in_spectrum(&rule, sp)?;
                    if pos.len() < truncation {
                        return Err(Error::InsufficientSpectrum {
                            have: pos.len(),
                            need: truncation,
                        });
                    }
                    Some(pos[..truncation].to_vec())
                }
                None => None,
            };
            let e = (0..truncation as u64).map(|k| rule.energy(k)).collect();
            (Basis::Subspace { p: rule.p, q: rule.q }, e, positions)
        }
    };
    Ok(CoherentState {
        alpha,
        fock: coherent_coefficients(alpha, truncation, basis),
        energies,
        positions,
        tail_mass: poisson_tail(truncation, alpha.norm_sqr()),
    })
}

/// `⟨a|b⟩` over the shared truncated basis.
pub fn overlap(a: &CoherentState, b: &CoherentState) -> Result<Complex64> {
    a.fock.inner(&b.fock)
}

/// Closed form `⟨α|β⟩ = exp(−(|α|² + |β|²)/2 + α*β)`.
pub fn overlap_closed_form(alpha: Complex64, beta: Complex64) -> Complex64 {
    (-(0.5 * (alpha.norm_sqr() + beta.norm_sqr())) + alpha.conj() * beta).exp()
}

/// `c_n ↦ e^(−iE_n t) c_n`.
pub fn evolve(state: &CoherentState, t: f64) -> FockVector {
    FockVector {
        coeffs: state
            .fock
            .coeffs
            .iter()
            .zip(&state.energies)
            .map(|(c, e)| c * Complex64::from_polar(1.0, -e * t))
            .collect(),
        basis: state.fock.basis,
    }
}

/// `|⟨α'|v⟩|` with `|α'⟩` truncated like `v`.
fn coherent_overlap_modulus(alpha: Complex64, v: &FockVector) -> f64 {
    let c = coherent_coefficients(alpha, v.truncation(), v.basis);
    c.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm()
}

/// Modulus of the overlap between the evolved state and the best-matching
/// coherent state.
///
/// On a sub-ladder the match is the closed-form prediction `α₀e^(−iqω₊t)`.
/// On the full basis `α'` is optimized, seeded with `α₀e^(−iΩt)` (`Ω` the
/// lowest gap) and a ring of further starts.
pub fn coherence_fidelity(state: &CoherentState, t: f64) -> f64 {
    let evolved = evolve(state, t);
    match state.basis() {
        Basis::Subspace { p, q } => {
            let omega_plus = p as f64 / q as f64;
            let quantum = q as f64 * omega_plus;
            coherent_overlap_modulus(state.alpha * Complex64::from_polar(1.0, -quantum * t), &evolved)
        }
        Basis::Full { .. } => best_coherent_match(state, &evolved, t).1,
    }
}

/// Best `α'` and the fidelity it reaches.
pub fn best_coherent_match(state: &CoherentState, evolved: &FockVector, t: f64) -> (Complex64, f64) {
    let omega = if state.energies.len() > 1 {
        state.energies[1] - state.energies[0]
    } else {
        0.0
    };
    let seed = state.alpha * Complex64::from_polar(1.0, -omega * t);
    let radius = state.alpha.norm();
    let mut starts = vec![seed];
    if radius > 0.0 {
        for j in 0..8 {
            starts.push(seed * Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 8.0));
        }
    }
    let objective = |p: &[f64]| -coherent_overlap_modulus(Complex64::new(p[0], p[1]), evolved);
    let mut best = (seed, coherent_overlap_modulus(seed, evolved));
    for start in starts {
        let m = nelder_mead(objective, &[start.re, start.im], 0.1 * radius.max(0.5), 1e-15, 4000);
        let m = nelder_mead(objective, &m.point, 1e-3, 1e-16, 2000);
        if -m.value > best.1 {
            best = (Complex64::new(m.point[0], m.point[1]), -m.value);
        }
    }
    (best.0, best.1.min(1.0))
}

/// Number of quadrature nodes for [`identity_resolution_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarQuadrature {
    pub radial: usize,
    pub angular: usize,
}

impl PolarQuadrature {
    pub fn for_check(n_check: usize) -> Self {
        PolarQuadrature {
            radial: 96,
            angular: 2 * n_check + 1,
        }
    }
}

/// `M_nm = ∫_{|α|≤R} ⟨n|α⟩⟨α|m⟩ d²α/π` by Gauss–Legendre in `|α|` and
/// uniform nodes in `arg α`. The disk truncation makes the exact target
/// `P(n+1, R²)` on the diagonal and zero elsewhere.
///
/// The coefficient algebra is the same on every basis, so the result does
/// not depend on the basis tag.
pub fn identity_resolution_check(n_check: usize, radius: f64, quad: PolarQuadrature) -> Result<Vec<Vec<Complex64>>> {
    if quad.angular < 2 * n_check + 1 {
        return Err(Error::Config(format!(
            "need at least {} angular nodes for {n_check} levels",
            2 * n_check + 1
        )));
    }
    let (rs, ws) = gauss_legendre_on(quad.radial, 0.0, radius);
    let basis = Basis::Full { s: 1.0 };
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n_check]; n_check];
    let dtheta = std::f64::consts::TAU / quad.angular as f64;
    for (r, w) in rs.iter().zip(&ws) {
        for j in 0..quad.angular {
            let alpha = Complex64::from_polar(*r, dtheta * j as f64);
            let c = coherent_coefficients(alpha, n_check, basis);
            // d²α/π = r dr dθ/π
            let weight = w * r * dtheta / std::f64::consts::PI;
            for n in 0..n_check {
                for k in 0..n_check {
                    m[n][k] += c.coeffs[n] * c.coeffs[k].conj() * weight;
                }
            }
        }
    }
    Ok(m)
}

/// Eigenfunctions for the first `count` basis levels of `state`.
pub fn basis_functions(state: &CoherentState, spectrum: Option<&Spectrum>, grid: &Grid, count: usize) -> Result<Vec<GridFunction>> {
    match state.basis() {
        Basis::Full { .. } => {
            let sp = spectrum.ok_or_else(|| Error::Config("full-basis wavefunctions need a spectrum".into()))?;
            if sp.levels.len() < count {
                return Err(Error::InsufficientSpectrum {
                    have: sp.levels.len(),
                    need: count,
                });
            }
            use rayon::prelude::*;
            sp.levels[..count]
                .par_iter()
                .map(|l| assemble_eigenfunction(l, &sp.config, grid))
                .collect()
        }
        Basis::Subspace { p, q } => {
            let rule = crate::spectrum::subspace_rule(p, q)?;
            if count == 0 {
                return Ok(Vec::new());
            }
            assemble_subspace(&rule, count as u64 - 1, grid)
        }
    }
}

/// Probability threshold below which a level counts as unoccupied.
pub const OCCUPATION_THRESHOLD: f64 = 1e-18;

/// `ψ_α(x) = Σ c_n ψ_n(x)` over the occupied levels.
pub fn wavefunction(state: &CoherentState, spectrum: Option<&Spectrum>, grid: &Grid) -> Result<ComplexGridFunction> {
    superpose(&state.fock, &basis_functions(state, spectrum, grid, state.fock.occupied(OCCUPATION_THRESHOLD))?)
}

/// `Σ c_n f_n` for the first `fs.len()` coefficients.
pub fn superpose(v: &FockVector, fs: &[GridFunction]) -> Result<ComplexGridFunction> {
    let first = fs.first().ok_or_else(|| Error::Config("no occupied levels".into()))?;
    let mut values = vec![Complex64::new(0.0, 0.0); first.xs.len()];
    for (c, f) in v.coeffs.iter().zip(fs) {
        for (acc, x) in values.iter_mut().zip(&f.values) {
            *acc += c * x;
        }
    }
    Ok(ComplexGridFunction {
        grid: first.grid,
        xs: first.xs.clone(),
        values,
    })
}
