//! Eigenvalues of the asymmetric oscillator.
//!
//! On each half-line the eigenfunction is a parabolic cylinder function,
//! `D_{ν₊}(√(2ω₊)x)` for `x ≥ 0` and `D_{ν₋}(−√(2ω₋)x)` for `x < 0`, with a
//! common energy `E = (ν₊ + ½)ω₊ = (ν₋ + ½)ω₋`. Continuity of the value and
//! the derivative at the origin leaves a 2×2 homogeneous system whose
//! determinant is the matching residual.

mod subspace;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::specfun::{half_line_norm_sq_scaled, OriginData};
use crate::{Error, Result};

pub use subspace::{locate_subspace_in_spectrum, subspace_rule, SubspaceRule};

/// Physical parameters in natural units `ħ = m = ω₋ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorConfig {
    pub s: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl OscillatorConfig {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 1.0 {
            return Err(Error::Config(format!("asymmetry s = {s} must be a finite number >= 1")));
        }
        Ok(OscillatorConfig {
            s,
            omega_minus: 1.0,
            omega_plus: s,
            hbar: 1.0,
            mass: 1.0,
        })
    }

    /// `ν₋ = sν₊ + (s−1)/2`.
    pub fn nu_minus(&self, nu_plus: f64) -> f64 {
        self.s * nu_plus + 0.5 * (self.s - 1.0)
    }

    /// Classical period `π/ω₋ + π/ω₊`.
    pub fn classical_period(&self) -> f64 {
        std::f64::consts::PI * (1.0 / self.omega_minus + 1.0 / self.omega_plus)
    }

    /// Energy of level `ν₊` in natural units.
    pub fn energy(&self, nu_plus: f64) -> f64 {
        (nu_plus + 0.5) * self.omega_plus
    }
}

/// Which continuity condition fixed the ratio of the two branch amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gluing {
    Value,
    Derivative,
}

/// One eigenvalue with its gluing data.
///
/// The normalized eigenfunction is `glue_plus · D_{ν₊}(√(2ω₊)x) / S₊` for
/// `x ≥ 0` and `glue_minus · D_{ν₋}(−√(2ω₋)x) / S₋` for `x < 0`, where `S±` is
/// the origin scale of [`OriginData`]. `norm` is the L² norm of the same
/// function before normalization, with the unit amplitude vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    #[serde(rename = "n")]
    pub index: usize,
    pub nu_plus: f64,
    pub nu_minus: f64,
    /// `ν₊ + ½`, in units of `ħω₊`.
    pub energy: f64,
    pub glue_plus: f64,
    pub glue_minus: f64,
    pub norm: f64,
    pub gluing: Gluing,
}

/// Root-scan parameters recorded with every spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanInfo {
    pub step: f64,
    pub lower: f64,
    pub upper: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub config: OscillatorConfig,
    pub levels: Vec<EigenSolution>,
    pub scan: ScanInfo,
}

impl Spectrum {
    pub fn s(&self) -> f64 {
        self.config.s
    }

    pub fn nu_values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.nu_plus).collect()
    }

    /// Energies in natural units.
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy * self.config.omega_plus).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Origin data of both branches with the derivative already multiplied by
/// `√ω`, each renormalized to a unit vector.
#[derive(Debug, Clone, Copy)]
struct BranchPair {
    plus: (f64, f64),
    minus: (f64, f64),
    scale_plus: f64,
    scale_minus: f64,
}

fn branch(origin: &OriginData, omega: f64) -> ((f64, f64), f64) {
    let a = origin.value;
    let b = omega.sqrt() * origin.derivative;
    let h = a.hypot(b);
    ((a / h, b / h), h)
}

fn branch_pair(nu_plus: f64, config: &OscillatorConfig) -> (BranchPair, OriginData, OriginData) {
    let op = OriginData::new(nu_plus);
    let om = OriginData::new(config.nu_minus(nu_plus));
    let (plus, scale_plus) = branch(&op, config.omega_plus);
    let (minus, scale_minus) = branch(&om, config.omega_minus);
    (
        BranchPair {
            plus,
            minus,
            scale_plus,
            scale_minus,
        },
        op,
        om,
    )
}

/// `f(ν₊) = √ω₋ D'_{ν₋}(0) D_{ν₊}(0) + √ω₊ D'_{ν₊}(0) D_{ν₋}(0)`.
///
/// Grows like a product of Gamma functions; see [`scaled_residual`] for the
/// bounded form used by the root finder.
pub fn matching_residual(nu_plus: f64, config: &OscillatorConfig) -> f64 {
    let (pair, op, om) = branch_pair(nu_plus, config);
    let ln = op.ln_scale + om.ln_scale;
    let g = pair.plus.0 * pair.minus.1 + pair.minus.0 * pair.plus.1;
    if g == 0.0 {
        return 0.0;
    }
    g * pair.scale_plus * pair.scale_minus * ln.exp()
}

/// The matching residual divided by the lengths of the two origin vectors
/// `(D(0), √ω D'(0))`: the sine of the angle between them, in `[−1, 1]`.
pub fn scaled_residual(nu_plus: f64, config: &OscillatorConfig) -> f64 {
    let (pair, _, _) = branch_pair(nu_plus, config);
    pair.plus.0 * pair.minus.1 + pair.minus.0 * pair.plus.1
}

/// Refinement target for every root (bracket width in `ν₊`).
pub const ROOT_TOLERANCE: f64 = 1e-10;
/// Nominal scan step in `ν₊`.
pub const SCAN_STEP: f64 = 0.02;
const SCAN_LOWER: f64 = -0.499;
const GLUED_MIN_THRESHOLD: f64 = 1e-6;
const GLUED_FACTOR_THRESHOLD: f64 = 1e-8;

/// Scan step actually used: the nominal step, reduced for very stiff
/// right-hand springs so that it stays below the smallest level spacing.
pub fn scan_step(s: f64) -> f64 {
    SCAN_STEP.min(0.5 / (1.0 + s))
}

/// True when both origin values or both origin derivatives vanish, the case
/// in which both branches are Hermite functions.
fn glued_predicate(nu_plus: f64, config: &OscillatorConfig) -> bool {
    let (pair, _, _) = branch_pair(nu_plus, config);
    (pair.plus.0.abs() < GLUED_FACTOR_THRESHOLD && pair.minus.0.abs() < GLUED_FACTOR_THRESHOLD)
        || (pair.plus.1.abs() < GLUED_FACTOR_THRESHOLD && pair.minus.1.abs() < GLUED_FACTOR_THRESHOLD)
}

/// The lowest `count` eigenvalues for `config`.
pub fn find_eigenvalues(config: &OscillatorConfig, count: usize) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::Config("count must be at least 1".into()));
    }
    let step = scan_step(config.s);
    let upper = count as f64 * (1.0 + config.s) / 2.0 + 2.0;
    let n_points = ((upper - SCAN_LOWER) / step).ceil() as usize + 1;
    let g = |nu: f64| scaled_residual(nu, config);

    let mut roots: Vec<f64> = Vec::with_capacity(count);
    let mut xs: Vec<f64> = Vec::new();
    let mut gs: Vec<f64> = Vec::new();
    const BLOCK: usize = 1024;
    let mut start = 0;
    while start < n_points && roots.len() < count {
        let end = (start + BLOCK).min(n_points);
        let block: Vec<(f64, f64)> = (start..end)
            .into_par_iter()
            .map(|i| {
                let x = SCAN_LOWER + step * i as f64;
                (x, g(x))
            })
            .collect();
        let first_new = xs.len();
        for (x, v) in block {
            xs.push(x);
            gs.push(v);
        }
        // a sign change or exact zero between consecutive samples
        for i in first_new.max(1)..xs.len() {
            if roots.len() >= count {
                break;
            }
            let (a, b) = (xs[i - 1], xs[i]);
            let (fa, fb) = (gs[i - 1], gs[i]);
            if fa == 0.0 {
                push_root(&mut roots, a, step);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                let (r, _) = crate::optimize::brent_root(g, a, b, ROOT_TOLERANCE);
                push_root(&mut roots, snap_glued(r, config), step);
            }
            // tangential zero: local minimum of |g| without a sign change
            if i >= 2 {
                let (f0, f1, f2) = (gs[i - 2], gs[i - 1], gs[i]);
                if f1.abs() < f0.abs()
                    && f1.abs() <= f2.abs()
                    && f1.abs() < GLUED_MIN_THRESHOLD
                    && f0.signum() == f1.signum()
                    && f1.signum() == f2.signum()
                {
                    let r = minimize_abs(g, xs[i - 2], xs[i]);
                    if g(r).abs() <= 1e-8 && glued_predicate(r, config) {
                        push_root(&mut roots, snap_glued(r, config), step);
                    }
                }
            }
        }
        start = end;
    }
    roots.sort_by(f64::total_cmp);
    roots.truncate(count);
    if roots.len() < count {
        return Err(Error::ScanExhausted {
            found: roots.len(),
            requested: count,
            nu_max: upper,
        });
    }
    let levels = roots
        .iter()
        .enumerate()
        .map(|(index, &nu)| eigen_solution(index, nu, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        config: *config,
        levels,
        scan: ScanInfo {
            step,
            lower: SCAN_LOWER,
            upper,
            tolerance: ROOT_TOLERANCE,
        },
    })
}

fn push_root(roots: &mut Vec<f64>, r: f64, step: f64) {
    if roots.iter().all(|&q| (q - r).abs() > 0.5 * step) {
        roots.push(r);
    }
}

/// Replace a root within rounding of an integer by the integer itself when
/// the residual vanishes there exactly (a pole-annihilated origin factor).
fn snap_glued(r: f64, config: &OscillatorConfig) -> f64 {
    let n = r.round();
    if (r - n).abs() < 1e-8 && scaled_residual(n, config) == 0.0 {
        n
    } else {
        r
    }
}

fn minimize_abs<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    while b - a > ROOT_TOLERANCE {
        if g(c).abs() < g(d).abs() {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    0.5 * (a + b)
}

/// Gluing coefficients and normalization for the root `nu_plus`.
pub fn eigen_solution(index: usize, nu_plus: f64, config: &OscillatorConfig) -> Result<EigenSolution> {
    let nu_minus = config.nu_minus(nu_plus);
    let op = OriginData::new(nu_plus);
    let om = OriginData::new(nu_minus);
    // amplitudes of the unit-scaled branches D/S (not the √ω-weighted vectors)
    let (ap, dp) = (op.value, op.derivative);
    let (am, dm) = (om.value, om.derivative);
    let by_value = (am, ap);
    let by_derivative = (-config.omega_minus.sqrt() * dm, config.omega_plus.sqrt() * dp);
    let (mut c, gluing) = if by_value.0.hypot(by_value.1) >= by_derivative.0.hypot(by_derivative.1) {
        (by_value, Gluing::Value)
    } else {
        (by_derivative, Gluing::Derivative)
    };
    let len = c.0.hypot(c.1);
    if len < 1e-12 {
        return Err(Error::Degenerate(len));
    }
    c = (c.0 / len, c.1 / len);
    if c.0 < 0.0 {
        c = (-c.0, -c.1);
    }
    let i_plus = half_line_norm_sq_scaled(nu_plus) / (2.0 * config.omega_plus).sqrt();
    let i_minus = half_line_norm_sq_scaled(nu_minus) / (2.0 * config.omega_minus).sqrt();
    let norm = (c.0 * c.0 * i_plus + c.1 * c.1 * i_minus).sqrt();
    if !(norm > 1e-12) || !norm.is_finite() {
        return Err(Error::Degenerate(norm));
    }
    Ok(EigenSolution {
        index,
        nu_plus,
        nu_minus,
        energy: nu_plus + 0.5,
        glue_plus: c.0 / norm,
        glue_minus: c.1 / norm,
        norm,
        gluing,
    })
}
