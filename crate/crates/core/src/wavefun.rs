//! Position-space eigenfunctions on uniform grids.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::quadrature::trapezoid;
use crate::specfun::{hermite_function_origin, hermite_functions, pcf_scaled_grid, OriginData};
use crate::spectrum::{EigenSolution, Gluing, OscillatorConfig, Spectrum, SubspaceRule};
use crate::{Error, Result};

/// Uniform grid `x_i = i·dx`, `|i| ≤ round(L/dx)`; always contains `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub half_width: f64,
    pub dx: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            half_width: 12.0,
            dx: 2e-3,
        }
    }
}

impl Grid {
    pub fn new(half_width: f64, dx: f64) -> Result<Self> {
        if !(half_width > 0.0 && dx > 0.0 && dx < half_width) || !half_width.is_finite() {
            return Err(Error::Config(format!("bad grid: L = {half_width}, dx = {dx}")));
        }
        Ok(Grid { half_width, dx })
    }

    pub fn half_points(&self) -> usize {
        (self.half_width / self.dx).round() as usize
    }

    pub fn len(&self) -> usize {
        2 * self.half_points() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        let m = self.half_points() as i64;
        (-m..=m).map(|i| i as f64 * self.dx).collect()
    }

    /// Position of `x = 0` in [`Grid::points`].
    pub fn origin_index(&self) -> usize {
        self.half_points()
    }
}

/// Real samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Grid,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn norm_sq(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v * v).collect();
        trapezoid(&sq, self.grid.dx)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sign changes, ignoring samples below `1e-10` of the peak.
    pub fn sign_changes(&self) -> usize {
        let floor = 1e-10 * self.sup_norm();
        let mut last = 0.0f64;
        let mut count = 0;
        for &v in &self.values {
            if v.abs() <= floor {
                continue;
            }
            if last != 0.0 && v.signum() != last {
                count += 1;
            }
            last = v.signum();
        }
        count
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,psi\n");
        for (x, v) in self.xs.iter().zip(&self.values) {
            out.push_str(&format!("{x:.16e},{v:.16e}\n"));
        }
        out
    }
}

/// Inner product `∫ f g dx` by the trapezoid rule.
pub fn inner(f: &GridFunction, g: &GridFunction) -> f64 {
    let prod: Vec<f64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    trapezoid(&prod, f.grid.dx)
}

/// Complex samples, used for coherent-state superpositions.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGridFunction {
    pub grid: Grid,
    pub xs: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl ComplexGridFunction {
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        trapezoid(&self.density(), self.grid.dx)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im,prob\n");
        for (x, v) in self.xs.iter().zip(&self.values) {
            out.push_str(&format!("{x:.16e},{:.16e},{:.16e},{:.16e}\n", v.re, v.im, v.norm_sqr()));
        }
        out
    }
}

/// Split a grid into the arguments `√(2ω₊)x` for `x ≥ 0` and `√(2ω₋)|x|` for
/// `x < 0` (both ascending).
fn branch_arguments(xs: &[f64], origin: usize, config: &OscillatorConfig) -> (Vec<f64>, Vec<f64>) {
    let kp = (2.0 * config.omega_plus).sqrt();
    let km = (2.0 * config.omega_minus).sqrt();
    let right = xs[origin..].iter().map(|x| kp * x).collect();
    let left = xs[..origin].iter().rev().map(|x| -km * x).collect();
    (right, left)
}

/// Evaluate the glued eigenfunction of `sol` on `grid` and normalize it by
/// its quadrature norm.
pub fn assemble_eigenfunction(sol: &EigenSolution, config: &OscillatorConfig, grid: &Grid) -> Result<GridFunction> {
    let xs = grid.points();
    let origin = grid.origin_index();
    let (right, left) = branch_arguments(&xs, origin, config);
    let plus = pcf_scaled_grid(sol.nu_plus, &right);
    let minus = pcf_scaled_grid(sol.nu_minus, &left);
    let mut values = Vec::with_capacity(xs.len());
    values.extend(minus.values.iter().rev().map(|v| sol.glue_minus * v));
    values.extend(plus.values.iter().map(|v| sol.glue_plus * v));
    normalized(*grid, xs, values)
}

fn normalized(grid: Grid, xs: Vec<f64>, values: Vec<f64>) -> Result<GridFunction> {
    let mut f = GridFunction { grid, xs, values };
    let n = f.norm_sq().sqrt();
    if !(n > 1e-12) || !n.is_finite() {
        return Err(Error::Degenerate(n));
    }
    f.values.iter_mut().for_each(|v| *v /= n);
    Ok(f)
}

/// Eigenfunctions of the first `upto` levels, in parallel.
pub fn assemble_all(spectrum: &Spectrum, grid: &Grid, upto: usize) -> Result<Vec<GridFunction>> {
    if upto > spectrum.levels.len() {
        return Err(Error::InsufficientSpectrum {
            have: spectrum.levels.len(),
            need: upto,
        });
    }
    spectrum.levels[..upto]
        .par_iter()
        .map(|sol| assemble_eigenfunction(sol, &spectrum.config, grid))
        .collect()
}

/// Glue amplitudes `(A₊, A₋)` of the Hermite-function branches for sub-ladder
/// level `k`, normalized so that the glued function has unit norm.
pub fn subspace_amplitudes(rule: &SubspaceRule, k: u64) -> (f64, f64, Gluing) {
    let config = rule.config();
    let (vp, dp) = hermite_function_origin(rule.n_plus(k) as usize);
    let (vm, dm) = hermite_function_origin(rule.n_minus(k) as usize);
    let (mut a, gluing) = if rule.n_plus(k).is_multiple_of(2) {
        ((vm, vp), Gluing::Value)
    } else {
        ((-config.omega_minus.sqrt() * dm, config.omega_plus.sqrt() * dp), Gluing::Derivative)
    };
    if a.0 < 0.0 {
        a = (-a.0, -a.1);
    }
    // ∫₀^∞ h_n(√ω x)² dx = 1/(2√ω)
    let norm = (a.0 * a.0 / (2.0 * config.omega_plus.sqrt()) + a.1 * a.1 / (2.0 * config.omega_minus.sqrt())).sqrt();
    (a.0 / norm, a.1 / norm, gluing)
}

/// Glued Hermite eigenfunctions of the sub-ladder levels `k = 0..=k_max`.
pub fn assemble_subspace(rule: &SubspaceRule, k_max: u64, grid: &Grid) -> Result<Vec<GridFunction>> {
    if !rule.valid {
        return Err(Error::InvalidRule {
            p: rule.p,
            q: rule.q,
            reason: "p and q differ mod 4".into(),
        });
    }
    let config = rule.config();
    let xs = grid.points();
    let origin = grid.origin_index();
    let amps: Vec<(f64, f64, Gluing)> = (0..=k_max).map(|k| subspace_amplitudes(rule, k)).collect();
    let top_plus = rule.n_plus(k_max) as usize;
    let top_minus = rule.n_minus(k_max) as usize;
    let kp = config.omega_plus.sqrt();
    let km = config.omega_minus.sqrt();
    // columns[i][k]: level k at grid point i
    let columns: Vec<Vec<f64>> = xs
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            if i >= origin {
                let h = hermite_functions(top_plus, kp * x);
                (0..=k_max).map(|k| amps[k as usize].0 * h[rule.n_plus(k) as usize]).collect()
            } else {
                let h = hermite_functions(top_minus, -km * x);
                (0..=k_max).map(|k| amps[k as usize].1 * h[rule.n_minus(k) as usize]).collect()
            }
        })
        .collect();
    (0..=k_max as usize)
        .map(|k| normalized(*grid, xs.clone(), columns.iter().map(|c| c[k]).collect()))
        .collect()
}

/// Jumps of the value and of the derivative at `x = 0`, from the analytic
/// one-sided limits of both branches, relative to the sup-norm of `f`.
pub fn check_continuity(f: &GridFunction, sol: &EigenSolution, config: &OscillatorConfig) -> (f64, f64) {
    let op = OriginData::new(sol.nu_plus);
    let om = OriginData::new(sol.nu_minus);
    let right = (sol.glue_plus * op.value, sol.glue_plus * (2.0 * config.omega_plus).sqrt() * op.derivative);
    let left = (sol.glue_minus * om.value, -sol.glue_minus * (2.0 * config.omega_minus).sqrt() * om.derivative);
    // f may differ from the analytic normalization by its quadrature factor
    let scale = f.sup_norm();
    ((right.0 - left.0).abs() / scale, (right.1 - left.1).abs() / scale)
}

/// `G_mn = ∫ ψ_m ψ_n dx` for the first `upto` levels.
pub fn orthonormality_gram(spectrum: &Spectrum, grid: &Grid, upto: usize) -> Result<Vec<Vec<f64>>> {
    let fs = assemble_all(spectrum, grid, upto)?;
    Ok(gram(&fs))
}

pub fn gram(fs: &[GridFunction]) -> Vec<Vec<f64>> {
    fs.iter().map(|a| fs.iter().map(|b| inner(a, b)).collect()).collect()
}

/// Largest `|G − I|` entry.
pub fn gram_defect(g: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// Half-width that covers the classically allowed region of level `nu_plus`
/// on both sides plus a decay margin, never less than the default 12.
pub fn grid_half_width_for(config: &OscillatorConfig, nu_plus_max: f64) -> f64 {
    let e = config.energy(nu_plus_max.max(0.0));
    // turning point on the soft side: ω₋ x²/2 = E
    let turning = (2.0 * e / config.omega_minus).sqrt();
    (turning + 8.0).max(12.0)
}
