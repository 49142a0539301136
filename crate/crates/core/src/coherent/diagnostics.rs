//! Measured properties: non-Gaussianity of the density and the frequency
//! content of `⟨x⟩(t)`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{evolve, CoherentState};
use crate::optimize::nelder_mead;
use crate::quadrature::trapezoid;
use crate::wavefun::{ComplexGridFunction, GridFunction};

/// Relative L² distance between `|ψ|²` and the best-fitting Gaussian density.
pub fn gaussianity_diagnostic(psi: &ComplexGridFunction) -> f64 {
    let rho = psi.density();
    let dx = psi.grid.dx;
    let xs = &psi.xs;
    let mass = trapezoid(&rho, dx);
    let moment = |k: i32| trapezoid(&rho.iter().zip(xs).map(|(r, x)| r * x.powi(k)).collect::<Vec<_>>(), dx) / mass;
    let mu0 = moment(1);
    let sigma0 = (moment(2) - mu0 * mu0).max(1e-12).sqrt();
    let rho_sq = trapezoid(&rho.iter().map(|r| r * r).collect::<Vec<_>>(), dx);
    let misfit = |p: &[f64]| -> f64 {
        let (mu, sigma) = (p[0], p[1].exp());
        let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
        let diff: Vec<f64> = rho
            .iter()
            .zip(xs)
            .map(|(r, x)| {
                let z = (x - mu) / sigma;
                let d = r - norm * (-0.5 * z * z).exp();
                d * d
            })
            .collect();
        trapezoid(&diff, dx) / rho_sq
    };
    let m = nelder_mead(misfit, &[mu0, sigma0.ln()], 0.05, 1e-30, 3000);
    let m = nelder_mead(misfit, &m.point, 1e-4, 1e-30, 3000);
    m.value.max(0.0).sqrt()
}

/// `X_mn = ∫ x ψ_m ψ_n dx`.
pub fn position_matrix(fs: &[GridFunction]) -> Vec<Vec<f64>> {
    fs.iter()
        .map(|a| {
            fs.iter()
                .map(|b| {
                    let v: Vec<f64> = a.values.iter().zip(&b.values).zip(&a.xs).map(|((p, q), x)| p * q * x).collect();
                    trapezoid(&v, a.grid.dx)
                })
                .collect()
        })
        .collect()
}

/// `⟨x⟩(t_j)` at `t_j = j·dt`, `j < samples`, using the first `X.len()` levels.
pub fn position_trace(state: &CoherentState, x: &[Vec<f64>], dt: f64, samples: usize) -> Vec<f64> {
    let m = x.len();
    (0..samples)
        .map(|j| {
            let v = evolve(state, j as f64 * dt);
            let c = &v.coeffs[..m];
            let mut acc = 0.0;
            for a in 0..m {
                let mut row = Complex64::new(0.0, 0.0);
                for b in 0..m {
                    row += c[b] * x[a][b];
                }
                acc += (c[a].conj() * row).re;
            }
            acc
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    /// Angular frequency.
    pub omega: f64,
    pub amplitude: f64,
}

/// Local maxima of the Hann-windowed amplitude spectrum of a sampled signal
/// that exceed `relative` times the largest one, strongest first.
///
/// The weighted mean is removed so the windowed signal has no DC part, and
/// the record is zero-padded fourfold to resolve peaks of short records.
pub fn spectral_peaks(signal: &[f64], dt: f64, relative: f64) -> Vec<SpectralPeak> {
    let n = signal.len();
    if n < 4 {
        return Vec::new();
    }
    let window: Vec<f64> = (0..n)
        .map(|j| 0.5 - 0.5 * (std::f64::consts::TAU * j as f64 / (n - 1) as f64).cos())
        .collect();
    let mean = signal.iter().zip(&window).map(|(v, w)| v * w).sum::<f64>() / window.iter().sum::<f64>();
    let padded = (4 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); padded];
    for (j, (v, w)) in signal.iter().zip(&window).enumerate() {
        buf[j] = Complex64::new((v - mean) * w, 0.0);
    }
    FftPlanner::new().plan_fft_forward(padded).process(&mut buf);
    let amp: Vec<f64> = buf[..padded / 2 + 1].iter().map(|c| c.norm()).collect();
    let top = amp.iter().cloned().fold(0.0, f64::max);
    if !(top > 1e-300) {
        return Vec::new();
    }
    let mut peaks: Vec<SpectralPeak> = (1..amp.len() - 1)
        .filter(|&k| amp[k] > amp[k - 1] && amp[k] >= amp[k + 1] && amp[k] >= relative * top)
        .map(|k| SpectralPeak {
            omega: std::f64::consts::TAU * k as f64 / (padded as f64 * dt),
            amplitude: amp[k],
        })
        .collect();
    peaks.sort_by(|a, b| b.amplitude.total_cmp(&a.amplitude));
    peaks
}

fn left_mass(values: impl Iterator<Item = f64>, origin: usize, dx: f64) -> f64 {
    // trapezoid over [−L, 0]
    let v: Vec<f64> = values.take(origin + 1).collect();
    trapezoid(&v, dx)
}

/// `∫_{x<0} |ψ|² dx`.
pub fn left_probability(psi: &ComplexGridFunction) -> f64 {
    left_mass(psi.values.iter().map(|v| v.norm_sqr()), psi.grid.origin_index(), psi.grid.dx)
}

/// Long-time average of `∫_{x<0} |ψ(x,t)|² dx` for a non-degenerate
/// spectrum: `Σ |c_n|² ∫_{x<0} ψ_n² dx`. Unlike a single snapshot it does
/// not depend on `arg α` or on the sign convention of the eigenfunctions.
pub fn dephased_left_probability(v: &crate::fock::FockVector, fs: &[GridFunction]) -> f64 {
    v.coeffs
        .iter()
        .zip(fs)
        .map(|(c, f)| c.norm_sqr() * left_mass(f.values.iter().map(|x| x * x), f.grid.origin_index(), f.grid.dx))
        .sum()
}
