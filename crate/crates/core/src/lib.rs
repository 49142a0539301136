//! Spectrum, eigenfunctions and coherent states of the asymmetric quantum
//! harmonic oscillator: a particle bound by frequency `ω₊` on `x ≥ 0` and
//! `ω₋` on `x < 0`.
//!
//! Natural units `ħ = m = ω₋ = 1` are used throughout, so the asymmetry
//! parameter `s = ω₊/ω₋` is also the right-hand frequency.
//!
//! Module map:
//!
//! * [`specfun`]: Gamma, digamma, parabolic cylinder functions `D_ν(x)` and
//!   Hermite polynomials/functions.
//! * [`spectrum`]: the transcendental matching condition, its roots, and the
//!   rational-`s` subspace rules.
//! * [`wavefun`]: position-space eigenfunctions on uniform grids.
//! * [`fock`]: truncated ladder-operator algebra.
//! * [`coherent`]: coherent states, their time evolution and diagnostics.
//! * [`cli`]: the `asymho` command-line front-end.

pub mod check;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod fock;
pub mod optimize;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;
pub mod table1;
pub mod wavefun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
