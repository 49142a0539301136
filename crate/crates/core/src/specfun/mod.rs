//! Real-argument special functions.

pub mod gamma;
pub mod hermite;
pub mod pcf;

pub use gamma::{digamma, gamma_real, ln_gamma, recip_gamma};
pub use hermite::{hermite_function_origin, hermite_functions, hermite_h};
pub use pcf::{half_line_norm_sq_scaled, pcf_at_zero, pcf_eval, pcf_scaled_grid, OriginData, PcfEval, ScaledPcf};
