//! On-disk spectrum cache, keyed by the exact bits of `s`, the level count
//! and the root tolerance.

use std::path::PathBuf;

use crate::spectrum::{find_eigenvalues, OscillatorConfig, Spectrum, ROOT_TOLERANCE};
use crate::Result;

/// `$ASYMHO_CACHE_DIR`, else `$XDG_CACHE_HOME/asymho`, else
/// `$HOME/.cache/asymho`, else a directory under the system temp dir.
pub fn cache_dir() -> PathBuf {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    if let Some(d) = env("ASYMHO_CACHE_DIR") {
        return d;
    }
    if let Some(d) = env("XDG_CACHE_HOME") {
        return d.join("asymho");
    }
    if let Some(h) = env("HOME") {
        return h.join(".cache").join("asymho");
    }
    std::env::temp_dir().join("asymho-cache")
}

fn cache_file(config: &OscillatorConfig, count: usize) -> PathBuf {
    cache_dir().join(format!(
        "spectrum-s{:016x}-n{count}-tol{:016x}.json",
        config.s.to_bits(),
        ROOT_TOLERANCE.to_bits()
    ))
}

/// Read the spectrum from the cache when an exact match exists; otherwise
/// solve and store it. Cache I/O problems only produce a warning.
pub fn load_or_compute_spectrum(config: &OscillatorConfig, count: usize) -> Result<Spectrum> {
    let path = cache_file(config, count);
    if let Ok(text) = std::fs::read_to_string(&path) {
        match Spectrum::from_json(&text) {
            Ok(sp)
                if sp.config == *config && sp.levels.len() == count && sp.scan.tolerance == ROOT_TOLERANCE =>
            {
                return Ok(sp)
            }
            _ => eprintln!("warning: ignoring stale cache entry {}", path.display()),
        }
    }
    let sp = find_eigenvalues(config, count)?;
    if let Err(e) = sp.to_json().and_then(|t| super::write_atomic(&path, &t)) {
        eprintln!("warning: could not write spectrum cache {}: {e}", path.display());
    }
    Ok(sp)
}
