//! CSV formatting and atomic file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::spectrum::Spectrum;
use crate::wavefun::ComplexGridFunction;

/// Write `text` to a temporary sibling and rename it over `path`.
pub fn write_atomic(path: &Path, text: &str) -> crate::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn spectrum_csv(sp: &Spectrum, members: Option<&[Option<usize>]>) -> String {
    let mut out = String::from("n,nu_plus,nu_minus,energy");
    if members.is_some() {
        out.push_str(",subspace_k");
    }
    out.push('\n');
    for (i, l) in sp.levels.iter().enumerate() {
        out.push_str(&format!("{},{:.16e},{:.16e},{:.16e}", l.index, l.nu_plus, l.nu_minus, l.energy));
        if let Some(m) = members {
            out.push(',');
            if let Some(k) = m[i] {
                out.push_str(&k.to_string());
            }
        }
        out.push('\n');
    }
    out
}

pub fn two_column_csv(header: &str, a: &[f64], b: &[f64]) -> String {
    let mut out = format!("{header}\n");
    for (x, y) in a.iter().zip(b) {
        out.push_str(&format!("{x:.16e},{y:.16e}\n"));
    }
    out
}

pub fn append_frame(out: &mut String, t: f64, psi: &ComplexGridFunction) {
    for (x, v) in psi.xs.iter().zip(&psi.values) {
        out.push_str(&format!("{t:.16e},{x:.16e},{:.16e},{:.16e},{:.16e}\n", v.re, v.im, v.norm_sqr()));
    }
}
