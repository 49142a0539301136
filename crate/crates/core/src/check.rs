//! The invariant suite behind `asymho check`, reported as JSON.

use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::{
    build_coherent, coherence_fidelity, evolve, identity_resolution_check, overlap, overlap_closed_form, BasisSource,
    PolarQuadrature,
};
use crate::fock::{coherent_coefficients, displace, ladder_lower, poisson_tail, Basis};
use crate::specfun::{hermite_h, pcf_eval};
use crate::spectrum::{find_eigenvalues, locate_subspace_in_spectrum, subspace_rule, OscillatorConfig};
use crate::wavefun::{assemble_all, check_continuity, gram, gram_defect, Grid};
use crate::{table1, Result};

/// Floating-point allowance added to bounds that are exactly zero in exact
/// arithmetic.
pub const ROUNDING_ALLOWANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Specfun,
    Table1,
    Symmetric,
    Glued,
    Properties,
    IdentityResolution,
    Subspace,
    Eigenfunctions,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Specfun,
        Group::Table1,
        Group::Symmetric,
        Group::Glued,
        Group::Properties,
        Group::IdentityResolution,
        Group::Subspace,
        Group::Eigenfunctions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Specfun => "specfun",
            Group::Table1 => "table1",
            Group::Symmetric => "symmetric",
            Group::Glued => "glued",
            Group::Properties => "properties",
            Group::IdentityResolution => "identity-resolution",
            Group::Subspace => "subspace",
            Group::Eigenfunctions => "eigenfunctions",
        }
    }
}

impl FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown check group '{s}'"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub group: Group,
    pub name: String,
    pub passed: bool,
    /// The measured quantity (an error, a difference or a fidelity).
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub first_failure: Option<String>,
    pub items: Vec<CheckItem>,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub only: Option<Group>,
    pub n_check: usize,
    pub radius: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            only: None,
            n_check: 8,
            radius: 8.0,
        }
    }
}

fn item(group: Group, name: impl Into<String>, value: f64, tolerance: f64, detail: impl Into<String>) -> CheckItem {
    CheckItem {
        group,
        name: name.into(),
        passed: value <= tolerance,
        value,
        tolerance,
        detail: detail.into(),
    }
}

fn failed(group: Group, name: impl Into<String>, err: crate::Error) -> CheckItem {
    CheckItem {
        group,
        name: name.into(),
        passed: false,
        value: f64::NAN,
        tolerance: 0.0,
        detail: err.to_string(),
    }
}

pub fn run_checks(opts: &CheckOptions) -> CheckReport {
    let mut items = Vec::new();
    for g in Group::ALL {
        if opts.only.is_some_and(|o| o != g) {
            continue;
        }
        let result = match g {
            Group::Specfun => Ok(specfun_items()),
            Group::Table1 => Ok(table1_items()),
            Group::Symmetric => symmetric_items(),
            Group::Glued => glued_items(),
            Group::Properties => property_items(),
            Group::IdentityResolution => Ok(vec![identity_item(opts.n_check, opts.radius)]),
            Group::Subspace => subspace_items(),
            Group::Eigenfunctions => eigenfunction_items(),
        };
        match result {
            Ok(v) => items.extend(v),
            Err(e) => items.push(failed(g, g.name(), e)),
        }
    }
    let first_failure = items.iter().find(|i| !i.passed).map(|i| i.name.clone());
    CheckReport {
        passed: first_failure.is_none(),
        first_failure,
        items,
    }
}

/// Largest errors of the special-function oracle identities, with their
/// tolerances.
pub fn specfun_oracle_errors() -> Vec<(&'static str, f64, f64)> {
    let grid = |lo: f64, hi: f64, step: f64| -> Vec<f64> {
        let n = ((hi - lo) / step).round() as usize;
        (0..=n).map(|i| lo + step * i as f64).collect()
    };
    let mut hermite = 0.0f64;
    for n in 0..=12u32 {
        for x in grid(-6.0, 6.0, 0.25) {
            let got = pcf_eval(f64::from(n), x).map_or(f64::INFINITY, |e| e.value);
            let want = 2f64.powf(-0.5 * f64::from(n))
                * (-0.25 * x * x).exp()
                * hermite_h(n, x / 2f64.sqrt()).unwrap_or(f64::NAN);
            hermite = hermite.max((got - want).abs() / want.abs().max(1.0));
        }
    }
    let (mut recurrence, mut derivative) = (0.0f64, 0.0f64);
    for nu in [0.3, 1.7, 4.2] {
        for x in grid(-5.0, 5.0, 0.25) {
            let (Ok(up), Ok(mid), Ok(down)) = (pcf_eval(nu + 1.0, x), pcf_eval(nu, x), pcf_eval(nu - 1.0, x)) else {
                return vec![("pcf evaluation", f64::INFINITY, 0.0)];
            };
            let scale = up.value.abs().max((x * mid.value).abs()).max((nu * down.value).abs());
            recurrence = recurrence.max((up.value - x * mid.value + nu * down.value).abs() / scale);
            let scale = mid.derivative.abs().max((0.5 * x * mid.value).abs()).max((nu * down.value).abs());
            derivative = derivative.max((mid.derivative + 0.5 * x * mid.value - nu * down.value).abs() / scale);
        }
    }
    vec![
        ("hermite reduction", hermite, 1e-10),
        ("three-term recurrence", recurrence, 1e-8),
        ("derivative identity", derivative, 1e-8),
    ]
}

fn specfun_items() -> Vec<CheckItem> {
    specfun_oracle_errors()
        .into_iter()
        .map(|(name, err, tol)| item(Group::Specfun, name, err, tol, "max relative error"))
        .collect()
}

fn table1_items() -> Vec<CheckItem> {
    table1::rows()
        .iter()
        .map(|row| match table1::compare_row(row) {
            Ok(c) => item(
                Group::Table1,
                format!("table1 s={}", row.label),
                c.max_abs_diff,
                table1::TOLERANCE,
                format!("computed {:?}", c.computed.iter().map(|v| (v * 1e5).round() / 1e5).collect::<Vec<_>>()),
            ),
            Err(e) => failed(Group::Table1, format!("table1 s={}", row.label), e),
        })
        .collect()
}

fn symmetric_items() -> Result<Vec<CheckItem>> {
    let sp = find_eigenvalues(&OscillatorConfig::new(1.0)?, 11)?;
    let err = sp.levels.iter().map(|l| (l.nu_plus - l.index as f64).abs()).fold(0.0, f64::max);
    Ok(vec![item(Group::Symmetric, "s=1 levels are integers", err, 1e-8, "max |nu_n - n|, n <= 10")])
}

fn glued_items() -> Result<Vec<CheckItem>> {
    let rule = subspace_rule(5, 1)?;
    let sp = find_eigenvalues(&rule.config(), 8)?;
    let pos = locate_subspace_in_spectrum(&rule, &sp)?;
    let ok5 = pos == [1, 4, 7];
    let sp3 = find_eigenvalues(&OscillatorConfig::new(3.0)?, 8)?;
    let closest = sp3.levels.iter().map(|l| (l.nu_plus - l.nu_plus.round()).abs()).fold(f64::INFINITY, f64::min);
    Ok(vec![
        CheckItem {
            group: Group::Glued,
            name: "s=5 integer levels at positions 1,4,7".into(),
            passed: ok5,
            value: if ok5 { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: format!("positions {pos:?}"),
        },
        CheckItem {
            group: Group::Glued,
            name: "s=3 has no integer level".into(),
            passed: closest > 1e-6,
            value: closest,
            tolerance: 1e-6,
            detail: "smallest distance of the first 8 levels to an integer (must exceed the tolerance)".into(),
        },
    ])
}

fn property_items() -> Result<Vec<CheckItem>> {
    const N: usize = 64;
    let basis = Basis::Full { s: 5f64.sqrt() };
    let alphas = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.5),
        Complex64::new(-2.0, 1.5),
        Complex64::new(3.0, 0.0),
        Complex64::new(0.0, -4.0),
        Complex64::new(2.5, 2.5),
    ];
    // annihilation: residual relative to its tail bound
    let mut eig = 0.0f64;
    let mut disp = 0.0f64;
    for a in alphas {
        let v = coherent_coefficients(a, N, basis);
        let tail = poisson_tail(N, a.norm_sqr());
        let r = ladder_lower(&v).distance(&v.scaled(a));
        let bound = 2.0 * tail.sqrt() * (a.norm() + (N as f64).sqrt());
        eig = eig.max(r - bound);
        if a.norm() <= 3.0 {
            disp = disp.max(displace(a, N, basis).vector.distance(&v));
        }
    }
    let sp = find_eigenvalues(&OscillatorConfig::new(5f64.sqrt())?, N)?;
    let mut ov = 0.0f64;
    for (a, b) in [
        (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)),
        (Complex64::new(2.0, 0.0), Complex64::new(0.0, 2.0)),
        (Complex64::new(-3.0, 0.0), Complex64::new(1.0, -2.0)),
    ] {
        let sa = build_coherent(a, BasisSource::Full(&sp), N)?;
        let sb = build_coherent(b, BasisSource::Full(&sp), N)?;
        ov = ov.max((overlap(&sa, &sb)? - overlap_closed_form(a, b)).norm());
    }
    Ok(vec![
        item(
            Group::Properties,
            "annihilation eigenvector",
            eig,
            ROUNDING_ALLOWANCE,
            "max(residual - 2 sqrt(tail) (|a| + sqrt N)), |a| <= 4, N = 64; tolerance is a rounding allowance",
        ),
        item(Group::Properties, "overlap closed form", ov, 1e-8, "max |<a|b> - closed form|"),
        item(Group::Properties, "displacement vs series", disp, 1e-8, "max distance, |a| <= 3, N = 64"),
    ])
}

fn identity_item(n_check: usize, radius: f64) -> CheckItem {
    let name = format!("identity resolution N={n_check} R={radius}");
    match identity_resolution_check(n_check, radius, PolarQuadrature::for_check(n_check)) {
        Ok(m) => {
            let mut diag = 0.0f64;
            let mut off = 0.0f64;
            for (n, row) in m.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if n == k {
                        diag = diag.max((v.re - poisson_tail(n + 1, radius * radius)).abs());
                    } else {
                        off = off.max(v.norm());
                    }
                }
            }
            let passed = diag <= 1e-6 && off <= 1e-12;
            CheckItem {
                group: Group::IdentityResolution,
                name,
                passed,
                value: diag,
                tolerance: 1e-6,
                detail: format!("diagonal error {diag:e} (<= 1e-6), off-diagonal max {off:e} (<= 1e-12)"),
            }
        }
        Err(e) => failed(Group::IdentityResolution, name, e),
    }
}

fn subspace_items() -> Result<Vec<CheckItem>> {
    let mut out = Vec::new();
    for (p, q) in [(5u64, 1u64), (7, 3)] {
        let rule = subspace_rule(p, q)?;
        let state = build_coherent(Complex64::new(2.0, 0.0), BasisSource::Subspace { rule, spectrum: None }, 64)?;
        let quantum = rule.quantum();
        let t_max = 10.0 * std::f64::consts::TAU / quantum;
        let (mut fid, mut phase) = (0.0f64, 0.0f64);
        for j in 0..256 {
            let t = t_max * j as f64 / 255.0;
            fid = fid.max((coherence_fidelity(&state, t) - 1.0).abs());
            let want = coherent_coefficients(state.alpha * Complex64::from_polar(1.0, -quantum * t), 64, state.basis())
                .scaled(Complex64::from_polar(1.0, -0.5 * quantum * t));
            phase = phase.max(evolve(&state, t).distance(&want));
        }
        out.push(item(Group::Subspace, format!("subspace ({p},{q}) fidelity"), fid, 1e-8, "max |F - 1|, 10 periods"));
        out.push(item(
            Group::Subspace,
            format!("subspace ({p},{q}) phase law"),
            phase,
            1e-10,
            "max distance to exp(-i q w t/2) |a0 exp(-i q w t)>",
        ));
    }
    Ok(out)
}

fn eigenfunction_items() -> Result<Vec<CheckItem>> {
    let grid = Grid::default();
    let mut out = Vec::new();
    for row in table1::rows() {
        let c = OscillatorConfig::new(row.s)?;
        let sp = find_eigenvalues(&c, 8)?;
        let fs = assemble_all(&sp, &grid, 8)?;
        let mut jump = 0.0f64;
        let mut nodes_ok = true;
        for (n, (f, sol)) in fs.iter().zip(&sp.levels).enumerate() {
            let (v, d) = check_continuity(f, sol, &c);
            jump = jump.max(v).max(d);
            nodes_ok &= f.sign_changes() == n;
        }
        out.push(item(Group::Eigenfunctions, format!("continuity s={}", row.label), jump, 1e-7, "max jump / sup norm"));
        out.push(item(Group::Eigenfunctions, format!("gram s={}", row.label), gram_defect(&gram(&fs)), 1e-3, "max |G - I|"));
        out.push(CheckItem {
            group: Group::Eigenfunctions,
            name: format!("node counts s={}", row.label),
            passed: nodes_ok,
            value: if nodes_ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: "sign changes equal level index".into(),
        });
    }
    Ok(out)
}
