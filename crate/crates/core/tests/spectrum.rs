use asymho::spectrum::{
    find_eigenvalues, locate_subspace_in_spectrum, matching_residual, scaled_residual, subspace_rule,
    Gluing, OscillatorConfig, Spectrum,
};

fn cfg(s: f64) -> OscillatorConfig {
    OscillatorConfig::new(s).unwrap()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= tol, "level {i}: {g} vs {w}");
    }
}

// roots of the matching condition at 30 digits (mpmath)
const SQRT5: [f64; 12] = [
    -0.183585324505766, 0.423417527541702, 1.04531897929585, 1.66392693410835, 2.28069985033807,
    2.89906187370104, 3.51751255266464, 4.13516353276544, 4.75316738455838, 5.37145134572139,
    5.98936072060053, 6.60730031374354,
];
const S3: [f64; 12] = [
    -0.239184330041478, 0.246661501205953, 0.748478446367899, 1.2508631807462, 1.75055425802584,
    2.24961697374874, 2.74972087633435, 3.25021242617791, 3.75016711759892, 4.24986531563712,
    4.74988928648066, 5.2500926455635,
];
const S7_3: [f64; 12] = [
    -0.192069296179913, 0.396307922848538, 1.0, 1.60092217199666, 2.19963884062736, 2.79975246728065,
    3.40029135942523, 4.0, 4.59982657392854, 5.20008622636032, 5.80007088511595, 6.39990411742736,
];
const S1_4: [f64; 12] = [
    -0.0815357594827965, 0.748707357973222, 1.58409941307904, 2.41624678628844, 3.25019221548278,
    4.08328533884157, 4.9166319243541, 5.75007181856353, 6.58325657560796, 7.41672833008453,
    8.24996294994194, 9.08334466019728,
];

#[test]
fn roots_match_high_precision_oracle() {
    for (s, want) in [(5f64.sqrt(), SQRT5), (3.0, S3), (7.0 / 3.0, S7_3), (1.4, S1_4)] {
        let sp = find_eigenvalues(&cfg(s), 12).unwrap();
        assert_close(&sp.nu_values(), &want, 1e-9);
    }
}

#[test]
fn symmetric_case_gives_integers() {
    let sp = find_eigenvalues(&cfg(1.0), 11).unwrap();
    let want: Vec<f64> = (0..11).map(f64::from).collect();
    assert_close(&sp.nu_values(), &want, 1e-8);
}

#[test]
fn level_invariants() {
    for s in [1.4, 5f64.sqrt(), 4.0, 5.0, 30f64.sqrt(), 26f64.sqrt()] {
        let c = cfg(s);
        let sp = find_eigenvalues(&c, 10).unwrap();
        let nu = sp.nu_values();
        assert!(nu[0] > -0.5 && nu[0] <= 0.0);
        for w in nu.windows(2) {
            let gap = w[1] - w[0];
            assert!(gap < 1.0 + 0.5 * (s - 1.0) && gap > 1.0 / (1.0 + s), "s = {s}: gap {gap}");
        }
        for (i, l) in sp.levels.iter().enumerate() {
            assert_eq!(l.index, i);
            assert!((l.nu_minus - (s * l.nu_plus + 0.5 * (s - 1.0))).abs() <= 1e-12 * l.nu_minus.abs().max(1.0));
            assert_eq!(l.energy, l.nu_plus + 0.5);
            assert!(scaled_residual(l.nu_plus, &c).abs() <= 1e-8);
            assert!(l.norm > 0.0 && l.glue_plus > 0.0);
        }
    }
}

#[test]
fn residual_examples() {
    // the published row labelled √5 (ν₀ = −0.2565) is the spectrum of s = √11
    let c = cfg(11f64.sqrt());
    let g = |nu: f64| scaled_residual(nu, &c);
    assert!(g(-0.2565 - 0.01).signum() != g(-0.2565 + 0.01).signum());
    let sp = find_eigenvalues(&c, 3).unwrap();
    let e = sp.nu_values();
    assert!(((e[1] - e[0]) - 0.4485).abs() < 1e-3);
    assert!(((e[2] - e[1]) - 0.4642).abs() < 1e-3);
    assert!(matching_residual(0.0, &cfg(5.0)) == 0.0 && matching_residual(1.0, &cfg(5.0)) == 0.0);
}

#[test]
fn glued_levels_use_the_right_gluing() {
    let sp = find_eigenvalues(&cfg(5.0), 9).unwrap();
    for (n, nu, gluing) in [(1, 0.0, Gluing::Value), (4, 1.0, Gluing::Derivative), (7, 2.0, Gluing::Value)] {
        assert_eq!(sp.levels[n].nu_plus, nu);
        assert_eq!(sp.levels[n].gluing, gluing);
    }
}

#[test]
fn subspace_positions() {
    let r = subspace_rule(5, 1).unwrap();
    let sp = find_eigenvalues(&r.config(), 9).unwrap();
    assert_eq!(locate_subspace_in_spectrum(&r, &sp).unwrap(), vec![1, 4, 7]);

    let r = subspace_rule(1, 1).unwrap();
    let sp = find_eigenvalues(&r.config(), 6).unwrap();
    assert_eq!(locate_subspace_in_spectrum(&r, &sp).unwrap(), vec![0, 1, 2, 3, 4, 5]);

    let r = subspace_rule(7, 3).unwrap();
    let sp = find_eigenvalues(&r.config(), 12).unwrap();
    assert_eq!(locate_subspace_in_spectrum(&r, &sp).unwrap(), vec![2, 7]);

    for (p, q) in [(5, 1), (7, 3), (9, 1)] {
        let r = subspace_rule(p, q).unwrap();
        let need = r.n_plus(5) as f64;
        let mut count = 8;
        let sp = loop {
            let sp = find_eigenvalues(&r.config(), count).unwrap();
            if sp.levels.last().unwrap().nu_plus >= need {
                break sp;
            }
            count *= 2;
        };
        assert!(locate_subspace_in_spectrum(&r, &sp).unwrap().len() >= 6);
    }
}

#[test]
fn invalid_pair_has_no_integer_levels() {
    assert!(!subspace_rule(3, 1).unwrap().valid);
    let sp = find_eigenvalues(&cfg(3.0), 8).unwrap();
    for nu in sp.nu_values() {
        assert!((nu - nu.round()).abs() > 1e-6, "{nu}");
    }
}

#[test]
fn json_round_trip_is_exact() {
    let sp = find_eigenvalues(&cfg(26f64.sqrt()), 20).unwrap();
    let back = Spectrum::from_json(&sp.to_json().unwrap()).unwrap();
    assert_eq!(sp, back);
}

#[test]
fn large_spectrum() {
    let sp = find_eigenvalues(&cfg(26f64.sqrt()), 300).unwrap();
    assert_eq!(sp.levels.len(), 300);
    assert!(sp.levels.iter().all(|l| l.norm.is_finite() && l.glue_plus.is_finite() && l.glue_minus.is_finite()));
}
