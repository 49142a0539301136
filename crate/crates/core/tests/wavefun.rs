use asymho::spectrum::{eigen_solution, find_eigenvalues, subspace_rule, Gluing, OscillatorConfig};
use asymho::wavefun::{
    assemble_all, assemble_eigenfunction, assemble_subspace, check_continuity, gram_defect, inner,
    orthonormality_gram, Grid,
};
use std::f64::consts::PI;

fn cfg(s: f64) -> OscillatorConfig {
    OscillatorConfig::new(s).unwrap()
}

#[test]
fn symmetric_ground_state_is_gaussian() {
    let c = cfg(1.0);
    let sp = find_eigenvalues(&c, 2).unwrap();
    let grid = Grid::default();
    let f = assemble_eigenfunction(&sp.levels[0], &c, &grid).unwrap();
    for (x, v) in f.xs.iter().zip(&f.values).step_by(97) {
        let want = (-0.5 * x * x).exp() / PI.powf(0.25);
        assert!((v - want).abs() < 1e-9, "x = {x}: {v} vs {want}");
    }
    let odd = assemble_eigenfunction(&sp.levels[1], &c, &grid).unwrap();
    let (vj, dj) = check_continuity(&odd, &sp.levels[1], &c);
    assert_eq!(vj, 0.0);
    assert!(dj < 1e-7);
}

#[test]
fn glued_hermite_level_of_s5() {
    let c = cfg(5.0);
    let sp = find_eigenvalues(&c, 2).unwrap();
    let grid = Grid::default();
    let f = assemble_eigenfunction(&sp.levels[1], &c, &grid).unwrap();
    // right: ∝ exp(−5x²/2); left: ∝ exp(−x²/2) H₂(x)
    let i0 = grid.origin_index();
    let a = f.values[i0];
    for i in (i0..f.xs.len()).step_by(50).take(40) {
        let x = f.xs[i];
        assert!((f.values[i] - a * (-2.5 * x * x).exp()).abs() < 1e-9 * a.abs().max(1.0));
    }
    let h2 = |x: f64| 4.0 * x * x - 2.0;
    let b = a / h2(0.0);
    for i in (0..i0).step_by(50) {
        let x = f.xs[i];
        assert!((f.values[i] - b * h2(x) * (-0.5 * x * x).exp()).abs() < 1e-9);
    }
}

#[test]
fn ground_state_of_sqrt5_is_nodeless() {
    let c = cfg(5f64.sqrt());
    let sp = find_eigenvalues(&c, 1).unwrap();
    let f = assemble_eigenfunction(&sp.levels[0], &c, &Grid::default()).unwrap();
    assert_eq!(f.sign_changes(), 0);
    assert!(f.values.iter().all(|&v| v >= 0.0));
}

#[test]
fn continuity_and_nodes_for_table_rows() {
    let grid = Grid::default();
    for s in [1.4, 5f64.sqrt(), 4.0, 5.0, 30f64.sqrt()] {
        let c = cfg(s);
        let sp = find_eigenvalues(&c, 8).unwrap();
        let fs = assemble_all(&sp, &grid, 8).unwrap();
        for (n, (f, sol)) in fs.iter().zip(&sp.levels).enumerate() {
            let (vj, dj) = check_continuity(f, sol, &c);
            assert!(vj <= 1e-7 && dj <= 1e-7, "s = {s}, n = {n}: jumps {vj:e}, {dj:e}");
            assert_eq!(f.sign_changes(), n, "s = {s}, n = {n}");
            assert!((f.norm_sq() - 1.0).abs() < 1e-12);
            assert!(f.values[0].abs() < 1e-6 && f.values[f.values.len() - 1].abs() < 1e-6);
        }
        let g = asymho::wavefun::gram(&fs);
        assert!(gram_defect(&g) < 1e-3, "s = {s}: {}", gram_defect(&g));
    }
}

#[test]
fn perturbed_root_breaks_continuity() {
    let c = cfg(5f64.sqrt());
    let sp = find_eigenvalues(&c, 3).unwrap();
    for n in 0..3 {
        let off = eigen_solution(n, sp.levels[n].nu_plus + 1e-3, &c).unwrap();
        let f = assemble_eigenfunction(&off, &c, &Grid::default()).unwrap();
        let (vj, dj) = check_continuity(&f, &off, &c);
        // the gluing enforces one condition; the other one breaks
        let broken = match off.gluing {
            Gluing::Value => dj,
            Gluing::Derivative => vj,
        };
        assert!(broken > 1e-4, "n = {n}: {vj:e}, {dj:e}");
    }
    assert_eq!(sp.levels[0].gluing, Gluing::Value);
}

#[test]
fn gram_matrices() {
    let sp = find_eigenvalues(&cfg(1.0), 4).unwrap();
    assert!(gram_defect(&orthonormality_gram(&sp, &Grid::default(), 4).unwrap()) < 1e-6);
    let sp = find_eigenvalues(&cfg(5f64.sqrt()), 6).unwrap();
    let g = orthonormality_gram(&sp, &Grid::new(12.0, 1e-3).unwrap(), 6).unwrap();
    assert!(gram_defect(&g) < 1e-3);
    for (i, row) in g.iter().enumerate() {
        assert!((row[i] - 1.0).abs() < 1e-6);
    }
}

#[test]
fn subspace_functions_agree_with_full_basis() {
    let grid = Grid::default();
    for (p, q, positions) in [(5u64, 1u64, vec![1usize, 4, 7]), (7, 3, vec![2, 7])] {
        let rule = subspace_rule(p, q).unwrap();
        let c = rule.config();
        let sp = find_eigenvalues(&c, positions[positions.len() - 1] + 1).unwrap();
        let sub = assemble_subspace(&rule, positions.len() as u64 - 1, &grid).unwrap();
        for (k, &n) in positions.iter().enumerate() {
            let full = assemble_eigenfunction(&sp.levels[n], &c, &grid).unwrap();
            let ov = inner(&full, &sub[k]);
            assert!((ov - 1.0).abs() < 1e-9, "({p},{q}) k = {k}: overlap {ov}");
        }
    }
}

#[test]
fn csv_parses_back_exactly() {
    let c = cfg(5f64.sqrt());
    let sp = find_eigenvalues(&c, 2).unwrap();
    let f = assemble_eigenfunction(&sp.levels[1], &c, &Grid::new(3.0, 0.25).unwrap()).unwrap();
    let csv = f.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,psi"));
    for (line, (x, v)) in lines.zip(f.xs.iter().zip(&f.values)) {
        let mut parts = line.split(',').map(|t| t.parse::<f64>().unwrap());
        assert_eq!(parts.next(), Some(*x));
        assert_eq!(parts.next(), Some(*v));
    }
}
