use pentagramma::verify::{criterion, Criterion, VerifyOptions};

fn report(c: &Criterion) {
    let status = if c.passed() { "PASS" } else { "FAIL" };
    println!("criterion {:>2} {status}  {}", c.id, c.title);
    for check in &c.checks {
        let mark = if check.passed() { "ok  " } else { "FAIL" };
        let note = check
            .note
            .as_deref()
            .map(|n| format!("  ({n})"))
            .unwrap_or_default();
        println!(
            "    {mark} {:<44} {:>12.3e} <= {:.0e}{note}",
            check.name, check.value, check.tol
        );
    }
}

fn run(id: usize, opts: VerifyOptions) {
    let c = criterion(id, &opts).unwrap();
    report(&c);
    assert!(c.passed(), "criterion {id} failed");
}

#[test]
fn criterion_01_gauss_example() {
    run(1, VerifyOptions::default());
}

#[test]
fn criterion_02_spectral_roots() {
    run(2, VerifyOptions::default());
}

#[test]
fn criterion_02_roots_match_symmetric_eigenvalues() {
    use nalgebra::Matrix3;
    use pentagramma::pentagram::AlphaCycle;
    use pentagramma::spectrum::{solve_characteristic, ConeQuadric};

    let cycle = AlphaCycle::complete_from_two(9.0, 2.0).unwrap();
    let m = ConeQuadric::from_cycle(&cycle).unwrap().matrix();
    let a = Matrix3::from_fn(|i, j| m[i][j]);
    let mut eig: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    let roots = solve_characteristic(cycle.omega()).unwrap().roots();
    let diff = eig
        .iter()
        .zip(roots)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("criterion  2 eigenvalue oracle {diff:.3e} <= 1e-9");
    assert!(diff < 1e-9);
}

#[test]
fn criterion_03_critical_value() {
    run(3, VerifyOptions::default());
}

#[test]
fn criterion_04_elliptic_kernel() {
    run(4, VerifyOptions::default());
}

#[test]
fn criterion_05_uniformized_pentagons() {
    run(5, VerifyOptions::default());
}

#[test]
fn criterion_06_bridge() {
    run(6, VerifyOptions::default());
}

#[test]
fn criterion_07_gauss_projection() {
    run(7, VerifyOptions::default());
}

#[test]
fn criterion_08_poncelet_closure_r_0_4() {
    run(
        8,
        VerifyOptions {
            poncelet_inner: 0.4,
            ..Default::default()
        },
    );
}

#[test]
fn criterion_08_poncelet_closure_r_0_3() {
    run(8, VerifyOptions::default());
}

#[test]
fn criterion_09_dilogarithm() {
    run(9, VerifyOptions::default());
}

#[test]
fn criterion_10_napier_rules() {
    run(10, VerifyOptions::default());
}
