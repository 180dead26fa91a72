use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix3;
use pentagramma::dilog::{li2, rogers_l};
use pentagramma::elliptic::{am, complete_k, incomplete_f, jacobi_triple};
use pentagramma::oracle;
use pentagramma::pentagram::{AlphaCycle, NapierParts};
use pentagramma::poncelet::{trajectory, TwoCircleConfig};
use pentagramma::spectrum::{solve_characteristic, ConeQuadric};
use pentagramma::uniformization::frame_vectors;
use proptest::prelude::*;

fn sorted_eigenvalues(m: [[f64; 3]; 3]) -> [f64; 3] {
    let mut e: Vec<f64> = Matrix3::from_fn(|i, j| m[i][j])
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    e.sort_by(f64::total_cmp);
    [e[0], e[1], e[2]]
}

#[test]
fn kernel_matches_quadrature_at_frozen_points() {
    assert!((complete_k(0.8).unwrap() - oracle::quad_complete_k(0.8)).abs() < 1e-13);
    assert!(
        (incomplete_f(PI / 5.0, 0.6).unwrap() - oracle::quad_incomplete_f(PI / 5.0, 0.6)).abs()
            < 1e-13
    );
    let phi = oracle::quad_am(0.7, 0.5);
    let t = jacobi_triple(0.7, 0.5).unwrap();
    assert!((t.sn - phi.sin()).abs() < 1e-12);
    assert!((t.cn - phi.cos()).abs() < 1e-12);
    assert!((t.dn - (1.0 - 0.25 * phi.sin().powi(2)).sqrt()).abs() < 1e-12);
}

#[test]
fn amplitude_beyond_the_first_quarter() {
    for (u, k) in [(3.0, 0.3), (5.5, 0.9), (-2.2, 0.6)] {
        let reference = oracle::quad_am(u, k);
        assert!((am(u, k).unwrap() - reference).abs() < 1e-11, "u={u} k={k}");
    }
    let k = complete_k(0.7).unwrap();
    assert!((am(2.0 * k, 0.7).unwrap() - PI).abs() < 1e-13);
    assert!((am(k, 0.7).unwrap() - FRAC_PI_2).abs() < 1e-13);
}

#[test]
fn dilogarithm_matches_both_oracles() {
    let ln2 = 2f64.ln();
    assert!((li2(0.5).unwrap() - oracle::li2_series(0.5)).abs() < 1e-14);
    assert!((oracle::li2_series(0.5) - (PI * PI / 12.0 - 0.5 * ln2 * ln2)).abs() < 1e-13);
    for x in [0.05, 0.3, 0.62, 0.85, 0.97] {
        assert!(
            (li2(x).unwrap() - oracle::li2_quadrature(x)).abs() < 1e-13,
            "x={x}"
        );
        assert!(
            (li2(x).unwrap() - oracle::li2_series(x)).abs() < 1e-13,
            "x={x}"
        );
    }
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let x = 1.0 / golden;
    let direct = oracle::li2_series(x) + 0.5 * x.ln() * (1.0 - x).ln();
    assert!((rogers_l(x).unwrap() - direct).abs() < 1e-14);
}

#[test]
fn cone_spectrum_matches_eigenvalues() {
    let cone = ConeQuadric::from_alpha_gamma(9.0, 2.0).unwrap();
    assert_eq!(
        cone,
        ConeQuadric::new(-3.0, -2f64.sqrt(), -12.0 / 18f64.sqrt())
    );
    let gauss = sorted_eigenvalues(cone.matrix());
    let roots = solve_characteristic(20.0).unwrap().roots();
    for (e, r) in gauss.iter().zip(roots) {
        assert!((e - r).abs() < 1e-9);
    }
    assert_eq!(
        sorted_eigenvalues(ConeQuadric::new(0.0, 0.0, 0.0).matrix()),
        [0.0, 0.0, 1.0]
    );
    let m = ConeQuadric::new(-1.0, -1.0, -3.0).matrix();
    assert_eq!((m[0][1], m[0][2], m[2][2]), (-1.5, -0.5, 1.0));
}

#[test]
fn frame_cycles_have_matching_eigenvalues() {
    for (k, u) in [(0.2, 0.1), (0.5, 1.3), (0.85, 2.9)] {
        let cycle = frame_vectors(k, u).unwrap().alphas().unwrap();
        let eig = sorted_eigenvalues(ConeQuadric::from_cycle(&cycle).unwrap().matrix());
        let roots = solve_characteristic(cycle.omega()).unwrap().roots();
        for (e, r) in eig.iter().zip(roots) {
            assert!((e - r).abs() < 1e-9, "k={k}: {eig:?} vs {roots:?}");
        }
    }
}

#[test]
fn napier_triangles_from_vectors() {
    for (a, b) in [(0.3, 0.4), (1.2, 0.2), (0.9, 1.4)] {
        let t = oracle::right_triangle(a, b);
        let from_vectors = NapierParts::from_triangle(t.a, t.b, t.c, t.alpha, t.beta);
        let solved = NapierParts::from_legs(a, b).unwrap();
        for (x, y) in from_vectors.parts().iter().zip(solved.parts()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn poncelet_geometry_against_circles() {
    let c = TwoCircleConfig::new(2.0, 0.9, 0.5).unwrap();
    let t = trajectory(&c, 0.25, 30).unwrap();
    for v in t.vertices() {
        assert!((v[0].hypot(v[1]) - 2.0).abs() < 1e-13);
    }
    for r in t.tangency_residuals() {
        assert!(r.abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn incomplete_integral_matches_quadrature(phi in 0.0f64..1.5, k in 0.0f64..0.98) {
        let diff = incomplete_f(phi, k).unwrap() - oracle::quad_incomplete_f(phi, k);
        prop_assert!(diff.abs() < 1e-12);
    }

    #[test]
    fn completed_cycles_are_pentagrams(a in 0.05f64..40.0, g in 0.05f64..40.0) {
        let c = AlphaCycle::complete_from_two(a, g).unwrap();
        prop_assert!(c.max_relation_residual() < 1e-12);
        prop_assert!(c.invariants().max_spread() < 1e-9 * c.omega());
    }
}
