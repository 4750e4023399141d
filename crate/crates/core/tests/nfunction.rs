use approx::assert_relative_eq;
use orlicz_core::nfunction::{
    certify_delta2, certify_nabla2, check_growth_bounds, default_c_grid, YoungPair, DEFAULT_GRID_POINTS,
};
use orlicz_core::NFunction;
use proptest::prelude::*;

fn catalog() -> Vec<NFunction> {
    vec![
        NFunction::power(1.5).unwrap(),
        NFunction::power(2.0).unwrap(),
        NFunction::power(3.0).unwrap(),
        NFunction::power_norm(2.0).unwrap(),
        NFunction::cosh(),
        NFunction::plog(2.0).unwrap(),
        NFunction::plog(1.0).unwrap(),
    ]
}

#[test]
fn phi_increasing_and_derivative_odd() {
    let grid: Vec<f64> = (1..=400).map(|i| i as f64 * 0.025).collect();
    for nf in catalog() {
        let mut prev = 0.0;
        for &x in &grid {
            let v = nf.phi(x);
            assert!(v > prev, "{} at {x}", nf.name());
            prev = v;
            assert_eq!(nf.dphi(-x), -nf.dphi(x));
            assert_eq!(nf.phi(-x), nf.phi(x));
        }
        assert_eq!(nf.phi(0.0), 0.0);
        assert_eq!(nf.dphi(0.0), 0.0);
    }
}

#[test]
fn young_grid_and_equality_case() {
    let grid: Vec<f64> = (0..100).map(|i| i as f64 * 0.05).collect();
    for nf in [NFunction::cosh(), NFunction::plog(2.0).unwrap(), NFunction::power(3.0).unwrap()] {
        let b_max = grid.iter().fold(0.0f64, |m, &b| m.max(b)).max(nf.dphi(5.0));
        let pair = YoungPair::numeric(&nf, b_max).unwrap();
        // Ψ(b) once per grid column; gap(a, b) = Φ(a) + Ψ(b) − ab
        let psi: Vec<f64> = grid.iter().map(|&b| pair.psi.eval_phi(b).unwrap()).collect();
        let mut worst = f64::INFINITY;
        for &a in &grid {
            for (&b, &psi_b) in grid.iter().zip(&psi) {
                worst = worst.min(nf.phi(a) + psi_b - a * b);
            }
            let eq = pair.gap(a, nf.dphi(a)).unwrap();
            assert!(eq.abs() <= 1e-6, "{} a={a}: {eq}", nf.name());
        }
        assert!(worst >= -1e-9, "{}: {worst}", nf.name());
    }
}

#[test]
fn biconjugate_recovers_phi() {
    for nf in [NFunction::cosh(), NFunction::plog(2.0).unwrap(), NFunction::power(3.0).unwrap()] {
        let x_max = 3.0;
        let psi = nf.numeric_complementary(x_max, 16).unwrap();
        let y_max = nf.dphi(x_max);
        let back = psi.numeric_complementary(y_max, 8).unwrap();
        for x in [0.1, 0.5, 1.0, 2.0, 2.9] {
            let (a, b) = (back.phi(x), nf.phi(x));
            assert!((a - b).abs() <= 1e-4 * (1.0 + b), "{} at {x}: {a} vs {b}", nf.name());
        }
    }
}

#[test]
fn delta2_constant_of_powers() {
    for p in [1.5f64, 2.0, 3.0, 4.0] {
        let cert = certify_delta2(&NFunction::power(p).unwrap(), 1.0, DEFAULT_GRID_POINTS).unwrap();
        assert!((cert.constant - 2f64.powf(p)).abs() < 1e-9, "p={p}: {}", cert.constant);
        assert!(cert.passed);
    }
}

#[test]
fn nabla2_constant_of_power_three() {
    let cert = certify_nabla2(&NFunction::power(3.0).unwrap(), 1.0, &default_c_grid(), DEFAULT_GRID_POINTS).unwrap();
    assert!(cert.passed);
    assert_relative_eq!(cert.constant, 2f64.sqrt(), max_relative = 1e-15);
}

#[test]
fn parsed_expressions_agree_with_builtins() {
    for nf in catalog() {
        let (phi, dphi) = nf.expressions().unwrap();
        let parsed = NFunction::parse(&phi, &dphi, nf.params()).unwrap();
        for i in 0..200 {
            let x = -5.0 + i as f64 * 0.05;
            let (a, b) = (parsed.phi(x), nf.phi(x));
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{} at {x}", nf.name());
            let (a, b) = (parsed.dphi(x), nf.dphi(x));
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{}' at {x}", nf.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn young_inequality_holds(a in 0.0f64..4.0, b in 0.0f64..4.0) {
        for nf in [NFunction::power(2.5).unwrap(), NFunction::cosh()] {
            let pair = YoungPair::new(&nf, 4.0).unwrap();
            prop_assert!(pair.gap(a, b).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn growth_bound_pointwise(x in 1e-3f64..1.0) {
        for nf in [NFunction::power(3.0).unwrap(), NFunction::cosh(), NFunction::plog(2.0).unwrap()] {
            let k = certify_delta2(&nf, 1.0, DEFAULT_GRID_POINTS).unwrap().constant;
            let psi = nf.numeric_complementary(2.0, 16).unwrap();
            let lhs = psi.phi(nf.dphi(x));
            prop_assert!(lhs <= (k - 1.0) * nf.phi(x) * (1.0 + 1e-8), "{}: {} > {}", nf.name(), lhs, (k - 1.0) * nf.phi(x));
            prop_assert!(x * nf.dphi(x) <= k * nf.phi(x) * (1.0 + 1e-12));
        }
    }
}

#[test]
fn growth_bound_report_passes_for_builtins() {
    for nf in catalog() {
        let k = certify_delta2(&nf, 1.0, DEFAULT_GRID_POINTS).unwrap().constant;
        let report = check_growth_bounds(&nf, 1.0, k, DEFAULT_GRID_POINTS).unwrap();
        assert!(report.passed, "{}: {report:?}", nf.name());
    }
}
