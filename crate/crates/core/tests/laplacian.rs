mod common;

use common::*;
use orlicz_core::rng::SeededRng;
use orlicz_core::{DirichletForm, NFunction};
use proptest::prelude::*;

fn test_balls() -> Vec<orlicz_core::CayleyBall> {
    vec![ball("z:1", 4), ball("z:2", 3), ball("free:2", 3), ball("lamplighter", 4), ball("prod(z:1,z:1)", 3)]
}

#[test]
fn delta_identity_on_all_test_balls() {
    let mut rng = SeededRng::new(1);
    for b in test_balls() {
        for nf in [NFunction::power(3.0).unwrap(), NFunction::cosh(), NFunction::plog(2.0).unwrap()] {
            let form = DirichletForm::new(&nf, &b);
            let h = random_function(&b, &mut rng, 1.5);
            for x in b.interior() {
                let c = form.delta_identity_check(&h, x).unwrap();
                assert!(c.ok, "{} {}: {c:?}", b.id(), nf.name());
            }
        }
    }
}

#[test]
fn gateaux_ratios_are_first_order() {
    let b = ball("free:2", 3);
    let nf = NFunction::cosh();
    let form = DirichletForm::new(&nf, &b);
    let mut rng = SeededRng::new(2);
    let f = random_function(&b, &mut rng, 1.0);
    let g = random_interior(&b, &mut rng, 1.0);
    let rows = form.gateaux_check(&f, &g, &[1e-3, 1e-4, 1e-5]).unwrap();
    for w in rows.windows(2) {
        let ratio = w[0].err / w[1].err;
        assert!((9.0..=11.0).contains(&ratio), "{rows:?}");
    }
}

#[test]
fn quadratic_pairing_matches_dense_form() {
    // Φ = x²/2: ⟨Δ h, f⟩ = 2 hᵀ L f with L the graph Laplacian of the ball
    let b = ball("z:1", 2);
    let nf = NFunction::power(2.0).unwrap();
    let form = DirichletForm::new(&nf, &b);
    let n = b.len();
    let mut lap = nalgebra::DMatrix::<f64>::zeros(n, n);
    form.for_each_edge(|x, y, _| {
        // each undirected edge is visited twice
        lap[(x, x)] += 0.5;
        lap[(y, y)] += 0.5;
        lap[(x, y)] -= 0.5;
        lap[(y, x)] -= 0.5;
    });
    let mut rng = SeededRng::new(3);
    for _ in 0..10 {
        let h = random_function(&b, &mut rng, 1.0);
        let f = random_function(&b, &mut rng, 1.0);
        let hv = nalgebra::DVector::from_vec(h.values.clone());
        let fv = nalgebra::DVector::from_vec(f.values.clone());
        let dense = 2.0 * hv.dot(&(&lap * &fv));
        assert!((form.pairing(&h, &f).unwrap() - dense).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pairing_is_linear_in_second_argument(seed in any::<u64>(), a in -3.0f64..3.0) {
        let b = ball("free:2", 2);
        let nf = NFunction::cosh();
        let form = DirichletForm::new(&nf, &b);
        let mut rng = SeededRng::new(seed);
        let (h, f, g) = (random_function(&b, &mut rng, 1.0), random_function(&b, &mut rng, 1.0), random_function(&b, &mut rng, 1.0));
        let lhs = form.pairing(&h, &f.scaled(a).axpy(1.0, &g)).unwrap();
        let rhs = a * form.pairing(&h, &f).unwrap() + form.pairing(&h, &g).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn strict_monotonicity(seed in any::<u64>(), shift in -2.0f64..2.0) {
        let b = ball("z:2", 2);
        let mut rng = SeededRng::new(seed);
        for nf in [NFunction::power(3.0).unwrap(), NFunction::cosh()] {
            let form = DirichletForm::new(&nf, &b);
            let f1 = random_function(&b, &mut rng, 1.0);
            let f2 = random_function(&b, &mut rng, 1.0);
            let d = f2.axpy(-1.0, &f1);
            let gap = form.pairing(&f1, &d).unwrap() - form.pairing(&f2, &d).unwrap();
            let scale = form.pairing(&f1, &f1).unwrap() + form.pairing(&f2, &f2).unwrap();
            prop_assert!(gap > 1e-12 * scale);

            let c = b.function(vec![shift; b.len()]).unwrap();
            let f3 = f1.axpy(1.0, &c);
            let d = f3.axpy(-1.0, &f1);
            let gap = form.pairing(&f3, &d).unwrap() - form.pairing(&f1, &d).unwrap();
            prop_assert!(gap.abs() <= 1e-12 * (1.0 + scale));
        }
    }

    #[test]
    fn laplacian_ignores_constants(seed in any::<u64>(), c in -10.0f64..10.0) {
        let b = ball("lamplighter", 3);
        let nf = NFunction::plog(2.0).unwrap();
        let form = DirichletForm::new(&nf, &b);
        let mut rng = SeededRng::new(seed);
        let f = random_function(&b, &mut rng, 1.0);
        let g = f.axpy(1.0, &b.function(vec![c; b.len()]).unwrap());
        for x in b.interior() {
            let (a, bb) = (form.laplacian(&f, x).unwrap(), form.laplacian(&g, x).unwrap());
            prop_assert!((a - bb).abs() <= 1e-12 * (1.0 + a.abs()));
        }
        let (s1, s2) = (form.dirichlet_seminorm(&f).unwrap(), form.dirichlet_seminorm(&g).unwrap());
        prop_assert!((s1 - s2).abs() <= 1e-9 * s1.max(1.0));
    }
}
