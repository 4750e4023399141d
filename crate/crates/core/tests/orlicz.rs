use orlicz_core::numeric::golden_section;
use orlicz_core::orlicz::{dual_pairing, luxemburg_norm, modular, orlicz_norm, sandwich_check};
use orlicz_core::{FiniteFunction, NFunction};
use proptest::prelude::*;

/// `sup { Σ|f|·w / ‖w‖_(Ψ) : w ≥ 0 }` over a simplex grid, refined by a
/// golden-section search along the best grid edge.
fn brute_force_dual(f: &[f64], psi: &NFunction, steps: usize) -> f64 {
    let f: Vec<f64> = f.iter().map(|v| v.abs()).collect();
    let value = |w: &[f64]| {
        let lux = luxemburg_norm(psi, w);
        f.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / lux
    };
    let mut best = 0.0f64;
    match f.len() {
        2 => {
            let (arg, _) = golden_section(|t| -value(&[t, 1.0 - t]), 1e-9, 1.0 - 1e-9, 1e-12);
            best = best.max(value(&[arg, 1.0 - arg]));
        }
        3 => {
            let mut arg = (0.0, 0.0);
            for i in 0..=steps {
                for j in 0..=steps - i {
                    let (a, b) = (i as f64 / steps as f64, j as f64 / steps as f64);
                    let v = value(&[a, b, 1.0 - a - b]);
                    if v > best {
                        best = v;
                        arg = (a, b);
                    }
                }
            }
            // coordinate refinement around the grid maximizer
            let (mut a, mut b) = arg;
            for _ in 0..20 {
                let h = 1.0 / steps as f64;
                let (ta, _) =
                    golden_section(|t| -value(&[t, b, 1.0 - t - b]), (a - h).max(0.0), (a + h).min(1.0 - b), 1e-12);
                a = ta;
                let (tb, _) =
                    golden_section(|t| -value(&[a, t, 1.0 - a - t]), (b - h).max(0.0), (b + h).min(1.0 - a), 1e-12);
                b = tb;
            }
            best = best.max(value(&[a, b, 1.0 - a - b]));
        }
        _ => unimplemented!(),
    }
    best
}

fn cosh_conjugate() -> NFunction {
    NFunction::parse("x*log(x + sqrt(1 + x^2)) - sqrt(1 + x^2) + 1", "log(x + sqrt(1 + x^2))", &Default::default())
        .unwrap()
}

#[test]
fn orlicz_norm_matches_dual_supremum() {
    let p3 = NFunction::power(3.0).unwrap();
    let psi3 = p3.closed_complement().unwrap();
    let f = [1.0, 0.5, 0.25];
    let (one_d, brute) = (orlicz_norm(&p3, f), brute_force_dual(&f, &psi3, 200));
    assert!((one_d - brute).abs() < 1e-6 * brute, "{one_d} vs {brute}");

    let cosh = NFunction::cosh();
    let psi = cosh_conjugate();
    for f in [[2.0, -0.3], [0.1, 0.05], [5.0, 4.0]] {
        let (one_d, brute) = (orlicz_norm(&cosh, f), brute_force_dual(&f, &psi, 0));
        assert!((one_d - brute).abs() < 1e-6 * brute, "{f:?}: {one_d} vs {brute}");
    }
    let f = [0.7, -1.2, 0.4];
    let (one_d, brute) = (orlicz_norm(&cosh, f), brute_force_dual(&f, &psi, 120));
    assert!((one_d - brute).abs() < 1e-6 * brute, "{one_d} vs {brute}");
}

#[test]
fn holder_bound_for_admissible_u() {
    let nf = NFunction::plog(2.0).unwrap();
    // admissible u have |u| ≤ 1, so Ψ is only needed on [0, 1]
    let psi = nf.numeric_complementary(nf.bracket_for(1.0).unwrap(), 16).unwrap();
    let f = FiniteFunction::new("pts", vec![0.3, -1.4, 2.2, 0.0]).unwrap();
    let bound = orlicz_norm(&nf, &f);
    let mut rng = orlicz_core::rng::SeededRng::new(9);
    for _ in 0..8 {
        let raw: Vec<f64> = (0..4).map(|_| rng.symmetric()).collect();
        // project into {ρ_Ψ(u) ≤ 1}
        let k = luxemburg_norm(&psi, &raw).max(1.0);
        let u = FiniteFunction::new("pts", raw.iter().map(|v| v / k).collect()).unwrap();
        assert!(modular(&psi, &u) <= 1.0 + 1e-9);
        assert!(dual_pairing(&f, &u).unwrap().abs() <= bound + 1e-9);
    }
}

fn vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norms_are_homogeneous(f in vector(12), a in -4.0f64..4.0) {
        for nf in [NFunction::power(3.0).unwrap(), NFunction::cosh(), NFunction::plog(2.0).unwrap()] {
            let scaled: Vec<f64> = f.iter().map(|v| a * v).collect();
            let (g, gs) = (luxemburg_norm(&nf, &f), luxemburg_norm(&nf, &scaled));
            prop_assert!((gs - a.abs() * g).abs() <= 1e-9 * (1.0 + gs));
            let (o, os) = (orlicz_norm(&nf, &f), orlicz_norm(&nf, &scaled));
            prop_assert!((os - a.abs() * o).abs() <= 1e-9 * (1.0 + os));
        }
    }

    #[test]
    fn triangle_inequality(f in vector(8), g in vector(8)) {
        let n = f.len().min(g.len());
        let sum: Vec<f64> = f[..n].iter().zip(&g[..n]).map(|(a, b)| a + b).collect();
        for nf in [NFunction::power(2.0).unwrap(), NFunction::cosh(), NFunction::plog(2.0).unwrap()] {
            prop_assert!(luxemburg_norm(&nf, &sum) <= luxemburg_norm(&nf, &f[..n]) + luxemburg_norm(&nf, &g[..n]) + 1e-9);
            prop_assert!(orlicz_norm(&nf, &sum) <= orlicz_norm(&nf, &f[..n]) + orlicz_norm(&nf, &g[..n]) + 1e-9);
        }
    }

    #[test]
    fn luxemburg_normalizes(f in vector(16)) {
        prop_assume!(f.iter().any(|v| *v != 0.0));
        for nf in [NFunction::power(1.5).unwrap(), NFunction::cosh(), NFunction::plog(2.0).unwrap()] {
            let k = luxemburg_norm(&nf, &f);
            let normalized: Vec<f64> = f.iter().map(|v| v / k).collect();
            prop_assert!((modular(&nf, &normalized) - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn power_modular_scales_exactly(f in vector(16), p in prop::sample::select(vec![2.0f64, 3.0, 4.0])) {
        let nf = NFunction::power_norm(p).unwrap();
        let doubled: Vec<f64> = f.iter().map(|v| 2.0 * v).collect();
        let (a, b) = (modular(&nf, &f), modular(&nf, &doubled));
        prop_assert!((b - 2f64.powf(p) * a).abs() <= 1e-12 * b.max(1.0));
    }

    #[test]
    fn sandwich(f in vector(24)) {
        for nf in [NFunction::power(2.0).unwrap(), NFunction::power(3.0).unwrap(), NFunction::cosh()] {
            prop_assert!(sandwich_check(&nf, &f).ok);
        }
    }

    #[test]
    fn growth_bound_pointwise_on_entries(f in prop::collection::vec(-1.0f64..1.0, 1..8)) {
        let nf = NFunction::cosh();
        let k = orlicz_core::nfunction::certify_delta2(&nf, 1.0, 512).unwrap().constant;
        let psi = nf.numeric_complementary(1.5, 16).unwrap();
        for v in f {
            let a = v.abs();
            prop_assert!(psi.phi(nf.dphi(a)) <= (k - 1.0) * nf.phi(a) * (1.0 + 1e-8) + 1e-300);
        }
    }
}
