//! Finitely supported functions and the discrete Orlicz-space quantities on
//! them: the modular `ρ_Φ`, the Luxemburg (gauge) norm and the Orlicz norm.
//!
//! The Orlicz norm is the dual norm over the complementary class
//! `{u : ρ_Ψ(u) ≤ 1}`. It is evaluated through the equivalent
//! one-dimensional problem `inf_{k>0} (1 + ρ_Φ(k f)) / k`, which is the form
//! for which `‖f‖_(Φ) ≤ ‖f‖_Φ ≤ 2‖f‖_(Φ)` holds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nfunction::NFunction;
use crate::numeric::golden_section;

/// Real values indexed by the vertices of a ball (or any finite index set).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteFunction {
    pub ball: String,
    pub values: Vec<f64>,
}

impl FiniteFunction {
    pub fn new(ball: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("entry {i} is not finite")));
        }
        Ok(FiniteFunction { ball: ball.into(), values })
    }

    pub fn zeros(ball: impl Into<String>, n: usize) -> Self {
        FiniteFunction { ball: ball.into(), values: vec![0.0; n] }
    }

    /// Indicator `δ_x` of index `x`.
    pub fn delta(ball: impl Into<String>, n: usize, x: usize) -> Self {
        let mut f = FiniteFunction::zeros(ball, n);
        f.values[x] = 1.0;
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: FiniteFunction = serde_json::from_str(s)?;
        FiniteFunction::new(f.ball, f.values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite values serialize")
    }

    /// Entrywise `a·self + other`.
    pub fn axpy(&self, a: f64, other: &FiniteFunction) -> FiniteFunction {
        FiniteFunction {
            ball: self.ball.clone(),
            values: self.values.iter().zip(&other.values).map(|(x, y)| a * x + y).collect(),
        }
    }

    pub fn scaled(&self, a: f64) -> FiniteFunction {
        FiniteFunction { ball: self.ball.clone(), values: self.values.iter().map(|x| a * x).collect() }
    }
}

impl AsRef<[f64]> for FiniteFunction {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// `ρ_Φ(f) = Σ_x Φ(f(x))`.
pub fn modular(nf: &NFunction, f: impl AsRef<[f64]>) -> f64 {
    f.as_ref().iter().map(|&v| nf.phi(v)).sum()
}

fn scaled_modular(nf: &NFunction, f: &[f64], scale: f64) -> f64 {
    f.iter().map(|&v| nf.phi(v * scale)).sum()
}

const LUX_REL_TOL: f64 = 1e-12;

/// `‖f‖_(Φ) = inf{k > 0 : ρ_Φ(f/k) ≤ 1}`; the unique `k` with `ρ_Φ(f/k) = 1`
/// for `f ≠ 0`.
pub fn luxemburg_norm(nf: &NFunction, f: impl AsRef<[f64]>) -> f64 {
    let f = f.as_ref();
    let m = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let rho = |k: f64| scaled_modular(nf, f, 1.0 / k);
    let (mut lo, mut hi) = (m, m);
    while rho(hi) > 1.0 {
        hi *= 2.0;
    }
    while rho(lo) <= 1.0 {
        lo *= 0.5;
    }
    // invariant: ρ(f/lo) > 1 ≥ ρ(f/hi)
    while hi - lo > LUX_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rho(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

const ORLICZ_REL_TOL: f64 = 1e-10;

/// Orlicz norm `sup{|Σ f u| : ρ_Ψ(u) ≤ 1}`, computed as
/// `min_{s>0} s (1 + ρ_Φ(f/s))` (the Amemiya form with `s = 1/k`).
///
/// In `s` the objective is the perspective of `1 + ρ_Φ` and hence convex;
/// its minimizer lies in `(0, 2‖f‖_(Φ)]`.
pub fn orlicz_norm(nf: &NFunction, f: impl AsRef<[f64]>) -> f64 {
    let f = f.as_ref();
    let gauge = luxemburg_norm(nf, f);
    if gauge == 0.0 {
        return 0.0;
    }
    let objective = |s: f64| s * (1.0 + scaled_modular(nf, f, 1.0 / s));
    let mut lo = gauge;
    while objective(0.5 * lo) < objective(lo) {
        lo *= 0.5;
    }
    let (_, value) = golden_section(objective, 0.5 * lo, 2.0 * gauge, ORLICZ_REL_TOL);
    value
}

/// `Σ_x f(x) u(x)`.
pub fn dual_pairing(f: &FiniteFunction, u: &FiniteFunction) -> Result<f64> {
    if f.ball != u.ball || f.len() != u.len() {
        return Err(Error::Argument(format!(
            "index sets differ: '{}' ({}) vs '{}' ({})",
            f.ball,
            f.len(),
            u.ball,
            u.len()
        )));
    }
    Ok(f.values.iter().zip(&u.values).map(|(a, b)| a * b).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub gauge: f64,
    pub orlicz: f64,
    pub ok: bool,
}

/// Checks `‖f‖_(Φ) ≤ ‖f‖_Φ ≤ 2‖f‖_(Φ)` with absolute slack `1e-9`.
pub fn sandwich_check(nf: &NFunction, f: impl AsRef<[f64]>) -> Sandwich {
    let f = f.as_ref();
    let gauge = luxemburg_norm(nf, f);
    let orlicz = orlicz_norm(nf, f);
    Sandwich { gauge, orlicz, ok: gauge - 1e-9 <= orlicz && orlicz <= 2.0 * gauge + 1e-9 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(v: &[f64]) -> FiniteFunction {
        FiniteFunction::new("pts", v.to_vec()).unwrap()
    }

    #[test]
    fn modular_examples() {
        let p2 = NFunction::power(2.0).unwrap();
        assert_eq!(modular(&p2, ff(&[1.0, 1.0])), 1.0);
        assert_eq!(modular(&NFunction::cosh(), ff(&[0.0, 0.0, 0.0])), 0.0);
        let v = modular(&NFunction::cosh(), ff(&[0.5]));
        assert!((v - (0.5f64.cosh() - 1.0)).abs() < 1e-15);
        assert!((v - 0.127626).abs() < 1e-6);
    }

    #[test]
    fn modular_scaling_is_exact_for_powers() {
        let nf = NFunction::power_norm(3.0).unwrap();
        let f = ff(&[0.3, -1.25, 2.0]);
        assert_eq!(modular(&nf, f.scaled(2.0)), 8.0 * modular(&nf, &f));
    }

    #[test]
    fn luxemburg_examples() {
        let p2 = NFunction::power(2.0).unwrap();
        let v = luxemburg_norm(&p2, ff(&[3.0]));
        assert!((v - 3.0 / 2f64.sqrt()).abs() < 1e-11);
        assert_eq!(luxemburg_norm(&p2, ff(&[0.0, 0.0])), 0.0);
        let lp = NFunction::power_norm(3.0).unwrap();
        let f = [1.0, -2.0, 0.5];
        let want = f.iter().map(|v: &f64| v.abs().powi(3)).sum::<f64>().cbrt();
        assert!((luxemburg_norm(&lp, f) - want).abs() < 1e-11 * want);
    }

    #[test]
    fn luxemburg_normalizes_modular() {
        let nf = NFunction::cosh();
        let f = ff(&[0.1, 3.0, -7.5, 0.0]);
        let k = luxemburg_norm(&nf, &f);
        assert!((modular(&nf, f.scaled(1.0 / k)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn orlicz_examples() {
        let p2 = NFunction::power(2.0).unwrap();
        let f = ff(&[1.0, -2.0, 0.5]);
        let l2 = f.values.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((orlicz_norm(&p2, &f) - 2f64.sqrt() * l2).abs() < 1e-10);
        assert!((orlicz_norm(&p2, &f) - 2.0 * luxemburg_norm(&p2, &f)).abs() < 1e-10);
        assert_eq!(orlicz_norm(&p2, ff(&[0.0])), 0.0);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(dual_pairing(&ff(&[1.0, 2.0]), &ff(&[3.0, 4.0])).unwrap(), 11.0);
        assert_eq!(dual_pairing(&ff(&[1.0, 2.0]), &ff(&[0.0, 0.0])).unwrap(), 0.0);
        let u = ff(&[0.5, -3.0, 9.0]);
        let d = FiniteFunction::delta("pts", 3, 1);
        assert_eq!(dual_pairing(&d, &u).unwrap(), -3.0);
        assert!(dual_pairing(&ff(&[1.0]), &ff(&[1.0, 2.0])).is_err());
        let other = FiniteFunction::new("other", vec![1.0]).unwrap();
        assert!(dual_pairing(&ff(&[1.0]), &other).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let p2 = NFunction::power(2.0).unwrap();
        let s = sandwich_check(&p2, ff(&[1.0, 1.0]));
        assert!((s.gauge - 1.0).abs() < 1e-11);
        assert!((s.orlicz - 2.0).abs() < 1e-10);
        assert!(s.ok);
        let s = sandwich_check(&p2, ff(&[0.0]));
        assert_eq!((s.gauge, s.orlicz, s.ok), (0.0, 0.0, true));
    }

    #[test]
    fn rejects_non_finite_and_round_trips_json() {
        assert!(FiniteFunction::new("b", vec![1.0, f64::NAN]).is_err());
        let f = ff(&[1.5, -2.0]);
        assert_eq!(f.to_json(), r#"{"ball":"pts","values":[1.5,-2.0]}"#);
        assert_eq!(FiniteFunction::from_json(&f.to_json()).unwrap(), f);
        assert!(FiniteFunction::from_json(r#"{"ball":"x"}"#).is_err());
    }
}
