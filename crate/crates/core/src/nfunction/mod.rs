//! N-functions: even convex functions `Φ(x) = ∫_0^|x| φ(t) dt` with `φ`
//! non-decreasing, `φ(0) = 0`, `φ(t) > 0` for `t > 0` and `φ → ∞`.
//!
//! An [`NFunction`] evaluates `Φ` and its odd derivative `Φ′`. Values are
//! immutable after construction and cheap to clone.

mod complement;
pub mod expr;
mod regularity;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use complement::{young_gap, NumericComplement, YoungPair, DEFAULT_RESOLUTION};
pub use expr::{Expr, ParseError};
pub use regularity::{
    certify_delta2, certify_nabla2, check_growth_bounds, default_c_grid, GrowthBoundReport, RegularityCertificate,
    RegularityKind, DEFAULT_GRID_POINTS,
};

use crate::numeric::{adaptive_simpson, log_grid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NFunctionError {
    #[error("argument {0} is not finite")]
    Domain(f64),
    #[error("value {y} is outside the bracketed range [0, {limit}] of the inverse derivative")]
    Range { y: f64, limit: f64 },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(
        "supplied derivative disagrees with the numerical derivative at x = {x}: given {given}, numerical {numerical}"
    )]
    DerivativeMismatch { x: f64, given: f64, numerical: f64 },
    #[error("derivative is not non-decreasing near x = {x}")]
    NonMonotone { x: f64 },
    #[error("not an N-function: {0}")]
    Invalid(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T, E = NFunctionError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Builtin,
    Parsed,
    Complement,
}

#[derive(Clone)]
pub(crate) enum Kind {
    /// `Φ(x) = scale · |x|^p / p`.
    ScaledPower {
        p: f64,
        scale: f64,
    },
    /// `Φ(x) = cosh(x) − 1`.
    Cosh,
    /// `Φ(x) = |x|^p · log(1 + |x|)`.
    PLog {
        p: f64,
    },
    Parsed {
        phi: Expr,
        dphi: Expr,
        phi_src: String,
        dphi_src: String,
    },
    Numeric(Arc<NumericComplement>),
}

#[derive(Clone)]
pub struct NFunction {
    name: String,
    params: BTreeMap<String, f64>,
    pub(crate) kind: Kind,
    strictly_convex: bool,
    source: Source,
}

impl fmt::Debug for NFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NFunction")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("strictly_convex", &self.strictly_convex)
            .finish()
    }
}

fn params_of(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

impl NFunction {
    /// `Φ(x) = |x|^p / p`, `p > 1`.
    pub fn power(p: f64) -> Result<NFunction> {
        check_exponent(p, 1.0, false)?;
        Ok(NFunction {
            name: format!("power:p={}", fmt_num(p)),
            params: params_of(&[("p", p)]),
            kind: Kind::ScaledPower { p, scale: 1.0 },
            strictly_convex: true,
            source: Source::Builtin,
        })
    }

    /// `Φ(x) = |x|^p` (no `1/p` normalization), `p > 1`.
    pub fn power_norm(p: f64) -> Result<NFunction> {
        check_exponent(p, 1.0, false)?;
        Ok(NFunction {
            name: format!("power_norm:p={}", fmt_num(p)),
            params: params_of(&[("p", p)]),
            kind: Kind::ScaledPower { p, scale: p },
            strictly_convex: true,
            source: Source::Builtin,
        })
    }

    /// `Φ(x) = cosh(x) − 1`.
    pub fn cosh() -> NFunction {
        NFunction {
            name: "cosh".into(),
            params: BTreeMap::new(),
            kind: Kind::Cosh,
            strictly_convex: true,
            source: Source::Builtin,
        }
    }

    /// `Φ(x) = |x|^p · log(1 + |x|)`, `p ≥ 1`.
    pub fn plog(p: f64) -> Result<NFunction> {
        check_exponent(p, 1.0, true)?;
        Ok(NFunction {
            name: format!("plog:p={}", fmt_num(p)),
            params: params_of(&[("p", p)]),
            kind: Kind::PLog { p },
            strictly_convex: true,
            source: Source::Builtin,
        })
    }

    /// Look up a catalog entry by identifier: `power`, `power_norm`, `cosh`, `plog`.
    pub fn builtin(id: &str, params: &BTreeMap<String, f64>) -> Result<NFunction> {
        let p = || {
            params
                .get("p")
                .copied()
                .ok_or_else(|| NFunctionError::Argument(format!("builtin '{id}' needs parameter p")))
        };
        let allowed: &[&str] = match id {
            "cosh" => &[],
            "power" | "power_norm" | "plog" => &["p"],
            _ => return Err(NFunctionError::Argument(format!("unknown builtin '{id}'"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(NFunctionError::Argument(format!("builtin '{id}' has no parameter '{k}'")));
        }
        match id {
            "power" => NFunction::power(p()?),
            "power_norm" => NFunction::power_norm(p()?),
            "plog" => NFunction::plog(p()?),
            _ => Ok(NFunction::cosh()),
        }
    }

    /// Parse the `builtin_id:param=value,...` mini-syntax, e.g. `power:p=3` or `cosh`.
    pub fn from_spec(spec: &str) -> Result<NFunction> {
        let (id, rest) = match spec.split_once(':') {
            Some((id, rest)) => (id.trim(), rest.trim()),
            None => (spec.trim(), ""),
        };
        let mut params = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| NFunctionError::Argument(format!("expected name=value, got '{item}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| NFunctionError::Argument(format!("bad number '{}' for '{}'", v.trim(), k.trim())))?;
            params.insert(k.trim().to_string(), v);
        }
        NFunction::builtin(id, &params)
    }

    /// Build an N-function from DSL expressions for `Φ` and `Φ′`.
    ///
    /// Both are evaluated at `|x|`; the derivative is extended oddly. The
    /// supplied derivative is checked against a Richardson-extrapolated
    /// central difference of `Φ` at 64 log-spaced points in `[1e-4, 10]`
    /// (relative tolerance `1e-4`), and must be non-decreasing on a 512-point
    /// probe grid.
    pub fn parse(phi_expr: &str, dphi_expr: &str, params: &BTreeMap<String, f64>) -> Result<NFunction> {
        let phi = expr::parse(phi_expr, params)?;
        let dphi = expr::parse(dphi_expr, params)?;
        let mut nf = NFunction {
            name: format!("expr:{phi_expr}"),
            params: params.clone(),
            kind: Kind::Parsed { phi, dphi, phi_src: phi_expr.to_string(), dphi_src: dphi_expr.to_string() },
            strictly_convex: false,
            source: Source::Parsed,
        };
        let zero = nf.phi(0.0);
        if zero != 0.0 {
            return Err(NFunctionError::Invalid(format!("Φ(0) = {zero}, expected 0")));
        }
        check_derivative(&nf)?;
        nf.strictly_convex = probe_monotone(&nf, PROBE_MAX)?;
        Ok(nf)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.strictly_convex
    }

    /// DSL expressions that reproduce this function, when it has them.
    pub fn expressions(&self) -> Option<(String, String)> {
        match &self.kind {
            Kind::ScaledPower { scale, .. } if *scale == 1.0 => Some(("abs(x)^p / p".into(), "abs(x)^(p-1)".into())),
            Kind::ScaledPower { p, scale } if scale == p => Some(("abs(x)^p".into(), "p*abs(x)^(p-1)".into())),
            Kind::Cosh => Some(("cosh(x) - 1".into(), "sinh(x)".into())),
            Kind::PLog { .. } => Some((
                "abs(x)^p * log(1 + abs(x))".into(),
                "p*abs(x)^(p-1)*log(1 + abs(x)) + abs(x)^p/(1 + abs(x))".into(),
            )),
            Kind::Parsed { phi_src, dphi_src, .. } => Some((phi_src.clone(), dphi_src.clone())),
            _ => None,
        }
    }

    /// `Φ(t)` for `t ≥ 0`.
    fn phi_pos(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::ScaledPower { p, scale } => {
                if t == 0.0 {
                    0.0
                } else {
                    scale * t.powf(*p) / p
                }
            }
            Kind::Cosh => {
                // cosh(t) − 1 without cancellation near zero
                let s = (0.5 * t).sinh();
                2.0 * s * s
            }
            Kind::PLog { p } => {
                if t == 0.0 {
                    0.0
                } else {
                    t.powf(*p) * t.ln_1p()
                }
            }
            Kind::Parsed { phi, .. } => phi.eval(t),
            Kind::Numeric(c) => c.psi(t),
        }
    }

    /// `φ(t) = Φ′(t)` for `t ≥ 0`.
    fn dphi_pos(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::ScaledPower { p, scale } => {
                if t == 0.0 {
                    0.0
                } else {
                    scale * t.powf(p - 1.0)
                }
            }
            Kind::Cosh => t.sinh(),
            Kind::PLog { p } => {
                if t == 0.0 {
                    0.0
                } else {
                    p * t.powf(p - 1.0) * t.ln_1p() + t.powf(*p) / (1.0 + t)
                }
            }
            Kind::Parsed { dphi, .. } => dphi.eval(t),
            Kind::Numeric(c) => c.inverse_derivative(t),
        }
    }

    /// `Φ(x)`, even in `x`. Unchecked; non-finite input propagates.
    #[inline]
    pub fn phi(&self, x: f64) -> f64 {
        self.phi_pos(x.abs())
    }

    /// `Φ′(x) = sign(x) φ(|x|)`, odd in `x`. Unchecked.
    #[inline]
    pub fn dphi(&self, x: f64) -> f64 {
        if x > 0.0 {
            self.dphi_pos(x)
        } else if x < 0.0 {
            -self.dphi_pos(-x)
        } else {
            0.0
        }
    }

    pub fn eval_phi(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(NFunctionError::Domain(x));
        }
        let v = self.phi(x);
        self.checked(x, v)
    }

    pub fn eval_dphi(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(NFunctionError::Domain(x));
        }
        let v = self.dphi(x);
        self.checked(x, v)
    }

    fn checked(&self, x: f64, v: f64) -> Result<f64> {
        if v.is_nan() {
            if let Kind::Numeric(c) = &self.kind {
                return Err(NFunctionError::Range { y: x.abs(), limit: c.range_limit() });
            }
            return Err(NFunctionError::Invalid(format!("{} is NaN at {x}", self.name)));
        }
        Ok(v)
    }

    /// The complementary function `Ψ`, in closed form when one is registered
    /// and otherwise built numerically with the inverse bracketed on `[0, x_max]`.
    pub fn complementary(&self, x_max: f64, resolution: usize) -> Result<NFunction> {
        if let Some(c) = self.closed_complement() {
            return Ok(c);
        }
        self.numeric_complementary(x_max, resolution)
    }

    /// Closed-form complement, if registered: power families only.
    pub fn closed_complement(&self) -> Option<NFunction> {
        match self.kind {
            Kind::ScaledPower { p, scale } => {
                // (a t^{p-1})^{-1}(y) = (y/a)^{1/(p-1)}, integrating gives a^{-1/(p-1)} y^q / q
                let q = p / (p - 1.0);
                let s = scale.powf(-1.0 / (p - 1.0));
                Some(NFunction {
                    name: format!("complement({})", self.name),
                    params: params_of(&[("p", q)]),
                    kind: Kind::ScaledPower { p: q, scale: s },
                    strictly_convex: true,
                    source: Source::Complement,
                })
            }
            _ => None,
        }
    }

    /// Numerically constructed complement, ignoring any closed form.
    pub fn numeric_complementary(&self, x_max: f64, resolution: usize) -> Result<NFunction> {
        let c = NumericComplement::new(self.clone(), x_max, resolution)?;
        Ok(NFunction {
            name: format!("complement({})", self.name),
            params: BTreeMap::new(),
            strictly_convex: true,
            kind: Kind::Numeric(Arc::new(c)),
            source: Source::Complement,
        })
    }

    /// Smallest power-of-two `x_max ≥ 1` with `Φ′(x_max) ≥ y`, so that the
    /// complement is defined on `[0, y]`.
    pub fn bracket_for(&self, y: f64) -> Result<f64> {
        let mut x = 1.0;
        for _ in 0..1100 {
            if self.dphi(x) >= y {
                return Ok(x);
            }
            x *= 2.0;
        }
        Err(NFunctionError::Range { y, limit: x })
    }

    /// Numerically check the defining properties on a probe grid.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

fn check_exponent(p: f64, min: f64, inclusive: bool) -> Result<()> {
    let ok = p.is_finite() && if inclusive { p >= min } else { p > min };
    if ok {
        Ok(())
    } else {
        Err(NFunctionError::Argument(format!("exponent p = {p} must be {} {min}", if inclusive { ">=" } else { ">" })))
    }
}

pub(crate) const PROBE_MAX: f64 = 10.0;
const PROBE_MIN: f64 = 1e-4;

fn central_difference(nf: &NFunction, x: f64) -> f64 {
    let d = |h: f64| (nf.phi(x + h) - nf.phi(x - h)) / (2.0 * h);
    let h = 1e-3 * x;
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

fn check_derivative(nf: &NFunction) -> Result<()> {
    let mut worst: Option<(f64, f64, f64, f64)> = None;
    for x in log_grid(PROBE_MIN, PROBE_MAX, 64) {
        let given = nf.dphi(x);
        let numerical = central_difference(nf, x);
        let scale = given.abs().max(numerical.abs());
        let rel = if scale == 0.0 { 0.0 } else { (given - numerical).abs() / scale };
        if !rel.is_finite() || !given.is_finite() {
            return Err(NFunctionError::DerivativeMismatch { x, given, numerical });
        }
        if worst.is_none_or(|w| rel > w.3) {
            worst = Some((x, given, numerical, rel));
        }
    }
    match worst {
        Some((x, given, numerical, rel)) if rel > 1e-4 => {
            Err(NFunctionError::DerivativeMismatch { x, given, numerical })
        }
        _ => Ok(()),
    }
}

/// Checks `Φ′` is non-decreasing and positive on a 512-point grid; returns
/// whether it is strictly increasing there.
fn probe_monotone(nf: &NFunction, x_max: f64) -> Result<bool> {
    let grid = log_grid(PROBE_MIN, x_max, 512);
    let mut strict = true;
    let mut prev = 0.0;
    for &t in &grid {
        let d = nf.dphi(t);
        if !(d > 0.0) || d < prev {
            return Err(NFunctionError::NonMonotone { x: t });
        }
        if d == prev {
            strict = false;
        }
        prev = d;
    }
    Ok(strict)
}

/// Outcome of [`NFunction::validate`]; each field is one checked property.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub zero_at_origin: bool,
    pub even: bool,
    pub positive: bool,
    pub derivative_monotone: bool,
    /// Worst relative error of `∫_0^x Φ′` against `Φ(x)`.
    pub integral_rel_error: f64,
    pub sublinear_at_zero: bool,
    pub superlinear_at_infinity: bool,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.zero_at_origin
            && self.even
            && self.positive
            && self.derivative_monotone
            && self.integral_rel_error <= 1e-6
            && self.sublinear_at_zero
            && self.superlinear_at_infinity
    }
}

fn validate(nf: &NFunction) -> ValidationReport {
    let grid = log_grid(PROBE_MIN, PROBE_MAX, 64);
    let even = grid.iter().all(|&x| nf.phi(x) == nf.phi(-x) && nf.dphi(-x) == -nf.dphi(x));
    let positive = grid.iter().all(|&x| nf.phi(x) > 0.0);
    let derivative_monotone = nf.dphi(0.0) == 0.0 && probe_monotone(nf, PROBE_MAX).is_ok();
    let integral_rel_error = grid
        .iter()
        .step_by(7)
        .map(|&x| {
            let q = adaptive_simpson(|t| nf.dphi(t), 0.0, x, 8, 1e-10, 0.0);
            let v = nf.phi(x);
            (q - v).abs() / v.abs().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    ValidationReport {
        zero_at_origin: nf.phi(0.0) == 0.0,
        even,
        positive,
        derivative_monotone,
        integral_rel_error,
        sublinear_at_zero: nf.phi(1e-6) / 1e-6 < 1e-3,
        superlinear_at_infinity: nf.phi(1e6) / 1e6 > 1e3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> BTreeMap<String, f64> {
        params_of(&[("p", v)])
    }

    #[test]
    fn eval_examples() {
        assert_eq!(NFunction::power(2.0).unwrap().eval_phi(3.0).unwrap(), 4.5);
        assert_eq!(NFunction::cosh().eval_phi(0.0).unwrap(), 0.0);
        let v = NFunction::power(3.0).unwrap().eval_phi(2.0).unwrap();
        assert!((v - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(NFunction::power(2.0).unwrap().eval_dphi(-1.0).unwrap(), -1.0);
        let v = NFunction::cosh().eval_dphi(0.5).unwrap();
        assert!((v - 0.5f64.sinh()).abs() < 1e-15);
        assert!((v - 0.521095).abs() < 1e-6);
        assert_eq!(NFunction::power(3.0).unwrap().eval_dphi(-2.0).unwrap(), -4.0);
    }

    #[test]
    fn non_finite_is_domain_error() {
        let nf = NFunction::cosh();
        assert!(matches!(nf.eval_phi(f64::NAN), Err(NFunctionError::Domain(_))));
        assert!(matches!(nf.eval_phi(f64::INFINITY), Err(NFunctionError::Domain(_))));
        assert!(matches!(nf.eval_dphi(f64::NEG_INFINITY), Err(NFunctionError::Domain(_))));
    }

    #[test]
    fn builtins_validate() {
        for nf in [
            NFunction::power(2.0).unwrap(),
            NFunction::power(3.0).unwrap(),
            NFunction::power_norm(2.0).unwrap(),
            NFunction::cosh(),
            NFunction::plog(2.0).unwrap(),
        ] {
            let r = nf.validate();
            assert!(r.ok(), "{}: {r:?}", nf.name());
        }
    }

    #[test]
    fn slow_growth_misses_the_fixed_threshold() {
        // Φ(x)/x → ∞ only like √x or log x here, which stays below 1e3 at x = 1e6.
        for nf in [NFunction::power(1.5).unwrap(), NFunction::plog(1.0).unwrap()] {
            let r = nf.validate();
            assert!(!r.superlinear_at_infinity);
            let rest = ValidationReport { superlinear_at_infinity: true, ..r };
            assert!(rest.ok(), "{}: {rest:?}", nf.name());
        }
    }

    #[test]
    fn bad_exponents_rejected() {
        assert!(NFunction::power(1.0).is_err());
        assert!(NFunction::power_norm(0.5).is_err());
        assert!(NFunction::plog(0.5).is_err());
        assert!(NFunction::power(f64::NAN).is_err());
    }

    #[test]
    fn spec_strings() {
        let nf = NFunction::from_spec("power:p=3").unwrap();
        assert_eq!(nf.name(), "power:p=3");
        assert_eq!(NFunction::from_spec("cosh").unwrap().name(), "cosh");
        assert_eq!(NFunction::from_spec("power_norm:p=2").unwrap().phi(3.0), 9.0);
        assert_eq!(NFunction::from_spec("plog:p=2").unwrap().name(), "plog:p=2");
        assert!(NFunction::from_spec("power").is_err());
        assert!(NFunction::from_spec("cosh:p=2").is_err());
        assert!(NFunction::from_spec("nope:p=2").is_err());
        assert!(NFunction::from_spec("power:p=abc").is_err());
        assert!(NFunction::from_spec("power:p").is_err());
    }

    #[test]
    fn parse_matches_builtin_power() {
        let parsed = NFunction::parse("abs(x)^p / p", "abs(x)^(p-1)", &p(3.0)).unwrap();
        let builtin = NFunction::power(3.0).unwrap();
        assert!(parsed.is_strictly_convex());
        for x in log_grid(1e-4, 10.0, 50) {
            for s in [x, -x] {
                assert!((parsed.phi(s) - builtin.phi(s)).abs() <= 1e-12 * builtin.phi(s).abs().max(1.0));
                assert!((parsed.dphi(s) - builtin.dphi(s)).abs() <= 1e-12 * builtin.dphi(s).abs().max(1.0));
            }
        }
    }

    #[test]
    fn parse_matches_builtin_cosh() {
        let parsed = NFunction::parse("cosh(x) - 1", "sinh(x)", &BTreeMap::new()).unwrap();
        let builtin = NFunction::cosh();
        for x in log_grid(1e-4, 10.0, 50) {
            assert!((parsed.phi(x) - builtin.phi(x)).abs() <= 1e-12 * builtin.phi(x).max(1.0));
            assert_eq!(parsed.dphi(-x), builtin.dphi(-x));
        }
    }

    #[test]
    fn parse_plog_style_expression() {
        let nf = NFunction::parse(
            "abs(x)^2 * log(1 + abs(x))",
            "2*abs(x)*log(1+abs(x)) + abs(x)^2/(1+abs(x))",
            &BTreeMap::new(),
        )
        .unwrap();
        let builtin = NFunction::plog(2.0).unwrap();
        assert!((nf.phi(1.3) - builtin.phi(1.3)).abs() < 1e-14);
    }

    #[test]
    fn parse_rejects_wrong_derivative() {
        let err = NFunction::parse("abs(x)^3 / 3", "abs(x)", &BTreeMap::new()).unwrap_err();
        match err {
            NFunctionError::DerivativeMismatch { x, given, numerical } => {
                assert!(x > 0.0);
                assert!((given - numerical).abs() > 0.0);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn parse_rejects_non_monotone_derivative() {
        // Φ = x^2/2 + sin-like wiggle is not expressible; use a derivative that decreases.
        let err = NFunction::parse("1 - exp(-abs(x))", "exp(-abs(x))", &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, NFunctionError::NonMonotone { .. } | NFunctionError::Invalid(_)), "{err:?}");
    }

    #[test]
    fn parse_rejects_nonzero_origin_and_syntax() {
        assert!(matches!(NFunction::parse("x^2 + 1", "2*x", &BTreeMap::new()), Err(NFunctionError::Invalid(_))));
        assert!(matches!(NFunction::parse("x^", "x", &BTreeMap::new()), Err(NFunctionError::Parse(_))));
    }

    #[test]
    fn builtin_expressions_round_trip() {
        for nf in [
            NFunction::power(2.5).unwrap(),
            NFunction::power_norm(3.0).unwrap(),
            NFunction::cosh(),
            NFunction::plog(2.0).unwrap(),
        ] {
            let (phi, dphi) = nf.expressions().unwrap();
            let parsed = NFunction::parse(&phi, &dphi, nf.params()).unwrap();
            for x in log_grid(1e-4, 10.0, 40) {
                let (a, b) = (parsed.phi(x), nf.phi(x));
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{} at {x}: {a} vs {b}", nf.name());
                let (a, b) = (parsed.dphi(x), nf.dphi(x));
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{} at {x}: {a} vs {b}", nf.name());
            }
        }
    }
}
