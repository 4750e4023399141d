use super::{NFunction, NFunctionError, Result};
use crate::numeric::adaptive_simpson;

/// Default number of initial quadrature panels for numerical complements.
pub const DEFAULT_RESOLUTION: usize = 16;

const QUAD_REL_TOL: f64 = 1e-10;

/// `Ψ(y) = ∫_0^y (Φ′)^{-1}(t) dt` with the generalized inverse
/// `(Φ′)^{-1}(y) = sup{t : Φ′(t) ≤ y}` found by bisection on `[0, x_max]`.
pub struct NumericComplement {
    base: NFunction,
    x_max: f64,
    limit: f64,
    panels: usize,
}

impl NumericComplement {
    pub fn new(base: NFunction, x_max: f64, panels: usize) -> Result<Self> {
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(NFunctionError::Argument(format!("x_max = {x_max} must be positive and finite")));
        }
        if panels == 0 {
            return Err(NFunctionError::Argument("resolution must be at least 1".into()));
        }
        let limit = base.dphi(x_max);
        if !(limit > 0.0 && limit.is_finite()) {
            return Err(NFunctionError::Invalid(format!("Φ′({x_max}) = {limit}")));
        }
        Ok(NumericComplement { base, x_max, limit, panels })
    }

    /// Largest `y` for which the inverse is bracketed.
    pub fn range_limit(&self) -> f64 {
        self.limit
    }

    pub fn base(&self) -> &NFunction {
        &self.base
    }

    /// `(Φ′)^{-1}(y)` for `y ≥ 0`; NaN outside `[0, Φ′(x_max)]`.
    pub fn inverse_derivative(&self, y: f64) -> f64 {
        if y > self.limit || y.is_nan() {
            return f64::NAN;
        }
        if y == self.limit {
            return self.x_max;
        }
        let (mut lo, mut hi) = (0.0f64, self.x_max);
        // keep Φ′(lo) <= y < Φ′(hi); the midpoint stalls once the bracket is one ulp wide
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.base.dphi(mid) <= y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn psi(&self, y: f64) -> f64 {
        if y > self.limit || y.is_nan() {
            return f64::NAN;
        }
        if y == 0.0 {
            return 0.0;
        }
        adaptive_simpson(|t| self.inverse_derivative(t), 0.0, y, self.panels, QUAD_REL_TOL, 0.0)
    }
}

/// A complementary pair `(Φ, Ψ)` for evaluating Young's inequality.
pub struct YoungPair {
    pub phi: NFunction,
    pub psi: NFunction,
}

impl YoungPair {
    /// Pair `nf` with its complement, bracketing the inverse up to `b_max`.
    pub fn new(nf: &NFunction, b_max: f64) -> Result<Self> {
        let x_max = nf.bracket_for(b_max)?;
        Ok(YoungPair { phi: nf.clone(), psi: nf.complementary(x_max, DEFAULT_RESOLUTION)? })
    }

    /// Same as [`YoungPair::new`] but always uses the numerical complement.
    pub fn numeric(nf: &NFunction, b_max: f64) -> Result<Self> {
        let x_max = nf.bracket_for(b_max)?;
        Ok(YoungPair { phi: nf.clone(), psi: nf.numeric_complementary(x_max, DEFAULT_RESOLUTION)? })
    }

    /// `Φ(a) + Ψ(b) − ab`.
    pub fn gap(&self, a: f64, b: f64) -> Result<f64> {
        if !(a >= 0.0 && b >= 0.0) {
            return Err(NFunctionError::Argument(format!("Young's inequality needs a, b >= 0 (got {a}, {b})")));
        }
        Ok(self.phi.eval_phi(a)? + self.psi.eval_phi(b)? - a * b)
    }
}

/// `Φ(a) + Ψ(b) − ab` for non-negative `a`, `b`; non-negative, and zero
/// exactly when `b = Φ′(a)`.
pub fn young_gap(nf: &NFunction, a: f64, b: f64) -> Result<f64> {
    YoungPair::new(nf, b.max(1.0))?.gap(a, b)
}
