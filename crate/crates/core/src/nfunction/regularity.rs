//! Empirical Δ₂(0) / ∇₂(0) certificates.
//!
//! The conditions quantify over all small `x`; these scans only look at a
//! log-spaced grid covering six decades below the cutoff `x0`. A certificate
//! records the grid it was computed on.

use serde::Serialize;

use super::{NFunction, NFunctionError, Result};
use crate::numeric::log_grid;

pub const DEFAULT_GRID_POINTS: usize = 512;

/// Decades below `x0` covered by the scan grid.
const SCAN_DECADES: f64 = 6.0;

/// Slack for comparisons that hold with equality in exact arithmetic
/// (e.g. `c = 2^{1/(p-1)}` for power functions).
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityKind {
    Delta2,
    Nabla2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityCertificate {
    pub kind: RegularityKind,
    pub x0: f64,
    /// `K` for Δ₂, `c` for ∇₂.
    pub constant: f64,
    pub grid_points: usize,
    pub passed: bool,
    /// Grid points skipped because `Φ(x)` underflowed to zero.
    pub skipped: usize,
}

fn scan_grid(x0: f64, grid_points: usize) -> Result<Vec<f64>> {
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(NFunctionError::Argument(format!("x0 = {x0} must be positive")));
    }
    if grid_points == 0 {
        return Err(NFunctionError::Argument("grid_points must be positive".into()));
    }
    Ok(log_grid(x0 * 10f64.powf(-SCAN_DECADES), x0, grid_points))
}

/// `K = max Φ(2x)/Φ(x)` over the grid in `(0, x0]`.
pub fn certify_delta2(nf: &NFunction, x0: f64, grid_points: usize) -> Result<RegularityCertificate> {
    let grid = scan_grid(x0, grid_points)?;
    let mut k = f64::NEG_INFINITY;
    let mut skipped = 0;
    for x in grid {
        let base = nf.phi(x);
        if base == 0.0 {
            skipped += 1;
            continue;
        }
        k = k.max(nf.phi(2.0 * x) / base);
    }
    Ok(RegularityCertificate {
        kind: RegularityKind::Delta2,
        x0,
        constant: k,
        grid_points,
        passed: k.is_finite() && k > 2.0,
        skipped,
    })
}

/// Candidates `2^{j/16}`, `j = 1..=64`; contains `√2` and `2` exactly as
/// floating-point powers of two.
pub fn default_c_grid() -> Vec<f64> {
    (1..=64).map(|j| 2f64.powf(j as f64 / 16.0)).collect()
}

/// First `c` in `c_grid` with `Φ(x) ≤ Φ(cx)/(2c)` on the grid in `(0, x0]`.
pub fn certify_nabla2(nf: &NFunction, x0: f64, c_grid: &[f64], grid_points: usize) -> Result<RegularityCertificate> {
    if c_grid.is_empty() {
        return Err(NFunctionError::Argument("empty candidate list for c".into()));
    }
    if let Some(c) = c_grid.iter().find(|&&c| !(c > 1.0 && c.is_finite())) {
        return Err(NFunctionError::Argument(format!("candidate c = {c} must exceed 1")));
    }
    let grid = scan_grid(x0, grid_points)?;
    let skipped = grid.iter().filter(|&&x| nf.phi(x) == 0.0).count();
    let holds = |c: f64| grid.iter().all(|&x| nf.phi(x) <= nf.phi(c * x) / (2.0 * c) * (1.0 + BOUNDARY_SLACK));
    let found = c_grid.iter().copied().find(|&c| holds(c));
    Ok(RegularityCertificate {
        kind: RegularityKind::Nabla2,
        x0,
        constant: found.unwrap_or(*c_grid.last().unwrap()),
        grid_points,
        passed: found.is_some(),
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthBoundReport {
    pub passed: bool,
    /// Largest `(xΦ′(x) − KΦ(x)) / Φ(x)` seen; non-positive when the bound holds.
    pub max_violation: f64,
    /// Largest `(Ψ(Φ′(x)) − (K−1)Φ(x)) / Φ(x)` with `Ψ(Φ′(x)) = xΦ′(x) − Φ(x)`.
    pub max_conjugate_violation: f64,
}

/// Checks `xΦ′(x) ≤ KΦ(x)` and `Ψ(Φ′(x)) ≤ (K−1)Φ(x)` on the grid in `(0, x0]`,
/// evaluating `Ψ(Φ′(x))` through the equality case of Young's inequality.
pub fn check_growth_bounds(nf: &NFunction, x0: f64, k: f64, grid_points: usize) -> Result<GrowthBoundReport> {
    let grid = scan_grid(x0, grid_points)?;
    let mut worst = f64::NEG_INFINITY;
    let mut worst_conj = f64::NEG_INFINITY;
    for x in grid {
        let phi = nf.phi(x);
        if phi == 0.0 {
            continue;
        }
        let x_dphi = x * nf.dphi(x);
        worst = worst.max((x_dphi - k * phi) / phi);
        let psi_of_dphi = x_dphi - phi;
        worst_conj = worst_conj.max((psi_of_dphi - (k - 1.0) * phi) / phi);
    }
    Ok(GrowthBoundReport {
        passed: worst <= BOUNDARY_SLACK && worst_conj <= BOUNDARY_SLACK,
        max_violation: worst,
        max_conjugate_violation: worst_conj,
    })
}
