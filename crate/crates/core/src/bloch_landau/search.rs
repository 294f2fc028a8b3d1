//! Constructive search for a translated copy of `f` whose image contains
//! a large set `O(ρ)`, for `f` normalized by `f(0) = 0`, `∂_C f(0) = 1`.
//!
//! With `M(t) = max_{|q| ≤ t} |∂_C f(q)|` and `μ(s) = s M(r − s)`:
//! `R = s*/2` where `s*` is the smallest root of `μ(s) = r`, `w` is a point of
//! `|w| = r − 2R` with `|∂_C f(w)| = M(r − 2R)`, and
//! `φ = (f̃_w − f(w)) · conj(∂_C f(w)) / |∂_C f(w)|`.
//! Then `∂_C φ(0) = r / 2R` and `‖∂_C φ‖ ≤ 2√2 r / R` on `B(0, R)`, so the
//! image-radius lemma yields `ρ(r) ≥ r / (32√2)`.

use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{split_norm, sup_norm_ball, sup_norm_ball_with_arg, NormConfig, NormReport};
use crate::quaternion::Quaternion;
use crate::series::Series;
use crate::slice::regular_translation;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub norm: NormConfig,
    /// Points of the bracketing grid for `μ(s) = r` on `[0, r]`.
    pub mu_grid: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { norm: NormConfig::default(), mu_grid: 1024 }
    }
}

/// Margins of the checks performed on the constructed `φ`. Gaps must be
/// small, margins nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchChecks {
    /// `| |w| + 2R − r |`.
    pub radius_gap: f64,
    /// `|φ(0)|`.
    pub phi_at_origin: f64,
    /// `|∂_C φ(0) − r / 2R|`, imaginary part included.
    pub derivative_gap: f64,
    /// `2√2 r / R + tol − ‖∂_C φ‖`.
    pub bound_margin: f64,
    /// `ρ(r) − r / (32√2) + 1e-6`.
    pub rho_margin: f64,
}

impl SearchChecks {
    pub fn passed(&self) -> bool {
        self.radius_gap <= tol::MU_ROOT
            && self.phi_at_origin <= tol::MU_ROOT
            && self.derivative_gap <= tol::MU_ROOT
            && self.bound_margin >= 0.0
            && self.rho_margin >= 0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub r: f64,
    #[serde(rename = "R_r")]
    pub big_r: f64,
    pub w: Quaternion,
    /// Unit `∂_C f(w) / |∂_C f(w)|` rotating `O(ρ)` into the image of `f̃_w`.
    pub rotation: Quaternion,
    pub rho_r: f64,
    pub f_w: Quaternion,
    /// `M(r − 2R) = |∂_C f(w)|`.
    pub derivative_at_w: f64,
    pub phi_derivative_at_origin: Quaternion,
    /// `‖∂_C φ‖` on `B(0, R)`.
    pub phi_derivative_norm: NormReport,
    /// `2√2 r / R`.
    pub derivative_bound: f64,
    /// `r / (32√2)`.
    pub lower_bound: f64,
    pub checks: SearchChecks,
    /// `(s, μ(s))` on the bracketing grid.
    pub mu_profile: Vec<(f64, f64)>,
    /// `φ` on `B(0, 2R)`.
    pub phi: Series,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

fn require_normalized(f: &Series) -> Result<()> {
    if f.coeff(0).norm() > tol::ALGEBRAIC {
        return Err(Error::Precondition("requires f(0)=0".into()));
    }
    if (f.coeff(1) - Quaternion::ONE).norm() > tol::ALGEBRAIC {
        return Err(Error::Precondition("requires ∂_C f(0)=1".into()));
    }
    Ok(())
}

/// Runs the full construction at working radius `r`.
pub fn bl_search(f: &Series, r: f64, cfg: &SearchConfig) -> Result<SearchReport> {
    require_normalized(f)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Precondition(format!("requires 0 < r < 1, got {r}")));
    }
    if r >= f.radius() {
        return Err(Error::OutsideBall { norm: r, radius: f.radius() });
    }
    let df = f.slice_derivative();
    let mu = |s: f64| -> Result<f64> { Ok(s * sup_norm_ball(&df, (r - s).max(0.0), &cfg.norm)?.value) };

    let n = cfg.mu_grid.max(2);
    let grid: Vec<f64> = (0..n).map(|k| if k == n - 1 { r } else { r * k as f64 / (n - 1) as f64 }).collect();
    let values: Vec<f64> = grid.par_iter().map(|&s| mu(s)).collect::<Result<_>>()?;
    let mu_profile: Vec<(f64, f64)> = grid.iter().copied().zip(values.iter().copied()).collect();

    let k = values.iter().position(|&v| v >= r).ok_or_else(|| {
        let peak = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Error::Numerical(format!("no root of mu(s) = {r} on a {n}-point grid; max mu = {peak}"))
    })?;
    let (mut lo, mut hi) = if k == 0 { (0.0, 0.0) } else { (grid[k - 1], grid[k]) };
    while hi - lo > 0.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mu(mid)? >= r {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let big_r = hi / 2.0;
    if big_r <= 0.0 {
        return Err(Error::Numerical("mu(s) = r has root s = 0".into()));
    }

    let (m_at, w) = sup_norm_ball_with_arg(&df, r - hi, &cfg.norm)?;
    let dfw = df.eval(w)?;
    let dfw_norm = dfw.norm();
    let unit = dfw.conj() / dfw_norm;
    let f_w = f.eval(w)?;

    let translated = regular_translation(f, w)?;
    let shifted = translated.sub(&Series::constant(f_w, translated.radius())?);
    let phi = shifted.mul_right(unit).restrict(2.0 * big_r)?;
    let phi_r = phi.restrict(big_r)?;
    let a1 = phi_r.coeff(1);
    let phi_derivative_norm = split_norm(&phi_r.slice_derivative(), &cfg.norm);
    let rho_r = big_r * a1.norm_sqr() / (4.0 * phi_derivative_norm.value);

    let derivative_bound = 2.0 * SQRT_2 * r / big_r;
    let lower_bound = r / (32.0 * SQRT_2);
    let checks = SearchChecks {
        radius_gap: (w.norm() + 2.0 * big_r - r).abs(),
        phi_at_origin: phi.coeff(0).norm(),
        derivative_gap: (a1 - Quaternion::real(r / (2.0 * big_r))).norm(),
        bound_margin: derivative_bound + phi_derivative_norm.certified_tol - phi_derivative_norm.value,
        rho_margin: rho_r - lower_bound + 1e-6,
    };
    debug_assert!((m_at.value - dfw_norm).abs() <= 1e-9 * dfw_norm.max(1.0));

    Ok(SearchReport {
        r,
        big_r,
        w,
        rotation: dfw / dfw_norm,
        rho_r,
        f_w,
        derivative_at_w: dfw_norm,
        phi_derivative_at_origin: a1,
        phi_derivative_norm,
        derivative_bound,
        lower_bound,
        checks,
        mu_profile,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::NormConfig;

    fn quick() -> SearchConfig {
        SearchConfig { norm: NormConfig { sphere_grid: 128, theta_grid: 128, ..NormConfig::default() }, mu_grid: 128 }
    }

    #[test]
    fn identity_closed_form() {
        let f = Series::identity(1.0).unwrap();
        let rep = bl_search(&f, 0.99, &quick()).unwrap();
        assert_eq!(rep.big_r, 0.495);
        assert_eq!(rep.w, Quaternion::ZERO);
        assert!((rep.rho_r - 0.12375).abs() < 1e-12);
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn cubic_perturbation() {
        let f = Series::from_reals(&[0.0, 1.0, 0.0, 0.5], 1.0).unwrap();
        let rep = bl_search(&f, 0.9, &quick()).unwrap();
        assert!(rep.checks.radius_gap < 1e-9);
        assert!((rep.rotation.norm() - 1.0).abs() < 1e-12);
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn normalization_required() {
        let f = Series::from_reals(&[0.0, 2.0], 1.0).unwrap();
        assert_eq!(
            bl_search(&f, 0.5, &quick()).unwrap_err(),
            Error::Precondition("requires ∂_C f(0)=1".into())
        );
        let g = Series::from_reals(&[0.1, 1.0], 1.0).unwrap();
        assert!(bl_search(&g, 0.5, &quick()).is_err());
        assert!(bl_search(&Series::identity(1.0).unwrap(), 1.0, &quick()).is_err());
    }
}
