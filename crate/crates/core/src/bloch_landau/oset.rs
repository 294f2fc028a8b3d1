//! The open set `O(ρ) = {q : |q|³ < ρ |Re q|²}`.
//!
//! Its trace on any slice is the inside of the figure-eight
//! `(x² + y²)^{3/2} = ρ x²`, in polar form `r = ρ cos² φ`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Radius of the discs centred at `(±ρ/2, 0)` that sit inside the eight.
pub const DISC_RADIUS_FACTOR: f64 = 37.0 / 256.0;

/// Boundary points checked by [`inscribed_disc_check`].
pub const DISC_SWEEP_POINTS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OSet {
    rho: f64,
}

impl OSet {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Precondition(format!("rho must be positive, got {rho}")));
        }
        Ok(Self { rho })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        in_oset(q, self.rho)
    }
}

/// Strict membership `|q|³ < ρ Re(q)²`.
pub fn in_oset(q: Quaternion, rho: f64) -> bool {
    let n = q.norm();
    n * n * n < rho * q.re() * q.re()
}

/// `n` points of the figure-eight, ordered by polar angle from 0.
pub fn oset_slice_curve(rho: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    OSet::new(rho)?;
    if n < 16 {
        return Err(Error::Precondition(format!("curve needs at least 16 points, got {n}")));
    }
    Ok((0..n)
        .map(|k| {
            let phi = TAU * k as f64 / n as f64;
            let r = rho * phi.cos().powi(2);
            (r * phi.cos(), r * phi.sin())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscCheck {
    pub rho: f64,
    pub disc_radius: f64,
    /// `min (ρ x² − (x² + y²)^{3/2})` over the swept boundary points.
    pub min_margin: f64,
    pub points: usize,
    pub contained: bool,
    pub warning: Option<String>,
}

/// Sweeps the boundary of the disc of centre `(ρ/2, 0)` and radius
/// `(37/256) ρ²` and checks that every point is inside the eight. The
/// mirror disc follows from `x ↦ −x`.
pub fn inscribed_disc_check(rho: f64) -> Result<DiscCheck> {
    OSet::new(rho)?;
    let radius = DISC_RADIUS_FACTOR * rho * rho;
    let centre = rho / 2.0;
    let min_margin = (0..DISC_SWEEP_POINTS)
        .map(|k| {
            let t = TAU * k as f64 / DISC_SWEEP_POINTS as f64;
            let (x, y) = (centre + radius * t.cos(), radius * t.sin());
            rho * x * x - (x * x + y * y).powf(1.5)
        })
        .fold(f64::INFINITY, f64::min);
    let warning = (rho > 1.0).then(|| "claim verified only for ρ ≤ 1 by this artifact".to_string());
    Ok(DiscCheck {
        rho,
        disc_radius: radius,
        min_margin,
        points: DISC_SWEEP_POINTS,
        contained: min_margin > 0.0,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let rho = 0.3;
        assert!(in_oset(Quaternion::real(rho / 2.0), rho));
        assert!(in_oset(Quaternion::real(-rho / 2.0), rho));
        assert!(!in_oset(Quaternion::new(0.0, 0.01, 0.0, 0.0), rho));
        assert!(!in_oset(Quaternion::ZERO, rho));
        assert!(!in_oset(Quaternion::real(rho), rho));
    }

    #[test]
    fn curve_hits_axis_and_origin() {
        let pts = oset_slice_curve(0.7, 256).unwrap();
        assert_eq!(pts.len(), 256);
        assert_eq!(pts[0], (0.7, 0.0));
        assert!(pts[64].0.abs() < 1e-15 && pts[64].1.abs() < 1e-15);
        assert!((pts[128].0 + 0.7).abs() < 1e-15);
        for (x, y) in pts {
            let lhs = (x * x + y * y).powf(1.5);
            assert!((lhs - 0.7 * x * x).abs() < 1e-10);
        }
        assert!(oset_slice_curve(0.7, 15).is_err());
        assert!(oset_slice_curve(0.0, 64).is_err());
    }

    #[test]
    fn curve_scales_linearly() {
        let unit = oset_slice_curve(1.0, 64).unwrap();
        let scaled = oset_slice_curve(0.37, 64).unwrap();
        for ((x1, y1), (x, y)) in unit.iter().zip(&scaled) {
            assert!((x - 0.37 * x1).abs() < 1e-15 && (y - 0.37 * y1).abs() < 1e-15);
        }
    }

    #[test]
    fn disc_at_rho_one() {
        let d = inscribed_disc_check(1.0).unwrap();
        assert!(d.contained);
        assert!(d.warning.is_none());
        // rightmost boundary point of the disc
        let x: f64 = 0.5 + 37.0 / 256.0;
        assert!((x.powi(3) - 0.267_751_5).abs() < 1e-6);
        assert!((x * x - 0.415_420).abs() < 1e-6);
        assert!(d.min_margin <= x * x - x.powi(3));
    }

    #[test]
    fn disc_warning_above_one() {
        let d = inscribed_disc_check(2.0).unwrap();
        assert!(d.warning.is_some());
    }
}
