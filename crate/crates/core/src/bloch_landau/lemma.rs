//! The image-radius lemma: for `f(0) = 0` with real `∂_C f(0)`, the image
//! of `B(0, R)` contains `O(ρ)` with `ρ = R |∂_C f(0)|² / (4 ‖∂_C f‖)`.
//!
//! Besides the radius itself this module exposes the auxiliary objects the
//! argument is built from, so each step can be checked numerically: the
//! symmetrization `g = (1 − f c⁻¹)^s`, its fourth root `Ψ` and the circle
//! mean of `|Ψ|²`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{split_norm, uniform_norm, NormConfig, NormReport};
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::series::Series;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RhoReport {
    pub rho: f64,
    /// `‖∂_C f‖`; absent in the vacuous case `∂_C f(0) = 0`.
    pub derivative_norm: Option<NormReport>,
}

fn require_vanishing_at_origin(f: &Series) -> Result<()> {
    if f.coeff(0).norm() > tol::ALGEBRAIC {
        return Err(Error::Precondition("requires f(0)=0".into()));
    }
    Ok(())
}

/// `ρ = R |∂_C f(0)|² / (4 ‖∂_C f‖)`, zero when `∂_C f(0) = 0`.
pub fn rho_lemma(f: &Series, cfg: &NormConfig) -> Result<RhoReport> {
    require_vanishing_at_origin(f)?;
    let a1 = f.coeff(1);
    if a1.im_norm() > tol::ALGEBRAIC * a1.norm().max(1.0) {
        return Err(Error::Precondition("requires ∂_C f(0) ∈ R".into()));
    }
    if a1.norm() == 0.0 {
        return Ok(RhoReport { rho: 0.0, derivative_norm: None });
    }
    let norm = split_norm(&f.slice_derivative(), cfg);
    let rho = f.radius() * a1.re() * a1.re() / (4.0 * norm.value);
    Ok(RhoReport { rho, derivative_norm: Some(norm) })
}

/// `g = (1 − f c⁻¹)^s`, the symmetrization of `1 − f(q) c⁻¹`.
pub fn g_series(f: &Series, c: Quaternion) -> Result<Series> {
    require_vanishing_at_origin(f)?;
    let c_inv = c.inverse()?;
    let one = Series::new(vec![Quaternion::ONE], f.radius(), true)?;
    Ok(one.sub(&f.mul_right(c_inv)).symmetrization())
}

/// `Ψ` with `Ψ⁴ = g` and `Ψ(0) = 1`, through degree `deg g`.
pub fn fourth_root_series(g: &Series) -> Result<Series> {
    fourth_root_series_to(g, g.degree())
}

/// Fourth root through an explicit degree (coefficients of `g` beyond its
/// degree are zero).
///
/// From `4 g Ψ' = g' Ψ`: `ψₙ = (1/4n) Σ_{k=1..n} (5k − 4n) g_k ψ_{n−k}`.
pub fn fourth_root_series_to(g: &Series, degree: usize) -> Result<Series> {
    let g0 = g.coeff(0);
    if (g0 - Quaternion::ONE).norm() > tol::ALGEBRAIC {
        return Err(Error::Precondition("requires g(0) = 1".into()));
    }
    let scale = g.coeffs().iter().map(|a| a.norm()).fold(1.0, f64::max);
    if g.max_imaginary() > tol::ALGEBRAIC * scale {
        return Err(Error::Precondition("requires real coefficients".into()));
    }
    let gk: Vec<f64> = (0..=degree).map(|k| g.coeff(k).re()).collect();
    let mut psi = vec![0.0; degree + 1];
    psi[0] = 1.0;
    for n in 1..=degree {
        let mut acc = 0.0;
        for k in 1..=n {
            acc += (5.0 * k as f64 - 4.0 * n as f64) * gk[k] * psi[n - k];
        }
        psi[n] = acc / (4.0 * n as f64);
    }
    Series::truncated(psi.into_iter().map(Quaternion::real).collect(), g.radius())
}

/// `max_n |(Ψ*Ψ*Ψ*Ψ)ₙ − gₙ|` for `n ≤ deg g`.
pub fn fourth_root_residual(psi: &Series, g: &Series) -> f64 {
    let p2 = psi.star(psi);
    let p4 = p2.star(&p2);
    (0..=g.degree()).map(|n| (p4.coeff(n) - g.coeff(n)).norm()).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParsevalCheck {
    /// Trapezoid mean of `|Ψ(r e^{Iθ})|²`.
    pub integral: f64,
    /// `Σ r^{2m} |ψ_m|²`.
    pub coeff_sum: f64,
}

impl ParsevalCheck {
    pub fn gap(&self) -> f64 {
        (self.integral - self.coeff_sum).abs()
    }
}

pub fn parseval_mean(psi: &Series, r: f64, unit: UnitImaginary, n_theta: usize) -> Result<ParsevalCheck> {
    if r < 0.0 || r >= psi.radius() {
        return Err(Error::OutsideBall { norm: r, radius: psi.radius() });
    }
    if n_theta == 0 {
        return Err(Error::Precondition("needs at least one quadrature node".into()));
    }
    let integral = (0..n_theta)
        .map(|k| {
            let t = TAU * k as f64 / n_theta as f64;
            psi.eval_unchecked(unit.embed(r * t.cos(), r * t.sin())).norm_sqr()
        })
        .sum::<f64>()
        / n_theta as f64;
    let coeff_sum = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, a)| r.powi(2 * m as i32) * a.norm_sqr())
        .sum();
    Ok(ParsevalCheck { integral, coeff_sum })
}

/// The chain of estimates for a point `c` outside `f(B)`:
///
/// `1 + |c|⁻¹ ‖∂_C f‖ R ≥ sup |g|^{1/2} ≥ mean_{|z|=r} |g|^{1/2}
///   = Σ r^{2m} |ψ_m|² ≥ 1 + r² |∂_C f(0)|² |Re c|² / (4 |c|⁴)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaChain {
    pub m_bound: f64,
    pub sup_sqrt_g: f64,
    pub mean_sqrt_g: f64,
    pub psi_sum: f64,
    pub lower: f64,
}

impl LemmaChain {
    /// Smallest slack along the chain; negative means a link failed.
    pub fn min_slack(&self) -> f64 {
        [
            self.m_bound - self.sup_sqrt_g,
            self.sup_sqrt_g - self.mean_sqrt_g,
            self.psi_sum - self.lower,
            self.m_bound - self.lower,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates every link of [`LemmaChain`] at radius `r < R`. `c` must lie
/// outside the image; the caller is responsible for that.
pub fn lemma_chain(f: &Series, c: Quaternion, r: f64, cfg: &NormConfig) -> Result<LemmaChain> {
    if !(r > 0.0 && r < f.radius()) {
        return Err(Error::OutsideBall { norm: r, radius: f.radius() });
    }
    let a1 = f.coeff(1);
    if a1.im_norm() > tol::ALGEBRAIC * a1.norm().max(1.0) {
        return Err(Error::Precondition("requires ∂_C f(0) ∈ R".into()));
    }
    let g = g_series(f, c)?;
    let cn = c.norm();
    let m_bound = 1.0 + split_norm(&f.slice_derivative(), cfg).value * f.radius() / cn;
    let sup_sqrt_g = uniform_norm(&g, cfg).value.sqrt();
    let n_theta = 4096;
    let mean_sqrt_g = (0..n_theta)
        .map(|k| {
            let t = TAU * k as f64 / n_theta as f64;
            g.eval_unchecked(Quaternion::new(r * t.cos(), r * t.sin(), 0.0, 0.0)).norm().sqrt()
        })
        .sum::<f64>()
        / n_theta as f64;
    let psi = fourth_root_series_to(&g, 96)?;
    let psi_sum = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, a)| r.powi(2 * m as i32) * a.norm_sqr())
        .sum();
    let lower = 1.0 + r * r * a1.norm_sqr() * c.re() * c.re() / (4.0 * cn.powi(4));
    Ok(LemmaChain { m_bound, sup_sqrt_g, mean_sqrt_g, psi_sum, lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: Quaternion = Quaternion::ONE;
    const ZERO: Quaternion = Quaternion::ZERO;

    fn cfg() -> NormConfig {
        NormConfig { sphere_grid: 256, ..NormConfig::default() }
    }

    #[test]
    fn rho_of_identity() {
        let r = rho_lemma(&Series::identity(1.0).unwrap(), &cfg()).unwrap();
        assert_eq!(r.rho, 0.25);
    }

    #[test]
    fn rho_vacuous_and_hypotheses() {
        let f = Series::polynomial(vec![ZERO, ZERO, Quaternion::J], 1.0).unwrap();
        assert_eq!(rho_lemma(&f, &cfg()).unwrap().rho, 0.0);
        let bad0 = Series::from_reals(&[0.1, 1.0], 1.0).unwrap();
        assert_eq!(rho_lemma(&bad0, &cfg()).unwrap_err(), Error::Precondition("requires f(0)=0".into()));
        let bad1 = Series::polynomial(vec![ZERO, Quaternion::I], 1.0).unwrap();
        assert!(matches!(rho_lemma(&bad1, &cfg()), Err(Error::Precondition(m)) if m.contains("∂_C f(0)")));
    }

    #[test]
    fn g_of_identity() {
        let g = g_series(&Series::identity(1.0).unwrap(), ONE).unwrap();
        assert_eq!(g.coeffs(), &[ONE, Quaternion::real(-2.0), ONE]);
        assert!(g_series(&Series::identity(1.0).unwrap(), ZERO).is_err());
    }

    #[test]
    fn fourth_root_examples() {
        let one = Series::constant(ONE, 1.0).unwrap();
        assert_eq!(fourth_root_series(&one).unwrap().coeffs(), &[ONE]);

        let g = Series::from_reals(&[1.0, -2.0, 1.0], 1.0).unwrap();
        let psi = fourth_root_series_to(&g, 4).unwrap();
        let expected = [1.0, -0.5, -0.125, -0.0625, -5.0 / 128.0];
        for (n, e) in expected.iter().enumerate() {
            assert!((psi.coeff(n).re() - e).abs() < 1e-15, "ψ_{n}");
        }
        assert!(fourth_root_series(&Series::from_reals(&[2.0, 1.0], 1.0).unwrap()).is_err());
        let complex = Series::polynomial(vec![ONE, Quaternion::I], 1.0).unwrap();
        assert!(fourth_root_series(&complex).is_err());
    }

    #[test]
    fn parseval_examples() {
        let one = Series::constant(ONE, 1.0).unwrap();
        let p = parseval_mean(&one, 0.5, UnitImaginary::I, 64).unwrap();
        assert_eq!((p.integral, p.coeff_sum), (1.0, 1.0));
        let lin = Series::from_reals(&[1.0, 1.0], 1.0).unwrap();
        let p = parseval_mean(&lin, 0.5, UnitImaginary::K, 64).unwrap();
        assert!((p.integral - 1.25).abs() < 1e-15);
        assert!((p.coeff_sum - 1.25).abs() < 1e-15);
    }
}
