//! Numerical certificates that a value lies in the image of a ball.
//!
//! [`attain`] runs a multistart damped Newton iteration on the map
//! `R⁴ → R⁴`, `q ↦ f(q) − target`. Success is a certificate of membership
//! in the image; failure proves nothing.

use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bloch_landau::oset::in_oset;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::Series;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonConfig {
    pub starts: usize,
    pub max_iter: usize,
    pub jacobian_step: f64,
    pub residual: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            max_iter: 200,
            jacobian_step: tol::JACOBIAN_STEP,
            residual: tol::NEWTON_RESIDUAL,
        }
    }
}

/// A preimage found by Newton's method.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Attained {
    pub point: Quaternion,
    pub residual: f64,
}

fn to_vec(q: Quaternion) -> Vector4<f64> {
    Vector4::new(q.x0, q.x1, q.x2, q.x3)
}

fn from_vec(v: &Vector4<f64>) -> Quaternion {
    Quaternion::new(v[0], v[1], v[2], v[3])
}

fn jacobian(f: &Series, q: Quaternion, h: f64) -> Matrix4<f64> {
    let mut jac = Matrix4::zeros();
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = h;
        let dq = Quaternion::from(e);
        let col = (f.eval_unchecked(q + dq) - f.eval_unchecked(q - dq)) / (2.0 * h);
        jac.set_column(k, &to_vec(col));
    }
    jac
}

/// One damped Newton run with Armijo backtracking on `½|f(q) − t|²`.
/// The iterate never leaves `B(0, R)`.
fn newton_from(f: &Series, target: Quaternion, start: Quaternion, cfg: &NewtonConfig) -> Option<Attained> {
    let radius = f.radius();
    let mut q = start;
    let mut res = f.eval_unchecked(q) - target;
    for _ in 0..cfg.max_iter {
        let rn = res.norm();
        if rn < cfg.residual {
            return Some(Attained { point: q, residual: rn });
        }
        let jac = jacobian(f, q, cfg.jacobian_step);
        // SVD pseudo-inverse: the Jacobian is rank deficient on spheres of zeros
        let svd = jac.svd(true, true);
        let eps = 1e-12 * svd.singular_values.max();
        let step = svd.solve(&(-to_vec(res)), eps).ok()?;
        let dq = from_vec(&step);
        if !dq.is_finite() || dq.norm_sqr() == 0.0 {
            return None;
        }
        let phi = 0.5 * rn * rn;
        let mut t = 1.0;
        loop {
            let cand = q + dq * t;
            if cand.norm() < radius {
                let cres = f.eval_unchecked(cand) - target;
                if 0.5 * cres.norm_sqr() <= (1.0 - 2e-4 * t) * phi {
                    q = cand;
                    res = cres;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-12 {
                return None;
            }
        }
    }
    let rn = res.norm();
    (rn < cfg.residual).then_some(Attained { point: q, residual: rn })
}

/// Start points: the origin, then seeded uniform points of `B(0, 0.9 r)`.
fn start_points(radius: f64, count: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    if count > 0 {
        pts.push(Quaternion::ZERO);
    }
    while pts.len() < count {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let q = Quaternion::from(v);
        if q.norm() < 1.0 {
            pts.push(q * (0.9 * radius));
        }
    }
    pts
}

/// Looks for `q` with `|q| < ball_radius` and `|f(q) − target| < residual`.
pub fn attain(
    f: &Series,
    target: Quaternion,
    ball_radius: f64,
    seed: u64,
    cfg: &NewtonConfig,
) -> Result<Option<Attained>> {
    if ball_radius > f.radius() || ball_radius <= 0.0 {
        return Err(Error::Precondition(format!(
            "ball radius {ball_radius} must lie in (0, {}]",
            f.radius()
        )));
    }
    Ok(start_points(ball_radius, cfg.starts, seed)
        .into_iter()
        .filter_map(|s| newton_from(f, target, s, cfg))
        .find(|a| a.point.norm() < ball_radius))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub rho: f64,
    /// `ρ (1 − margin)`: the set actually sampled.
    pub sampled_rho: f64,
    pub samples: usize,
    pub hits: usize,
    pub max_residual: f64,
    pub misses: Vec<Quaternion>,
}

impl CoverageReport {
    pub fn all_hit(&self) -> bool {
        self.hits == self.samples
    }
}

/// Seeded rejection sample of `n` points of `O(ρ)`.
pub fn sample_oset(rho: f64, n: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-rho..rho));
        let q = Quaternion::from(v);
        if in_oset(q, rho) {
            out.push(q);
        }
    }
    out
}

/// Samples the interior of `O(ρ)` and tries to attain each point as a value
/// of `f` on `B(0, R)`.
pub fn coverage_report(
    f: &Series,
    rho: f64,
    samples: usize,
    seed: u64,
    cfg: &NewtonConfig,
) -> Result<CoverageReport> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Precondition(format!("rho must be positive, got {rho}")));
    }
    let sampled_rho = rho * (1.0 - tol::COVERAGE_MARGIN);
    let targets = sample_oset(sampled_rho, samples, seed);
    let outcomes: Vec<Option<Attained>> = targets
        .par_iter()
        .enumerate()
        .map(|(k, &t)| attain(f, t, f.radius(), seed.wrapping_add(k as u64 + 1), cfg))
        .collect::<Result<_>>()?;
    let mut hits = 0;
    let mut max_residual: f64 = 0.0;
    let mut misses = Vec::new();
    for (t, o) in targets.iter().zip(&outcomes) {
        match o {
            Some(a) => {
                hits += 1;
                max_residual = max_residual.max(a.residual);
            }
            None => misses.push(*t),
        }
    }
    Ok(CoverageReport { rho, sampled_rho, samples, hits, max_residual, misses })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_attains_target() {
        let f = Series::identity(1.0).unwrap();
        let t = Quaternion::new(0.2, -0.1, 0.3, 0.05);
        let a = attain(&f, t, 1.0, 0, &NewtonConfig::default()).unwrap().unwrap();
        assert!((a.point - t).norm() < 1e-8);
    }

    #[test]
    fn square_root_of_minus_two() {
        let f = Series::from_reals(&[0.0, 0.0, 1.0], 2.0).unwrap();
        let target = Quaternion::real(-2.0);
        let a = attain(&f, target, 1.9, 0, &NewtonConfig::default()).unwrap().unwrap();
        let sq = a.point * a.point;
        assert!((sq - target).norm() < 1e-8);
        assert!(a.point.re().abs() < 1e-6);
        assert!((a.point.im_norm() - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn far_target_is_absent() {
        let f = Series::identity(1.0).unwrap();
        let got = attain(&f, Quaternion::real(10.0), 1.0, 0, &NewtonConfig::default()).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn ball_radius_must_fit() {
        let f = Series::identity(1.0).unwrap();
        assert!(attain(&f, Quaternion::ZERO, 1.5, 0, &NewtonConfig::default()).is_err());
    }

    #[test]
    fn empty_coverage_is_vacuous() {
        let f = Series::identity(1.0).unwrap();
        let r = coverage_report(&f, 0.25, 0, 0, &NewtonConfig::default()).unwrap();
        assert_eq!((r.samples, r.hits), (0, 0));
        assert!(r.all_hit());
    }

    #[test]
    fn oset_samples_are_members() {
        for q in sample_oset(0.3, 200, 5) {
            assert!(in_oset(q, 0.3));
        }
    }
}
