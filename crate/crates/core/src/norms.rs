//! Uniform norms on balls, the slice norm `‖f‖_I` and the split norm
//! `‖f‖ = sup_I ‖f‖_I`.
//!
//! For `f_I = F + G J`, `‖f‖_I² = ‖F‖²_{B_I} + ‖G‖²_{B_I}`. Suprema over
//! discs are taken on the boundary circle (maximum modulus) by grid search
//! with golden-section refinement; suprema over `S` use a deterministic
//! sphere lattice followed by a compass search on the best candidates.
//! Extrema over a single sphere `x + yS` are closed form.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::maximize;
use crate::quaternion::{unit_of, Quaternion, UnitImaginary};
use crate::series::Series;
use crate::slice::{sphere_pair_unchecked, split, ComplexSeries, SplitPair};
use crate::sphere::{sphere_sample, tangent_step};
use crate::tol;

/// Grid resolutions and seed for norm computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormConfig {
    /// Points per boundary circle (and per half circle of sphere parameters).
    pub theta_grid: usize,
    /// Samples of `S` for suprema over imaginary units.
    pub sphere_grid: usize,
    pub seed: u64,
    /// Step (radians) at which the compass search over `S` stops.
    pub sphere_step: f64,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self { theta_grid: 512, sphere_grid: 2048, seed: 0, sphere_step: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "grid+refine")]
    GridRefine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub theta: usize,
    pub sphere: usize,
}

/// A computed norm with the convergence gap of its refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    pub method: NormMethod,
    pub resolution: Resolution,
    pub certified_tol: f64,
}

impl NormReport {
    fn closed_form(value: f64) -> Self {
        Self {
            value,
            method: NormMethod::ClosedForm,
            resolution: Resolution { theta: 0, sphere: 0 },
            certified_tol: floor_tol(value),
        }
    }
}

fn floor_tol(value: f64) -> f64 {
    tol::CERTIFIED_FLOOR * value.abs().max(1.0)
}

/// Minimum and maximum of `|b + I c|` over `I ∈ S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereExtrema {
    pub min: f64,
    pub max: f64,
}

/// `|b + Ic|² = |b|² + |c|² + 2 Re(b̄ I c)` and `Re(b̄ I c) = −⟨I, Im(c b̄)⟩`,
/// so the extremes are `|b|² + |c|² ± 2 |Im(c b̄)|`.
pub fn sphere_extrema(b: Quaternion, c: Quaternion) -> SphereExtrema {
    let base = b.norm_sqr() + c.norm_sqr();
    let cross = 2.0 * (c * b.conj()).im_norm();
    SphereExtrema { min: (base - cross).max(0.0).sqrt(), max: (base + cross).sqrt() }
}

/// A unit attaining the maximum of `|b + Ic|`; `i` when the modulus is
/// constant on the sphere.
pub fn sphere_argmax(b: Quaternion, c: Quaternion) -> UnitImaginary {
    unit_of(-(c * b.conj())).unwrap_or(UnitImaginary::I)
}

/// A unit attaining the minimum of `|b + Ic|`.
pub fn sphere_argmin(b: Quaternion, c: Quaternion) -> UnitImaginary {
    sphere_argmax(b, c).neg()
}

fn sup_on_sphere_radius(f: &Series, s: f64, cfg: &NormConfig) -> NormReport {
    if f.degree() == 0 || s == 0.0 {
        return NormReport::closed_form(f.coeff(0).norm());
    }
    let m = maximize(
        |theta| {
            let p = sphere_pair_unchecked(f, s * theta.cos(), s * theta.sin());
            sphere_extrema(p.b, p.c).max
        },
        0.0,
        PI,
        cfg.theta_grid,
        false,
    );
    NormReport {
        value: m.value,
        method: NormMethod::GridRefine,
        resolution: Resolution { theta: cfg.theta_grid, sphere: 0 },
        certified_tol: m.gap.max(floor_tol(m.value)),
    }
}

/// `M(s) = max_{|q| ≤ s} |f(q)|`, attained on the sphere `|q| = s`.
pub fn sup_norm_ball(f: &Series, s: f64, cfg: &NormConfig) -> Result<NormReport> {
    if s < 0.0 || s >= f.radius() {
        return Err(Error::OutsideBall { norm: s, radius: f.radius() });
    }
    Ok(sup_on_sphere_radius(f, s, cfg))
}

/// `M(s)` together with a point `q`, `|q| = s`, where it is attained.
pub fn sup_norm_ball_with_arg(f: &Series, s: f64, cfg: &NormConfig) -> Result<(NormReport, Quaternion)> {
    let report = sup_norm_ball(f, s, cfg)?;
    if f.degree() == 0 || s == 0.0 {
        return Ok((report, Quaternion::real(s)));
    }
    let at = |theta: f64| {
        let (x, y) = (s * theta.cos(), s * theta.sin());
        let p = sphere_pair_unchecked(f, x, y);
        (sphere_extrema(p.b, p.c).max, sphere_argmax(p.b, p.c).embed(x, y))
    };
    let m = maximize(|theta| at(theta).0, 0.0, PI, cfg.theta_grid, false);
    Ok((report, at(m.arg).1))
}

/// The uniform norm `‖f‖_B` on the whole ball `B(0, R)`.
pub fn uniform_norm(f: &Series, cfg: &NormConfig) -> NormReport {
    sup_on_sphere_radius(f, f.radius(), cfg)
}

/// `min_{|q| ≤ s} |f(q)|`, searched over the half disc of sphere
/// parameters `(x, y)`, `y ≥ 0`.
pub fn inf_norm_ball(f: &Series, s: f64, cfg: &NormConfig) -> Result<NormReport> {
    if s < 0.0 || s > f.radius() {
        return Err(Error::OutsideBall { norm: s, radius: f.radius() });
    }
    if f.degree() == 0 || s == 0.0 {
        return Ok(NormReport::closed_form(f.coeff(0).norm()));
    }
    let min_at = |x: f64, y: f64| {
        let p = sphere_pair_unchecked(f, x, y);
        sphere_extrema(p.b, p.c).min
    };
    let n_radii = 64usize;
    let n_angles = cfg.theta_grid / 2 + 1;
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(n_radii * n_angles + 1);
    grid.push((0.0, 0.0, min_at(0.0, 0.0)));
    for ri in 1..=n_radii {
        let rho = s * ri as f64 / n_radii as f64;
        for ti in 0..n_angles {
            let t = PI * ti as f64 / (n_angles - 1) as f64;
            let (x, y) = (rho * t.cos(), rho * t.sin());
            grid.push((x, y, min_at(x, y)));
        }
    }
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].2.total_cmp(&grid[b].2).then(a.cmp(&b)));

    let clamp = |x: f64, y: f64| {
        let y = y.max(0.0);
        let r = x.hypot(y);
        if r > s {
            (x * s / r, y * s / r)
        } else {
            (x, y)
        }
    };
    let mut best = grid[order[0]].2;
    let mut gap = 0.0f64;
    for &idx in order.iter().take(4) {
        let (mut x, mut y, mut v) = grid[idx];
        let mut step = s / n_radii as f64;
        let mut tail_gain = 0.0;
        while step > 1e-10 {
            let mut moved = false;
            for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let (cx, cy) = clamp(x + dx * step, y + dy * step);
                let cv = min_at(cx, cy);
                if cv < v {
                    if step < 1e-6 {
                        tail_gain += v - cv;
                    }
                    (x, y, v) = (cx, cy, cv);
                    moved = true;
                    break;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        if v < best {
            best = v;
            gap = tail_gain;
        }
    }
    Ok(NormReport {
        value: best,
        method: NormMethod::GridRefine,
        resolution: Resolution { theta: cfg.theta_grid, sphere: 0 },
        certified_tol: gap.max(floor_tol(best)),
    })
}

/// `sup_{|z| = R} |F(z)|` and its refinement gap.
fn circle_sup(series: &ComplexSeries, radius: f64, cfg: &NormConfig) -> (f64, f64) {
    if series.coeffs.iter().skip(1).all(|a| a.norm_sqr() == 0.0) {
        return (series.coeffs.first().map_or(0.0, |a| a.norm()), 0.0);
    }
    let m = maximize(
        |theta| series.eval(Complex64::from_polar(radius, theta)).norm_sqr(),
        0.0,
        TAU,
        cfg.theta_grid,
        true,
    );
    let value = m.value.sqrt();
    // gap reported on |F|, not |F|²
    (value, m.gap / (2.0 * value).max(1e-300))
}

fn slice_norm_of_split(pair: &SplitPair, cfg: &NormConfig) -> (f64, f64) {
    let (nf, gf) = circle_sup(&pair.f, pair.radius, cfg);
    let (ng, gg) = circle_sup(&pair.g, pair.radius, cfg);
    let value = nf.hypot(ng);
    (value, gf.max(gg))
}

/// `‖f‖_I` with the canonical completion `J` of `I`.
pub fn slice_norm(f: &Series, unit: UnitImaginary, cfg: &NormConfig) -> f64 {
    slice_norm_of_split(&split(f, unit), cfg).0
}

/// `‖f‖_I` with its refinement gap.
pub fn slice_norm_report(f: &Series, unit: UnitImaginary, cfg: &NormConfig) -> NormReport {
    let (value, gap) = slice_norm_of_split(&split(f, unit), cfg);
    NormReport {
        value,
        method: NormMethod::GridRefine,
        resolution: Resolution { theta: cfg.theta_grid, sphere: 1 },
        certified_tol: gap.max(floor_tol(value)),
    }
}

/// `‖f‖_I` from an explicit split; used to check independence of `J`.
pub fn slice_norm_with_split(pair: &SplitPair, cfg: &NormConfig) -> f64 {
    slice_norm_of_split(pair, cfg).0
}

/// `sup_{z ∈ B_I} |f(z)|`, the uniform norm on one slice disc.
pub fn slice_uniform_norm(f: &Series, unit: UnitImaginary, cfg: &NormConfig) -> f64 {
    let pair = split(f, unit);
    let r = f.radius();
    maximize(
        |theta| {
            let z = Complex64::from_polar(r, theta);
            pair.f.eval(z).norm_sqr() + pair.g.eval(z).norm_sqr()
        },
        0.0,
        TAU,
        cfg.theta_grid,
        true,
    )
    .value
    .sqrt()
}

/// The split norm `‖f‖ = sup_{I ∈ S} ‖f‖_I` together with a maximizing unit.
pub fn split_norm_with_arg(f: &Series, cfg: &NormConfig) -> (NormReport, UnitImaginary) {
    if f.degree() == 0 {
        return (NormReport::closed_form(f.coeff(0).norm()), UnitImaginary::I);
    }
    let units = sphere_sample(cfg.sphere_grid.max(1), cfg.seed);
    let evals: Vec<(f64, f64)> = units
        .par_iter()
        .map(|&u| slice_norm_of_split(&split(f, u), cfg))
        .collect();
    let mut order: Vec<usize> = (0..units.len()).collect();
    order.sort_by(|&a, &b| evals[b].0.total_cmp(&evals[a].0).then(a.cmp(&b)));

    let spacing = (4.0 * PI / units.len() as f64).sqrt().min(0.5);
    let refined: Vec<(f64, f64, UnitImaginary)> = order
        .iter()
        .take(4)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&&idx| {
            let mut unit = units[idx];
            let (mut value, mut gap) = evals[idx];
            let mut step = spacing;
            let mut tail_gain = 0.0;
            let mut polls = 0usize;
            while step > cfg.sphere_step && polls < 4000 {
                let mut moved = false;
                for (du, dv) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                    polls += 1;
                    let cand = tangent_step(unit, du * step, dv * step);
                    let (cv, cg) = slice_norm_of_split(&split(f, cand), cfg);
                    if cv > value {
                        if step < 1e-5 {
                            tail_gain += cv - value;
                        }
                        unit = cand;
                        value = cv;
                        gap = cg;
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    step *= 0.5;
                }
            }
            (value, gap.max(tail_gain), unit)
        })
        .collect();

    let (mut value, mut gap, mut arg) = (evals[order[0]].0, evals[order[0]].1, units[order[0]]);
    for (v, g, u) in refined {
        if v > value {
            (value, gap, arg) = (v, g, u);
        }
    }
    let report = NormReport {
        value,
        method: NormMethod::GridRefine,
        resolution: Resolution { theta: cfg.theta_grid, sphere: units.len() },
        certified_tol: gap.max(floor_tol(value)),
    };
    (report, arg)
}

/// The split norm `‖f‖ = sup_{I ∈ S} ‖f‖_I`.
pub fn split_norm(f: &Series, cfg: &NormConfig) -> NormReport {
    split_norm_with_arg(f, cfg).0
}

/// The bound `|q⁻¹ f(q)| ≤ ‖∂_C f‖` for `f(0) = 0`, with `‖∂_C f‖`
/// computed once.
#[derive(Clone, Debug)]
pub struct MeanValueBound {
    f: Series,
    pub derivative_norm: NormReport,
}

impl MeanValueBound {
    pub fn new(f: &Series, cfg: &NormConfig) -> Result<Self> {
        if f.coeff(0).norm() > tol::ALGEBRAIC {
            return Err(Error::Precondition("requires f(0)=0".into()));
        }
        Ok(Self { f: f.clone(), derivative_norm: split_norm(&f.slice_derivative(), cfg) })
    }

    /// `‖∂_C f‖ − |q⁻¹ f(q)|`.
    pub fn margin(&self, q: Quaternion) -> Result<f64> {
        if q.norm_sqr() == 0.0 {
            return Err(Error::Precondition("requires q ≠ 0".into()));
        }
        let fq = self.f.eval(q)?;
        Ok(self.derivative_norm.value - (q.inverse()? * fq).norm())
    }

    /// `r ‖∂_C f‖ − sup_{B(0,r)} |f|`.
    pub fn ball_margin(&self, r: f64, cfg: &NormConfig) -> Result<f64> {
        Ok(r * self.derivative_norm.value - sup_norm_ball(&self.f, r, cfg)?.value)
    }
}

/// `‖∂_C f‖ − |q⁻¹ f(q)|`; must be nonnegative up to the norm's tolerance.
pub fn mean_value_margin(f: &Series, q: Quaternion, cfg: &NormConfig) -> Result<f64> {
    MeanValueBound::new(f, cfg)?.margin(q)
}
