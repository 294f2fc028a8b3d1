//! Verification suites over the built-in corpus, seeded random functions
//! and an optional user function. Every check records its measured value,
//! the tolerance it is held to, and the resulting margin.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bloch_landau::{
    bl_search, coverage_report, fourth_root_residual, fourth_root_series, g_series, inscribed_disc_check, lemma_chain,
    parseval_mean, rho_lemma, NewtonConfig, SearchConfig,
};
use crate::corpus::{normalized_corpus, random_normalized, random_polynomial, random_quaternion, rng};
use crate::error::{Error, Result};
use crate::norms::{
    inf_norm_ball, slice_norm, slice_norm_with_split, sphere_extrema, split_norm, sup_norm_ball, uniform_norm,
    MeanValueBound, NormConfig,
};
use crate::quaternion::{orthonormal_completion, Quaternion, UnitImaginary};
use crate::series::{star_pointwise, Series};
use crate::slice::{
    ext_from_slice, regular_translation, representation_eval, split, split_with, sphere_pair_unchecked,
    translation_unit,
};
use crate::sphere::sphere_sample;
use crate::tol;

/// Allowed violation of the norm inequalities, covering grid error.
pub const GRID_TOL: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    Slice,
    Norms,
    BlochLandau,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Algebra, Suite::Slice, Suite::Norms, Suite::BlochLandau];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Slice => "slice",
            Suite::Norms => "norms",
            Suite::BlochLandau => "bloch-landau",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}` (algebra, slice, norms, bloch-landau)")))
    }
}

/// Direction of the comparison a check makes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = ">")]
    Exceeds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub tolerance: f64,
    /// Distance to failure; negative iff the check failed.
    pub margin: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let margin = tolerance - value;
        Self { suite, name: name.into(), value, relation: Relation::AtMost, tolerance, margin, passed: value <= tolerance }
    }

    fn at_least(suite: Suite, name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let margin = value - threshold;
        Self { suite, name: name.into(), value, relation: Relation::AtLeast, tolerance: threshold, margin, passed: value >= threshold }
    }

    fn exceeds(suite: Suite, name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let margin = value - threshold;
        Self { suite, name: name.into(), value, relation: Relation::Exceeds, tolerance: threshold, margin, passed: value > threshold }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Random functions per suite.
    pub random_count: usize,
    /// Maximal degree of random functions.
    pub degree: usize,
    /// Overrides the tolerance of the exact algebraic identities.
    pub tol: Option<f64>,
    /// Coverage samples per certified set.
    pub samples: usize,
    pub norm: NormConfig,
    pub user: Option<Series>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            suites: Suite::ALL.to_vec(),
            random_count: 20,
            degree: 6,
            tol: None,
            samples: 100,
            norm: NormConfig { sphere_grid: 512, ..NormConfig::default() },
            user: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the selected suites in a fixed order.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let mut checks = Vec::new();
    for &suite in &suites {
        let found = match suite {
            Suite::Algebra => algebra_suite(cfg)?,
            Suite::Slice => slice_suite(cfg)?,
            Suite::Norms => norms_suite(cfg)?,
            Suite::BlochLandau => bloch_landau_suite(cfg)?,
        };
        checks.extend(found);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { seed: cfg.seed, suites, passed, checks })
}

fn suite_seed(cfg: &VerifyConfig, suite: Suite) -> u64 {
    cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(suite as u64 + 1)
}

fn with_radius(f: &Series, radius: f64) -> Series {
    Series::new(f.coeffs().to_vec(), radius, f.is_exact()).expect("valid coefficients")
}

/// Uniform random point of `B(0, radius)`.
fn random_point<R: Rng>(rng: &mut R, radius: f64) -> Quaternion {
    loop {
        let q = random_quaternion(rng, 1.0);
        if q.norm() < 1.0 {
            return q * radius;
        }
    }
}

fn random_unit<R: Rng>(rng: &mut R) -> UnitImaginary {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return UnitImaginary::from_vector(v[0] / n, v[1] / n, v[2] / n).expect("normalized");
        }
    }
}

/// Random polynomials of degree `1..=degree`, plus the user function.
fn function_set<R: Rng>(cfg: &VerifyConfig, rng: &mut R) -> Vec<Series> {
    let mut set: Vec<Series> =
        (0..cfg.random_count)
            .map(|_| {
                let degree = rng.random_range(1..=cfg.degree.max(1));
                random_polynomial(rng, degree)
            })
            .collect();
    set.extend(cfg.user.clone());
    set
}

fn algebra_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let s = Suite::Algebra;
    let tol = cfg.tol.unwrap_or(tol::POINTWISE_STAR);
    let mut rng = rng(suite_seed(cfg, s));
    let fs = function_set(cfg, &mut rng);
    let partner = |rng: &mut _, f: &Series| with_radius(&random_polynomial(rng, cfg.degree.max(1)), f.radius());

    let mut assoc = 0.0f64;
    let mut leibniz = 0.0f64;
    let mut involution = 0.0f64;
    let mut sym_real = 0.0f64;
    let mut pointwise = 0.0f64;
    for f in &fs {
        let g = partner(&mut rng, f);
        let h = partner(&mut rng, f);
        assoc = assoc.max(f.star(&g).star(&h).max_coeff_diff(&f.star(&g.star(&h))));
        let lhs = f.star(&g).slice_derivative();
        let rhs = f.slice_derivative().star(&g).add(&f.star(&g.slice_derivative()));
        leibniz = leibniz.max(lhs.max_coeff_diff(&rhs));
        involution = involution.max(f.regular_conjugate().regular_conjugate().max_coeff_diff(f));
        sym_real = sym_real.max(f.symmetrization().max_imaginary());
        let fg = f.star(&g);
        for _ in 0..8 {
            let q = random_point(&mut rng, 0.9 * f.radius());
            let direct = fg.eval(q)?;
            pointwise = pointwise.max((star_pointwise(f, &g, q)? - direct).norm());
        }
    }
    Ok(vec![
        Check::at_most(s, "star_associativity", assoc, tol),
        Check::at_most(s, "leibniz_rule", leibniz, tol),
        Check::at_most(s, "conjugate_involution", involution, tol),
        Check::at_most(s, "symmetrization_real_coefficients", sym_real, tol),
        Check::at_most(s, "pointwise_star_identity", pointwise, tol::POINTWISE_STAR.max(tol)),
    ])
}

fn slice_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let s = Suite::Slice;
    let mut rng = rng(suite_seed(cfg, s));
    let fs = function_set(cfg, &mut rng);

    let mut roundtrip = 0.0f64;
    let mut representation = 0.0f64;
    let mut j_independence = 0.0f64;
    let mut on_slice = 0.0f64;
    for f in &fs {
        let i = random_unit(&mut rng);
        roundtrip = roundtrip.max(ext_from_slice(&split(f, i))?.max_coeff_diff(f));

        let from = random_unit(&mut rng);
        let r = 0.9 * f.radius() * rng.random_range(0.0..1.0);
        let t = rng.random_range(0.0..std::f64::consts::PI);
        let (x, y) = (r * t.cos(), r * t.sin());
        let via = representation_eval(f, x, y, from, i)?;
        representation = representation.max((via - f.eval(i.embed(x, y))?).norm());

        let (j, k) = orthonormal_completion(i);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        let rotated = UnitImaginary::new(j.as_quaternion() * angle.cos() + k.as_quaternion() * angle.sin())?;
        let a = slice_norm(f, i, &cfg.norm);
        let b = slice_norm_with_split(&split_with(f, i, rotated)?, &cfg.norm);
        j_independence = j_independence.max((a - b).abs());

        let w = random_point(&mut rng, 0.4 * f.radius());
        let tw = regular_translation(f, w)?;
        let u = translation_unit(w);
        let z = u.embed(0.3 * f.radius() * t.cos(), 0.3 * f.radius() * t.sin());
        on_slice = on_slice.max((tw.eval(z)? - f.eval(z + w)?).norm());
    }

    let square = Series::from_reals(&[0.0, 0.0, 1.0], 1.0)?;
    let w = Quaternion::new(0.0, 0.3, 0.0, 0.0);
    let q = Quaternion::new(0.0, 0.0, 0.2, 0.0);
    let witness = (regular_translation(&square, w)?.eval(q)? - square.eval(q + w)?).norm();

    Ok(vec![
        Check::at_most(s, "split_roundtrip", roundtrip, tol::ALGEBRAIC),
        Check::at_most(s, "representation_formula", representation, tol::EVALUATION),
        Check::at_most(s, "slice_norm_complement_independence", j_independence, tol::POINTWISE_STAR),
        Check::at_most(s, "translation_on_slice", on_slice, tol::EVALUATION),
        Check::exceeds(s, "translation_differs_off_slice", witness, 1e-6),
    ])
}

fn norms_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let s = Suite::Norms;
    let mut rng = rng(suite_seed(cfg, s));
    let fs = function_set(cfg, &mut rng);

    let mut sphere_gap = 0.0f64;
    let mut ball_excess = f64::NEG_INFINITY;
    for f in &fs {
        let fc = f.regular_conjugate();
        for _ in 0..4 {
            let r = 0.9 * f.radius() * rng.random_range(0.0..1.0);
            let t = rng.random_range(0.0..std::f64::consts::PI);
            let (x, y) = (r * t.cos(), r * t.sin());
            let p = sphere_pair_unchecked(f, x, y);
            let pc = sphere_pair_unchecked(&fc, x, y);
            let (e, ec) = (sphere_extrema(p.b, p.c), sphere_extrema(pc.b, pc.c));
            let scale = e.max.max(1.0);
            sphere_gap = sphere_gap.max((e.max - ec.max).abs().max((e.min - ec.min).abs()) / scale);
        }
        let rad = 0.9 * f.radius();
        for (a, b) in [
            (sup_norm_ball(f, rad, &cfg.norm)?, sup_norm_ball(&fc, rad, &cfg.norm)?),
            (inf_norm_ball(f, rad, &cfg.norm)?, inf_norm_ball(&fc, rad, &cfg.norm)?),
        ] {
            ball_excess = ball_excess.max((a.value - b.value).abs() - 2.0 * a.certified_tol.max(b.certified_tol));
        }
    }

    // inequalities on normalized functions
    let mut normalized: Vec<Series> = normalized_corpus().into_iter().map(|e| e.series).collect();
    normalized.extend((0..cfg.random_count.min(8)).map(|_| random_normalized(&mut rng, cfg.degree.max(2))));
    // smallest slack of each inequality, grid tolerances included
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    let mut mean_value = f64::INFINITY;
    let mut ball_growth = f64::INFINITY;
    for f in &normalized {
        let split_r = split_norm(f, &cfg.norm);
        let ball_r = uniform_norm(f, &cfg.norm);
        let slack = split_r.certified_tol + ball_r.certified_tol;
        lower = lower.min(ball_r.value + slack - split_r.value * SQRT_2 / 2.0);
        upper = upper.min(split_r.value + slack - ball_r.value);
        let mv = MeanValueBound::new(f, &cfg.norm)?;
        for _ in 0..8 {
            let q = random_point(&mut rng, 0.95 * f.radius());
            if q.norm() > 0.0 {
                mean_value = mean_value.min(mv.margin(q)? + mv.derivative_norm.certified_tol);
            }
        }
        let r = 0.9 * f.radius();
        ball_growth = ball_growth.min(mv.ball_margin(r, &cfg.norm)? + r * mv.derivative_norm.certified_tol);
    }

    Ok(vec![
        Check::at_most(s, "conjugate_sphere_extrema", sphere_gap, 2.0 * tol::CERTIFIED_FLOOR),
        Check::at_most(s, "conjugate_ball_extrema", ball_excess, 0.0),
        Check::at_least(s, "split_norm_lower_bound", lower, -GRID_TOL),
        Check::at_least(s, "split_norm_upper_bound", upper, -GRID_TOL),
        Check::at_least(s, "mean_value_pointwise", mean_value, -GRID_TOL),
        Check::at_least(s, "mean_value_ball", ball_growth, -GRID_TOL),
    ])
}

fn bloch_landau_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let s = Suite::BlochLandau;
    let mut checks = Vec::new();
    for (label, rho) in [("1/(32*sqrt2)", 1.0 / (32.0 * SQRT_2)), ("0.1", 0.1), ("0.25", 0.25), ("1", 1.0)] {
        let d = inscribed_disc_check(rho)?;
        checks.push(Check::exceeds(s, format!("inscribed_disc_rho_{label}"), d.min_margin, 0.0));
    }

    let identity = Series::identity(1.0)?;
    let rho = rho_lemma(&identity, &cfg.norm)?.rho;
    checks.push(Check::at_most(s, "rho_identity", (rho - 0.25).abs(), tol::REFINE_GAP));
    let newton = NewtonConfig::default();
    let cov = coverage_report(&identity, 0.25 * (1.0 - tol::COVERAGE_MARGIN), cfg.samples, cfg.seed, &newton)?;
    checks.push(Check::at_most(s, "coverage_identity_misses", cov.misses.len() as f64, 0.0));

    let c = Quaternion::new(1.5, 0.5, -0.5, 0.25);
    let mut residual = 0.0f64;
    let mut psi_slope = 0.0f64;
    let mut parseval = 0.0f64;
    for e in normalized_corpus() {
        let g = g_series(&e.series, c)?;
        let psi = fourth_root_series(&g)?;
        residual = residual.max(fourth_root_residual(&psi, &g));
        let expected = -0.5 * (e.series.coeff(1) * c.inverse()?).re();
        psi_slope = psi_slope.max((psi.coeff(1).re() - expected).abs());
        parseval = parseval.max(parseval_mean(&psi, 0.9, UnitImaginary::I, 4096)?.gap());
    }
    checks.push(Check::at_most(s, "fourth_root_residual", residual, tol::EVALUATION));
    checks.push(Check::at_most(s, "fourth_root_slope", psi_slope, tol::ALGEBRAIC));
    checks.push(Check::at_most(s, "parseval_gap", parseval, 1e-8));

    // |f| ≤ 1.1 on the unit ball, so c = 2 lies outside the image
    let quadratic = Series::from_reals(&[0.0, 1.0, 0.1], 1.0)?;
    let chain = lemma_chain(&quadratic, Quaternion::real(2.0), 0.5, &cfg.norm)?;
    checks.push(Check::at_least(s, "lemma_chain_slack", chain.min_slack(), 0.0));
    checks.push(Check::at_most(s, "lemma_chain_parseval", (chain.mean_sqrt_g - chain.psi_sum).abs(), 1e-8));

    let search_cfg = SearchConfig { norm: cfg.norm, mu_grid: 1024 };
    let mut targets: Vec<(String, Series)> =
        normalized_corpus().into_iter().map(|e| (e.name.to_string(), e.series)).collect();
    if let Some(u) = &cfg.user {
        let normalized = u.coeff(0).norm() <= tol::ALGEBRAIC && (u.coeff(1) - Quaternion::ONE).norm() <= tol::ALGEBRAIC;
        if normalized && u.radius() > 0.99 {
            targets.push(("user".into(), u.clone()));
        }
    }
    let mut invariant = 0.0f64;
    for (name, f) in &targets {
        let rep = bl_search(f, 0.99, &search_cfg)?;
        checks.push(Check::at_least(s, format!("search_{name}_rho"), rep.rho_r, rep.lower_bound - 1e-6));
        checks.push(Check::at_most(
            s,
            format!("search_{name}_derivative_norm"),
            rep.phi_derivative_norm.value,
            rep.derivative_bound + rep.phi_derivative_norm.certified_tol,
        ));
        invariant = invariant
            .max(rep.checks.radius_gap)
            .max(rep.checks.derivative_gap)
            .max(rep.checks.phi_at_origin)
            .max((rep.rotation.norm() - 1.0).abs());
    }
    checks.push(Check::at_most(s, "search_invariants", invariant, tol::MU_ROOT));

    // the unit sample used by the split norm starts at i
    let first = sphere_sample(cfg.norm.sphere_grid.max(1), cfg.norm.seed)[0];
    checks.push(Check::at_most(s, "sphere_sample_starts_at_i", (first.as_quaternion() - Quaternion::I).norm(), 0.0));
    Ok(checks)
}
