//! Restrictions of a regular function to a slice `L_I = R + R I`.
//!
//! On `L_I` every coefficient splits as `aₙ = αₙ + βₙ J` with `αₙ, βₙ ∈ L_I`,
//! so `f_I(z) = F(z) + G(z) J` with holomorphic `F`, `G`. The complex
//! numbers here are coordinates with respect to `{1, I}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{orthonormal_completion, unit_of, Quaternion, UnitImaginary};
use crate::series::Series;
use crate::sphere::sphere_sample;
use crate::tol;

/// A holomorphic function on a slice disc, by its coefficients relative to
/// the basis `{1, I}` of `L_I`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    pub coeffs: Vec<Complex64>,
    pub unit: UnitImaginary,
}

impl ComplexSeries {
    /// Horner evaluation; `L_I` is commutative.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `x + y I` for the complex number `x + y i`.
    pub fn embed(&self, z: Complex64) -> Quaternion {
        self.unit.embed(z.re, z.im)
    }

    /// Coordinates of a point of `L_I`.
    pub fn project(&self, q: Quaternion) -> Complex64 {
        Complex64::new(q.re(), q.dot(self.unit.as_quaternion()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `f_I(z) = F(z) + G(z) J` on the slice of `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPair {
    pub f: ComplexSeries,
    pub g: ComplexSeries,
    pub unit: UnitImaginary,
    pub complement: UnitImaginary,
    pub radius: f64,
    pub exact: bool,
}

impl SplitPair {
    /// `F(z) + G(z) J` as a quaternion.
    pub fn eval(&self, z: Complex64) -> Quaternion {
        let fz = self.f.embed(self.f.eval(z));
        let gz = self.g.embed(self.g.eval(z));
        fz + gz * self.complement.as_quaternion()
    }
}

/// Splits `f` on `L_I` using the canonical completion `J` of `I`.
pub fn split(f: &Series, unit: UnitImaginary) -> SplitPair {
    let (j, _) = orthonormal_completion(unit);
    split_with(f, unit, j).expect("canonical completion is orthogonal")
}

/// Splits `f` on `L_I` with a caller-chosen `J ⟂ I`.
pub fn split_with(f: &Series, unit: UnitImaginary, complement: UnitImaginary) -> Result<SplitPair> {
    let iq = unit.as_quaternion();
    let jq = complement.as_quaternion();
    let inner = iq.dot(jq);
    if inner.abs() > tol::ALGEBRAIC {
        return Err(Error::NotOrthogonal(inner));
    }
    let kq = iq * jq;
    let (alpha, beta) = f
        .coeffs()
        .iter()
        .map(|&a| {
            (
                Complex64::new(a.re(), a.dot(iq)),
                Complex64::new(a.dot(jq), a.dot(kq)),
            )
        })
        .unzip();
    Ok(SplitPair {
        f: ComplexSeries { coeffs: alpha, unit },
        g: ComplexSeries { coeffs: beta, unit },
        unit,
        complement,
        radius: f.radius(),
        exact: f.is_exact(),
    })
}

/// Reassembles `aₙ = αₙ + βₙ J`: the unique regular extension of `F + G J`.
pub fn ext_from_slice(pair: &SplitPair) -> Result<Series> {
    if pair.f.unit != pair.unit || pair.g.unit != pair.unit {
        return Err(Error::Precondition("F and G must be expressed on the slice of I".into()));
    }
    let n = pair.f.coeffs.len().max(pair.g.coeffs.len()).max(1);
    let at = |c: &[Complex64], k: usize| c.get(k).copied().unwrap_or_default();
    let jq = pair.complement.as_quaternion();
    let coeffs = (0..n)
        .map(|k| {
            let alpha = pair.unit.embed(at(&pair.f.coeffs, k).re, at(&pair.f.coeffs, k).im);
            let beta = pair.unit.embed(at(&pair.g.coeffs, k).re, at(&pair.g.coeffs, k).im);
            alpha + beta * jq
        })
        .collect();
    Series::new(coeffs, pair.radius, pair.exact)
}

/// Splits of `f` and `f^c` on the same slice, with the coefficient relation
/// `αₙ(f^c) = conj αₙ`, `βₙ(f^c) = −βₙ` measured.
#[derive(Clone, Debug)]
pub struct ConjugateSplit {
    pub of_f: SplitPair,
    pub of_conjugate: SplitPair,
    /// `max_n max(|α'ₙ − conj αₙ|, |β'ₙ + βₙ|)`.
    pub max_deviation: f64,
}

pub fn split_conjugate_check(f: &Series, unit: UnitImaginary) -> ConjugateSplit {
    let of_f = split(f, unit);
    let of_conjugate = split(&f.regular_conjugate(), unit);
    let dev_alpha = of_f
        .f
        .coeffs
        .iter()
        .zip(&of_conjugate.f.coeffs)
        .map(|(a, ac)| (ac - a.conj()).norm());
    let dev_beta = of_f.g.coeffs.iter().zip(&of_conjugate.g.coeffs).map(|(b, bc)| (bc + b).norm());
    let max_deviation = dev_alpha.chain(dev_beta).fold(0.0, f64::max);
    ConjugateSplit { of_f, of_conjugate, max_deviation }
}

/// `f(x + yI)` computed only from `f(x ± yJ)`.
pub fn representation_eval(
    f: &Series,
    x: f64,
    y: f64,
    from: UnitImaginary,
    to: UnitImaginary,
) -> Result<Quaternion> {
    let plus = f.eval(from.embed(x, y))?;
    let minus = f.eval(from.embed(x, -y))?;
    let jq = from.as_quaternion();
    let iq = to.as_quaternion();
    Ok((plus + minus) * 0.5 + iq * (jq * (minus - plus)) * 0.5)
}

/// Constants `(b, c)` with `f(x + yI) = b + I c` for all `I ∈ S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePair {
    pub b: Quaternion,
    pub c: Quaternion,
    pub x: f64,
    pub y: f64,
}

impl SpherePair {
    #[inline]
    pub fn at(&self, unit: UnitImaginary) -> Quaternion {
        self.b + unit.as_quaternion() * self.c
    }
}

/// Sphere constants of `f` on `x + yS` (closed ball allowed).
///
/// With `w = x + y i`, `b = Σ Re(wⁿ) aₙ` and `c = Σ tₙ aₙ` where `tₙ` is the
/// signed coordinate of `Im(wⁿ)` along `i`.
pub fn sphere_pair_unchecked(f: &Series, x: f64, y: f64) -> SpherePair {
    // powers of w in L_i ≅ C
    let w = Complex64::new(x, y);
    let mut power = Complex64::new(1.0, 0.0);
    let mut b = Quaternion::ZERO;
    let mut c = Quaternion::ZERO;
    for (n, &a) in f.coeffs().iter().enumerate() {
        if n > 0 {
            power *= w;
        }
        b += a * power.re;
        c += a * power.im;
    }
    SpherePair { b, c, x, y }
}

pub fn sphere_pair(f: &Series, x: f64, y: f64) -> Result<SpherePair> {
    if y < 0.0 {
        return Err(Error::Precondition("sphere parameter y must be nonnegative".into()));
    }
    let norm = x.hypot(y);
    if norm >= f.radius() {
        return Err(Error::OutsideBall { norm, radius: f.radius() });
    }
    Ok(sphere_pair_unchecked(f, x, y))
}

/// Exact binomial coefficient `C(n, k)` for `n ≤ 60`.
fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

/// Regular translation `f̃_w`: the regular extension of `z ↦ f(z + w)` from
/// the slice containing `w`, on `B(0, R − |w|)`.
///
/// Coefficients are `b_m = Σ_{n≥m} C(n, m) w^{n−m} aₙ`.
pub fn regular_translation(f: &Series, w: Quaternion) -> Result<Series> {
    let norm = w.norm();
    if norm >= f.radius() {
        return Err(Error::OutsideBall { norm, radius: f.radius() });
    }
    let deg = f.degree();
    if deg > tol::MAX_TRANSLATION_DEGREE {
        return Err(Error::DegreeTooLarge { degree: deg, max: tol::MAX_TRANSLATION_DEGREE });
    }
    let mut powers = Vec::with_capacity(deg + 1);
    let mut p = Quaternion::ONE;
    for _ in 0..=deg {
        powers.push(p);
        p = p * w;
    }
    let coeffs = (0..=deg)
        .map(|m| {
            let mut acc = Quaternion::ZERO;
            for n in m..=deg {
                acc += powers[n - m] * f.coeff(n) * binomial(n, m) as f64;
            }
            acc
        })
        .collect();
    Series::new(coeffs, f.radius() - norm, f.is_exact())
}

/// The unit of the slice on which a translation by `w` is defined; real
/// points use the canonical `i`.
pub fn translation_unit(w: Quaternion) -> UnitImaginary {
    unit_of(w).unwrap_or(UnitImaginary::I)
}

/// Fixed probe grid in the closed ball `B(0, k)`: four radii, sixteen
/// angles, 32 slices.
fn probe_grid(k: f64) -> Vec<Quaternion> {
    let units = sphere_sample(32, 0);
    let mut pts = vec![Quaternion::ZERO];
    for ri in 1..=4 {
        let rho = k * ri as f64 / 4.0;
        for t in 0..16 {
            let theta = std::f64::consts::TAU * t as f64 / 16.0;
            for &u in &units {
                pts.push(u.embed(rho * theta.cos(), rho * theta.sin()));
            }
        }
    }
    pts
}

/// `max |f̃_{w'}(q) − f̃_w(q)|` over the probe grid of `B(0, k)`.
pub fn translation_discrepancy(f: &Series, w_near: Quaternion, w: Quaternion, k: f64) -> Result<f64> {
    let m = w_near.norm().max(w.norm());
    if k <= 0.0 || k >= f.radius() - m {
        return Err(Error::Precondition(format!(
            "compact ball radius {k} must lie in (0, R − m) = (0, {})",
            f.radius() - m
        )));
    }
    let a = regular_translation(f, w_near)?;
    let b = regular_translation(f, w)?;
    Ok(probe_grid(k)
        .into_iter()
        .map(|q| (a.eval_unchecked(q) - b.eval_unchecked(q)).norm())
        .fold(0.0, f64::max))
}

/// Discrepancy between `f̃_{w_n}` and `f̃_w` for the last term of `w_seq`.
pub fn translation_continuity_probe(f: &Series, w_seq: &[Quaternion], w: Quaternion, k: f64) -> Result<f64> {
    let m = w_seq.iter().map(|q| q.norm()).fold(w.norm(), f64::max);
    if k >= f.radius() - m {
        return Err(Error::Precondition(format!(
            "compact ball radius {k} must be below R − m = {}",
            f.radius() - m
        )));
    }
    match w_seq.last() {
        Some(&tail) => translation_discrepancy(f, tail, w, k),
        None => Ok(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;
    const ZERO: Quaternion = Quaternion::ZERO;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn split_examples() {
        let id = Series::identity(1.0).unwrap();
        let s = split(&id, UnitImaginary::I);
        assert_eq!(s.f.coeffs, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(s.g.coeffs.iter().all(|z| z.norm() == 0.0));

        let s = split(&Series::constant(J, 1.0).unwrap(), UnitImaginary::I);
        assert_eq!(s.complement, UnitImaginary::J);
        assert_eq!(s.f.coeffs, vec![c(0.0, 0.0)]);
        assert_eq!(s.g.coeffs, vec![c(1.0, 0.0)]);

        let s = split(&Series::constant(ONE + I + J + K, 1.0).unwrap(), UnitImaginary::I);
        assert_eq!(s.f.coeffs, vec![c(1.0, 1.0)]);
        assert_eq!(s.g.coeffs, vec![c(1.0, 1.0)]);
    }

    #[test]
    fn ext_reassembles() {
        let pair = SplitPair {
            f: ComplexSeries { coeffs: vec![c(0.0, 0.0), c(0.0, 1.0)], unit: UnitImaginary::I },
            g: ComplexSeries { coeffs: vec![c(1.0, 0.0)], unit: UnitImaginary::I },
            unit: UnitImaginary::I,
            complement: UnitImaginary::J,
            radius: 1.0,
            exact: true,
        };
        assert_eq!(ext_from_slice(&pair).unwrap().coeffs(), &[J, I]);

        let id = SplitPair {
            f: ComplexSeries { coeffs: vec![c(0.0, 0.0), c(1.0, 0.0)], unit: UnitImaginary::I },
            g: ComplexSeries { coeffs: vec![], unit: UnitImaginary::I },
            ..pair
        };
        assert_eq!(ext_from_slice(&id).unwrap(), Series::identity(1.0).unwrap());
    }

    #[test]
    fn split_with_rejects_non_orthogonal() {
        let f = Series::identity(1.0).unwrap();
        assert!(matches!(split_with(&f, UnitImaginary::I, UnitImaginary::I), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn conjugate_split_examples() {
        let real = Series::from_reals(&[1.0, 2.0, -3.0], 1.0).unwrap();
        let cs = split_conjugate_check(&real, UnitImaginary::J);
        assert!(cs.of_f.g.coeffs.iter().all(|z| z.norm() == 0.0));
        assert!(cs.of_conjugate.g.coeffs.iter().all(|z| z.norm() == 0.0));
        assert!(cs.of_f.f.coeffs.iter().all(|z| z.im == 0.0));

        let cs = split_conjugate_check(&Series::constant(I, 1.0).unwrap(), UnitImaginary::I);
        assert_eq!(cs.of_conjugate.f.coeffs, vec![c(0.0, -1.0)]);
        assert_eq!(cs.max_deviation, 0.0);
    }

    #[test]
    fn representation_examples() {
        let id = Series::identity(2.0).unwrap();
        let to = UnitImaginary::from_vector(1.0, 2.0, -1.0).unwrap();
        let v = representation_eval(&id, 0.3, 0.4, UnitImaginary::J, to).unwrap();
        assert!((v - to.embed(0.3, 0.4)).norm() < 1e-15);

        let f = Series::polynomial(vec![I, J, K], 2.0).unwrap();
        let v = representation_eval(&f, 0.7, 0.0, UnitImaginary::K, to).unwrap();
        assert_eq!(v, f.eval(Quaternion::real(0.7)).unwrap());

        assert!(representation_eval(&f, 1.5, 1.5, UnitImaginary::J, to).is_err());
    }

    #[test]
    fn sphere_pair_examples() {
        let id = Series::identity(2.0).unwrap();
        let p = sphere_pair(&id, 0.3, 0.5).unwrap();
        assert_eq!((p.b, p.c), (Quaternion::real(0.3), Quaternion::real(0.5)));

        let sq = Series::from_reals(&[0.0, 0.0, 1.0], 2.0).unwrap();
        for (x, y) in [(0.3, 0.5), (-0.6, 0.7), (-1.0, 0.2)] {
            let p = sphere_pair(&sq, x, y).unwrap();
            assert!((p.b - Quaternion::real(x * x - y * y)).norm() < 1e-15);
            assert!((p.c - Quaternion::real(2.0 * x * y)).norm() < 1e-15);
        }

        let f = Series::polynomial(vec![I, J, K], 2.0).unwrap();
        let p = sphere_pair(&f, 0.4, 0.0).unwrap();
        assert_eq!(p.c, ZERO);
        assert_eq!(p.b, f.eval(Quaternion::real(0.4)).unwrap());

        assert!(sphere_pair(&f, 0.1, -0.1).is_err());
        assert!(sphere_pair(&f, 2.0, 0.0).is_err());
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(binomial(60, 0), 1);
        assert_eq!(binomial(60, 60), 1);
    }

    #[test]
    fn translation_examples() {
        let f = Series::polynomial(vec![I, J, K, ONE], 1.0).unwrap();
        assert_eq!(regular_translation(&f, ZERO).unwrap(), f);

        let w = Quaternion::new(0.1, 0.2, -0.3, 0.1);
        let sq = Series::from_reals(&[0.0, 0.0, 1.0], 1.0).unwrap();
        let t = regular_translation(&sq, w).unwrap();
        assert!((t.coeff(0) - w * w).norm() < 1e-15);
        assert!((t.coeff(1) - w * 2.0).norm() < 1e-15);
        assert_eq!(t.coeff(2), ONE);
        assert!((t.radius() - (1.0 - w.norm())).abs() < 1e-15);

        assert!(regular_translation(&f, Quaternion::real(1.0)).is_err());
        let big = Series::polynomial(vec![ONE; 62], 1.0).unwrap();
        assert!(matches!(
            regular_translation(&big, Quaternion::real(0.1)),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn real_translation_is_global() {
        let f = Series::polynomial(vec![I, J + K, Quaternion::new(1.0, 0.5, 0.0, -2.0), K], 1.0).unwrap();
        let w = Quaternion::real(0.25);
        let t = regular_translation(&f, w).unwrap();
        for q in [Quaternion::new(0.1, 0.2, 0.3, -0.1), Quaternion::new(-0.3, 0.0, 0.4, 0.2)] {
            assert!((t.eval(q).unwrap() - f.eval(q + w).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn translation_is_not_naive_composition() {
        let sq = Series::from_reals(&[0.0, 0.0, 1.0], 1.0).unwrap();
        let w = I * 0.3;
        let t = regular_translation(&sq, w).unwrap();
        let q = J * 0.2;
        let diff = (t.eval(q).unwrap() - sq.eval(q + w).unwrap()).norm();
        assert!(diff > 1e-6);
        // on the slice of w the two agree
        let z = Quaternion::new(0.1, 0.2, 0.0, 0.0);
        assert!((t.eval(z).unwrap() - sq.eval(z + w).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn continuity_probe_constant_sequence() {
        let f = Series::polynomial(vec![ZERO, ONE, J, K * 0.5], 1.0).unwrap();
        let w = Quaternion::new(0.1, 0.1, 0.0, 0.2);
        assert_eq!(translation_continuity_probe(&f, &[w, w, w], w, 0.5).unwrap(), 0.0);
        assert!(translation_continuity_probe(&f, &[w], w, 0.9).is_err());
    }
}
