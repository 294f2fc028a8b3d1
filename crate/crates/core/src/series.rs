//! Truncated quaternionic power series `Σ qⁿ aₙ` with right coefficients.
//!
//! A [`Series`] represents a regular function on the ball `B(0, R)`.
//! Polynomials are exact; anything else is a user-chosen truncation and the
//! user is responsible for the radius.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    coeffs: Vec<Quaternion>,
    radius: f64,
    exact: bool,
}

impl Series {
    /// Builds a series from `a_0..a_N`. The degree is `coeffs.len() − 1`;
    /// trailing zeros are kept.
    pub fn new(coeffs: Vec<Quaternion>, radius: f64, exact: bool) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries("at least one coefficient is required".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidSeries(format!("radius must be positive and finite, got {radius}")));
        }
        if let Some(n) = coeffs.iter().position(|a| !a.is_finite()) {
            return Err(Error::InvalidSeries(format!("coefficient {n} is not finite")));
        }
        Ok(Self { coeffs, radius, exact })
    }

    pub fn polynomial(coeffs: Vec<Quaternion>, radius: f64) -> Result<Self> {
        Self::new(coeffs, radius, true)
    }

    pub fn truncated(coeffs: Vec<Quaternion>, radius: f64) -> Result<Self> {
        Self::new(coeffs, radius, false)
    }

    pub fn constant(a: Quaternion, radius: f64) -> Result<Self> {
        Self::polynomial(vec![a], radius)
    }

    /// `f(q) = q`.
    pub fn identity(radius: f64) -> Result<Self> {
        Self::polynomial(vec![Quaternion::ZERO, Quaternion::ONE], radius)
    }

    /// Real coefficients, convenient for slice-preserving examples.
    pub fn from_reals(coeffs: &[f64], radius: f64) -> Result<Self> {
        Self::polynomial(coeffs.iter().map(|&x| Quaternion::real(x)).collect(), radius)
    }

    #[inline]
    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// `a_n`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Same coefficients on a smaller ball.
    pub fn restrict(&self, radius: f64) -> Result<Self> {
        if radius > self.radius {
            return Err(Error::OutsideBall { norm: radius, radius: self.radius });
        }
        Self::new(self.coeffs.clone(), radius, self.exact)
    }

    /// `f(q)` for `|q| < R`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let norm = q.norm();
        if norm >= self.radius {
            return Err(Error::OutsideBall { norm, radius: self.radius });
        }
        Ok(self.eval_unchecked(q))
    }

    /// Sums the stored coefficients at `q` without a domain check.
    ///
    /// Used on the closed ball (boundary maximization) where the stored
    /// polynomial extends continuously.
    pub fn eval_unchecked(&self, q: Quaternion) -> Quaternion {
        // left powers qⁿ times right coefficients: Horner would reorder the factors
        let mut power = Quaternion::ONE;
        let mut acc = self.coeffs[0];
        for &a in &self.coeffs[1..] {
            power = power * q;
            acc += power * a;
        }
        acc
    }

    /// Slice (Cullen) derivative: `b_{n−1} = n aₙ`.
    pub fn slice_derivative(&self) -> Self {
        let coeffs = if self.coeffs.len() == 1 {
            vec![Quaternion::ZERO]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| a * n as f64)
                .collect()
        };
        Self { coeffs, radius: self.radius, exact: self.exact }
    }

    /// The regular (star) product `f * g`: Cauchy convolution with `a_k`
    /// on the left of `b_{n−k}`. Degrees add; nothing is truncated.
    pub fn star(&self, other: &Self) -> Self {
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Quaternion::ZERO; n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            for (m, &b) in other.coeffs.iter().enumerate() {
                coeffs[k + m] += a * b;
            }
        }
        Self {
            coeffs,
            radius: self.radius.min(other.radius),
            exact: self.exact && other.exact,
        }
    }

    /// `f^c(q) = Σ qⁿ āₙ`.
    pub fn regular_conjugate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
            radius: self.radius,
            exact: self.exact,
        }
    }

    /// `f^s = f * f^c`. The coefficients are real; rounding in the
    /// imaginary parts is kept as computed.
    pub fn symmetrization(&self) -> Self {
        self.star(&self.regular_conjugate())
    }

    /// `f(q) c`, i.e. every coefficient multiplied by `c` on the right.
    pub fn mul_right(&self, c: Quaternion) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
            radius: self.radius,
            exact: self.exact,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.mul_right(Quaternion::real(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
            radius: self.radius.min(other.radius),
            exact: self.exact && other.exact,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Largest coefficient discrepancy `max_n |aₙ − bₙ|` (missing
    /// coefficients count as zero).
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|Im(aₙ)|`.
    pub fn max_imaginary(&self) -> f64 {
        self.coeffs.iter().map(|a| a.im_norm()).fold(0.0, f64::max)
    }

    /// First `n + 1` coefficients (fewer if the degree is smaller).
    pub fn truncate_to(&self, n: usize) -> Self {
        let keep = (n + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
            radius: self.radius,
            exact: self.exact && keep == self.coeffs.len(),
        }
    }
}

/// `f(q)⁻¹ q f(q)`: the point at which `g` is evaluated in
/// `(f*g)(q) = f(q) g(f(q)⁻¹ q f(q))`.
pub fn star_transform_point(f: &Series, q: Quaternion) -> Result<Quaternion> {
    let fq = f.eval(q)?;
    if fq.norm_sqr() == 0.0 {
        return Err(Error::ZeroOfF);
    }
    Ok(fq.inverse()? * q * fq)
}

/// `(f*g)(q)` computed pointwise from values of `f` and `g`.
pub fn star_pointwise(f: &Series, g: &Series, q: Quaternion) -> Result<Quaternion> {
    match star_transform_point(f, q) {
        Ok(t) => Ok(f.eval(q)? * g.eval(t)?),
        Err(Error::ZeroOfF) => Ok(Quaternion::ZERO),
        Err(e) => Err(e),
    }
}
