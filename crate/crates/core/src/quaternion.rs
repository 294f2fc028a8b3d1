//! Quaternion arithmetic, imaginary units and slices.
//!
//! A quaternion is stored by its components along `{1, i, j, k}`. Products
//! follow `i² = j² = k² = −1`, `ij = k = −ji`, `jk = i = −kj`, `ki = j = −ik`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// A real quaternion `x0 + x1 i + x2 j + x3 k`.
///
/// Serialized as the array `[x0, x1, x2, x3]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    #[inline]
    pub const fn real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Real part `Re(q) = x0`.
    #[inline]
    pub fn re(self) -> f64 {
        self.x0
    }

    /// Imaginary part `Im(q) = x1 i + x2 j + x3 k`.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    /// Euclidean inner product on `R⁴`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    /// Modulus `|q|`.
    #[inline]
    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary at the magnitudes used here
        self.norm_sqr().sqrt()
    }

    /// `|Im(q)|`.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Multiplicative inverse `q̄ / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n2)
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// `q^n` by repeated multiplication.
    pub fn powi(self, n: usize) -> Self {
        let mut acc = Self::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Largest absolute component; a cheap scale for tolerances.
    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x0.abs().max(self.x1.abs()).max(self.x2.abs()).max(self.x3.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.x0, self.x1, self.x2, self.x3)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (o.x0, o.x1, o.x2, o.x3);
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

/// An element of the sphere `S = {q : q² = −1}` of imaginary units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "[f64; 4]")]
pub struct UnitImaginary(Quaternion);

impl From<UnitImaginary> for [f64; 4] {
    fn from(u: UnitImaginary) -> Self {
        u.0.to_array()
    }
}

impl UnitImaginary {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Validates that `q` has zero real part and unit modulus.
    pub fn new(q: Quaternion) -> Result<Self> {
        if q.re().abs() > tol::ALGEBRAIC || (q.norm() - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::NotUnitImaginary(q.to_string()));
        }
        Ok(Self(q))
    }

    /// Normalizes the vector `(x, y, z)` to the unit `(x i + y j + z k)/|·|`.
    pub fn from_vector(x: f64, y: f64, z: f64) -> Result<Self> {
        unit_of(Quaternion::new(0.0, x, y, z))
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.0.x1, self.0.x2, self.0.x3]
    }

    #[inline]
    pub fn neg(self) -> Self {
        Self(-self.0)
    }

    /// Embeds `x + y I`.
    #[inline]
    pub fn embed(self, x: f64, y: f64) -> Quaternion {
        Quaternion::real(x) + self.0 * y
    }
}

impl From<UnitImaginary> for Quaternion {
    fn from(u: UnitImaginary) -> Self {
        u.0
    }
}

/// `Im(q)/|Im(q)|` for a non-real `q`.
pub fn unit_of(q: Quaternion) -> Result<UnitImaginary> {
    let n = q.im_norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::RealPoint);
    }
    Ok(UnitImaginary(q.im() / n))
}

/// A point `x + y I` of the slice `L_I`, with `y ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: UnitImaginary,
}

impl SlicePoint {
    /// Writes `q = x + y I` with `y = |Im q|`. Real points are assigned the
    /// canonical unit `i`.
    pub fn of(q: Quaternion) -> Self {
        match unit_of(q) {
            Ok(unit) => Self { x: q.re(), y: q.im_norm(), unit },
            Err(_) => Self { x: q.re(), y: 0.0, unit: UnitImaginary::I },
        }
    }

    #[inline]
    pub fn embed(self) -> Quaternion {
        self.unit.embed(self.x, self.y)
    }
}

/// Completes `I` to an orthonormal basis `{1, I, J, K = IJ}` of `H`.
///
/// `J` is obtained by Gram-Schmidt from the coordinate axis least aligned
/// with `I` (ties go to the earlier axis), so `i ↦ (j, k)`.
pub fn orthonormal_completion(unit: UnitImaginary) -> (UnitImaginary, UnitImaginary) {
    let v = unit.vector();
    let axis = (0..3)
        .min_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let proj = v[axis];
    let w = [e[0] - proj * v[0], e[1] - proj * v[1], e[2] - proj * v[2]];
    let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let j = Quaternion::new(0.0, w[0] / n, w[1] / n, w[2] / n);
    let k = unit.0 * j;
    // both have modulus one up to rounding; renormalize to keep the invariant tight
    (UnitImaginary(j / j.norm()), UnitImaginary(k.im() / k.im_norm()))
}

/// The unit `L ∈ S` with `c I = L c`, i.e. `L = c I c⁻¹`.
pub fn rotate_unit(c: Quaternion, unit: UnitImaginary) -> Result<UnitImaginary> {
    let inv = c.inverse()?;
    let l = c * unit.0 * inv;
    // c I c⁻¹ is purely imaginary with |·| = 1; strip rounding in the real part
    let im = l.im();
    Ok(UnitImaginary(im / im.norm()))
}
