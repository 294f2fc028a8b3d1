//! Deterministic quasi-uniform samples of the sphere of imaginary units.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quaternion::{orthonormal_completion, Quaternion, UnitImaginary};

/// `n` points on `S`, deterministic for a fixed `(n, seed)`.
///
/// The first point is always `i`. The remaining `n − 1` points are a
/// Fibonacci lattice whose points are displaced in the tangent plane by at
/// most a quarter of the lattice spacing, with offsets drawn from `seed`.
pub fn sphere_sample(n: usize, seed: u64) -> Vec<UnitImaginary> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(UnitImaginary::I);
    let m = n - 1;
    if m == 0 {
        return out;
    }
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    let spacing = (4.0 * PI / m as f64).sqrt();
    let jitter = 0.25 * spacing;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..m {
        let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden_angle * k as f64;
        let base = Quaternion::new(0.0, r * phi.cos(), r * phi.sin(), z);
        let unit = UnitImaginary::new(base / base.norm()).expect("lattice point on S");
        let (e1, e2) = orthonormal_completion(unit);
        let a: f64 = rng.random_range(0.0..2.0 * PI);
        let d: f64 = jitter * rng.random::<f64>().sqrt();
        let moved = base + e1.as_quaternion() * (d * a.cos()) + e2.as_quaternion() * (d * a.sin());
        out.push(UnitImaginary::new(moved / moved.norm()).expect("jittered point on S"));
    }
    out
}

/// Angular distance between two units.
pub fn angle_between(a: UnitImaginary, b: UnitImaginary) -> f64 {
    a.as_quaternion().dot(b.as_quaternion()).clamp(-1.0, 1.0).acos()
}

/// Moves `unit` by `(u, v)` in its tangent plane and renormalizes.
pub(crate) fn tangent_step(unit: UnitImaginary, u: f64, v: f64) -> UnitImaginary {
    let (e1, e2) = orthonormal_completion(unit);
    let q = unit.as_quaternion() + e1.as_quaternion() * u + e2.as_quaternion() * v;
    UnitImaginary::new(q / q.norm()).expect("tangent step stays on S")
}
