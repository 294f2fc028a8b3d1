//! Library results compared against independent, slower computations.

use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatregular::bloch_landau::{attain, fourth_root_series_to, inscribed_disc_check, NewtonConfig};
use quatregular::norms::{slice_norm, sphere_extrema, sup_norm_ball, NormConfig};
use quatregular::quaternion::{rotate_unit, Quaternion, UnitImaginary};
use quatregular::series::Series;
use quatregular::slice::{regular_translation, sphere_pair};

fn random_quaternion(rng: &mut impl Rng, scale: f64) -> Quaternion {
    Quaternion::from(std::array::from_fn::<f64, 4, _>(|_| rng.random_range(-scale..scale)))
}

fn random_unit(rng: &mut impl Rng) -> UnitImaginary {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return UnitImaginary::from_vector(v[0], v[1], v[2]).unwrap();
        }
    }
}

/// Matrix of `x ↦ p x` in the basis `1, i, j, k`.
fn left_matrix(p: Quaternion) -> Matrix4<f64> {
    let [a, b, c, d] = p.to_array();
    Matrix4::new(a, -b, -c, -d, b, a, -d, c, c, d, a, -b, d, -c, b, a)
}

/// Matrix of `x ↦ x p`.
fn right_matrix(p: Quaternion) -> Matrix4<f64> {
    let [a, b, c, d] = p.to_array();
    Matrix4::new(a, -b, -c, -d, b, a, d, -c, c, -d, a, b, d, c, -b, a)
}

fn vec4(q: Quaternion) -> Vector4<f64> {
    Vector4::from(q.to_array())
}

#[test]
fn product_matches_matrix_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let p = random_quaternion(&mut rng, 2.0);
        let q = random_quaternion(&mut rng, 2.0);
        let via_left = left_matrix(p) * vec4(q);
        let via_right = right_matrix(q) * vec4(p);
        let prod = vec4(p * q);
        assert!((via_left - prod).norm() < 1e-13);
        assert!((via_right - prod).norm() < 1e-13);
    }
}

#[test]
fn basis_multiplication_table() {
    let (i, j, k, one) = (Quaternion::I, Quaternion::J, Quaternion::K, Quaternion::ONE);
    let table = [
        (i, i, -one),
        (j, j, -one),
        (k, k, -one),
        (i, j, k),
        (j, k, i),
        (k, i, j),
        (j, i, -k),
        (k, j, -i),
        (i, k, -j),
    ];
    for (a, b, c) in table {
        assert_eq!(a * b, c);
        assert_eq!(vec4(a * b), left_matrix(a) * vec4(b));
    }
}

/// `L c = c I` solved as a linear system in the coordinates of `L`.
#[test]
fn rotated_unit_solves_linear_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let c = random_quaternion(&mut rng, 2.0);
        if c.norm() < 1e-2 {
            continue;
        }
        let i = random_unit(&mut rng);
        let rhs = vec4(c * i.as_quaternion());
        let l = right_matrix(c).lu().solve(&rhs).unwrap();
        let got = rotate_unit(c, i).unwrap().as_quaternion();
        assert!((vec4(got) - l).norm() < 1e-11, "{got} vs {l}");
    }
}

/// Closed-form sphere extrema against dense sampling of `|b + I c|`.
#[test]
fn sphere_extrema_match_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let b = random_quaternion(&mut rng, 1.0);
        let c = random_quaternion(&mut rng, 1.0);
        let e = sphere_extrema(b, c);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for _ in 0..100_000 {
            let v = (b + random_unit(&mut rng).as_quaternion() * c).norm_sqr();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(lo >= e.min * e.min - 1e-12 && hi <= e.max * e.max + 1e-12);
        assert!((lo - e.min * e.min).abs() < 1e-3, "{lo} vs {}", e.min * e.min);
        assert!((hi - e.max * e.max).abs() < 1e-3, "{hi} vs {}", e.max * e.max);
    }
}

/// Sphere constants against direct evaluation on several slices.
#[test]
fn sphere_pair_reproduces_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = Series::polynomial((0..7).map(|_| random_quaternion(&mut rng, 1.0)).collect(), 1.0).unwrap();
    for _ in 0..200 {
        let (x, y) = (rng.random_range(-0.6..0.6), rng.random_range(0.0..0.6));
        let p = sphere_pair(&f, x, y).unwrap();
        let u = random_unit(&mut rng);
        assert!((p.at(u) - f.eval(u.embed(x, y)).unwrap()).norm() < 1e-12);
    }
}

/// `M(0.9)` of `q + q² j`: random sampling followed by a projected
/// coordinate ascent on the sphere `|q| = 0.9` of `R⁴`.
#[test]
fn ball_supremum_matches_random_search() {
    let f = Series::polynomial(vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::J], 1.0).unwrap();
    let s = 0.9;
    let lib = sup_norm_ball(&f, s, &NormConfig::default()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let value = |q: Quaternion| f.eval_unchecked(q).norm();
    let project = |q: Quaternion| q * (s / q.norm());
    let mut samples: Vec<(f64, Quaternion)> = (0..1_000_000)
        .map(|_| {
            let q = project(random_quaternion(&mut rng, 1.0));
            (value(q), q)
        })
        .collect();
    assert!(samples.iter().all(|(v, _)| *v <= lib.value + 1e-12));
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = 0.0f64;
    for &(mut v, mut q) in samples.iter().take(8) {
        let mut step = 1e-2;
        while step > 1e-12 {
            let mut moved = false;
            for axis in 0..4 {
                for sign in [-1.0, 1.0] {
                    let mut e = [0.0; 4];
                    e[axis] = sign * step;
                    let cand = project(q + Quaternion::from(e));
                    let cv = value(cand);
                    if cv > v {
                        (q, v, moved) = (cand, cv, true);
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        best = best.max(v);
    }
    assert!((best - lib.value).abs() < 1e-4, "oracle {best} vs {}", lib.value);
}

/// Slice norm against dense sampling of `|F|` and `|G|`, read off the
/// components of `f` along `L_I` and its orthogonal complement.
#[test]
fn slice_norm_matches_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = Series::polynomial((0..5).map(|_| random_quaternion(&mut rng, 1.0)).collect(), 1.0).unwrap();
    let i = random_unit(&mut rng);
    let (mut sup_f, mut sup_g) = (0.0f64, 0.0f64);
    let n = 200_000;
    for k in 0..n {
        let t = std::f64::consts::TAU * k as f64 / n as f64;
        let v = f.eval_unchecked(i.embed(t.cos(), t.sin()));
        // v = F + G J with F, G in L_I; project onto L_I and L_I J
        let iq = i.as_quaternion();
        let fpart = Quaternion::real(v.re()) + iq * v.dot(iq);
        let gpart = v - fpart;
        sup_f = sup_f.max(fpart.norm());
        sup_g = sup_g.max(gpart.norm());
    }
    let oracle = sup_f.hypot(sup_g);
    let lib = slice_norm(&f, i, &NormConfig::default());
    assert!(lib >= oracle - 1e-12);
    assert!((lib - oracle).abs() < 1e-8, "{lib} vs {oracle}");
}

/// `(1 − q)^k` has fourth root `(1 − q)^{k/4}` with generalized binomial
/// coefficients.
#[test]
fn fourth_root_matches_binomial_series() {
    for k in 1..=4u32 {
        let mut coeffs = vec![0.0; k as usize + 1];
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c = binomial_real(k as f64, n) * if n % 2 == 0 { 1.0 } else { -1.0 };
        }
        let g = Series::from_reals(&coeffs, 1.0).unwrap();
        let psi = fourth_root_series_to(&g, 30).unwrap();
        for n in 0..=30 {
            let expected = binomial_real(k as f64 / 4.0, n) * if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((psi.coeff(n).re() - expected).abs() < 1e-13, "k={k} n={n}");
        }
    }
}

fn binomial_real(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, t| acc * (a - t as f64) / (t + 1) as f64)
}

/// Translation coefficients against repeated expansion with Pascal's rule.
#[test]
fn translation_matches_pascal_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let deg = 60;
    let coeffs: Vec<Quaternion> = (0..=deg).map(|_| random_quaternion(&mut rng, 1.0)).collect();
    let f = Series::polynomial(coeffs.clone(), 1.0).unwrap();
    let w = Quaternion::new(0.1, 0.05, -0.1, 0.02);
    let lib = regular_translation(&f, w).unwrap();

    // (z + w)^n expanded as polynomials in z with quaternion coefficients
    // on the left, built by multiplying (z + w) one factor at a time
    let mut power: Vec<Quaternion> = vec![Quaternion::ONE];
    let mut acc = vec![Quaternion::ZERO; deg + 1];
    for (n, &a) in coeffs.iter().enumerate() {
        if n > 0 {
            let mut next = vec![Quaternion::ZERO; power.len() + 1];
            for (m, &p) in power.iter().enumerate() {
                next[m + 1] += p;
                next[m] += w * p;
            }
            power = next;
        }
        for (m, &p) in power.iter().enumerate() {
            acc[m] += p * a;
        }
    }
    for m in 0..=deg {
        let scale = acc[m].norm().max(1.0);
        assert!((lib.coeff(m) - acc[m]).norm() < 1e-12 * scale, "m={m}");
    }
}

/// Every point of a dense grid of the inscribed disc is inside the eight.
#[test]
fn inscribed_disc_grid_oracle() {
    for rho in [1.0 / (32.0 * 2f64.sqrt()), 0.1, 0.25, 1.0] {
        assert!(inscribed_disc_check(rho).unwrap().contained);
        let r = 37.0 / 256.0 * rho * rho;
        let n = 400;
        for a in 0..=n {
            for b in 0..=n {
                let x = rho / 2.0 - r + 2.0 * r * a as f64 / n as f64;
                let y = -r + 2.0 * r * b as f64 / n as f64;
                if (x - rho / 2.0).hypot(y) < r {
                    assert!((x * x + y * y).powf(1.5) < rho * x * x, "rho={rho} ({x}, {y})");
                }
            }
        }
    }
}

/// Newton preimages are checked by evaluating `f` independently.
#[test]
fn newton_roots_verified_by_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = Series::polynomial(vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::new(0.0, 0.1, 0.2, 0.0)], 1.0).unwrap();
    for k in 0..20 {
        let t = random_quaternion(&mut rng, 0.2);
        let a = attain(&f, t, 1.0, k, &NewtonConfig::default()).unwrap().expect("small targets are attained");
        let mut direct = Quaternion::ZERO;
        let mut p = Quaternion::ONE;
        for &c in f.coeffs() {
            direct += p * c;
            p = p * a.point;
        }
        assert!((direct - t).norm() < 1e-8);
        assert!(a.point.norm() < 1.0);
    }
}
