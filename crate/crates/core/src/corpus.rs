//! Built-in test functions and seeded random polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quaternion::Quaternion;
use crate::series::Series;

/// Degree of the truncated exponential in the corpus.
pub const EXP_TRUNCATION: usize = 12;

/// A named normalized function on `B(0, 1)`: `f(0) = 0`, `∂_C f(0) = 1`.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub series: Series,
}

fn q(x0: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
    Quaternion::new(x0, x1, x2, x3)
}

fn entry(name: &'static str, coeffs: Vec<Quaternion>, exact: bool) -> CorpusEntry {
    let series = Series::new(coeffs, 1.0, exact).expect("corpus series are valid");
    CorpusEntry { name, series }
}

/// The normalized corpus used by the verification suites.
pub fn normalized_corpus() -> Vec<CorpusEntry> {
    let zero = Quaternion::ZERO;
    let one = Quaternion::ONE;
    let mut exp = vec![zero, one];
    let mut fact = 1.0;
    for n in 2..=EXP_TRUNCATION {
        fact *= n as f64;
        exp.push(Quaternion::real(1.0 / fact));
    }
    vec![
        entry("identity", vec![zero, one], true),
        entry("quadratic", vec![zero, one, Quaternion::real(0.1)], true),
        entry("cubic", vec![zero, one, zero, Quaternion::real(0.5)], true),
        entry("quadratic_j", vec![zero, one, Quaternion::J], true),
        entry("mixed", vec![zero, one, q(0.0, 0.2, 0.0, -0.1), q(0.05, 0.0, 0.1, 0.0)], true),
        entry("quartic", vec![zero, one, q(0.0, 0.0, 0.0, 0.3), zero, q(0.2, -0.1, 0.0, 0.1)], true),
        entry("exp_minus_one", exp, false),
    ]
}

/// Looks up a corpus function by name.
pub fn corpus_function(name: &str) -> Option<Series> {
    normalized_corpus().into_iter().find(|e| e.name == name).map(|e| e.series)
}

/// A quaternion with coordinates uniform in `[-scale, scale]`.
pub fn random_quaternion<R: Rng>(rng: &mut R, scale: f64) -> Quaternion {
    Quaternion::from(std::array::from_fn::<f64, 4, _>(|_| rng.random_range(-scale..=scale)))
}

/// Polynomial on `B(0, 1)` of degree exactly `degree`, coefficients
/// uniform in `[-1, 1]⁴`.
pub fn random_polynomial<R: Rng>(rng: &mut R, degree: usize) -> Series {
    let coeffs = (0..=degree).map(|_| random_quaternion(rng, 1.0)).collect();
    Series::polynomial(coeffs, 1.0).expect("finite coefficients")
}

/// `q + Σ_{n≥2} qⁿ aₙ` with `aₙ` uniform in `[-1/2, 1/2]⁴`.
pub fn random_normalized<R: Rng>(rng: &mut R, degree: usize) -> Series {
    let mut coeffs = vec![Quaternion::ZERO, Quaternion::ONE];
    coeffs.extend((2..=degree).map(|_| random_quaternion(rng, 0.5)));
    Series::polynomial(coeffs, 1.0).expect("finite coefficients")
}

/// Seeded generator shared by the suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
