//! Random valid inputs for property checks and the verification suite.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;

use crate::scalar::Rational;

/// `n` moduli in `[lo, hi]` with pairwise gaps of at least `min_gap`, sorted
/// descending.
pub fn random_moduli<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    let slack = (hi - lo) - min_gap * n.saturating_sub(1) as f64;
    assert!(slack >= 0.0, "cannot fit {n} moduli with gap {min_gap} in [{lo}, {hi}]");
    let mut u: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * slack).collect();
    u.sort_by(f64::total_cmp);
    let mut moduli: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(i, x)| lo + x + min_gap * i as f64)
        .collect();
    moduli.reverse();
    moduli
}

/// Alternating-sign spectrum with the given moduli (largest first).
pub fn alternate(moduli: &[f64]) -> Vec<f64> {
    moduli
        .iter()
        .enumerate()
        .map(|(j, m)| if j % 2 == 0 { *m } else { -*m })
        .collect()
}

/// Valid float spectrum of length `n`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    alternate(&random_moduli(rng, n, lo, hi, min_gap))
}

/// Valid rational spectrum: distinct moduli `p / q` with `p` drawn without
/// replacement from `1..=4n` and a shared random denominator `q` in `1..=9`.
pub fn random_rational_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    let denom = BigInt::from(rng.random_range(1..=9_i64));
    let mut numerators: Vec<usize> = sample(rng, 4 * n, n).into_iter().map(|i| i + 1).collect();
    numerators.sort_unstable_by(|a, b| b.cmp(a));
    numerators
        .into_iter()
        .enumerate()
        .map(|(j, p)| {
            let v = Rational::new(BigInt::from(p), denom.clone());
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Strictly decreasing positive tuple.
pub fn random_positive_tuple<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    random_moduli(rng, n, lo, hi, min_gap)
}

/// Positive float coefficients uniform in `[lo, hi]`.
pub fn random_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| lo + rng.random::<f64>() * (hi - lo)).collect()
}

/// Positive rational coefficients `p / q` with `p` in `1..=20`, `q` in `1..=6`.
pub fn random_rational_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            Rational::new(
                BigInt::from(rng.random_range(1..=20_i64)),
                BigInt::from(rng.random_range(1..=6_i64)),
            )
        })
        .collect()
}

/// Arbitrary-sign rational entries `p / q` with `p` in `-9..=9`, `q` in `1..=4`.
pub fn random_rational_entry<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.random_range(-9..=9_i64)),
        BigInt::from(rng.random_range(1..=4_i64)),
    )
}
