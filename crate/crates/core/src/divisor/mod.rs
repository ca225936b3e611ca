//! Divisor counts, lattice-point counts, and the error terms
//! Δ(x), Δ*(x) and P(x) measured against their main terms.
//!
//! Prefix sums are exact integers; main terms are evaluated in
//! double-double arithmetic and rounded once at the end, so each error
//! term is accurate to nearly full `f64` precision relative to its own
//! (small) magnitude.

mod cache;
mod squares;
mod stream;

pub use cache::{read_divisor_table, write_divisor_table, DIVISOR_CACHE_MAGIC, DIVISOR_CACHE_VERSION};
pub use squares::{circle_error, sieve_two_squares, TwoSquaresTable};
pub use stream::{DivisorChunk, DivisorStream};

use rayon::prelude::*;

use crate::constants::two_gamma_minus_one;
use crate::dd::DoubleDouble;
use crate::error::{invalid, out_of_range, Error, Result};

/// Largest table accepted by [`sieve_divisor_counts`]; beyond it use [`DivisorStream`].
pub const MAX_TABLE_LIMIT: u64 = 1 << 31;

/// Memory per table entry: a `u32` count plus a `u64` prefix sum.
pub const BYTES_PER_ENTRY: usize = std::mem::size_of::<u32>() + std::mem::size_of::<u64>();

const SIEVE_BLOCK: usize = 1 << 16;

/// `d(n)` for `1 ≤ n ≤ N` with exact partial sums `D(x) = Σ_{n≤x} d(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    limit: u64,
    // Index 0 is a zero sentinel so that counts[n] = d(n).
    counts: Vec<u32>,
    prefix: Vec<u64>,
}

impl DivisorTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `d(n)`; panics if `n` is 0 or past the limit.
    pub fn count(&self, n: u64) -> u32 {
        assert!(n >= 1 && n <= self.limit, "n = {n} outside 1..={}", self.limit);
        self.counts[n as usize]
    }

    /// `d(1), …, d(N)`.
    pub fn counts(&self) -> &[u32] {
        &self.counts[1..]
    }

    /// `D(n) = Σ_{j≤n} d(j)` for `0 ≤ n ≤ N`.
    pub fn prefix(&self, n: u64) -> u64 {
        self.prefix[n as usize]
    }

    pub(crate) fn from_counts(counts: Vec<u32>) -> Result<Self> {
        debug_assert_eq!(counts.first(), Some(&0));
        let limit = (counts.len() - 1) as u64;
        let mut prefix = alloc_zeroed::<u64>(counts.len())?;
        let mut acc = 0u64;
        for (p, &c) in prefix.iter_mut().zip(&counts) {
            acc += c as u64;
            *p = acc;
        }
        Ok(Self { limit, counts, prefix })
    }

    fn check_x(&self, x: f64, what: &str) -> Result<u64> {
        if !x.is_finite() || x < 1.0 {
            return invalid(format!("{what} requires x ≥ 1, got {x}"));
        }
        let n = x.floor() as u64;
        if n > self.limit {
            return out_of_range(format!("{what}: floor({x}) exceeds table limit {}", self.limit));
        }
        Ok(n)
    }

    fn delta_dd(&self, x: f64) -> Result<DoubleDouble> {
        let n = self.check_x(x, "Δ(x)")?;
        Ok(DoubleDouble::from_f64(self.prefix(n) as f64) - divisor_main_term(x))
    }
}

pub(crate) fn alloc_zeroed<T: Clone + Default>(len: usize) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|e| {
        Error::Resource(format!(
            "cannot allocate {len} entries of {} bytes: {e}",
            std::mem::size_of::<T>()
        ))
    })?;
    v.resize(len, T::default());
    Ok(v)
}

/// `x(log x + 2γ − 1)` in double-double precision.
pub(crate) fn divisor_main_term(x: f64) -> DoubleDouble {
    (DoubleDouble::ln_f64(x) + two_gamma_minus_one()).mul_f64(x)
}

/// Sieve `d(n)` for `n ≤ limit`.
///
/// Blocks of the index range are sieved independently in parallel; the
/// table is identical for any thread count. Footprint is
/// [`BYTES_PER_ENTRY`] bytes per entry.
pub fn sieve_divisor_counts(limit: u64) -> Result<DivisorTable> {
    if limit == 0 {
        return invalid("divisor table limit must be at least 1");
    }
    if limit > MAX_TABLE_LIMIT {
        return Err(Error::Resource(format!(
            "table limit {limit} exceeds {MAX_TABLE_LIMIT}; use DivisorStream for larger ranges"
        )));
    }
    let mut counts = alloc_zeroed::<u32>(limit as usize + 1)?;
    counts[1..]
        .par_chunks_mut(SIEVE_BLOCK)
        .enumerate()
        .for_each(|(b, block)| {
            let lo = 1 + (b * SIEVE_BLOCK) as u64;
            sieve_segment(lo, block);
        });
    DivisorTable::from_counts(counts)
}

/// Fill `out[i] = d(lo + i)` by pairing each divisor `d ≤ √n` with `n / d`.
pub(crate) fn sieve_segment(lo: u64, out: &mut [u32]) {
    out.iter_mut().for_each(|c| *c = 0);
    let hi = lo + out.len() as u64; // exclusive
    let root = isqrt(hi - 1);
    for d in 1..=root {
        let sq = d * d;
        let start = sq.max(lo.div_ceil(d) * d);
        let mut n = start;
        while n < hi {
            out[(n - lo) as usize] += if n == sq { 1 } else { 2 };
            n += d;
        }
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `D(x) = 2 Σ_{k≤√x} ⌊x/k⌋ − ⌊√x⌋²`, in O(√x) operations.
pub fn hyperbola_divisor_sum(x: u64) -> u64 {
    let r = isqrt(x);
    2 * (1..=r).map(|k| x / k).sum::<u64>() - r * r
}

/// Δ(x) = Σ_{n≤x} d(n) − x(log x + 2γ − 1).
///
/// The sum includes `n = x` when `x` is an integer, so Δ jumps by `d(n)`
/// at each integer and is right-continuous.
pub fn delta(x: f64, table: &DivisorTable) -> Result<f64> {
    table.delta_dd(x).map(DoubleDouble::to_f64)
}

/// Δ*(x) = −Δ(x) + 2Δ(2x) − ½Δ(4x).
pub fn delta_star(x: f64, table: &DivisorTable) -> Result<f64> {
    if x.is_finite() && x >= 1.0 && (4.0 * x).floor() as u64 > table.limit {
        return out_of_range(format!("Δ*(x): floor(4x) exceeds table limit {}", table.limit));
    }
    let a = table.delta_dd(x)?;
    let b = table.delta_dd(2.0 * x)?;
    let c = table.delta_dd(4.0 * x)?;
    Ok((b.mul_f64(2.0) - a - c.mul_f64(0.5)).to_f64())
}

/// Δ*(x) through the alternating form ½ Σ_{n≤4x} (−1)ⁿ d(n) − x(log x + 2γ − 1).
///
/// Sums the counts directly, so it costs O(x); it exists as an independent
/// route to [`delta_star`].
pub fn delta_star_alternating(x: f64, table: &DivisorTable) -> Result<f64> {
    if !x.is_finite() || x < 1.0 {
        return invalid(format!("Δ*(x) requires x ≥ 1, got {x}"));
    }
    let top = (4.0 * x).floor() as u64;
    if top > table.limit {
        return out_of_range(format!("Δ*(x): floor(4x) exceeds table limit {}", table.limit));
    }
    let alt: i64 = (1..=top)
        .map(|n| {
            let d = table.count(n) as i64;
            if n % 2 == 0 { d } else { -d }
        })
        .sum();
    Ok((DoubleDouble::from_f64(alt as f64 * 0.5) - divisor_main_term(x)).to_f64())
}

/// Exact ∫ₐᵇ Δ(t) dt over `1 ≤ a ≤ b ≤ limit + 1`, using the closed form of
/// the main term's antiderivative on each unit interval.
pub fn integrate_delta(a: f64, b: f64, table: &DivisorTable) -> Result<f64> {
    if !(a >= 1.0 && b >= a) {
        return invalid(format!("need 1 ≤ a ≤ b, got a = {a}, b = {b}"));
    }
    if b.floor() as u64 > table.limit + 1 || (b.floor() as u64 > table.limit && b.fract() != 0.0) {
        return out_of_range(format!("upper limit {b} exceeds table limit {}", table.limit));
    }
    let c = crate::constants::EULER_GAMMA * 2.0 - 1.0;
    let antideriv = |t: f64| 0.5 * t * t * (t.ln() - 0.5 + c);
    let mut step_part = crate::summation::CompensatedSum::new();
    let mut lo = a;
    while lo < b {
        let n = lo.floor();
        let hi = (n + 1.0).min(b);
        step_part.add(table.prefix(n as u64) as f64 * (hi - lo));
        lo = hi;
    }
    Ok(step_part.value() - (antideriv(b) - antideriv(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trial_division(n: u64) -> u32 {
        let mut c = 0;
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                c += if d * d == n { 1 } else { 2 };
            }
            d += 1;
        }
        c
    }

    #[test]
    fn small_tables() {
        assert_eq!(sieve_divisor_counts(1).unwrap().counts(), &[1]);
        let t = sieve_divisor_counts(12).unwrap();
        assert_eq!(t.count(12), 6);
        assert_eq!(t.prefix(10), 27);
    }

    #[test]
    fn zero_limit_is_rejected() {
        assert!(matches!(sieve_divisor_counts(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn oversized_limit_is_a_resource_error() {
        assert!(matches!(sieve_divisor_counts(MAX_TABLE_LIMIT + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn sieve_matches_trial_division_to_ten_thousand() {
        let t = sieve_divisor_counts(10_000).unwrap();
        for n in 1..=10_000 {
            assert_eq!(t.count(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primes_have_two_divisors() {
        let t = sieve_divisor_counts(2_000).unwrap();
        for p in (2..=2_000u64).filter(|&p| trial_division(p) == 2) {
            assert_eq!(t.count(p), 2);
        }
        assert_eq!(t.prefix(2_000), t.counts().iter().map(|&c| c as u64).sum::<u64>());
    }

    #[test]
    fn block_boundaries_are_seamless() {
        let n = 3 * SIEVE_BLOCK as u64 + 17;
        let t = sieve_divisor_counts(n).unwrap();
        for m in [SIEVE_BLOCK as u64 - 1, SIEVE_BLOCK as u64, SIEVE_BLOCK as u64 + 1, n] {
            assert_eq!(t.count(m), trial_division(m));
        }
    }

    #[test]
    fn delta_reference_values() {
        let t = sieve_divisor_counts(100).unwrap();
        // 3 − 2(ln 2 + 2γ − 1) and 27 − 10(ln 10 + 2γ − 1), evaluated at 40 digits.
        assert!((delta(2.0, &t).unwrap() - 1.304_842_979_273_978).abs() < 1e-14);
        assert!((delta(10.0, &t).unwrap() - 2.429_835_772_028_886).abs() < 1e-14);
    }

    #[test]
    fn delta_jumps_by_d_n_at_integers() {
        let t = sieve_divisor_counts(100).unwrap();
        for n in [2u64, 12, 36, 97] {
            let x = n as f64;
            let below = delta(x - 1e-9, &t).unwrap();
            let at = delta(x, &t).unwrap();
            assert!((at - below - t.count(n) as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn delta_range_errors() {
        let t = sieve_divisor_counts(10).unwrap();
        assert!(matches!(delta(0.5, &t), Err(Error::InvalidArgument(_))));
        assert!(matches!(delta(11.0, &t), Err(Error::OutOfRange(_))));
        assert!(matches!(delta_star(3.0, &t), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn delta_star_small_cases() {
        let t = sieve_divisor_counts(100).unwrap();
        let a = delta_star(2.0, &t).unwrap();
        let b = delta_star_alternating(2.0, &t).unwrap();
        // alternating sum over n ≤ 8 is 6, halved to 3
        assert!((b - (3.0 - 2.0 * (2f64.ln() + 2.0 * crate::constants::EULER_GAMMA - 1.0))).abs() < 1e-14);
        assert!((a - b).abs() < 1e-14);
        let one = delta_star(1.0, &t).unwrap();
        let direct = -delta(1.0, &t).unwrap() + 2.0 * delta(2.0, &t).unwrap() - 0.5 * delta(4.0, &t).unwrap();
        assert!((one - direct).abs() < 1e-13);
    }

    #[test]
    fn hyperbola_identity_on_random_reals() {
        let t = sieve_divisor_counts(1_000_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1_000 {
            let x: f64 = rng.gen_range(1.0..1_000_000.0);
            let n = x.floor() as u64;
            assert_eq!(t.prefix(n), hyperbola_divisor_sum(n));
        }
    }

    #[test]
    fn mean_of_delta_is_small() {
        let t = sieve_divisor_counts(100_000).unwrap();
        for big_t in [1e3, 1e4, 1e5] {
            let mean = integrate_delta(2.0, big_t, &t).unwrap() / big_t;
            assert!(mean.abs() <= 5.0 * big_t.powf(0.25), "T = {big_t}: mean = {mean}");
        }
    }

    #[test]
    fn integrate_delta_matches_simpson_within_unit_panels() {
        let t = sieve_divisor_counts(50).unwrap();
        let exact = integrate_delta(3.0, 4.0, &t).unwrap();
        let n = 200;
        let samples: Vec<f64> = (0..=n)
            .map(|i| {
                let x = 3.0 + i as f64 / n as f64;
                t.prefix(3) as f64 - divisor_main_term(x).to_f64()
            })
            .collect();
        let s = crate::quadrature::simpson(&samples, 1.0 / n as f64);
        assert!((exact - s).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn delta_star_forms_agree(x in 2.0f64..2_500.0) {
            let t = table_10k();
            let a = delta_star(x, t).unwrap();
            let b = delta_star_alternating(x, t).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(b.abs()), "x = {}: {} vs {}", x, a, b);
        }
    }

    fn table_10k() -> &'static DivisorTable {
        static T: std::sync::OnceLock<DivisorTable> = std::sync::OnceLock::new();
        T.get_or_init(|| sieve_divisor_counts(10_000).unwrap())
    }
}
