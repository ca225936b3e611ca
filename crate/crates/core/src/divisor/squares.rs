use crate::constants::PI_DD;
use crate::dd::DoubleDouble;
use crate::error::{invalid, out_of_range, Result};

use super::alloc_zeroed;

/// `r(n) = #{(a, b) ∈ ℤ² : a² + b² = n}` for `0 ≤ n ≤ N`, with prefix sums from `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSquaresTable {
    limit: u64,
    counts: Vec<u32>,
    prefix: Vec<u64>,
}

impl TwoSquaresTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn count(&self, n: u64) -> u32 {
        self.counts[n as usize]
    }

    /// `Σ_{1≤j≤n} r(j)`.
    pub fn prefix(&self, n: u64) -> u64 {
        self.prefix[n as usize]
    }
}

/// Enumerate lattice points in the quarter disc and spread them by symmetry.
pub fn sieve_two_squares(limit: u64) -> Result<TwoSquaresTable> {
    if limit == 0 {
        return invalid("two-squares table limit must be at least 1");
    }
    if limit > super::MAX_TABLE_LIMIT {
        return Err(crate::Error::Resource(format!("two-squares table limit {limit} too large")));
    }
    let mut counts = alloc_zeroed::<u32>(limit as usize + 1)?;
    let mut a = 0u64;
    while a * a <= limit {
        let mut b = 0u64;
        while a * a + b * b <= limit {
            let w = if a > 0 { 2 } else { 1 } * if b > 0 { 2 } else { 1 };
            counts[(a * a + b * b) as usize] += w;
            b += 1;
        }
        a += 1;
    }
    let mut prefix = alloc_zeroed::<u64>(counts.len())?;
    let mut acc = 0u64;
    for n in 1..counts.len() {
        acc += counts[n] as u64;
        prefix[n] = acc;
    }
    Ok(TwoSquaresTable { limit, counts, prefix })
}

/// P(x) = Σ_{1≤n≤x} r(n) − πx, for any `x ≥ 0` (the sum is empty below 1).
pub fn circle_error(x: f64, table: &TwoSquaresTable) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return invalid(format!("P(x) requires x ≥ 0, got {x}"));
    }
    let n = x.floor() as u64;
    if n > table.limit {
        return out_of_range(format!("P(x): floor({x}) exceeds table limit {}", table.limit));
    }
    Ok((DoubleDouble::from_f64(table.prefix(n) as f64) - PI_DD.mul_f64(x)).to_f64())
}
