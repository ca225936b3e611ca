//! Hölder's inequality on moment facts.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::facts::{LogPower, MomentFact};
use super::rational::Rational;
use crate::error::{invalid, Result};

/// Combine `∫ Πfᵢ^{wᵢ}` from bounds on each `∫ fᵢ`.
///
/// Weights must be positive and sum to exactly one; each fact's own
/// validity range is rechecked. An unspecified log power or a `T^ε`
/// in any input carries over to the result.
pub fn holder_combine(facts: &[MomentFact], weights: &[Rational]) -> Result<MomentFact> {
    if facts.is_empty() || facts.len() != weights.len() {
        return invalid(format!("{} facts but {} weights", facts.len(), weights.len()));
    }
    if let Some(w) = weights.iter().find(|w| **w <= Rational::zero()) {
        return invalid(format!("Hölder weight {w} is not positive"));
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return invalid(format!("Hölder weights sum to {total}, not 1"));
    }
    for f in facts {
        if let Some(v) = &f.validity {
            v.check(&f.powers)?;
        }
    }
    if facts.len() == 1 {
        return Ok(facts[0].clone());
    }

    let mut powers: BTreeMap<_, Rational> = BTreeMap::new();
    let mut growth = Rational::zero();
    let mut log = Some(Rational::zero());
    let mut has_epsilon = false;
    for (f, w) in facts.iter().zip(weights) {
        for (atom, p) in &f.powers {
            *powers.entry(*atom).or_insert_with(Rational::zero) += w * p;
        }
        growth += w * &f.growth;
        log = match (&log, &f.log_power) {
            (Some(acc), LogPower::Explicit(l)) => Some(acc + w * l),
            _ => None,
        };
        has_epsilon |= f.has_epsilon;
    }
    powers.retain(|_, p| !p.is_zero());
    Ok(MomentFact {
        powers,
        growth,
        log_power: log.map_or(LogPower::Unspecified, LogPower::Explicit),
        has_epsilon,
        validity: None,
        tag: "holder".into(),
    })
}
