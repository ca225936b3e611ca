//! Baselines: pointwise-only estimates and the conditional exponent.

use num_traits::Zero;

use super::facts::{zeta_moment_exponent, FactDatabase};
use super::rational::{int, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrivialStrategy {
    /// Δᵏ bounded pointwise, ζ-moment integrated.
    DeltaPointwise,
    /// |ζ|^{2m} bounded pointwise, Δ-moment integrated.
    ZetaPointwise,
    /// Both bounded pointwise.
    BothPointwise,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialBound {
    pub exponent: Rational,
    pub strategy: TrivialStrategy,
    /// Every admissible strategy with its exponent.
    pub candidates: Vec<(TrivialStrategy, Rational)>,
}

pub fn trivial_bound(k: u32, m: u32, db: &FactDatabase) -> Result<Rational> {
    trivial_bound_detailed(k, m, db).map(|t| t.exponent)
}

pub fn trivial_bound_detailed(k: u32, m: u32, db: &FactDatabase) -> Result<TrivialBound> {
    if k == 0 && m == 0 {
        return invalid("trivial bound needs k + m > 0");
    }
    let kk = int(k.into());
    let zz = int(2 * i64::from(m));
    let mut candidates = Vec::new();
    let mut notes = Vec::new();

    let zeta_integrated = match m {
        0 | 1 => Some(int(1)),
        _ => zeta_moment_exponent(&zz).ok(),
    };
    match zeta_integrated {
        Some(z) => candidates.push((TrivialStrategy::DeltaPointwise, &kk * &db.theta + z)),
        None => notes.push(format!("Δ pointwise: ζ-power {zz} outside [4, 12]")),
    }
    let delta_integrated = if k == 0 { Some(int(1)) } else { db.m_of_a(&kk).ok().map(|x| int(1) + x) };
    match delta_integrated {
        Some(d) => candidates.push((TrivialStrategy::ZetaPointwise, &zz * db.sigma_zeta() + d)),
        None => notes.push(format!("ζ pointwise: Δ-power {k} outside [0, 11]")),
    }
    candidates.push((TrivialStrategy::BothPointwise, &kk * &db.theta + &zz * db.sigma_zeta() + int(1)));

    let (strategy, exponent) = candidates
        .iter()
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .cloned()
        .ok_or(Error::Infeasible(notes))?;
    Ok(TrivialBound { exponent, strategy, candidates })
}

/// `1 + k/4`, conditional on both pointwise conjectures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjecturalExponent {
    pub exponent: Rational,
    pub conditional_on: Vec<String>,
}

pub fn conjectural_exponent(k: u32, _m: u32) -> ConjecturalExponent {
    ConjecturalExponent {
        exponent: int(1) + Rational::new(k.into(), 4.into()),
        conditional_on: vec![
            "Δ(x) ≪ x^(1/4+ε)".into(),
            "ζ(½+it) ≪ |t|^ε (Lindelöf hypothesis)".into(),
        ],
    }
}

impl ConjecturalExponent {
    pub fn is_trivially_one(&self) -> bool {
        (&self.exponent - int(1)).is_zero()
    }
}
