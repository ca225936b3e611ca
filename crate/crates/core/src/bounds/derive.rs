//! Search over Hölder splittings for the best bound on a mixed moment.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::facts::{Atom, FactDatabase, LogPower, MomentFact, PointwiseFact};
use super::holder::holder_combine;
use super::rational::{farey_interior, int, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// One database fact covers the integrand directly.
    SingleFact,
    /// `(Δ⁸|ζ|²)^{k/8} · |ζ|^A`.
    EighthMomentSplit,
    /// A Δ-moment and a ζ-moment from the parametric families.
    TwoFactorSplit,
    /// Part of one atom bounded pointwise, the rest by one of the above.
    PointwiseHybrid,
    /// Uses the `A₀` hypothesis slot.
    Hypothesis,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::SingleFact => "single_fact",
            Strategy::EighthMomentSplit => "eighth_moment_split",
            Strategy::TwoFactorSplit => "two_factor_split",
            Strategy::PointwiseHybrid => "pointwise_hybrid",
            Strategy::Hypothesis => "hypothesis",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolderStep {
    pub fact: MomentFact,
    pub weight: Rational,
}

/// `sup_{t ≤ T} atom(t)^power`, pulled out of the integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseStep {
    pub fact: PointwiseFact,
    pub power: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub target: (u32, u32),
    pub strategy: Strategy,
    pub pointwise: Vec<PointwiseStep>,
    pub steps: Vec<HolderStep>,
    pub result: MomentFact,
    /// Hypotheses the result depends on; empty for unconditional bounds.
    pub conditional_on: Vec<String>,
}

impl Derivation {
    pub fn growth(&self) -> &Rational {
        &self.result.growth
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.weight.clone()).collect()
    }

    /// Target powers `{Δ: k, ζ: 2m}` with zero entries dropped.
    pub fn target_powers(&self) -> BTreeMap<Atom, Rational> {
        target_powers(self.target.0, self.target.1)
    }

    /// Weighted fact powers plus pointwise powers, which must equal the target.
    pub fn accounted_powers(&self) -> BTreeMap<Atom, Rational> {
        let mut acc: BTreeMap<Atom, Rational> = BTreeMap::new();
        for s in &self.steps {
            for (a, p) in &s.fact.powers {
                *acc.entry(*a).or_insert_with(Rational::zero) += &s.weight * p;
            }
        }
        for p in &self.pointwise {
            *acc.entry(p.fact.atom).or_insert_with(Rational::zero) += &p.power;
        }
        acc.retain(|_, p| !p.is_zero());
        acc
    }

    pub fn is_conditional(&self) -> bool {
        !self.conditional_on.is_empty()
    }

    fn sort_key(&self) -> (&Rational, bool, bool, Vec<Rational>, Strategy, Vec<Rational>) {
        (
            &self.result.growth,
            self.result.has_epsilon,
            self.result.log_power == LogPower::Unspecified,
            self.weights(),
            self.strategy,
            self.pointwise.iter().map(|p| p.power.clone()).collect(),
        )
    }

    fn better_than(&self, other: &Derivation) -> bool {
        self.sort_key().cmp(&other.sort_key()) == Ordering::Less
    }
}

fn target_powers(k: u32, m: u32) -> BTreeMap<Atom, Rational> {
    let mut t = BTreeMap::new();
    if k > 0 {
        t.insert(Atom::DeltaAbs, int(k.into()));
    }
    if m > 0 {
        t.insert(Atom::ZetaAbs, int(2 * i64::from(m)));
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest denominator of a grid weight.
    pub max_denominator: u32,
    pub allow_pointwise: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { max_denominator: 64, allow_pointwise: true }
    }
}

/// Best unconditional bound for `∫₀ᵀ Δᵏ |ζ(½+it)|^{2m} dt`, `1 ≤ k ≤ 8`, `1 ≤ m ≤ 3`.
pub fn derive_mixed_bound(k: u32, m: u32, db: &FactDatabase) -> Result<Derivation> {
    if !(1..=8).contains(&k) || !(1..=3).contains(&m) {
        return invalid(format!("need 1 ≤ k ≤ 8 and 1 ≤ m ≤ 3, got k = {k}, m = {m}"));
    }
    derive_mixed_bound_with(k, m, db, &SearchOptions::default())
}

/// Like [`derive_mixed_bound`] with explicit search options and the wider
/// range `k ≤ 11`, `m ≤ 6`, `(k, m) ≠ (0, 0)`.
pub fn derive_mixed_bound_with(k: u32, m: u32, db: &FactDatabase, opts: &SearchOptions) -> Result<Derivation> {
    search(k, m, db, opts, false)
}

/// Best bound when the `A₀` hypothesis slot may be used. The returned
/// derivation lists the hypothesis in `conditional_on` when it was needed.
pub fn derive_conditional_bound(k: u32, m: u32, db: &FactDatabase) -> Result<Derivation> {
    if db.a0_hypothesis().is_none() {
        return invalid("no A₀ hypothesis installed in the fact database");
    }
    search(k, m, db, &SearchOptions::default(), true)
}

type Plan = (Strategy, Vec<(MomentFact, Rational)>);

fn search(k: u32, m: u32, db: &FactDatabase, opts: &SearchOptions, hypothesis: bool) -> Result<Derivation> {
    if k > 11 || m > 6 || (k == 0 && m == 0) {
        return invalid(format!("need k ≤ 11, m ≤ 6, not both zero; got k = {k}, m = {m}"));
    }
    if opts.max_denominator < 2 {
        return invalid("max_denominator must be at least 2");
    }
    let grid = farey_interior(opts.max_denominator);
    let dk = int(k.into());
    let zm = int(2 * i64::from(m));
    let mut notes = Vec::new();
    let mut best: Option<Derivation> = None;

    let consider = |best: &mut Option<Derivation>,
                    strategy: Strategy,
                    pointwise: Vec<PointwiseStep>,
                    plan: Vec<(MomentFact, Rational)>| {
        let (facts, weights): (Vec<_>, Vec<_>) = plan.into_iter().unzip();
        let Ok(mut result) = holder_combine(&facts, &weights) else { return };
        for p in &pointwise {
            result.growth += &p.power * &p.fact.exponent;
            result.has_epsilon = true;
            *result.powers.entry(p.fact.atom).or_insert_with(Rational::zero) += &p.power;
        }
        let conditional_on = if facts.iter().any(|f| f.tag == "hypothesis-A0") {
            let a0 = db.a0_hypothesis().expect("hypothesis fact without slot");
            vec![format!("∫₀ᵀ |Δ(t)|^A₀ |ζ(½+it)|^2 dt ≪ T^(1+A₀/4+ε) with A₀ = {a0}")]
        } else {
            Vec::new()
        };
        result.tag = if conditional_on.is_empty() { "derived".into() } else { "derived-conditional".into() };
        let strategy = if pointwise.is_empty() { strategy } else { Strategy::PointwiseHybrid };
        let d = Derivation {
            target: (k, m),
            strategy: if conditional_on.is_empty() { strategy } else { Strategy::Hypothesis },
            pointwise,
            steps: facts.into_iter().zip(weights).map(|(fact, weight)| HolderStep { fact, weight }).collect(),
            result,
            conditional_on,
        };
        if best.as_ref().map_or(true, |b| d.better_than(b)) {
            *best = Some(d);
        }
    };

    for (s, plan) in plans(&dk, &zm, db, &grid, true, hypothesis, &mut notes) {
        consider(&mut best, s, Vec::new(), plan);
    }

    if !opts.allow_pointwise {
        notes.push("pointwise extraction disabled".into());
    } else {
        let mut fractions = grid.clone();
        fractions.push(Rational::one());
        for (atom, total) in [(Atom::DeltaAbs, &dk), (Atom::ZetaAbs, &zm)] {
            if total.is_zero() {
                continue;
            }
            let fact = db.pointwise(atom);
            for r in &fractions {
                let power = r * total;
                let (dr, zr) = match atom {
                    Atom::DeltaAbs => (&dk - &power, zm.clone()),
                    Atom::ZetaAbs => (dk.clone(), &zm - &power),
                };
                let floor = &power * &fact.exponent + remainder_floor(&dr, &zr);
                if best.as_ref().is_some_and(|b| &floor > b.growth()) {
                    continue;
                }
                if dr.is_zero() && zr.is_zero() {
                    continue;
                }
                let mut sink = Vec::new();
                for (s, plan) in plans(&dr, &zr, db, &grid, false, hypothesis, &mut sink) {
                    consider(&mut best, s, vec![PointwiseStep { fact: fact.clone(), power: power.clone() }], plan);
                }
            }
        }
    }

    best.ok_or(Error::Infeasible(notes))
}

/// Lower bound on the growth of every plan [`plans`] builds without the
/// two-factor family: `max(1, 1 + dr/4 + (zr − 4)/8)`.
fn remainder_floor(dr: &Rational, zr: &Rational) -> Rational {
    let l = int(1) + dr / int(4) + (zr - int(4)) / int(8);
    if l < int(1) { int(1) } else { l }
}

/// Hölder plans covering `∫ |Δ|^dr |ζ|^zr`. Rejected families leave a note.
fn plans(
    dr: &Rational,
    zr: &Rational,
    db: &FactDatabase,
    grid: &[Rational],
    two_factor: bool,
    hypothesis: bool,
    notes: &mut Vec<String>,
) -> Vec<Plan> {
    let one = Rational::one();
    let mut out: Vec<Plan> = Vec::new();
    let (four, twelve, two, eight) = (int(4), int(12), int(2), int(8));
    let zeta_fact = |a: &Rational| -> Option<MomentFact> {
        if *a == two {
            Some(db.mean_square())
        } else {
            db.zeta_moment(a).ok()
        }
    };

    if dr.is_zero() {
        match zeta_fact(zr) {
            Some(f) => out.push((Strategy::SingleFact, vec![(f, one.clone())])),
            None => notes.push(format!("single ζ-moment: A = {zr} not 2 and outside [4, 12]")),
        }
    }
    if zr.is_zero() {
        match db.delta_moment(dr) {
            Ok(f) => out.push((Strategy::SingleFact, vec![(f, one.clone())])),
            Err(_) => notes.push(format!("single Δ-moment: A = {dr} outside [0, 11]")),
        }
    }
    if *dr == eight && *zr == two {
        out.push((Strategy::SingleFact, vec![(db.mixed_eighth(), one.clone())]));
    }

    let mut mixed_split = |fact: MomentFact, base: Rational, strategy: Strategy, label: &str| {
        if !(dr > &Rational::zero() && dr < &base && zr >= &two) {
            notes.push(format!("{label}: Δ-power {dr} not in (0, {base}) with ζ-power ≥ 2"));
            return;
        }
        let w = dr / &base;
        let rest = &one - &w;
        let a = (zr - &two * &w) / &rest;
        match zeta_fact(&a) {
            Some(z) => out.push((strategy, vec![(fact, w), (z, rest)])),
            None => notes.push(format!("{label}: residual ζ-power A = {a} outside [4, 12]")),
        }
    };
    mixed_split(db.mixed_eighth(), eight.clone(), Strategy::EighthMomentSplit, "eighth-moment split");
    if hypothesis {
        if let Some(f) = db.a0_mixed() {
            let a0 = f.power(Atom::DeltaAbs);
            mixed_split(f, a0, Strategy::Hypothesis, "A₀ split");
        }
    }

    if two_factor && !dr.is_zero() && !zr.is_zero() {
        let before = out.len();
        for u in grid {
            let b = dr / u;
            let rest = &one - u;
            let a = zr / &rest;
            if b > int(11) || a < four || a > twelve {
                continue;
            }
            if let (Ok(d), Ok(z)) = (db.delta_moment(&b), db.zeta_moment(&a)) {
                out.push((Strategy::TwoFactorSplit, vec![(d, u.clone()), (z, rest)]));
            }
        }
        if out.len() == before {
            notes.push(format!(
                "two-factor split: no grid weight u with {dr}/u ≤ 11 and {zr}/(1 − u) in [4, 12]"
            ));
        }
    }
    out
}
