//! The database of known moment and pointwise facts.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::rational::{decimal, int, rat, Rational};
use crate::error::{Error, Result};

/// The two functions appearing in the integrand `Δᵏ(t) |ζ(½ + it)|^{2m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// |Δ(t)|
    DeltaAbs,
    /// |ζ(½ + it)|
    ZetaAbs,
}

impl Atom {
    pub fn symbol(self) -> &'static str {
        match self {
            Atom::DeltaAbs => "|Δ(t)|",
            Atom::ZetaAbs => "|ζ(½+it)|",
        }
    }

    fn key(self) -> &'static str {
        match self {
            Atom::DeltaAbs => "delta_abs",
            Atom::ZetaAbs => "zeta_abs",
        }
    }
}

/// `8` or `(30/7)`.
pub(crate) fn exponent_str(r: &Rational) -> String {
    if r.is_integer() { r.to_string() } else { format!("({r})") }
}

/// Power of `log T` carried by a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogPower {
    Explicit(Rational),
    /// Some constant `C` that is never fixed.
    Unspecified,
}

impl LogPower {
    fn render(&self) -> String {
        match self {
            LogPower::Explicit(p) if p.is_zero() => String::new(),
            LogPower::Explicit(p) if p.is_one() => " log T".into(),
            LogPower::Explicit(p) => format!(" log^{} T", exponent_str(p)),
            LogPower::Unspecified => " log^C T".into(),
        }
    }
}

/// Closed range a fact's power of `atom` must lie in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validity {
    pub atom: Atom,
    pub min: Rational,
    pub max: Rational,
}

impl Validity {
    pub fn check(&self, powers: &BTreeMap<Atom, Rational>) -> Result<()> {
        let zero = Rational::zero();
        let p = powers.get(&self.atom).unwrap_or(&zero);
        if p < &self.min || p > &self.max {
            return Err(Error::Validity(format!(
                "power {p} of {} outside [{}, {}]",
                self.atom.symbol(),
                self.min,
                self.max
            )));
        }
        Ok(())
    }
}

/// `∫₀ᵀ Π atomᵢ^{aᵢ} dt ≪ T^e (log T)^L T^ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFact {
    pub powers: BTreeMap<Atom, Rational>,
    pub growth: Rational,
    pub log_power: LogPower,
    pub has_epsilon: bool,
    pub validity: Option<Validity>,
    /// Short citation tag naming where the fact comes from.
    pub tag: String,
}

impl MomentFact {
    pub fn power(&self, atom: Atom) -> Rational {
        self.powers.get(&atom).cloned().unwrap_or_else(Rational::zero)
    }

    /// `∫ |Δ|^8 |ζ|^2 dt`-style rendering of the integrand.
    pub fn integrand(&self) -> String {
        let parts: Vec<String> = self
            .powers
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(a, p)| format!("{}^{}", a.symbol(), exponent_str(p)))
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join(" ") }
    }

    /// Right-hand side, e.g. `T^(41/32) log^C T`.
    pub fn bound(&self) -> String {
        let eps = if self.has_epsilon { "+ε" } else { "" };
        if eps.is_empty() {
            format!("T^{}{}", exponent_str(&self.growth), self.log_power.render())
        } else {
            format!("T^({}{eps}){}", self.growth, self.log_power.render())
        }
    }

    pub fn to_json(&self) -> Value {
        let powers: serde_json::Map<String, Value> =
            self.powers.iter().map(|(a, p)| (a.key().to_string(), json!(p.to_string()))).collect();
        json!({
            "powers": powers,
            "growth": self.growth.to_string(),
            "growth_decimal": decimal(&self.growth),
            "log_power": match &self.log_power {
                LogPower::Explicit(p) => json!(p.to_string()),
                LogPower::Unspecified => json!("C"),
            },
            "has_epsilon": self.has_epsilon,
            "validity": self.validity.as_ref().map(|v| json!({
                "atom": v.atom.key(), "min": v.min.to_string(), "max": v.max.to_string(),
            })),
            "tag": self.tag,
        })
    }
}

impl fmt::Display for MomentFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∫₀ᵀ {} dt ≪ {}", self.integrand(), self.bound())
    }
}

/// `atom(t) ≪ t^{σ + ε}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseFact {
    pub atom: Atom,
    pub exponent: Rational,
    pub tag: String,
}

/// Which pointwise exponent is used for |ζ(½ + it)|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZetaPointwise {
    /// 32/205
    #[default]
    Classic,
    /// 53/342
    Bourgain,
}

impl ZetaPointwise {
    pub fn exponent(self) -> Rational {
        match self {
            ZetaPointwise::Classic => rat(32, 205),
            ZetaPointwise::Bourgain => rat(53, 342),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ZetaPointwise::Classic => "zeta-pointwise-32/205",
            ZetaPointwise::Bourgain => "zeta-pointwise-bourgain",
        }
    }
}

/// Saving `η_k` in the error term of the asymptotic formula for
/// `∫ Δᵏ |ζ|² dt`. Stored for reference; derivations never use it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaEntry {
    pub k: u32,
    pub eta: Rational,
    pub note: &'static str,
}

/// `M(A) = max(A/4, θ(A − 2))` for `0 ≤ A ≤ 11`.
pub fn m_of_a(a: &Rational, theta: &Rational) -> Result<Rational> {
    if a < &Rational::zero() || a > &int(11) {
        return Err(Error::Validity(format!("M(A) needs 0 ≤ A ≤ 11, got A = {a}")));
    }
    let quarter = a / int(4);
    let second = theta * (a - int(2));
    Ok(if second > quarter { second } else { quarter })
}

/// `1 + (A − 4)/8`, the growth of `∫ |ζ|^A` for `4 ≤ A ≤ 12`.
pub fn zeta_moment_exponent(a: &Rational) -> Result<Rational> {
    if a < &int(4) || a > &int(12) {
        return Err(Error::Validity(format!("zeta moment bound needs 4 ≤ A ≤ 12, got A = {a}")));
    }
    Ok(int(1) + (a - int(4)) / int(8))
}

/// Every constant that enters a derivation. Changing `theta` or
/// `zeta_pointwise` re-derives everything downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactDatabase {
    pub theta: Rational,
    pub zeta_pointwise: ZetaPointwise,
    /// Hypothetical `A₀ ∈ (8, 262/27)` with `∫ |Δ|^{A₀} |ζ|² ≪ T^{1+A₀/4+ε}`.
    a0_hypothesis: Option<Rational>,
}

impl Default for FactDatabase {
    fn default() -> Self {
        Self { theta: rat(131, 416), zeta_pointwise: ZetaPointwise::Classic, a0_hypothesis: None }
    }
}

impl FactDatabase {
    pub fn new(theta: Rational, zeta_pointwise: ZetaPointwise) -> Result<Self> {
        if theta < rat(1, 4) || theta >= rat(1, 3) {
            return Err(Error::InvalidArgument(format!("θ must lie in [1/4, 1/3), got {theta}")));
        }
        Ok(Self { theta, zeta_pointwise, a0_hypothesis: None })
    }

    /// Install the hypothesis slot; requires `8 < A₀ < 262/27`.
    pub fn with_a0_hypothesis(mut self, a0: Rational) -> Result<Self> {
        if a0 <= int(8) || a0 >= self.crossover() {
            return Err(Error::Validity(format!("A₀ must satisfy 8 < A₀ < {}, got {a0}", self.crossover())));
        }
        self.a0_hypothesis = Some(a0);
        Ok(self)
    }

    pub fn a0_hypothesis(&self) -> Option<&Rational> {
        self.a0_hypothesis.as_ref()
    }

    pub fn sigma_zeta(&self) -> Rational {
        self.zeta_pointwise.exponent()
    }

    /// Where the two branches of `M(A)` meet: `A = 2θ / (θ − 1/4)`.
    pub fn crossover(&self) -> Rational {
        int(2) * &self.theta / (&self.theta - rat(1, 4))
    }

    pub fn m_of_a(&self, a: &Rational) -> Result<Rational> {
        m_of_a(a, &self.theta)
    }

    /// `∫ Δ⁸ |ζ|² dt ≪ T³ log T`.
    pub fn mixed_eighth(&self) -> MomentFact {
        MomentFact {
            powers: BTreeMap::from([(Atom::DeltaAbs, int(8)), (Atom::ZetaAbs, int(2))]),
            growth: int(3),
            log_power: LogPower::Explicit(int(1)),
            has_epsilon: false,
            validity: None,
            tag: "mixed-eighth-moment".into(),
        }
    }

    /// `∫ |ζ|^A dt ≪ T^{1+(A−4)/8} log^{C(A)} T`, `4 ≤ A ≤ 12`.
    pub fn zeta_moment(&self, a: &Rational) -> Result<MomentFact> {
        Ok(MomentFact {
            powers: BTreeMap::from([(Atom::ZetaAbs, a.clone())]),
            growth: zeta_moment_exponent(a)?,
            log_power: LogPower::Unspecified,
            has_epsilon: false,
            validity: Some(Validity { atom: Atom::ZetaAbs, min: int(4), max: int(12) }),
            tag: "zeta-moment-range".into(),
        })
    }

    /// `∫ |ζ|² dt ≪ T log T`, from the mean-square asymptotic.
    pub fn mean_square(&self) -> MomentFact {
        MomentFact {
            powers: BTreeMap::from([(Atom::ZetaAbs, int(2))]),
            growth: int(1),
            log_power: LogPower::Explicit(int(1)),
            has_epsilon: false,
            validity: None,
            tag: "mean-square".into(),
        }
    }

    /// `∫ |Δ|^A dt ≪ T^{1+M(A)+ε}`, `0 ≤ A ≤ 11`.
    pub fn delta_moment(&self, a: &Rational) -> Result<MomentFact> {
        Ok(MomentFact {
            powers: BTreeMap::from([(Atom::DeltaAbs, a.clone())]),
            growth: int(1) + self.m_of_a(a)?,
            log_power: LogPower::Explicit(Rational::zero()),
            has_epsilon: true,
            validity: Some(Validity { atom: Atom::DeltaAbs, min: int(0), max: int(11) }),
            tag: "delta-moment-range".into(),
        })
    }

    /// The hypothetical `∫ |Δ|^{A₀} |ζ|² ≪ T^{1+A₀/4+ε}`, if installed.
    pub fn a0_mixed(&self) -> Option<MomentFact> {
        self.a0_hypothesis.as_ref().map(|a0| MomentFact {
            powers: BTreeMap::from([(Atom::DeltaAbs, a0.clone()), (Atom::ZetaAbs, int(2))]),
            growth: int(1) + a0 / int(4),
            log_power: LogPower::Explicit(Rational::zero()),
            has_epsilon: true,
            validity: None,
            tag: "hypothesis-A0".into(),
        })
    }

    pub fn delta_pointwise(&self) -> PointwiseFact {
        PointwiseFact { atom: Atom::DeltaAbs, exponent: self.theta.clone(), tag: "delta-pointwise".into() }
    }

    pub fn zeta_pointwise_fact(&self) -> PointwiseFact {
        PointwiseFact {
            atom: Atom::ZetaAbs,
            exponent: self.sigma_zeta(),
            tag: self.zeta_pointwise.tag().into(),
        }
    }

    pub fn pointwise(&self, atom: Atom) -> PointwiseFact {
        match atom {
            Atom::DeltaAbs => self.delta_pointwise(),
            Atom::ZetaAbs => self.zeta_pointwise_fact(),
        }
    }

    pub fn eta_table(&self) -> Vec<EtaEntry> {
        let e = |k, n, d, note| EtaEntry { k, eta: rat(n, d), note };
        vec![
            e(2, 1, 10, ""),
            e(3, 1, 10, ""),
            e(4, 1, 10, ""),
            e(5, 3, 80, ""),
            e(6, 35, 4742, ""),
            e(7, 17, 6312, ""),
            e(8, 8, 9433, ""),
            e(2, 3, 20, "improved value for k = 2"),
        ]
    }

    /// Human-readable listing of every constant with its tag.
    pub fn dump_table(&self) -> String {
        let mut rows: Vec<(String, Rational, String)> = vec![
            ("theta".into(), self.theta.clone(), "delta-pointwise".into()),
            ("sigma_zeta".into(), self.sigma_zeta(), self.zeta_pointwise.tag().into()),
            ("M(A) crossover".into(), self.crossover(), "delta-moment-range".into()),
            ("mixed-eighth growth".into(), int(3), "mixed-eighth-moment".into()),
            ("zeta-moment A min".into(), int(4), "zeta-moment-range".into()),
            ("zeta-moment A max".into(), int(12), "zeta-moment-range".into()),
            ("delta-moment A max".into(), int(11), "delta-moment-range".into()),
        ];
        for e in self.eta_table() {
            let name = if e.note.is_empty() { format!("eta_{}", e.k) } else { format!("eta_{} (improved)", e.k) };
            rows.push((name, e.eta, "eta-table".into()));
        }
        if let Some(a0) = &self.a0_hypothesis {
            rows.push(("A0 (hypothesis)".into(), a0.clone(), "hypothesis-A0".into()));
        }
        let mut out = format!("{:<22} {:<12} {:<12} {}\n", "constant", "value", "decimal", "tag");
        for (name, v, tag) in rows {
            out.push_str(&format!("{:<22} {:<12} {:<12} {}\n", name, v.to_string(), decimal(&v), tag));
        }
        out
    }
}
