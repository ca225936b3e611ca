//! Text and JSON forms of a derivation.

use serde_json::{json, Value};

use super::derive::Derivation;
use super::facts::{exponent_str, Atom, MomentFact};
use super::rational::decimal;

fn fact_line(f: &MomentFact) -> String {
    let mut s = f.to_string();
    if let Some(v) = &f.validity {
        let a = f.power(v.atom);
        s.push_str(&format!(", A = {a} in [{}, {}]", v.min, v.max));
    }
    s.push_str(&format!("   [{}]", f.tag));
    s
}

fn target_line(d: &Derivation) -> String {
    let (k, m) = d.target;
    let mut parts = Vec::new();
    if k > 0 {
        parts.push(format!("{}^{k}", Atom::DeltaAbs.symbol()));
    }
    if m > 0 {
        parts.push(format!("{}^{}", Atom::ZetaAbs.symbol(), 2 * m));
    }
    format!("∫₀ᵀ {} dt", parts.join(" "))
}

/// Multi-line proof chain; a single fact with no pointwise step renders
/// as one line.
pub fn render_derivation(d: &Derivation) -> String {
    let g = &d.result.growth;
    let exact = format!("{g} = {}", decimal(g));
    if d.steps.len() == 1 && d.pointwise.is_empty() && d.conditional_on.is_empty() {
        return format!("{}   ({exact})\n", fact_line(&d.steps[0].fact));
    }
    let (k, m) = d.target;
    let mut out = format!("{}   (k = {k}, m = {m}, {})\n", target_line(d), d.strategy.name());
    for p in &d.pointwise {
        out.push_str(&format!(
            "  pointwise: {}^{} ≪ T^({}+ε)   [{}]\n",
            p.fact.atom.symbol(),
            exponent_str(&p.power),
            &p.power * &p.fact.exponent,
            p.fact.tag
        ));
    }
    let weights: Vec<String> = d.steps.iter().map(|s| s.weight.to_string()).collect();
    if d.steps.len() == 1 {
        out.push_str(&format!("  remaining integral: {}\n", fact_line(&d.steps[0].fact)));
    } else {
        out.push_str(&format!("  Hölder with weights {}:\n", weights.join(", ")));
        for s in &d.steps {
            out.push_str(&format!("    ({})^{}   {}\n", s.fact.integrand(), s.weight, fact_line(&s.fact)));
        }
    }
    let terms: Vec<String> = d.steps.iter().map(|s| format!("{}·{}", s.weight, s.fact.growth)).collect();
    let mut sum = terms.join(" + ");
    for p in &d.pointwise {
        sum.push_str(&format!(" + {}·{}", p.power, p.fact.exponent));
    }
    out.push_str(&format!("  growth: {sum} = {g}\n"));
    for c in &d.conditional_on {
        out.push_str(&format!("  conditional on: {c}\n"));
    }
    out.push_str(&format!("  ≪ {}   ({exact})\n", d.result.bound()));
    out
}

pub fn derivation_tree(d: &Derivation) -> Value {
    json!({
        "target": { "k": d.target.0, "m": d.target.1 },
        "strategy": d.strategy.name(),
        "weights": d.steps.iter().map(|s| s.weight.to_string()).collect::<Vec<_>>(),
        "steps": d.steps.iter().map(|s| json!({
            "weight": s.weight.to_string(),
            "fact": s.fact.to_json(),
        })).collect::<Vec<_>>(),
        "pointwise": d.pointwise.iter().map(|p| json!({
            "atom": p.fact.atom.symbol(),
            "power": p.power.to_string(),
            "exponent": p.fact.exponent.to_string(),
            "tag": p.fact.tag,
        })).collect::<Vec<_>>(),
        "result": d.result.to_json(),
        "conditional_on": d.conditional_on,
    })
}
