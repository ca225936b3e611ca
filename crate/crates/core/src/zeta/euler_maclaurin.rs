//! Reference evaluation of ζ(½ + it) by Euler–Maclaurin summation.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{invalid, out_of_range, Error, Result};
use crate::summation::CompensatedSum;

/// Largest height accepted by the reference evaluator.
pub const EM_MAX_HEIGHT: f64 = 1.0e4;
/// Tightest accuracy the reference evaluator promises.
pub const EM_FINEST_TARGET: f64 = 1.0e-12;

const MIN_TERMS: usize = 20;
const MAX_CORRECTIONS: usize = 120;

/// Outcome of a reference evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmEvaluation {
    pub value: Complex64,
    /// Last correction term used plus a rounding allowance.
    pub error_estimate: f64,
    /// Length of the Dirichlet sum.
    pub terms: usize,
    /// Number of Bernoulli corrections.
    pub corrections: usize,
}

/// Default truncation `max(20, ⌈t/2⌉)`; the correction series then shrinks
/// by roughly a factor π² per term.
pub fn default_truncation(t: f64) -> usize {
    MIN_TERMS.max((0.5 * t).ceil() as usize)
}

/// ζ(½ + it) to within `target`, for `0 ≤ t ≤ 10⁴`.
pub fn zeta_half_em(t: f64, target: f64) -> Result<Complex64> {
    zeta_half_em_detailed(t, target, None).map(|e| e.value)
}

/// As [`zeta_half_em`] with an explicit Dirichlet-sum length.
pub fn zeta_half_em_detailed(t: f64, target: f64, terms: Option<usize>) -> Result<EmEvaluation> {
    if !t.is_finite() || t < 0.0 {
        return invalid(format!("height must be ≥ 0, got {t}"));
    }
    if t > EM_MAX_HEIGHT {
        return out_of_range(format!("reference evaluation is limited to t ≤ {EM_MAX_HEIGHT}, got {t}"));
    }
    if !(target >= EM_FINEST_TARGET) {
        return invalid(format!("precision target must be ≥ {EM_FINEST_TARGET}, got {target}"));
    }
    let n = terms.unwrap_or_else(|| default_truncation(t)).max(2);
    let s = Complex64::new(0.5, t);

    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut magnitude = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let (sin, cos) = (t * kf.ln()).sin_cos();
        let amp = 1.0 / kf.sqrt();
        re.add(amp * cos);
        im.add(-amp * sin);
        magnitude += amp;
    }

    let nf = n as f64;
    let ln_n = nf.ln();
    // N^{−s}
    let n_pow = Complex64::from_polar(1.0 / nf.sqrt(), -t * ln_n);
    let head = n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    re.add(head.re);
    im.add(head.im);

    let coeffs = bernoulli_ratios();
    // s(s+1)…(s+2j−2) N^{−s−2j+1}, starting at j = 1: s N^{−s−1}
    let mut factor = s * n_pow / nf;
    let inv_n2 = 1.0 / (nf * nf);
    let mut last = f64::INFINITY;
    let mut used = 0;
    for j in 1..=MAX_CORRECTIONS {
        let term = factor * coeffs[j];
        let size = term.norm();
        if size > last && size > target {
            return Err(Error::Numeric(format!(
                "Euler–Maclaurin corrections diverge at t = {t} with N = {n}; increase N"
            )));
        }
        re.add(term.re);
        im.add(term.im);
        last = size;
        used = j;
        if size < 0.1 * target {
            break;
        }
        let a = 2.0 * j as f64 - 1.0;
        factor *= (s + a) * (s + a + 1.0) * inv_n2;
    }
    if last >= 0.1 * target {
        return Err(Error::Numeric(format!(
            "no convergence after {MAX_CORRECTIONS} corrections at t = {t}"
        )));
    }
    let rounding = 4.0 * f64::EPSILON * (magnitude + 1.0) * (1.0 + t.abs() * 1e-3);
    Ok(EmEvaluation {
        value: Complex64::new(re.value(), im.value()),
        error_estimate: last + rounding,
        terms: n,
        corrections: used,
    })
}

/// `B_{2j}/(2j)! = (−1)^{j+1} 2 ζ(2j) / (2π)^{2j}` for `0 ≤ j ≤ MAX_CORRECTIONS` (index 0 unused).
fn bernoulli_ratios() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![0.0; MAX_CORRECTIONS + 1];
        let inv = 1.0 / (2.0 * PI);
        for (j, slot) in out.iter_mut().enumerate().skip(1) {
            let z = zeta_even(2 * j as i32);
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * z * inv.powi(2 * j as i32);
        }
        out
    })
}

/// ζ(k) for even `k ≥ 2`.
fn zeta_even(k: i32) -> f64 {
    match k {
        2 => PI * PI / 6.0,
        4 => PI.powi(4) / 90.0,
        _ => {
            let m = 1000.0f64;
            let mut acc = CompensatedSum::new();
            for n in (1..1000).rev() {
                acc.add((n as f64).powi(-k));
            }
            // Euler–Maclaurin tail from n = 1000
            let kf = k as f64;
            acc.add(m.powi(1 - k) / (kf - 1.0) + 0.5 * m.powi(-k) + kf / 12.0 * m.powi(-k - 1));
            acc.value()
        }
    }
}
