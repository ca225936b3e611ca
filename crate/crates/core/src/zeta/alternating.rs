//! ζ(½ + it) from the alternating series η(s) = (1 − 2^{1−s}) ζ(s),
//! accelerated with Borwein's Chebyshev weights.
//!
//! The weight error behaves like `e^{πt/2} (3 + √8)^{−n}`, so the term
//! count grows linearly in t. Used for heights where the Riemann–Siegel
//! corrections are not yet small enough.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{out_of_range, Result};
use crate::summation::CompensatedSum;

/// Heights above this would push the weights past `f64` range.
pub const ALTERNATING_MAX_HEIGHT: f64 = 300.0;

const LN_3_PLUS_SQRT8: f64 = 1.762_747_174_039_086;

pub fn zeta_half_alternating(t: f64) -> Result<Complex64> {
    if !(0.0..=ALTERNATING_MAX_HEIGHT).contains(&t) {
        return out_of_range(format!("alternating series limited to 0 ≤ t ≤ {ALTERNATING_MAX_HEIGHT}, got {t}"));
    }
    // e^{πt/2}·(3+√8)^{−n} ≲ 1e−17
    let n = ((0.5 * PI * t + 40.0) / LN_3_PLUS_SQRT8).ceil() as usize + 2;
    let nf = n as f64;

    // term_i = n (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut terms = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    terms.push(term);
    for i in 0..n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        terms.push(term);
    }
    // Suffix sums give e_k = (d_n − d_k)/d_n without cancellation.
    let mut tails = vec![0.0; n + 1];
    let mut acc = 0.0;
    for i in (0..n).rev() {
        acc += terms[i + 1];
        tails[i] = acc;
    }
    let d_n = tails[0] + terms[0];

    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for k in 0..n {
        let w = tails[k] / d_n;
        let kp = (k + 1) as f64;
        let (sin, cos) = (t * kp.ln()).sin_cos();
        let amp = w / kp.sqrt();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        re.add(sign * amp * cos);
        im.add(-sign * amp * sin);
    }
    let eta = Complex64::new(re.value(), im.value());
    // 1 − 2^{1−s} with s = ½ + it
    let factor = Complex64::new(1.0, 0.0) - Complex64::from_polar(2f64.sqrt(), -t * 2f64.ln());
    Ok(eta / factor)
}
