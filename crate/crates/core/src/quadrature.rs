//! Composite Newton–Cotes rules on uniformly spaced samples.

use crate::summation::CompensatedSum;

/// Integral of uniformly spaced samples together with a step-halving error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureValue {
    pub value: f64,
    /// `|I(h) − I(2h)|`, where `I(2h)` reuses every other sample.
    pub error_estimate: f64,
}

/// Composite Simpson over `values.len() − 1` intervals of width `h`.
///
/// An odd interval count closes with the 3/8 rule on the last three
/// intervals; a single interval falls back to the trapezoid.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len().saturating_sub(1);
    match n {
        0 => 0.0,
        1 => 0.5 * h * (values[0] + values[1]),
        _ if n % 2 == 0 => simpson_even(values, h),
        3 => simpson_38(values, h),
        _ => simpson_even(&values[..n - 2], h) + simpson_38(&values[n - 3..], h),
    }
}

fn simpson_even(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n % 2 == 0 && n >= 2);
    let mut acc = CompensatedSum::new();
    acc.add(values[0]);
    acc.add(values[n]);
    for (i, &v) in values.iter().enumerate().take(n).skip(1) {
        acc.add(if i % 2 == 1 { 4.0 * v } else { 2.0 * v });
    }
    acc.value() * h / 3.0
}

fn simpson_38(v: &[f64], h: f64) -> f64 {
    debug_assert_eq!(v.len(), 4);
    3.0 * h / 8.0 * (v[0] + 3.0 * v[1] + 3.0 * v[2] + v[3])
}

/// Simpson on the samples plus a comparison against the rule at twice the step.
pub fn simpson_with_halving(values: &[f64], h: f64) -> QuadratureValue {
    let n = values.len().saturating_sub(1);
    let fine = simpson(values, h);
    let coarse = match n {
        0 => fine,
        // No coarser rule exists; compare against the left rectangle.
        1 => h * values[0],
        _ => {
            let even = n - n % 2;
            let sub: Vec<f64> = values[..=even].iter().step_by(2).copied().collect();
            let head = simpson(&sub, 2.0 * h);
            if n % 2 == 1 {
                head + 0.5 * h * (values[n - 1] + values[n])
            } else {
                head
            }
        }
    };
    QuadratureValue { value: fine, error_estimate: (fine - coarse).abs() }
}


/// Combine per-panel results with a fixed pairwise tree; error estimates add in absolute value.
pub fn combine_panels(parts: &[QuadratureValue]) -> QuadratureValue {
    let values: Vec<f64> = parts.iter().map(|p| p.value).collect();
    let errors: Vec<f64> = parts.iter().map(|p| p.error_estimate).collect();
    QuadratureValue {
        value: crate::summation::pairwise_sum(&values),
        error_estimate: crate::summation::pairwise_sum(&errors),
    }
}

/// Simpson with halving on consecutive panels of `panel` intervals (the
/// last may be shorter), combined by [`combine_panels`].
pub fn integrate_panels(values: &[f64], h: f64, panel: usize) -> QuadratureValue {
    use rayon::prelude::*;
    assert!(panel >= 1);
    let n = values.len().saturating_sub(1);
    let count = n.div_ceil(panel);
    let parts: Vec<QuadratureValue> = (0..count)
        .into_par_iter()
        .map(|j| {
            let a = j * panel;
            let b = ((j + 1) * panel).min(n);
            simpson_with_halving(&values[a..=b], h)
        })
        .collect();
    combine_panels(&parts)
}
