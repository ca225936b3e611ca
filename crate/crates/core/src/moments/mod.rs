//! Numerical mixed moments `∫₂ᵀ Δᵏ(t) |ζ(½+it)|^{2m} dt` and empirical
//! growth exponents.
//!
//! Integration runs over unit panels `[n, n + 1]`. Inside a panel Δ is
//! smooth (the divisor sum is constant), so each panel is a composite
//! Simpson rule on the grid samples; the right endpoint uses the left
//! limit `Δ((n+1)⁻)`. Panel results are combined by a fixed pairwise tree,
//! which makes every value independent of the thread count.

mod fit;
mod report;

pub use fit::{fit_growth_exponent, fit_growth_exponent_abs, fit_log_adjusted, select_fit_points, ExponentFit, FitMode};
pub use report::{compare_with_bounds, write_csv, ComparisonReport, CSV_HEADER};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::divisor::{divisor_main_term, DivisorTable};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{combine_panels, simpson_with_halving, QuadratureValue};
use crate::zeta::SampleGrid;

/// Lower limit of every moment integral.
pub const LOWER_LIMIT: f64 = 2.0;
/// Smallest admissible upper limit.
pub const MIN_UPPER_LIMIT: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRequest {
    pub k: u32,
    pub m: u32,
    /// Ascending upper limits, each `≥ 10` and on the grid lattice.
    pub t_values: Vec<f64>,
    /// Must equal the step of the grid passed to [`mixed_moment`].
    pub h: f64,
}

impl MomentRequest {
    pub fn new(k: u32, m: u32, t_values: Vec<f64>, h: f64) -> Self {
        Self { k, m, t_values, h }
    }

    fn validate(&self, table: &DivisorTable, grid: &SampleGrid) -> Result<()> {
        if self.t_values.is_empty() {
            return invalid("no upper limits requested");
        }
        if self.t_values.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("upper limits must be strictly ascending");
        }
        if let Some(t) = self.t_values.iter().find(|t| !(**t >= MIN_UPPER_LIMIT && t.is_finite())) {
            return invalid(format!("upper limit {t} below {MIN_UPPER_LIMIT}"));
        }
        if (self.h - grid.h()).abs() > 1e-15 {
            return invalid(format!("requested step {} but grid step is {}", self.h, grid.h()));
        }
        let top = *self.t_values.last().expect("non-empty");
        for &t in std::iter::once(&LOWER_LIMIT).chain(&self.t_values) {
            if grid.index_of(t).is_none() {
                return invalid(format!(
                    "grid [{}, {}] step {} does not cover t = {t} on its lattice",
                    grid.t0(),
                    grid.t1(),
                    grid.h()
                ));
            }
        }
        if top.floor() as u64 > table.limit() {
            return invalid(format!("divisor table limit {} does not cover T = {top}", table.limit()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentPoint {
    pub t: f64,
    /// Signed value of the integral.
    pub value: f64,
    /// Sum of per-panel step-halving differences.
    pub error_estimate: f64,
}

/// Integrate the mixed moment up to each requested `T`.
pub fn mixed_moment(req: &MomentRequest, table: &DivisorTable, grid: &SampleGrid) -> Result<Vec<MomentPoint>> {
    req.validate(table, grid)?;
    let top = *req.t_values.last().expect("validated");
    let first = LOWER_LIMIT as u64;
    let last = top.ceil() as u64;

    // One entry per unit panel [n, min(n + 1, top)].
    let panels: Vec<QuadratureValue> = (first..last)
        .into_par_iter()
        .map(|n| {
            let end = ((n + 1) as f64).min(top);
            panel(n, end, req, table, grid)
        })
        .collect::<Result<_>>()?;

    req.t_values
        .iter()
        .map(|&t| {
            let whole = (t.floor() as u64 - first) as usize;
            let mut parts = panels[..whole].to_vec();
            if t.fract() != 0.0 {
                parts.push(if t == top {
                    panels[whole]
                } else {
                    panel(t.floor() as u64, t, req, table, grid)?
                });
            }
            let q = combine_panels(&parts);
            if !q.value.is_finite() {
                return Err(Error::Numeric(format!("moment accumulator overflowed at T = {t}")));
            }
            Ok(MomentPoint { t, value: q.value, error_estimate: q.error_estimate })
        })
        .collect()
}

fn panel(n: u64, end: f64, req: &MomentRequest, table: &DivisorTable, grid: &SampleGrid) -> Result<QuadratureValue> {
    let samples = grid.slice(n as f64, end)?;
    let spu = grid.steps_per_unit() as f64;
    let step_sum = DoubleDouble::from_f64(table.prefix(n) as f64);
    let k = req.k as i32;
    let m = req.m as i32;
    let mut values = Vec::with_capacity(samples.len());
    for (i, &zeta_sq) in samples.iter().enumerate() {
        let t = n as f64 + i as f64 / spu;
        let delta = if k == 0 { 1.0 } else { (step_sum - divisor_main_term(t)).to_f64().powi(k) };
        let v = delta * if m == 0 { 1.0 } else { zeta_sq.powi(m) };
        if !v.is_finite() {
            return Err(Error::Numeric(format!("integrand overflowed at t = {t}")));
        }
        values.push(v);
    }
    let q = simpson_with_halving(&values, grid.h());
    if !q.value.is_finite() {
        return Err(Error::Numeric(format!("panel [{n}, {end}] overflowed")));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{integrate_delta, sieve_divisor_counts};
    use crate::zeta::{mean_square_main_term, sample_critical_line};
    use std::sync::OnceLock;

    fn fixtures() -> &'static (DivisorTable, SampleGrid) {
        static F: OnceLock<(DivisorTable, SampleGrid)> = OnceLock::new();
        F.get_or_init(|| (sieve_divisor_counts(2000).unwrap(), sample_critical_line(2.0, 1000.0, 0.01).unwrap()))
    }

    #[test]
    fn unit_integrand_gives_length() {
        let (table, grid) = fixtures();
        let r = mixed_moment(&MomentRequest::new(0, 0, vec![10.0, 100.0, 100.5], 0.01), table, grid).unwrap();
        assert!((r[0].value - 8.0).abs() < 1e-9);
        assert!((r[1].value - 98.0).abs() < 1e-9);
        assert!((r[2].value - 98.5).abs() < 1e-9);
    }

    #[test]
    fn pure_delta_matches_exact_integral() {
        let (table, grid) = fixtures();
        let r = mixed_moment(&MomentRequest::new(1, 0, vec![50.0, 999.0], 0.01), table, grid).unwrap();
        for p in r {
            let exact = integrate_delta(2.0, p.t, table).unwrap();
            assert!((p.value - exact).abs() < 1e-7, "T = {}: {} vs {exact}", p.t, p.value);
        }
    }

    #[test]
    fn mean_square_near_main_term() {
        let (table, grid) = fixtures();
        let r = mixed_moment(&MomentRequest::new(0, 1, vec![1000.0], 0.01), table, grid).unwrap();
        let main = mean_square_main_term(1000.0);
        assert!((r[0].value / main - 1.0).abs() < 0.02, "{} vs {main}", r[0].value);
    }

    #[test]
    fn odd_k_keeps_sign_information() {
        let (table, grid) = fixtures();
        let ts: Vec<f64> = (0..=200).map(|i| 10.0 + 0.5 * i as f64).collect();
        let r = mixed_moment(&MomentRequest::new(1, 0, ts, 0.01), table, grid).unwrap();
        let steps: Vec<f64> = r.windows(2).map(|w| w[1].value - w[0].value).collect();
        assert!(steps.iter().any(|d| *d > 0.0) && steps.iter().any(|d| *d < 0.0));
    }

    #[test]
    fn additivity_across_split_points() {
        let (table, grid) = fixtures();
        let r = mixed_moment(&MomentRequest::new(2, 1, vec![300.0, 700.0], 0.01), table, grid).unwrap();
        let sub = grid.slice(300.0, 700.0).unwrap();
        // independent route: whole-interval Simpson on the same integrand
        let vals: Vec<f64> = sub
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let t = 300.0 + i as f64 * 0.01;
                let d = if i % 100 == 0 && i > 0 {
                    crate::divisor::delta(t - 1e-9, table).unwrap()
                } else {
                    crate::divisor::delta(t, table).unwrap()
                };
                d * d * z
            })
            .collect();
        let q = crate::quadrature::integrate_panels(&vals, 0.01, 100);
        let diff = r[1].value - r[0].value;
        let tol = r[0].error_estimate + r[1].error_estimate + q.error_estimate;
        assert!((diff - q.value).abs() <= tol, "{diff} vs {} (tol {tol})", q.value);
    }

    #[test]
    fn halving_the_step_stays_within_estimate() {
        let (table, grid) = fixtures();
        let fine = sample_critical_line(2.0, 200.0, 0.005).unwrap();
        let a = mixed_moment(&MomentRequest::new(2, 1, vec![100.0, 200.0], 0.01), table, grid).unwrap();
        let b = mixed_moment(&MomentRequest::new(2, 1, vec![100.0, 200.0], 0.005), table, &fine).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.value - y.value).abs() < x.error_estimate, "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn coverage_and_argument_errors() {
        let (table, grid) = fixtures();
        let bad = |ts: Vec<f64>, h: f64| mixed_moment(&MomentRequest::new(1, 1, ts, h), table, grid);
        assert!(matches!(bad(vec![2000.0], 0.01), Err(Error::InvalidArgument(_))));
        assert!(matches!(bad(vec![5.0], 0.01), Err(Error::InvalidArgument(_))));
        assert!(matches!(bad(vec![20.0, 10.0], 0.01), Err(Error::InvalidArgument(_))));
        assert!(matches!(bad(vec![20.0], 0.02), Err(Error::InvalidArgument(_))));
        assert!(matches!(bad(vec![20.001], 0.01), Err(Error::InvalidArgument(_))));
        let small = sieve_divisor_counts(50).unwrap();
        assert!(matches!(
            mixed_moment(&MomentRequest::new(1, 1, vec![100.0], 0.01), &small, grid),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn overflow_is_a_numeric_error() {
        let (table, grid) = fixtures();
        let r = mixed_moment(&MomentRequest::new(200, 60, vec![900.0], 0.01), table, grid);
        assert!(matches!(r, Err(Error::Numeric(_))), "{r:?}");
    }
}
