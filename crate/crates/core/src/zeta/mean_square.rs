use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{zeta_half_em, SampleGrid, ORACLE_TARGET};
use crate::constants::EULER_GAMMA;
use crate::error::{invalid, Result};
use crate::quadrature::{integrate_panels, simpson_with_halving, QuadratureValue};

/// Step of the reference-evaluated segment `[0, 2]`.
pub const HEAD_STEP: f64 = 0.01;
const GRID_START: f64 = 2.0;

/// E(T) together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSquareError {
    pub t: f64,
    /// ∫₀ᵀ |ζ(½ + it)|² dt
    pub integral: f64,
    pub main_term: f64,
    pub value: f64,
    /// Step-halving estimate of the quadrature error.
    pub error_estimate: f64,
}

/// `T(log(T/2π) + 2γ − 1)`, continuous at 0.
pub fn mean_square_main_term(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * ((t / (2.0 * PI)).ln() + 2.0 * EULER_GAMMA - 1.0)
    }
}

/// E(T) = ∫₀ᵀ |ζ(½ + it)|² dt − T(log(T/2π) + 2γ − 1).
///
/// `[0, min(T, 2)]` is integrated from reference evaluations at step
/// [`HEAD_STEP`]; the rest comes from `grid`, which must contain 2 and `T`
/// as sample points.
pub fn mean_square_error_e(t: f64, grid: &SampleGrid) -> Result<MeanSquareError> {
    if !t.is_finite() || t < 0.0 {
        return invalid(format!("E(T) requires T ≥ 0, got {t}"));
    }
    if t == 0.0 {
        return Ok(MeanSquareError { t, integral: 0.0, main_term: 0.0, value: 0.0, error_estimate: 0.0 });
    }
    let head = head_integral(t.min(GRID_START))?;
    let body = if t > GRID_START {
        let values = grid.slice(GRID_START, t)?;
        integrate_panels(values, grid.h(), grid.steps_per_unit() as usize)
    } else {
        QuadratureValue { value: 0.0, error_estimate: 0.0 }
    };
    let integral = head.value + body.value;
    let main_term = mean_square_main_term(t);
    Ok(MeanSquareError {
        t,
        integral,
        main_term,
        value: integral - main_term,
        error_estimate: head.error_estimate + body.error_estimate,
    })
}

fn head_integral(len: f64) -> Result<QuadratureValue> {
    let mut n = (len / HEAD_STEP).ceil() as usize;
    n += n % 2;
    let n = n.max(2);
    let h = len / n as f64;
    let values = (0..=n)
        .into_par_iter()
        .map(|i| zeta_half_em(i as f64 * h, ORACLE_TARGET).map(|z| z.norm_sqr()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(simpson_with_halving(&values, h))
}
