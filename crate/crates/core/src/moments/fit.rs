use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMode {
    /// Values used as they are; all must be positive.
    Signed,
    /// `|I(T)|`, for odd `k` where the integral can change sign.
    Absolute,
}

/// Least-squares line through `(log T, log I(T))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub points: Vec<(f64, f64)>,
    pub mode: FitMode,
    /// Power `L` of `log T` divided out before fitting, if any.
    pub log_power: Option<f64>,
}

pub fn fit_growth_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if let Some((t, i)) = points.iter().find(|(_, i)| !(*i > 0.0)) {
        return invalid(format!("I({t}) = {i} is not positive; fit |I| with fit_growth_exponent_abs"));
    }
    fit(points, FitMode::Signed, None)
}

pub fn fit_growth_exponent_abs(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if let Some((t, _)) = points.iter().find(|(_, i)| *i == 0.0) {
        return invalid(format!("I({t}) = 0 has no logarithm"));
    }
    fit(points, FitMode::Absolute, None)
}

/// Fit `I(T) / log^L T`, removing a known logarithmic factor.
pub fn fit_log_adjusted(points: &[(f64, f64)], log_power: f64, mode: FitMode) -> Result<ExponentFit> {
    if let Some((t, _)) = points.iter().find(|(t, _)| *t <= 1.0) {
        return invalid(format!("log-adjusted fit needs T > 1, got {t}"));
    }
    match mode {
        FitMode::Signed if points.iter().any(|(_, i)| !(*i > 0.0)) => {
            invalid("non-positive value in signed mode; use FitMode::Absolute")
        }
        _ => fit(points, mode, Some(log_power)),
    }
}

/// Points in the top decade `[T_max/10, T_max]` when at least three lie
/// there, otherwise all of them.
pub fn select_fit_points(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let Some(top) = points.iter().map(|p| p.0).reduce(f64::max) else { return Vec::new() };
    let decade: Vec<_> = points.iter().copied().filter(|p| p.0 >= top / 10.0).collect();
    if decade.len() >= 3 { decade } else { points.to_vec() }
}

fn fit(points: &[(f64, f64)], mode: FitMode, log_power: Option<f64>) -> Result<ExponentFit> {
    if points.len() < 3 {
        return invalid(format!("need at least 3 points, got {}", points.len()));
    }
    if points.iter().any(|(t, i)| !(*t > 0.0 && t.is_finite() && i.is_finite())) {
        return invalid("points need finite values and positive T");
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|&(t, i)| i.abs().ln() - log_power.map_or(0.0, |l| l * t.ln().ln()))
        .collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("all T values coincide");
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(ExponentFit {
        slope,
        intercept,
        residual_rms: (rss / n).sqrt(),
        points: points.to_vec(),
        mode,
        log_power,
    })
}
