use std::io::Write;

use serde::{Deserialize, Serialize};

use super::fit::{ExponentFit, FitMode};
use super::MomentPoint;
use crate::bounds::{conjectural_exponent, derive_mixed_bound_with, to_f64, trivial_bound, FactDatabase, SearchOptions};
use crate::error::Result;

pub const CSV_HEADER: &str = "T,k,m,I,err_est,slope_context";

/// Slack allowed when checking an empirical slope against a proven exponent.
pub const SLOPE_TOLERANCE: f64 = 0.15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub k: u32,
    pub m: u32,
    pub empirical_slope: f64,
    pub residual_rms: f64,
    pub fit_mode: FitMode,
    pub points: Vec<(f64, f64)>,
    /// One `+`, `-` or `0` per point.
    pub sign_pattern: String,
    pub proven: Option<String>,
    pub proven_decimal: Option<f64>,
    pub trivial: Option<String>,
    pub conjectural: String,
    pub conjectural_conditional_on: Vec<String>,
    /// `slope ≤ proven + SLOPE_TOLERANCE`
    pub empirical_le_proven: Option<bool>,
    pub conjectural_le_proven: Option<bool>,
}

pub fn compare_with_bounds(k: u32, m: u32, fit: &ExponentFit, db: &FactDatabase) -> ComparisonReport {
    let proven = derive_mixed_bound_with(k, m, db, &SearchOptions::default()).ok().map(|d| d.result.growth);
    let trivial = trivial_bound(k, m, db).ok();
    let conj = conjectural_exponent(k, m);
    let sign_pattern = fit
        .points
        .iter()
        .map(|(_, i)| match i.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => '+',
            Some(std::cmp::Ordering::Less) => '-',
            _ => '0',
        })
        .collect();
    ComparisonReport {
        k,
        m,
        empirical_slope: fit.slope,
        residual_rms: fit.residual_rms,
        fit_mode: fit.mode,
        points: fit.points.clone(),
        sign_pattern,
        proven_decimal: proven.as_ref().map(to_f64),
        empirical_le_proven: proven.as_ref().map(|p| fit.slope <= to_f64(p) + SLOPE_TOLERANCE),
        conjectural_le_proven: proven.as_ref().map(|p| &conj.exponent <= p),
        proven: proven.map(|p| p.to_string()),
        trivial: trivial.map(|t| t.to_string()),
        conjectural: conj.exponent.to_string(),
        conjectural_conditional_on: conj.conditional_on,
    }
}

/// Local log-log slope against the previous row, blank on the first row.
pub fn write_csv<W: Write>(mut w: W, k: u32, m: u32, points: &[MomentPoint]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let mut prev: Option<&MomentPoint> = None;
    for p in points {
        let ctx = match prev {
            Some(q) if q.value != 0.0 && p.value != 0.0 => {
                format!("{:.6}", (p.value.abs() / q.value.abs()).ln() / (p.t / q.t).ln())
            }
            _ => String::new(),
        };
        writeln!(w, "{},{k},{m},{:e},{:e},{ctx}", p.t, p.value, p.error_estimate)?;
        prev = Some(p);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::fit_growth_exponent;

    #[test]
    fn report_for_k1_m2_lists_exponents() {
        let fit = fit_growth_exponent(&[(1e3, 1e4), (1e4, 2e5), (1e5, 3e6)]).unwrap();
        let r = compare_with_bounds(1, 2, &fit, &FactDatabase::default());
        assert_eq!(r.proven.as_deref(), Some("41/32"));
        assert_eq!(r.conjectural, "5/4");
        assert_eq!(r.trivial.as_deref(), Some("547/416"));
        assert_eq!(r.conjectural_le_proven, Some(true));
        assert_eq!(r.sign_pattern, "+++");
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"empirical_slope\""));
    }

    #[test]
    fn fourth_moment_row() {
        let fit = fit_growth_exponent(&[(1e3, 1.0), (1e4, 10.0), (1e5, 100.0)]).unwrap();
        let r = compare_with_bounds(0, 2, &fit, &FactDatabase::default());
        assert_eq!(r.proven.as_deref(), Some("1"));
        assert_eq!(r.conjectural, "1");
    }

    #[test]
    fn csv_layout() {
        let pts = [
            MomentPoint { t: 10.0, value: 8.0, error_estimate: 0.0 },
            MomentPoint { t: 100.0, value: 98.0, error_estimate: 1e-12 },
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, 0, 0, &pts).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "10,0,0,8e0,0e0,");
        assert!(lines[2].starts_with("100,0,0,9.8e1,1e-12,1.0"));
    }
}
