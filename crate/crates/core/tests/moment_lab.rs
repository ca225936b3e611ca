use std::sync::OnceLock;

use divzeta::divisor::{delta, sieve_divisor_counts, DivisorTable};
use divzeta::quadrature::integrate_panels;
use divzeta::moments::*;
use divzeta::zeta::{mean_square_main_term, sample_critical_line, SampleGrid};

struct Fixture {
    table: DivisorTable,
    coarse: SampleGrid,
    fine: SampleGrid,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| Fixture {
        table: sieve_divisor_counts(10_000).unwrap(),
        coarse: sample_critical_line(2.0, 1e4, 0.01).unwrap(),
        fine: sample_critical_line(2.0, 1e4, 0.005).unwrap(),
    })
}

#[test]
fn unit_integrand() {
    let f = fixture();
    let r = mixed_moment(&MomentRequest::new(0, 0, vec![100.0, 1e4], 0.01), &f.table, &f.coarse).unwrap();
    assert!((r[0].value - 98.0).abs() < 1e-9);
    assert!((r[1].value - 9998.0).abs() < 1e-9);
}

#[test]
fn mean_square_within_two_percent() {
    let f = fixture();
    let r = mixed_moment(&MomentRequest::new(0, 1, vec![1e3], 0.01), &f.table, &f.coarse).unwrap();
    assert!((r[0].value / mean_square_main_term(1e3) - 1.0).abs() < 0.02);
}

#[test]
fn k2_m1_halving_within_estimate() {
    let f = fixture();
    let ts = vec![1e3, 5e3, 1e4];
    let a = mixed_moment(&MomentRequest::new(2, 1, ts.clone(), 0.01), &f.table, &f.coarse).unwrap();
    let b = mixed_moment(&MomentRequest::new(2, 1, ts, 0.005), &f.table, &f.fine).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.value - y.value).abs() < x.error_estimate, "T = {}: {} vs {}", x.t, x.value, y.value);
    }
}

#[test]
fn additivity() {
    let f = fixture();
    let (t1, t2) = (2500.0, 7500.0);
    let whole = mixed_moment(&MomentRequest::new(4, 1, vec![t1, t2], 0.01), &f.table, &f.coarse).unwrap();
    // direct assembly of the integrand on [t1, t2], left limits at integers
    let zeta = f.coarse.slice(t1, t2).unwrap();
    let values: Vec<f64> = zeta
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let t = t1 + i as f64 / 100.0;
            let at = if i > 0 && i % 100 == 0 { t - 1e-7 } else { t };
            delta(at, &f.table).unwrap().powi(4) * z
        })
        .collect();
    let part = integrate_panels(&values, 0.01, 100);
    let diff = whole[1].value - whole[0].value;
    let tol = whole[0].error_estimate + whole[1].error_estimate + part.error_estimate;
    assert!((diff - part.value).abs() <= tol, "{diff} vs {} (tol {tol})", part.value);
}

#[test]
fn odd_k_is_signed_and_fits_in_abs_mode() {
    let f = fixture();
    let ts: Vec<f64> = (1..=10).map(|i| 1000.0 * i as f64).collect();
    let r = mixed_moment(&MomentRequest::new(1, 2, ts, 0.01), &f.table, &f.coarse).unwrap();
    let pts: Vec<(f64, f64)> = r.iter().map(|p| (p.t, p.value)).collect();
    if pts.iter().any(|p| p.1 <= 0.0) {
        assert!(fit_growth_exponent(&pts).is_err());
    }
    let fit = fit_growth_exponent_abs(&pts).unwrap();
    assert_eq!(fit.mode, FitMode::Absolute);
    assert!(fit.slope.is_finite());
}

#[test]
fn csv_is_deterministic() {
    let f = fixture();
    let req = MomentRequest::new(2, 1, vec![100.0, 1000.0, 5000.0], 0.01);
    let run = || {
        let pts = mixed_moment(&req, &f.table, &f.coarse).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, 2, 1, &pts).unwrap();
        buf
    };
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(run);
    assert_eq!(one, four);
    assert!(String::from_utf8(one).unwrap().starts_with(CSV_HEADER));
}
