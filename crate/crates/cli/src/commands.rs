use std::fs;
use std::io::{self, BufWriter, Write};

use divzeta::bounds::{
    conjectural_exponent, decimal, derivation_tree, derive_mixed_bound, render_derivation, trivial_bound,
    THEOREM_TARGETS,
};
use divzeta::moments::{
    compare_with_bounds, fit_growth_exponent, fit_growth_exponent_abs, mixed_moment, select_fit_points, write_csv,
    MomentRequest, LOWER_LIMIT,
};
use divzeta::zeta::critical_line_sample;
use divzeta::{Error, Result};
use serde_json::json;

use crate::cache::{Cache, Outcome};
use crate::config::RunConfig;
use crate::{BoundsArgs, ComputeCommand, MomentArgs};

fn to_io(e: serde_json::Error) -> Error {
    Error::Io(io::Error::other(e))
}

pub fn bounds(args: &BoundsArgs, cfg: &RunConfig) -> Result<()> {
    let db = cfg.database()?;
    let mut out = io::stdout().lock();
    match (args.what.as_deref(), args.k, args.m) {
        (Some("constants"), ..) => {
            if args.json {
                let rows: Vec<_> = db
                    .eta_table()
                    .into_iter()
                    .map(|e| json!({ "k": e.k, "eta": e.eta.to_string(), "note": e.note }))
                    .collect();
                let v = json!({
                    "theta": db.theta.to_string(),
                    "sigma_zeta": db.sigma_zeta().to_string(),
                    "crossover": db.crossover().to_string(),
                    "eta": rows,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(to_io)?)?;
            } else {
                write!(out, "{}", db.dump_table())?;
            }
        }
        (Some(_), ..) => {
            let mut rows = Vec::new();
            for (k, m) in THEOREM_TARGETS {
                rows.push((k, m, derive_mixed_bound(k, m, &db)?, trivial_bound(k, m, &db)?, conjectural_exponent(k, m)));
            }
            if args.json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(k, m, d, t, c)| {
                        json!({
                            "k": k, "m": m,
                            "exponent": d.growth().to_string(),
                            "decimal": decimal(d.growth()),
                            "trivial": t.to_string(),
                            "conjectural": c.exponent.to_string(),
                            "derivation": derivation_tree(d),
                        })
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(to_io)?)?;
            } else {
                writeln!(out, "{:>2} {:>2}  {:<9} {:<10} {:<9} {:<10} {}", "k", "m", "exponent", "decimal", "trivial", "decimal", "conjectural")?;
                for (k, m, d, t, c) in &rows {
                    writeln!(
                        out,
                        "{k:>2} {m:>2}  {:<9} {:<10} {:<9} {:<10} {}",
                        d.growth().to_string(),
                        decimal(d.growth()),
                        t.to_string(),
                        decimal(t),
                        c.exponent
                    )?;
                }
                for (.., d, _, _) in &rows {
                    writeln!(out)?;
                    write!(out, "{}", render_derivation(d))?;
                }
            }
        }
        (None, Some(k), Some(m)) => {
            let d = derive_mixed_bound(k, m, &db)?;
            let t = trivial_bound(k, m, &db)?;
            let c = conjectural_exponent(k, m);
            if args.json {
                let v = json!({
                    "derivation": derivation_tree(&d),
                    "trivial": t.to_string(),
                    "conjectural": c.exponent.to_string(),
                    "conjectural_conditional_on": c.conditional_on,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(to_io)?)?;
            } else {
                write!(out, "{}", render_derivation(&d))?;
                writeln!(out, "trivial: {t} = {}", decimal(&t))?;
                writeln!(out, "conjectural: {} (conditional on {})", c.exponent, c.conditional_on.join(" and "))?;
            }
        }
        _ => return Err(Error::InvalidArgument("bounds needs --k and --m, or `table`".into())),
    }
    Ok(())
}

fn report(what: &str, name: &str, outcome: Outcome, hash: &str) {
    match outcome {
        Outcome::Hit => println!("cache hit: {what} {name} sha256={hash}"),
        Outcome::Built => println!("built: {what} {name} sha256={hash}"),
    }
}

pub fn compute(cmd: &ComputeCommand, cfg: &RunConfig) -> Result<()> {
    match *cmd {
        ComputeCommand::Delta { n } => {
            let n = n.unwrap_or(cfg.max_t.ceil() as u64);
            let mut cache = Cache::open(&cfg.cache_dir)?;
            let (outcome, hash) = cache.divisors(n, cfg)?;
            report("divisor table", &crate::cache::divisor_file(n), outcome, &hash);
        }
        ComputeCommand::Grid { t0, t1, h } => {
            let (t1, h) = (t1.unwrap_or(cfg.max_t), h.unwrap_or(cfg.h));
            let mut cache = Cache::open(&cfg.cache_dir)?;
            let (outcome, hash) = cache.grid(t0, t1, h, cfg)?;
            report("zeta grid", &crate::cache::grid_file(t0, t1, h), outcome, &hash);
        }
        ComputeCommand::Zeta { t0, t1, h } => {
            let h = h.unwrap_or(cfg.h);
            let t1 = t1.unwrap_or(t0);
            if !(t0 >= 0.0 && t1 >= t0) {
                return Err(Error::InvalidArgument(format!("need 0 ≤ t0 ≤ t1, got {t0}, {t1}")));
            }
            let steps = ((t1 - t0) / h).round() as u64;
            let mut out = BufWriter::new(io::stdout().lock());
            writeln!(out, "t,zeta_abs,method")?;
            for i in 0..=steps {
                let t = t0 + i as f64 * h;
                let s = critical_line_sample(t)?;
                let method = serde_json::to_value(s.method).map_err(to_io)?;
                writeln!(out, "{t},{:e},{}", s.value_sq.sqrt(), method.as_str().unwrap_or(""))?;
            }
        }
    }
    Ok(())
}

pub fn moment(args: &MomentArgs, cfg: &RunConfig) -> Result<()> {
    let h = args.h.unwrap_or(cfg.h);
    let Some(&top) = args.t_values.last() else {
        return Err(Error::InvalidArgument("no upper limits given".into()));
    };
    let cache = Cache::open(&cfg.cache_dir)?;
    let floor = top.floor() as u64;
    let dir = cfg.cache_dir.display();
    let div_name = cache.find_divisors(floor).ok_or_else(|| {
        Error::Cache(format!(
            "no cached divisor table reaches {floor} in {dir}; run `divzeta --cache-dir {dir} compute delta --N {floor}`"
        ))
    })?;
    let grid_name = cache.find_grid(LOWER_LIMIT, top, h).ok_or_else(|| {
        Error::Cache(format!(
            "no cached zeta grid covers [{LOWER_LIMIT}, {top}] at step {h} in {dir}; \
             run `divzeta --cache-dir {dir} compute grid --t0 {LOWER_LIMIT} --t1 {top} --h {h}`"
        ))
    })?;
    let (table, div_hash) = cache.load_divisors(&div_name)?;
    let (grid, grid_hash) = cache.load_grid(&grid_name)?;

    let req = MomentRequest::new(args.k, args.m, args.t_values.clone(), h);
    let points = mixed_moment(&req, &table, &grid)?;
    let pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.value)).collect();
    let selected = select_fit_points(&pairs);
    let fit = if selected.len() >= 3 {
        Some(if args.k % 2 == 1 { fit_growth_exponent_abs(&selected)? } else { fit_growth_exponent(&selected)? })
    } else {
        None
    };
    let db = cfg.database()?;
    let comparison = fit.as_ref().map(|f| compare_with_bounds(args.k, args.m, f, &db));

    let out_dir = args.out_dir.clone().unwrap_or_else(|| cfg.cache_dir.clone());
    fs::create_dir_all(&out_dir)?;
    let stem = format!("moment-k{}-m{}", args.k, args.m);
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let mut w = BufWriter::new(fs::File::create(&csv_path)?);
    write_csv(&mut w, args.k, args.m, &points)?;
    w.flush()?;
    let json_path = out_dir.join(format!("{stem}.json"));
    let doc = json!({
        "k": args.k,
        "m": args.m,
        "h": h,
        "lower_limit": LOWER_LIMIT,
        "inputs": {
            "divisor_table": { "file": div_name, "sha256": div_hash },
            "zeta_grid": { "file": grid_name, "sha256": grid_hash },
        },
        "points": points,
        "fit": fit,
        "report": comparison,
    });
    fs::write(&json_path, serde_json::to_string_pretty(&doc).map_err(to_io)? + "\n")?;

    for p in &points {
        println!("T = {}: I = {:e} ± {:e}", p.t, p.value, p.error_estimate);
    }
    if let Some(c) = &comparison {
        let mode = if args.k % 2 == 1 { " (fitted on |I|)" } else { "" };
        println!("empirical slope {:.4}{mode}, signs {}", c.empirical_slope, c.sign_pattern);
        println!(
            "proven {}, trivial {}, conjectural {}",
            c.proven.as_deref().unwrap_or("n/a"),
            c.trivial.as_deref().unwrap_or("n/a"),
            c.conjectural
        );
    }
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}
