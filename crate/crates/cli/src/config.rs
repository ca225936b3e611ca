//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use divzeta::bounds::{parse_rational, FactDatabase, Rational, ZetaPointwise};
use divzeta::zeta::MAX_GRID_STEP;
use divzeta::{Error, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cache_dir: PathBuf,
    pub theta: Rational,
    pub zeta_pointwise: ZetaPointwise,
    pub h: f64,
    pub max_t: f64,
    /// 0 means one worker per core.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cache_dir: PathBuf::from("divzeta-cache"),
            theta: FactDatabase::default().theta,
            zeta_pointwise: ZetaPointwise::Classic,
            h: 0.01,
            max_t: 1e5,
            threads: 0,
        }
    }
}

/// Flag values that override the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub theta: Option<String>,
    pub zeta_exponent: Option<String>,
}

pub fn parse_zeta_pointwise(s: &str) -> Result<ZetaPointwise> {
    match s.trim() {
        "classic" | "classic_32_205" | "32/205" => Ok(ZetaPointwise::Classic),
        "bourgain" | "bourgain_53_342" | "53/342" => Ok(ZetaPointwise::Bourgain),
        other => Err(Error::InvalidArgument(format!(
            "unknown zeta exponent {other:?}; expected 32/205 (classic_32_205) or 53/342 (bourgain_53_342)"
        ))),
    }
}

fn zeta_pointwise_name(z: ZetaPointwise) -> &'static str {
    match z {
        ZetaPointwise::Classic => "classic_32_205",
        ZetaPointwise::Bourgain => "bourgain_53_342",
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse().map_err(|_| Error::InvalidArgument(format!("{key}: not a number: {v:?}")))
}

impl RunConfig {
    pub fn load(file: Option<&Path>, over: Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        if let Some(d) = over.cache_dir {
            cfg.cache_dir = d;
        }
        if let Some(t) = over.threads {
            cfg.threads = t;
        }
        if let Some(t) = over.theta {
            cfg.theta = parse_rational(&t)?;
        }
        if let Some(z) = over.zeta_exponent {
            cfg.zeta_pointwise = parse_zeta_pointwise(&z)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidArgument(format!("config line {}: expected key = value", no + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "cache_dir" => self.cache_dir = PathBuf::from(value),
                "theta" => self.theta = parse_rational(value)?,
                "zeta_pointwise" => self.zeta_pointwise = parse_zeta_pointwise(value)?,
                "h" => self.h = parse_f64(key, value)?,
                "max_t" => self.max_t = parse_f64(key, value)?,
                "threads" => {
                    self.threads = value
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("threads: not an integer: {value:?}")))?
                }
                other => return Err(Error::InvalidArgument(format!("config line {}: unknown key {other:?}", no + 1))),
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h <= MAX_GRID_STEP) {
            return Err(Error::InvalidArgument(format!("h must satisfy 0 < h ≤ {MAX_GRID_STEP}, got {}", self.h)));
        }
        if !(self.max_t >= 10.0 && self.max_t.is_finite()) {
            return Err(Error::InvalidArgument(format!("max_t must be at least 10, got {}", self.max_t)));
        }
        self.database().map(|_| ())
    }

    pub fn database(&self) -> Result<FactDatabase> {
        FactDatabase::new(self.theta.clone(), self.zeta_pointwise)
    }

    /// Recorded in the cache manifest.
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta.to_string(),
            "zeta_pointwise": zeta_pointwise_name(self.zeta_pointwise),
            "h": self.h,
            "max_t": self.max_t,
        })
    }
}
