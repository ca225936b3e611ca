//! Cache directory with a JSON manifest of content hashes.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use divzeta::divisor::{read_divisor_table, write_divisor_table, DivisorTable};
use divzeta::zeta::{read_grid, write_grid, SampleGrid};
use divzeta::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    DivisorTable { limit: u64 },
    ZetaGrid { t0: f64, t1: f64, h: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entry {
    #[serde(flatten)]
    pub artifact: Artifact,
    pub sha256: String,
    pub config: Value,
    pub tool_version: String,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: BTreeMap<String, Entry>,
}

pub struct Cache {
    dir: PathBuf,
    manifest: Manifest,
}

/// How a request was served.
pub enum Outcome {
    Hit,
    Built,
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn divisor_file(limit: u64) -> String {
    format!("divisors-{limit}.bin")
}

pub fn grid_file(t0: f64, t1: f64, h: f64) -> String {
    format!("zeta-grid-{t0}-{t1}-{h}.bin")
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(MANIFEST);
        let manifest = if path.exists() {
            serde_json::from_str(&fs::read_to_string(&path)?)
                .map_err(|e| Error::Cache(format!("unreadable manifest {}: {e}", path.display())))?
        } else {
            Manifest::default()
        };
        Ok(Self { dir: dir.to_path_buf(), manifest })
    }

    fn save(&self) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        fs::write(self.dir.join(MANIFEST), text + "\n")?;
        Ok(())
    }

    /// Hash an existing file and check it against the manifest.
    fn verify(&self, name: &str) -> Result<String> {
        let hash = sha256_file(&self.dir.join(name))?;
        if let Some(e) = self.manifest.entries.get(name) {
            if e.sha256 != hash {
                return Err(Error::Cache(format!(
                    "{name}: content hash {hash} does not match manifest {}",
                    e.sha256
                )));
            }
        }
        Ok(hash)
    }

    fn record(&mut self, name: &str, artifact: Artifact, hash: &str, cfg: &RunConfig) -> Result<()> {
        self.manifest.entries.insert(
            name.to_string(),
            Entry {
                artifact,
                sha256: hash.to_string(),
                config: cfg.to_json(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        );
        self.save()
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn load_divisors(&self, name: &str) -> Result<(DivisorTable, String)> {
        let hash = self.verify(name)?;
        let table = read_divisor_table(BufReader::new(fs::File::open(self.path(name))?))?;
        Ok((table, hash))
    }

    pub fn load_grid(&self, name: &str) -> Result<(SampleGrid, String)> {
        let hash = self.verify(name)?;
        let grid = read_grid(BufReader::new(fs::File::open(self.path(name))?))?;
        Ok((grid, hash))
    }

    pub fn divisors(&mut self, limit: u64, cfg: &RunConfig) -> Result<(Outcome, String)> {
        let name = divisor_file(limit);
        if self.path(&name).exists() {
            let (table, hash) = self.load_divisors(&name)?;
            if table.limit() != limit {
                return Err(Error::Cache(format!("{name} holds limit {}, expected {limit}", table.limit())));
            }
            if !self.manifest.entries.contains_key(&name) {
                self.record(&name, Artifact::DivisorTable { limit }, &hash, cfg)?;
            }
            return Ok((Outcome::Hit, hash));
        }
        let table = divzeta::divisor::sieve_divisor_counts(limit)?;
        let mut w = BufWriter::new(fs::File::create(self.path(&name))?);
        write_divisor_table(&table, &mut w)?;
        drop(w);
        let hash = sha256_file(&self.path(&name))?;
        self.record(&name, Artifact::DivisorTable { limit }, &hash, cfg)?;
        Ok((Outcome::Built, hash))
    }

    pub fn grid(&mut self, t0: f64, t1: f64, h: f64, cfg: &RunConfig) -> Result<(Outcome, String)> {
        let name = grid_file(t0, t1, h);
        let artifact = Artifact::ZetaGrid { t0, t1, h };
        if self.path(&name).exists() {
            let (grid, hash) = self.load_grid(&name)?;
            if grid.t0() != t0 || grid.t1() != t1 || grid.h() != h {
                return Err(Error::Cache(format!("{name} does not hold the grid [{t0}, {t1}] step {h}")));
            }
            if !self.manifest.entries.contains_key(&name) {
                self.record(&name, artifact, &hash, cfg)?;
            }
            return Ok((Outcome::Hit, hash));
        }
        let grid = divzeta::zeta::sample_critical_line(t0, t1, h)?;
        let mut w = BufWriter::new(fs::File::create(self.path(&name))?);
        write_grid(&grid, &mut w)?;
        drop(w);
        let hash = sha256_file(&self.path(&name))?;
        self.record(&name, artifact, &hash, cfg)?;
        Ok((Outcome::Built, hash))
    }

    /// Smallest recorded divisor table with limit at least `n`.
    pub fn find_divisors(&self, n: u64) -> Option<String> {
        self.manifest
            .entries
            .iter()
            .filter_map(|(name, e)| match e.artifact {
                Artifact::DivisorTable { limit } if limit >= n => Some((limit, name)),
                _ => None,
            })
            .min()
            .map(|(_, name)| name.clone())
    }

    /// Shortest recorded grid with step `h` covering `[a, b]`.
    pub fn find_grid(&self, a: f64, b: f64, h: f64) -> Option<String> {
        self.manifest
            .entries
            .iter()
            .filter_map(|(name, e)| match e.artifact {
                Artifact::ZetaGrid { t0, t1, h: step } if step == h && t0 <= a && t1 >= b => {
                    Some(((t1 - t0).to_bits(), name))
                }
                _ => None,
            })
            .min()
            .map(|(_, name)| name.clone())
    }
}
