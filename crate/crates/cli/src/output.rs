use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use locus::{Error, Instance, Solution};

/// Where command output goes. File output is written to a temporary file in
/// the target directory and renamed into place.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path }
    }

    pub fn is_file(&self) -> bool {
        self.path.is_some()
    }

    pub fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
            Some(p) => write_atomic(p, text),
        }
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Instance> {
    locus::io::read_instance(path).with_context(|| format!("loading instance {}", path.display()))
}

/// Share as a percentage with two decimals.
pub fn pct(v: f64) -> String {
    format!("{:.2}", 100.0 * v)
}

/// Solution file: opened locker ids, closed station ids and the service level.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SolutionDoc {
    pub x: Vec<String>,
    pub r_closed: Vec<String>,
    #[serde(rename = "C")]
    pub c: f64,
}

impl SolutionDoc {
    pub fn of(inst: &Instance, sol: &Solution) -> Self {
        let x = sol.x.iter().zip(inst.locker_ids()).filter(|(o, _)| **o).map(|(_, id)| id.clone()).collect();
        let r_closed = sol.r.iter().zip(inst.station_ids()).filter(|(k, _)| !**k).map(|(_, id)| id.clone()).collect();
        Self { x, r_closed, c: inst.service_level(sol) }
    }

    pub fn to_solution(&self, inst: &Instance) -> Result<Solution> {
        let mut x = vec![false; inst.n_lockers()];
        let mut r = vec![true; inst.n_stations()];
        for id in &self.x {
            let Some(j) = inst.locker_ids().iter().position(|l| l == id) else {
                bail!(Error::InvalidInstance(format!("unknown locker id {id:?}")));
            };
            x[j] = true;
        }
        for id in &self.r_closed {
            let Some(k) = inst.station_ids().iter().position(|s| s == id) else {
                bail!(Error::InvalidInstance(format!("unknown station id {id:?}")));
            };
            r[k] = false;
        }
        Ok(Solution::new(x, r))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Quote a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
