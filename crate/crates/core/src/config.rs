//! Run configuration read from a TOML file.
//!
//! ```toml
//! cutoff = 1000000
//! max_terms = 10000000
//! row_cutoff = 64
//! outer_cutoff = 10000
//! jobs = 4
//!
//! [tolerance]
//! default = 1e-9        # replaces every catalog tolerance
//! D3 = 1e-6
//! "theorem1.k5" = 1e-8
//! ```
//!
//! Every key is optional; absent keys keep the built-in values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::catalog::VerifyOptions;
use crate::error::{Error, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    cutoff: Option<u64>,
    max_terms: Option<u64>,
    row_cutoff: Option<u64>,
    outer_cutoff: Option<u64>,
    jobs: Option<usize>,
    #[serde(default)]
    tolerance: BTreeMap<String, f64>,
}

/// Parses configuration text into verification options.
pub fn parse_config(text: &str) -> Result<VerifyOptions> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let mut opts = VerifyOptions::default();
    let cfg = &mut opts.config;
    if let Some(v) = raw.cutoff {
        cfg.cutoff = v;
    }
    if let Some(v) = raw.max_terms {
        cfg.max_terms = v;
    }
    if let Some(v) = raw.row_cutoff {
        cfg.row_cutoff = v;
    }
    if let Some(v) = raw.outer_cutoff {
        cfg.outer_cutoff = v;
    }
    if cfg.cutoff < 16 || cfg.row_cutoff < 1 || cfg.outer_cutoff < 1 {
        return Err(Error::Config("cutoffs must be positive (cutoff >= 16)".into()));
    }
    if cfg.max_terms < cfg.cutoff {
        return Err(Error::Config(format!(
            "max_terms ({}) is below cutoff ({})",
            cfg.max_terms, cfg.cutoff
        )));
    }
    if raw.jobs == Some(0) {
        return Err(Error::Config("jobs must be at least 1".into()));
    }
    opts.jobs = raw.jobs;
    for (key, tol) in raw.tolerance {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Config(format!("tolerance `{key}` must be positive, got {tol}")));
        }
        if key == "default" {
            opts.tolerance = Some(tol);
        } else {
            opts.tolerances.insert(key, tol);
        }
    }
    Ok(opts)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<VerifyOptions> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
