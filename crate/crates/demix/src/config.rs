//! Run configuration: one JSON document with per-module sections, validated
//! against every module's invariants at load time. CLI flags override
//! individual keys after loading.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::generator::GeneratorConfig;
use crate::smc::FitConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Hawkes parameters, mark priors, and SMC settings used by `fit`.
    pub fit: FitConfig,
    /// Generative-process settings used by `simulate` and `benchmark`.
    pub generator: GeneratorConfig,
    /// Optional stop-word file applied during ingestion.
    pub stopwords_path: Option<String>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.fit.validate()?;
        self.generator.validate()
    }

    /// Loads and validates a config file; `None` yields the defaults.
    pub fn load(path: Option<&Path>) -> Result<RunConfig> {
        let config = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::config(format!("{}: {e}", p.display())))?
            }
        };
        config.validate()?;
        Ok(config)
    }

    /// The normalized (defaults filled in, stable key order) JSON form.
    pub fn to_normalized_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Applies one seed to both the generator and the particle filter.
    pub fn override_seed(&mut self, seed: u64) {
        self.generator.seed = seed;
        self.fit.smc.seed = seed;
    }
}
