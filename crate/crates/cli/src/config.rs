use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use ultralogic::subparticle::SubparticleConfig;
use ultralogic::word_codec::{default_segment_template, Alphabet, Template};

pub const CONFIG_ENV: &str = "ULTRALOGIC_CONFIG";

/// Settings read from a TOML file; every field is optional.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation window `K` for series.
    pub truncation: u32,
    /// Decimal digits for π-bearing coefficients.
    pub precision: u32,
    pub alphabet: Option<PathBuf>,
    pub segment_template: Option<String>,
    /// Characteristic count.
    pub f: usize,
    /// Characteristic → coordinate index.
    pub quality: BTreeMap<String, usize>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { truncation: 8, precision: 50, alphabet: None, segment_template: None, f: 2, quality: BTreeMap::new(), seed: 7 }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        // relative alphabet paths are taken from the config's directory
        if let (Some(a), Some(dir)) = (&cfg.alphabet, path.parent()) {
            if a.is_relative() {
                cfg.alphabet = Some(dir.join(a));
            }
        }
        Ok(cfg)
    }

    /// `--config`, then the environment override, then built-in defaults.
    pub fn resolve(flag: Option<&Path>) -> Result<RunConfig, String> {
        match flag {
            Some(p) => RunConfig::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) => RunConfig::load(Path::new(&p)),
                None => Ok(RunConfig::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.truncation < 2 {
            return Err(format!("truncation must be at least 2, got {}", self.truncation));
        }
        if self.precision < 20 {
            return Err(format!("precision must be at least 20, got {}", self.precision));
        }
        if self.f < 1 {
            return Err("f must be at least 1".into());
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Result<Alphabet, String> {
        match &self.alphabet {
            None => Ok(Alphabet::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read alphabet {}: {e}", p.display()))?;
                Alphabet::from_config(&text).map_err(|e| e.to_string())
            }
        }
    }

    pub fn template(&self) -> Result<Template, String> {
        match &self.segment_template {
            None => Ok(default_segment_template()),
            Some(t) => Template::new(t).map_err(|e| e.to_string()),
        }
    }

    pub fn subparticle(&self) -> Result<SubparticleConfig, String> {
        let mut quality = BTreeMap::new();
        for (k, v) in &self.quality {
            let i: usize = k.parse().map_err(|_| format!("quality key `{k}` is not a characteristic number"))?;
            quality.insert(i, *v);
        }
        Ok(SubparticleConfig { f: self.f, quality, ..SubparticleConfig::default() })
    }
}
