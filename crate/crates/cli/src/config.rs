//! Run configuration: genus bounds, degree guards and the RNG seed, with a
//! small TOML file override.

use serde::Deserialize;
use std::path::Path;

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// largest genus accepted on the command line
    pub g_max: usize,
    /// largest graded degree for explicit quotient computations
    pub degree_max: usize,
    /// seed for every randomized verification
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            g_max: 6,
            degree_max: 8,
            seed: torelli::sp_group::DEFAULT_SEED,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, String> {
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                toml::from_str(&text).map_err(|e| format!("bad config: {e}"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_parse() {
        let c = Config::default();
        assert_eq!(c.g_max, 6);
        let parsed: Config = toml::from_str("g_max = 4\nseed = 9").unwrap();
        assert_eq!(parsed.g_max, 4);
        assert_eq!(parsed.seed, 9);
        assert_eq!(parsed.degree_max, 8);
        let bad: Result<Config, _> = toml::from_str("unknown_key = 1");
        assert!(bad.is_err());
    }
}
