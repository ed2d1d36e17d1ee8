use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use ohmgraph_core::grassmann::DEFAULT_PLUCKER_N_CAP;
use ohmgraph_core::metrics::DEFAULT_ORDER_SEARCH_CAP;
use ohmgraph_core::netcore::spanning::DEFAULT_EDGE_CAP;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub plucker_n_cap: usize,
    pub order_search_cap: usize,
    pub spanning_tree_edge_cap: usize,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            plucker_n_cap: DEFAULT_PLUCKER_N_CAP,
            order_search_cap: DEFAULT_ORDER_SEARCH_CAP,
            spanning_tree_edge_cap: DEFAULT_EDGE_CAP,
            format: Format::Json,
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    plucker_n_cap: Option<usize>,
    order_search_cap: Option<usize>,
    spanning_tree_edge_cap: Option<usize>,
    format: Option<Format>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).context("invalid config")?;
        let defaults = Config::default();
        let config = Config {
            plucker_n_cap: file.plucker_n_cap.unwrap_or(defaults.plucker_n_cap),
            order_search_cap: file.order_search_cap.unwrap_or(defaults.order_search_cap),
            spanning_tree_edge_cap: file.spanning_tree_edge_cap.unwrap_or(defaults.spanning_tree_edge_cap),
            format: file.format.unwrap_or(defaults.format),
        };
        for (key, v) in [
            ("plucker_n_cap", config.plucker_n_cap),
            ("order_search_cap", config.order_search_cap),
            ("spanning_tree_edge_cap", config.spanning_tree_edge_cap),
        ] {
            if v == 0 {
                bail!("config key {key} must be positive");
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        let c = Config::parse("plucker_n_cap = 5\nformat = \"csv\"\n").unwrap();
        assert_eq!(c.plucker_n_cap, 5);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.order_search_cap, DEFAULT_ORDER_SEARCH_CAP);
    }

    #[test]
    fn rejects_unknown_keys_and_zero_caps() {
        assert!(Config::parse("plucker_cap = 5").is_err());
        assert!(Config::parse("order_search_cap = 0").is_err());
        assert!(Config::parse("format = \"xml\"").is_err());
    }
}
