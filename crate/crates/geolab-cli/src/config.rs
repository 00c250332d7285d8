use std::path::Path;

use geolab_core::solver::DEFAULT_TABLE_CAP;
use serde::{Deserialize, Serialize};

/// Run settings. Precedence: defaults, then the config file, then
/// `GEOLAB_SEED`, then command-line flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Default 10 million nodes.
    pub node_budget: u64,
    /// 0 lets rayon pick one thread per core.
    pub workers: usize,
    pub seed: u64,
    pub table_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { node_budget: 10_000_000, workers: 0, seed: 0, table_cap: DEFAULT_TABLE_CAP }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| crate::input::json_error(path, &e))
    }

    pub fn apply_env(&mut self, seed: Option<&str>) -> Result<(), String> {
        if let Some(s) = seed {
            self.seed = s.trim().parse().map_err(|_| format!("GEOLAB_SEED={s:?} is not an unsigned integer"))?;
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, budget: Option<u64>, workers: Option<usize>, seed: Option<u64>, table_cap: Option<usize>) {
        self.node_budget = budget.unwrap_or(self.node_budget);
        self.workers = workers.unwrap_or(self.workers);
        self.seed = seed.unwrap_or(self.seed);
        self.table_cap = table_cap.unwrap_or(self.table_cap);
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.node_budget == 0 {
            return Err("node budget must be positive".into());
        }
        if self.table_cap == 0 {
            return Err("table cap must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_seed_beats_file_and_flag_beats_env() {
        let mut c: Config = serde_json::from_str(r#"{"seed": 3, "node_budget": 50}"#).unwrap();
        assert_eq!(c.table_cap, DEFAULT_TABLE_CAP);
        c.apply_env(Some("9")).unwrap();
        assert_eq!(c.seed, 9);
        c.apply_flags(None, None, Some(11), None);
        assert_eq!((c.seed, c.node_budget), (11, 50));
        assert!(c.apply_env(Some("x")).is_err());
    }

    #[test]
    fn zero_budget_is_rejected() {
        let c = Config { node_budget: 0, ..Config::default() };
        assert!(c.validate().is_err());
    }
}
