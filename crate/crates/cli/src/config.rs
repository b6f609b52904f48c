use serde::{Deserialize, Serialize};

use heightgap_core::canonical::{Tolerances, TOLERANCES};
use heightgap_core::formal::TowerConfig;

use crate::CliError;

pub const PRECISION_ENV: &str = "HEIGHTGAP_PRECISION";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeskBounds {
    /// Largest p^f a scan may reach.
    pub max_pf: u64,
    pub max_tower_n: u32,
    pub max_division_m: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// p-adic digits N of ℤ/p^N.
    pub precision: u32,
    pub series_order_cap: usize,
    pub desk_bounds: DeskBounds,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 64,
            series_order_cap: 700,
            desk_bounds: DeskBounds { max_pf: 1_000_000, max_tower_n: 2, max_division_m: 31 },
            tolerances: TOLERANCES,
        }
    }
}

impl RunConfig {
    /// Defaults with the precision taken from HEIGHTGAP_PRECISION when set.
    pub fn from_env() -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var(PRECISION_ENV) {
            cfg.precision = v
                .trim()
                .parse()
                .map_err(|_| CliError::bad(format!("{PRECISION_ENV}={v:?} is not a positive integer")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let b = &self.desk_bounds;
        if self.precision == 0 || self.series_order_cap == 0 || b.max_pf == 0 || b.max_tower_n == 0 || b.max_division_m == 0 {
            return Err(CliError::bad("all configuration caps must be positive"));
        }
        Ok(())
    }

    pub fn tower_config(&self) -> TowerConfig {
        TowerConfig { precision: self.precision, ..TowerConfig::default() }
    }
}
