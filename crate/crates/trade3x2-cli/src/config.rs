//! Case-study configuration: dataset location, period, share estimates,
//! the assumed sector-2 scenario, and what-if overrides.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use trade3x2::Sign;

/// Environment variable consulted for the dataset root when
/// `--dataset-dir` is absent.
pub const DATA_DIR_ENV: &str = "TRADE3X2_DATA_DIR";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseStudyConfig {
    /// Dataset directory; `--dataset-dir` and the environment variable
    /// take precedence.
    pub dataset_dir: Option<PathBuf>,
    pub period: Period,
    /// Sector-1 distributive shares from the production-cost survey.
    pub sector1: SectorShares,
    /// Assumed sector-2 scenario. No survey exists for the importable
    /// sector, so these are calibrated values, not observations: the
    /// scenario is chosen to reproduce the data-derived allocation shares
    /// through the share algebra and is reported as an assumption.
    pub scenario: Scenario,
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Period {
    pub start: i32,
    pub end: i32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorShares {
    pub theta_t1: f64,
    pub theta_k1: f64,
    pub theta_l1: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Income share of the exportable good.
    pub theta_good1: f64,
    pub theta_t2: f64,
    pub theta_k2: f64,
    pub theta_l2: f64,
    /// Middle-factor intensity assumption: labor used relatively
    /// intensively in the exportable sector.
    pub labor_intensive_in_exportable: bool,
}

/// What-if overrides; `None` leaves the data-derived value in place.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// Replace the terms-of-trade change (percent).
    pub p_percent: Option<f64>,
    /// Replace the land reward change (percent).
    pub x_percent: Option<f64>,
    /// Replace the labor reward change (percent).
    pub z_percent: Option<f64>,
    /// Force the sign of the sector-1 land coefficient change.
    pub a_t1_sign: Option<SignSpec>,
    /// Force the sign of the sector-2 land coefficient change.
    pub a_t2_sign: Option<SignSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignSpec {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Indeterminate,
}

impl SignSpec {
    pub fn to_sign(self) -> Sign {
        match self {
            SignSpec::Positive => Sign::Positive,
            SignSpec::Negative => Sign::Negative,
            SignSpec::Indeterminate => Sign::Zero,
        }
    }
}

impl Default for CaseStudyConfig {
    fn default() -> Self {
        Self {
            dataset_dir: None,
            period: Period {
                start: 1920,
                end: 1927,
            },
            sector1: SectorShares {
                theta_t1: 0.22,
                theta_k1: 0.27,
                theta_l1: 0.51,
            },
            scenario: Scenario {
                theta_good1: 0.80,
                theta_t2: 0.10313,
                theta_k2: 0.48052,
                theta_l2: 0.41635,
                labor_intensive_in_exportable: true,
            },
            overrides: Overrides::default(),
        }
    }
}

impl CaseStudyConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
        let config: Self = toml::from_str(&text)
            .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        Ok(config)
    }

    /// Resolve the dataset directory: flag, then environment, then the
    /// config file, then `data/thailand` under the working directory.
    pub fn resolve_dataset_dir(&self, flag: Option<&Path>) -> PathBuf {
        if let Some(dir) = flag {
            return dir.to_path_buf();
        }
        if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        if let Some(dir) = &self.dataset_dir {
            return dir.clone();
        }
        PathBuf::from("data/thailand")
    }
}
