//! Ingestion and analysis of the bundled historical tables.
//!
//! Sources are prewar Siamese statistics: the Statistical Year Book of the
//! Kingdom of Siam (SYB), Ingram's and Johnston's price series, Skinner's
//! migration estimates, and Kobayashi's population series. Values read
//! directly from a printed table are tagged `PAPER`; reconstructed levels
//! (chosen to reproduce published rates of change where only the rates
//! survive) are tagged `DERIVED`. The loader refuses untagged files.
//!
//! Unit conventions: 1 picul = 60.48 kg throughout (the 1923 redefinition
//! to 60.0 kg was not adopted quickly and the source figures keep the old
//! value); 6.25 rai = 1 hectare, available as a constant but never applied
//! implicitly.

mod migration;
mod pipeline;
mod series;

pub use migration::{B1Totals, MigrationTables, PeriodMigration};
pub use pipeline::{
    compute_factor_price_changes, lambda_estimates, yield_trend_sign, CropClass, CropTable,
    FactorPriceChanges, LaborCounts, LambdaEstimates, TrendMethod, YieldTrend,
};
pub use series::{load_series, PeriodChange, Provenance, SeriesSchema, SeriesTable, YearLabel};

use crate::Result;
use std::path::Path;

/// Mass of one picul in kilograms.
pub const PICUL_KG: f64 = 60.48;

/// Rai per hectare; provided for conversions, never applied implicitly.
pub const RAI_PER_HECTARE: f64 = 6.25;

/// The full bundled dataset, loaded from one directory of tab-separated
/// files with provenance headers.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub wage: SeriesTable,
    pub rice_price: SeriesTable,
    pub land_price: SeriesTable,
    pub shirting_price: SeriesTable,
    pub rice_production: SeriesTable,
    pub rice_area: SeriesTable,
    pub cotton_production: SeriesTable,
    pub cotton_area: SeriesTable,
    pub crops: CropTable,
    pub labor: LaborCounts,
    pub migration: MigrationTables,
}

impl Dataset {
    pub fn load(dir: &Path) -> Result<Self> {
        let series = |file: &str, unit: &str| -> Result<SeriesTable> {
            load_series(&dir.join(file), &SeriesSchema::unit(unit))
        };
        Ok(Self {
            wage: series("wage_bangkok.tsv", "baht/day")?,
            rice_price: series("rice_price.tsv", "baht/picul")?,
            land_price: series("land_price.tsv", "baht/rai")?,
            shirting_price: series("shirting_price.tsv", "baht/kg")?,
            rice_production: series("rice_production.tsv", "picul")?,
            rice_area: series("rice_area.tsv", "rai")?,
            cotton_production: series("cotton_production.tsv", "picul")?,
            cotton_area: series("cotton_area.tsv", "rai")?,
            crops: CropTable::load(&dir.join("crop_areas_1927.tsv"))?,
            labor: LaborCounts::load(&dir.join("labor_1929.tsv"))?,
            migration: MigrationTables::load(dir)?,
        })
    }
}
