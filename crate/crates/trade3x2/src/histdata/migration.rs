//! Chinese migration aggregates against population growth.
//!
//! Two migration tables are bundled: annual arrivals/departures for
//! 1918-1934 from both Skinner's estimates and the SYB (persons), and the
//! long 1900-1955 series in thousands from Skinner. Population is
//! Kobayashi's series with Bourgeois-Pichat's as the alternative.

use super::series::{load_series, SeriesSchema, SeriesTable};
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// All migration-related series.
#[derive(Debug, Clone)]
pub struct MigrationTables {
    pub b1_skinner_arrivals: SeriesTable,
    pub b1_skinner_departures: SeriesTable,
    pub b1_skinner_net: SeriesTable,
    pub b1_syb_arrivals: SeriesTable,
    pub b1_syb_departures: SeriesTable,
    pub b1_syb_net: SeriesTable,
    /// Long series, thousands of persons.
    pub b3_arrivals: SeriesTable,
    pub b3_departures: SeriesTable,
    pub b3_net: SeriesTable,
    /// Population, thousands (Kobayashi).
    pub population: SeriesTable,
    /// Alternative population, thousands (Bourgeois-Pichat).
    pub population_alt: SeriesTable,
}

/// Totals of the 1918-1934 annual table, persons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct B1Totals {
    pub skinner_arrivals: f64,
    pub skinner_departures: f64,
    pub skinner_net: f64,
    pub syb_arrivals: f64,
    pub syb_departures: f64,
    pub syb_net: f64,
    /// Skinner net minus SYB net.
    pub net_difference: f64,
}

/// Migration over a period against population growth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodMigration {
    pub start_year: i32,
    pub end_year: i32,
    /// Sums over fiscal years starting in `[start_year, end_year)`, thousands.
    pub arrivals: f64,
    pub departures: f64,
    pub net: f64,
    /// Population levels at the calendar endpoints, thousands.
    pub population_start: f64,
    pub population_end: f64,
    pub growth: f64,
    /// Net arrivals as a percentage of population growth.
    pub net_share_percent: f64,
}

impl MigrationTables {
    pub fn load(dir: &Path) -> Result<Self> {
        let persons = |file: &str| load_series(&dir.join(file), &SeriesSchema::unit("persons"));
        let thousands =
            |file: &str| load_series(&dir.join(file), &SeriesSchema::unit("thousand persons"));
        let tables = Self {
            b1_skinner_arrivals: persons("b1_skinner_arrivals.tsv")?,
            b1_skinner_departures: persons("b1_skinner_departures.tsv")?,
            b1_skinner_net: persons("b1_skinner_net.tsv")?,
            b1_syb_arrivals: persons("b1_syb_arrivals.tsv")?,
            b1_syb_departures: persons("b1_syb_departures.tsv")?,
            b1_syb_net: persons("b1_syb_net.tsv")?,
            b3_arrivals: thousands("b3_arrivals.tsv")?,
            b3_departures: thousands("b3_departures.tsv")?,
            b3_net: thousands("b3_net.tsv")?,
            population: thousands("population_kobayashi.tsv")?,
            population_alt: thousands("population_bp.tsv")?,
        };
        tables.validate()?;
        Ok(tables)
    }

    /// Row-wise `net = arrivals - departures` within the source rounding:
    /// one person for the annual table, 0.1 thousand for the long table.
    pub fn validate(&self) -> Result<()> {
        for (arr, dep, net, tol, what) in [
            (
                &self.b1_skinner_arrivals,
                &self.b1_skinner_departures,
                &self.b1_skinner_net,
                1.0,
                "skinner annual",
            ),
            (
                &self.b1_syb_arrivals,
                &self.b1_syb_departures,
                &self.b1_syb_net,
                1.0,
                "syb annual",
            ),
            (
                &self.b3_arrivals,
                &self.b3_departures,
                &self.b3_net,
                0.1 + 1e-9,
                "long series",
            ),
        ] {
            for (label, net_value) in net.rows() {
                let a = arr.require(label.start)?;
                let d = dep.require(label.start)?;
                if (a - d - net_value).abs() > tol {
                    return Err(Error::Data(format!(
                        "{what}: net {net_value} != arrivals {a} - departures {d} at {label}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Column totals of the annual 1918-1934 table.
    pub fn b1_totals(&self) -> B1Totals {
        let sum = |t: &SeriesTable| t.rows().iter().map(|(_, v)| v).sum::<f64>();
        let skinner_net = sum(&self.b1_skinner_net);
        let syb_net = sum(&self.b1_syb_net);
        B1Totals {
            skinner_arrivals: sum(&self.b1_skinner_arrivals),
            skinner_departures: sum(&self.b1_skinner_departures),
            skinner_net,
            syb_arrivals: sum(&self.b1_syb_arrivals),
            syb_departures: sum(&self.b1_syb_departures),
            syb_net,
            net_difference: skinner_net - syb_net,
        }
    }

    /// Sum the long series over fiscal years starting within
    /// `[start, end)` and divide by population growth from `start` to
    /// `end` (calendar years, thousands).
    pub fn period_analysis(&self, start: i32, end: i32) -> Result<PeriodMigration> {
        if end <= start {
            return Err(Error::Data(format!(
                "period end {end} must exceed start {start}"
            )));
        }
        let in_period = |t: &SeriesTable| -> f64 {
            t.rows()
                .iter()
                .filter(|(label, _)| label.start >= start && label.start < end)
                .map(|(_, v)| v)
                .sum()
        };
        let covered = self
            .b3_net
            .rows()
            .iter()
            .any(|(label, _)| label.start == start);
        if !covered {
            return Err(Error::Data(format!(
                "migration series has no row starting in {start}"
            )));
        }
        let population_start = self.population.require(start)?;
        let population_end = self.population.require(end)?;
        let growth = population_end - population_start;
        if growth == 0.0 {
            return Err(Error::Data(
                "population growth over the period is zero".into(),
            ));
        }
        let net = in_period(&self.b3_net);
        Ok(PeriodMigration {
            start_year: start,
            end_year: end,
            arrivals: in_period(&self.b3_arrivals),
            departures: in_period(&self.b3_departures),
            net,
            population_start,
            population_end,
            growth,
            net_share_percent: net / growth * 100.0,
        })
    }
}
