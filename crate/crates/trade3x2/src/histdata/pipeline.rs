//! Case-study computations on the loaded series: deflated factor price
//! changes, yield trends, and allocation-share estimates.

use super::series::{PeriodChange, SeriesTable};
use super::PICUL_KG;
use crate::error::Error;
use crate::sign::Sign;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// The three observable deflated changes over a period, in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorPriceChanges {
    /// Terms of trade: percent change of kg of shirting per picul of rice.
    pub p: PeriodChange,
    /// Land reward in rice: percent change of land price over rice price.
    pub x: PeriodChange,
    /// Labor reward in rice: percent change of the wage over rice price.
    pub z: PeriodChange,
}

impl FactorPriceChanges {
    /// Labor reward against the importable, `Z + P`, combined additively
    /// per the discrete percent-change convention.
    pub fn z_plus_p(&self) -> f64 {
        self.z.percent + self.p.percent
    }
}

/// Convert a price series to baht per picul, accepting `baht/picul`
/// directly or `baht/kg` via the picul mass.
fn to_baht_per_picul(series: &SeriesTable) -> Result<SeriesTable> {
    match series.unit.as_str() {
        "baht/picul" => Ok(series.clone()),
        "baht/kg" => {
            let rows = series
                .rows()
                .iter()
                .map(|(l, v)| (l.clone(), v * PICUL_KG))
                .collect();
            SeriesTable::new(&series.name, "baht/picul", series.provenance, rows)
        }
        other => Err(Error::Data(format!(
            "series '{}' has unit '{other}', expected a rice price in baht/picul or baht/kg",
            series.name
        ))),
    }
}

/// Compute the deflated changes `(P, X, Z)` between the period endpoints.
///
/// All ratios are formed on levels and differenced as percents between the
/// endpoint years:
/// `X` deflates the land price by the rice price, `Z` the daily wage by the
/// rice price, and `P` is the terms of trade measured as kilograms of
/// white shirting per picul of rice (rice in baht/picul over shirting in
/// baht/kg).
pub fn compute_factor_price_changes(
    wage: &SeriesTable,
    rice_price: &SeriesTable,
    land_price: &SeriesTable,
    shirting_price: &SeriesTable,
    period: (i32, i32),
) -> Result<FactorPriceChanges> {
    expect_unit(wage, "baht/day")?;
    expect_unit(land_price, "baht/rai")?;
    expect_unit(shirting_price, "baht/kg")?;
    let rice = to_baht_per_picul(rice_price)?;
    let (start, end) = period;
    let wage_in_rice = wage.ratio(&rice, "wage in rice", "picul/day")?;
    let land_in_rice = land_price.ratio(&rice, "land price in rice", "picul/rai")?;
    let terms_of_trade = rice.ratio(shirting_price, "terms of trade", "kg shirting/picul")?;
    Ok(FactorPriceChanges {
        p: terms_of_trade.percent_change(start, end)?,
        x: land_in_rice.percent_change(start, end)?,
        z: wage_in_rice.percent_change(start, end)?,
    })
}

fn expect_unit(series: &SeriesTable, unit: &str) -> Result<()> {
    if series.unit != unit {
        return Err(Error::Data(format!(
            "series '{}' has unit '{}', expected '{unit}'",
            series.name, series.unit
        )));
    }
    Ok(())
}

/// Endpoint comparison method for trend extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrendMethod {
    /// Centered 3-year moving average at each endpoint (the default,
    /// matching the source figures' overlays).
    MovingAverage3,
    /// Raw endpoint values; for sensitivity checks only.
    RawEndpoints,
}

/// A yield trend over a period and the input-coefficient sign it implies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YieldTrend {
    /// Yield at the period start (kg/rai, by the chosen method).
    pub start_yield: f64,
    /// Yield at the period end (kg/rai).
    pub end_yield: f64,
    pub method: TrendMethod,
    /// Sign of the yield movement.
    pub trend: Sign,
    /// Implied sign of the land input-coefficient change: output per land
    /// falling means land per output rising, so this is the negated trend.
    pub implied_a_sign: Sign,
}

/// Yield (kg/rai) trend between the period endpoints.
///
/// Production may be in `picul` (converted) or `kg`; area must be in
/// `rai`. The moving-average method needs all three window years at both
/// endpoints.
pub fn yield_trend_sign(
    production: &SeriesTable,
    area: &SeriesTable,
    period: (i32, i32),
    method: TrendMethod,
) -> Result<YieldTrend> {
    expect_unit(area, "rai")?;
    let production_kg = match production.unit.as_str() {
        "kg" => production.clone(),
        "picul" => {
            let rows = production
                .rows()
                .iter()
                .map(|(l, v)| (l.clone(), v * PICUL_KG))
                .collect();
            SeriesTable::new(&production.name, "kg", production.provenance, rows)?
        }
        other => {
            return Err(Error::Data(format!(
                "series '{}' has unit '{other}', expected picul or kg",
                production.name
            )))
        }
    };
    let yield_series = production_kg.ratio(area, "yield", "kg/rai")?;
    let (start, end) = period;
    let (start_yield, end_yield) = match method {
        TrendMethod::MovingAverage3 => (yield_series.ma3(start)?, yield_series.ma3(end)?),
        TrendMethod::RawEndpoints => {
            (yield_series.require(start)?, yield_series.require(end)?)
        }
    };
    // Zero band scaled to the yield level so flat series come back
    // indeterminate instead of picking up rounding noise.
    let band = 1e-9 * start_yield.abs().max(end_yield.abs()).max(1.0);
    let trend = Sign::with_band(end_yield - start_yield, band);
    Ok(YieldTrend {
        start_yield,
        end_yield,
        method,
        trend,
        implied_a_sign: trend.negate(),
    })
}

/// Exportable/importable classification of a crop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CropClass {
    Exportable,
    Importable,
}

/// Planted area by crop with an export classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CropTable {
    pub name: String,
    rows: Vec<(String, f64, CropClass)>,
}

impl CropTable {
    /// Parse a crop-area file: header comments as in series files, rows
    /// `crop<TAB>area_rai<TAB>E|I`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        let mut name = None;
        let mut provenance = false;
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("name:") {
                    name = Some(v.trim().to_string());
                } else if rest.starts_with("provenance:") {
                    provenance = true;
                }
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 3 {
                return Err(Error::Data(format!(
                    "{}:{}: expected 'crop<TAB>area<TAB>class'",
                    path.display(),
                    lineno + 1
                )));
            }
            let area: f64 = parts[1].trim().parse().map_err(|_| {
                Error::Data(format!(
                    "{}:{}: '{}' is not a number",
                    path.display(),
                    lineno + 1,
                    parts[1]
                ))
            })?;
            let class = match parts[2].trim() {
                "E" => CropClass::Exportable,
                "I" => CropClass::Importable,
                other => {
                    return Err(Error::Data(format!(
                        "{}:{}: crop '{}' has unclassified marker '{other}' (want E or I)",
                        path.display(),
                        lineno + 1,
                        parts[0]
                    )))
                }
            };
            rows.push((parts[0].trim().to_string(), area, class));
        }
        if !provenance {
            return Err(Error::Data(format!(
                "{}: missing '# provenance:' header",
                path.display()
            )));
        }
        if rows.is_empty() {
            return Err(Error::Data(format!("{}: no crop rows", path.display())));
        }
        Ok(Self {
            name: name.unwrap_or_else(|| "crops".into()),
            rows,
        })
    }

    pub fn rows(&self) -> &[(String, f64, CropClass)] {
        &self.rows
    }

    pub fn total_area(&self) -> f64 {
        self.rows.iter().map(|(_, a, _)| a).sum()
    }

    pub fn exportable_area(&self) -> f64 {
        self.rows
            .iter()
            .filter(|(_, _, c)| *c == CropClass::Exportable)
            .map(|(_, a, _)| a)
            .sum()
    }
}

/// Labor force counts by category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaborCounts {
    counts: BTreeMap<String, f64>,
}

impl LaborCounts {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        let mut provenance = false;
        let mut counts = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if rest.trim().starts_with("provenance:") {
                    provenance = true;
                }
                continue;
            }
            let mut parts = line.split('\t');
            if let (Some(k), Some(v)) = (parts.next(), parts.next()) {
                let value: f64 = v.trim().parse().map_err(|_| {
                    Error::Data(format!("{}: '{v}' is not a number", path.display()))
                })?;
                counts.insert(k.trim().to_string(), value);
            }
        }
        if !provenance {
            return Err(Error::Data(format!(
                "{}: missing '# provenance:' header",
                path.display()
            )));
        }
        Ok(Self { counts })
    }

    pub fn get(&self, category: &str) -> Result<f64> {
        self.counts
            .get(category)
            .copied()
            .ok_or_else(|| Error::Data(format!("labor counts lack category '{category}'")))
    }
}

/// Data-derived allocation share estimates for sector 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaEstimates {
    /// Share of planted area under exportable crops.
    pub lambda_t1: f64,
    /// Share of the labor force in agriculture.
    pub lambda_l1: f64,
}

/// Estimate `lambda_T1` from planted areas and `lambda_L1` from labor
/// counts (categories `agriculture` and `total`).
pub fn lambda_estimates(crops: &CropTable, labor: &LaborCounts) -> Result<LambdaEstimates> {
    let total = crops.total_area();
    if total <= 0.0 {
        return Err(Error::Data("crop table has nonpositive total area".into()));
    }
    let agricultural = labor.get("agriculture")?;
    let workforce = labor.get("total")?;
    if workforce <= 0.0 {
        return Err(Error::Data("labor counts have nonpositive total".into()));
    }
    Ok(LambdaEstimates {
        lambda_t1: crops.exportable_area() / total,
        lambda_l1: agricultural / workforce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::histdata::series::{Provenance, YearLabel};
    use approx::assert_abs_diff_eq;

    fn series(name: &str, unit: &str, rows: &[(i32, f64)]) -> SeriesTable {
        SeriesTable::new(
            name,
            unit,
            Provenance::Derived,
            rows.iter()
                .map(|(y, v)| (YearLabel::year(*y), *v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_ratios_change_zero_percent() {
        let wage = series("wage", "baht/day", &[(1920, 1.0), (1927, 2.0)]);
        let rice = series("rice", "baht/picul", &[(1920, 8.0), (1927, 16.0)]);
        let land = series("land", "baht/rai", &[(1920, 60.0), (1927, 120.0)]);
        let shirting = series("shirting", "baht/kg", &[(1920, 1.0), (1927, 2.0)]);
        let c = compute_factor_price_changes(&wage, &rice, &land, &shirting, (1920, 1927))
            .unwrap();
        assert_abs_diff_eq!(c.p.percent, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.x.percent, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.z.percent, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn missing_endpoint_year_is_an_error() {
        let wage = series("wage", "baht/day", &[(1920, 1.0)]);
        let rice = series("rice", "baht/picul", &[(1920, 8.0), (1927, 9.0)]);
        let land = series("land", "baht/rai", &[(1920, 60.0), (1927, 61.0)]);
        let shirting = series("shirting", "baht/kg", &[(1920, 1.0), (1927, 1.1)]);
        assert!(
            compute_factor_price_changes(&wage, &rice, &land, &shirting, (1920, 1927)).is_err()
        );
    }

    #[test]
    fn rice_price_in_baht_per_kg_is_converted() {
        let per_picul = series("rice", "baht/picul", &[(1920, 12.096), (1927, 12.096)]);
        let per_kg = series("rice", "baht/kg", &[(1920, 0.2), (1927, 0.2)]);
        let a = to_baht_per_picul(&per_picul).unwrap();
        let b = to_baht_per_picul(&per_kg).unwrap();
        assert_abs_diff_eq!(
            a.value(1920).unwrap(),
            b.value(1920).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn flat_yield_series_is_indeterminate() {
        let production = series(
            "prod",
            "picul",
            &[(1919, 20.0), (1920, 20.0), (1921, 20.0), (1926, 20.0), (1927, 20.0), (1928, 20.0)],
        );
        let area = series(
            "area",
            "rai",
            &[(1919, 10.0), (1920, 10.0), (1921, 10.0), (1926, 10.0), (1927, 10.0), (1928, 10.0)],
        );
        let t = yield_trend_sign(&production, &area, (1920, 1927), TrendMethod::MovingAverage3)
            .unwrap();
        assert_eq!(t.trend, Sign::Zero);
        assert_eq!(t.implied_a_sign, Sign::Zero);
    }

    #[test]
    fn ma_window_shortage_is_an_error() {
        let production = series("prod", "picul", &[(1920, 20.0), (1927, 25.0)]);
        let area = series("area", "rai", &[(1920, 10.0), (1927, 10.0)]);
        assert!(yield_trend_sign(
            &production,
            &area,
            (1920, 1927),
            TrendMethod::MovingAverage3
        )
        .is_err());
        // Raw endpoints still work on sparse series.
        let t =
            yield_trend_sign(&production, &area, (1920, 1927), TrendMethod::RawEndpoints).unwrap();
        assert_eq!(t.trend, Sign::Positive);
        assert_eq!(t.implied_a_sign, Sign::Negative);
    }
}
