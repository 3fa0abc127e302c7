//! Year-indexed series files: parsing, validation, and period arithmetic.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

/// Provenance tag every bundled data file must carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Read directly from a printed source table.
    Paper,
    /// Reconstructed level consistent with published rates or trends.
    Derived,
}

impl Provenance {
    fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "PAPER" => Some(Provenance::Paper),
            "DERIVED" => Some(Provenance::Derived),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Paper => "PAPER",
            Provenance::Derived => "DERIVED",
        }
    }
}

/// A calendar year or a fiscal span like `1920 - 1921`.
///
/// Fiscal years ran April to March in the source statistics; spans are
/// normalized to their starting calendar year for joins and ordering while
/// keeping the original label for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearLabel {
    pub start: i32,
    pub label: String,
}

impl YearLabel {
    pub fn parse(raw: &str) -> Result<Self> {
        let label = raw.trim().to_string();
        let first: String = label
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if first.len() != 4 {
            return Err(Error::Data(format!(
                "year label '{label}' does not start with a 4-digit year"
            )));
        }
        let start: i32 = first.parse().expect("4 ascii digits");
        let rest = label[4..].trim();
        if !rest.is_empty() {
            let tail: String = rest
                .trim_start_matches(['-', ' '])
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            let follows = match tail.len() {
                0 => false,
                2 => tail.parse::<i32>().expect("digits") == (start + 1) % 100,
                4 => tail.parse::<i32>().expect("digits") == start + 1,
                _ => false,
            };
            if !follows {
                return Err(Error::Data(format!(
                    "year label '{label}' is not a year or a consecutive fiscal span"
                )));
            }
        }
        Ok(Self { start, label })
    }

    pub fn year(year: i32) -> Self {
        Self {
            start: year,
            label: year.to_string(),
        }
    }
}

impl fmt::Display for YearLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Expected metadata for a series file.
#[derive(Debug, Clone, Default)]
pub struct SeriesSchema {
    pub unit: Option<String>,
    pub name: Option<String>,
}

impl SeriesSchema {
    pub fn unit(unit: &str) -> Self {
        Self {
            unit: Some(unit.to_string()),
            name: None,
        }
    }
}

/// A validated year-indexed numeric series with a unit and provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub name: String,
    pub unit: String,
    pub provenance: Provenance,
    rows: Vec<(YearLabel, f64)>,
}

impl SeriesTable {
    /// Build from rows, enforcing strictly increasing start years and
    /// finite values. Gaps are allowed and stay explicit.
    pub fn new(
        name: &str,
        unit: &str,
        provenance: Provenance,
        rows: Vec<(YearLabel, f64)>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Data(format!("series '{name}' has no rows")));
        }
        for (label, value) in &rows {
            if !value.is_finite() {
                return Err(Error::Data(format!(
                    "series '{name}' has a non-finite value at {label}"
                )));
            }
        }
        for pair in rows.windows(2) {
            let (a, b) = (&pair[0].0, &pair[1].0);
            if b.start <= a.start {
                return Err(Error::Data(format!(
                    "series '{name}' years not strictly increasing at '{a}' -> '{b}'"
                )));
            }
        }
        Ok(Self {
            name: name.to_string(),
            unit: unit.to_string(),
            provenance,
            rows,
        })
    }

    pub fn rows(&self) -> &[(YearLabel, f64)] {
        &self.rows
    }

    /// Value at a normalized start year, if present.
    pub fn value(&self, year: i32) -> Option<f64> {
        self.rows
            .iter()
            .find(|(label, _)| label.start == year)
            .map(|(_, v)| *v)
    }

    /// Value at a year, as an error when missing.
    pub fn require(&self, year: i32) -> Result<f64> {
        self.value(year).ok_or_else(|| {
            Error::Data(format!("series '{}' has no value for year {year}", self.name))
        })
    }

    /// Centered 3-year moving average at `year`; the three consecutive
    /// calendar years must all be present.
    pub fn ma3(&self, year: i32) -> Result<f64> {
        let mut sum = 0.0;
        for y in (year - 1)..=(year + 1) {
            sum += self.value(y).ok_or_else(|| {
                Error::Data(format!(
                    "series '{}' lacks year {y} needed for the 3-year window at {year}",
                    self.name
                ))
            })?;
        }
        Ok(sum / 3.0)
    }

    /// Percent change of the value between two years.
    pub fn percent_change(&self, start: i32, end: i32) -> Result<PeriodChange> {
        let a = self.require(start)?;
        let b = self.require(end)?;
        if a == 0.0 {
            return Err(Error::Data(format!(
                "series '{}' is zero at {start}; percent change undefined",
                self.name
            )));
        }
        Ok(PeriodChange {
            start_label: self.label_of(start).expect("present").clone(),
            end_label: self.label_of(end).expect("present").clone(),
            percent: (b / a - 1.0) * 100.0,
        })
    }

    fn label_of(&self, year: i32) -> Option<&YearLabel> {
        self.rows
            .iter()
            .find(|(label, _)| label.start == year)
            .map(|(label, _)| label)
    }

    /// Element-wise ratio of two series over their common years.
    ///
    /// Percent changes of a deflated quantity must be computed on these
    /// level ratios; subtracting the component percent changes is a
    /// first-order shortcut reserved for the hat-algebra convention.
    pub fn ratio(&self, denom: &SeriesTable, name: &str, unit: &str) -> Result<SeriesTable> {
        let mut rows = Vec::new();
        for (label, value) in &self.rows {
            if let Some(d) = denom.value(label.start) {
                if d != 0.0 {
                    rows.push((label.clone(), value / d));
                }
            }
        }
        let provenance = if self.provenance == Provenance::Paper
            && denom.provenance == Provenance::Paper
        {
            Provenance::Paper
        } else {
            Provenance::Derived
        };
        SeriesTable::new(name, unit, provenance, rows)
    }
}

/// A percent change between two labeled points of a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodChange {
    pub start_label: YearLabel,
    pub end_label: YearLabel,
    /// Dimensionless change multiplied by 100.
    pub percent: f64,
}

/// Parse one series file: `# name:`, `# unit:`, `# provenance:` headers
/// followed by tab-separated `(year_label, value)` rows.
pub fn load_series(path: &Path, schema: &SeriesSchema) -> Result<SeriesTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut name = None;
    let mut unit = None;
    let mut provenance = None;
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
            } else if let Some(v) = rest.strip_prefix("unit:") {
                unit = Some(v.trim().to_string());
            } else if let Some(v) = rest.strip_prefix("provenance:") {
                provenance = Some(v.trim().to_string());
            }
            continue;
        }
        let mut parts = line.split('\t');
        let (label, value) = match (parts.next(), parts.next()) {
            (Some(l), Some(v)) => (l, v),
            _ => {
                return Err(Error::Data(format!(
                    "{}:{}: expected 'year<TAB>value'",
                    path.display(),
                    lineno + 1
                )))
            }
        };
        let label = YearLabel::parse(label)?;
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::Data(format!(
                "{}:{}: '{}' is not a number",
                path.display(),
                lineno + 1,
                value.trim()
            ))
        })?;
        rows.push((label, value));
    }
    let name = name.ok_or_else(|| {
        Error::Data(format!("{}: missing '# name:' header", path.display()))
    })?;
    let unit = unit.ok_or_else(|| {
        Error::Data(format!("{}: missing '# unit:' header", path.display()))
    })?;
    let provenance = provenance
        .ok_or_else(|| Error::Data(format!("{}: missing '# provenance:' header", path.display())))
        .and_then(|p| {
            Provenance::parse(&p).ok_or_else(|| {
                Error::Data(format!(
                    "{}: provenance '{p}' must be PAPER or DERIVED",
                    path.display()
                ))
            })
        })?;
    if let Some(expect) = &schema.unit {
        if &unit != expect {
            return Err(Error::Data(format!(
                "{}: unit '{unit}' does not match expected '{expect}'",
                path.display()
            )));
        }
    }
    if let Some(expect) = &schema.name {
        if &name != expect {
            return Err(Error::Data(format!(
                "{}: name '{name}' does not match expected '{expect}'",
                path.display()
            )));
        }
    }
    SeriesTable::new(&name, &unit, provenance, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn table(rows: &[(i32, f64)]) -> SeriesTable {
        SeriesTable::new(
            "test",
            "unit",
            Provenance::Derived,
            rows.iter()
                .map(|(y, v)| (YearLabel::year(*y), *v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fiscal_labels_normalize_to_the_start_year() {
        for raw in ["1918 - 1919", "1918-19", "1918-1919", "1918"] {
            assert_eq!(YearLabel::parse(raw).unwrap().start, 1918, "{raw}");
        }
        assert!(YearLabel::parse("1918 - 1925").is_err());
        assert!(YearLabel::parse("18-19").is_err());
    }

    #[test]
    fn empty_and_duplicate_rows_are_rejected() {
        assert!(SeriesTable::new("x", "u", Provenance::Paper, vec![]).is_err());
        let dup = vec![
            (YearLabel::year(1920), 1.0),
            (YearLabel::year(1920), 2.0),
        ];
        assert!(SeriesTable::new("x", "u", Provenance::Paper, dup).is_err());
    }

    #[test]
    fn moving_average_is_symmetric() {
        let fwd = table(&[(1919, 1.0), (1920, 4.0), (1921, 7.0)]);
        let rev = table(&[(1919, 7.0), (1920, 4.0), (1921, 1.0)]);
        assert_abs_diff_eq!(fwd.ma3(1920).unwrap(), rev.ma3(1920).unwrap());
    }

    #[test]
    fn ma_window_requires_all_three_years() {
        let t = table(&[(1919, 1.0), (1921, 3.0)]);
        assert!(t.ma3(1920).is_err());
    }

    #[test]
    fn constant_series_changes_zero_percent() {
        let t = table(&[(1920, 5.5), (1927, 5.5)]);
        assert_abs_diff_eq!(t.percent_change(1920, 1927).unwrap().percent, 0.0);
    }

    #[test]
    fn ratio_percent_change_uses_levels() {
        // (1 + num%) / (1 + den%) - 1, never the difference of the percents.
        let num = table(&[(1920, 10.0), (1927, 13.0)]); // +30%
        let den = table(&[(1920, 4.0), (1927, 5.0)]); // +25%
        let ratio = num.ratio(&den, "ratio", "x").unwrap();
        let pc = ratio.percent_change(1920, 1927).unwrap().percent;
        assert_abs_diff_eq!(pc, (1.30 / 1.25 - 1.0) * 100.0, epsilon = 1e-12);
    }

    #[test]
    fn loader_requires_provenance() {
        let dir = std::env::temp_dir().join("trade3x2_series_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("no_provenance.tsv");
        std::fs::write(&path, "# name: x\n# unit: u\n1920\t1.0\n").unwrap();
        let err = load_series(&path, &SeriesSchema::default()).unwrap_err();
        assert!(err.to_string().contains("provenance"));
    }

    #[test]
    fn loader_checks_units() {
        let dir = std::env::temp_dir().join("trade3x2_series_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("unit.tsv");
        std::fs::write(
            &path,
            "# name: x\n# unit: baht/day\n# provenance: DERIVED\n1920\t1.0\n",
        )
        .unwrap();
        assert!(load_series(&path, &SeriesSchema::unit("baht/day")).is_ok());
        assert!(load_series(&path, &SeriesSchema::unit("baht/kg")).is_err());
    }
}
