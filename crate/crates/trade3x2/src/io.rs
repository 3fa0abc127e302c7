//! Plain-text key-value documents for economies and oracle fixtures.
//!
//! An economy document has sections `[distributive]`, `[income]`,
//! `[allen.sector1]`, `[allen.sector2]` with fields named after the
//! symbols (`theta_T1`, `sigma1_KT`, ...). A fixture document carries the
//! same sections plus `[gl.sector1]`, `[gl.sector2]`, `[gl.prices]`, and
//! `[gl.endowments]` for the generating cost coefficients. Allocation
//! shares are derived from the share algebra on load, never stored.

use crate::allen::AllenMatrix;
use crate::economy::Economy;
use crate::error::Error;
use crate::factors::{FACTORS, GOODS};
use crate::oracle::GLEconomy;
use crate::Result;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

type Sections = BTreeMap<String, BTreeMap<String, f64>>;

fn parse_sections(text: &str, what: &str) -> Result<Sections> {
    let mut sections: Sections = BTreeMap::new();
    let mut current = String::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Data(format!("{what}:{}: unclosed section", lineno + 1)))?;
            current = name.trim().to_string();
            sections.entry(current.clone()).or_default();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Data(format!("{what}:{}: expected 'key = value'", lineno + 1))
        })?;
        if current.is_empty() {
            return Err(Error::Data(format!(
                "{what}:{}: entry before any [section]",
                lineno + 1
            )));
        }
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::Data(format!(
                "{what}:{}: '{}' is not a number",
                lineno + 1,
                value.trim()
            ))
        })?;
        let prior = sections
            .get_mut(&current)
            .expect("section exists")
            .insert(key.trim().to_string(), value);
        if let Some(prev) = prior {
            if prev != value {
                return Err(Error::Data(format!(
                    "{what}:{}: key '{}' redefined with a different value",
                    lineno + 1,
                    key.trim()
                )));
            }
        }
    }
    Ok(sections)
}

fn required<'a>(sections: &'a Sections, name: &str, what: &str) -> Result<&'a BTreeMap<String, f64>> {
    sections
        .get(name)
        .ok_or_else(|| Error::Data(format!("{what}: missing [{name}] section")))
}

fn field(map: &BTreeMap<String, f64>, key: &str, section: &str, what: &str) -> Result<f64> {
    map.get(key)
        .copied()
        .ok_or_else(|| Error::Data(format!("{what}: [{section}] lacks '{key}'")))
}

fn allen_from(sections: &Sections, what: &str) -> Result<AllenMatrix> {
    let mut sigma = [[[0.0; 3]; 3]; 2];
    for (j, section) in ["allen.sector1", "allen.sector2"].iter().enumerate() {
        let map = required(sections, section, what)?;
        for (i, fi) in FACTORS.iter().enumerate() {
            for (h, fh) in FACTORS.iter().enumerate().skip(i) {
                let canonical = format!("sigma{}_{}{}", j + 1, fi.symbol(), fh.symbol());
                let swapped = format!("sigma{}_{}{}", j + 1, fh.symbol(), fi.symbol());
                let value = match (map.get(&canonical), map.get(&swapped)) {
                    (Some(a), Some(b)) if i != h => {
                        if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                            return Err(Error::Data(format!(
                                "{what}: '{canonical}' and '{swapped}' disagree"
                            )));
                        }
                        *a
                    }
                    (Some(a), _) => *a,
                    (None, Some(b)) => *b,
                    (None, None) => {
                        return Err(Error::Data(format!(
                            "{what}: [{section}] lacks '{canonical}'"
                        )))
                    }
                };
                sigma[j][i][h] = value;
                sigma[j][h][i] = value;
            }
        }
    }
    AllenMatrix::new(sigma)
}

fn economy_from_sections(sections: &Sections, what: &str) -> Result<Economy> {
    let dist = required(sections, "distributive", what)?;
    let mut theta = [[0.0; 2]; 3];
    for (i, f) in FACTORS.iter().enumerate() {
        for (j, g) in GOODS.iter().enumerate() {
            theta[i][j] = field(dist, &format!("theta_{}{}", f.symbol(), g.symbol()), "distributive", what)?;
        }
    }
    let income = required(sections, "income", what)?;
    let goods = [
        field(income, "theta_1", "income", what)?,
        field(income, "theta_2", "income", what)?,
    ];
    let distributive = crate::shares::DistributiveShares::new(theta)?;
    let allen = allen_from(sections, what)?;
    Economy::from_parts(distributive, goods, allen)
}

/// Parse an economy document.
pub fn economy_from_str(text: &str, what: &str) -> Result<Economy> {
    economy_from_sections(&parse_sections(text, what)?, what)
}

/// Load an economy document from a file.
pub fn load_economy(path: &Path) -> Result<Economy> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    economy_from_str(&text, &path.display().to_string())
}

/// Render an economy document; `Display` for `f64` round-trips exactly.
pub fn economy_to_string(economy: &Economy) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[distributive]");
    for f in FACTORS {
        for (j, g) in GOODS.iter().enumerate() {
            let _ = writeln!(
                out,
                "theta_{}{} = {}",
                f.symbol(),
                g.symbol(),
                economy.distributive().get(f, j)
            );
        }
    }
    let _ = writeln!(out, "\n[income]");
    let _ = writeln!(out, "theta_1 = {}", economy.income().of_good(0));
    let _ = writeln!(out, "theta_2 = {}", economy.income().of_good(1));
    for (j, section) in ["allen.sector1", "allen.sector2"].iter().enumerate() {
        let _ = writeln!(out, "\n[{section}]");
        for (i, fi) in FACTORS.iter().enumerate() {
            for fh in FACTORS.iter().skip(i) {
                let _ = writeln!(
                    out,
                    "sigma{}_{}{} = {}",
                    j + 1,
                    fi.symbol(),
                    fh.symbol(),
                    economy.allen().get(j, fi.index(), fh.index())
                );
            }
        }
    }
    out
}

/// Parse a generalized-Leontief fixture (coefficients, prices, endowments).
pub fn gl_from_str(text: &str, what: &str) -> Result<GLEconomy> {
    let sections = parse_sections(text, what)?;
    let mut b = [[[0.0; 3]; 3]; 2];
    for (j, section) in ["gl.sector1", "gl.sector2"].iter().enumerate() {
        let map = required(&sections, section, what)?;
        for (i, fi) in FACTORS.iter().enumerate() {
            for (h, fh) in FACTORS.iter().enumerate().skip(i) {
                let key = format!("b_{}{}", fi.symbol(), fh.symbol());
                let value = field(map, &key, section, what)?;
                b[j][i][h] = value;
                b[j][h][i] = value;
            }
        }
    }
    let prices = required(&sections, "gl.prices", what)?;
    let p = [
        field(prices, "p_1", "gl.prices", what)?,
        field(prices, "p_2", "gl.prices", what)?,
    ];
    let endowments = required(&sections, "gl.endowments", what)?;
    let mut v = [0.0; 3];
    for (i, f) in FACTORS.iter().enumerate() {
        v[i] = field(endowments, &format!("v_{}", f.symbol()), "gl.endowments", what)?;
    }
    GLEconomy::new(b, p, v)
}

/// Load a fixture file.
pub fn load_gl(path: &Path) -> Result<GLEconomy> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    gl_from_str(&text, &path.display().to_string())
}

/// Render a fixture: the generating coefficients followed by the economy
/// sections extracted at its solved equilibrium.
pub fn gl_to_string(gl: &GLEconomy, economy: &Economy) -> String {
    let mut out = String::new();
    for (j, section) in ["gl.sector1", "gl.sector2"].iter().enumerate() {
        let _ = writeln!(out, "[{section}]");
        for (i, fi) in FACTORS.iter().enumerate() {
            for (h, fh) in FACTORS.iter().enumerate().skip(i) {
                let _ = writeln!(out, "b_{}{} = {}", fi.symbol(), fh.symbol(), gl.b[j][i][h]);
            }
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out, "[gl.prices]");
    let _ = writeln!(out, "p_1 = {}", gl.p[0]);
    let _ = writeln!(out, "p_2 = {}", gl.p[1]);
    let _ = writeln!(out, "\n[gl.endowments]");
    for (i, f) in FACTORS.iter().enumerate() {
        let _ = writeln!(out, "v_{} = {}", f.symbol(), gl.v[i]);
    }
    let _ = writeln!(out);
    out.push_str(&economy_to_string(economy));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{sample_admissible, SampleConstraints};

    #[test]
    fn economy_document_round_trips() {
        let (_, snap) = sample_admissible(19, &SampleConstraints::default()).unwrap();
        let text = economy_to_string(&snap.economy);
        let parsed = economy_from_str(&text, "roundtrip").unwrap();
        assert_eq!(parsed, snap.economy);
    }

    #[test]
    fn fixture_document_round_trips() {
        let (gl, snap) = sample_admissible(23, &SampleConstraints::default()).unwrap();
        let text = gl_to_string(&gl, &snap.economy);
        let parsed = gl_from_str(&text, "roundtrip").unwrap();
        assert_eq!(parsed, gl);
        // The embedded economy sections parse to the snapshot economy.
        let economy = economy_from_str(&text, "roundtrip").unwrap();
        assert_eq!(economy, snap.economy);
    }

    #[test]
    fn swapped_symmetry_keys_are_accepted() {
        let (_, snap) = sample_admissible(19, &SampleConstraints::default()).unwrap();
        let text = economy_to_string(&snap.economy).replace("sigma1_TK", "sigma1_KT");
        let parsed = economy_from_str(&text, "swapped").unwrap();
        assert_eq!(parsed, snap.economy);
    }

    #[test]
    fn missing_fields_are_reported() {
        let (_, snap) = sample_admissible(19, &SampleConstraints::default()).unwrap();
        let text = economy_to_string(&snap.economy);
        let broken: String = text
            .lines()
            .filter(|l| !l.starts_with("theta_K1"))
            .collect::<Vec<_>>()
            .join("\n");
        let err = economy_from_str(&broken, "broken").unwrap_err();
        assert!(err.to_string().contains("theta_K1"));
    }

    #[test]
    fn invalid_shares_fail_validation_on_load() {
        let (_, snap) = sample_admissible(19, &SampleConstraints::default()).unwrap();
        let theta_t1 = snap.economy.distributive().get(crate::FactorId::Land, 0);
        let text = economy_to_string(&snap.economy).replace(
            &format!("theta_T1 = {theta_t1}"),
            "theta_T1 = 0.9999",
        );
        assert!(economy_from_str(&text, "invalid").is_err());
    }
}
