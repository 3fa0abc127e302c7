//! Factor and good identifiers with their fixed canonical ordering.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The three primary factors, in canonical order: land, capital, labor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorId {
    /// Land (`T`).
    Land,
    /// Capital (`K`).
    Capital,
    /// Labor (`L`).
    Labor,
}

/// The two goods, in canonical order: the exportable and the importable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GoodId {
    /// Good 1, the exportable (rice in the bundled case study).
    Exportable,
    /// Good 2, the importable (cotton textiles in the bundled case study).
    Importable,
}

/// Canonical factor ordering used for every array index in the crate.
pub const FACTORS: [FactorId; 3] = [FactorId::Land, FactorId::Capital, FactorId::Labor];

/// Canonical good ordering used for every array index in the crate.
pub const GOODS: [GoodId; 2] = [GoodId::Exportable, GoodId::Importable];

impl FactorId {
    /// Index into `[f64; 3]` arrays: T → 0, K → 1, L → 2.
    pub const fn index(self) -> usize {
        match self {
            FactorId::Land => 0,
            FactorId::Capital => 1,
            FactorId::Labor => 2,
        }
    }

    /// Conventional one-letter symbol (`T`, `K`, `L`).
    pub const fn symbol(self) -> &'static str {
        match self {
            FactorId::Land => "T",
            FactorId::Capital => "K",
            FactorId::Labor => "L",
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            FactorId::Land => "land",
            FactorId::Capital => "capital",
            FactorId::Labor => "labor",
        }
    }
}

impl GoodId {
    /// Index into `[f64; 2]` arrays: good 1 → 0, good 2 → 1.
    pub const fn index(self) -> usize {
        match self {
            GoodId::Exportable => 0,
            GoodId::Importable => 1,
        }
    }

    /// Conventional numeric symbol (`1` or `2`).
    pub const fn symbol(self) -> &'static str {
        match self {
            GoodId::Exportable => "1",
            GoodId::Importable => "2",
        }
    }
}

impl fmt::Display for FactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for GoodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
