//! Sign extraction with an explicit zero band, and the shared tolerances.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Tolerance for share identities (column/row normalization, consistency).
pub const SHARE_TOL: f64 = 1e-9;

/// Half-width of the band around zero inside which a value is reported as
/// "zero/indeterminate" rather than forced to a sign.
pub const SIGN_ZERO_BAND: f64 = 1e-12;

/// Sign of an elasticity or rate of change, with an explicit zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    /// Inside the zero band: reported as indeterminate, never forced.
    Zero,
}

impl Sign {
    /// Classify `x` using the default band [`SIGN_ZERO_BAND`].
    pub fn of(x: f64) -> Sign {
        Sign::with_band(x, SIGN_ZERO_BAND)
    }

    pub fn with_band(x: f64, band: f64) -> Sign {
        if x > band {
            Sign::Positive
        } else if x < -band {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    /// Flip the sign; the zero band is its own negation.
    pub fn negate(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Zero => "0",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_is_symmetric() {
        assert_eq!(Sign::of(1e-13), Sign::Zero);
        assert_eq!(Sign::of(-1e-13), Sign::Zero);
        assert_eq!(Sign::of(2e-12), Sign::Positive);
        assert_eq!(Sign::of(-2e-12), Sign::Negative);
    }

    #[test]
    fn negate_roundtrips() {
        for s in [Sign::Positive, Sign::Negative, Sign::Zero] {
            assert_eq!(s.negate().negate(), s);
        }
    }
}
