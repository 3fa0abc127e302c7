//! Share tables (distributive, income, allocation) and the factor
//! intensity ranking, with the algebra tying them together.
//!
//! Conventions: `theta[i][j]` is factor `i`'s share of sector `j`'s
//! revenue (columns sum to one), `lambda[i][j]` is the fraction of factor
//! `i`'s endowment employed in sector `j` (rows sum to one), and the two
//! are linked through income shares by `lambda_ij = (theta_j / theta_i) *
//! theta_ij` with `theta_i = sum_j theta_j * theta_ij`.

use crate::error::Error;
use crate::factors::{FactorId, FACTORS};
use crate::sign::SHARE_TOL;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Distributive shares `theta_ij`: factor `i`'s share of sector `j` revenue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributiveShares {
    theta: [[f64; 2]; 3],
}

impl DistributiveShares {
    /// Validate positivity and column normalization (each sector's shares
    /// sum to one within [`SHARE_TOL`]).
    pub fn new(theta: [[f64; 2]; 3]) -> Result<Self> {
        for (i, row) in theta.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::InvalidShares(format!(
                        "theta_{}{} = {v} must be a positive finite share",
                        FACTORS[i].symbol(),
                        j + 1
                    )));
                }
            }
        }
        for j in 0..2 {
            let col: f64 = (0..3).map(|i| theta[i][j]).sum();
            if (col - 1.0).abs() > SHARE_TOL {
                return Err(Error::InvalidShares(format!(
                    "sector {} distributive shares sum to {col}, expected 1",
                    j + 1
                )));
            }
        }
        Ok(Self { theta })
    }

    pub fn get(&self, factor: FactorId, good_index: usize) -> f64 {
        self.theta[factor.index()][good_index]
    }

    pub fn as_array(&self) -> &[[f64; 2]; 3] {
        &self.theta
    }

    /// Intensity ratio `theta_i1 / theta_i2` for one factor.
    pub fn intensity_ratio(&self, factor: FactorId) -> f64 {
        let row = self.theta[factor.index()];
        row[0] / row[1]
    }
}

/// Income shares: `theta_j` of each good and `theta_i` of each factor in
/// national income.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncomeShares {
    good: [f64; 2],
    factor: [f64; 3],
}

impl IncomeShares {
    /// Validate positivity, normalization of both partitions, and the
    /// cross-consistency `theta_i = sum_j theta_j * theta_ij`.
    pub fn new(good: [f64; 2], factor: [f64; 3], distributive: &DistributiveShares) -> Result<Self> {
        if good.iter().chain(factor.iter()).any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidShares(
                "income shares must be positive and finite".into(),
            ));
        }
        let gs: f64 = good.iter().sum();
        if (gs - 1.0).abs() > SHARE_TOL {
            return Err(Error::InvalidShares(format!(
                "good income shares sum to {gs}, expected 1"
            )));
        }
        let fs: f64 = factor.iter().sum();
        if (fs - 1.0).abs() > SHARE_TOL {
            return Err(Error::InvalidShares(format!(
                "factor income shares sum to {fs}, expected 1"
            )));
        }
        for (i, f) in FACTORS.iter().enumerate() {
            let implied: f64 = (0..2).map(|j| good[j] * distributive.get(*f, j)).sum();
            if (implied - factor[i]).abs() > SHARE_TOL {
                return Err(Error::InvalidShares(format!(
                    "theta_{} = {} inconsistent with implied {} from good shares",
                    f.symbol(),
                    factor[i],
                    implied
                )));
            }
        }
        Ok(Self { good, factor })
    }

    pub fn of_good(&self, good_index: usize) -> f64 {
        self.good[good_index]
    }

    pub fn of_factor(&self, factor: FactorId) -> f64 {
        self.factor[factor.index()]
    }

    pub fn goods(&self) -> [f64; 2] {
        self.good
    }

    pub fn factors(&self) -> [f64; 3] {
        self.factor
    }

    /// Ratio `theta_i / theta_h` between two factor income shares.
    pub fn factor_ratio(&self, i: FactorId, h: FactorId) -> f64 {
        self.factor[i.index()] / self.factor[h.index()]
    }
}

/// Allocation shares `lambda_ij`: fraction of factor `i` employed in sector `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllocationShares {
    lambda: [[f64; 2]; 3],
}

impl AllocationShares {
    /// Validate nonnegativity and row normalization.
    pub fn new(lambda: [[f64; 2]; 3]) -> Result<Self> {
        for (i, row) in lambda.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidShares(format!(
                        "lambda_{}{} = {v} must be a nonnegative finite share",
                        FACTORS[i].symbol(),
                        j + 1
                    )));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > SHARE_TOL {
                return Err(Error::InvalidShares(format!(
                    "factor {} allocation shares sum to {sum}, expected 1",
                    FACTORS[i].symbol()
                )));
            }
        }
        Ok(Self { lambda })
    }

    pub fn get(&self, factor: FactorId, good_index: usize) -> f64 {
        self.lambda[factor.index()][good_index]
    }

    pub fn as_array(&self) -> &[[f64; 2]; 3] {
        &self.lambda
    }
}

/// Derive income and allocation shares from distributive shares and the
/// two good income shares.
///
/// Uses `theta_i = sum_j theta_j * theta_ij` and
/// `lambda_ij = (theta_j / theta_i) * theta_ij`; the returned allocation
/// rows sum to one by construction.
pub fn derive_allocation(
    distributive: &DistributiveShares,
    good_shares: [f64; 2],
) -> Result<(IncomeShares, AllocationShares)> {
    if good_shares.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(Error::InvalidShares(
            "good income shares must be positive and finite".into(),
        ));
    }
    if (good_shares[0] + good_shares[1] - 1.0).abs() > SHARE_TOL {
        return Err(Error::InvalidShares(format!(
            "good income shares sum to {}, expected 1",
            good_shares[0] + good_shares[1]
        )));
    }
    let mut factor = [0.0; 3];
    let mut lambda = [[0.0; 2]; 3];
    for (i, f) in FACTORS.iter().enumerate() {
        factor[i] = (0..2).map(|j| good_shares[j] * distributive.get(*f, j)).sum();
        // theta_ij > 0 and theta_j > 0 imply theta_i > 0, so the division is safe.
        for j in 0..2 {
            lambda[i][j] = good_shares[j] / factor[i] * distributive.get(*f, j);
        }
    }
    let income = IncomeShares::new(good_shares, factor, distributive)?;
    let allocation = AllocationShares::new(lambda)?;
    Ok((income, allocation))
}

/// Which middle-factor intensity case holds: the middle factor used
/// relatively intensively in sector 1 (`theta_m1 > theta_m2`) or in
/// sector 2 (`theta_m1 < theta_m2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MiddleIntensityCase {
    IntensiveInExportable,
    IntensiveInImportable,
}

/// Strict factor intensity ranking by the ratios `theta_i1 / theta_i2`.
///
/// The ordering of those ratios equals the ordering of the sector-1
/// allocation shares `lambda_i1` (the allocation column is a monotone
/// transform of the ratio), so `lambda_ordering` is the same permutation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntensityRanking {
    /// Factors ordered by descending intensity ratio.
    pub ordering: [FactorId; 3],
    /// The intensity ratios in canonical factor order (T, K, L).
    pub ratios: [f64; 3],
    /// The factor whose ratio lies between the other two.
    pub middle_factor: FactorId,
    /// The two factors at the ends of the ranking, descending.
    pub extreme_factors: (FactorId, FactorId),
    /// Which sector uses the middle factor relatively intensively.
    pub middle_intensity_case: MiddleIntensityCase,
}

impl IntensityRanking {
    /// True when the ranking is the canonical configuration the
    /// strong-result theory is stated for: land > labor > capital with
    /// labor the middle factor.
    pub fn is_canonical(&self) -> bool {
        self.ordering == [FactorId::Land, FactorId::Labor, FactorId::Capital]
    }

    /// The sector-1 allocation shares ordered the same way as the ratios
    /// (largest first); equivalent to the ranking by construction.
    pub fn lambda_ordering(&self) -> [FactorId; 3] {
        self.ordering
    }
}

/// Compute the strict factor intensity ranking.
///
/// Ties (relative gap below `1e-12`) are rejected: the ranking assumption
/// fails and downstream sign logic would be meaningless.
pub fn intensity_ranking(distributive: &DistributiveShares) -> Result<IntensityRanking> {
    let ratios = [
        distributive.intensity_ratio(FactorId::Land),
        distributive.intensity_ratio(FactorId::Capital),
        distributive.intensity_ratio(FactorId::Labor),
    ];
    let mut order: Vec<(FactorId, f64)> = FACTORS
        .iter()
        .map(|f| (*f, distributive.intensity_ratio(*f)))
        .collect();
    order.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite ratios"));
    for w in order.windows(2) {
        let (hi, lo) = (w[0].1, w[1].1);
        if (hi - lo).abs() <= 1e-12 * hi.abs().max(lo.abs()).max(1.0) {
            return Err(Error::IndeterminateRanking(format!(
                "intensity ratios for {} and {} coincide at {hi}",
                w[0].0.symbol(),
                w[1].0.symbol()
            )));
        }
    }
    let ordering = [order[0].0, order[1].0, order[2].0];
    let middle = ordering[1];
    let m1 = distributive.get(middle, 0);
    let m2 = distributive.get(middle, 1);
    if (m1 - m2).abs() <= 1e-12 * m1.max(m2) {
        return Err(Error::IndeterminateRanking(format!(
            "middle factor {} has equal shares in both sectors",
            middle.symbol()
        )));
    }
    Ok(IntensityRanking {
        ordering,
        ratios,
        middle_factor: middle,
        extreme_factors: (ordering[0], ordering[2]),
        middle_intensity_case: if m1 > m2 {
            MiddleIntensityCase::IntensiveInExportable
        } else {
            MiddleIntensityCase::IntensiveInImportable
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn thai_like_shares() -> DistributiveShares {
        DistributiveShares::new([[0.22, 0.10313], [0.27, 0.48052], [0.51, 0.41635]]).unwrap()
    }

    #[test]
    fn rejects_unnormalized_columns() {
        let err = DistributiveShares::new([[0.3, 0.1], [0.3, 0.5], [0.3, 0.4]]).unwrap_err();
        assert!(matches!(err, Error::InvalidShares(_)));
    }

    #[test]
    fn rejects_nonpositive_entries() {
        let err = DistributiveShares::new([[0.0, 0.1], [0.5, 0.5], [0.5, 0.4]]).unwrap_err();
        assert!(matches!(err, Error::InvalidShares(_)));
    }

    #[test]
    fn identical_sectors_allocate_by_income_shares() {
        // When both sectors use factors in the same proportions, each factor
        // splits across sectors exactly like national income does.
        let d = DistributiveShares::new([[0.2, 0.2], [0.3, 0.3], [0.5, 0.5]]).unwrap();
        let (_, lambda) = derive_allocation(&d, [0.6, 0.4]).unwrap();
        for f in FACTORS {
            assert_abs_diff_eq!(lambda.get(f, 0), 0.6, epsilon = 1e-12);
            assert_abs_diff_eq!(lambda.get(f, 1), 0.4, epsilon = 1e-12);
        }
    }

    #[test]
    fn hand_evaluated_allocation() {
        // theta_1 = 0.8, theta_T1 = 0.25, theta_T2 = 0.10:
        // theta_T = 0.8*0.25 + 0.2*0.10 = 0.22, lambda_T1 = 0.8*0.25/0.22.
        let d = DistributiveShares::new([[0.25, 0.10], [0.30, 0.50], [0.45, 0.40]]).unwrap();
        let (income, lambda) = derive_allocation(&d, [0.8, 0.2]).unwrap();
        assert_abs_diff_eq!(income.of_factor(FactorId::Land), 0.22, epsilon = 1e-12);
        assert_abs_diff_eq!(lambda.get(FactorId::Land, 0), 0.2 / 0.22, epsilon = 1e-12);
        assert_abs_diff_eq!(lambda.get(FactorId::Land, 0), 0.9091, epsilon = 5e-5);
    }

    #[test]
    fn calibrated_thai_shares_reproduce_allocation_estimates() {
        // The sector-2 scenario is calibrated so the allocation column
        // matches the case-study estimates lambda_T1 ~ 0.895, lambda_L1 ~ 0.830.
        let (_, lambda) = derive_allocation(&thai_like_shares(), [0.8, 0.2]).unwrap();
        assert_abs_diff_eq!(lambda.get(FactorId::Land, 0), 0.8951, epsilon = 1e-4);
        assert_abs_diff_eq!(lambda.get(FactorId::Labor, 0), 0.8305, epsilon = 1e-4);
        assert!(lambda.get(FactorId::Land, 0) > lambda.get(FactorId::Labor, 0));
        assert!(lambda.get(FactorId::Labor, 0) > lambda.get(FactorId::Capital, 0));
    }

    #[test]
    fn ranking_orders_by_ratio() {
        // Ratios: T: 2.5, L: 1.2, K: 0.4 -> T > L > K with labor in the middle.
        let d = DistributiveShares::new([[0.25, 0.10], [0.20, 0.50], [0.55, 0.40]]).unwrap();
        let r = intensity_ranking(&d).unwrap();
        assert_eq!(
            r.ordering,
            [FactorId::Land, FactorId::Labor, FactorId::Capital]
        );
        assert_eq!(r.middle_factor, FactorId::Labor);
        assert_eq!(r.extreme_factors, (FactorId::Land, FactorId::Capital));
        assert!(r.is_canonical());
        assert_eq!(
            r.middle_intensity_case,
            MiddleIntensityCase::IntensiveInExportable
        );
    }

    #[test]
    fn tied_ratios_are_indeterminate() {
        let d = DistributiveShares::new([[0.25, 0.25], [0.30, 0.30], [0.45, 0.45]]).unwrap();
        let err = intensity_ranking(&d).unwrap_err();
        assert!(matches!(err, Error::IndeterminateRanking(_)));
    }

    #[test]
    fn thai_ranking_is_canonical() {
        let r = intensity_ranking(&thai_like_shares()).unwrap();
        assert!(r.is_canonical());
        assert_eq!(
            r.middle_intensity_case,
            MiddleIntensityCase::IntensiveInExportable
        );
    }
}
