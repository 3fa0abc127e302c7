//! The full economy parameterization and the economy-wide substitution
//! (EWS) aggregates computed from it.

use crate::allen::{AllenMatrix, CostShareElasticities};
use crate::error::Error;
use crate::factors::{FactorId, FACTORS};
use crate::shares::{derive_allocation, AllocationShares, DistributiveShares, IncomeShares};
use crate::sign::{Sign, SHARE_TOL, SIGN_ZERO_BAND};
use crate::Result;
use serde::{Deserialize, Serialize};

/// One 3×2 economy at a point in time: all four share/elasticity tables.
///
/// Construction validates every cross-table identity, so holding an
/// `Economy` is proof the parameterization is internally consistent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Economy {
    distributive: DistributiveShares,
    income: IncomeShares,
    allocation: AllocationShares,
    allen: AllenMatrix,
}

impl Economy {
    /// Build from distributive shares, good income shares, and Allen
    /// matrices; income and allocation shares are derived and validated.
    pub fn from_parts(
        distributive: DistributiveShares,
        good_shares: [f64; 2],
        allen: AllenMatrix,
    ) -> Result<Self> {
        let (income, allocation) = derive_allocation(&distributive, good_shares)?;
        allen.validate(&distributive)?;
        Ok(Self {
            distributive,
            income,
            allocation,
            allen,
        })
    }

    /// Build from explicit tables, checking the allocation table against the
    /// one implied by the share algebra.
    pub fn new(
        distributive: DistributiveShares,
        income: IncomeShares,
        allocation: AllocationShares,
        allen: AllenMatrix,
    ) -> Result<Self> {
        let (_, implied) = derive_allocation(&distributive, income.goods())?;
        for f in FACTORS {
            for j in 0..2 {
                let (given, expect) = (allocation.get(f, j), implied.get(f, j));
                if (given - expect).abs() > SHARE_TOL {
                    return Err(Error::InvalidShares(format!(
                        "lambda_{}{} = {given} inconsistent with {expect} implied by shares",
                        f.symbol(),
                        j + 1
                    )));
                }
            }
        }
        allen.validate(&distributive)?;
        Ok(Self {
            distributive,
            income,
            allocation,
            allen,
        })
    }

    pub fn distributive(&self) -> &DistributiveShares {
        &self.distributive
    }

    pub fn income(&self) -> &IncomeShares {
        &self.income
    }

    pub fn allocation(&self) -> &AllocationShares {
        &self.allocation
    }

    pub fn allen(&self) -> &AllenMatrix {
        &self.allen
    }

    /// Output-constant cost-share response coefficients for both sectors.
    pub fn cost_share_elasticities(&self) -> CostShareElasticities {
        CostShareElasticities::from_parts(&self.allen, &self.distributive)
    }

    /// Economy-wide substitution aggregates `g_ih = sum_j lambda_ij eps_ih`.
    pub fn ews(&self) -> EwsComponents {
        let eps = self.cost_share_elasticities();
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for h in 0..3 {
                g[i][h] = (0..2)
                    .map(|j| self.allocation.get(FACTORS[i], j) * eps.get(j, i, h))
                    .sum();
            }
        }
        EwsComponents { g }
    }
}

/// Whether two factors substitute for or complement each other economy-wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Complementarity {
    Substitutes,
    Complements,
    /// Aggregate inside the sign zero band.
    Indeterminate,
}

/// The economy-wide substitution matrix `g` and its named aggregates.
///
/// Rows inherit `sum_h g_ih = 0` from cost-share homogeneity, and the
/// income-share-weighted matrix `theta_i * g_ih` is symmetric, so the
/// off-diagonal signs are symmetric too.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EwsComponents {
    g: [[f64; 3]; 3],
}

impl EwsComponents {
    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.g
    }

    pub fn get(&self, i: FactorId, h: FactorId) -> f64 {
        self.g[i.index()][h.index()]
    }

    /// `S = g_LK`: labor/capital aggregate substitution.
    pub fn s(&self) -> f64 {
        self.get(FactorId::Labor, FactorId::Capital)
    }

    /// `T = g_LT`: labor/land aggregate substitution (the ratio denominator).
    pub fn t(&self) -> f64 {
        self.get(FactorId::Labor, FactorId::Land)
    }

    /// `U = g_KT`: capital/land aggregate substitution (the extreme pair).
    pub fn u(&self) -> f64 {
        self.get(FactorId::Capital, FactorId::Land)
    }

    /// Substitute/complement label for a factor pair (`i != h`).
    pub fn complementarity(&self, i: FactorId, h: FactorId) -> Complementarity {
        match Sign::of(self.get(i, h)) {
            Sign::Positive => Complementarity::Substitutes,
            Sign::Negative => Complementarity::Complements,
            Sign::Zero => Complementarity::Indeterminate,
        }
    }

    /// The EWS ratio vector `(S', U') = (g_LK / g_LT, g_KT / g_LT)`.
    ///
    /// Undefined when the denominator `g_LT` sits inside the zero band.
    pub fn ratio_vector(&self) -> Result<EwsRatioVector> {
        let t = self.t();
        if t.abs() <= SIGN_ZERO_BAND {
            return Err(Error::RatioUndefined(t.abs()));
        }
        Ok(EwsRatioVector {
            s_prime: self.s() / t,
            u_prime: self.u() / t,
        })
    }

    /// True when the extreme factors (land/capital) are economy-wide
    /// complements and the labor/land aggregate is a genuine substitute:
    /// the quadrant-IV configuration the strong result needs.
    pub fn quadrant_iv(&self) -> bool {
        Sign::of(self.u()).is_negative() && Sign::of(self.t()).is_positive()
    }
}

/// The EWS ratio vector; its quadrant and subregion determine the
/// Rybczynski sign pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EwsRatioVector {
    pub s_prime: f64,
    pub u_prime: f64,
}

impl EwsRatioVector {
    /// Quadrant IV of the plane: `S' > 0`, `U' < 0`.
    pub fn in_quadrant_iv(&self) -> bool {
        Sign::of(self.s_prime).is_positive() && Sign::of(self.u_prime).is_negative()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Economy with uniform off-diagonal substitution `s` per sector.
    pub(crate) fn uniform_economy(good_shares: [f64; 2], s: [f64; 2]) -> Economy {
        let theta =
            DistributiveShares::new([[0.25, 0.10], [0.20, 0.50], [0.55, 0.40]]).unwrap();
        let mut sigma = [[[0.0; 3]; 3]; 2];
        for j in 0..2 {
            for i in 0..3 {
                for h in 0..3 {
                    if i != h {
                        sigma[j][i][h] = s[j];
                    }
                }
                let own = theta.get(FACTORS[i], j);
                sigma[j][i][i] = -s[j] * (1.0 - own) / own;
            }
        }
        Economy::from_parts(theta, good_shares, AllenMatrix::new(sigma).unwrap()).unwrap()
    }

    #[test]
    fn g_rows_sum_to_zero() {
        let e = uniform_economy([0.7, 0.3], [1.0, 0.8]);
        let g = e.ews();
        for i in 0..3 {
            let row: f64 = g.matrix()[i].iter().sum();
            assert_abs_diff_eq!(row, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn weighted_g_is_symmetric() {
        let e = uniform_economy([0.6, 0.4], [1.2, 0.5]);
        let g = e.ews();
        for i in 0..3 {
            for h in 0..3 {
                let lhs = e.income().of_factor(FACTORS[i]) * g.matrix()[i][h];
                let rhs = e.income().of_factor(FACTORS[h]) * g.matrix()[h][i];
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_sector_collapse_reduces_to_sector_elasticities() {
        // With sector 2 negligible (good share ~ 0), lambda_i1 ~ 1 and the
        // aggregate reduces to the sector-1 coefficients.
        let e = uniform_economy([1.0 - 1e-9, 1e-9], [1.0, 1.0]);
        let g = e.ews();
        let eps = e.cost_share_elasticities();
        for i in 0..3 {
            for h in 0..3 {
                assert_abs_diff_eq!(g.matrix()[i][h], eps.get(0, i, h), epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn uniform_substitution_labels_substitutes() {
        let e = uniform_economy([0.7, 0.3], [1.0, 1.0]);
        let g = e.ews();
        assert_eq!(
            g.complementarity(FactorId::Capital, FactorId::Land),
            Complementarity::Substitutes
        );
        assert!(!g.quadrant_iv());
        let r = g.ratio_vector().unwrap();
        assert!(r.s_prime > 0.0);
        assert!(r.u_prime > 0.0);
    }

    #[test]
    fn ews_is_deterministic() {
        let a = uniform_economy([0.7, 0.3], [1.0, 0.8]).ews();
        let b = uniform_economy([0.7, 0.3], [1.0, 0.8]).ews();
        assert_eq!(a.matrix(), b.matrix());
    }
}
