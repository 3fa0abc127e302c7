//! Per-sector Allen partial substitution matrices and the cost-share
//! response coefficients derived from them.
//!
//! For sector `j`, `sigma[j][i][h]` is the Allen partial elasticity of
//! substitution between factors `i` and `h`. A valid matrix is symmetric,
//! satisfies the homogeneity identity `sum_h theta_hj * sigma_ih = 0` for
//! every row, has negative own terms, and the share-weighted matrix
//! `theta_ij * theta_hj * sigma_ih` is negative semidefinite (unit-cost
//! concavity).

use crate::error::Error;
use crate::factors::FACTORS;
use crate::shares::DistributiveShares;
use crate::sign::SHARE_TOL;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Allen partial elasticities per sector, `sigma[sector][i][h]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllenMatrix {
    sigma: [[[f64; 3]; 3]; 2],
}

impl AllenMatrix {
    /// Construct from raw entries, checking finiteness and symmetry only.
    /// The share-dependent invariants are checked by [`AllenMatrix::validate`].
    pub fn new(sigma: [[[f64; 3]; 3]; 2]) -> Result<Self> {
        for (j, m) in sigma.iter().enumerate() {
            for i in 0..3 {
                for h in 0..3 {
                    if !m[i][h].is_finite() {
                        return Err(Error::InvalidAllen(format!(
                            "sigma{}_{}{} is not finite",
                            j + 1,
                            FACTORS[i].symbol(),
                            FACTORS[h].symbol()
                        )));
                    }
                }
            }
            for i in 0..3 {
                for h in (i + 1)..3 {
                    let (a, b) = (m[i][h], m[h][i]);
                    if (a - b).abs() > 1e-9 * a.abs().max(b.abs()).max(1.0) {
                        return Err(Error::InvalidAllen(format!(
                            "sector {} matrix not symmetric at ({}, {}): {a} vs {b}",
                            j + 1,
                            FACTORS[i].symbol(),
                            FACTORS[h].symbol()
                        )));
                    }
                }
            }
        }
        Ok(Self { sigma })
    }

    pub fn get(&self, sector: usize, i: usize, h: usize) -> f64 {
        self.sigma[sector][i][h]
    }

    pub fn sector(&self, sector: usize) -> &[[f64; 3]; 3] {
        &self.sigma[sector]
    }

    /// Check the share-dependent invariants against a distributive share table:
    /// homogeneity rows, negative own elasticities, and concavity of the
    /// weighted matrix (eigenvalues of `theta_i theta_h sigma_ih` are `<= 0`;
    /// that matrix always has the all-ones null vector by homogeneity).
    pub fn validate(&self, theta: &DistributiveShares) -> Result<()> {
        for j in 0..2 {
            let m = &self.sigma[j];
            for i in 0..3 {
                if m[i][i] >= 0.0 {
                    return Err(Error::InvalidAllen(format!(
                        "sigma{}_{sym}{sym} = {} must be negative",
                        j + 1,
                        m[i][i],
                        sym = FACTORS[i].symbol()
                    )));
                }
                let row_sum: f64 = (0..3)
                    .map(|h| theta.get(FACTORS[h], j) * m[i][h])
                    .sum();
                let scale: f64 = (0..3)
                    .map(|h| (theta.get(FACTORS[h], j) * m[i][h]).abs())
                    .sum::<f64>()
                    .max(1.0);
                if row_sum.abs() > SHARE_TOL * scale {
                    return Err(Error::InvalidAllen(format!(
                        "sector {} homogeneity violated on row {}: residual {row_sum:.3e}",
                        j + 1,
                        FACTORS[i].symbol()
                    )));
                }
            }
            // Weighted matrix w_ih = theta_ij theta_hj sigma_ih is symmetric with
            // null vector (1,1,1); it is NSD iff trace <= 0 and the sum of 2x2
            // principal minors >= 0 (its other two eigenvalues then lie <= 0).
            let mut w = [[0.0; 3]; 3];
            for i in 0..3 {
                for h in 0..3 {
                    w[i][h] = theta.get(FACTORS[i], j) * theta.get(FACTORS[h], j) * m[i][h];
                }
            }
            let trace = w[0][0] + w[1][1] + w[2][2];
            let minors = (w[0][0] * w[1][1] - w[0][1] * w[1][0])
                + (w[0][0] * w[2][2] - w[0][2] * w[2][0])
                + (w[1][1] * w[2][2] - w[1][2] * w[2][1]);
            if trace > 1e-12 || minors < -1e-12 {
                return Err(Error::InvalidAllen(format!(
                    "sector {} weighted substitution matrix is not negative semidefinite \
                     (trace {trace:.3e}, minor sum {minors:.3e})",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// Cost-share response coefficients `eps[j][i][h]`: the output-constant
/// elasticity of the input coefficient `a_ij` with respect to the reward of
/// factor `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostShareElasticities {
    eps: [[[f64; 3]; 3]; 2],
}

impl CostShareElasticities {
    /// `eps_ih = theta_hj * sigma_ih`: the share of the factor whose price
    /// changed scales the substitution elasticity. With this form the rows
    /// inherit the homogeneity identity `sum_h eps_ih = 0`, which is what
    /// makes input coefficients depend on relative rewards only.
    pub fn from_parts(allen: &AllenMatrix, theta: &DistributiveShares) -> Self {
        let mut eps = [[[0.0; 3]; 3]; 2];
        for j in 0..2 {
            for i in 0..3 {
                for h in 0..3 {
                    eps[j][i][h] = theta.get(FACTORS[h], j) * allen.get(j, i, h);
                }
            }
        }
        Self { eps }
    }

    pub fn get(&self, sector: usize, i: usize, h: usize) -> f64 {
        self.eps[sector][i][h]
    }

    pub fn sector(&self, sector: usize) -> &[[f64; 3]; 3] {
        &self.eps[sector]
    }
}
