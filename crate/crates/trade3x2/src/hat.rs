//! Rate-of-change ("hat") comparative statics for the 3×2 economy.
//!
//! The linear system stacks the two zero-profit conditions
//! `sum_i theta_ij w_i^ = p_j^` and the three full-employment conditions
//! `sum_j lambda_ij (a_ij^ + X_j^) = V_i^`, with the input-coefficient
//! responses substituted from cost minimization,
//! `a_ij^ = sum_h eps_ih w_h^`. Unknowns are ordered
//! `(w_T^, w_K^, w_L^, X_1^, X_2^)` and equations
//! `(profit 1, profit 2, employment T, K, L)` so solved matrices are
//! reproducible in golden tests.

use crate::economy::Economy;
use crate::error::Error;
use crate::factors::{FactorId, FACTORS};
use crate::linalg;
use crate::sign::Sign;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Exogenous rates of change: two goods prices and three endowments.
///
/// No normalization applies; the small-country assumption makes all five
/// components free.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ShockVector {
    /// Goods price changes `p_j^` in canonical good order.
    pub p_hat: [f64; 2],
    /// Endowment changes `V_i^` in canonical factor order.
    pub v_hat: [f64; 3],
}

impl ShockVector {
    pub fn prices(p1: f64, p2: f64) -> Self {
        Self {
            p_hat: [p1, p2],
            v_hat: [0.0; 3],
        }
    }

    pub fn endowment(factor: FactorId, v: f64) -> Self {
        let mut v_hat = [0.0; 3];
        v_hat[factor.index()] = v;
        Self {
            p_hat: [0.0; 2],
            v_hat,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.p_hat.iter().chain(self.v_hat.iter()).all(|v| v.is_finite())
    }
}

/// Endogenous rates of change solved from one shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseBundle {
    /// Factor reward changes `w_i^`.
    pub w_hat: [f64; 3],
    /// Output changes `X_j^`.
    pub x_hat: [f64; 2],
    /// Input-coefficient changes `a_ij^` (factor-major).
    pub a_hat: [[f64; 2]; 3],
    /// Aggregates `a_i0' = sum_j lambda_ij a_ij^`.
    pub a0_prime: [f64; 3],
}

impl ResponseBundle {
    /// Worst residual of the two zero-profit conditions,
    /// `sum_i theta_ij w_i^ - p_j^`.
    pub fn zero_profit_residual(&self, economy: &Economy, shock: &ShockVector) -> f64 {
        (0..2)
            .map(|j| {
                let lhs: f64 = FACTORS
                    .iter()
                    .map(|f| economy.distributive().get(*f, j) * self.w_hat[f.index()])
                    .sum();
                (lhs - shock.p_hat[j]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Worst residual of the three full-employment conditions,
    /// `sum_j lambda_ij (a_ij^ + X_j^) - V_i^`.
    pub fn full_employment_residual(&self, economy: &Economy, shock: &ShockVector) -> f64 {
        FACTORS
            .iter()
            .map(|f| {
                let i = f.index();
                let lhs: f64 = (0..2)
                    .map(|j| economy.allocation().get(*f, j) * (self.a_hat[i][j] + self.x_hat[j]))
                    .sum();
                (lhs - shock.v_hat[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Worst residual of the per-sector cost-share identity
    /// `sum_i theta_ij a_ij^ = 0`.
    pub fn cost_share_residual(&self, economy: &Economy) -> f64 {
        (0..2)
            .map(|j| {
                FACTORS
                    .iter()
                    .map(|f| economy.distributive().get(*f, j) * self.a_hat[f.index()][j])
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    /// Flat key-value rendering of the bundle (symbol-named fields).
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for f in FACTORS {
            let _ = writeln!(out, "w_{}_hat = {}", f.symbol(), self.w_hat[f.index()]);
        }
        for j in 0..2 {
            let _ = writeln!(out, "X_{}_hat = {}", j + 1, self.x_hat[j]);
        }
        for f in FACTORS {
            for j in 0..2 {
                let _ = writeln!(
                    out,
                    "a_{}{}_hat = {}",
                    f.symbol(),
                    j + 1,
                    self.a_hat[f.index()][j]
                );
            }
        }
        for f in FACTORS {
            let _ = writeln!(out, "a_{}0_prime = {}", f.symbol(), self.a0_prime[f.index()]);
        }
        out
    }
}

/// The 2×3 Rybczynski elasticity matrix `r[j][i] = X_j^ / V_i^`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RybczynskiMatrix {
    r: [[f64; 3]; 2],
}

impl RybczynskiMatrix {
    pub fn get(&self, good_index: usize, factor: FactorId) -> f64 {
        self.r[good_index][factor.index()]
    }

    pub fn rows(&self) -> &[[f64; 3]; 2] {
        &self.r
    }

    /// Row sums; each equals one by endowment-scaling homogeneity.
    pub fn row_sums(&self) -> [f64; 2] {
        [self.r[0].iter().sum(), self.r[1].iter().sum()]
    }

    /// 2×3 sign pattern with the default zero band.
    pub fn sign_pattern(&self) -> [[Sign; 3]; 2] {
        let mut s = [[Sign::Zero; 3]; 2];
        for j in 0..2 {
            for i in 0..3 {
                s[j][i] = Sign::of(self.r[j][i]);
            }
        }
        s
    }

    /// Relative-output effects `X_1^/V_i^ - X_2^/V_i^` per factor, with signs.
    pub fn relative_output_effects(&self) -> [(f64, Sign); 3] {
        let mut out = [(0.0, Sign::Zero); 3];
        for i in 0..3 {
            let v = self.r[0][i] - self.r[1][i];
            out[i] = (v, Sign::of(v));
        }
        out
    }

    /// Flat key-value rendering (`r_jI` fields in canonical order).
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for j in 0..2 {
            for f in FACTORS {
                let _ = writeln!(out, "r_{}{} = {}", j + 1, f.symbol(), self.r[j][f.index()]);
            }
        }
        out
    }
}

/// Assemble the 5×5 coefficient matrix in the fixed unknown/equation order.
fn system_matrix(economy: &Economy) -> Vec<Vec<f64>> {
    let g = economy.ews();
    let mut a = vec![vec![0.0; 5]; 5];
    for j in 0..2 {
        for f in FACTORS {
            a[j][f.index()] = economy.distributive().get(f, j);
        }
    }
    for (row, f) in FACTORS.iter().enumerate() {
        for h in 0..3 {
            a[2 + row][h] = g.matrix()[f.index()][h];
        }
        for j in 0..2 {
            a[2 + row][3 + j] = economy.allocation().get(*f, j);
        }
    }
    a
}

/// Solve the comparative-statics system for one shock.
pub fn solve_changes(economy: &Economy, shock: &ShockVector) -> Result<ResponseBundle> {
    if !shock.is_finite() {
        return Err(Error::PremiseFailed("shock components must be finite".into()));
    }
    let a = system_matrix(economy);
    let b = vec![
        shock.p_hat[0],
        shock.p_hat[1],
        shock.v_hat[0],
        shock.v_hat[1],
        shock.v_hat[2],
    ];
    let z = linalg::solve_copy(&a, &b)?;
    let w_hat = [z[0], z[1], z[2]];
    let x_hat = [z[3], z[4]];
    let eps = economy.cost_share_elasticities();
    let mut a_hat = [[0.0; 2]; 3];
    let mut a0_prime = [0.0; 3];
    for f in FACTORS {
        let i = f.index();
        for j in 0..2 {
            a_hat[i][j] = (0..3).map(|h| eps.get(j, i, h) * w_hat[h]).sum();
            a0_prime[i] += economy.allocation().get(f, j) * a_hat[i][j];
        }
    }
    Ok(ResponseBundle {
        w_hat,
        x_hat,
        a_hat,
        a0_prime,
    })
}

/// Condition number (infinity norm) of the comparative-statics matrix.
///
/// Worth reporting when it exceeds `1e8`; the solve itself does not gate
/// on it.
pub fn system_condition(economy: &Economy) -> Result<f64> {
    linalg::condition_inf(&system_matrix(economy))
}

/// Rybczynski matrix: column `i` is the response to a unit endowment
/// change of factor `i` at fixed goods prices.
pub fn rybczynski_matrix(economy: &Economy) -> Result<RybczynskiMatrix> {
    let mut r = [[0.0; 3]; 2];
    for f in FACTORS {
        let resp = solve_changes(economy, &ShockVector::endowment(f, 1.0))?;
        for j in 0..2 {
            r[j][f.index()] = resp.x_hat[j];
        }
    }
    Ok(RybczynskiMatrix { r })
}

/// Largest violation of the reciprocity identity linking endowment-shock
/// output elasticities to price-shock factor-reward elasticities.
///
/// In elasticity form the identity carries income-share weights:
/// `theta_j * (X_j^/V_i^) = theta_i * (w_i^/p_j^)` for every pair `(i, j)`
/// (the unweighted level-form identity divides through by `p_j X_j` on one
/// side and `w_i V_i` on the other). Returns the worst absolute deviation
/// of the weighted forms; the contract is `< 1e-8`.
pub fn reciprocity_check(economy: &Economy) -> Result<f64> {
    let r = rybczynski_matrix(economy)?;
    let mut worst = 0.0_f64;
    for j in 0..2 {
        let mut shock = ShockVector::default();
        shock.p_hat[j] = 1.0;
        let resp = solve_changes(economy, &shock)?;
        for f in FACTORS {
            let lhs = economy.income().of_good(j) * r.get(j, f);
            let rhs = economy.income().of_factor(f) * resp.w_hat[f.index()];
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}
