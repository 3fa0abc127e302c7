//! Finite-difference elasticities from re-solved equilibria.
//!
//! These are the numerical counterparts of the closed-form and linear
//! results elsewhere in the crate; agreement between the two routes is the
//! core validation contract. All perturbed solves are warm-started from the
//! base equilibrium so re-solves stay on the same branch.

use crate::error::Error;
use crate::hat::ShockVector;
use crate::oracle::gl::{EquilibriumSnapshot, GLEconomy};
use crate::Result;

/// Central-difference Rybczynski elasticity matrix `d log X_j / d log V_i`
/// at fixed goods prices, with relative endowment step `step`.
pub fn fd_rybczynski(gl: &GLEconomy, step: f64) -> Result<[[f64; 3]; 2]> {
    let base = gl.solve_equilibrium()?;
    fd_rybczynski_at(gl, &base, step)
}

/// [`fd_rybczynski`] differentiated around an already-solved base point.
pub fn fd_rybczynski_at(
    gl: &GLEconomy,
    base: &EquilibriumSnapshot,
    step: f64,
) -> Result<[[f64; 3]; 2]> {
    if !(step.is_finite() && step > 0.0 && step < 0.5) {
        return Err(Error::Infeasible(format!(
            "finite-difference step {step} out of range"
        )));
    }
    let mut r = [[0.0; 3]; 2];
    for i in 0..3 {
        let mut up = *gl;
        up.v[i] = gl.v[i] * (1.0 + step);
        let mut dn = *gl;
        dn.v[i] = gl.v[i] * (1.0 - step);
        let s_up = up.solve_equilibrium_from(base.w, base.x)?;
        let s_dn = dn.solve_equilibrium_from(base.w, base.x)?;
        let dlogv = ((1.0 + step) / (1.0 - step)).ln();
        for j in 0..2 {
            r[j][i] = (s_up.x[j].ln() - s_dn.x[j].ln()) / dlogv;
        }
    }
    Ok(r)
}

/// Central-difference response to an arbitrary shock direction.
///
/// The shock fixes a direction in `(p, V)` space; levels are perturbed as
/// `p_j * exp(±t * p_hat_j)` (and likewise for endowments) with `t` scaled
/// so the largest level perturbation is `rel_step`. Returns the
/// rate-of-change responses `(w_hat, x_hat)` per unit shock, comparable
/// directly with [`crate::hat::solve_changes`].
pub fn fd_response(
    gl: &GLEconomy,
    shock: &ShockVector,
    rel_step: f64,
) -> Result<([f64; 3], [f64; 2])> {
    let base = gl.solve_equilibrium()?;
    fd_response_at(gl, &base, shock, rel_step)
}

/// [`fd_response`] differentiated around an already-solved base point.
pub fn fd_response_at(
    gl: &GLEconomy,
    base: &EquilibriumSnapshot,
    shock: &ShockVector,
    rel_step: f64,
) -> Result<([f64; 3], [f64; 2])> {
    let magnitude = shock
        .p_hat
        .iter()
        .chain(shock.v_hat.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if magnitude == 0.0 {
        return Ok(([0.0; 3], [0.0; 2]));
    }
    let t = rel_step / magnitude;
    let apply = |sign: f64| -> GLEconomy {
        let mut g = *gl;
        for j in 0..2 {
            g.p[j] = gl.p[j] * (sign * t * shock.p_hat[j]).exp();
        }
        for i in 0..3 {
            g.v[i] = gl.v[i] * (sign * t * shock.v_hat[i]).exp();
        }
        g
    };
    let up = apply(1.0).solve_equilibrium_from(base.w, base.x)?;
    let dn = apply(-1.0).solve_equilibrium_from(base.w, base.x)?;
    let mut w_hat = [0.0; 3];
    for i in 0..3 {
        w_hat[i] = (up.w[i].ln() - dn.w[i].ln()) / (2.0 * t);
    }
    let mut x_hat = [0.0; 2];
    for j in 0..2 {
        x_hat[j] = (up.x[j].ln() - dn.x[j].ln()) / (2.0 * t);
    }
    Ok((w_hat, x_hat))
}

/// Central-difference cost-share response coefficients
/// `d log a_ij / d log w_h` at constant output.
///
/// Input coefficients are direct functions of rewards under constant
/// returns, so the compensated derivative is a plain perturbation of the
/// closed-form `a_ij(w)`.
pub fn fd_cost_share_elasticities(
    gl: &GLEconomy,
    snapshot: &EquilibriumSnapshot,
    step: f64,
) -> [[[f64; 3]; 3]; 2] {
    let mut eps = [[[0.0; 3]; 3]; 2];
    for h in 0..3 {
        let mut up = snapshot.w;
        up[h] *= 1.0 + step;
        let mut dn = snapshot.w;
        dn[h] *= 1.0 - step;
        let dlogw = ((1.0 + step) / (1.0 - step)).ln();
        for j in 0..2 {
            for i in 0..3 {
                let a_up = gl.input_coefficient(j, i, &up);
                let a_dn = gl.input_coefficient(j, i, &dn);
                eps[j][i][h] = (a_up.ln() - a_dn.ln()) / dlogw;
            }
        }
    }
    eps
}
