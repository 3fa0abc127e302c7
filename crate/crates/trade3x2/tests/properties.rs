//! Property tests over sampled economies: share-algebra equivalences,
//! solver identities, and the subregion-boundary continuation sweep.

use proptest::prelude::*;
use trade3x2::classify::{subregion_of, Subregion};
use trade3x2::hat;
use trade3x2::oracle::{sample_admissible, GLEconomy, SampleConstraints};
use trade3x2::shares::intensity_ranking;
use trade3x2::{Error, FactorId, FACTORS};

fn any_ranking() -> SampleConstraints {
    SampleConstraints {
        canonical_ranking: false,
        ..SampleConstraints::default()
    }
}

/// The sector-1 allocation column orders factors exactly like the
/// distributive intensity ratios, whatever the ranking.
#[test]
fn allocation_ordering_is_equivalent_to_ratio_ordering() {
    let constraints = any_ranking();
    let mut checked = 0;
    for seed in 0..1200u64 {
        let Ok((_, snap)) = sample_admissible(seed, &constraints) else {
            continue;
        };
        let economy = snap.economy;
        let by_ratio = {
            let mut fs = FACTORS;
            fs.sort_by(|a, b| {
                economy
                    .distributive()
                    .intensity_ratio(*b)
                    .partial_cmp(&economy.distributive().intensity_ratio(*a))
                    .unwrap()
            });
            fs
        };
        let by_lambda = {
            let mut fs = FACTORS;
            fs.sort_by(|a, b| {
                economy
                    .allocation()
                    .get(*b, 0)
                    .partial_cmp(&economy.allocation().get(*a, 0))
                    .unwrap()
            });
            fs
        };
        assert_eq!(by_ratio, by_lambda, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 1000, "only {checked} economies sampled");
}

#[test]
fn ranking_report_matches_lambda_ordering() {
    for seed in 0..50u64 {
        let (_, snap) = sample_admissible(seed, &SampleConstraints::default()).unwrap();
        let ranking = intensity_ranking(snap.economy.distributive()).unwrap();
        assert!(ranking.is_canonical());
        assert_eq!(ranking.lambda_ordering(), ranking.ordering);
        assert_eq!(ranking.middle_factor, FactorId::Labor);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Rybczynski rows always sum to one and the weighted reciprocity
    /// identity always holds, over seeded admissible economies.
    #[test]
    fn solver_identities_hold(seed in 0u64..100_000) {
        let (_, snap) = sample_admissible(seed, &any_ranking()).unwrap();
        let r = hat::rybczynski_matrix(&snap.economy).unwrap();
        for sum in r.row_sums() {
            prop_assert!((sum - 1.0).abs() < 1e-8);
        }
        let dev = hat::reciprocity_check(&snap.economy).unwrap();
        prop_assert!(dev < 1e-8, "reciprocity deviation {dev:.2e}");
    }

    /// EWS rows sum to zero and off-diagonal signs are symmetric.
    #[test]
    fn ews_structure_holds(seed in 0u64..100_000) {
        let (_, snap) = sample_admissible(seed, &any_ranking()).unwrap();
        let g = snap.economy.ews();
        for i in 0..3 {
            let row: f64 = g.matrix()[i].iter().sum();
            prop_assert!(row.abs() < 1e-9);
            for h in 0..3 {
                if i != h {
                    prop_assert!(g.matrix()[i][h] * g.matrix()[h][i] >= 0.0);
                }
            }
        }
    }
}

/// The share-change identity agrees with the income share recomputed from
/// the re-solved nonlinear equilibrium, to first order in the step.
#[test]
fn share_change_matches_the_oracle_to_first_order() {
    let shock = trade3x2::ShockVector {
        p_hat: [0.01, -0.002],
        v_hat: [0.003, 0.0, -0.004],
    };
    for seed in 0..20u64 {
        let (gl, snap) = sample_admissible(seed, &SampleConstraints::default()).unwrap();
        let economy = &snap.economy;
        let resp = hat::solve_changes(economy, &shock).unwrap();
        let predicted = trade3x2::classify::share_change(
            economy.income().goods(),
            shock.p_hat,
            resp.x_hat,
        )
        .unwrap()
        .0;

        // Recompute theta_1 at the perturbed equilibrium.
        let t = 1e-6 / 0.01;
        let mut perturbed = gl;
        for j in 0..2 {
            perturbed.p[j] = gl.p[j] * (t * shock.p_hat[j]).exp();
        }
        for i in 0..3 {
            perturbed.v[i] = gl.v[i] * (t * shock.v_hat[i]).exp();
        }
        let moved = perturbed.solve_equilibrium_from(snap.w, snap.x).unwrap();
        let theta1 = |s: &trade3x2::oracle::EquilibriumSnapshot, g: &GLEconomy| {
            g.p[0] * s.x[0] / s.income
        };
        let observed = (theta1(&moved, &perturbed) / theta1(&snap, &gl) - 1.0) / t;
        assert!(
            (observed - predicted).abs() <= 1e-4 * predicted.abs().max(1e-4),
            "seed {seed}: predicted {predicted:.6e}, observed {observed:.6e}"
        );
    }
}

/// Linear interpolation between two generalized-Leontief economies.
fn lerp(a: &GLEconomy, b: &GLEconomy, t: f64) -> GLEconomy {
    let mut m = *a;
    for j in 0..2 {
        for i in 0..3 {
            for h in 0..3 {
                m.b[j][i][h] = (1.0 - t) * a.b[j][i][h] + t * b.b[j][i][h];
            }
        }
    }
    for j in 0..2 {
        m.p[j] = (1.0 - t) * a.p[j] + t * b.p[j];
    }
    for i in 0..3 {
        m.v[i] = (1.0 - t) * a.v[i] + t * b.v[i];
    }
    m
}

/// Labor-column output elasticity for good 1 along the interpolation path.
fn labor_response(gl: &GLEconomy) -> Option<f64> {
    let snap = gl.solve_equilibrium().ok()?;
    let economy = snap.economy;
    if !economy.ews().quadrant_iv() {
        return None;
    }
    intensity_ranking(economy.distributive())
        .ok()
        .filter(|r| r.is_canonical())?;
    let r = hat::rybczynski_matrix(&economy).ok()?;
    Some(r.get(0, FactorId::Labor))
}

/// Bisect the labor-response zero along a valid interpolation path;
/// `None` when any evaluated point leaves the valid region.
fn bisect_crossing(p2: &GLEconomy, p1: &GLEconomy) -> Option<(f64, f64)> {
    let f0 = labor_response(p2)?;
    let f1 = labor_response(p1)?;
    if !(f0 > 0.0 && f1 < 0.0) {
        return None;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut lo_value = f0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = labor_response(&lerp(p2, p1, mid))?;
        if v.signum() == lo_value.signum() {
            lo = mid;
            lo_value = v;
        } else {
            hi = mid;
        }
    }
    Some((0.5 * (lo + hi), hi))
}

/// Sweep from a P2 economy towards a P1 economy: the good-1 labor
/// elasticity crosses zero, the classifier reports the boundary inside
/// the zero band, and beyond it the pattern flips to P1.
#[test]
fn continuation_sweep_crosses_the_subregion_boundary() {
    let constraints = SampleConstraints::quadrant_iv();
    let mut p2s = Vec::new();
    let mut p1s = Vec::new();
    for seed in 0..600u64 {
        let Ok((gl, snap)) = sample_admissible(seed, &constraints) else {
            continue;
        };
        match subregion_of(&snap.economy) {
            Ok(Subregion::P2) if p2s.len() < 8 => p2s.push(gl),
            Ok(Subregion::P1) if p1s.len() < 8 => p1s.push(gl),
            _ => {}
        }
        if p2s.len() >= 8 && p1s.len() >= 8 {
            break;
        }
    }
    assert!(!p2s.is_empty() && !p1s.is_empty());

    // Some straight-line paths leave the valid region; take the first
    // endpoint pair whose whole bisection bracket stays inside it.
    for p2 in &p2s {
        for p1 in &p1s {
            let Some((t_star, hi)) = bisect_crossing(p2, p1) else {
                continue;
            };
            let at_boundary = lerp(p2, p1, t_star);
            let Some(response) = labor_response(&at_boundary) else {
                continue;
            };
            assert!(
                response.abs() <= 1e-12,
                "bisection did not reach the zero band: {response:.3e}"
            );
            let economy = at_boundary.solve_equilibrium().unwrap().economy;
            assert!(matches!(
                subregion_of(&economy).unwrap_err(),
                Error::Boundary(_)
            ));

            // Step past the crossing on the P1 side.
            let beyond = lerp(p2, p1, (hi + 1e-4).min(1.0));
            let economy = beyond.solve_equilibrium().unwrap().economy;
            assert_eq!(subregion_of(&economy).unwrap(), Subregion::P1);
            return;
        }
    }
    panic!("no endpoint pair admitted a fully valid sweep");
}
