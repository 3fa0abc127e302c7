//! Text rendering for verdicts and ad-hoc economy analyses.

use crate::case_study::{describe_cell, Verdict};
use serde::Serialize;
use std::fmt::Write as _;
use trade3x2::classify::{strip_verdict, subregion_of, StripVerdict, Subregion};
use trade3x2::hat::{self, RybczynskiMatrix};
use trade3x2::{Complementarity, Economy, Error, FactorId, Sign, FACTORS};

pub fn render_verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "case study {}-{}: factor endowments and commodity outputs",
        v.period.0, v.period.1
    );
    let _ = writeln!(out, "\nfigures:");
    for f in &v.figures {
        let _ = writeln!(
            out,
            "  {:<55} {:>12.4} {:<16} [{}; {}]",
            f.name, f.value, f.unit, f.provenance, f.rule
        );
    }
    let _ = writeln!(out, "\npremises:");
    for p in &v.premises {
        let _ = writeln!(
            out,
            "  {} {:<45} {}",
            if p.passed { "PASS" } else { "FAIL" },
            p.name,
            p.detail
        );
    }
    let _ = writeln!(
        out,
        "\nintensity ranking: {} (middle factor {})",
        v.ranking.join(" > "),
        v.middle_factor
    );
    let _ = writeln!(
        out,
        "land coefficient signs: a_T1^ = {}, a_T2^ = {}, aggregate a_T0' = {}",
        v.a_t1_sign, v.a_t2_sign, v.a_t0_sign
    );
    let _ = writeln!(
        out,
        "admissible aggregate triples: {}",
        v.admissible_triples
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    match v.triple {
        Some(t) => {
            let _ = writeln!(out, "pinned triple: ({}, {}, {})", t[0], t[1], t[2]);
        }
        None => {
            let _ = writeln!(out, "pinned triple: none");
        }
    }
    if let Some(est) = &v.segment {
        let _ = writeln!(
            out,
            "segment endpoints: A = ({}, {}), B = ({}, {}){}",
            est.sign_a.0,
            est.sign_a.1,
            est.sign_b.0,
            est.sign_b.1,
            if est.point_a.is_none() {
                "  (sign-level: magnitudes unavailable)"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(
        out,
        "quadrant IV (extreme factors economy-wide complements): {}",
        if v.quadrant_iv_established {
            "established"
        } else {
            "not established"
        }
    );
    let _ = writeln!(
        out,
        "candidate subregions: {{{}}}",
        v.subregions
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(out, "\nRybczynski sign matrix (rows: goods 1, 2; columns: T, K, L):");
    for (j, row) in v.sign_matrix.iter().enumerate() {
        let cells = row
            .iter()
            .map(|c| format!("{} ({})", c.sign, describe_cell(c)))
            .collect::<Vec<_>>()
            .join("   ");
        let _ = writeln!(out, "  good {}:  {}", j + 1, cells);
    }
    let _ = writeln!(out, "\nrelative output effects (X_1^ - X_2^ per unit endowment):");
    for f in FACTORS {
        let s = v.relative_output[f.index()];
        let _ = writeln!(
            out,
            "  {:<8} {}",
            f.name(),
            match s {
                Sign::Positive => "positive",
                Sign::Negative => "negative",
                Sign::Zero => "indeterminate",
            }
        );
    }
    let _ = writeln!(
        out,
        "\nmigration: net arrivals {:.1}k were {:.1}% of 1920-1927 population growth; \
         {:.1}k were {:.1}% of 1900-1930 growth",
        v.migration_1920_1927_net_thousands,
        v.migration_1920_1927_share_percent,
        v.migration_1900_1930_net_thousands,
        v.migration_1900_1930_share_percent
    );
    let _ = writeln!(out, "\nnotes:");
    for n in &v.notes {
        let _ = writeln!(out, "  - {n}");
    }
    out
}

/// Ad-hoc analysis of a single economy document.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub g_matrix: [[f64; 3]; 3],
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub ratio_vector: Option<(f64, f64)>,
    pub complementarity: Vec<(String, String)>,
    pub quadrant_iv: bool,
    pub rybczynski: RybczynskiMatrix,
    pub sign_pattern: [[Sign; 3]; 2],
    pub subregion: Option<Subregion>,
    pub subregion_note: Option<String>,
    pub strip: Option<StripVerdict>,
    pub relative_output: [(f64, Sign); 3],
    pub reciprocity_deviation: f64,
    pub condition_number: f64,
}

pub fn analyze_economy(economy: &Economy) -> Result<AnalysisReport, Error> {
    let g = economy.ews();
    let ratio = g.ratio_vector().ok();
    let r = hat::rybczynski_matrix(economy)?;
    let (subregion, subregion_note) = match subregion_of(economy) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut complementarity = Vec::new();
    for (a, b) in [
        (FactorId::Land, FactorId::Capital),
        (FactorId::Land, FactorId::Labor),
        (FactorId::Capital, FactorId::Labor),
    ] {
        let label = match g.complementarity(a, b) {
            Complementarity::Substitutes => "economy-wide substitutes",
            Complementarity::Complements => "economy-wide complements",
            Complementarity::Indeterminate => "indeterminate",
        };
        complementarity.push((format!("{}-{}", a.symbol(), b.symbol()), label.to_string()));
    }
    Ok(AnalysisReport {
        g_matrix: *g.matrix(),
        s: g.s(),
        t: g.t(),
        u: g.u(),
        ratio_vector: ratio.map(|r| (r.s_prime, r.u_prime)),
        complementarity,
        quadrant_iv: g.quadrant_iv(),
        rybczynski: r,
        sign_pattern: r.sign_pattern(),
        subregion,
        subregion_note,
        strip: strip_verdict(economy).ok(),
        relative_output: r.relative_output_effects(),
        reciprocity_deviation: hat::reciprocity_check(economy)?,
        condition_number: hat::system_condition(economy)?,
    })
}

pub fn render_analysis_text(a: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "economy-wide substitution matrix g[i][h] (rows/cols T, K, L):");
    for row in &a.g_matrix {
        let _ = writeln!(out, "  {:>12.6} {:>12.6} {:>12.6}", row[0], row[1], row[2]);
    }
    let _ = writeln!(out, "aggregates: S = g_LK = {:.6}, T = g_LT = {:.6}, U = g_KT = {:.6}", a.s, a.t, a.u);
    match a.ratio_vector {
        Some((s, u)) => {
            let _ = writeln!(out, "EWS ratio vector: (S', U') = ({s:.6}, {u:.6})");
        }
        None => {
            let _ = writeln!(out, "EWS ratio vector: undefined (g_LT inside the zero band)");
        }
    }
    for (pair, label) in &a.complementarity {
        let _ = writeln!(out, "  {pair}: {label}");
    }
    let _ = writeln!(
        out,
        "quadrant IV (extreme factors complements): {}",
        if a.quadrant_iv { "yes" } else { "no" }
    );
    let _ = writeln!(out, "\nRybczynski matrix (rows: goods; columns: T, K, L):");
    for row in a.rybczynski.rows() {
        let _ = writeln!(out, "  {:>10.6} {:>10.6} {:>10.6}", row[0], row[1], row[2]);
    }
    let signs = a
        .sign_pattern
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| s.symbol())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ");
    let _ = writeln!(out, "sign pattern: [{signs}]");
    match (&a.subregion, &a.subregion_note) {
        (Some(s), _) => {
            let _ = writeln!(out, "subregion: {s}");
        }
        (None, Some(note)) => {
            let _ = writeln!(out, "subregion: none ({note})");
        }
        _ => {}
    }
    if let Some(strip) = &a.strip {
        let _ = writeln!(
            out,
            "strip cross-check: S' = {:.4} against thresholds ({:.4}, {:.4}) -> {:?}",
            strip.s_prime, strip.lower, strip.upper, strip.region
        );
    }
    let _ = writeln!(out, "\nrelative output effects:");
    for f in FACTORS {
        let (value, sign) = a.relative_output[f.index()];
        let _ = writeln!(out, "  {:<8} {value:+.6} ({sign})", f.name());
    }
    let _ = writeln!(
        out,
        "\nreciprocity deviation: {:.3e}; system condition number: {:.3e}{}",
        a.reciprocity_deviation,
        a.condition_number,
        if a.condition_number > 1e8 {
            "  (ill-conditioned)"
        } else {
            ""
        }
    );
    out
}
