//! The bundled Thailand dataset end to end: deflated price changes, yield
//! trends, allocation estimates, and migration aggregates.

use std::path::PathBuf;
use trade3x2::histdata::{
    compute_factor_price_changes, lambda_estimates, yield_trend_sign, Dataset, TrendMethod,
};
use trade3x2::Sign;

fn dataset() -> Dataset {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/thailand");
    Dataset::load(&dir).expect("bundled dataset loads")
}

#[test]
fn deflated_changes_match_published_rates() {
    let d = dataset();
    let c = compute_factor_price_changes(
        &d.wage,
        &d.rice_price,
        &d.land_price,
        &d.shirting_price,
        (1920, 1927),
    )
    .unwrap();
    assert!((c.p.percent - 176.6).abs() < 0.1, "P = {}", c.p.percent);
    assert!((c.x.percent - 22.1).abs() < 0.1, "X = {}", c.x.percent);
    assert!((c.z.percent + 12.5).abs() < 0.1, "Z = {}", c.z.percent);
    assert!((c.z_plus_p() - 164.1).abs() < 0.2, "Z+P = {}", c.z_plus_p());
}

#[test]
fn rice_price_series_spans_the_documented_range() {
    let d = dataset();
    let rows = d.rice_price.rows();
    assert_eq!(rows.first().unwrap().0.start, 1864);
    assert_eq!(rows.last().unwrap().0.start, 1941);
}

#[test]
fn yield_trends_imply_the_input_coefficient_signs() {
    let d = dataset();
    let rice_2027 = yield_trend_sign(
        &d.rice_production,
        &d.rice_area,
        (1920, 1927),
        TrendMethod::MovingAverage3,
    )
    .unwrap();
    assert_eq!(rice_2027.trend, Sign::Negative);
    assert_eq!(rice_2027.implied_a_sign, Sign::Positive);

    let cotton_2027 = yield_trend_sign(
        &d.cotton_production,
        &d.cotton_area,
        (1920, 1927),
        TrendMethod::MovingAverage3,
    )
    .unwrap();
    assert_eq!(cotton_2027.implied_a_sign, Sign::Positive);

    let cotton_2736 = yield_trend_sign(
        &d.cotton_production,
        &d.cotton_area,
        (1927, 1936),
        TrendMethod::MovingAverage3,
    )
    .unwrap();
    assert_eq!(cotton_2736.trend, Sign::Positive);
    assert_eq!(cotton_2736.implied_a_sign, Sign::Negative);
}

#[test]
fn allocation_estimates_match_the_printed_tables() {
    let d = dataset();
    let l = lambda_estimates(&d.crops, &d.labor).unwrap();
    assert!((l.lambda_t1 - 0.8951).abs() < 1e-3, "{}", l.lambda_t1);
    assert!((l.lambda_l1 - 0.8305).abs() < 1e-3, "{}", l.lambda_l1);
}

#[test]
fn all_crops_exportable_gives_unit_share() {
    // The simplification historically used before the crop table existed.
    let dir = std::env::temp_dir().join("trade3x2_crops_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("crops.tsv");
    std::fs::write(
        &path,
        "# name: x\n# provenance: DERIVED\nrice\t100\tE\npeas\t50\tE\n",
    )
    .unwrap();
    let crops = trade3x2::histdata::CropTable::load(&path).unwrap();
    let d = dataset();
    let l = lambda_estimates(&crops, &d.labor).unwrap();
    assert_eq!(l.lambda_t1, 1.0);
}

#[test]
fn unclassified_crop_is_rejected() {
    let dir = std::env::temp_dir().join("trade3x2_crops_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_crops.tsv");
    std::fs::write(
        &path,
        "# name: x\n# provenance: DERIVED\nrice\t100\tE\nmystery\t50\tX\n",
    )
    .unwrap();
    assert!(trade3x2::histdata::CropTable::load(&path).is_err());
}

#[test]
fn migration_totals_match_the_printed_rows() {
    let d = dataset();
    let totals = d.migration.b1_totals();
    assert_eq!(totals.skinner_arrivals, 1_448_700.0);
    assert_eq!(totals.skinner_departures, 940_700.0);
    assert_eq!(totals.skinner_net, 508_000.0);
    assert_eq!(totals.syb_net, 437_738.0);
    assert_eq!(totals.net_difference, 70_262.0);
}

#[test]
fn migration_period_ratios() {
    let d = dataset();
    let m1920 = d.migration.period_analysis(1920, 1927).unwrap();
    assert!((m1920.net - 236.2).abs() < 0.1, "net {}", m1920.net);
    assert_eq!(m1920.growth, 1555.0);
    assert!(
        (m1920.net_share_percent - 15.2).abs() < 0.1,
        "share {}",
        m1920.net_share_percent
    );

    let m1900 = d.migration.period_analysis(1900, 1930).unwrap();
    assert!((m1900.net - 740.0).abs() < 0.1, "net {}", m1900.net);
    assert_eq!(m1900.growth, 5713.0);
    assert!(
        (m1900.net_share_percent - 13.0).abs() < 0.1,
        "share {}",
        m1900.net_share_percent
    );
}

#[test]
fn long_series_period_subtotals_match_the_printed_column() {
    let d = dataset();
    let sum_net = |a: i32, b: i32| -> f64 {
        d.migration
            .b3_net
            .rows()
            .iter()
            .filter(|(l, _)| l.start >= a && l.start < b)
            .map(|(_, v)| v)
            .sum()
    };
    assert!((sum_net(1900, 1910) - 188.5).abs() < 0.1);
    assert!((sum_net(1910, 1920) - 143.4).abs() < 0.1);
    assert!((sum_net(1920, 1927) - 236.2).abs() < 0.1);
    assert!((sum_net(1920, 1930) - 408.1).abs() < 0.1);
    assert!((sum_net(1930, 1940) - 124.1).abs() < 0.1);
}

#[test]
fn unresolvable_period_is_an_error() {
    let d = dataset();
    assert!(d.migration.period_analysis(1850, 1900).is_err());
    assert!(d.migration.period_analysis(1927, 1920).is_err());
}
