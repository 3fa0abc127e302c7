//! Command-line surface: the historical case study, ad-hoc economy
//! analysis, oracle validation batches, pipeline numbers, and plot-ready
//! exports.
//!
//! Exit codes: 0 success, 2 premise failure, 3 data error, 4 validation
//! failure.

mod case_study;
mod config;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use config::CaseStudyConfig;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use trade3x2::batch::{run_validation, BatchConstraint};
use trade3x2::histdata::{
    compute_factor_price_changes, lambda_estimates, yield_trend_sign, Dataset, TrendMethod,
};
use trade3x2::{io as model_io, Error};

#[derive(Parser)]
#[command(
    name = "trade3x2",
    about = "Comparative statics for a three-factor two-good open economy",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bundled 1920-1927 case study end to end.
    CaseStudy {
        /// TOML configuration; defaults are the bundled estimates.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Dataset directory (overrides the TRADE3X2_DATA_DIR environment
        /// variable and the config file).
        #[arg(long)]
        dataset_dir: Option<PathBuf>,
        /// Period as START:END calendar years.
        #[arg(long)]
        period: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze a single economy document: EWS report and sign matrices.
    Analyze {
        /// Economy file ([distributive], [income], [allen.*] sections).
        economy: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded validation batch against the nonlinear oracle.
    Validate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of sampled economies (at least 1).
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Population constraint: none, quadrant-iv, triple-c, refinement,
        /// full-chain, near-specific.
        #[arg(long, default_value = "quadrant-iv")]
        constraint: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the data-pipeline numbers only (no model inference).
    Data {
        #[arg(long)]
        dataset_dir: Option<PathBuf>,
        #[arg(long)]
        period: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write plot-ready series (deflated prices, terms of trade, yields).
    ExportPlot {
        #[arg(long)]
        dataset_dir: Option<PathBuf>,
        /// Output directory for the exported series.
        #[arg(long, default_value = "plots")]
        out: PathBuf,
    },
}

fn parse_period(s: &str) -> Result<(i32, i32), Error> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::Data(format!("period '{s}' must be START:END")))?;
    let start = a
        .trim()
        .parse()
        .map_err(|_| Error::Data(format!("bad period start '{a}'")))?;
    let end = b
        .trim()
        .parse()
        .map_err(|_| Error::Data(format!("bad period end '{b}'")))?;
    if end <= start {
        return Err(Error::Data(format!("period end {end} must exceed start {start}")));
    }
    Ok((start, end))
}

fn emit(text: String, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Data(format!("serialization failed: {e}")))
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::PremiseFailed(_)
        | Error::DegenerateIntensity
        | Error::IndeterminateRanking(_)
        | Error::NotStrongRybczynski(_)
        | Error::EmptySubregionSet => 2,
        Error::Data(_) | Error::Io(_) | Error::InvalidShares(_) | Error::InvalidAllen(_) => 3,
        Error::SamplerExhausted { .. } => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::CaseStudy {
            config,
            dataset_dir,
            period,
            format,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => CaseStudyConfig::load(&path)
                    .map_err(|e| Error::Data(e.to_string()))?,
                None => CaseStudyConfig::default(),
            };
            if let Some(p) = period {
                let (start, end) = parse_period(&p)?;
                cfg.period.start = start;
                cfg.period.end = end;
            }
            let dir = cfg.resolve_dataset_dir(dataset_dir.as_deref());
            let verdict = case_study::run_case_study(&cfg, &dir)?;
            let text = match format {
                Format::Text => report::render_verdict_text(&verdict),
                Format::Structured => to_json(&verdict)?,
            };
            emit(text, out.as_deref())?;
            Ok(0)
        }
        Command::Analyze { economy, format, out } => {
            let economy = model_io::load_economy(&economy)?;
            let analysis = report::analyze_economy(&economy)?;
            let text = match format {
                Format::Text => report::render_analysis_text(&analysis),
                Format::Structured => to_json(&analysis)?,
            };
            emit(text, out.as_deref())?;
            Ok(0)
        }
        Command::Validate {
            seed,
            n,
            constraint,
            format,
            out,
        } => {
            let kind = BatchConstraint::parse(&constraint).ok_or_else(|| {
                Error::Data(format!("unknown constraint '{constraint}'"))
            })?;
            let summary = run_validation(seed, n as usize, kind)?;
            let text = match format {
                Format::Text => summary.render_text(),
                Format::Structured => to_json(&summary)?,
            };
            emit(text, out.as_deref())?;
            Ok(if summary.passed() { 0 } else { 4 })
        }
        Command::Data {
            dataset_dir,
            period,
            format,
            out,
        } => {
            let cfg = CaseStudyConfig::default();
            let dir = cfg.resolve_dataset_dir(dataset_dir.as_deref());
            let span = match period {
                Some(p) => parse_period(&p)?,
                None => (cfg.period.start, cfg.period.end),
            };
            let text = data_report(&dir, span, format)?;
            emit(text, out.as_deref())?;
            Ok(0)
        }
        Command::ExportPlot { dataset_dir, out } => {
            let cfg = CaseStudyConfig::default();
            let dir = cfg.resolve_dataset_dir(dataset_dir.as_deref());
            export_plots(&dir, &out)?;
            println!("wrote plot series to {}", out.display());
            Ok(0)
        }
    }
}

#[derive(serde::Serialize)]
struct DataReport {
    period: (i32, i32),
    p_percent: f64,
    x_percent: f64,
    z_percent: f64,
    z_plus_p_percent: f64,
    rice_yield_start: f64,
    rice_yield_end: f64,
    rice_a_sign: String,
    cotton_yield_start: f64,
    cotton_yield_end: f64,
    cotton_a_sign: String,
    lambda_t1: f64,
    lambda_l1: f64,
    b1_skinner_net: f64,
    b1_syb_net: f64,
    b1_net_difference: f64,
    migration_1920_1927_net: f64,
    migration_1920_1927_share_percent: f64,
    migration_1900_1930_net: f64,
    migration_1900_1930_share_percent: f64,
}

fn data_report(dir: &Path, period: (i32, i32), format: Format) -> Result<String, Error> {
    let d = Dataset::load(dir)?;
    let changes =
        compute_factor_price_changes(&d.wage, &d.rice_price, &d.land_price, &d.shirting_price, period)?;
    let rice = yield_trend_sign(&d.rice_production, &d.rice_area, period, TrendMethod::MovingAverage3)?;
    let cotton =
        yield_trend_sign(&d.cotton_production, &d.cotton_area, period, TrendMethod::MovingAverage3)?;
    let lambda = lambda_estimates(&d.crops, &d.labor)?;
    let totals = d.migration.b1_totals();
    let m1920 = d.migration.period_analysis(1920, 1927)?;
    let m1900 = d.migration.period_analysis(1900, 1930)?;
    let r = DataReport {
        period,
        p_percent: changes.p.percent,
        x_percent: changes.x.percent,
        z_percent: changes.z.percent,
        z_plus_p_percent: changes.z_plus_p(),
        rice_yield_start: rice.start_yield,
        rice_yield_end: rice.end_yield,
        rice_a_sign: rice.implied_a_sign.symbol().into(),
        cotton_yield_start: cotton.start_yield,
        cotton_yield_end: cotton.end_yield,
        cotton_a_sign: cotton.implied_a_sign.symbol().into(),
        lambda_t1: lambda.lambda_t1,
        lambda_l1: lambda.lambda_l1,
        b1_skinner_net: totals.skinner_net,
        b1_syb_net: totals.syb_net,
        b1_net_difference: totals.net_difference,
        migration_1920_1927_net: m1920.net,
        migration_1920_1927_share_percent: m1920.net_share_percent,
        migration_1900_1930_net: m1900.net,
        migration_1900_1930_share_percent: m1900.net_share_percent,
    };
    match format {
        Format::Structured => to_json(&r),
        Format::Text => {
            use std::fmt::Write as _;
            let mut out = String::new();
            let _ = writeln!(out, "pipeline numbers for {}-{}:", period.0, period.1);
            let _ = writeln!(out, "  P (terms of trade)        {:+8.1}%", r.p_percent);
            let _ = writeln!(out, "  X (land reward in rice)   {:+8.1}%", r.x_percent);
            let _ = writeln!(out, "  Z (labor reward in rice)  {:+8.1}%", r.z_percent);
            let _ = writeln!(out, "  Z + P                     {:+8.1}%", r.z_plus_p_percent);
            let _ = writeln!(
                out,
                "  rice yield (MA)           {:8.2} -> {:8.2} kg/rai, land coefficient sign {}",
                r.rice_yield_start, r.rice_yield_end, r.rice_a_sign
            );
            let _ = writeln!(
                out,
                "  cotton yield (MA)         {:8.2} -> {:8.2} kg/rai, land coefficient sign {}",
                r.cotton_yield_start, r.cotton_yield_end, r.cotton_a_sign
            );
            let _ = writeln!(out, "  lambda_T1                 {:8.4}", r.lambda_t1);
            let _ = writeln!(out, "  lambda_L1                 {:8.4}", r.lambda_l1);
            let _ = writeln!(
                out,
                "  net arrivals totals       Skinner {:.0}, SYB {:.0}, difference {:.0}",
                r.b1_skinner_net, r.b1_syb_net, r.b1_net_difference
            );
            let _ = writeln!(
                out,
                "  1920-1927 net arrivals    {:.1}k = {:.1}% of population growth",
                r.migration_1920_1927_net, r.migration_1920_1927_share_percent
            );
            let _ = writeln!(
                out,
                "  1900-1930 net arrivals    {:.1}k = {:.1}% of population growth",
                r.migration_1900_1930_net, r.migration_1900_1930_share_percent
            );
            Ok(out)
        }
    }
}

fn export_plots(dir: &Path, out: &Path) -> Result<(), Error> {
    let d = Dataset::load(dir)?;
    std::fs::create_dir_all(out)?;
    let write_series = |name: &str, table: &trade3x2::histdata::SeriesTable| -> Result<(), Error> {
        let mut text = format!("# name: {}\n# unit: {}\n", table.name, table.unit);
        for (label, value) in table.rows() {
            text.push_str(&format!("{label}\t{value}\n"));
        }
        std::fs::write(out.join(name), text)?;
        Ok(())
    };
    let wage_in_rice = d.wage.ratio(&d.rice_price, "rice wage", "picul/day")?;
    let land_in_rice = d
        .land_price
        .ratio(&d.rice_price, "land price in rice", "picul/rai")?;
    let tot = d
        .rice_price
        .ratio(&d.shirting_price, "terms of trade", "kg shirting/picul")?;
    write_series("rice_wage.tsv", &wage_in_rice)?;
    write_series("land_price_in_rice.tsv", &land_in_rice)?;
    write_series("terms_of_trade.tsv", &tot)?;
    for (name, production, area) in [
        ("rice_yield.tsv", &d.rice_production, &d.rice_area),
        ("cotton_yield.tsv", &d.cotton_production, &d.cotton_area),
    ] {
        let kg_rows: Vec<_> = production
            .rows()
            .iter()
            .map(|(l, v)| (l.clone(), v * trade3x2::histdata::PICUL_KG))
            .collect();
        let kg = trade3x2::histdata::SeriesTable::new(
            &production.name,
            "kg",
            production.provenance,
            kg_rows,
        )?;
        let yields = kg.ratio(area, "yield", "kg/rai")?;
        write_series(name, &yields)?;
        // Moving-average overlay where the window exists.
        let mut ma_rows = Vec::new();
        for (label, _) in yields.rows() {
            if let Ok(v) = yields.ma3(label.start) {
                ma_rows.push((label.clone(), v));
            }
        }
        if !ma_rows.is_empty() {
            let ma = trade3x2::histdata::SeriesTable::new(
                &format!("{} 3-year moving average", yields.name),
                "kg/rai",
                yields.provenance,
                ma_rows,
            )?;
            write_series(&name.replace(".tsv", "_ma3.tsv"), &ma)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
