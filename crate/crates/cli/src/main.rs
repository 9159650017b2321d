use std::path::PathBuf;
use std::process::ExitCode;

use abelian_words::{
    abelian_complexity_profile, abelian_power_violation, balance_profile,
    factor_complexity_profile, materialize_with_cap, position_coverage_report,
    right_special_factors, two_period_cover, CentralChecker, CoverReading, ParikhPrefixSums,
    StabilizationPolicy, WordSpec, DEFAULT_CAP,
};
use abelian_words_cli::export::{self, Format};
use abelian_words_cli::repro::{run_reproduce, ReproTarget, RunReport, Status};
use abelian_words_cli::{CliError, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Abelian complexity, balance and abelian powers of infinite words.
#[derive(Parser)]
#[command(name = "abw", version)]
struct Cli {
    /// Largest prefix length any computation may materialize.
    #[arg(long, global = true, env = "ABW_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long, value_parser = parse_spec)]
    spec: WordSpec,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1000)]
    positions: usize,
    #[arg(long, default_value_t = 1000)]
    mmax: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the word.
    Gen {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        /// Prefix length.
        #[arg(long, alias = "len")]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Abelian complexity for n = 1..=nmax.
    Abelian {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Per-letter count spreads for n = 1..=nmax.
    Balance {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Factor complexity, right special factors, or the Tribonacci Central(n) check.
    Factors {
        /// Ignored with --central, which always uses the Tribonacci word.
        #[arg(long, value_parser = parse_spec, required_unless_present = "central")]
        spec: Option<WordSpec>,
        #[arg(long)]
        nmax: usize,
        /// List right special factors of length nmax instead of the profile.
        #[arg(long, conflicts_with = "central")]
        special: bool,
        /// Check Central(n) for n = 1..=nmax; exits 1 if any length fails.
        #[arg(long)]
        central: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Minimal period of an abelian k-power at each position.
    Powers {
        #[command(flatten)]
        args: PowerArgs,
        /// Report only the first abelian k-power (position-major), or null.
        #[arg(long)]
        violation: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Smallest pair of periods whose k-powers reach every position.
    Cover {
        #[command(flatten)]
        args: PowerArgs,
        /// A position counts when it lies inside the power, not only at its start.
        #[arg(long)]
        covering: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run scripted checks against embedded expected values.
    Reproduce {
        /// A target id, or `all`.
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_spec(s: &str) -> std::result::Result<WordSpec, String> {
    s.parse::<WordSpec>().map_err(|e| e.to_string())
}

fn emit<T: Serialize>(
    value: &T,
    output: &Output,
    csv: impl FnOnce(&T) -> Result<String>,
) -> Result<()> {
    let text = match output.format {
        Format::Json => export::to_json(value)?,
        Format::Csv => csv(value)?,
    };
    export::write_output(&text, output.out.as_deref())
}

fn csv_table<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct SpecialRow {
    factor: String,
    extensions: String,
}

#[derive(Serialize)]
struct CentralRow {
    n: usize,
    special_factor: String,
    central_included: bool,
    spectrum_size: usize,
    max_pairwise_norm: u32,
    verified: bool,
    stabilized: bool,
    #[serde(rename = "L_used")]
    l_used: usize,
}

#[derive(Serialize)]
struct ReportRow<'a> {
    target: &'a str,
    status: Status,
    runtime_ms: u128,
}

fn run(cli: Cli) -> Result<i32> {
    let cap = cli.cap;
    let policy = StabilizationPolicy::with_cap(cap);
    match cli.command {
        Command::Gen { spec, nmax, out } => {
            let len = spec.finite_len().map_or(nmax, |f| f.min(nmax));
            let mut text = materialize_with_cap(&spec, len, cap)?.to_text();
            text.push('\n');
            export::write_output(&text, out.as_deref())?;
        }
        Command::Abelian { spec, nmax, output } => {
            let p = abelian_complexity_profile(&spec, nmax, &policy)?;
            emit(&p, &output, |p| export::profile_csv(&p.entries))?;
        }
        Command::Balance { spec, nmax, output } => {
            let b = balance_profile(&spec, nmax, &policy)?;
            emit(&b, &output, export::balance_csv)?;
        }
        Command::Factors {
            spec,
            nmax,
            special,
            central,
            output,
        } => {
            if central {
                let checker = CentralChecker::new(nmax, &policy)?;
                let reports = (1..=nmax)
                    .map(|n| checker.check(n))
                    .collect::<abelian_words::Result<Vec<_>>>()?;
                let ok = reports.iter().all(|r| r.verified());
                emit(&reports, &output, |rs| {
                    csv_table(rs.iter().map(|r| {
                        CentralRow {
                            n: r.n,
                            special_factor: r
                                .special_factor
                                .as_deref()
                                .map(abelian_words::word_to_string)
                                .unwrap_or_default(),
                            central_included: r.central_included(),
                            spectrum_size: r.spectrum.len(),
                            max_pairwise_norm: r.max_pairwise_norm,
                            verified: r.verified(),
                            stabilized: r.stabilized,
                            l_used: r.l_used,
                        }
                    }))
                })?;
                return Ok(if ok { 0 } else { 1 });
            }
            let spec = spec.expect("required unless --central");
            if special {
                let rs = right_special_factors(&spec, nmax, &policy)?;
                emit(&rs, &output, |rs| {
                    csv_table(rs.factors.iter().map(|f| SpecialRow {
                        factor: abelian_words::word_to_string(&f.factor),
                        extensions: abelian_words::word_to_string(&f.extensions),
                    }))
                })?;
            } else {
                let p = factor_complexity_profile(&spec, nmax, &policy)?;
                emit(&p, &output, |p| export::profile_csv(&p.entries))?;
            }
        }
        Command::Powers {
            args,
            violation,
            output,
        } => {
            if violation {
                let len = args.positions + args.k * args.mmax;
                let len = args.spec.finite_len().map_or(len, |f| f.min(len));
                let sums = ParikhPrefixSums::new(&materialize_with_cap(&args.spec, len, cap)?);
                let hit = abelian_power_violation(&sums, args.k, args.mmax)?;
                emit(&hit, &output, |h| csv_table(h.iter()))?;
            } else {
                let r =
                    position_coverage_report(&args.spec, args.k, args.positions, args.mmax, cap)?;
                emit(&r, &output, export::power_report_csv)?;
            }
        }
        Command::Cover {
            args,
            covering,
            out,
        } => {
            let r = position_coverage_report(&args.spec, args.k, args.positions, args.mmax, cap)?;
            let reading = if covering {
                CoverReading::Covering
            } else {
                CoverReading::StartAnchored
            };
            let c = two_period_cover(&r, reading, cap)?;
            export::write_output(&export::to_json(&c)?, out.as_deref())?;
        }
        Command::Reproduce {
            target,
            format,
            out,
        } => {
            let targets: Vec<ReproTarget> = if target == "all" {
                ReproTarget::ALL.to_vec()
            } else {
                vec![target.parse().map_err(CliError::Usage)?]
            };
            let reports: Vec<RunReport> = targets
                .into_iter()
                .map(|t| run_reproduce(t, &policy))
                .collect();
            let text = match format {
                Format::Json => reports
                    .iter()
                    .map(export::to_json)
                    .collect::<Result<String>>()?,
                Format::Csv => csv_table(reports.iter().map(|r| ReportRow {
                    target: &r.target,
                    status: r.status,
                    runtime_ms: r.runtime_ms,
                }))?,
            };
            export::write_output(&text, out.as_deref())?;
            // a failure outranks an inconclusive run
            let code = if reports.iter().any(|r| r.status == Status::Fail) {
                1
            } else {
                reports.iter().map(RunReport::exit_code).max().unwrap_or(0)
            };
            return Ok(code);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("abw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
