//! Serialization of analysis results. Field order is fixed by the struct
//! definitions, so identical results always produce identical bytes.

use std::io::Write;
use std::path::Path;

use abelian_words::{BalanceProfile, PositionEntry, PositionPowerReport, ProfileEntry};
use serde::{Deserialize, Serialize};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_from_rows<T: Serialize>(
    header: Option<&[String]>,
    rows: impl IntoIterator<Item = T>,
) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `n,value,stabilized,L_used`
pub fn profile_csv(entries: &[ProfileEntry]) -> Result<String> {
    csv_from_rows(None, entries)
}

pub fn profile_from_csv(text: &str) -> Result<Vec<ProfileEntry>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// `n,spread_0,…,spread_{k-1},stabilized,L_used`
pub fn balance_csv(profile: &BalanceProfile) -> Result<String> {
    let k = profile.entries.first().map_or(0, |e| e.spreads.len());
    let mut header = vec!["n".to_string()];
    header.extend((0..k).map(|a| format!("spread_{a}")));
    header.extend(["stabilized".to_string(), "L_used".to_string()]);
    let rows = profile.entries.iter().map(|e| {
        let mut row = vec![e.n.to_string()];
        row.extend(e.spreads.iter().map(u32::to_string));
        row.extend([e.stabilized.to_string(), e.l_used.to_string()]);
        row
    });
    csv_from_rows(Some(&header), rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRow {
    pub pos: usize,
    pub min_period: Option<usize>,
    pub k: usize,
    pub truncated: bool,
}

/// `pos,min_period,k,truncated`; an empty `min_period` means none within the bound.
pub fn power_report_csv(report: &PositionPowerReport) -> Result<String> {
    csv_from_rows(
        None,
        report.entries.iter().map(|e| PowerRow {
            pos: e.pos,
            min_period: e.min_period,
            k: report.k,
            truncated: e.truncated,
        }),
    )
}

pub fn power_rows_from_csv(text: &str) -> Result<Vec<PowerRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

impl From<PowerRow> for PositionEntry {
    fn from(r: PowerRow) -> Self {
        PositionEntry {
            pos: r.pos,
            min_period: r.min_period,
            truncated: r.truncated,
        }
    }
}

/// Writes to `out`, or to stdout when absent.
pub fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use abelian_words::{
        abelian_complexity_profile, balance_profile, position_coverage_report, two_period_cover,
        ComplexityProfile, CoverReading, CoverResult, StabilizationPolicy, WordSpec, DEFAULT_CAP,
    };

    #[test]
    fn profile_round_trips() {
        let p = abelian_complexity_profile(
            &WordSpec::tribonacci(),
            12,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        let csv = profile_csv(&p.entries).unwrap();
        assert!(csv.starts_with("n,value,stabilized,L_used\n1,3,true,"));
        assert_eq!(profile_from_csv(&csv).unwrap(), p.entries);
        let json = to_json(&p).unwrap();
        assert!(json.starts_with(
            r#"{"spec":"fix(tau,0)","entries":[{"n":1,"value":3,"stabilized":true,"L_used":"#
        ));
        let back: ComplexityProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn power_report_round_trips() {
        let r = position_coverage_report(&WordSpec::fibonacci(), 2, 6, 2, DEFAULT_CAP).unwrap();
        let csv = power_report_csv(&r).unwrap();
        assert!(
            csv.starts_with("pos,min_period,k,truncated\n0,,2,false\n"),
            "{csv}"
        );
        let entries: Vec<PositionEntry> = power_rows_from_csv(&csv)
            .unwrap()
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(entries, r.entries);
        let back: PositionPowerReport = serde_json::from_str(&to_json(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn cover_json_schema() {
        let r = position_coverage_report(&WordSpec::fibonacci(), 2, 5, 1, DEFAULT_CAP).unwrap();
        let c = two_period_cover(&r, CoverReading::StartAnchored, DEFAULT_CAP).unwrap();
        let json = to_json(&c).unwrap();
        assert_eq!(json, "{\"l1\":null,\"l2\":null,\"uncovered\":[0,1,3,4]}\n");
        assert_eq!(serde_json::from_str::<CoverResult>(&json).unwrap(), c);
    }

    #[test]
    fn balance_csv_columns() {
        let b =
            balance_profile(&WordSpec::tribonacci(), 3, &StabilizationPolicy::default()).unwrap();
        let csv = balance_csv(&b).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("n,spread_0,spread_1,spread_2,stabilized,L_used")
        );
        assert!(lines.next().unwrap().starts_with("1,1,1,1,true,"));
    }
}
