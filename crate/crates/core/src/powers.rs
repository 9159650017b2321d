//! Abelian powers: blocks `U_1 ⋯ U_k` of a common length `m` (the abelian period)
//! with pairwise equal Parikh vectors.
//!
//! Period searches are always bounded by an explicit `m_max`; "not found" means
//! not found within that bound on the materialized prefix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{spec_text, ParikhPrefixSums};
use crate::wordgen::{materialize_with_cap, Morphism, WordSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerHit {
    pub position: usize,
    pub period: usize,
    pub exponent: usize,
}

/// Longest run of abelian-equivalent blocks at a fixed position and period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerRun {
    pub exponent: usize,
    /// The next block would run past the end of the buffer.
    pub truncated: bool,
}

fn out_of_range(what: &'static str, value: usize, bound: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value,
        bound: bound.into(),
    }
}

fn check_exponent(k: usize) -> Result<()> {
    if k < 2 {
        return Err(out_of_range("exponent", k, ">= 2"));
    }
    Ok(())
}

fn check_period_bound(m_max: usize) -> Result<()> {
    if m_max == 0 {
        return Err(out_of_range("m_max", 0, ">= 1"));
    }
    Ok(())
}

/// Whether an abelian `k`-power of period `m` starts at `pos` and fits in the buffer.
#[inline]
pub fn is_abelian_power(sums: &ParikhPrefixSums, pos: usize, m: usize, k: usize) -> bool {
    m >= 1
        && pos + k * m <= sums.len()
        && (1..k).all(|i| sums.blocks_equivalent(pos, pos + i * m, m))
}

pub fn max_abelian_power_at(sums: &ParikhPrefixSums, pos: usize, m: usize) -> Result<PowerRun> {
    if m == 0 {
        return Err(out_of_range("period", 0, ">= 1"));
    }
    if pos + m > sums.len() {
        return Err(out_of_range(
            "position + period",
            pos + m,
            format!("<= {}", sums.len()),
        ));
    }
    let mut k = 1;
    while pos + (k + 1) * m <= sums.len() && sums.blocks_equivalent(pos, pos + k * m, m) {
        k += 1;
    }
    Ok(PowerRun {
        exponent: k,
        truncated: pos + (k + 1) * m > sums.len(),
    })
}

/// Smallest `m <= m_max` such that an abelian `k`-power of period `m` starts at `pos`.
pub fn min_period_for_k(
    sums: &ParikhPrefixSums,
    pos: usize,
    k: usize,
    m_max: usize,
) -> Result<Option<usize>> {
    check_exponent(k)?;
    check_period_bound(m_max)?;
    if pos >= sums.len() {
        return Err(out_of_range("position", pos, format!("< {}", sums.len())));
    }
    Ok((1..=m_max)
        .take_while(|&m| pos + k * m <= sums.len())
        .find(|&m| is_abelian_power(sums, pos, m, k)))
}

/// First abelian `k`-power with period `<= m_max`, scanning positions in order
/// and periods ascending at each position.
pub fn abelian_power_violation(
    sums: &ParikhPrefixSums,
    k: usize,
    m_max: usize,
) -> Result<Option<PowerHit>> {
    check_exponent(k)?;
    check_period_bound(m_max)?;
    Ok((0..sums.len()).into_par_iter().find_map_first(|pos| {
        (1..=m_max)
            .take_while(|&m| pos + k * m <= sums.len())
            .find(|&m| is_abelian_power(sums, pos, m, k))
            .map(|period| PowerHit {
                position: pos,
                period,
                exponent: k,
            })
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionEntry {
    pub pos: usize,
    pub min_period: Option<usize>,
    /// The search at this position was cut short by the end of the buffer.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionPowerReport {
    #[serde(with = "spec_text")]
    pub spec: WordSpec,
    pub k: usize,
    pub positions: usize,
    pub m_max: usize,
    pub entries: Vec<PositionEntry>,
}

impl PositionPowerReport {
    pub fn all_covered(&self) -> bool {
        self.entries.iter().all(|e| e.min_period.is_some())
    }

    pub fn uncovered(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.min_period.is_none())
            .map(|e| e.pos)
            .collect()
    }

    pub fn largest_min_period(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.min_period).max()
    }

    fn buffer_len(&self) -> usize {
        self.positions + self.k * self.m_max
    }
}

fn survey_sums(spec: &WordSpec, len: usize, cap: usize) -> Result<ParikhPrefixSums> {
    let len = spec.finite_len().map_or(len, |f| f.min(len));
    Ok(ParikhPrefixSums::new(&materialize_with_cap(
        spec, len, cap,
    )?))
}

/// Minimal period of an abelian `k`-power at every position `< positions`.
pub fn position_coverage_report(
    spec: &WordSpec,
    k: usize,
    positions: usize,
    m_max: usize,
    cap: usize,
) -> Result<PositionPowerReport> {
    check_exponent(k)?;
    check_period_bound(m_max)?;
    if positions == 0 {
        return Err(out_of_range("positions", 0, ">= 1"));
    }
    let sums = survey_sums(spec, positions + k * m_max, cap)?;
    if sums.len() < positions {
        return Err(Error::FiniteWord {
            requested: positions,
            available: sums.len(),
        });
    }
    let entries = (0..positions)
        .into_par_iter()
        .map(|pos| {
            let min_period = min_period_for_k(&sums, pos, k, m_max)?;
            let truncated = min_period.is_none() && pos + k * m_max > sums.len();
            Ok(PositionEntry {
                pos,
                min_period,
                truncated,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PositionPowerReport {
        spec: spec.clone(),
        k,
        positions,
        m_max,
        entries,
    })
}

/// How a power "occurs at" a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverReading {
    /// The power starts at the position.
    #[default]
    StartAnchored,
    /// The position lies inside the power.
    Covering,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    /// Empty when a pair exists; otherwise the positions missed by the best pair.
    pub uncovered: Vec<usize>,
}

impl CoverResult {
    pub fn pair(&self) -> Option<(usize, usize)> {
        self.l1.zip(self.l2)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_count(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Lexicographically least pair `l1 <= l2` of periods such that every surveyed
/// position has an abelian `k`-power of period `l1` or `l2` (under `reading`).
pub fn two_period_cover(
    report: &PositionPowerReport,
    reading: CoverReading,
    cap: usize,
) -> Result<CoverResult> {
    let n = report.positions;
    let sums = survey_sums(&report.spec, report.buffer_len(), cap)?;
    let works: Vec<(usize, Bits)> = (1..=report.m_max)
        .into_par_iter()
        .map(|m| {
            let starts: Vec<bool> = (0..n)
                .map(|p| is_abelian_power(&sums, p, m, report.k))
                .collect();
            let mut bits = Bits::new(n);
            match reading {
                CoverReading::StartAnchored => {
                    starts
                        .iter()
                        .enumerate()
                        .filter(|(_, &s)| s)
                        .for_each(|(p, _)| bits.set(p));
                }
                CoverReading::Covering => {
                    let span = report.k * m;
                    let mut last_start: Option<usize> = None;
                    for (p, &s) in starts.iter().enumerate() {
                        if s {
                            last_start = Some(p);
                        }
                        if last_start.is_some_and(|s| p < s + span) {
                            bits.set(p);
                        }
                    }
                }
            }
            (m, bits)
        })
        .filter(|(_, bits)| !bits.is_empty())
        .collect();

    let full = n as u32;
    let mut best: Option<(u32, usize, usize)> = None;
    for (i, (l1, b1)) in works.iter().enumerate() {
        for (l2, b2) in &works[i..] {
            let covered = b1.union_count(b2);
            if covered == full {
                return Ok(CoverResult {
                    l1: Some(*l1),
                    l2: Some(*l2),
                    uncovered: Vec::new(),
                });
            }
            if best.is_none_or(|(c, _, _)| covered > c) {
                best = Some((covered, i, *l2));
            }
        }
    }
    let uncovered = match best {
        Some((_, i, l2)) => {
            let b1 = &works[i].1;
            let b2 = &works
                .iter()
                .find(|(m, _)| *m == l2)
                .expect("candidate period")
                .1;
            (0..n).filter(|&p| !b1.get(p) && !b2.get(p)).collect()
        }
        None => (0..n).collect(),
    };
    Ok(CoverResult {
        l1: None,
        l2: None,
        uncovered,
    })
}

/// First position `< positions` that does not start an abelian `k_cap`-power of period `m`.
pub fn fixed_period_falsifier(
    spec: &WordSpec,
    m: usize,
    positions: usize,
    k_cap: usize,
    cap: usize,
) -> Result<Option<usize>> {
    check_exponent(k_cap)?;
    if m == 0 {
        return Err(out_of_range("period", 0, ">= 1"));
    }
    let need = positions + k_cap * m;
    let sums = survey_sums(spec, need, cap)?;
    if sums.len() < need {
        return Err(Error::FiniteWord {
            requested: need,
            available: sums.len(),
        });
    }
    Ok((0..positions).find(|&pos| !is_abelian_power(&sums, pos, m, k_cap)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodDoublingReport {
    /// Number of `(j, ℓ)` powers found in the source word and checked in its image.
    pub checked: usize,
    /// `(j, ℓ)` whose image at `2j` has no `k`-power of period `2ℓ`.
    pub failures: Vec<(usize, usize)>,
}

impl PeriodDoublingReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every abelian `k`-power of period `ℓ` at position `j` of a binary
/// word maps, under `0->00, 1->01`, to one of period `2ℓ` at position `2j`.
pub fn period_doubling_check(
    spec: &WordSpec,
    k: usize,
    positions: usize,
    m_max: usize,
    cap: usize,
) -> Result<PeriodDoublingReport> {
    check_exponent(k)?;
    check_period_bound(m_max)?;
    let alphabet = spec.alphabet().size();
    if alphabet > 2 {
        return Err(Error::NotBinary(alphabet));
    }
    let len = positions + k * m_max;
    let source = survey_sums(spec, len, cap)?;
    let image_spec = WordSpec::image(Morphism::period_doubling(), spec.clone())?;
    let image = survey_sums(&image_spec, 2 * source.len(), cap)?;
    let per_position: Vec<(usize, Vec<(usize, usize)>)> = (0..positions.min(source.len()))
        .into_par_iter()
        .map(|j| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for l in (1..=m_max).take_while(|&l| j + k * l <= source.len()) {
                if is_abelian_power(&source, j, l, k) {
                    checked += 1;
                    if !is_abelian_power(&image, 2 * j, 2 * l, k) {
                        failures.push((j, l));
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    let checked = per_position.iter().map(|(c, _)| c).sum();
    let failures = per_position.into_iter().flat_map(|(_, f)| f).collect();
    Ok(PeriodDoublingReport { checked, failures })
}
