//! Parikh vectors, window spectra and abelian complexity / balance profiles.
//!
//! Profiles of an infinite word are computed on a finite prefix. The prefix
//! starts at `max(64, 8·n_max)` letters and doubles until every per-length
//! measurement repeats across two successive rounds, or until the capacity cap
//! (or the end of a finite word) is reached. All measurements used here are
//! monotone in the prefix length, so a repeated round means no new window
//! content was found at any probed length.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::wordgen::{materialize_with_cap, Alphabet, Letter, PrefixBuffer, WordSpec};
use crate::{Error, Result, DEFAULT_CAP};

/// Occurrence counts `(|u|_0, …, |u|_{k-1})` of a finite word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector(Vec<u32>);

impl ParikhVector {
    pub fn zero(alphabet: Alphabet) -> Self {
        ParikhVector(vec![0; alphabet.size()])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        ParikhVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn count(&self, letter: Letter) -> u32 {
        self.0.get(letter as usize).copied().unwrap_or(0)
    }

    /// Length of the words this vector describes.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Max-norm distance; missing trailing coordinates count as zero.
    pub fn linf_distance(&self, other: &ParikhVector) -> u32 {
        let k = self.0.len().max(other.0.len());
        (0..k)
            .map(|a| self.count(a as Letter).abs_diff(other.count(a as Letter)))
            .max()
            .unwrap_or(0)
    }

    /// Copy with `letter` incremented.
    pub fn plus_letter(&self, letter: Letter) -> Self {
        let mut v = self.clone();
        v.0[letter as usize] += 1;
        v
    }
}

pub fn parikh(word: &[Letter], alphabet: Alphabet) -> Result<ParikhVector> {
    alphabet.check_word(word)?;
    let mut counts = vec![0u32; alphabet.size()];
    for &a in word {
        counts[a as usize] += 1;
    }
    Ok(ParikhVector(counts))
}

pub fn abelian_equivalent(u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let mut diff = [0i64; 256];
    for (&a, &b) in u.iter().zip(v) {
        diff[a as usize] += 1;
        diff[b as usize] -= 1;
    }
    diff.iter().all(|&d| d == 0)
}

/// Cumulative Parikh vectors `P[0..=L]` of a word, giving O(k) window queries.
#[derive(Debug, Clone)]
pub struct ParikhPrefixSums {
    k: usize,
    len: usize,
    table: Vec<u32>,
}

impl ParikhPrefixSums {
    pub fn new(buf: &PrefixBuffer) -> Self {
        Self::from_word(buf.letters(), buf.alphabet())
    }

    pub fn from_word(word: &[Letter], alphabet: Alphabet) -> Self {
        let k = alphabet.size();
        let mut table = vec![0u32; (word.len() + 1) * k];
        for (i, &a) in word.iter().enumerate() {
            let (done, rest) = table.split_at_mut((i + 1) * k);
            rest[..k].copy_from_slice(&done[i * k..]);
            rest[a as usize] += 1;
        }
        ParikhPrefixSums {
            k,
            len: word.len(),
            table,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    /// Parikh vector of the first `i` letters.
    pub fn prefix(&self, i: usize) -> &[u32] {
        &self.table[i * self.k..(i + 1) * self.k]
    }

    /// Parikh vector of the window `[start, end)`.
    pub fn window(&self, start: usize, end: usize) -> ParikhVector {
        assert!(
            start <= end && end <= self.len,
            "window {start}..{end} out of 0..{}",
            self.len
        );
        let (lo, hi) = (self.prefix(start), self.prefix(end));
        ParikhVector(hi.iter().zip(lo).map(|(h, l)| h - l).collect())
    }

    /// Whether the length-`m` blocks at `i` and `j` are abelian equivalent.
    #[inline]
    pub fn blocks_equivalent(&self, i: usize, j: usize, m: usize) -> bool {
        let k = self.k;
        let t = &self.table;
        // both blocks have length m, so the last coordinate follows from the others
        (0..k.saturating_sub(1))
            .all(|a| t[(i + m) * k + a] - t[i * k + a] == t[(j + m) * k + a] - t[j * k + a])
    }
}

/// Set of distinct count vectors; linear scan while small.
struct SpectrumSet {
    k: usize,
    small: Vec<u32>,
    large: Option<HashSet<Box<[u32]>>>,
}

const SMALL_SPECTRUM: usize = 32;

impl SpectrumSet {
    fn new(k: usize) -> Self {
        SpectrumSet {
            k,
            small: Vec::new(),
            large: None,
        }
    }

    fn insert(&mut self, v: &[u32]) {
        if let Some(set) = &mut self.large {
            if !set.contains(v) {
                set.insert(v.into());
            }
            return;
        }
        if self.small.chunks_exact(self.k).any(|c| c == v) {
            return;
        }
        self.small.extend_from_slice(v);
        if self.small.len() / self.k > SMALL_SPECTRUM {
            self.large = Some(self.small.chunks_exact(self.k).map(Into::into).collect());
            self.small = Vec::new();
        }
    }

    fn len(&self) -> usize {
        match &self.large {
            Some(set) => set.len(),
            None => self.small.len() / self.k,
        }
    }

    fn into_vectors(self) -> Vec<ParikhVector> {
        match self.large {
            Some(set) => set
                .into_iter()
                .map(|v| ParikhVector(v.into_vec()))
                .collect(),
            None => self
                .small
                .chunks_exact(self.k)
                .map(|c| ParikhVector(c.to_vec()))
                .collect(),
        }
    }
}

/// Distinct Parikh vectors of the length-`n` windows, by sliding updates.
fn sliding_spectrum(letters: &[Letter], k: usize, n: usize) -> SpectrumSet {
    let mut set = SpectrumSet::new(k);
    let mut counts = vec![0u32; k];
    for &a in &letters[..n] {
        counts[a as usize] += 1;
    }
    set.insert(&counts);
    for i in n..letters.len() {
        let (out, inn) = (letters[i - n] as usize, letters[i] as usize);
        if out != inn {
            counts[out] -= 1;
            counts[inn] += 1;
            set.insert(&counts);
        }
    }
    set
}

/// Per-letter `(min, max)` count over the length-`n` windows.
pub(crate) fn count_ranges(letters: &[Letter], k: usize, n: usize) -> Vec<(u32, u32)> {
    let mut counts = vec![0u32; k];
    for &a in &letters[..n] {
        counts[a as usize] += 1;
    }
    let mut ranges: Vec<(u32, u32)> = counts.iter().map(|&c| (c, c)).collect();
    for i in n..letters.len() {
        let (out, inn) = (letters[i - n] as usize, letters[i] as usize);
        if out != inn {
            counts[out] -= 1;
            counts[inn] += 1;
            ranges[out].0 = ranges[out].0.min(counts[out]);
            ranges[inn].1 = ranges[inn].1.max(counts[inn]);
        }
    }
    ranges
}

fn check_window_len(n: usize, len: usize) -> Result<()> {
    if n > len {
        return Err(Error::OutOfRange {
            what: "window length",
            value: n,
            bound: format!("<= {len}"),
        });
    }
    Ok(())
}

/// `Ψ(n)` restricted to the buffer: the set of Parikh vectors of its length-`n` windows.
pub fn window_spectrum(buf: &PrefixBuffer, n: usize) -> Result<BTreeSet<ParikhVector>> {
    check_window_len(n, buf.len())?;
    Ok(sliding_spectrum(buf.letters(), buf.alphabet().size(), n)
        .into_vectors()
        .into_iter()
        .collect())
}

/// Per-letter `(min, max)` of `|u|_a` over the length-`n` windows `u` of the buffer.
pub fn letter_count_ranges(buf: &PrefixBuffer, n: usize) -> Result<Vec<(u32, u32)>> {
    check_window_len(n, buf.len())?;
    Ok(count_ranges(buf.letters(), buf.alphabet().size(), n))
}

pub(crate) fn spectrum_size(buf: &PrefixBuffer, n: usize) -> usize {
    sliding_spectrum(buf.letters(), buf.alphabet().size(), n).len()
}

/// Number of compositions of `n` into `k` parts, `C(n+k-1, k-1)`.
pub fn max_abelian_complexity(n: u64, k: u64) -> Result<u128> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "alphabet size",
            value: 0,
            bound: ">= 1".into(),
        });
    }
    // C(n+i, i) for i = 0..k-1; each step stays integral
    let mut c: u128 = 1;
    for i in 1..k as u128 {
        let n = n as u128;
        c = c
            .checked_mul(n + i)
            .map(|x| x / i)
            .ok_or(Error::Overflow("binomial coefficient"))?;
    }
    Ok(c)
}

/// How prefix lengths are chosen when estimating a quantity of the infinite word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationPolicy {
    /// Largest prefix ever materialized.
    pub cap: usize,
    /// Overrides the default starting length `max(64, 8·n_max)`.
    pub initial_len: Option<usize>,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy {
            cap: DEFAULT_CAP,
            initial_len: None,
        }
    }
}

impl StabilizationPolicy {
    pub fn with_cap(cap: usize) -> Self {
        StabilizationPolicy {
            cap,
            initial_len: None,
        }
    }

    fn start_len(&self, n_max: usize) -> usize {
        self.initial_len
            .unwrap_or_else(|| 64usize.max(n_max.saturating_mul(8)))
    }
}

pub(crate) struct Stabilized<T> {
    pub values: Vec<T>,
    pub stable: Vec<bool>,
    pub buffer: PrefixBuffer,
}

/// Runs `measure` on doubling prefixes until its output repeats.
pub(crate) fn stabilize<T: PartialEq>(
    spec: &WordSpec,
    n_max: usize,
    policy: &StabilizationPolicy,
    measure: impl Fn(&PrefixBuffer) -> Vec<T>,
) -> Result<Stabilized<T>> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: 0,
            bound: ">= 1".into(),
        });
    }
    let finite = spec.finite_len();
    let limit = finite.map_or(policy.cap, |f| f.min(policy.cap));
    if limit < n_max {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: n_max,
            bound: format!("<= {limit}"),
        });
    }
    let exact = |len: usize| finite == Some(len);
    let mut len = policy.start_len(n_max).clamp(n_max, limit);
    let mut buffer = materialize_with_cap(spec, len, policy.cap)?;
    let mut values = measure(&buffer);
    if exact(len) {
        let stable = vec![true; values.len()];
        return Ok(Stabilized {
            values,
            stable,
            buffer,
        });
    }
    let mut previous: Option<Vec<T>> = None;
    while len < limit {
        len = len.saturating_mul(2).min(limit);
        let next_buffer = materialize_with_cap(spec, len, policy.cap)?;
        let next = measure(&next_buffer);
        buffer = next_buffer;
        if exact(len) || next == values {
            let stable = vec![true; next.len()];
            return Ok(Stabilized {
                values: next,
                stable,
                buffer,
            });
        }
        previous = Some(std::mem::replace(&mut values, next));
    }
    let stable = match previous {
        Some(prev) => prev.iter().zip(&values).map(|(p, v)| p == v).collect(),
        None => vec![false; values.len()],
    };
    Ok(Stabilized {
        values,
        stable,
        buffer,
    })
}

fn measure_all<T: Send>(n_max: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (1..=n_max).into_par_iter().map(f).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub value: u64,
    pub stabilized: bool,
    #[serde(rename = "L_used")]
    pub l_used: usize,
}

/// Per-length integer measurement of a word, e.g. abelian complexity `ρ^ab(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    #[serde(with = "spec_text")]
    pub spec: WordSpec,
    pub entries: Vec<ProfileEntry>,
}

impl ComplexityProfile {
    fn from_stabilized(spec: &WordSpec, st: Stabilized<u64>) -> Self {
        let l_used = st.buffer.len();
        let entries = st
            .values
            .into_iter()
            .zip(st.stable)
            .enumerate()
            .map(|(i, (value, stabilized))| ProfileEntry {
                n: i + 1,
                value,
                stabilized,
                l_used,
            })
            .collect();
        ComplexityProfile {
            spec: spec.clone(),
            entries,
        }
    }

    pub fn value(&self, n: usize) -> Option<u64> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.value)
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn all_stabilized(&self) -> bool {
        self.entries.iter().all(|e| e.stabilized)
    }
}

pub(crate) mod spec_text {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::WordSpec;

    pub fn serialize<S: Serializer>(spec: &WordSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(spec)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<WordSpec, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Abelian complexity `ρ^ab(n)` for `n = 1..=n_max`, estimated on stabilized prefixes.
pub fn abelian_complexity_profile(
    spec: &WordSpec,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<ComplexityProfile> {
    let st = stabilize(spec, n_max, policy, |buf| {
        measure_all(n_max, |n| spectrum_size(buf, n) as u64)
    })?;
    Ok(ComplexityProfile::from_stabilized(spec, st))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceEntry {
    pub n: usize,
    /// `max |u|_a − min |u|_a` over windows `u` of length `n`, per letter `a`.
    pub spreads: Vec<u32>,
    pub stabilized: bool,
    #[serde(rename = "L_used")]
    pub l_used: usize,
}

impl BalanceEntry {
    pub fn max_spread(&self) -> u32 {
        self.spreads.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceProfile {
    #[serde(with = "spec_text")]
    pub spec: WordSpec,
    pub entries: Vec<BalanceEntry>,
    /// Largest spread observed over all lengths and letters.
    pub c_estimate: u32,
}

pub fn balance_profile(
    spec: &WordSpec,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<BalanceProfile> {
    let st = stabilize(spec, n_max, policy, |buf| {
        let k = buf.alphabet().size();
        measure_all(n_max, |n| {
            count_ranges(buf.letters(), k, n)
                .into_iter()
                .map(|(lo, hi)| hi - lo)
                .collect::<Vec<_>>()
        })
    })?;
    let l_used = st.buffer.len();
    let entries: Vec<BalanceEntry> = st
        .values
        .into_iter()
        .zip(st.stable)
        .enumerate()
        .map(|(i, (spreads, stabilized))| BalanceEntry {
            n: i + 1,
            spreads,
            stabilized,
            l_used,
        })
        .collect();
    let c_estimate = entries
        .iter()
        .map(BalanceEntry::max_spread)
        .max()
        .unwrap_or(0);
    Ok(BalanceProfile {
        spec: spec.clone(),
        entries,
        c_estimate,
    })
}

/// For each `n`, the largest `‖Ψ(prefix_n) − Ψ(v)‖∞` over length-`n` windows `v`.
pub fn prefix_factor_balance(
    spec: &WordSpec,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<ComplexityProfile> {
    let st = stabilize(spec, n_max, policy, |buf| {
        let k = buf.alphabet().size();
        let letters = buf.letters();
        measure_all(n_max, |n| {
            let mut prefix = vec![0u32; k];
            for &a in &letters[..n] {
                prefix[a as usize] += 1;
            }
            count_ranges(letters, k, n)
                .into_iter()
                .zip(prefix)
                .map(|((lo, hi), p)| (hi - p).max(p - lo))
                .max()
                .unwrap_or(0) as u64
        })
    })?;
    Ok(ComplexityProfile::from_stabilized(spec, st))
}

/// Least `p <= p_max` with `ρ^ab(p) = 1` on the stabilized prefix. `None` is not
/// a proof of aperiodicity.
pub fn periodicity_probe(
    spec: &WordSpec,
    p_max: usize,
    policy: &StabilizationPolicy,
) -> Result<Option<usize>> {
    let profile = abelian_complexity_profile(spec, p_max, policy)?;
    Ok(profile.entries.iter().find(|e| e.value == 1).map(|e| e.n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordgen::{materialize, parse_word};

    fn pv(c: &[u32]) -> ParikhVector {
        ParikhVector(c.to_vec())
    }

    fn word(s: &str) -> Vec<Letter> {
        parse_word(s).unwrap()
    }

    fn literal(s: &str) -> PrefixBuffer {
        let w = word(s);
        materialize(&WordSpec::Literal(w.clone()), w.len()).unwrap()
    }

    fn profile(spec: &WordSpec, n_max: usize) -> Vec<u64> {
        abelian_complexity_profile(spec, n_max, &StabilizationPolicy::default())
            .unwrap()
            .values()
    }

    #[test]
    fn parikh_counts() {
        let a3 = Alphabet::new(3).unwrap();
        let a2 = Alphabet::new(2).unwrap();
        assert_eq!(parikh(&word("01102"), a3).unwrap(), pv(&[2, 2, 1]));
        assert_eq!(parikh(&[], a2).unwrap(), pv(&[0, 0]));
        assert_eq!(parikh(&word("0110"), a2).unwrap(), pv(&[2, 2]));
        assert!(parikh(&word("012"), a2).is_err());
    }

    #[test]
    fn abelian_equivalence() {
        assert!(abelian_equivalent(&word("01"), &word("10")));
        assert!(!abelian_equivalent(&word("01"), &word("11")));
        assert!(abelian_equivalent(&word("0102"), &word("2010")));
        assert!(!abelian_equivalent(&word("0"), &word("00")));
    }

    #[test]
    fn prefix_sums_windows() {
        let w = word("0102010");
        let sums = ParikhPrefixSums::from_word(&w, Alphabet::new(3).unwrap());
        assert_eq!(sums.window(0, 0), pv(&[0, 0, 0]));
        assert_eq!(sums.window(1, 5), pv(&[2, 1, 1]));
        assert!(sums.blocks_equivalent(0, 4, 3)); // 010 ~ 010
        assert!(!sums.blocks_equivalent(1, 2, 2)); // 10 vs 02
    }

    #[test]
    fn small_spectra() {
        let buf = literal("0110");
        assert_eq!(
            window_spectrum(&buf, 2).unwrap(),
            BTreeSet::from([pv(&[1, 1]), pv(&[0, 2])])
        );
        assert_eq!(
            window_spectrum(&buf, 4).unwrap(),
            BTreeSet::from([pv(&[2, 2])])
        );
        assert_eq!(
            window_spectrum(&buf, 0).unwrap(),
            BTreeSet::from([pv(&[0, 0])])
        );
        assert!(window_spectrum(&buf, 5).is_err());
        let t = materialize(&WordSpec::tribonacci(), 100).unwrap();
        assert_eq!(window_spectrum(&t, 1).unwrap().len(), 3);
    }

    #[test]
    fn spectrum_set_switches_to_hashing() {
        // windows of the extremal word realize every count 0..=n at large n
        let spec = "img(coding,fix(ext,0))".parse().unwrap();
        let buf = materialize(&spec, 729).unwrap();
        assert_eq!(window_spectrum(&buf, 100).unwrap().len(), 101);
    }

    #[test]
    fn tribonacci_first_ten() {
        assert_eq!(
            profile(&WordSpec::tribonacci(), 10),
            vec![3, 3, 4, 3, 4, 4, 4, 3, 4, 4]
        );
    }

    #[test]
    fn thue_morse_parity() {
        let p = profile(&WordSpec::thue_morse(), 6);
        assert_eq!((p[4], p[5]), (2, 3));
    }

    #[test]
    fn periodic_word_has_complexity_one_at_its_period() {
        let spec = WordSpec::ultimately_periodic(vec![], vec![0, 1]).unwrap();
        assert_eq!(profile(&spec, 2)[1], 1);
    }

    #[test]
    fn fibonacci_is_two_everywhere() {
        assert!(profile(&WordSpec::fibonacci(), 50).iter().all(|&v| v == 2));
    }

    #[test]
    fn binomial_bound() {
        assert_eq!(max_abelian_complexity(5, 2).unwrap(), 6);
        assert_eq!(max_abelian_complexity(3, 3).unwrap(), 10);
        assert_eq!(max_abelian_complexity(0, 7).unwrap(), 1);
        assert_eq!(max_abelian_complexity(10, 1).unwrap(), 1);
        assert_eq!(max_abelian_complexity(1000, 4).unwrap(), 167_668_501);
        assert!(max_abelian_complexity(0, 0).is_err());
        assert_eq!(
            max_abelian_complexity(u64::MAX, 255),
            Err(Error::Overflow("binomial coefficient"))
        );
    }

    #[test]
    fn balance_examples() {
        let policy = StabilizationPolicy::default();
        let fib = balance_profile(&WordSpec::fibonacci(), 500, &policy).unwrap();
        assert_eq!(fib.c_estimate, 1);
        let tm = balance_profile(&WordSpec::thue_morse(), 500, &policy).unwrap();
        assert_eq!(tm.c_estimate, 2);
        assert!(tm.entries.iter().all(|e| e.stabilized));
    }

    #[test]
    fn prefix_deviation_of_constant_word_is_zero() {
        let spec = WordSpec::Literal(vec![0; 20]);
        let dev = prefix_factor_balance(&spec, 5, &StabilizationPolicy::default()).unwrap();
        assert!(dev.values().iter().all(|&d| d == 0));
        let tm = prefix_factor_balance(&WordSpec::thue_morse(), 1, &StabilizationPolicy::default())
            .unwrap();
        assert_eq!(tm.values(), vec![1]);
    }

    #[test]
    fn periodicity_probe_examples() {
        let policy = StabilizationPolicy::default();
        let p4 = WordSpec::ultimately_periodic(vec![], vec![1, 0, 0, 1]).unwrap();
        assert_eq!(periodicity_probe(&p4, 10, &policy).unwrap(), Some(4));
        assert_eq!(
            periodicity_probe(&WordSpec::fibonacci(), 50, &policy).unwrap(),
            None
        );
        assert_eq!(
            periodicity_probe(&WordSpec::Literal(vec![0; 40]), 3, &policy).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn finite_words_are_exact() {
        let spec = WordSpec::Literal(word("0010"));
        let p = abelian_complexity_profile(&spec, 4, &StabilizationPolicy::default()).unwrap();
        assert_eq!(p.values(), vec![2, 2, 1, 1]);
        assert!(p.all_stabilized());
        assert_eq!(p.entries[0].l_used, 4);
        assert!(abelian_complexity_profile(&spec, 5, &StabilizationPolicy::default()).is_err());
    }

    #[test]
    fn cap_limits_stabilization() {
        let policy = StabilizationPolicy::with_cap(50);
        let p = abelian_complexity_profile(&WordSpec::Champernowne, 10, &policy).unwrap();
        assert_eq!(p.entries[0].l_used, 50);
        // a single round at the cap certifies nothing
        assert!(!p.entries.iter().any(|e| e.stabilized));
    }
}
