//! Ordinary (non-abelian) factor analysis: distinct factors, subword complexity,
//! right special factors, and the `Central(n)` check for the Tribonacci word.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::abelian::{
    abelian_complexity_profile, parikh, stabilize, window_spectrum, ComplexityProfile,
    ParikhVector, ProfileEntry, StabilizationPolicy,
};
use crate::wordgen::{word_to_string, Letter, PrefixBuffer, WordSpec};
use crate::{Error, Result};

/// Distinct length-`n` windows of a buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpectrum {
    pub n: usize,
    pub factors: BTreeSet<Vec<Letter>>,
}

impl FactorSpectrum {
    pub fn new(buf: &PrefixBuffer, n: usize) -> Result<Self> {
        if n > buf.len() {
            return Err(Error::OutOfRange {
                what: "factor length",
                value: n,
                bound: format!("<= {}", buf.len()),
            });
        }
        let factors = buf
            .letters()
            .windows(n.max(1))
            .map(|w| w[..n].to_vec())
            .collect();
        Ok(FactorSpectrum { n, factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn distinct_factor_count(letters: &[Letter], n: usize) -> usize {
    letters.windows(n).collect::<HashSet<_>>().len()
}

/// Subword complexity `ρ(n)` for `n = 1..=n_max` on stabilized prefixes.
pub fn factor_complexity_profile(
    spec: &WordSpec,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<ComplexityProfile> {
    let st = stabilize(spec, n_max, policy, |buf| {
        use rayon::prelude::*;
        (1..=n_max)
            .into_par_iter()
            .map(|n| distinct_factor_count(buf.letters(), n) as u64)
            .collect()
    })?;
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
    Ok(ComplexityProfile {
        spec: spec.clone(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RightSpecialFactor {
    #[serde(with = "word_text")]
    pub factor: Vec<Letter>,
    #[serde(with = "word_text")]
    pub extensions: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightSpecialFactors {
    pub n: usize,
    pub factors: Vec<RightSpecialFactor>,
    pub stabilized: bool,
    #[serde(rename = "L_used")]
    pub l_used: usize,
}

/// Length-`n` windows followed, somewhere in the buffer, by at least two distinct letters.
pub fn right_special_in(letters: &[Letter], n: usize) -> Vec<RightSpecialFactor> {
    let mut ext: HashMap<&[Letter], Vec<Letter>> = HashMap::new();
    for w in letters.windows(n + 1) {
        let seen = ext.entry(&w[..n]).or_default();
        if !seen.contains(&w[n]) {
            seen.push(w[n]);
        }
    }
    let mut out: Vec<RightSpecialFactor> = ext
        .into_iter()
        .filter(|(_, e)| e.len() >= 2)
        .map(|(f, mut e)| {
            e.sort_unstable();
            RightSpecialFactor {
                factor: f.to_vec(),
                extensions: e,
            }
        })
        .collect();
    out.sort();
    out
}

pub fn right_special_factors(
    spec: &WordSpec,
    n: usize,
    policy: &StabilizationPolicy,
) -> Result<RightSpecialFactors> {
    let st = stabilize(spec, n + 1, policy, |buf| {
        vec![right_special_in(buf.letters(), n)]
    })?;
    let l_used = st.buffer.len();
    let stabilized = st.stable[0];
    let factors = st.values.into_iter().next().unwrap_or_default();
    Ok(RightSpecialFactors {
        n,
        factors,
        stabilized,
        l_used,
    })
}

/// Outcome of checking `Central(n) ⊆ Ψ_t(n)` and its consequences at one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralReport {
    pub n: usize,
    /// The right special factor of length `n − 1`, when exactly one was found.
    #[serde(with = "opt_word_text")]
    pub special_factor: Option<Vec<Letter>>,
    pub special_factor_count: usize,
    pub central: Vec<ParikhVector>,
    pub spectrum: Vec<ParikhVector>,
    /// One flag per `central` vector: whether it lies in `spectrum`.
    pub central_in_spectrum: Vec<bool>,
    pub max_pairwise_norm: u32,
    pub stabilized: bool,
    #[serde(rename = "L_used")]
    pub l_used: usize,
}

impl CentralReport {
    pub fn central_included(&self) -> bool {
        self.central.len() == 3 && self.central_in_spectrum.iter().all(|&b| b)
    }

    /// All consequences hold: unique special factor with three extensions,
    /// `Central(n) ⊆ Ψ(n)`, diameter at most 2, at most 7 vectors.
    pub fn verified(&self) -> bool {
        self.stabilized
            && self.special_factor_count == 1
            && self.central_included()
            && self.max_pairwise_norm <= 2
            && self.spectrum.len() <= 7
    }
}

const MERSENNE_61: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 0x1f3d_5b79_a2c4_e681 % MERSENNE_61;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = (p & MERSENNE_61 as u128) as u64 + (p >> 61) as u64;
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

/// Polynomial window hashes modulo 2^61 − 1.
struct WindowHasher {
    prefix: Vec<u64>,
    powers: Vec<u64>,
}

impl WindowHasher {
    fn new(letters: &[Letter]) -> Self {
        let mut prefix = Vec::with_capacity(letters.len() + 1);
        let mut powers = Vec::with_capacity(letters.len() + 1);
        prefix.push(0);
        powers.push(1);
        for (i, &a) in letters.iter().enumerate() {
            prefix.push((mul_mod(prefix[i], HASH_BASE) + a as u64 + 1) % MERSENNE_61);
            powers.push(mul_mod(powers[i], HASH_BASE));
        }
        WindowHasher { prefix, powers }
    }

    fn hash(&self, start: usize, len: usize) -> u64 {
        let hi = self.prefix[start + len];
        let lo = mul_mod(self.prefix[start], self.powers[len]);
        (hi + MERSENNE_61 - lo) % MERSENNE_61
    }
}

/// Shared Tribonacci prefix for `Central(n)` checks at every `n <= n_max`.
pub struct CentralChecker {
    profile: ComplexityProfile,
    buffer: PrefixBuffer,
    hasher: WindowHasher,
}

impl CentralChecker {
    pub fn new(n_max: usize, policy: &StabilizationPolicy) -> Result<Self> {
        let spec = WordSpec::tribonacci();
        let profile = abelian_complexity_profile(&spec, n_max, policy)?;
        let len = profile.entries.first().map_or(0, |e| e.l_used);
        let buffer = crate::wordgen::materialize_with_cap(&spec, len, policy.cap)?;
        let hasher = WindowHasher::new(buffer.letters());
        Ok(CentralChecker {
            profile,
            buffer,
            hasher,
        })
    }

    pub fn n_max(&self) -> usize {
        self.profile.entries.len()
    }

    pub fn buffer(&self) -> &PrefixBuffer {
        &self.buffer
    }

    /// Right special factors of length `m` found through window hashes; every
    /// reported factor is confirmed letter by letter, and a hash collision
    /// falls back to exact slice grouping.
    fn right_special(&self, m: usize) -> Vec<RightSpecialFactor> {
        let letters = self.buffer.letters();
        let mut buckets: HashMap<u64, Vec<(Letter, usize)>> = HashMap::new();
        for i in 0..letters.len().saturating_sub(m) {
            let reps = buckets.entry(self.hasher.hash(i, m)).or_default();
            let a = letters[i + m];
            if !reps.iter().any(|&(b, _)| b == a) {
                reps.push((a, i));
            }
        }
        let mut found = Vec::new();
        for reps in buckets.values().filter(|r| r.len() >= 2) {
            let first = &letters[reps[0].1..reps[0].1 + m];
            if reps.iter().any(|&(_, j)| &letters[j..j + m] != first) {
                return right_special_in(letters, m);
            }
            let mut extensions: Vec<Letter> = reps.iter().map(|&(a, _)| a).collect();
            extensions.sort_unstable();
            found.push(RightSpecialFactor {
                factor: first.to_vec(),
                extensions,
            });
        }
        found.sort();
        found
    }

    pub fn check(&self, n: usize) -> Result<CentralReport> {
        let entry = match n.checked_sub(1).and_then(|i| self.profile.entries.get(i)) {
            Some(e) => e,
            None => {
                return Err(Error::OutOfRange {
                    what: "n",
                    value: n,
                    bound: format!("1..={}", self.n_max()),
                })
            }
        };
        let alphabet = self.buffer.alphabet();
        let spectrum: Vec<ParikhVector> = window_spectrum(&self.buffer, n)?.into_iter().collect();
        let specials = self.right_special(n - 1);
        let special_factor = match specials.as_slice() {
            [only] if only.extensions == [0, 1, 2] => Some(only.factor.clone()),
            _ => None,
        };
        let central: Vec<ParikhVector> = match &special_factor {
            Some(f) => {
                let base = parikh(f, alphabet)?;
                (0..3).map(|a| base.plus_letter(a)).collect()
            }
            None => Vec::new(),
        };
        let central_in_spectrum = central
            .iter()
            .map(|v| spectrum.binary_search(v).is_ok())
            .collect();
        let max_pairwise_norm = spectrum
            .iter()
            .flat_map(|u| spectrum.iter().map(move |v| u.linf_distance(v)))
            .max()
            .unwrap_or(0);
        Ok(CentralReport {
            n,
            special_factor,
            special_factor_count: specials.len(),
            central,
            spectrum,
            central_in_spectrum,
            max_pairwise_norm,
            stabilized: entry.stabilized,
            l_used: self.buffer.len(),
        })
    }
}

pub fn tribonacci_central_check(n: usize, policy: &StabilizationPolicy) -> Result<CentralReport> {
    CentralChecker::new(n, policy)?.check(n)
}

pub(crate) mod word_text {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::wordgen::{parse_word, word_to_string, Letter};

    pub fn serialize<S: Serializer>(w: &[Letter], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&word_to_string(w))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Letter>, D::Error> {
        parse_word(&String::deserialize(d)?).map_err(D::Error::custom)
    }
}

mod opt_word_text {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::wordgen::{parse_word, Letter};

    pub fn serialize<S: Serializer>(w: &Option<Vec<Letter>>, s: S) -> Result<S::Ok, S::Error> {
        match w {
            Some(w) => super::word_text::serialize(w, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Letter>>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_word(&t).map_err(D::Error::custom))
            .transpose()
    }
}

impl std::fmt::Display for RightSpecialFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} -> {{{}}}",
            word_to_string(&self.factor),
            word_to_string(&self.extensions)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordgen::materialize;

    fn policy() -> StabilizationPolicy {
        StabilizationPolicy::default()
    }

    #[test]
    fn subword_complexity_examples() {
        let tm = factor_complexity_profile(&WordSpec::thue_morse(), 4, &policy()).unwrap();
        assert_eq!(tm.values(), vec![2, 4, 6, 10]);
        let t = factor_complexity_profile(&WordSpec::tribonacci(), 5, &policy()).unwrap();
        assert_eq!(t.values(), vec![3, 5, 7, 9, 11]);
        let p2 = WordSpec::ultimately_periodic(vec![], vec![0, 1]).unwrap();
        assert_eq!(
            factor_complexity_profile(&p2, 3, &policy())
                .unwrap()
                .value(3),
            Some(2)
        );
    }

    #[test]
    fn right_special_examples() {
        let p2 = WordSpec::ultimately_periodic(vec![], vec![0, 1]).unwrap();
        assert!(right_special_factors(&p2, 2, &policy())
            .unwrap()
            .factors
            .is_empty());
        let t = right_special_factors(&WordSpec::tribonacci(), 4, &policy()).unwrap();
        assert!(t.stabilized);
        // right special factors of the Tribonacci word are reversed prefixes
        assert_eq!(
            t.factors,
            vec![RightSpecialFactor {
                factor: vec![2, 0, 1, 0],
                extensions: vec![0, 1, 2]
            }]
        );
    }

    #[test]
    fn factor_spectrum_bounds() {
        let buf = materialize(&WordSpec::thue_morse(), 64).unwrap();
        let f = FactorSpectrum::new(&buf, 3).unwrap();
        assert_eq!(f.len(), 6);
        assert_eq!(FactorSpectrum::new(&buf, 0).unwrap().len(), 1);
        assert!(FactorSpectrum::new(&buf, 65).is_err());
    }

    #[test]
    fn central_check_small_n() {
        let r = tribonacci_central_check(1, &policy()).unwrap();
        assert_eq!(r.special_factor, Some(vec![]));
        let units: Vec<ParikhVector> = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
            .iter()
            .map(|c| ParikhVector::from_counts(c.to_vec()))
            .collect();
        assert_eq!(r.spectrum, units);
        let mut central = r.central.clone();
        central.sort();
        assert_eq!(central, units);
        assert!(r.verified());
    }

    #[test]
    fn central_check_n30() {
        let r = tribonacci_central_check(30, &policy()).unwrap();
        assert_eq!(r.spectrum.len(), 5);
        assert!(r.verified(), "{r:?}");
    }

    #[test]
    fn hashed_right_special_matches_exact() {
        let checker = CentralChecker::new(200, &policy()).unwrap();
        for m in [0, 1, 7, 50, 199] {
            assert_eq!(
                checker.right_special(m),
                right_special_in(checker.buffer().letters(), m)
            );
        }
    }
}
