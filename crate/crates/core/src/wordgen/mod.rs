//! Morphisms, word specifications and prefix materialization.

mod text;

use std::fmt;

use crate::{Error, Result, DEFAULT_CAP};

pub use text::{letter_from_char, letter_to_char, parse_word, word_to_string};

/// Letters are the integers `0..k` of an [`Alphabet`] of size `k`.
pub type Letter = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        match u8::try_from(size) {
            Ok(s) if s >= 1 => Ok(Alphabet(s)),
            _ => Err(Error::InvalidAlphabet(size)),
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter < self.0
    }

    /// Smallest alphabet containing every letter of `word` (size 1 for the empty word).
    pub fn spanning(word: &[Letter]) -> Result<Self> {
        let max = word.iter().copied().max().map_or(0, |m| m as usize);
        Alphabet::new(max + 1)
    }

    pub(crate) fn check_word(self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| !self.contains(a)) {
            Some(&letter) => Err(Error::LetterOutOfDomain {
                letter,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }

    fn union(self, other: Alphabet) -> Alphabet {
        Alphabet(self.0.max(other.0))
    }
}

/// A non-erasing substitution `a -> images[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    name: Option<String>,
    images: Vec<Vec<Letter>>,
    codomain: Alphabet,
}

impl Morphism {
    /// Builds a morphism on the alphabet `0..images.len()`. The codomain is the
    /// smallest alphabet containing every image letter.
    pub fn new(images: Vec<Vec<Letter>>) -> Result<Self> {
        Alphabet::new(images.len())
            .map_err(|_| Error::InvalidMorphism(format!("{} rules", images.len())))?;
        if let Some(a) = images.iter().position(Vec::is_empty) {
            return Err(Error::InvalidMorphism(format!("image of {a} is empty")));
        }
        let codomain = Alphabet::spanning(&images.concat())?;
        Ok(Morphism {
            name: None,
            images,
            codomain,
        })
    }

    /// Attaches a display name; named morphisms print as their name in spec text.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn domain(&self) -> Alphabet {
        Alphabet(self.images.len() as u8)
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn image(&self, letter: Letter) -> Result<&[Letter]> {
        self.images
            .get(letter as usize)
            .map(Vec::as_slice)
            .ok_or(Error::LetterOutOfDomain {
                letter,
                size: self.images.len(),
            })
    }

    pub fn is_prolongable_on(&self, letter: Letter) -> bool {
        matches!(self.images.get(letter as usize), Some(img) if img.len() >= 2 && img[0] == letter)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.codomain <= self.domain()
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).min().unwrap_or(1)
    }

    pub fn apply(&self, word: &[Letter]) -> Result<Vec<Letter>> {
        apply_morphism(self, word)
    }

    /// Thue-Morse morphism `0->01, 1->10`.
    pub fn thue_morse() -> Self {
        Self::builtin("mu", &[&[0, 1], &[1, 0]])
    }

    /// Tribonacci morphism `0->01, 1->02, 2->0`.
    pub fn tribonacci() -> Self {
        Self::builtin("tau", &[&[0, 1], &[0, 2], &[0]])
    }

    /// Fibonacci morphism `0->01, 1->0`.
    pub fn fibonacci() -> Self {
        Self::builtin("fib", &[&[0, 1], &[0]])
    }

    /// `0->012, 1->021`: maps aperiodic binary words to words of constant abelian complexity 3.
    pub fn rauzy() -> Self {
        Self::builtin("rauzy", &[&[0, 1, 2], &[0, 2, 1]])
    }

    /// `0->012, 1->111, 2->222`, whose fixed point codes to a binary word of maximal abelian complexity.
    pub fn extremal() -> Self {
        Self::builtin("ext", &[&[0, 1, 2], &[1, 1, 1], &[2, 2, 2]])
    }

    /// Coding `0->0, 1->1, 2->0` paired with [`Morphism::extremal`].
    pub fn extremal_coding() -> Self {
        Self::builtin("coding", &[&[0], &[1], &[0]])
    }

    /// Letter doubling `0->00, 1->11`.
    pub fn doubling() -> Self {
        Self::builtin("delta", &[&[0, 0], &[1, 1]])
    }

    /// Dekking's morphism `0->011, 1->0001`; its fixed point has no abelian 4-power.
    pub fn dekking() -> Self {
        Self::builtin("dekking", &[&[0, 1, 1], &[0, 0, 0, 1]])
    }

    /// `0->00, 1->01`, which doubles abelian periods.
    pub fn period_doubling() -> Self {
        Self::builtin("pd", &[&[0, 0], &[0, 1]])
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Some(match name {
            "mu" => Self::thue_morse(),
            "tau" => Self::tribonacci(),
            "fib" => Self::fibonacci(),
            "rauzy" => Self::rauzy(),
            "ext" => Self::extremal(),
            "coding" => Self::extremal_coding(),
            "delta" => Self::doubling(),
            "dekking" => Self::dekking(),
            "pd" => Self::period_doubling(),
            _ => return None,
        })
    }

    fn builtin(name: &str, images: &[&[Letter]]) -> Self {
        Self::new(images.iter().map(|w| w.to_vec()).collect())
            .expect("builtin morphism is valid")
            .named(name)
    }
}

pub fn apply_morphism(m: &Morphism, word: &[Letter]) -> Result<Vec<Letter>> {
    m.domain().check_word(word)?;
    let len = word.iter().map(|&a| m.images[a as usize].len()).sum();
    let mut out = Vec::with_capacity(len);
    for &a in word {
        out.extend_from_slice(&m.images[a as usize]);
    }
    Ok(out)
}

/// Declarative description of a right-infinite (or, for `Literal`, finite) word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordSpec {
    MorphicFixedPoint {
        morphism: Morphism,
        seed: Letter,
    },
    /// Characteristic Sturmian word of the directive sequence `preperiod · period^ω`,
    /// via `s₋₁ = 1, s₀ = 0, sₙ = sₙ₋₁^{dₙ} sₙ₋₂`.
    SturmianDirective {
        preperiod: Vec<u32>,
        period: Vec<u32>,
    },
    /// Concatenated binary numerals of 0, 1, 2, …
    Champernowne,
    UltimatelyPeriodic {
        prefix: Vec<Letter>,
        period: Vec<Letter>,
    },
    Literal(Vec<Letter>),
    MorphicImage {
        morphism: Morphism,
        inner: Box<WordSpec>,
    },
    Prepend {
        prefix: Vec<Letter>,
        inner: Box<WordSpec>,
    },
}

impl WordSpec {
    pub fn fixed_point(morphism: Morphism, seed: Letter) -> Result<Self> {
        let spec = WordSpec::MorphicFixedPoint { morphism, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sturmian(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        let spec = WordSpec::SturmianDirective { preperiod, period };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ultimately_periodic(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        let spec = WordSpec::UltimatelyPeriodic { prefix, period };
        spec.validate()?;
        Ok(spec)
    }

    pub fn image(morphism: Morphism, inner: WordSpec) -> Result<Self> {
        let spec = WordSpec::MorphicImage {
            morphism,
            inner: Box::new(inner),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn prepend(prefix: Vec<Letter>, inner: WordSpec) -> Result<Self> {
        let spec = WordSpec::Prepend {
            prefix,
            inner: Box::new(inner),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn thue_morse() -> Self {
        WordSpec::MorphicFixedPoint {
            morphism: Morphism::thue_morse(),
            seed: 0,
        }
    }

    pub fn tribonacci() -> Self {
        WordSpec::MorphicFixedPoint {
            morphism: Morphism::tribonacci(),
            seed: 0,
        }
    }

    /// The Fibonacci word, i.e. the Sturmian word with directive `1, 1, 1, …`.
    pub fn fibonacci() -> Self {
        WordSpec::SturmianDirective {
            preperiod: vec![],
            period: vec![1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WordSpec::MorphicFixedPoint { morphism, seed } => {
                if !morphism.is_endomorphism() {
                    return Err(Error::InvalidSpec(format!(
                        "fixed point needs an endomorphism, {morphism} maps into a larger alphabet"
                    )));
                }
                if !morphism.is_prolongable_on(*seed) {
                    return Err(Error::InvalidSpec(format!(
                        "{morphism} is not prolongable on {seed}"
                    )));
                }
                Ok(())
            }
            WordSpec::SturmianDirective { preperiod, period } => {
                if period.is_empty() {
                    return Err(Error::InvalidSpec("directive period is empty".into()));
                }
                if preperiod.iter().chain(period).any(|&d| d == 0) {
                    return Err(Error::InvalidSpec("directive entries must be >= 1".into()));
                }
                Ok(())
            }
            WordSpec::Champernowne => Ok(()),
            WordSpec::UltimatelyPeriodic { prefix, period } => {
                if period.is_empty() {
                    return Err(Error::InvalidSpec("periodic part is empty".into()));
                }
                Alphabet::spanning(prefix)?;
                Alphabet::spanning(period).map(|_| ())
            }
            WordSpec::Literal(w) => Alphabet::spanning(w).map(|_| ()),
            WordSpec::MorphicImage { morphism, inner } => {
                inner.validate()?;
                let inner_alpha = inner.alphabet();
                if inner_alpha > morphism.domain() {
                    return Err(Error::InvalidSpec(format!(
                        "inner word uses {} letters, {morphism} is defined on {}",
                        inner_alpha.size(),
                        morphism.domain().size()
                    )));
                }
                Ok(())
            }
            WordSpec::Prepend { prefix, inner } => {
                Alphabet::spanning(prefix)?;
                inner.validate()
            }
        }
    }

    /// Alphabet the denoted word is written over.
    pub fn alphabet(&self) -> Alphabet {
        let spanning = |w: &[Letter]| Alphabet::spanning(w).unwrap_or(Alphabet(255));
        match self {
            WordSpec::MorphicFixedPoint { morphism, .. } => morphism.domain(),
            WordSpec::SturmianDirective { .. } | WordSpec::Champernowne => Alphabet(2),
            WordSpec::UltimatelyPeriodic { prefix, period } => {
                spanning(prefix).union(spanning(period))
            }
            WordSpec::Literal(w) => spanning(w),
            WordSpec::MorphicImage { morphism, .. } => morphism.codomain(),
            WordSpec::Prepend { prefix, inner } => spanning(prefix).union(inner.alphabet()),
        }
    }

    /// Length of the denoted word when it is finite, `None` when infinite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            WordSpec::Literal(w) => Some(w.len()),
            WordSpec::Prepend { prefix, inner } => inner.finite_len().map(|n| n + prefix.len()),
            WordSpec::MorphicImage { morphism, inner } => {
                let n = inner.finite_len()?;
                let word = generate(inner, n, usize::MAX).ok()?;
                Some(
                    word.iter()
                        .map(|&a| morphism.images[a as usize].len())
                        .sum(),
                )
            }
            _ => None,
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                f.write_str(";")?;
            }
            write!(
                f,
                "{}->{}",
                letter_to_char(a as Letter),
                word_to_string(img)
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[u32]| ds.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            WordSpec::MorphicFixedPoint { morphism, seed } => {
                write!(f, "fix({morphism},{})", letter_to_char(*seed))
            }
            WordSpec::SturmianDirective { preperiod, period } if preperiod.is_empty() => {
                write!(f, "sturmian({})", join(period))
            }
            WordSpec::SturmianDirective { preperiod, period } => {
                write!(f, "sturmian({};{})", join(preperiod), join(period))
            }
            WordSpec::Champernowne => f.write_str("champernowne"),
            WordSpec::UltimatelyPeriodic { prefix, period } => {
                write!(
                    f,
                    "up({},{})",
                    word_to_string(prefix),
                    word_to_string(period)
                )
            }
            WordSpec::Literal(w) => write!(f, "lit({})", word_to_string(w)),
            WordSpec::MorphicImage { morphism, inner } => write!(f, "img({morphism},{inner})"),
            WordSpec::Prepend { prefix, inner } => {
                write!(f, "pre({},{inner})", word_to_string(prefix))
            }
        }
    }
}

/// Immutable materialized prefix of the word denoted by a [`WordSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixBuffer {
    spec: WordSpec,
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl PrefixBuffer {
    pub fn spec(&self) -> &WordSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_text(&self) -> String {
        word_to_string(&self.letters)
    }
}

/// Length-`len` prefix of `spec`, under the default capacity cap.
pub fn materialize(spec: &WordSpec, len: usize) -> Result<PrefixBuffer> {
    materialize_with_cap(spec, len, DEFAULT_CAP)
}

pub fn materialize_with_cap(spec: &WordSpec, len: usize, cap: usize) -> Result<PrefixBuffer> {
    spec.validate()?;
    let letters = generate(spec, len, cap)?;
    debug_assert_eq!(letters.len(), len);
    Ok(PrefixBuffer {
        spec: spec.clone(),
        alphabet: spec.alphabet(),
        letters,
    })
}

fn generate(spec: &WordSpec, len: usize, cap: usize) -> Result<Vec<Letter>> {
    if len > cap {
        return Err(Error::Capacity {
            requested: len,
            cap,
        });
    }
    if let Some(available) = spec.finite_len() {
        if len > available {
            return Err(Error::FiniteWord {
                requested: len,
                available,
            });
        }
    }
    let mut out = match spec {
        WordSpec::MorphicFixedPoint { morphism, seed } => fixed_point_prefix(morphism, *seed, len),
        WordSpec::SturmianDirective { preperiod, period } => {
            let directive = preperiod.iter().chain(period.iter().cycle()).copied();
            sturmian_prefix(directive, len)
        }
        WordSpec::Champernowne => champernowne_prefix(len),
        WordSpec::UltimatelyPeriodic { prefix, period } => prefix
            .iter()
            .chain(period.iter().cycle())
            .take(len)
            .copied()
            .collect(),
        WordSpec::Literal(w) => w[..len].to_vec(),
        WordSpec::MorphicImage { morphism, inner } => {
            let mut need = len.div_ceil(morphism.min_image_len());
            if let Some(n) = inner.finite_len() {
                need = need.min(n);
            }
            apply_morphism(morphism, &generate(inner, need, cap)?)?
        }
        WordSpec::Prepend { prefix, inner } => {
            let mut w: Vec<Letter> = prefix.iter().take(len).copied().collect();
            if len > prefix.len() {
                w.extend(generate(inner, len - prefix.len(), cap)?);
            }
            w
        }
    };
    out.truncate(len);
    Ok(out)
}

fn fixed_point_prefix(m: &Morphism, seed: Letter, len: usize) -> Vec<Letter> {
    // `out` always equals the image of out[..next], and stays ahead of `next`
    // because the seed image has length >= 2 and no image is empty.
    let mut out = m.images[seed as usize].clone();
    let mut next = 1;
    while out.len() < len {
        let a = out[next];
        out.extend_from_slice(&m.images[a as usize]);
        next += 1;
    }
    out
}

fn sturmian_prefix(directive: impl Iterator<Item = u32>, len: usize) -> Vec<Letter> {
    let mut older: Vec<Letter> = vec![1];
    let mut cur: Vec<Letter> = vec![0];
    for d in directive {
        if cur.len() >= len {
            break;
        }
        let d = d as usize;
        if cur.len().saturating_mul(d) >= len {
            // the prefix lies inside cur^d
            return cur.iter().cycle().take(len).copied().collect();
        }
        let mut next = Vec::with_capacity(cur.len() * d + older.len());
        for _ in 0..d {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut cur, next);
    }
    cur
}

fn champernowne_prefix(len: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(len + 64);
    out.push(0);
    let mut i: u64 = 1;
    while out.len() < len {
        let bits = 64 - i.leading_zeros();
        out.extend((0..bits).rev().map(|b| ((i >> b) & 1) as Letter));
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(spec: &WordSpec, len: usize) -> String {
        materialize(spec, len).unwrap().to_text()
    }

    #[test]
    fn applies_morphisms() {
        assert_eq!(
            apply_morphism(&Morphism::thue_morse(), &[0, 1]).unwrap(),
            vec![0, 1, 1, 0]
        );
        assert_eq!(
            apply_morphism(&Morphism::tribonacci(), &[0, 1]).unwrap(),
            vec![0, 1, 0, 2]
        );
        assert_eq!(
            apply_morphism(&Morphism::rauzy(), &[0, 1]).unwrap(),
            vec![0, 1, 2, 0, 2, 1]
        );
        assert_eq!(
            apply_morphism(&Morphism::thue_morse(), &[0, 2]),
            Err(Error::LetterOutOfDomain { letter: 2, size: 2 })
        );
    }

    #[test]
    fn rejects_erasing_morphism() {
        assert!(matches!(
            Morphism::new(vec![vec![0, 1], vec![]]),
            Err(Error::InvalidMorphism(_))
        ));
    }

    #[test]
    fn prolongability() {
        let tau = Morphism::tribonacci();
        assert!(tau.is_prolongable_on(0));
        assert!(!tau.is_prolongable_on(1));
        assert!(!tau.is_prolongable_on(2));
        assert!(WordSpec::fixed_point(tau, 1).is_err());
    }

    #[test]
    fn tribonacci_prefix() {
        assert_eq!(text(&WordSpec::tribonacci(), 14), "01020100102010");
    }

    #[test]
    fn champernowne_prefix_matches_display() {
        assert_eq!(
            text(&WordSpec::Champernowne, 26),
            "01101110010111011110001001"
        );
    }

    #[test]
    fn fibonacci_prefix() {
        assert_eq!(text(&WordSpec::fibonacci(), 13), "0100101001001");
    }

    #[test]
    fn extremal_word_prefix() {
        let spec = WordSpec::image(
            Morphism::extremal_coding(),
            WordSpec::fixed_point(Morphism::extremal(), 0).unwrap(),
        )
        .unwrap();
        assert_eq!(text(&spec, 7), "0101110");
    }

    #[test]
    fn ultimately_periodic_prefix() {
        let spec = WordSpec::ultimately_periodic(vec![0, 1, 1, 0], vec![1, 0, 0, 1]).unwrap();
        assert_eq!(text(&spec, 12), "011010011001");
        assert!(WordSpec::ultimately_periodic(vec![0], vec![]).is_err());
    }

    #[test]
    fn sturmian_directive_with_large_entries() {
        // s1 = 0^5 1, s2 = s1 0, s3 = s2 s1
        let spec = WordSpec::sturmian(vec![5], vec![1]).unwrap();
        assert_eq!(text(&spec, 13), "0000010000001");
        assert!(WordSpec::sturmian(vec![], vec![1, 0]).is_err());
        assert!(WordSpec::sturmian(vec![1], vec![]).is_err());
    }

    #[test]
    fn prepend_and_literal() {
        let spec = WordSpec::prepend(vec![2], WordSpec::fibonacci()).unwrap();
        assert_eq!(text(&spec, 6), "201001");
        assert_eq!(spec.alphabet().size(), 3);
        let lit = WordSpec::Literal(vec![0, 1, 1]);
        assert_eq!(text(&lit, 3), "011");
        assert_eq!(
            materialize(&lit, 4),
            Err(Error::FiniteWord {
                requested: 4,
                available: 3
            })
        );
    }

    #[test]
    fn image_of_finite_word() {
        let spec = WordSpec::image(Morphism::thue_morse(), WordSpec::Literal(vec![0, 1])).unwrap();
        assert_eq!(spec.finite_len(), Some(4));
        assert_eq!(text(&spec, 4), "0110");
        assert!(materialize(&spec, 5).is_err());
    }

    #[test]
    fn image_domain_is_checked() {
        assert!(WordSpec::image(Morphism::thue_morse(), WordSpec::tribonacci()).is_err());
    }

    #[test]
    fn capacity_cap() {
        assert_eq!(
            materialize_with_cap(&WordSpec::thue_morse(), 1000, 999),
            Err(Error::Capacity {
                requested: 1000,
                cap: 999
            })
        );
    }

    #[test]
    fn fixed_point_is_prefix_of_its_image() {
        for spec in [WordSpec::thue_morse(), WordSpec::tribonacci()] {
            let buf = materialize(&spec, 500).unwrap();
            let WordSpec::MorphicFixedPoint { morphism, .. } = &spec else {
                unreachable!()
            };
            let image = morphism.apply(buf.letters()).unwrap();
            assert_eq!(&image[..500], buf.letters());
        }
    }

    #[test]
    fn zero_length_prefix() {
        assert!(materialize(&WordSpec::Champernowne, 0).unwrap().is_empty());
    }
}
