//! Text forms: letters are single characters `0-9`, `a-z`, `A-Z`.
//!
//! Morphisms are written `0->01;1->10` or by builtin name (`mu`, `tau`, `fib`,
//! `rauzy`, `ext`, `coding`, `delta`, `dekking`, `pd`). Word specs are
//! `fix(m,a)`, `sturmian(d1,d2,...)` (purely periodic directive) or
//! `sturmian(pre;per)`, `champernowne`, `up(u,v)`, `img(m,spec)`, `pre(w,spec)`
//! and `lit(w)`, plus the shorthands `tm`, `tribonacci` and `fibonacci`.

use std::str::FromStr;

use super::{Letter, Morphism, WordSpec};
use crate::{Error, Result};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

pub fn letter_to_char(letter: Letter) -> char {
    DIGITS.get(letter as usize).map_or('?', |&c| c as char)
}

pub fn letter_from_char(c: char) -> Option<Letter> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'a'..='z' => Some(c as u8 - b'a' + 10),
        'A'..='Z' => Some(c as u8 - b'A' + 36),
        _ => None,
    }
}

pub fn word_to_string(word: &[Letter]) -> String {
    word.iter().map(|&a| letter_to_char(a)).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    parse_word_at(s, 0)
}

fn parse_word_at(s: &str, base: usize) -> Result<Vec<Letter>> {
    s.char_indices()
        .map(|(i, c)| {
            letter_from_char(c).ok_or_else(|| err(base + i, format!("'{c}' is not a letter")))
        })
        .collect()
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_morphism(s, 0)
    }
}

fn parse_morphism(s: &str, base: usize) -> Result<Morphism> {
    let trimmed = s.trim();
    if let Some(m) = Morphism::by_name(trimmed) {
        return Ok(m);
    }
    let mut images: Vec<Option<Vec<Letter>>> = Vec::new();
    let mut offset = base;
    for rule in s.split(';') {
        let (lhs, rhs) = rule
            .split_once("->")
            .ok_or_else(|| err(offset, format!("rule '{rule}' lacks '->'")))?;
        let lhs = lhs.trim();
        let mut chars = lhs.chars();
        let letter = match (chars.next().and_then(letter_from_char), chars.next()) {
            (Some(a), None) => a as usize,
            _ => return Err(err(offset, format!("'{lhs}' is not a single letter"))),
        };
        let image = parse_word_at(rhs.trim(), offset + lhs.len() + 2)?;
        if images.len() <= letter {
            images.resize(letter + 1, None);
        }
        if images[letter].replace(image).is_some() {
            return Err(err(offset, format!("letter '{lhs}' has two rules")));
        }
        offset += rule.len() + 1;
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(a, img)| {
            img.ok_or_else(|| {
                err(
                    base,
                    format!("no rule for letter '{}'", super::letter_to_char(a as u8)),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(images)
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = parse_spec(s, 0)?;
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_spec(s: &str, base: usize) -> Result<WordSpec> {
    let lead = s.len() - s.trim_start().len();
    let s = s.trim();
    let base = base + lead;
    let (head, body) = match s.find('(') {
        Some(open) => {
            if !s.ends_with(')') {
                return Err(err(base + s.len(), "expected ')'"));
            }
            (
                &s[..open],
                Some((&s[open + 1..s.len() - 1], base + open + 1)),
            )
        }
        None => (s, None),
    };
    match (head, body) {
        ("champernowne", None) => Ok(WordSpec::Champernowne),
        ("tm" | "thue-morse", None) => Ok(WordSpec::thue_morse()),
        ("tribonacci", None) => Ok(WordSpec::tribonacci()),
        ("fibonacci", None) => Ok(WordSpec::fibonacci()),
        ("fix", Some((args, at))) => {
            let [m, seed] = split_args::<2>(args, at)?;
            let morphism = parse_morphism(m.0, m.1)?;
            let seed = match parse_word_at(seed.0.trim(), seed.1)?.as_slice() {
                [a] => *a,
                _ => return Err(err(seed.1, "seed must be a single letter")),
            };
            Ok(WordSpec::MorphicFixedPoint { morphism, seed })
        }
        ("sturmian", Some((args, at))) => parse_directive(args, at),
        ("up", Some((args, at))) => {
            let [u, v] = split_args::<2>(args, at)?;
            Ok(WordSpec::UltimatelyPeriodic {
                prefix: parse_word_at(u.0.trim(), u.1)?,
                period: parse_word_at(v.0.trim(), v.1)?,
            })
        }
        ("lit", Some((args, at))) => Ok(WordSpec::Literal(parse_word_at(args.trim(), at)?)),
        ("img", Some((args, at))) => {
            let [m, inner] = split_args::<2>(args, at)?;
            Ok(WordSpec::MorphicImage {
                morphism: parse_morphism(m.0, m.1)?,
                inner: Box::new(parse_spec(inner.0, inner.1)?),
            })
        }
        ("pre", Some((args, at))) => {
            let [w, inner] = split_args::<2>(args, at)?;
            Ok(WordSpec::Prepend {
                prefix: parse_word_at(w.0.trim(), w.1)?,
                inner: Box::new(parse_spec(inner.0, inner.1)?),
            })
        }
        _ => Err(err(base, format!("unknown word spec '{s}'"))),
    }
}

/// Splits at the first `N - 1` commas outside parentheses; the last piece keeps the rest.
fn split_args<const N: usize>(s: &str, base: usize) -> Result<[(&str, usize); N]> {
    let mut parts = Vec::with_capacity(N);
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 && parts.len() + 1 < N => {
                parts.push((&s[start..i], base + start));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((&s[start..], base + start));
    parts
        .try_into()
        .map_err(|p: Vec<_>| err(base, format!("expected {N} arguments, found {}", p.len())))
}

fn parse_directive(args: &str, base: usize) -> Result<WordSpec> {
    let list = |s: &str, at: usize| -> Result<Vec<u32>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "...")
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| err(at, format!("'{t}' is not a directive entry")))
            })
            .collect()
    };
    let (preperiod, period) = match args.split_once(';') {
        Some((pre, per)) => (list(pre, base)?, list(per, base + pre.len() + 1)?),
        None => (Vec::new(), list(args, base)?),
    };
    Ok(WordSpec::SturmianDirective { preperiod, period })
}
