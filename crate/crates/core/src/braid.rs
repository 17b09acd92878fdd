//! Braid words and the closure data needed for normalization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid token `{0}`")]
    Token(String),
    #[error("generator index 0 is not allowed")]
    ZeroIndex,
    #[error("strand count {strands} is too small for generator b{index}")]
    TooFewStrands { strands: usize, index: usize },
}

/// `b_index ^ exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub index: usize,
    pub exp: i32,
}

impl Syllable {
    pub fn new(index: usize, exp: i32) -> Syllable {
        assert!(index >= 1 && exp != 0, "invalid syllable b{index}^{exp}");
        Syllable { index, exp }
    }
}

/// Element of B_n as a reduced sequence of syllables: adjacent syllables
/// never share an index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    syllables: Vec<Syllable>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureData {
    pub exponent_sum: i64,
    pub components: usize,
    /// 2 for an odd number of components, 1 otherwise.
    pub epsilon: u8,
}

impl BraidWord {
    /// Builds a word, merging adjacent syllables with equal index.
    pub fn new(strands: usize, syllables: impl IntoIterator<Item = Syllable>) -> Result<Self, BraidError> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.index == 0 {
                return Err(BraidError::ZeroIndex);
            }
            if s.index >= strands {
                return Err(BraidError::TooFewStrands { strands, index: s.index });
            }
            push_merge(&mut out, s);
        }
        Ok(BraidWord { strands: strands.max(1), syllables: out })
    }

    /// Word from signed generator letters, strand count from the largest index.
    pub fn from_letters(letters: &[i32]) -> Self {
        let strands = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1;
        Self::with_strands(strands, letters)
    }

    pub fn with_strands(strands: usize, letters: &[i32]) -> Self {
        Self::new(
            strands,
            letters.iter().map(|&l| Syllable::new(l.unsigned_abs() as usize, l.signum())),
        )
        .expect("valid letters")
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), syllables: vec![] }
    }

    pub fn parse(text: &str) -> Result<Self, BraidError> {
        Self::parse_with_strands(text, None)
    }

    /// Parses whitespace-separated tokens `i`, `-i`, `i^k`, `-i^k`; the strand
    /// count defaults to the largest index plus one.
    pub fn parse_with_strands(text: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let mut syl = Vec::new();
        for tok in text.split_whitespace() {
            syl.push(parse_token(tok)?);
        }
        let needed = syl.iter().map(|s| s.index).max().unwrap_or(0) + 1;
        let n = match strands {
            Some(n) if n < needed => {
                let index = needed - 1;
                return Err(BraidError::TooFewStrands { strands: n, index });
            }
            Some(n) => n,
            None => needed,
        };
        Self::new(n, syl)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `b^k` as `|k|` letters.
    pub fn letter_count(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|s| s.exp as i64).sum()
    }

    /// The permutation induced on strands `0..n`, as images.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for s in &self.syllables {
            if s.exp % 2 != 0 {
                perm.swap(s.index - 1, s.index);
            }
        }
        perm
    }

    pub fn closure_components(&self) -> ClosureData {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut components = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        ClosureData {
            exponent_sum: self.exponent_sum(),
            components,
            epsilon: if components % 2 == 1 { 2 } else { 1 },
        }
    }

    /// Syllables in reverse order, exponents unchanged.
    pub fn reverse(&self) -> Self {
        BraidWord { strands: self.strands, syllables: self.syllables.iter().rev().copied().collect() }
    }

    /// Every exponent negated, order unchanged: the mirror image.
    pub fn dagger(&self) -> Self {
        BraidWord {
            strands: self.strands,
            syllables: self.syllables.iter().map(|s| Syllable { index: s.index, exp: -s.exp }).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        self.reverse().dagger()
    }

    /// Product `self * other` in the larger of the two braid groups.
    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_merge(&mut out, s);
        }
        BraidWord { strands: self.strands.max(other.strands), syllables: out }
    }

    /// The same word viewed in a braid group with more strands.
    pub fn with_strand_count(&self, strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, self.syllables.iter().copied())
    }

    /// Letters as signed indices, expanding powers.
    pub fn letters(&self) -> Vec<i32> {
        let mut out = Vec::new();
        for s in &self.syllables {
            for _ in 0..s.exp.unsigned_abs() {
                out.push(s.index as i32 * s.exp.signum());
            }
        }
        out
    }
}

fn push_merge(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exp == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.index == s.index {
            last.exp += s.exp;
            if last.exp == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(s);
}

fn parse_token(tok: &str) -> Result<Syllable, BraidError> {
    let bad = || BraidError::Token(tok.to_string());
    let (neg, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let (idx, exp) = match body.split_once('^') {
        Some((i, k)) => (i, k.parse::<i32>().map_err(|_| bad())?),
        None => (body, 1),
    };
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = idx.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(BraidError::ZeroIndex);
    }
    if exp == 0 {
        return Err(bad());
    }
    Ok(Syllable { index, exp: if neg { -exp } else { exp } })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| {
                let sign = if s.exp < 0 { "-" } else { "" };
                match s.exp.abs() {
                    1 => format!("{sign}{}", s.index),
                    k => format!("{sign}{}^{k}", s.index),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = BraidWord::parse("1^3").unwrap();
        assert_eq!(w.strands(), 2);
        assert_eq!(w.syllables(), &[Syllable::new(1, 3)]);
        let w = BraidWord::parse("1 -2 1 -2").unwrap();
        assert_eq!(w.strands(), 3);
        assert_eq!(w.exponent_sum(), 0);
        assert_eq!(BraidWord::parse("-1^2 2^2 -1 2").unwrap().exponent_sum(), 0);
        assert_eq!(BraidWord::parse("1 0 2"), Err(BraidError::ZeroIndex));
        assert!(BraidWord::parse("1 x").is_err());
        assert!(BraidWord::parse_with_strands("1 3", Some(3)).is_err());
    }

    #[test]
    fn merges_and_cancels() {
        let w = BraidWord::parse("1 2 -2 1").unwrap();
        assert_eq!(w.syllables(), &[Syllable::new(1, 2)]);
        assert_eq!(w.strands(), 3);
    }

    #[test]
    fn closure_examples() {
        let c = BraidWord::parse("1^3").unwrap().closure_components();
        assert_eq!((c.components, c.epsilon), (1, 2));
        let c = BraidWord::identity(3).closure_components();
        assert_eq!((c.components, c.epsilon), (3, 2));
        let c = BraidWord::parse("1^2").unwrap().closure_components();
        assert_eq!((c.components, c.epsilon), (2, 1));
    }

    #[test]
    fn reverse_and_dagger() {
        let w = BraidWord::parse("1 2^2").unwrap();
        assert_eq!(w.reverse().to_string(), "2^2 1");
        assert_eq!(BraidWord::parse("1 -2").unwrap().dagger().to_string(), "-1 2");
        let p = BraidWord::parse("1 2 1").unwrap();
        assert_eq!(p.reverse(), p);
    }
}
