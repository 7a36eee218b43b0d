//! Words in the generators of a polycyclic presentation and their normal forms.
//!
//! Generator indices are 0-based in memory and 1-based in text (`g1` is
//! index 0).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordSyntaxError {
    #[error("unexpected token `{0}` (expected `g<i>`, `g<i>^<e>` or `id`)")]
    BadToken(String),
    #[error("generator index must be at least 1 in `{0}`")]
    ZeroIndex(String),
    #[error("zero exponent in `{0}`")]
    ZeroExponent(String),
    #[error("`id` cannot be combined with other syllables")]
    MixedIdentity,
    #[error("empty word (use `id` for the identity)")]
    Empty,
    #[error("bad normal word component `{0}`")]
    BadComponent(String),
}

/// One generator power `a_gen^exp` with `exp != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: BigInt,
}

impl Syllable {
    /// Returns `None` for a zero exponent.
    pub fn new(gen: usize, exp: impl Into<BigInt>) -> Option<Self> {
        let exp = exp.into();
        if exp.is_zero() {
            None
        } else {
            Some(Syllable { gen, exp })
        }
    }
}

/// An unreduced product of generator powers. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word { syllables: vec![Syllable { gen, exp: BigInt::one() }] }
    }

    /// Builds a word from `(generator, exponent)` pairs, dropping zero exponents.
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        Word { syllables: pairs.into_iter().filter_map(|(g, e)| Syllable::new(g, e)).collect() }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends `a_gen^exp`; a zero exponent is ignored.
    pub fn push(&mut self, gen: usize, exp: impl Into<BigInt>) {
        if let Some(s) = Syllable::new(gen, exp) {
            self.syllables.push(s);
        }
    }

    pub fn extend(&mut self, other: &Word) {
        self.syllables.extend(other.syllables.iter().cloned());
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// The formal inverse: syllables reversed with negated exponents.
    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|s| Syllable { gen: s.gen, exp: -&s.exp }).collect() }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    pub fn min_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).min()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("id");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if s.exp.is_one() {
                write!(f, "g{}", s.gen + 1)?;
            } else {
                write!(f, "g{}^{}", s.gen + 1, s.exp)?;
            }
        }
        Ok(())
    }
}

fn parse_syllable(tok: &str) -> Result<Syllable, WordSyntaxError> {
    let bad = || WordSyntaxError::BadToken(tok.to_string());
    let rest = tok.strip_prefix('g').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let idx: usize = idx.parse().map_err(|_| bad())?;
    if idx == 0 {
        return Err(WordSyntaxError::ZeroIndex(tok.to_string()));
    }
    let exp = match exp {
        None => BigInt::one(),
        Some(e) => parse_signed(e).ok_or_else(bad)?,
    };
    Syllable::new(idx - 1, exp).ok_or_else(|| WordSyntaxError::ZeroExponent(tok.to_string()))
}

/// Strict signed decimal: optional `-` or `+`, then at least one digit.
pub(crate) fn parse_signed(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Word {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.as_slice() {
            [] => Err(WordSyntaxError::Empty),
            ["id"] => Ok(Word::identity()),
            _ => {
                let mut syllables = Vec::with_capacity(tokens.len());
                for tok in tokens {
                    if tok == "id" {
                        return Err(WordSyntaxError::MixedIdentity);
                    }
                    syllables.push(parse_syllable(tok)?);
                }
                Ok(Word { syllables })
            }
        }
    }
}

/// The exponent vector `(e_1, ..., e_n)` of a normal word `a_1^e_1 ... a_n^e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord(Vec<BigInt>);

impl NormalWord {
    pub fn identity(n: usize) -> Self {
        NormalWord(vec![BigInt::zero(); n])
    }

    pub fn generator(n: usize, gen: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[gen] = BigInt::one();
        NormalWord(v)
    }

    pub fn from_exponents(exponents: Vec<BigInt>) -> Self {
        NormalWord(exponents)
    }

    pub fn from_i64s(exponents: &[i64]) -> Self {
        NormalWord(exponents.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The word `a_1^e_1 ... a_n^e_n` with zero exponents omitted.
    pub fn to_word(&self) -> Word {
        Word::from_pairs(self.0.iter().cloned().enumerate())
    }

    /// Largest absolute exponent, in bits.
    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(|e| e.abs().bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalWord {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WordSyntaxError::Empty);
        }
        s.split(',')
            .map(|c| parse_signed(c.trim()).ok_or_else(|| WordSyntaxError::BadComponent(c.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(NormalWord)
    }
}
