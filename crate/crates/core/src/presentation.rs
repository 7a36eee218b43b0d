//! Polycyclic presentations and their line-oriented text format.
//!
//! A presentation on generators `a_1 .. a_n` has power relations
//! `a_k^{r_k} = u_k` for `k` in the finite-index set `I` and conjugation
//! relations `a_j^{a_i} = w_ij`, `a_j^{a_i^-1} = v_ij` for `i < j`. Every
//! right-hand side of a relation keyed by `i` only mentions generators with
//! index greater than `i`.
//!
//! ```text
//! pcp v1
//! gens 2
//! order 1 2
//! order 2 4
//! conj 2 1 = g2^3
//! ```

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::word::{parse_signed, Word, WordSyntaxError};

/// Largest generator count accepted from presentation text.
pub const MAX_TEXT_GENERATORS: usize = 1024;

pub const HEADER: &str = "pcp v1";

/// A violation of the presentation shape.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("generator g{index} is out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("relative order of g{gen} must be at least 2, got {order}")]
    BadOrder { gen: usize, order: BigInt },
    #[error("duplicate relation `{0}`")]
    Duplicate(String),
    #[error("power relation for g{0} given but g{0} has no relative order")]
    PowerWithoutOrder(usize),
    #[error("relation `{relation}`: right-hand side mentions g{found}, index must be greater than {bound}")]
    RhsIndex { relation: String, found: usize, bound: usize },
    #[error("conjugate relations need i < j, got `{0}`")]
    ConjOrder(String),
    #[error("missing relation `conj {j} {i}`")]
    MissingConj { j: usize, i: usize },
    #[error("missing relation `conj {j} -{i}` (g{i} has infinite order)")]
    MissingConjInverse { j: usize, i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordSyntaxError },
    #[error("line {line}: {source}")]
    ShapeAt { line: usize, source: ShapeError },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// An immutable, shape-checked polycyclic presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    n: usize,
    orders: Vec<Option<BigInt>>,
    /// Explicit power right-hand sides; `None` means the trivial word.
    power_rhs: Vec<Option<Word>>,
    /// `conj[j][i]` for `i < j`.
    conj: Vec<Vec<Word>>,
    conj_inv: Vec<Vec<Option<Word>>>,
    abelian_tail: usize,
}

/// Incremental construction with per-relation shape checks. Indices are 0-based.
#[derive(Debug, Clone)]
pub struct PresentationBuilder {
    n: usize,
    orders: Vec<Option<BigInt>>,
    power_rhs: Vec<Option<Word>>,
    conj: Vec<Vec<Option<Word>>>,
    conj_inv: Vec<Vec<Option<Word>>>,
}

impl PresentationBuilder {
    pub fn new(n: usize) -> Self {
        PresentationBuilder {
            n,
            orders: vec![None; n],
            power_rhs: vec![None; n],
            conj: (0..n).map(|j| vec![None; j]).collect(),
            conj_inv: (0..n).map(|j| vec![None; j]).collect(),
        }
    }

    fn check_gen(&self, g: usize) -> Result<(), ShapeError> {
        if g >= self.n {
            Err(ShapeError::GeneratorOutOfRange { index: g + 1, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_rhs(&self, relation: impl Fn() -> String, rhs: &Word, bound: usize) -> Result<(), ShapeError> {
        for s in rhs.syllables() {
            self.check_gen(s.gen)?;
            if s.gen <= bound {
                return Err(ShapeError::RhsIndex { relation: relation(), found: s.gen + 1, bound: bound + 1 });
            }
        }
        Ok(())
    }

    pub fn order(&mut self, gen: usize, order: impl Into<BigInt>) -> Result<&mut Self, ShapeError> {
        let order = order.into();
        self.check_gen(gen)?;
        if order < BigInt::from(2) {
            return Err(ShapeError::BadOrder { gen: gen + 1, order });
        }
        if self.orders[gen].is_some() {
            return Err(ShapeError::Duplicate(format!("order {}", gen + 1)));
        }
        self.orders[gen] = Some(order);
        Ok(self)
    }

    pub fn power(&mut self, gen: usize, rhs: Word) -> Result<&mut Self, ShapeError> {
        self.check_gen(gen)?;
        self.check_rhs(|| format!("pow {} = {rhs}", gen + 1), &rhs, gen)?;
        if self.power_rhs[gen].is_some() {
            return Err(ShapeError::Duplicate(format!("pow {}", gen + 1)));
        }
        self.power_rhs[gen] = Some(rhs);
        Ok(self)
    }

    /// `a_j^{a_i} = rhs`.
    pub fn conj(&mut self, j: usize, i: usize, rhs: Word) -> Result<&mut Self, ShapeError> {
        self.set_conj(j, i, rhs, false)
    }

    /// `a_j^{a_i^-1} = rhs`.
    pub fn conj_inv(&mut self, j: usize, i: usize, rhs: Word) -> Result<&mut Self, ShapeError> {
        self.set_conj(j, i, rhs, true)
    }

    fn set_conj(&mut self, j: usize, i: usize, rhs: Word, inverse: bool) -> Result<&mut Self, ShapeError> {
        self.check_gen(j)?;
        self.check_gen(i)?;
        let sign = if inverse { "-" } else { "" };
        let label = || format!("conj {} {sign}{} = {rhs}", j + 1, i + 1);
        if i >= j {
            return Err(ShapeError::ConjOrder(label()));
        }
        self.check_rhs(label, &rhs, i)?;
        let slot = if inverse { &mut self.conj_inv[j][i] } else { &mut self.conj[j][i] };
        if slot.is_some() {
            return Err(ShapeError::Duplicate(format!("conj {} {sign}{}", j + 1, i + 1)));
        }
        *slot = Some(rhs);
        Ok(self)
    }

    pub fn build(self) -> Result<PcPresentation, ShapeError> {
        if self.n == 0 {
            return Err(ShapeError::NoGenerators);
        }
        for (g, p) in self.power_rhs.iter().enumerate() {
            if p.is_some() && self.orders[g].is_none() {
                return Err(ShapeError::PowerWithoutOrder(g + 1));
            }
        }
        let mut conj = Vec::with_capacity(self.n);
        for (j, row) in self.conj.into_iter().enumerate() {
            let mut out = Vec::with_capacity(j);
            for (i, w) in row.into_iter().enumerate() {
                out.push(w.ok_or(ShapeError::MissingConj { j: j + 1, i: i + 1 })?);
            }
            conj.push(out);
        }
        for (j, row) in self.conj_inv.iter().enumerate() {
            for (i, w) in row.iter().enumerate() {
                if w.is_none() && self.orders[i].is_none() {
                    return Err(ShapeError::MissingConjInverse { j: j + 1, i: i + 1 });
                }
            }
        }
        let mut p = PcPresentation {
            n: self.n,
            orders: self.orders,
            power_rhs: self.power_rhs,
            conj,
            conj_inv: self.conj_inv,
            abelian_tail: 0,
        };
        p.abelian_tail = p.compute_abelian_tail();
        Ok(p)
    }
}

impl PcPresentation {
    pub fn builder(n: usize) -> PresentationBuilder {
        PresentationBuilder::new(n)
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self, gen: usize) -> Option<&BigInt> {
        self.orders[gen].as_ref()
    }

    pub fn is_finite_gen(&self, gen: usize) -> bool {
        self.orders[gen].is_some()
    }

    /// True when every generator has a relative order (the group is finite).
    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(Option::is_some)
    }

    /// Explicit power right-hand side, if one was given.
    pub fn power_rhs(&self, gen: usize) -> Option<&Word> {
        self.power_rhs[gen].as_ref()
    }

    pub fn conj(&self, j: usize, i: usize) -> &Word {
        &self.conj[j][i]
    }

    /// Explicit inverse-conjugation right-hand side, if one was given.
    pub fn conj_inv(&self, j: usize, i: usize) -> Option<&Word> {
        self.conj_inv[j][i].as_ref()
    }

    /// Number of generators with infinite relative order.
    pub fn hirsch_length(&self) -> usize {
        self.orders.iter().filter(|o| o.is_none()).count()
    }

    /// `∏ r_i` when every generator is finite.
    pub fn finite_order(&self) -> Option<BigInt> {
        self.orders.iter().try_fold(BigInt::one(), |acc, o| o.as_ref().map(|r| acc * r))
    }

    /// Smallest `t` such that the generators `a_t .. a_n` pairwise commute
    /// and have trivial power relations, read syntactically off the relations.
    pub fn abelian_tail(&self) -> usize {
        self.abelian_tail
    }

    /// Whether `a_j^{a_i} = a_j` and `a_j^{a_i^-1} = a_j` hold syntactically.
    pub fn commutes_syntactically(&self, j: usize, i: usize) -> bool {
        let fixed = |w: &Word| w == &Word::generator(j);
        fixed(&self.conj[j][i]) && self.conj_inv[j][i].as_ref().is_none_or(fixed)
    }

    fn power_trivial(&self, gen: usize) -> bool {
        self.power_rhs[gen].as_ref().is_none_or(Word::is_empty)
    }

    fn compute_abelian_tail(&self) -> usize {
        let mut t = self.n - 1;
        if !self.power_trivial(t) {
            return self.n;
        }
        while t > 0 {
            let g = t - 1;
            if !self.power_trivial(g) || !(t..self.n).all(|h| self.commutes_syntactically(h, g)) {
                break;
            }
            t = g;
        }
        t
    }

    /// Canonical text form; `parse` of the output reproduces `self` and
    /// re-serializes to identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "gens {}", self.n);
        for (g, o) in self.orders.iter().enumerate() {
            if let Some(r) = o {
                let _ = writeln!(out, "order {} {r}", g + 1);
            }
        }
        for (g, p) in self.power_rhs.iter().enumerate() {
            if let Some(w) = p {
                let _ = writeln!(out, "pow {} = {w}", g + 1);
            }
        }
        for j in 0..self.n {
            for i in 0..j {
                let _ = writeln!(out, "conj {} {} = {}", j + 1, i + 1, self.conj[j][i]);
                if let Some(w) = &self.conj_inv[j][i] {
                    let _ = writeln!(out, "conj {} -{} = {w}", j + 1, i + 1);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parse_presentation(text)
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => line[..k].trim(),
        None => line.trim(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, PresentationError> {
    match tok.parse::<usize>() {
        Ok(i) if i >= 1 && tok.bytes().all(|b| b.is_ascii_digit()) => Ok(i - 1),
        _ => Err(PresentationError::Syntax { line, message: format!("bad generator index `{tok}`") }),
    }
}

/// Parses the `pcp v1` text format.
pub fn parse_presentation(text: &str) -> Result<PcPresentation, PresentationError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());

    let syntax = |line: usize, message: &str| PresentationError::Syntax { line, message: message.to_string() };

    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((line, _)) => return Err(syntax(line, "expected header `pcp v1`")),
        None => return Err(syntax(1, "empty presentation")),
    }
    let mut builder = match lines.next() {
        Some((line, l)) => {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["gens", n] if n.bytes().all(|b| b.is_ascii_digit()) => match n.parse::<usize>() {
                    Ok(n) if (1..=MAX_TEXT_GENERATORS).contains(&n) => PresentationBuilder::new(n),
                    _ => return Err(syntax(line, "`gens` needs an integer in 1..=1024")),
                },
                _ => return Err(syntax(line, "expected `gens <n>`")),
            }
        }
        None => return Err(syntax(1, "missing `gens` line")),
    };

    for (line, l) in lines {
        let at = |source: ShapeError| PresentationError::ShapeAt { line, source };
        let (lhs, rhs) = match l.split_once('=') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (l, None),
        };
        let word = |rhs: Option<&str>| -> Result<Word, PresentationError> {
            let rhs = rhs.ok_or_else(|| syntax(line, "missing `= <word>`"))?;
            rhs.parse::<Word>().map_err(|source| PresentationError::Word { line, source })
        };
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        match toks.as_slice() {
            ["order", i, r] if rhs.is_none() => {
                let i = parse_index(i, line)?;
                let r = parse_signed(r).ok_or_else(|| syntax(line, "bad relative order"))?;
                builder.order(i, r).map_err(at)?;
            }
            ["pow", i] => {
                let i = parse_index(i, line)?;
                builder.power(i, word(rhs)?).map_err(at)?;
            }
            ["conj", j, i] => {
                let j = parse_index(j, line)?;
                let w = word(rhs)?;
                match i.strip_prefix('-') {
                    Some(i) => builder.conj_inv(j, parse_index(i, line)?, w).map_err(at)?,
                    None => builder.conj(j, parse_index(i, line)?, w).map_err(at)?,
                };
            }
            ["gens", ..] => return Err(syntax(line, "duplicate `gens` line")),
            _ => return Err(syntax(line, "unrecognized line")),
        }
    }
    Ok(builder.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D4: &str = "pcp v1\ngens 2\norder 1 2\norder 2 4\nconj 2 1 = g2^3\n";

    #[test]
    fn parses_d4() {
        let p = parse_presentation(D4).unwrap();
        assert_eq!(p.n(), 2);
        assert!(p.is_finite_gen(0) && p.is_finite_gen(1));
        assert_eq!(p.order(1), Some(&BigInt::from(4)));
        assert_eq!(p.conj(1, 0), &"g2^3".parse::<Word>().unwrap());
        assert_eq!(p.hirsch_length(), 0);
        assert_eq!(p.finite_order(), Some(BigInt::from(8)));
    }

    #[test]
    fn parses_heisenberg_with_comments() {
        let text = "# Heisenberg\npcp v1\ngens 3\nconj 2 1 = g2 g3\nconj 2 -1 = g2 g3^-1  # inverse\n\
                    conj 3 1 = g3\nconj 3 -1 = g3\nconj 3 2 = g3\nconj 3 -2 = g3\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.hirsch_length(), 3);
        assert_eq!(p.abelian_tail(), 1);
    }

    #[test]
    fn rejects_rhs_pointing_upward() {
        let err = parse_presentation("pcp v1\ngens 2\norder 1 2\nconj 2 1 = g1\n").unwrap_err();
        assert!(matches!(
            err,
            PresentationError::ShapeAt { line: 4, source: ShapeError::RhsIndex { found: 1, bound: 1, .. } }
        ));
    }

    #[test]
    fn rejects_missing_inverse_conjugate_for_infinite_generator() {
        let err = parse_presentation("pcp v1\ngens 2\nconj 2 1 = g2\n").unwrap_err();
        assert_eq!(err, PresentationError::Shape(ShapeError::MissingConjInverse { j: 2, i: 1 }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_presentation("pcp v1\ngens 2\norder 1 2\nconj 2 1 = h2\n").unwrap_err();
        assert!(matches!(err, PresentationError::Word { line: 4, .. }));
        let err = parse_presentation("pcp v2\n").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 1, .. }));
        let err = parse_presentation("pcp v1\ngens 2\norder 1 1\n").unwrap_err();
        assert!(matches!(err, PresentationError::ShapeAt { line: 3, source: ShapeError::BadOrder { .. } }));
        let err = parse_presentation("pcp v1\ngens 2\norder 1 2\nconj 2 1 = g2\nconj 2 1 = g2\n").unwrap_err();
        assert!(matches!(err, PresentationError::ShapeAt { line: 5, source: ShapeError::Duplicate(_) }));
        let err = parse_presentation("pcp v1\ngens 2\nconj 1 2 = g2\n").unwrap_err();
        assert!(matches!(err, PresentationError::ShapeAt { source: ShapeError::ConjOrder(_), .. }));
    }

    #[test]
    fn canonical_text_round_trip() {
        let p = parse_presentation(D4).unwrap();
        assert_eq!(p.to_text(), D4);
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn abelian_tail_of_finite_abelian_group() {
        let p = parse_presentation("pcp v1\ngens 2\norder 1 2\norder 2 3\nconj 2 1 = g2\n").unwrap();
        assert_eq!(p.abelian_tail(), 0);
        let p = parse_presentation("pcp v1\ngens 2\norder 1 2\norder 2 3\npow 1 = g2\nconj 2 1 = g2\n").unwrap();
        assert_eq!(p.abelian_tail(), 1);
    }
}
