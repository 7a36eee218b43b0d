//! Overlap-based consistency checking.
//!
//! Each test word is collected two ways: a bracketed part is collected to its
//! normal form first, then the remaining syllables are multiplied in. A
//! consistent presentation yields the same normal word on both sides.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::collect::{CollectError, Collector};
use crate::presentation::PcPresentation;
use crate::word::{NormalWord, Word};

/// One overlap whose two collections disagree. A side is `None` when its
/// collection failed (step limit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub overlap: String,
    pub left: Option<NormalWord>,
    pub right: Option<NormalWord>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Option<NormalWord>| x.as_ref().map_or_else(|| "?".to_string(), |x| x.to_string());
        write!(f, "{}: {} vs {}", self.overlap, show(&self.left), show(&self.right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub violations: Vec<Violation>,
}

/// A side of an overlap: `prefix (bracket) suffix`, bracket collected first.
struct Side {
    prefix: Word,
    bracket: Word,
    suffix: Word,
}

impl Side {
    fn new(prefix: Word, bracket: Word, suffix: Word) -> Self {
        Side { prefix, bracket, suffix }
    }

    fn eval(&self, c: &mut Collector<'_>) -> Result<NormalWord, CollectError> {
        let inner = c.collect(&self.bracket)?;
        let word = self.prefix.concat(&inner.to_word()).concat(&self.suffix);
        c.collect(&word)
    }
}

fn syl(g: usize, e: impl Into<BigInt>) -> Word {
    Word::from_pairs([(g, e.into())])
}

fn cat(parts: &[&Word]) -> Word {
    let mut w = Word::identity();
    for p in parts {
        w.extend(p);
    }
    w
}

pub fn check_consistency(p: &PcPresentation) -> ConsistencyReport {
    check_consistency_with(p, &mut Collector::new(p))
}

/// As [`check_consistency`], reusing `collector` (and its step limit).
pub fn check_consistency_with(p: &PcPresentation, collector: &mut Collector<'_>) -> ConsistencyReport {
    let n = p.n();
    let one = BigInt::one();
    let mut violations = Vec::new();
    let mut test = |label: String, left: Side, right: Side| {
        let l = left.eval(collector);
        let r = right.eval(collector);
        match (l, r) {
            (Ok(l), Ok(r)) if l == r => {}
            (l, r) => violations.push(Violation { overlap: label, left: l.ok(), right: r.ok() }),
        }
    };
    let g = |i: usize| syl(i, 1);
    let id = Word::identity;

    // a_k (a_j a_i) = (a_k a_j) a_i, i < j <= k
    for k in 0..n {
        for j in 0..=k {
            for i in 0..j {
                test(
                    format!("g{} g{} g{}", k + 1, j + 1, i + 1),
                    Side::new(g(k), cat(&[&g(j), &g(i)]), id()),
                    Side::new(id(), cat(&[&g(k), &g(j)]), g(i)),
                );
            }
        }
    }

    for j in 0..n {
        if let Some(rj) = p.order(j) {
            let rj_minus = rj - &one;
            // (a_j^r_j) a_i = a_j^(r_j - 1) (a_j a_i), i < j
            for i in 0..j {
                test(
                    format!("g{}^{} g{}", j + 1, rj, i + 1),
                    Side::new(id(), syl(j, rj.clone()), g(i)),
                    Side::new(syl(j, rj_minus.clone()), cat(&[&g(j), &g(i)]), id()),
                );
            }
            // a_j (a_j^r_j) = (a_j^r_j) a_j
            test(
                format!("g{} g{}^{}", j + 1, j + 1, rj),
                Side::new(g(j), syl(j, rj.clone()), id()),
                Side::new(id(), syl(j, rj.clone()), g(j)),
            );
        }
        for i in 0..j {
            match p.order(i) {
                Some(ri) => {
                    // a_j (a_i^r_i) = (a_j a_i) a_i^(r_i - 1)
                    test(
                        format!("g{} g{}^{}", j + 1, i + 1, ri),
                        Side::new(g(j), syl(i, ri.clone()), id()),
                        Side::new(id(), cat(&[&g(j), &g(i)]), syl(i, ri - &one)),
                    );
                    if let Some(v) = p.conj_inv(j, i) {
                        // explicit a_j^{a_i^-1} against a_i a_j a_i^-1
                        test(
                            format!("conj {} -{}", j + 1, i + 1),
                            Side::new(id(), v.clone(), id()),
                            Side::new(id(), cat(&[&g(i), &g(j), &syl(i, -1)]), id()),
                        );
                    }
                }
                None => {
                    // (a_j a_i) a_i^-1 = a_j = (a_j a_i^-1) a_i
                    test(
                        format!("g{} g{} g{}^-1", j + 1, i + 1, i + 1),
                        Side::new(id(), cat(&[&g(j), &g(i)]), syl(i, -1)),
                        Side::new(id(), g(j), id()),
                    );
                    test(
                        format!("g{} g{}^-1 g{}", j + 1, i + 1, i + 1),
                        Side::new(id(), cat(&[&g(j), &syl(i, -1)]), g(i)),
                        Side::new(id(), g(j), id()),
                    );
                }
            }
            if !p.is_finite_gen(j) {
                // a_j^-1 (a_j a_i^{+-1}) = a_i^{+-1}
                let signs: &[i64] = if p.is_finite_gen(i) { &[1] } else { &[1, -1] };
                for &s in signs {
                    test(
                        format!("g{}^-1 g{} g{}^{}", j + 1, j + 1, i + 1, s),
                        Side::new(syl(j, -1), cat(&[&g(j), &syl(i, s)]), id()),
                        Side::new(id(), syl(i, s), id()),
                    );
                }
            }
        }
    }

    ConsistencyReport { consistent: violations.is_empty(), violations }
}
