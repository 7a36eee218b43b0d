#![allow(dead_code)]

use pcgroup_core::conjugacy::{sample_subgroup_word, SubgroupWord};
use pcgroup_core::kex::{AagParams, NcdhParams};
use pcgroup_core::random::{sample_word, WordParams};
use pcgroup_core::{Collector, GroupSpec, NormalWord, Word};
use rand::Rng;

/// A random element: a random word over the generators in `gens`, collected.
pub fn random_element<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    gens: std::ops::Range<usize>,
    params: WordParams,
) -> NormalWord {
    let w = sample_word(rng, gens.len(), params);
    let shifted = Word::from_pairs(w.syllables().iter().map(|s| (s.gen + gens.start, s.exp.clone())));
    Collector::new(g.presentation()).collect(&shifted).expect("collection within step limit")
}

pub struct AagInstance {
    pub params: AagParams,
    pub a: SubgroupWord,
    pub b: SubgroupWord,
}

pub fn aag_instance<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    gens: usize,
    elem: WordParams,
    secret: WordParams,
) -> AagInstance {
    let n = g.n();
    let s = (0..gens).map(|_| random_element(rng, g, 0..n, elem)).collect();
    let t = (0..gens).map(|_| random_element(rng, g, 0..n, elem)).collect();
    let params = AagParams::new(g.clone(), s, t).expect("valid params");
    let a = sample_subgroup_word(rng, gens, secret);
    let b = sample_subgroup_word(rng, gens, secret);
    AagInstance { params, a, b }
}

pub struct NcdhInstance {
    pub params: NcdhParams,
    pub w: SubgroupWord,
    pub v: SubgroupWord,
}

/// `S` from the first factor of a direct product with `n1` generators in the
/// first factor, `T` from the second.
pub fn ncdh_instance<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    n1: usize,
    elem: WordParams,
    secret: WordParams,
) -> NcdhInstance {
    let n = g.n();
    let s = (0..2).map(|_| random_element(rng, g, 0..n1, elem)).collect();
    let t = (0..2).map(|_| random_element(rng, g, n1..n, elem)).collect();
    let u = random_element(rng, g, 0..n, elem);
    let params = NcdhParams::new(g.clone(), u, s, t).expect("factors commute");
    let w = sample_subgroup_word(rng, 2, secret);
    let v = sample_subgroup_word(rng, 2, secret);
    NcdhInstance { params, w, v }
}
