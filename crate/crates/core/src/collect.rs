//! Collection from the left: the word problem for consistent presentations.
//!
//! The collected prefix is held as an exponent vector. Multiplying it by a
//! syllable `a_g^k` splits the prefix as `P a_g^{e_g} S` with `S` over
//! generators above `g`, moves the whole syllable past `S` at once using
//! `S a_g^k = a_g^k S^{a_g^k}` and then multiplies the conjugated tail back
//! in. Conjugates `a_h^{a_g^k}` are computed by repeated squaring of the
//! automorphism induced by `a_g` and cached for the lifetime of the
//! [`Collector`]. Exponents are arbitrary precision throughout.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::presentation::PcPresentation;
use crate::word::{NormalWord, Word};

/// Default bound on rewriting steps per top-level call.
pub const DEFAULT_STEP_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectError {
    #[error("collection exceeded the limit of {limit} rewriting steps")]
    StepLimit { limit: u64 },
    #[error("generator g{index} is out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("normal word has {got} components, presentation has {n} generators")]
    LengthMismatch { got: usize, n: usize },
}

type Vector = Vec<BigInt>;

/// Rewriting engine bound to one presentation.
///
/// Holds caches of conjugation images, so reuse one collector for many
/// operations on the same group. The step counter is reset at the start of
/// every public operation.
pub struct Collector<'p> {
    pres: &'p PcPresentation,
    step_limit: u64,
    steps: u64,
    conj_cache: HashMap<(usize, usize, BigInt), Rc<Vector>>,
    pow_cache: Vec<Option<Rc<Vector>>>,
}

fn unit(n: usize, h: usize) -> Vector {
    let mut v = vec![BigInt::zero(); n];
    v[h] = BigInt::one();
    v
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

impl<'p> Collector<'p> {
    pub fn new(pres: &'p PcPresentation) -> Self {
        Self::with_step_limit(pres, DEFAULT_STEP_LIMIT)
    }

    pub fn with_step_limit(pres: &'p PcPresentation, step_limit: u64) -> Self {
        Collector { pres, step_limit, steps: 0, conj_cache: HashMap::new(), pow_cache: vec![None; pres.n()] }
    }

    pub fn presentation(&self) -> &'p PcPresentation {
        self.pres
    }

    /// Rewriting steps used by the most recent public operation.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn identity(&self) -> NormalWord {
        NormalWord::identity(self.pres.n())
    }

    fn check_word(&self, w: &Word) -> Result<(), CollectError> {
        let n = self.pres.n();
        match w.max_generator() {
            Some(g) if g >= n => Err(CollectError::GeneratorOutOfRange { index: g + 1, n }),
            _ => Ok(()),
        }
    }

    fn check_normal(&self, x: &NormalWord) -> Result<(), CollectError> {
        let n = self.pres.n();
        if x.len() != n {
            Err(CollectError::LengthMismatch { got: x.len(), n })
        } else {
            Ok(())
        }
    }

    /// The normal word of `w`.
    pub fn collect(&mut self, w: &Word) -> Result<NormalWord, CollectError> {
        self.check_word(w)?;
        self.steps = 0;
        let mut e = vec![BigInt::zero(); self.pres.n()];
        self.mul_word(&mut e, w)?;
        Ok(NormalWord::from_exponents(e))
    }

    pub fn multiply(&mut self, x: &NormalWord, y: &NormalWord) -> Result<NormalWord, CollectError> {
        self.check_normal(x)?;
        self.check_normal(y)?;
        self.steps = 0;
        let mut e = x.exponents().to_vec();
        self.mul_normal(&mut e, y.exponents())?;
        Ok(NormalWord::from_exponents(e))
    }

    /// `x * w` for an arbitrary word `w`.
    pub fn multiply_word(&mut self, x: &NormalWord, w: &Word) -> Result<NormalWord, CollectError> {
        self.check_normal(x)?;
        self.check_word(w)?;
        self.steps = 0;
        let mut e = x.exponents().to_vec();
        self.mul_word(&mut e, w)?;
        Ok(NormalWord::from_exponents(e))
    }

    pub fn inverse(&mut self, x: &NormalWord) -> Result<NormalWord, CollectError> {
        self.check_normal(x)?;
        self.steps = 0;
        self.inverse_vec(x.exponents()).map(NormalWord::from_exponents)
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&mut self, x: &NormalWord, y: &NormalWord) -> Result<NormalWord, CollectError> {
        self.check_normal(x)?;
        self.check_normal(y)?;
        self.steps = 0;
        let mut e = self.inverse_vec(y.exponents())?;
        self.mul_normal(&mut e, x.exponents())?;
        self.mul_normal(&mut e, y.exponents())?;
        Ok(NormalWord::from_exponents(e))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&mut self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, CollectError> {
        self.check_normal(a)?;
        self.check_normal(b)?;
        self.steps = 0;
        let mut ba = b.exponents().to_vec();
        self.mul_normal(&mut ba, a.exponents())?;
        let mut e = self.inverse_vec(&ba)?;
        self.mul_normal(&mut e, a.exponents())?;
        self.mul_normal(&mut e, b.exponents())?;
        Ok(NormalWord::from_exponents(e))
    }

    pub fn power(&mut self, x: &NormalWord, k: &BigInt) -> Result<NormalWord, CollectError> {
        self.check_normal(x)?;
        self.steps = 0;
        self.power_vec(x.exponents(), k).map(NormalWord::from_exponents)
    }

    /// `a_j^{a_i^-1}` as a normal word, whether given explicitly or derived.
    pub fn conj_inv_image(&mut self, j: usize, i: usize) -> Result<NormalWord, CollectError> {
        self.steps = 0;
        let v = self.conj_image(i, j, &BigInt::from(-1))?;
        Ok(NormalWord::from_exponents(v.as_ref().clone()))
    }

    fn tick(&mut self) -> Result<(), CollectError> {
        self.steps += 1;
        if self.steps > self.step_limit {
            Err(CollectError::StepLimit { limit: self.step_limit })
        } else {
            Ok(())
        }
    }

    fn mul_word(&mut self, e: &mut [BigInt], w: &Word) -> Result<(), CollectError> {
        for s in w.syllables() {
            self.mul_syllable(e, s.gen, &s.exp)?;
        }
        Ok(())
    }

    fn mul_normal(&mut self, e: &mut [BigInt], x: &[BigInt]) -> Result<(), CollectError> {
        for (h, f) in x.iter().enumerate() {
            if !f.is_zero() {
                self.mul_syllable(e, h, f)?;
            }
        }
        Ok(())
    }

    /// `e <- e * a_g^k`.
    fn mul_syllable(&mut self, e: &mut [BigInt], g: usize, k: &BigInt) -> Result<(), CollectError> {
        if k.is_zero() {
            return Ok(());
        }
        self.tick()?;
        let pres = self.pres;
        let in_tail = g >= pres.abelian_tail();
        if in_tail || is_zero_vec(&e[g + 1..]) {
            e[g] += k;
            if let Some(r) = pres.order(g) {
                let (q, m) = e[g].div_mod_floor(r);
                e[g] = m;
                // Inside the abelian tail power relations are trivial.
                if !q.is_zero() && !in_tail {
                    let u = self.pow_normal(g)?;
                    self.mul_power(e, &u, &q)?;
                }
            }
            return Ok(());
        }

        let suffix: Vector = e[g + 1..].iter_mut().map(std::mem::take).collect();
        match pres.order(g) {
            Some(r) => {
                // a_g^k = a_g^kred u^q0 with 0 <= kred < r; the carry q1 of
                // e_g + kred is at most one.
                let (q0, kred) = k.div_mod_floor(r);
                let (q1, m) = (&e[g] + &kred).div_mod_floor(r);
                e[g] = m;
                if !q1.is_zero() {
                    let u = self.pow_normal(g)?;
                    self.mul_power(e, &u, &q1)?;
                }
                self.mul_conjugated_suffix(e, g, &suffix, &kred)?;
                if !q0.is_zero() {
                    let u = self.pow_normal(g)?;
                    self.mul_power(e, &u, &q0)?;
                }
            }
            None => {
                e[g] += k;
                self.mul_conjugated_suffix(e, g, &suffix, k)?;
            }
        }
        Ok(())
    }

    /// `e <- e * S^{a_g^k}` where `suffix` holds the exponents of `S`
    /// on generators `g+1..n`.
    fn mul_conjugated_suffix(
        &mut self,
        e: &mut [BigInt],
        g: usize,
        suffix: &[BigInt],
        k: &BigInt,
    ) -> Result<(), CollectError> {
        for (off, f) in suffix.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let h = g + 1 + off;
            let c = self.conj_image(g, h, k)?;
            self.mul_power(e, &c, f)?;
        }
        Ok(())
    }

    /// `e <- e * x^f`.
    fn mul_power(&mut self, e: &mut [BigInt], x: &[BigInt], f: &BigInt) -> Result<(), CollectError> {
        if f.is_zero() {
            return Ok(());
        }
        if let Some(start) = x.iter().position(|c| !c.is_zero()) {
            let single = x[start + 1..].iter().all(Zero::is_zero);
            if single || start >= self.pres.abelian_tail() {
                for (l, c) in x.iter().enumerate().skip(start) {
                    if !c.is_zero() {
                        self.mul_syllable(e, l, &(c * f))?;
                    }
                }
            } else {
                let p = self.power_vec(x, f)?;
                self.mul_normal(e, &p)?;
            }
        }
        Ok(())
    }

    fn inverse_vec(&mut self, x: &[BigInt]) -> Result<Vector, CollectError> {
        let mut e = vec![BigInt::zero(); x.len()];
        for (h, f) in x.iter().enumerate().rev() {
            if !f.is_zero() {
                self.mul_syllable(&mut e, h, &-f)?;
            }
        }
        Ok(e)
    }

    fn power_vec(&mut self, x: &[BigInt], k: &BigInt) -> Result<Vector, CollectError> {
        let n = x.len();
        if k.is_zero() || is_zero_vec(x) {
            return Ok(vec![BigInt::zero(); n]);
        }
        let mut result = vec![BigInt::zero(); n];
        let start = x.iter().position(|c| !c.is_zero()).unwrap_or(n);
        let single = x[start + 1..].iter().all(Zero::is_zero);
        if single || start >= self.pres.abelian_tail() {
            self.mul_power(&mut result, x, k)?;
            return Ok(result);
        }
        let base = if k.is_negative() { self.inverse_vec(x)? } else { x.to_vec() };
        let mag = k.magnitude();
        for bit in (0..mag.bits()).rev() {
            let sq = result.clone();
            self.mul_normal(&mut result, &sq)?;
            if mag.bit(bit) {
                self.mul_normal(&mut result, &base)?;
            }
        }
        Ok(result)
    }

    /// Normal form of the power relation right-hand side `a_g^{r_g}`.
    fn pow_normal(&mut self, g: usize) -> Result<Rc<Vector>, CollectError> {
        if let Some(v) = &self.pow_cache[g] {
            return Ok(v.clone());
        }
        let mut e = vec![BigInt::zero(); self.pres.n()];
        if let Some(w) = self.pres.power_rhs(g) {
            self.mul_word(&mut e, w)?;
        }
        let v = Rc::new(e);
        self.pow_cache[g] = Some(v.clone());
        Ok(v)
    }

    /// `a_h^{a_g^k}` for `g < h`, as a normal word over generators above `g`.
    fn conj_image(&mut self, g: usize, h: usize, k: &BigInt) -> Result<Rc<Vector>, CollectError> {
        let n = self.pres.n();
        if k.is_zero() || self.pres.commutes_syntactically(h, g) {
            return Ok(Rc::new(unit(n, h)));
        }
        let key = (g, h, k.clone());
        if let Some(v) = self.conj_cache.get(&key) {
            return Ok(v.clone());
        }
        let image = if k.is_one() {
            let mut e = vec![BigInt::zero(); n];
            self.mul_word(&mut e, self.pres.conj(h, g))?;
            e
        } else if k == &BigInt::from(-1) {
            let mut e = vec![BigInt::zero(); n];
            match self.pres.conj_inv(h, g) {
                Some(w) => self.mul_word(&mut e, w)?,
                None => {
                    // Derived for finite a_g: collect a_g a_h a_g^-1.
                    let pres = self.pres;
                    self.mul_syllable(&mut e, g, &BigInt::one())?;
                    self.mul_syllable(&mut e, h, &BigInt::one())?;
                    self.mul_syllable(&mut e, g, &BigInt::from(-1))?;
                    debug_assert!(pres.is_finite_gen(g));
                }
            }
            e
        } else {
            let half: BigInt = k / 2;
            let rem: BigInt = k - &half * 2;
            let y = self.conj_image(g, h, &half)?;
            let z = self.apply_conjugation(g, &half, &y)?;
            if rem.is_zero() {
                z
            } else {
                self.apply_conjugation(g, &rem, &z)?
            }
        };
        let v = Rc::new(image);
        self.conj_cache.insert(key, v.clone());
        Ok(v)
    }

    /// `y^{a_g^k}` for `y` over generators above `g`.
    fn apply_conjugation(&mut self, g: usize, k: &BigInt, y: &[BigInt]) -> Result<Vector, CollectError> {
        let mut out = vec![BigInt::zero(); y.len()];
        for (l, f) in y.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            debug_assert!(l > g);
            let c = self.conj_image(g, l, k)?;
            self.mul_power(&mut out, &c, f)?;
        }
        Ok(out)
    }
}

/// Collects `w` with a fresh collector and the default step limit.
pub fn collect(p: &PcPresentation, w: &Word) -> Result<NormalWord, CollectError> {
    Collector::new(p).collect(w)
}

pub fn multiply(p: &PcPresentation, x: &NormalWord, y: &NormalWord) -> Result<NormalWord, CollectError> {
    Collector::new(p).multiply(x, y)
}

pub fn inverse(p: &PcPresentation, x: &NormalWord) -> Result<NormalWord, CollectError> {
    Collector::new(p).inverse(x)
}

pub fn conjugate(p: &PcPresentation, x: &NormalWord, y: &NormalWord) -> Result<NormalWord, CollectError> {
    Collector::new(p).conjugate(x, y)
}

pub fn commutator(p: &PcPresentation, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, CollectError> {
    Collector::new(p).commutator(a, b)
}

pub fn power(p: &PcPresentation, x: &NormalWord, k: &BigInt) -> Result<NormalWord, CollectError> {
    Collector::new(p).power(x, k)
}

/// True when `0 <= e_i < r_i` for every finite generator.
pub fn is_normal_range(p: &PcPresentation, x: &NormalWord) -> bool {
    x.len() == p.n()
        && x.exponents().iter().enumerate().all(|(i, e)| match p.order(i) {
            Some(r) => !e.is_negative() && e < r,
            None => true,
        })
}
