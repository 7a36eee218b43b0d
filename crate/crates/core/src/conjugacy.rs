//! Conjugacy search.
//!
//! * [`conjugacy_search_finite`]: orbit-stabilizer under the conjugation
//!   action of a finite acting subgroup. Returns the centralizer of the
//!   target as Schreier generators, or proves non-conjugacy.
//! * [`conjugacy_search_bounded`]: breadth-first search over products of at
//!   most `L` acting generators and their inverses. Absence of a witness
//!   only means "not found within the bound".
//! * [`multiple_conjugacy`]: simultaneous conjugacy reduced to a chain of
//!   single conjugacy problems in successive centralizers.
//!
//! Every conjugator is also returned as a word in the acting generators, so
//! callers can replay it on data that is only known through those
//! generators (as an attacker on a key exchange must).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::collect::{CollectError, Collector, DEFAULT_STEP_LIMIT};
use crate::random::{sample_word, WordParams};
use crate::word::{parse_signed, NormalWord, WordSyntaxError};
use crate::zoo::GroupSpec;

pub const DEFAULT_ORBIT_CAP: usize = 1 << 20;
pub const DEFAULT_VISITED_CAP: usize = 1 << 22;
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error("group is infinite; element enumeration needs a finite group")]
    InfiniteGroup,
    #[error("group order exceeds the enumeration cap of {cap}")]
    ElementCapExceeded { cap: usize },
    #[error("orbit or subgroup exceeds the cap of {cap} points")]
    OrbitCapExceeded { cap: usize },
    #[error("bounded search visited more than {cap} states")]
    VisitedCapExceeded { cap: usize },
    #[error("search deadline reached")]
    Timeout,
    #[error("acting set must contain at least one generator")]
    EmptyActingSet,
    #[error("tuples have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("conjugacy tuples must be nonempty")]
    EmptyTuple,
    #[error("finite solver needs a finite group")]
    SolverUnsupported,
    #[error(transparent)]
    Collect(#[from] CollectError),
}

/// A word `∏ gens[pos]^exp` in a list of subgroup generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SubgroupWord {
    syllables: Vec<(usize, BigInt)>,
}

impl SubgroupWord {
    pub fn identity() -> Self {
        SubgroupWord::default()
    }

    /// Builds a freely reduced word (adjacent equal positions merged, zero
    /// exponents dropped).
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        let mut w = SubgroupWord::identity();
        for (p, e) in pairs {
            w.push(p, e.into());
        }
        w
    }

    pub fn generator(pos: usize) -> Self {
        SubgroupWord { syllables: vec![(pos, BigInt::one())] }
    }

    pub fn syllables(&self) -> &[(usize, BigInt)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.syllables.iter().map(|(p, _)| *p).max()
    }

    pub fn push(&mut self, pos: usize, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some((last, e)) = self.syllables.last_mut() {
            if *last == pos {
                *e += exp;
                if e.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((pos, exp));
    }

    pub fn concat(&self, other: &SubgroupWord) -> SubgroupWord {
        let mut w = self.clone();
        for (p, e) in &other.syllables {
            w.push(*p, e.clone());
        }
        w
    }

    pub fn inverse(&self) -> SubgroupWord {
        SubgroupWord { syllables: self.syllables.iter().rev().map(|(p, e)| (*p, -e)).collect() }
    }

    /// Replaces each position `p` by `images[p]`.
    pub fn substitute(&self, images: &[SubgroupWord]) -> SubgroupWord {
        let mut out = SubgroupWord::identity();
        for (p, e) in &self.syllables {
            let img = &images[*p];
            let (base, k) = if e < &BigInt::zero() { (img.inverse(), -e) } else { (img.clone(), e.clone()) };
            // repeated images are short in practice; large exponents on
            // single-syllable images collapse to one syllable
            if base.syllables.len() == 1 {
                let (q, f) = &base.syllables[0];
                out.push(*q, f * &k);
            } else {
                let times = k.to_usize().expect("exponent of a composite image fits in usize");
                for _ in 0..times {
                    out = out.concat(&base);
                }
            }
        }
        out
    }

    /// Evaluates the word with the given generator values.
    pub fn evaluate(&self, c: &mut Collector<'_>, gens: &[NormalWord]) -> Result<NormalWord, CollectError> {
        let mut acc = c.identity();
        for (p, e) in &self.syllables {
            let x = c.power(&gens[*p], e)?;
            acc = c.multiply(&acc, &x)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SubgroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("id");
        }
        for (k, (p, e)) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if e.is_one() {
                write!(f, "x{}", p + 1)?;
            } else {
                write!(f, "x{}^{e}", p + 1)?;
            }
        }
        Ok(())
    }
}

/// Parses `x<i>` and `x<i>^<e>` tokens (1-based positions) or `id`.
impl FromStr for SubgroupWord {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WordSyntaxError::Empty);
        }
        if s == "id" {
            return Ok(SubgroupWord::identity());
        }
        let mut w = SubgroupWord::identity();
        for tok in s.split_whitespace() {
            let bad = || WordSyntaxError::BadToken(tok.to_string());
            let body = tok.strip_prefix('x').ok_or_else(bad)?;
            let (pos, exp) = match body.split_once('^') {
                Some((p, e)) => (p, parse_signed(e).ok_or_else(bad)?),
                None => (body, BigInt::one()),
            };
            if pos.is_empty() || !pos.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let pos: usize = pos.parse().map_err(|_| bad())?;
            if pos == 0 {
                return Err(WordSyntaxError::ZeroIndex(tok.to_string()));
            }
            if exp.is_zero() {
                return Err(WordSyntaxError::ZeroExponent(tok.to_string()));
            }
            w.push(pos - 1, exp);
        }
        Ok(w)
    }
}

/// A random word over `len` subgroup generators (adjacent syllables on the
/// same position merge, so the result may be shorter than requested).
pub fn sample_subgroup_word<R: Rng + ?Sized>(rng: &mut R, len: usize, params: WordParams) -> SubgroupWord {
    let w = sample_word(rng, len, params);
    SubgroupWord::from_pairs(w.syllables().iter().map(|s| (s.gen, s.exp.clone())))
}

/// Generators of the subgroup whose conjugation action is searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActingSet {
    generators: Vec<NormalWord>,
}

impl ActingSet {
    pub fn new(generators: Vec<NormalWord>) -> Result<Self, ConjugacyError> {
        if generators.is_empty() {
            Err(ConjugacyError::EmptyActingSet)
        } else {
            Ok(ActingSet { generators })
        }
    }

    /// The defining generators `a_1 .. a_n` of `g`.
    pub fn whole_group(g: &GroupSpec) -> Self {
        let n = g.n();
        ActingSet { generators: (0..n).map(|i| NormalWord::generator(n, i)).collect() }
    }

    pub fn generators(&self) -> &[NormalWord] {
        &self.generators
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyWitness {
    /// `a` with `r^a = s`.
    pub conjugator: NormalWord,
    /// `a` as a word in the acting generators.
    pub conjugator_word: SubgroupWord,
    /// Generators of the centralizer of `s` in the acting subgroup (empty for
    /// the bounded solver).
    pub centralizer_gens: Vec<NormalWord>,
    pub centralizer_words: Vec<SubgroupWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Finite,
    Bounded(usize),
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "finite" => Ok(Solver::Finite),
            Some(("bounded", l)) => match l.parse::<usize>() {
                Ok(l) if l >= 1 => Ok(Solver::Bounded(l)),
                _ => Err(format!("bad search bound `{l}`")),
            },
            _ => Err(format!("unknown solver `{s}` (use finite or bounded:<L>)")),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solver::Finite => f.write_str("finite"),
            Solver::Bounded(l) => write!(f, "bounded:{l}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub orbit_cap: usize,
    pub visited_cap: usize,
    pub element_cap: usize,
    pub step_limit: u64,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            orbit_cap: DEFAULT_ORBIT_CAP,
            visited_cap: DEFAULT_VISITED_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            step_limit: DEFAULT_STEP_LIMIT,
            deadline: None,
        }
    }
}

impl SearchLimits {
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    fn check_deadline(&self) -> Result<(), ConjugacyError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(ConjugacyError::Timeout),
            _ => Ok(()),
        }
    }
}

/// All elements of a finite group, exponent vectors in lexicographic order.
pub fn enumerate_elements(g: &GroupSpec, cap: usize) -> Result<Vec<NormalWord>, ConjugacyError> {
    let p = g.presentation();
    let orders: Vec<BigInt> =
        (0..p.n()).map(|i| p.order(i).cloned().ok_or(ConjugacyError::InfiniteGroup)).collect::<Result<_, _>>()?;
    let total = g.order().expect("finite presentation has an order");
    if total > &BigInt::from(cap) {
        return Err(ConjugacyError::ElementCapExceeded { cap });
    }
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut cur = vec![BigInt::zero(); p.n()];
    loop {
        out.push(NormalWord::from_exponents(cur.clone()));
        // odometer, last coordinate fastest
        let mut k = p.n();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < orders[k] {
                break;
            }
            cur[k] = BigInt::zero();
        }
    }
}

/// Elements of the subgroup generated by `gens` (right-multiplication closure).
pub fn subgroup_elements(
    c: &mut Collector<'_>,
    gens: &[NormalWord],
    cap: usize,
) -> Result<HashSet<NormalWord>, ConjugacyError> {
    let id = c.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = c.multiply(&x, g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(ConjugacyError::OrbitCapExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Orbit of a point under conjugation together with transversal words and
/// a pruned set of Schreier generators of its stabilizer.
#[derive(Debug, Clone)]
pub struct OrbitStabilizer {
    pub points: Vec<NormalWord>,
    index: HashMap<NormalWord, usize>,
    /// `transversal[k]` conjugates the base point to `points[k]`.
    pub transversal: Vec<(NormalWord, SubgroupWord)>,
    pub stabilizer: Vec<(NormalWord, SubgroupWord)>,
}

impl OrbitStabilizer {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, x: &NormalWord) -> Option<usize> {
        self.index.get(x).copied()
    }
}

/// Breadth-first orbit of `base` under `x -> x^g` for `g` in `gens`
/// (generators in order, positive powers only: the acting subgroup must be
/// finite). Schreier generators already in the subgroup generated by the
/// previously kept ones are dropped.
pub fn orbit_stabilizer(
    c: &mut Collector<'_>,
    gens: &[NormalWord],
    base: &NormalWord,
    limits: &SearchLimits,
) -> Result<OrbitStabilizer, ConjugacyError> {
    let mut orb = OrbitStabilizer {
        points: vec![base.clone()],
        index: HashMap::from([(base.clone(), 0)]),
        transversal: vec![(c.identity(), SubgroupWord::identity())],
        stabilizer: Vec::new(),
    };
    let mut schreier = Vec::new();
    let mut k = 0;
    while k < orb.points.len() {
        limits.check_deadline()?;
        let p = orb.points[k].clone();
        for (gi, g) in gens.iter().enumerate() {
            let q = c.conjugate(&p, g)?;
            let (tp, wp) = orb.transversal[k].clone();
            match orb.index.get(&q) {
                None => {
                    if orb.points.len() >= limits.orbit_cap {
                        return Err(ConjugacyError::OrbitCapExceeded { cap: limits.orbit_cap });
                    }
                    orb.index.insert(q.clone(), orb.points.len());
                    orb.points.push(q);
                    let t = c.multiply(&tp, g)?;
                    orb.transversal.push((t, wp.concat(&SubgroupWord::generator(gi))));
                }
                Some(&m) => {
                    let (tq, wq) = &orb.transversal[m];
                    let tq_inv = c.inverse(tq)?;
                    let tg = c.multiply(&tp, g)?;
                    let x = c.multiply(&tg, &tq_inv)?;
                    if !x.is_identity() {
                        let w = wp.concat(&SubgroupWord::generator(gi)).concat(&wq.inverse());
                        schreier.push((x, w));
                    }
                }
            }
        }
        k += 1;
    }

    let mut kept: Vec<NormalWord> = Vec::new();
    let mut closure = HashSet::from([c.identity()]);
    for (x, w) in schreier {
        if closure.contains(&x) {
            continue;
        }
        limits.check_deadline()?;
        kept.push(x.clone());
        orb.stabilizer.push((x, w));
        closure = subgroup_elements(c, &kept, limits.orbit_cap)?;
    }
    Ok(orb)
}

fn check_tuple_len(r: usize, s: usize) -> Result<(), ConjugacyError> {
    if r != s {
        Err(ConjugacyError::LengthMismatch { left: r, right: s })
    } else if r == 0 {
        Err(ConjugacyError::EmptyTuple)
    } else {
        Ok(())
    }
}

/// Finite single conjugacy with a reusable collector. `gens` may be empty
/// (the trivial subgroup).
pub fn finite_search_with(
    c: &mut Collector<'_>,
    gens: &[NormalWord],
    r: &NormalWord,
    s: &NormalWord,
    limits: &SearchLimits,
) -> Result<Option<ConjugacyWitness>, ConjugacyError> {
    let orb = orbit_stabilizer(c, gens, r, limits)?;
    let Some(pos) = orb.position(s) else {
        return Ok(None);
    };
    let (a, aw) = orb.transversal[pos].clone();
    let a_inv = c.inverse(&a)?;
    let mut centralizer_gens = Vec::with_capacity(orb.stabilizer.len());
    let mut centralizer_words = Vec::with_capacity(orb.stabilizer.len());
    for (x, w) in &orb.stabilizer {
        // Stab(s) = a^-1 Stab(r) a
        let ax = c.multiply(&a_inv, x)?;
        centralizer_gens.push(c.multiply(&ax, &a)?);
        centralizer_words.push(aw.inverse().concat(w).concat(&aw));
    }
    Ok(Some(ConjugacyWitness { conjugator: a, conjugator_word: aw, centralizer_gens, centralizer_words }))
}

/// Orbit-stabilizer conjugacy search in the subgroup generated by `acting`.
/// `Ok(None)` proves that no element of that subgroup conjugates `r` to `s`.
pub fn conjugacy_search_finite(
    g: &GroupSpec,
    acting: &ActingSet,
    r: &NormalWord,
    s: &NormalWord,
    limits: &SearchLimits,
) -> Result<Option<ConjugacyWitness>, ConjugacyError> {
    let mut c = Collector::with_step_limit(g.presentation(), limits.step_limit);
    finite_search_with(&mut c, acting.generators(), r, s, limits)
}

/// Breadth-first search for a word `x` of length at most `max_length` in the
/// acting generators and their inverses with `points[i]^x = targets[i]` for
/// every `i`. Products are deduplicated by their normal form.
pub fn bounded_search_with(
    c: &mut Collector<'_>,
    gens: &[NormalWord],
    points: &[NormalWord],
    targets: &[NormalWord],
    max_length: usize,
    limits: &SearchLimits,
) -> Result<Option<SubgroupWord>, ConjugacyError> {
    check_tuple_len(points.len(), targets.len())?;
    if points == targets {
        return Ok(Some(SubgroupWord::identity()));
    }
    // moves in tie-break order: generator index, positive before inverse
    let mut moves = Vec::with_capacity(2 * gens.len());
    for (k, g) in gens.iter().enumerate() {
        moves.push((k, BigInt::one(), g.clone()));
        moves.push((k, BigInt::from(-1), c.inverse(g)?));
    }
    let root = Node { element: c.identity(), images: points.to_vec(), parent: None };
    let mut seen: HashSet<NormalWord> = HashSet::from([root.element.clone()]);
    let mut nodes = vec![root];
    let mut level = 0..1;
    for _depth in 0..max_length {
        let next_start = nodes.len();
        for idx in level.clone() {
            for (mi, (_, _, m)) in moves.iter().enumerate() {
                limits.check_deadline()?;
                let element = c.multiply(&nodes[idx].element, m)?;
                if seen.contains(&element) {
                    continue;
                }
                // r^{x m} = (r^x)^m
                let images = nodes[idx].images.iter().map(|p| c.conjugate(p, m)).collect::<Result<Vec<_>, _>>()?;
                let found = images.as_slice() == targets;
                if !found && seen.len() >= limits.visited_cap {
                    return Err(ConjugacyError::VisitedCapExceeded { cap: limits.visited_cap });
                }
                seen.insert(element.clone());
                nodes.push(Node { element, images, parent: Some((idx, mi)) });
                if found {
                    return Ok(Some(path_word(&nodes, nodes.len() - 1, &moves)));
                }
            }
        }
        level = next_start..nodes.len();
        if level.is_empty() {
            break;
        }
    }
    Ok(None)
}

struct Node {
    element: NormalWord,
    images: Vec<NormalWord>,
    parent: Option<(usize, usize)>,
}

fn path_word(nodes: &[Node], mut idx: usize, moves: &[(usize, BigInt, NormalWord)]) -> SubgroupWord {
    let mut steps = Vec::new();
    while let Some((parent, mi)) = nodes[idx].parent {
        steps.push((moves[mi].0, moves[mi].1.clone()));
        idx = parent;
    }
    steps.reverse();
    SubgroupWord::from_pairs(steps)
}

/// Bounded breadth-first conjugacy search. `Ok(None)` means only that no
/// conjugator of length at most `max_length` exists.
pub fn conjugacy_search_bounded(
    g: &GroupSpec,
    acting: &ActingSet,
    r: &NormalWord,
    s: &NormalWord,
    max_length: usize,
    limits: &SearchLimits,
) -> Result<Option<ConjugacyWitness>, ConjugacyError> {
    let mut c = Collector::with_step_limit(g.presentation(), limits.step_limit);
    let found = bounded_search_with(
        &mut c,
        acting.generators(),
        std::slice::from_ref(r),
        std::slice::from_ref(s),
        max_length,
        limits,
    )?;
    found
        .map(|w| {
            let conjugator = w.evaluate(&mut c, acting.generators())?;
            Ok(ConjugacyWitness {
                conjugator,
                conjugator_word: w,
                centralizer_gens: Vec::new(),
                centralizer_words: Vec::new(),
            })
        })
        .transpose()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultipleOutcome {
    Found(ConjugacyWitness),
    /// The 0-based index of the pair that could not be solved.
    NotFound {
        step: usize,
    },
}

impl MultipleOutcome {
    pub fn witness(self) -> Option<ConjugacyWitness> {
        match self {
            MultipleOutcome::Found(w) => Some(w),
            MultipleOutcome::NotFound { .. } => None,
        }
    }
}

/// Solves `rs[i]^a = ss[i]` for all `i` with `a` in the acting subgroup.
///
/// Finite solver: find `a_1` with `r_1^{a_1} = s_1` and `C_1 = C(s_1)`; then
/// solve `(r_{j+1}^{a_j})^c = s_{j+1}` for `c` in `C_j`, set
/// `a_{j+1} = a_j c` and `C_{j+1} = C_{C_j}(s_{j+1})`.
///
/// Bounded solver: the same chain, where `c` is searched among words of
/// length at most `L` in the acting generators that also fix `s_1 .. s_j`.
pub fn multiple_conjugacy(
    g: &GroupSpec,
    acting: &ActingSet,
    rs: &[NormalWord],
    ss: &[NormalWord],
    solver: Solver,
    limits: &SearchLimits,
) -> Result<MultipleOutcome, ConjugacyError> {
    check_tuple_len(rs.len(), ss.len())?;
    let mut c = Collector::with_step_limit(g.presentation(), limits.step_limit);
    multiple_conjugacy_with(&mut c, acting.generators(), rs, ss, solver, limits)
}

pub fn multiple_conjugacy_with(
    c: &mut Collector<'_>,
    gens: &[NormalWord],
    rs: &[NormalWord],
    ss: &[NormalWord],
    solver: Solver,
    limits: &SearchLimits,
) -> Result<MultipleOutcome, ConjugacyError> {
    check_tuple_len(rs.len(), ss.len())?;
    let mut a = c.identity();
    let mut aw = SubgroupWord::identity();
    // current centralizer, as elements and as words over `gens`
    let mut cent: Vec<NormalWord> = gens.to_vec();
    let mut cent_words: Vec<SubgroupWord> = (0..gens.len()).map(SubgroupWord::generator).collect();

    for (j, (r, s)) in rs.iter().zip(ss).enumerate() {
        let r_moved = c.conjugate(r, &a)?;
        match solver {
            Solver::Finite => {
                let Some(w) = finite_search_with(c, &cent, &r_moved, s, limits)? else {
                    return Ok(MultipleOutcome::NotFound { step: j });
                };
                let cw = w.conjugator_word.substitute(&cent_words);
                a = c.multiply(&a, &w.conjugator)?;
                aw = aw.concat(&cw);
                cent_words = w.centralizer_words.iter().map(|x| x.substitute(&cent_words)).collect();
                cent = w.centralizer_gens;
            }
            Solver::Bounded(max_len) => {
                let mut points = vec![r_moved];
                let mut targets = vec![s.clone()];
                points.extend(ss[..j].iter().cloned());
                targets.extend(ss[..j].iter().cloned());
                let Some(w) = bounded_search_with(c, gens, &points, &targets, max_len, limits)? else {
                    return Ok(MultipleOutcome::NotFound { step: j });
                };
                let x = w.evaluate(c, gens)?;
                a = c.multiply(&a, &x)?;
                aw = aw.concat(&w);
                cent.clear();
                cent_words.clear();
            }
        }
    }
    Ok(MultipleOutcome::Found(ConjugacyWitness {
        conjugator: a,
        conjugator_word: aw,
        centralizer_gens: cent,
        centralizer_words: cent_words,
    }))
}

/// Checks `rs[i]^a = ss[i]` and that every centralizer generator fixes the
/// last target.
pub fn verify_witness(
    c: &mut Collector<'_>,
    rs: &[NormalWord],
    ss: &[NormalWord],
    w: &ConjugacyWitness,
) -> Result<bool, CollectError> {
    for (r, s) in rs.iter().zip(ss) {
        if &c.conjugate(r, &w.conjugator)? != s {
            return Ok(false);
        }
    }
    if let Some(s) = ss.last() {
        for z in &w.centralizer_gens {
            if &c.conjugate(s, z)? != s {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|⟨gens⟩|` by closure enumeration.
pub fn subgroup_order(c: &mut Collector<'_>, gens: &[NormalWord], cap: usize) -> Result<usize, ConjugacyError> {
    subgroup_elements(c, gens, cap).map(|s| s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{dihedral, heisenberg};

    fn nw(v: &[i64]) -> NormalWord {
        NormalWord::from_i64s(v)
    }

    #[test]
    fn subgroup_words_reduce_freely() {
        let w = SubgroupWord::from_pairs([(0, 2), (0, -2), (1, 1), (1, 3)]);
        assert_eq!(w, SubgroupWord::from_pairs([(1, 4)]));
        assert!(w.concat(&w.inverse()).is_empty());
        let sub = SubgroupWord::from_pairs([(0, 2), (1, -1)])
            .substitute(&[SubgroupWord::from_pairs([(3, 1), (4, 1)]), SubgroupWord::from_pairs([(5, 7)])]);
        assert_eq!(sub, SubgroupWord::from_pairs([(3, 1), (4, 1), (3, 1), (4, 1), (5, -7)]));
        assert_eq!(sub.to_string(), "x4 x5 x4 x5 x6^-7");
    }

    #[test]
    fn subgroup_word_text() {
        let w: SubgroupWord = "x2^-3 x1 x1".parse().unwrap();
        assert_eq!(w, SubgroupWord::from_pairs([(1, -3), (0, 2)]));
        assert_eq!(w.to_string().parse::<SubgroupWord>().unwrap(), w);
        assert_eq!("id".parse::<SubgroupWord>().unwrap(), SubgroupWord::identity());
        assert_eq!("x0".parse::<SubgroupWord>(), Err(WordSyntaxError::ZeroIndex("x0".into())));
        assert_eq!("x1^0".parse::<SubgroupWord>(), Err(WordSyntaxError::ZeroExponent("x1^0".into())));
        assert!("g1".parse::<SubgroupWord>().is_err());
        assert!("x".parse::<SubgroupWord>().is_err());
    }

    #[test]
    fn solver_names() {
        assert_eq!("finite".parse::<Solver>(), Ok(Solver::Finite));
        assert_eq!("bounded:4".parse::<Solver>(), Ok(Solver::Bounded(4)));
        assert!("bounded:0".parse::<Solver>().is_err());
        assert!("greedy".parse::<Solver>().is_err());
        assert_eq!(Solver::Bounded(3).to_string(), "bounded:3");
    }

    #[test]
    fn enumerates_finite_groups_in_lexicographic_order() {
        let els = enumerate_elements(&dihedral(4).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(els.len(), 8);
        assert!(els[0].is_identity());
        assert_eq!(els[1], nw(&[0, 1]));
        assert_eq!(els[4], nw(&[1, 0]));
        assert_eq!(enumerate_elements(&dihedral(5).unwrap(), DEFAULT_ELEMENT_CAP).unwrap().len(), 10);
        assert_eq!(enumerate_elements(&heisenberg(), DEFAULT_ELEMENT_CAP), Err(ConjugacyError::InfiniteGroup));
        assert_eq!(
            enumerate_elements(&dihedral(1024).unwrap(), 100),
            Err(ConjugacyError::ElementCapExceeded { cap: 100 })
        );
    }

    #[test]
    fn empty_acting_set_rejected() {
        assert_eq!(ActingSet::new(vec![]), Err(ConjugacyError::EmptyActingSet));
    }

    #[test]
    fn multiple_conjugacy_length_mismatch() {
        let g = dihedral(4).unwrap();
        let err = multiple_conjugacy(
            &g,
            &ActingSet::whole_group(&g),
            &[nw(&[0, 1])],
            &[],
            Solver::Finite,
            &SearchLimits::default(),
        );
        assert_eq!(err, Err(ConjugacyError::LengthMismatch { left: 1, right: 0 }));
    }

    #[test]
    fn dihedral_rotation_conjugates_to_its_inverse() {
        let g = dihedral(4).unwrap();
        let acting = ActingSet::whole_group(&g);
        let (r, s) = (nw(&[0, 1]), nw(&[0, 3]));
        let w = conjugacy_search_finite(&g, &acting, &r, &s, &SearchLimits::default()).unwrap().unwrap();
        assert_eq!(w.conjugator, nw(&[1, 0]));
        assert_eq!(w.conjugator_word, SubgroupWord::generator(0));
        let mut c = Collector::new(g.presentation());
        assert!(verify_witness(&mut c, std::slice::from_ref(&r), std::slice::from_ref(&s), &w).unwrap());
        assert_eq!(subgroup_order(&mut c, &w.centralizer_gens, 1000).unwrap(), 4);
        let orb = orbit_stabilizer(&mut c, acting.generators(), &r, &SearchLimits::default()).unwrap();
        assert_eq!(orb.len(), 2);
    }

    #[test]
    fn rotation_and_reflection_are_not_conjugate() {
        let g = dihedral(4).unwrap();
        let acting = ActingSet::whole_group(&g);
        let out = conjugacy_search_finite(&g, &acting, &nw(&[0, 1]), &nw(&[1, 0]), &SearchLimits::default());
        assert_eq!(out, Ok(None));
    }

    #[test]
    fn heisenberg_bounded_search() {
        let g = heisenberg();
        let acting = ActingSet::whole_group(&g);
        let limits = SearchLimits::default();
        let w = conjugacy_search_bounded(&g, &acting, &nw(&[0, 1, 0]), &nw(&[0, 1, 1]), 3, &limits).unwrap().unwrap();
        assert_eq!(w.conjugator, nw(&[1, 0, 0]));
        assert_eq!(w.conjugator_word.to_string(), "x1");
        assert!(w.centralizer_gens.is_empty());
        let none = conjugacy_search_bounded(&g, &acting, &nw(&[0, 1, 0]), &nw(&[0, 0, 1]), 5, &limits);
        assert_eq!(none, Ok(None));
    }

    #[test]
    fn dihedral_simultaneous_conjugacy() {
        let g = dihedral(4).unwrap();
        let acting = ActingSet::whole_group(&g);
        let rs = [nw(&[0, 1]), nw(&[1, 0])];
        let ss = [nw(&[0, 3]), nw(&[1, 2])];
        let mut c = Collector::new(g.presentation());
        for solver in [Solver::Finite, Solver::Bounded(3)] {
            let out = multiple_conjugacy(&g, &acting, &rs, &ss, solver, &SearchLimits::default()).unwrap();
            let w = out.witness().expect("conjugate tuples");
            assert!([nw(&[1, 1]), nw(&[1, 3])].contains(&w.conjugator));
            assert!(verify_witness(&mut c, &rs, &ss, &w).unwrap());
            assert_eq!(w.conjugator_word.evaluate(&mut c, acting.generators()).unwrap(), w.conjugator);
        }
        let bad =
            multiple_conjugacy(&g, &acting, &rs, &[nw(&[0, 3]), nw(&[0, 1])], Solver::Finite, &SearchLimits::default());
        assert_eq!(bad, Ok(MultipleOutcome::NotFound { step: 1 }));
    }

    #[test]
    fn expired_deadline_times_out() {
        let g = heisenberg();
        let limits = SearchLimits::default().with_deadline(Instant::now());
        let r = nw(&[0, 1, 0]);
        let s = nw(&[0, 0, 1]);
        let out = conjugacy_search_bounded(&g, &ActingSet::whole_group(&g), &r, &s, 3, &limits);
        assert_eq!(out, Err(ConjugacyError::Timeout));
    }
}
