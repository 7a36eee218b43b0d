//! Key exchange over groups with solvable word problem.
//!
//! * AAG (commutator key): Alice holds `a` in `S = ⟨s_1..s_n⟩`, Bob holds `b`
//!   in `T = ⟨t_1..t_m⟩`; they publish `t_j^a` and `s_i^b` and share `[a, b]`.
//! * Non-commutative Diffie-Hellman: `[S, T] = 1`, public `u`, commits `u^w`
//!   and `u^v`, shared key `u^{wv} = u^{vw}`.
//! * Classic Diffie-Hellman over `Z/p` as a baseline.
//!
//! Secrets are [`SubgroupWord`]s over the owner's public generator list.

mod classic;
mod transcript;

pub use classic::{classic_dh, is_prime, ClassicDh, MAX_CLASSIC_MODULUS};
pub use transcript::{KexTranscript, Protocol, TranscriptError, TRANSCRIPT_HEADER};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::collect::{CollectError, Collector};
pub use crate::conjugacy::SubgroupWord;
use crate::conjugacy::{
    bounded_search_with, finite_search_with, multiple_conjugacy_with, ConjugacyError, MultipleOutcome, SearchLimits,
    Solver,
};
use crate::word::NormalWord;
use crate::zoo::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KexError {
    #[error("subgroup generator lists must be nonempty")]
    EmptyGenerators,
    #[error("normal word has {got} exponents, group has {n} generators")]
    WordLength { got: usize, n: usize },
    #[error("secret uses generator position {pos} but only {len} generators are public")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("commit has {got} entries, expected {expected}")]
    CommitLength { expected: usize, got: usize },
    #[error("s{s} and t{t} do not commute")]
    NonCommuting { s: usize, t: usize },
    #[error("finite solver needs a finite group")]
    SolverUnsupported,
    #[error("modulus must be a prime below 2^48")]
    InvalidModulus,
    #[error("base must satisfy 0 < g < p")]
    InvalidBase,
    #[error(transparent)]
    Collect(#[from] CollectError),
    #[error(transparent)]
    Conjugacy(#[from] ConjugacyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Alice,
    Bob,
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alice" => Ok(Role::Alice),
            "bob" => Ok(Role::Bob),
            _ => Err(format!("unknown role `{s}` (use alice or bob)")),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Alice => "alice",
            Role::Bob => "bob",
        })
    }
}

fn check_words(g: &GroupSpec, words: &[NormalWord]) -> Result<(), KexError> {
    match words.iter().find(|w| w.len() != g.n()) {
        Some(w) => Err(KexError::WordLength { got: w.len(), n: g.n() }),
        None => Ok(()),
    }
}

fn check_secret(secret: &SubgroupWord, len: usize) -> Result<(), KexError> {
    match secret.max_position() {
        Some(pos) if pos >= len => Err(KexError::PositionOutOfRange { pos: pos + 1, len }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AagParams {
    group: GroupSpec,
    s_gens: Vec<NormalWord>,
    t_gens: Vec<NormalWord>,
}

impl AagParams {
    pub fn new(group: GroupSpec, s_gens: Vec<NormalWord>, t_gens: Vec<NormalWord>) -> Result<Self, KexError> {
        if s_gens.is_empty() || t_gens.is_empty() {
            return Err(KexError::EmptyGenerators);
        }
        check_words(&group, &s_gens)?;
        check_words(&group, &t_gens)?;
        Ok(AagParams { group, s_gens, t_gens })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn s_gens(&self) -> &[NormalWord] {
        &self.s_gens
    }

    pub fn t_gens(&self) -> &[NormalWord] {
        &self.t_gens
    }

    /// (own generators, peer generators) for a role.
    fn sides(&self, role: Role) -> (&[NormalWord], &[NormalWord]) {
        match role {
            Role::Alice => (&self.s_gens, &self.t_gens),
            Role::Bob => (&self.t_gens, &self.s_gens),
        }
    }

    /// The secret as a group element.
    pub fn evaluate(&self, role: Role, secret: &SubgroupWord) -> Result<NormalWord, KexError> {
        let (own, _) = self.sides(role);
        check_secret(secret, own.len())?;
        let mut c = Collector::new(self.group.presentation());
        Ok(secret.evaluate(&mut c, own)?)
    }
}

/// `t_j^a` (Alice) or `s_i^b` (Bob), in generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AagCommit {
    pub conjugated: Vec<NormalWord>,
}

pub fn aag_commit(params: &AagParams, role: Role, secret: &SubgroupWord) -> Result<AagCommit, KexError> {
    let (own, peer) = params.sides(role);
    check_secret(secret, own.len())?;
    let mut c = Collector::new(params.group.presentation());
    let x = secret.evaluate(&mut c, own)?;
    let conjugated = peer.iter().map(|p| c.conjugate(p, &x)).collect::<Result<_, _>>()?;
    Ok(AagCommit { conjugated })
}

/// `∏_k commit[i_k]^{e_k}` for a secret `∏_k x_{i_k}^{e_k}`.
fn replay(c: &mut Collector<'_>, secret: &SubgroupWord, commit: &[NormalWord]) -> Result<NormalWord, CollectError> {
    secret.evaluate(c, commit)
}

/// Alice: `a^{-1} · ∏_k (s_{i_k}^b)^{a_k}`. Bob: `(∏_k (t_{i_k}^a)^{b_k})^{-1} · b`.
/// Both equal `[a, b]`.
pub fn aag_key(
    params: &AagParams,
    role: Role,
    secret: &SubgroupWord,
    peer_commit: &AagCommit,
) -> Result<NormalWord, KexError> {
    let (own, _) = params.sides(role);
    check_secret(secret, own.len())?;
    if peer_commit.conjugated.len() != own.len() {
        return Err(KexError::CommitLength { expected: own.len(), got: peer_commit.conjugated.len() });
    }
    check_words(&params.group, &peer_commit.conjugated)?;
    let mut c = Collector::new(params.group.presentation());
    let x = secret.evaluate(&mut c, own)?;
    let moved = replay(&mut c, secret, &peer_commit.conjugated)?;
    Ok(match role {
        Role::Alice => {
            let inv = c.inverse(&x)?;
            c.multiply(&inv, &moved)?
        }
        Role::Bob => {
            let inv = c.inverse(&moved)?;
            c.multiply(&inv, &x)?
        }
    })
}

fn check_solver(g: &GroupSpec, solver: Solver) -> Result<(), KexError> {
    if solver == Solver::Finite && !g.presentation().is_finite() {
        Err(KexError::SolverUnsupported)
    } else {
        Ok(())
    }
}

/// Recovers the AAG key from public data: finds `a'` in `S` with
/// `t_j^{a'} = commit_a[j]` for all `j`, then derives the key as Alice would.
/// `Ok(None)` when the solver finds no witness.
pub fn aag_attack(
    params: &AagParams,
    commit_a: &AagCommit,
    commit_b: &AagCommit,
    solver: Solver,
    limits: &SearchLimits,
) -> Result<Option<NormalWord>, KexError> {
    check_solver(&params.group, solver)?;
    if commit_a.conjugated.len() != params.t_gens.len() {
        return Err(KexError::CommitLength { expected: params.t_gens.len(), got: commit_a.conjugated.len() });
    }
    check_words(&params.group, &commit_a.conjugated)?;
    let mut c = Collector::with_step_limit(params.group.presentation(), limits.step_limit);
    let outcome =
        multiple_conjugacy_with(&mut c, &params.s_gens, &params.t_gens, &commit_a.conjugated, solver, limits)?;
    let MultipleOutcome::Found(w) = outcome else {
        return Ok(None);
    };
    aag_key(params, Role::Alice, &w.conjugator_word, commit_b).map(Some)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcdhParams {
    group: GroupSpec,
    u: NormalWord,
    s_gens: Vec<NormalWord>,
    t_gens: Vec<NormalWord>,
}

impl NcdhParams {
    /// Rejects parameters where some `s_i` and `t_j` do not commute.
    pub fn new(
        group: GroupSpec,
        u: NormalWord,
        s_gens: Vec<NormalWord>,
        t_gens: Vec<NormalWord>,
    ) -> Result<Self, KexError> {
        if s_gens.is_empty() || t_gens.is_empty() {
            return Err(KexError::EmptyGenerators);
        }
        check_words(&group, std::slice::from_ref(&u))?;
        check_words(&group, &s_gens)?;
        check_words(&group, &t_gens)?;
        let mut c = Collector::new(group.presentation());
        for (i, s) in s_gens.iter().enumerate() {
            for (j, t) in t_gens.iter().enumerate() {
                if !c.commutator(s, t)?.is_identity() {
                    return Err(KexError::NonCommuting { s: i + 1, t: j + 1 });
                }
            }
        }
        Ok(NcdhParams { group, u, s_gens, t_gens })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn u(&self) -> &NormalWord {
        &self.u
    }

    pub fn s_gens(&self) -> &[NormalWord] {
        &self.s_gens
    }

    pub fn t_gens(&self) -> &[NormalWord] {
        &self.t_gens
    }

    fn own(&self, role: Role) -> &[NormalWord] {
        match role {
            Role::Alice => &self.s_gens,
            Role::Bob => &self.t_gens,
        }
    }
}

/// `u^w` for the role's secret `w`.
pub fn ncdh_commit(params: &NcdhParams, role: Role, secret: &SubgroupWord) -> Result<NormalWord, KexError> {
    let own = params.own(role);
    check_secret(secret, own.len())?;
    let mut c = Collector::new(params.group.presentation());
    let x = secret.evaluate(&mut c, own)?;
    Ok(c.conjugate(&params.u, &x)?)
}

/// `peer_commit^w` for the role's secret `w`.
pub fn ncdh_key(
    params: &NcdhParams,
    role: Role,
    secret: &SubgroupWord,
    peer_commit: &NormalWord,
) -> Result<NormalWord, KexError> {
    let own = params.own(role);
    check_secret(secret, own.len())?;
    check_words(&params.group, std::slice::from_ref(peer_commit))?;
    let mut c = Collector::new(params.group.presentation());
    let x = secret.evaluate(&mut c, own)?;
    Ok(c.conjugate(peer_commit, &x)?)
}

/// Finds `w'` in `S` with `u^{w'} = commit_a` and returns `commit_b^{w'}`.
pub fn ncdh_attack(
    params: &NcdhParams,
    commit_a: &NormalWord,
    commit_b: &NormalWord,
    solver: Solver,
    limits: &SearchLimits,
) -> Result<Option<NormalWord>, KexError> {
    check_solver(&params.group, solver)?;
    check_words(&params.group, &[commit_a.clone(), commit_b.clone()])?;
    let mut c = Collector::with_step_limit(params.group.presentation(), limits.step_limit);
    let word = match solver {
        Solver::Finite => {
            finite_search_with(&mut c, &params.s_gens, &params.u, commit_a, limits)?.map(|w| w.conjugator_word)
        }
        Solver::Bounded(l) => bounded_search_with(
            &mut c,
            &params.s_gens,
            std::slice::from_ref(&params.u),
            std::slice::from_ref(commit_a),
            l,
            limits,
        )?,
    };
    let Some(word) = word else {
        return Ok(None);
    };
    let w = word.evaluate(&mut c, &params.s_gens)?;
    Ok(Some(c.conjugate(commit_b, &w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::sample_subgroup_word;
    use crate::random::{rng_from_seed, WordParams};
    use crate::zoo::{dihedral, direct_product, heisenberg};

    fn nw(v: &[i64]) -> NormalWord {
        NormalWord::from_i64s(v)
    }

    fn d4_params() -> AagParams {
        AagParams::new(dihedral(4).unwrap(), vec![nw(&[0, 1])], vec![nw(&[1, 0])]).unwrap()
    }

    #[test]
    fn aag_on_d4() {
        let p = d4_params();
        let a = SubgroupWord::generator(0);
        let b = SubgroupWord::generator(0);
        let ca = aag_commit(&p, Role::Alice, &a).unwrap();
        let cb = aag_commit(&p, Role::Bob, &b).unwrap();
        assert_eq!(ca.conjugated, vec![nw(&[1, 2])]);
        assert_eq!(cb.conjugated, vec![nw(&[0, 3])]);
        assert_eq!(aag_key(&p, Role::Alice, &a, &cb).unwrap(), nw(&[0, 2]));
        assert_eq!(aag_key(&p, Role::Bob, &b, &ca).unwrap(), nw(&[0, 2]));
        for solver in [Solver::Finite, Solver::Bounded(3)] {
            let k = aag_attack(&p, &ca, &cb, solver, &SearchLimits::default()).unwrap();
            assert_eq!(k, Some(nw(&[0, 2])));
        }
    }

    #[test]
    fn aag_identity_secret() {
        let p = d4_params();
        let id = SubgroupWord::identity();
        let b = SubgroupWord::generator(0);
        let ca = aag_commit(&p, Role::Alice, &id).unwrap();
        assert_eq!(ca.conjugated, p.t_gens());
        let cb = aag_commit(&p, Role::Bob, &b).unwrap();
        assert!(aag_key(&p, Role::Alice, &id, &cb).unwrap().is_identity());
        assert!(aag_key(&p, Role::Bob, &b, &ca).unwrap().is_identity());
        let k = aag_attack(&p, &ca, &cb, Solver::Finite, &SearchLimits::default()).unwrap();
        assert_eq!(k, Some(nw(&[0, 0])));
    }

    #[test]
    fn aag_errors() {
        let p = d4_params();
        let far = SubgroupWord::generator(3);
        assert_eq!(aag_commit(&p, Role::Alice, &far), Err(KexError::PositionOutOfRange { pos: 4, len: 1 }));
        let two = AagCommit { conjugated: vec![nw(&[0, 1]), nw(&[0, 1])] };
        assert_eq!(
            aag_key(&p, Role::Alice, &SubgroupWord::identity(), &two),
            Err(KexError::CommitLength { expected: 1, got: 2 })
        );
        assert_eq!(AagParams::new(dihedral(4).unwrap(), vec![], vec![nw(&[1, 0])]), Err(KexError::EmptyGenerators));
        assert_eq!(
            AagParams::new(dihedral(4).unwrap(), vec![nw(&[1])], vec![nw(&[1, 0])]),
            Err(KexError::WordLength { got: 1, n: 2 })
        );
        let h = AagParams::new(heisenberg(), vec![nw(&[1, 0, 0])], vec![nw(&[0, 1, 0])]).unwrap();
        let c = AagCommit { conjugated: vec![nw(&[0, 1, 0])] };
        assert_eq!(aag_attack(&h, &c, &c, Solver::Finite, &SearchLimits::default()), Err(KexError::SolverUnsupported));
    }

    #[test]
    fn aag_random_dihedral6() {
        let g = dihedral(6).unwrap();
        let mut rng = rng_from_seed(3);
        let p = AagParams::new(g, vec![nw(&[0, 1]), nw(&[1, 2])], vec![nw(&[1, 0]), nw(&[0, 2])]).unwrap();
        let mut c = Collector::new(p.group().presentation());
        for _ in 0..100 {
            let a = sample_subgroup_word(&mut rng, 2, WordParams::new(4, 6));
            let b = sample_subgroup_word(&mut rng, 2, WordParams::new(4, 6));
            let ka = aag_key(&p, Role::Alice, &a, &aag_commit(&p, Role::Bob, &b).unwrap()).unwrap();
            let kb = aag_key(&p, Role::Bob, &b, &aag_commit(&p, Role::Alice, &a).unwrap()).unwrap();
            let (ea, eb) = (p.evaluate(Role::Alice, &a).unwrap(), p.evaluate(Role::Bob, &b).unwrap());
            assert_eq!(ka, kb);
            assert_eq!(ka, c.commutator(&ea, &eb).unwrap());
        }
    }

    fn d4_squared() -> NcdhParams {
        let g = direct_product(&dihedral(4).unwrap(), &dihedral(4).unwrap());
        NcdhParams::new(g, nw(&[1, 0, 1, 0]), vec![nw(&[0, 1, 0, 0])], vec![nw(&[0, 0, 0, 1])]).unwrap()
    }

    #[test]
    fn ncdh_on_d4_squared() {
        let p = d4_squared();
        let w = SubgroupWord::generator(0);
        let v = SubgroupWord::generator(0);
        let ca = ncdh_commit(&p, Role::Alice, &w).unwrap();
        let cb = ncdh_commit(&p, Role::Bob, &v).unwrap();
        assert_eq!(ca, nw(&[1, 2, 1, 0]));
        let ka = ncdh_key(&p, Role::Alice, &w, &cb).unwrap();
        let kb = ncdh_key(&p, Role::Bob, &v, &ca).unwrap();
        assert_eq!(ka, nw(&[1, 2, 1, 2]));
        assert_eq!(ka, kb);
        for solver in [Solver::Finite, Solver::Bounded(2)] {
            assert_eq!(ncdh_attack(&p, &ca, &cb, solver, &SearchLimits::default()).unwrap(), Some(ka.clone()));
        }
        let id = SubgroupWord::identity();
        assert_eq!(ncdh_commit(&p, Role::Alice, &id).unwrap(), *p.u());
        assert_eq!(ncdh_key(&p, Role::Alice, &id, &ncdh_commit(&p, Role::Bob, &id).unwrap()).unwrap(), *p.u());
    }

    #[test]
    fn ncdh_rejects_non_commuting_subgroups() {
        let g = direct_product(&dihedral(4).unwrap(), &dihedral(4).unwrap());
        let out = NcdhParams::new(g, nw(&[1, 0, 1, 0]), vec![nw(&[0, 1, 0, 0])], vec![nw(&[1, 0, 0, 1])]);
        assert_eq!(out, Err(KexError::NonCommuting { s: 1, t: 1 }));
    }

    #[test]
    fn ncdh_bounded_attack_on_heisenberg_squared() {
        let h = heisenberg();
        let g = direct_product(&h, &h);
        let p = NcdhParams::new(
            g,
            nw(&[1, 1, 0, 1, 1, 0]),
            vec![nw(&[1, 0, 0, 0, 0, 0]), nw(&[0, 1, 0, 0, 0, 0])],
            vec![nw(&[0, 0, 0, 1, 0, 0]), nw(&[0, 0, 0, 0, 1, 0])],
        )
        .unwrap();
        let w: SubgroupWord = "x1 x2^-1".parse().unwrap();
        let v: SubgroupWord = "x2 x1".parse().unwrap();
        let ca = ncdh_commit(&p, Role::Alice, &w).unwrap();
        let cb = ncdh_commit(&p, Role::Bob, &v).unwrap();
        let honest = ncdh_key(&p, Role::Alice, &w, &cb).unwrap();
        assert_eq!(honest, ncdh_key(&p, Role::Bob, &v, &ca).unwrap());
        let got = ncdh_attack(&p, &ca, &cb, Solver::Bounded(4), &SearchLimits::default()).unwrap();
        assert_eq!(got, Some(honest));
    }

    #[test]
    fn roles_parse() {
        assert_eq!("alice".parse::<Role>(), Ok(Role::Alice));
        assert_eq!(Role::Bob.to_string(), "bob");
        assert!("eve".parse::<Role>().is_err());
    }
}
