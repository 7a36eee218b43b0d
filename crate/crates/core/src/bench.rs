//! Timing of the word problem (collection) against conjugacy search on
//! seeded random instances, and the `r | h | coll | conj` table.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::collect::{CollectError, Collector};
use crate::conjugacy::{bounded_search_with, finite_search_with, ActingSet, ConjugacyError, SearchLimits, Solver};
use crate::random::{rng_from_seed, sample_word, WordParams};
use crate::word::{NormalWord, Word};
use crate::zoo::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("trial count must be positive")]
    NoTrials,
    #[error("no benchmark rows to print")]
    Empty,
    #[error("finite solver needs a finite group")]
    SolverUnsupported,
    #[error("solver returned a conjugator that does not conjugate r to s")]
    Unsound,
    #[error(transparent)]
    Collect(#[from] CollectError),
    #[error(transparent)]
    Conjugacy(#[from] ConjugacyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectStats {
    pub trials: usize,
    pub mean_ms: f64,
    pub max_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjStats {
    pub trials: usize,
    pub mean_ms: f64,
    pub max_ms: f64,
    pub timeouts: usize,
    /// Trials where the search ended without a witness before the deadline.
    pub unsolved: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub group: String,
    pub r: Option<u32>,
    pub h: usize,
    pub trials: usize,
    pub collect_mean_ms: f64,
    pub collect_max_ms: f64,
    pub conj_mean_ms: f64,
    pub conj_max_ms: f64,
    pub conj_timeouts: usize,
    pub conj_unsolved: usize,
    pub seed: u64,
}

impl BenchResult {
    pub fn new(g: &GroupSpec, r: Option<u32>, coll: CollectStats, conj: ConjStats, seed: u64) -> Self {
        BenchResult {
            group: g.name.clone(),
            r,
            h: g.hirsch_length(),
            trials: conj.trials,
            collect_mean_ms: coll.mean_ms,
            collect_max_ms: coll.max_ms,
            conj_mean_ms: conj.mean_ms,
            conj_max_ms: conj.max_ms,
            conj_timeouts: conj.timeouts,
            conj_unsolved: conj.unsolved,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub trials: usize,
    /// Words fed to collection.
    pub word_params: WordParams,
    /// Elements `r` that get conjugated (by default the collection word
    /// distribution).
    pub element_params: WordParams,
    /// Secret conjugators `x` with `s = r^x`.
    pub conjugator_params: WordParams,
    pub solver: Solver,
    pub timeout: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            trials: 100,
            word_params: WordParams::new(20, 64),
            element_params: WordParams::new(20, 64),
            conjugator_params: WordParams::new(2, 2),
            solver: Solver::Bounded(4),
            timeout: Duration::from_secs(60),
        }
    }
}

fn stats(times: &[f64]) -> (f64, f64) {
    let mean = times.iter().sum::<f64>() / times.len() as f64;
    let max = times.iter().copied().fold(0.0, f64::max);
    // floating-point summation can leave the mean a hair above the max
    (mean.min(max), max)
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

/// The words timed by [`bench_collection`] for a seed.
pub fn collection_words(g: &GroupSpec, trials: usize, params: WordParams, seed: u64) -> Vec<Word> {
    let mut rng = rng_from_seed(seed);
    (0..trials).map(|_| sample_word(&mut rng, g.n(), params)).collect()
}

/// Times one collection per random word. One collector serves all calls,
/// as one collector serves a whole conjugacy search.
pub fn bench_collection(
    g: &GroupSpec,
    trials: usize,
    params: WordParams,
    seed: u64,
) -> Result<CollectStats, BenchError> {
    if trials == 0 {
        return Err(BenchError::NoTrials);
    }
    let mut times = Vec::with_capacity(trials);
    let mut c = Collector::new(g.presentation());
    for w in collection_words(g, trials, params, seed) {
        let start = Instant::now();
        let out = c.collect(&w)?;
        times.push(millis(start.elapsed()));
        std::hint::black_box(out);
    }
    let (mean_ms, max_ms) = stats(&times);
    Ok(CollectStats { trials, mean_ms, max_ms })
}

/// A conjugacy instance `(r, s = r^x)` and the hidden `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjInstance {
    pub r: NormalWord,
    pub s: NormalWord,
    pub x: NormalWord,
}

/// The instances timed by [`bench_conjugacy`] for a seed.
pub fn conjugacy_instances(
    g: &GroupSpec,
    trials: usize,
    element_params: WordParams,
    conjugator_params: WordParams,
    seed: u64,
) -> Result<Vec<ConjInstance>, CollectError> {
    let mut rng = rng_from_seed(seed);
    let mut c = Collector::new(g.presentation());
    (0..trials)
        .map(|_| {
            let r = c.collect(&sample_word(&mut rng, g.n(), element_params))?;
            let x = c.collect(&sample_word(&mut rng, g.n(), conjugator_params))?;
            let s = c.conjugate(&r, &x)?;
            Ok(ConjInstance { r, s, x })
        })
        .collect()
}

/// Times the solver on random conjugate pairs, acting with the whole group.
/// A timed-out trial is counted at the timeout value. Witnesses are checked
/// by collection before a trial counts.
pub fn bench_conjugacy(
    g: &GroupSpec,
    trials: usize,
    solver: Solver,
    element_params: WordParams,
    conjugator_params: WordParams,
    timeout: Duration,
    seed: u64,
) -> Result<ConjStats, BenchError> {
    if trials == 0 {
        return Err(BenchError::NoTrials);
    }
    if solver == Solver::Finite && !g.presentation().is_finite() {
        return Err(BenchError::SolverUnsupported);
    }
    let acting = ActingSet::whole_group(g);
    let mut verifier = Collector::new(g.presentation());
    let mut times = Vec::with_capacity(trials);
    let (mut timeouts, mut unsolved) = (0, 0);
    for inst in conjugacy_instances(g, trials, element_params, conjugator_params, seed)? {
        let start = Instant::now();
        let limits = SearchLimits::default().with_deadline(start + timeout);
        let mut c = Collector::with_step_limit(g.presentation(), limits.step_limit);
        let found = match solver {
            Solver::Finite => finite_search_with(&mut c, acting.generators(), &inst.r, &inst.s, &limits)
                .map(|w| w.map(|w| w.conjugator)),
            Solver::Bounded(l) => bounded_search_with(
                &mut c,
                acting.generators(),
                std::slice::from_ref(&inst.r),
                std::slice::from_ref(&inst.s),
                l,
                &limits,
            )
            .and_then(|w| w.map(|w| w.evaluate(&mut c, acting.generators())).transpose().map_err(Into::into)),
        };
        let elapsed = start.elapsed();
        match found {
            Ok(Some(a)) => {
                if verifier.conjugate(&inst.r, &a)? != inst.s {
                    return Err(BenchError::Unsound);
                }
                times.push(millis(elapsed));
            }
            Ok(None) => {
                unsolved += 1;
                times.push(millis(elapsed));
            }
            Err(ConjugacyError::Timeout) => {
                timeouts += 1;
                times.push(millis(timeout));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let (mean_ms, max_ms) = stats(&times);
    Ok(ConjStats { trials, mean_ms, max_ms, timeouts, unsolved })
}

/// One table row: collection and conjugacy timings for `g`.
pub fn bench_group(g: &GroupSpec, r: Option<u32>, config: &BenchConfig, seed: u64) -> Result<BenchResult, BenchError> {
    let coll = bench_collection(g, config.trials, config.word_params, seed)?;
    let conj = bench_conjugacy(
        g,
        config.trials,
        config.solver,
        config.element_params,
        config.conjugator_params,
        config.timeout,
        seed,
    )?;
    Ok(BenchResult::new(g, r, coll, conj, seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            _ => Err(format!("unknown format `{s}` (use markdown or csv)")),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Cells of one row: group, r, h, coll mean, conj mean (or `>timeout` when
/// every trial timed out). Times in milliseconds.
pub fn table_cells(row: &BenchResult) -> [String; 5] {
    let conj =
        if row.conj_timeouts == row.trials { ">timeout".to_string() } else { format!("{:.3}", row.conj_mean_ms) };
    [
        row.group.clone(),
        row.r.map_or_else(|| "-".to_string(), |r| r.to_string()),
        row.h.to_string(),
        format!("{:.3}", row.collect_mean_ms),
        conj,
    ]
}

pub fn emit_table(results: &[BenchResult], format: TableFormat) -> Result<String, BenchError> {
    if results.is_empty() {
        return Err(BenchError::Empty);
    }
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str("| group | r | h | coll (ms) | conj (ms) |\n|---|---|---|---|---|\n");
            for row in results {
                let _ = writeln!(out, "| {} |", table_cells(row).join(" | "));
            }
        }
        TableFormat::Csv => {
            out.push_str("group,r,h,coll_ms,conj_ms\n");
            for row in results {
                let cells = table_cells(row);
                let _ = writeln!(out, "{}", cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            }
        }
    }
    Ok(out)
}
