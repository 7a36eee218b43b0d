//! `pcgroup`: polycyclic group arithmetic, conjugacy search, key exchange
//! and benchmarks from the command line.
//!
//! Exit codes: 0 success, 1 domain failure (inconsistent presentation,
//! non-conjugate input, failed attack), 2 usage or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use pcgroup_core::bench::{bench_group, emit_table, BenchConfig, BenchResult, TableFormat};
use pcgroup_core::conjugacy::{
    multiple_conjugacy, sample_subgroup_word, ActingSet, MultipleOutcome, SearchLimits, Solver, SubgroupWord,
};
use pcgroup_core::kex::{
    aag_attack, aag_commit, aag_key, classic_dh, ncdh_attack, ncdh_commit, ncdh_key, AagParams, KexTranscript,
    NcdhParams, Protocol, Role,
};
use pcgroup_core::random::{rng_from_seed, WordParams};
use pcgroup_core::zoo::{cyclotomic_group, resolve_group};
use pcgroup_core::{check_consistency, Collector, GroupSpec, NormalWord, Word};

#[derive(Parser)]
#[command(name = "pcgroup", version, about = "Polycyclic group arithmetic and group-based key exchange")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the group file (presentation and embedding) of a group.
    Build {
        #[command(flatten)]
        group: GroupArg,
        /// Write to a file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Collect a word to its normal form.
    Collect {
        #[command(flatten)]
        group: GroupArg,
        /// Word such as "g2 g1^-3".
        #[arg(long)]
        word: String,
    },
    /// Check the presentation for consistency.
    Consistency {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Print the Hirsch length.
    Hirsch {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Find `a` with `r_i^a = s_i` for all `i`.
    Conjugacy {
        #[command(flatten)]
        group: GroupArg,
        /// Normal words, ';'-separated.
        #[arg(long)]
        r: String,
        /// Normal words, ';'-separated.
        #[arg(long)]
        s: String,
        /// Acting generators as normal words (default: the group generators).
        #[arg(long)]
        acting: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run a key exchange and print its transcript.
    #[command(subcommand)]
    Kex(KexCommand),
    /// Recover the shared key of a transcript from public data only.
    Attack {
        #[arg(long)]
        transcript: PathBuf,
        /// Overrides the group named in the transcript.
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Time collection against conjugacy search.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GroupArg {
    /// Group file or builtin: d4 | dihedral:<m> | heisenberg | cyclotomic:<r> | product:<a>,<b>
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct SearchArgs {
    /// finite | bounded:<L> (default: finite for finite groups, else bounded:4)
    #[arg(long)]
    solver: Option<Solver>,
    #[arg(long, default_value_t = 60_000)]
    timeout_ms: u64,
}

#[derive(Args)]
struct SecretArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Syllables of randomly drawn secrets.
    #[arg(long, default_value_t = 3)]
    secret_syllables: usize,
    /// Exponent bound of randomly drawn secrets.
    #[arg(long, default_value_t = 3)]
    secret_bound: u64,
    /// Alice's secret, e.g. "x1^2 x2" (default: random).
    #[arg(long)]
    secret_a: Option<SubgroupWord>,
    /// Bob's secret (default: random).
    #[arg(long)]
    secret_b: Option<SubgroupWord>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KexCommand {
    /// Commutator key exchange.
    Aag {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        sgens: String,
        #[arg(long)]
        tgens: String,
        #[command(flatten)]
        secrets: SecretArgs,
    },
    /// Non-commutative Diffie-Hellman.
    Ncdh {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        sgens: String,
        #[arg(long)]
        tgens: String,
        #[command(flatten)]
        secrets: SecretArgs,
    },
    /// Classic Diffie-Hellman modulo a prime.
    Dh {
        #[arg(long)]
        p: BigUint,
        #[arg(long)]
        g: BigUint,
        #[arg(long)]
        x: BigUint,
        #[arg(long)]
        y: BigUint,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// A single group to benchmark.
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    group: Option<String>,
    /// Benchmark a family of groups (only `cyclotomic`).
    #[arg(long, value_parser = ["cyclotomic"])]
    suite: Option<String>,
    /// Conductors for the cyclotomic suite.
    #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 7, 11])]
    rs: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 60_000)]
    timeout_ms: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "markdown")]
    format: TableFormat,
    #[arg(long, default_value = "bounded:4")]
    solver: Solver,
    /// Syllables and exponent bound of collected words.
    #[arg(long, default_value_t = 20)]
    word_syllables: usize,
    #[arg(long, default_value_t = 64)]
    word_bound: u64,
    /// Syllables and exponent bound of hidden conjugators.
    #[arg(long, default_value_t = 2)]
    conj_syllables: usize,
    #[arg(long, default_value_t = 2)]
    conj_bound: u64,
    /// Run one untimed trial per group first.
    #[arg(long)]
    warmup: bool,
}

enum Failure {
    /// Exit code 1.
    Domain(String),
    /// Exit code 2.
    Usage(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

fn load_group(spec: &str) -> Result<GroupSpec, Failure> {
    resolve_group(spec).map_err(usage)
}

fn parse_words(g: &GroupSpec, text: &str, what: &str) -> Result<Vec<NormalWord>, Failure> {
    text.split(';')
        .map(|w| {
            let x: NormalWord = w.parse().map_err(|e| usage(format!("--{what}: {e}")))?;
            if x.len() == g.n() {
                Ok(x)
            } else {
                Err(usage(format!("--{what}: `{w}` has {} exponents, group has {} generators", x.len(), g.n())))
            }
        })
        .collect()
}

fn parse_word(g: &GroupSpec, text: &str, what: &str) -> Result<NormalWord, Failure> {
    let mut v = parse_words(g, text, what)?;
    if v.len() != 1 {
        return Err(usage(format!("--{what} takes a single normal word")));
    }
    Ok(v.remove(0))
}

fn default_solver(g: &GroupSpec, solver: Option<Solver>) -> Solver {
    solver.unwrap_or(if g.presentation().is_finite() { Solver::Finite } else { Solver::Bounded(4) })
}

fn limits(timeout_ms: u64) -> SearchLimits {
    SearchLimits::default().with_deadline(Instant::now() + Duration::from_millis(timeout_ms))
}

fn emit(text: &str, output: Option<&PathBuf>) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn secrets(args: &SecretArgs, s_len: usize, t_len: usize) -> (SubgroupWord, SubgroupWord) {
    let mut rng = rng_from_seed(args.seed);
    let params = WordParams::new(args.secret_syllables, args.secret_bound);
    let a = sample_subgroup_word(&mut rng, s_len, params);
    let b = sample_subgroup_word(&mut rng, t_len, params);
    (args.secret_a.clone().unwrap_or(a), args.secret_b.clone().unwrap_or(b))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Build { group, output } => emit(&load_group(&group.group)?.to_text(), output.as_ref()),
        Command::Collect { group, word } => {
            let g = load_group(&group.group)?;
            let w: Word = word.parse().map_err(|e| usage(format!("--word: {e}")))?;
            let x = Collector::new(g.presentation()).collect(&w).map_err(|e| match e {
                pcgroup_core::CollectError::GeneratorOutOfRange { .. } => usage(e),
                _ => domain(e),
            })?;
            println!("{x}");
            Ok(())
        }
        Command::Consistency { group } => {
            let g = load_group(&group.group)?;
            let report = check_consistency(g.presentation());
            if report.consistent {
                println!("consistent");
                Ok(())
            } else {
                println!("inconsistent");
                for v in &report.violations {
                    println!("{v}");
                }
                Err(domain(format!("{} overlap(s) disagree", report.violations.len())))
            }
        }
        Command::Hirsch { group } => {
            println!("{}", load_group(&group.group)?.hirsch_length());
            Ok(())
        }
        Command::Conjugacy { group, r, s, acting, search } => {
            let g = load_group(&group.group)?;
            let rs = parse_words(&g, &r, "r")?;
            let ss = parse_words(&g, &s, "s")?;
            let acting = match acting {
                Some(a) => ActingSet::new(parse_words(&g, &a, "acting")?).map_err(usage)?,
                None => ActingSet::whole_group(&g),
            };
            let solver = default_solver(&g, search.solver);
            if solver == Solver::Finite && !g.presentation().is_finite() {
                return Err(usage("finite solver needs a finite group"));
            }
            match multiple_conjugacy(&g, &acting, &rs, &ss, solver, &limits(search.timeout_ms)) {
                Ok(MultipleOutcome::Found(w)) => {
                    println!("conjugator {}", w.conjugator);
                    println!("word {}", w.conjugator_word);
                    for z in &w.centralizer_gens {
                        println!("centralizer {z}");
                    }
                    Ok(())
                }
                Ok(MultipleOutcome::NotFound { step }) => Err(domain(match solver {
                    Solver::Finite => format!("not conjugate (pair {} has no solution)", step + 1),
                    Solver::Bounded(l) => format!("no conjugator of length <= {l} for pair {}", step + 1),
                })),
                Err(e @ pcgroup_core::conjugacy::ConjugacyError::LengthMismatch { .. }) => Err(usage(e)),
                Err(e) => Err(domain(e)),
            }
        }
        Command::Kex(KexCommand::Aag { group, sgens, tgens, secrets: args }) => {
            let g = load_group(&group.group)?;
            let s = parse_words(&g, &sgens, "sgens")?;
            let t = parse_words(&g, &tgens, "tgens")?;
            let params = AagParams::new(g, s, t).map_err(usage)?;
            let (a, b) = secrets(&args, params.s_gens().len(), params.t_gens().len());
            let ca = aag_commit(&params, Role::Alice, &a).map_err(usage)?;
            let cb = aag_commit(&params, Role::Bob, &b).map_err(usage)?;
            let ka = aag_key(&params, Role::Alice, &a, &cb).map_err(domain)?;
            let kb = aag_key(&params, Role::Bob, &b, &ca).map_err(domain)?;
            if ka != kb {
                return Err(domain(format!("keys differ: {ka} vs {kb}")));
            }
            let t = KexTranscript::aag(group.group, &params, &ca, &cb, Some((ka, kb)));
            emit(&t.to_text(), args.output.as_ref())
        }
        Command::Kex(KexCommand::Ncdh { group, u, sgens, tgens, secrets: args }) => {
            let g = load_group(&group.group)?;
            let u = parse_word(&g, &u, "u")?;
            let s = parse_words(&g, &sgens, "sgens")?;
            let t = parse_words(&g, &tgens, "tgens")?;
            let params = NcdhParams::new(g, u, s, t).map_err(usage)?;
            let (w, v) = secrets(&args, params.s_gens().len(), params.t_gens().len());
            let ca = ncdh_commit(&params, Role::Alice, &w).map_err(usage)?;
            let cb = ncdh_commit(&params, Role::Bob, &v).map_err(usage)?;
            let ka = ncdh_key(&params, Role::Alice, &w, &cb).map_err(domain)?;
            let kb = ncdh_key(&params, Role::Bob, &v, &ca).map_err(domain)?;
            if ka != kb {
                return Err(domain(format!("keys differ: {ka} vs {kb}")));
            }
            let t = KexTranscript::ncdh(group.group, &params, &ca, &cb, Some((ka, kb)));
            emit(&t.to_text(), args.output.as_ref())
        }
        Command::Kex(KexCommand::Dh { p, g, x, y }) => {
            let r = classic_dh(&p, &g, &x, &y).map_err(usage)?;
            println!("X {}\nY {}\nk {}", r.x_pub, r.y_pub, r.key);
            Ok(())
        }
        Command::Attack { transcript, group, search } => {
            let text = fs::read_to_string(&transcript)
                .map_err(|e| usage(format!("cannot read {}: {e}", transcript.display())))?;
            let t = KexTranscript::parse(&text).map_err(usage)?;
            let g = load_group(group.as_deref().unwrap_or(&t.group))?;
            let solver = default_solver(&g, search.solver);
            let lim = limits(search.timeout_ms);
            let got = match t.protocol {
                Protocol::Aag => {
                    let params = t.aag_params(g).map_err(usage)?;
                    let ca = pcgroup_core::kex::AagCommit { conjugated: t.commit_a.clone() };
                    let cb = pcgroup_core::kex::AagCommit { conjugated: t.commit_b.clone() };
                    aag_attack(&params, &ca, &cb, solver, &lim)
                }
                Protocol::Ncdh => {
                    let params = t.ncdh_params(g).map_err(usage)?;
                    ncdh_attack(&params, &t.commit_a[0], &t.commit_b[0], solver, &lim)
                }
            };
            match got {
                Ok(Some(k)) => {
                    println!("key {k}");
                    match &t.key_a {
                        Some(honest) if *honest != k => {
                            Err(domain(format!("recovered key differs from keyA {honest}")))
                        }
                        Some(_) => {
                            println!("matches keyA");
                            Ok(())
                        }
                        None => Ok(()),
                    }
                }
                Ok(None) => Err(domain(format!("attack failed: {solver} found no conjugator"))),
                Err(pcgroup_core::kex::KexError::SolverUnsupported) => Err(usage("finite solver needs a finite group")),
                Err(e) => Err(domain(format!("attack failed: {e}"))),
            }
        }
        Command::Bench(args) => bench(args),
    }
}

fn bench(args: BenchArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let groups: Vec<(GroupSpec, Option<u32>)> = match &args.group {
        Some(spec) => vec![(load_group(spec)?, None)],
        None => args
            .rs
            .iter()
            .map(|&r| cyclotomic_group(r).map(|g| (g, Some(r))).map_err(usage))
            .collect::<Result<_, _>>()?,
    };
    let config = BenchConfig {
        trials: args.trials,
        word_params: WordParams::new(args.word_syllables, args.word_bound),
        conjugator_params: WordParams::new(args.conj_syllables, args.conj_bound),
        solver: args.solver,
        timeout: Duration::from_millis(args.timeout_ms),
        ..BenchConfig::default()
    };
    let mut rows: Vec<BenchResult> = Vec::new();
    for (g, r) in &groups {
        if config.solver == Solver::Finite && !g.presentation().is_finite() {
            return Err(usage(format!("finite solver needs a finite group ({})", g.name)));
        }
        if args.warmup {
            bench_group(g, *r, &BenchConfig { trials: 1, ..config }, args.seed).map_err(domain)?;
        }
        let row = bench_group(g, *r, &config, args.seed).map_err(domain)?;
        eprintln!(
            "{}: {} trials, {} timeouts, {} unsolved",
            row.group, row.trials, row.conj_timeouts, row.conj_unsolved
        );
        rows.push(row);
    }
    print!("{}", emit_table(&rows, args.format).map_err(domain)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("pcgroup: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("pcgroup: {msg}");
            ExitCode::from(2)
        }
    }
}
