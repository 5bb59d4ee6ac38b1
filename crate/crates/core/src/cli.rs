//! The `viewsynth` command line.
//!
//! ```text
//! viewsynth synth    INSTANCE [--mode sound|exact] [--maximal] [--all] [--view-kind cq|ucq]
//! viewsynth check    INSTANCE [--views FILE]
//! viewsynth contain  Q1 Q2 [--kind rpq|2rpq|cq|ucq]
//! viewsynth monoid   [INSTANCE | --query EXPR]
//! viewsynth oracle   eval|brute|coherence|fold ...
//! ```
//!
//! Exit codes: 0 found / holds, 1 not found / does not hold, 2 input error, 3 a resource
//! cap was hit. `-` reads a file argument from standard input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automata::{
    compile, containment_counterexample, to_dot, DEFAULT_DETERMINIZATION_CAP,
};
use crate::congruence::{TransitionMonoid, DEFAULT_MONOID_CAP};
use crate::cq::{
    cq_capture_check, cq_records, cq_views_from_defs, synthesize_cq, ucq_uncontained, CqSearchConfig, ViewKind,
};
use crate::error::{Error, Result};
use crate::model::{
    parse_instance, parse_regex_open, parse_ucq_open, parse_views, Alphabet, Mode, ProblemInstance, QueryKind,
    Regex, SymbolKind, Ucq, ViewDef, ViewSet,
};
use crate::oracle::{
    brute_view_existence_rpq, coherence_soundness_sample, cq_coherence_soundness_sample, eval_2rpq, eval_rpq,
    eval_ucq, CoherenceOutcome, GraphDatabase, PathViews, RelInstance,
};
use crate::report::{CheckReport, ContainReport, MonoidElement, MonoidReport};
use crate::rpq::{
    capture_check, records, synthesize_rpq, view_languages, views_from_defs, RpqProblem, RpqRequest, SearchConfig,
    SearchSpace, Strategy, DEFAULT_BUDGET,
};
use crate::twoway::{containment_counterexample_2rpq, folds_onto};

#[derive(Parser, Debug)]
#[command(name = "viewsynth", version, about = "Synthesize views that capture schema mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search views that capture every mapping of an instance.
    Synth(SynthArgs),
    /// Check whether given views capture the mappings.
    Check(CheckArgs),
    /// Decide containment of two queries.
    Contain(ContainArgs),
    /// Print the transition monoid of a target automaton.
    Monoid(MonoidArgs),
    /// Brute-force evaluators and searches.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Sound,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sound => Mode::Sound,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ViewKindArg {
    Cq,
    Ucq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Reduced,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Rpq,
    #[value(name = "2rpq")]
    TwoRpq,
    Cq,
    Ucq,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest deterministic automaton built by complementation.
    #[arg(long, env = "VIEWSYNTH_DET_CAP", default_value_t = DEFAULT_DETERMINIZATION_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    det_cap: u64,
    /// Largest transition monoid.
    #[arg(long, env = "VIEWSYNTH_MONOID_CAP", default_value_t = DEFAULT_MONOID_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    monoid_cap: u64,
    /// Most assignments (and candidate bodies) examined by a search.
    #[arg(long, env = "VIEWSYNTH_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Instance file, or `-` for standard input.
    instance: String,
    /// Capture mode; defaults to the `mode` line of the instance.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Enlarge the views until no class can be added.
    #[arg(long)]
    maximal: bool,
    /// Report every solution (every maximal one with --maximal).
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shape of conjunctive-query views.
    #[arg(long, value_enum, default_value = "cq")]
    view_kind: ViewKindArg,
    /// How path-query instances with several mappings are searched.
    #[arg(long, value_enum, default_value = "reduced")]
    strategy: StrategyArg,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    #[command(flatten)]
    caps: Caps,
    /// Write the automaton whose monoid is searched, in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Instance file, or `-` for standard input.
    instance: String,
    /// Views file; defaults to the `view` lines of the instance.
    #[arg(long)]
    views: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct ContainArgs {
    #[arg(long, value_enum, default_value = "rpq")]
    kind: KindArg,
    /// Left query.
    q1: String,
    /// Right query.
    q2: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct MonoidArgs {
    /// Instance file whose (joined) target automaton is used.
    instance: Option<String>,
    /// A path expression to use instead of an instance.
    #[arg(long, conflicts_with = "instance")]
    query: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Evaluate a query over a database (`x -label-> y` lines, or facts such as `r(1,2)`).
    Eval {
        #[arg(long, value_enum, default_value = "rpq")]
        kind: KindArg,
        #[arg(long)]
        db: String,
        query: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive search for sound single-word views.
    Brute {
        instance: String,
        #[arg(long, env = "VIEWSYNTH_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test views on random databases.
    Coherence {
        instance: String,
        #[arg(long)]
        views: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Find a folding of word V onto word U (letters separated by spaces, `r^-` inverse).
    Fold {
        v: String,
        u: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
        }
    }

    fn emit(&mut self, format: Format, text: &str, json: &str) -> Result<()> {
        let s = match format {
            Format::Text => text,
            Format::Json => json,
        };
        self.out.write_all(s.as_bytes())?;
        Ok(())
    }

    fn instance(&mut self, path: &str) -> Result<ProblemInstance> {
        parse_instance(&self.read(path)?)
    }

    fn views(&mut self, path: Option<&str>, instance: &ProblemInstance) -> Result<ViewSet> {
        match path {
            Some(p) => parse_views(&self.read(p)?, instance),
            None if instance.views.is_empty() => Err(Error::invalid("no views given (use --views or `view` lines)")),
            None => Ok(instance.views.clone()),
        }
    }
}

fn code(found: bool) -> i32 {
    if found {
        0
    } else {
        1
    }
}

fn synth(io: &mut Io<'_>, a: &SynthArgs) -> Result<i32> {
    let instance = io.instance(&a.instance)?;
    let mode = a.mode.map_or(instance.mode, Mode::from);
    let start = std::time::Instant::now();
    let report = if instance.kind.is_path() {
        if instance.kind == QueryKind::TwoRpq {
            return Err(Error::Unsupported("view synthesis for 2rpq instances".into()));
        }
        let req = RpqRequest {
            config: SearchConfig {
                mode,
                strategy: match a.strategy {
                    StrategyArg::Reduced => Strategy::Reduced,
                    StrategyArg::Direct => Strategy::Direct,
                },
                det_cap: a.caps.det_cap as usize,
                monoid_cap: a.caps.monoid_cap as usize,
                budget: a.caps.budget,
                workers: a.workers as usize,
            },
            maximal: a.maximal,
            all: a.all,
        };
        let s = synthesize_rpq(&instance, &req)?;
        if let Some(path) = &a.dot {
            let dot = to_dot(s.space.monoid.automaton(), s.alphabet(), "target");
            std::fs::write(path, dot).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        s.report()
    } else {
        if a.maximal || a.all {
            return Err(Error::Unsupported("--maximal and --all for conjunctive queries".into()));
        }
        let cfg = CqSearchConfig {
            mode,
            view_kind: match a.view_kind {
                ViewKindArg::Cq => ViewKind::Cq,
                ViewKindArg::Ucq => ViewKind::Ucq,
            },
            budget: a.caps.budget,
            workers: a.workers as usize,
        };
        synthesize_cq(&instance, &cfg)?.report()
    };
    let text = format!("{}# elapsed: {} ms\n", report.to_text(), start.elapsed().as_millis());
    io.emit(a.format, &text, &report.to_json())?;
    Ok(code(report.found()))
}

fn check(io: &mut Io<'_>, a: &CheckArgs) -> Result<i32> {
    let instance = io.instance(&a.instance)?;
    let mode = a.mode.map_or(instance.mode, Mode::from);
    let defs = io.views(a.views.as_deref(), &instance)?;
    let al = &instance.alphabet;
    let verification = if instance.kind.is_path() {
        let problem = RpqProblem::new(&instance)?;
        let views = views_from_defs(&defs, al)?;
        let langs = view_languages(&views, None, &problem.view_letters)?;
        records(&capture_check(&problem, &langs, mode, a.caps.det_cap as usize)?, al)
    } else {
        let views = cq_views_from_defs(&defs, al)?;
        cq_records(&cq_capture_check(&instance, &views, mode)?, al)
    };
    let report = CheckReport::new(instance.kind, mode, verification);
    io.emit(a.format, &report.to_text(), &report.to_json())?;
    Ok(code(report.holds))
}

fn contain(io: &mut Io<'_>, a: &ContainArgs) -> Result<i32> {
    let mut al = Alphabet::new();
    let cap = a.caps.det_cap as usize;
    let (kind, counterexample) = match a.kind {
        KindArg::Rpq | KindArg::TwoRpq => {
            let two_way = a.kind == KindArg::TwoRpq;
            let r1 = parse_regex_open(&a.q1, &mut al, two_way)?;
            let r2 = parse_regex_open(&a.q2, &mut al, two_way)?;
            let (n1, n2) = (compile(&r1, &[]), compile(&r2, &[]));
            let w = if two_way {
                containment_counterexample_2rpq(&n1, &n2, cap)?
            } else {
                containment_counterexample(&n1, &n2, cap)?
            };
            let kind = if two_way { QueryKind::TwoRpq } else { QueryKind::Rpq };
            (kind, w.map(|w| al.format_word(&w)))
        }
        KindArg::Cq | KindArg::Ucq => {
            let q1 = parse_ucq_open(&a.q1, &mut al)?;
            let q2 = parse_ucq_open(&a.q2, &mut al)?;
            if q1.arity() != q2.arity() {
                return Err(Error::invalid("the queries differ in head arity"));
            }
            let kind = if a.kind == KindArg::Cq { QueryKind::Cq } else { QueryKind::Ucq };
            let d = ucq_uncontained(&q1, &q2)?;
            (kind, d.map(|d| Ucq::single(d.clone()).to_text(&al)))
        }
    };
    let report = ContainReport {
        kind,
        holds: counterexample.is_none(),
        counterexample,
    };
    io.emit(a.format, &report.to_text(), &report.to_json())?;
    Ok(code(report.holds))
}

fn monoid(io: &mut Io<'_>, a: &MonoidArgs) -> Result<i32> {
    let cap = a.caps.monoid_cap as usize;
    let (m, al, candidates) = match (&a.query, &a.instance) {
        (Some(q), _) => {
            let mut al = Alphabet::new();
            let r = parse_regex_open(q, &mut al, false)?;
            let letters = al.target_letters();
            let m = TransitionMonoid::build(&compile(&r, &[]), &letters, cap)?;
            let c = m.generated_by(&letters);
            (m, al, c)
        }
        (None, Some(path)) => {
            let instance = io.instance(path)?;
            let s = SearchSpace::new(&instance, Strategy::Reduced, cap)?;
            let al = s.problem.instance.alphabet.clone();
            let c = s.options.clone();
            (s.monoid, al, c)
        }
        (None, None) => return Err(Error::invalid("give an instance file or --query")),
    };
    let report = MonoidReport {
        states: m.automaton().num_states(),
        elements: m
            .elements()
            .map(|e| MonoidElement {
                element: e,
                witness: al.format_word(m.witness(e)),
                relation: m.relation(e).to_string(),
                accepting: m.is_accepting(e),
                view_candidate: candidates.contains(&e),
            })
            .collect(),
    };
    io.emit(a.format, &report.to_text(), &report.to_json())?;
    Ok(0)
}

fn word_regex(w: &[crate::model::Letter]) -> Regex {
    Regex::concat(w.iter().map(|&l| Regex::Letter(l)))
}

fn coherence_text(out: &CoherenceOutcome) -> String {
    match &out.failure {
        None => format!("passed {} samples (seed {})\n", out.samples, out.seed),
        Some(f) => format!(
            "counterexample on sample {} (seed {}), mapping {}: {} {}\n{}",
            f.sample,
            out.seed,
            f.mapping,
            f.answer,
            if f.unsound {
                "is a source answer but not a target answer"
            } else {
                "is a target answer but not a source answer"
            },
            f.database
        ),
    }
}

fn declare_word_letters(text: &str, al: &mut Alphabet) -> Result<()> {
    for tok in text.split_whitespace() {
        let base = tok.trim_end_matches("^-").trim_end_matches('⁻');
        if base != "eps" && al.lookup(base).is_none() {
            al.declare(base, SymbolKind::Target, 2)?;
        }
    }
    Ok(())
}

fn oracle(io: &mut Io<'_>, cmd: &OracleCommand) -> Result<i32> {
    match cmd {
        OracleCommand::Eval {
            kind,
            db,
            query,
            format,
        } => {
            let text = io.read(db)?;
            let mut al = Alphabet::new();
            let answers: Vec<Vec<String>> = match kind {
                KindArg::Rpq | KindArg::TwoRpq => {
                    let two_way = *kind == KindArg::TwoRpq;
                    let r = parse_regex_open(query, &mut al, two_way)?;
                    let g = GraphDatabase::parse_open(&text, &mut al)?;
                    let a = compile(&r, &[]);
                    let pairs = if two_way { eval_2rpq(&g, &a) } else { eval_rpq(&g, &a) };
                    pairs
                        .into_iter()
                        .map(|(x, y)| vec![g.name(x).to_string(), g.name(y).to_string()])
                        .collect()
                }
                KindArg::Cq | KindArg::Ucq => {
                    let d = RelInstance::parse_open(&text, &mut al)?;
                    let q = parse_ucq_open(query, &mut al)?;
                    eval_ucq(&d, &q)
                        .into_iter()
                        .map(|t| t.iter().map(|&c| d.constant_name(c).to_string()).collect())
                        .collect()
                }
            };
            let text: String = answers.iter().map(|t| t.join(" ") + "\n").collect();
            let json = serde_json::to_string_pretty(&json!({ "answers": answers })).expect("serializable") + "\n";
            io.emit(*format, &text, &json)?;
            Ok(code(!answers.is_empty()))
        }
        OracleCommand::Brute {
            instance,
            budget,
            format,
        } => {
            let inst = io.instance(instance)?;
            let out = brute_view_existence_rpq(&inst, *budget)?;
            let al = &inst.alphabet;
            let views: Vec<(String, String)> = out
                .views
                .iter()
                .flatten()
                .map(|(&s, w)| {
                    let r = w.as_deref().map_or(Regex::Empty, word_regex);
                    (al.name(s).to_string(), r.to_text(al))
                })
                .collect();
            let mut text = if out.found() { "# found\n" } else { "# not found\n" }.to_string();
            for (s, v) in &views {
                text += &format!("view {s} = {v}\n");
            }
            text += &format!(
                "# word bound: {}, assignments tried: {}\n",
                out.word_bound, out.assignments_tried
            );
            let json = serde_json::to_string_pretty(&json!({
                "outcome": if out.found() { "found" } else { "not-found" },
                "views": views.into_iter().collect::<std::collections::BTreeMap<_, _>>(),
                "word_bound": out.word_bound,
                "assignments_tried": out.assignments_tried,
            }))
            .expect("serializable")
                + "\n";
            io.emit(*format, &text, &json)?;
            Ok(code(out.found()))
        }
        OracleCommand::Coherence {
            instance,
            views,
            mode,
            samples,
            seed,
            format,
        } => {
            let inst = io.instance(instance)?;
            let mode = mode.map_or(inst.mode, Mode::from);
            let defs = io.views(views.as_deref(), &inst)?;
            let out = if inst.kind.is_path() {
                let pv: PathViews = defs
                    .iter()
                    .map(|(&s, d)| match d {
                        ViewDef::Path(r) => Ok((s, r.clone())),
                        ViewDef::Empty => Ok((s, Regex::Empty)),
                        ViewDef::Relational(_) => Err(Error::invalid("expected path views")),
                    })
                    .collect::<Result<_>>()?;
                coherence_soundness_sample(&inst, &pv, mode, *samples, *seed)?
            } else {
                let cv = cq_views_from_defs(&defs, &inst.alphabet)?;
                cq_coherence_soundness_sample(&inst, &cv, mode, *samples, *seed)?
            };
            let json = serde_json::to_string_pretty(&json!({
                "passed": out.passed(),
                "samples": out.samples,
                "seed": out.seed,
                "counterexample": out.failure.as_ref().map(|f| json!({
                    "sample": f.sample,
                    "mapping": f.mapping,
                    "answer": f.answer,
                    "unsound": f.unsound,
                    "database": f.database,
                })),
            }))
            .expect("serializable")
                + "\n";
            io.emit(*format, &coherence_text(&out), &json)?;
            Ok(code(out.passed()))
        }
        OracleCommand::Fold { v, u, format } => {
            let mut al = Alphabet::new();
            declare_word_letters(v, &mut al)?;
            declare_word_letters(u, &mut al)?;
            let (wv, wu) = (al.parse_word(v)?, al.parse_word(u)?);
            let cert = folds_onto(&wv, &wu);
            let text = match &cert {
                Some(c) => c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ") + "\n",
                None => "no folding\n".to_string(),
            };
            let json = serde_json::to_string_pretty(&json!({ "folds": cert.is_some(), "certificate": cert }))
                .expect("serializable")
                + "\n";
            io.emit(*format, &text, &json)?;
            Ok(code(cert.is_some()))
        }
    }
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let mut io = Io { stdin, out };
    let result = match &cli.command {
        Command::Synth(a) => synth(&mut io, a),
        Command::Check(a) => check(&mut io, a),
        Command::Contain(a) => contain(&mut io, a),
        Command::Monoid(a) => monoid(&mut io, a),
        Command::Oracle(c) => oracle(&mut io, c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the command line on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut std::io::stdin().lock(), &mut stdout.lock(), &mut stderr.lock())
}
