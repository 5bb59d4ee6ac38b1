use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;

use crate::automata::{contains, substitute, Nwa, DEFAULT_DETERMINIZATION_CAP};
use crate::congruence::{Element, TransitionMonoid, DEFAULT_MONOID_CAP};
use crate::error::{Error, Result};
use crate::model::{Mode, SymbolId};

use super::problem::RpqProblem;
use super::views::{view_languages, RpqView, RpqViews};

/// How a multi-mapping instance is searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Join all mappings into one with a fresh separator symbol.
    #[default]
    Reduced,
    /// Keep the mappings apart, over the monoid of the disjoint union of the targets.
    Direct,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub mode: Mode,
    pub strategy: Strategy,
    pub det_cap: usize,
    pub monoid_cap: usize,
    /// Bound on the number of (partial) assignments examined.
    pub budget: u64,
    pub workers: usize,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Mode::Sound,
            strategy: Strategy::Reduced,
            det_cap: DEFAULT_DETERMINIZATION_CAP,
            monoid_cap: DEFAULT_MONOID_CAP,
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Candidate views per symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViewSpace {
    /// `EMPTY` or one class.
    Classes,
    /// `EMPTY` or a nonempty union of classes, by increasing size.
    Unions,
}

/// One view per symbol slot, as a sorted list of monoid elements (empty list = `EMPTY`).
pub type Assignment = Vec<Vec<Element>>;

/// Immutable data shared by all search workers.
pub struct SearchSpace {
    pub problem: RpqProblem,
    pub monoid: TransitionMonoid,
    /// Elements realized by words over the view letters, canonical order.
    pub options: Vec<Element>,
    accepting: Vec<Vec<bool>>,
    slot_of: Vec<Option<usize>>,
}

impl SearchSpace {
    /// Compiles the instance under `strategy` and builds the transition monoid of its
    /// target automaton (the disjoint union of all targets for `Direct`).
    pub fn new(instance: &crate::model::ProblemInstance, strategy: Strategy, monoid_cap: usize) -> Result<Self> {
        if instance.kind != crate::model::QueryKind::Rpq {
            return Err(Error::Unsupported(format!(
                "view synthesis for {} instances",
                instance.kind
            )));
        }
        let problem = match strategy {
            Strategy::Reduced => RpqProblem::reduced(instance)?,
            Strategy::Direct => RpqProblem::new(instance)?,
        };
        let mut union: Option<Nwa> = None;
        let mut blocks = Vec::new();
        for m in &problem.mappings {
            let off = union.as_ref().map_or(0, Nwa::num_states);
            let t = &m.target;
            let inits: Vec<usize> = t.initials().iter().map(|&p| p + off).collect();
            let finals: Vec<usize> = t.finals().map(|p| p + off).collect();
            blocks.push((inits, finals));
            union = Some(match union {
                None => t.clone(),
                Some(u) => u.disjoint_union(t),
            });
        }
        let target = union.ok_or_else(|| Error::invalid("no mappings"))?;
        let monoid = TransitionMonoid::build(&target, &problem.target_letters(), monoid_cap)?;
        let accepting = blocks
            .iter()
            .map(|(inits, finals)| {
                monoid
                    .elements()
                    .map(|e| {
                        let r = monoid.relation(e);
                        inits.iter().any(|&p| finals.iter().any(|&q| r.contains(p, q)))
                    })
                    .collect()
            })
            .collect();
        let options = monoid.generated_by(&problem.view_letters);
        let mut slot_of = vec![None; problem.instance.alphabet.len()];
        for (i, s) in problem.sources.iter().enumerate() {
            slot_of[s.index()] = Some(i);
        }
        Ok(SearchSpace {
            problem,
            monoid,
            options,
            accepting,
            slot_of,
        })
    }

    pub fn sources(&self) -> &[SymbolId] {
        &self.problem.sources
    }

    /// Walks `A_s × monoid` for mapping `m`. Returns `(sound, nonempty)` where `sound`
    /// means every reachable final pair carries an accepting element. Exact for
    /// class-union views; unassigned slots behave as `EMPTY`.
    pub fn scan(&self, m: usize, assign: &[Vec<Element>]) -> (bool, bool) {
        let a = &self.problem.mappings[m].source;
        let acc = &self.accepting[m];
        let k = self.monoid.len();
        let mut seen = FixedBitSet::with_capacity(a.num_states() * k);
        let mut stack = Vec::new();
        let id = self.monoid.identity();
        for &p in a.initials() {
            if !seen.put(p * k + id) {
                stack.push((p, id));
            }
        }
        let mut nonempty = false;
        while let Some((p, x)) = stack.pop() {
            if a.is_final(p) {
                nonempty = true;
                if !acc[x] {
                    return (false, true);
                }
            }
            for &(l, q) in a.transitions(p) {
                match self.slot_of[l.symbol.index()] {
                    Some(slot) => {
                        for &e in assign.get(slot).map_or(&[][..], |v| v.as_slice()) {
                            let y = self.monoid.compose(x, e);
                            if !seen.put(q * k + y) {
                                stack.push((q, y));
                            }
                        }
                    }
                    None => {
                        let Some(y) = self.monoid.step(x, l) else { continue };
                        if !seen.put(q * k + y) {
                            stack.push((q, y));
                        }
                    }
                }
            }
        }
        (true, nonempty)
    }

    /// Sound capture by the monoid walk, on every mapping.
    pub fn sound_ok(&self, assign: &[Vec<Element>]) -> (bool, bool) {
        let mut all_nonempty = true;
        for m in 0..self.problem.mappings.len() {
            let (sound, nonempty) = self.scan(m, assign);
            if !sound {
                return (false, nonempty);
            }
            all_nonempty &= nonempty;
        }
        (true, all_nonempty)
    }

    pub fn to_views(&self, assign: &[Vec<Element>]) -> RpqViews {
        self.problem
            .sources
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, RpqView::from_elements(assign[i].iter().copied())))
            .collect()
    }

    /// `q_t ⊑ q_s[V]` for every mapping, by automata.
    pub fn complete(&self, assign: &[Vec<Element>], det_cap: usize) -> Result<bool> {
        let views = view_languages(&self.to_views(assign), Some(&self.monoid), &self.problem.view_letters)?;
        for m in &self.problem.mappings {
            let sub = substitute(&m.source, &self.problem.instance.alphabet, &views)?;
            if !contains(&m.target, &sub, det_cap)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full capture test in `mode` for a complete assignment.
    pub fn captures(&self, assign: &[Vec<Element>], mode: Mode, det_cap: usize) -> Result<bool> {
        let (sound, nonempty) = self.sound_ok(assign);
        if !sound || !nonempty {
            return Ok(false);
        }
        match mode {
            Mode::Sound => Ok(true),
            Mode::Exact => self.complete(assign, det_cap),
        }
    }

    fn choices(&self, space: ViewSpace) -> Box<dyn Iterator<Item = Vec<Element>> + Send + '_> {
        let k = self.options.len();
        let opts = &self.options;
        match space {
            ViewSpace::Classes => Box::new(std::iter::once(Vec::new()).chain(opts.iter().map(|&e| vec![e]))),
            ViewSpace::Unions => Box::new(
                (0..=k).flat_map(move |c| (0..k).combinations(c).map(move |ix| ix.into_iter().map(|i| opts[i]).collect())),
            ),
        }
    }
}

/// Result of an enumeration.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    /// Capturing assignments in canonical order (at most one unless all were requested).
    pub solutions: Vec<Assignment>,
    pub assignments_tried: u64,
}

enum PartEnd {
    Done,
    OverBudget,
    Aborted,
}

struct Worker<'a> {
    space: &'a SearchSpace,
    view_space: ViewSpace,
    mode: Mode,
    det_cap: usize,
    budget: u64,
    all: bool,
    part: usize,
    winner: &'a AtomicUsize,
    tried: u64,
    found: Vec<Assignment>,
}

impl Worker<'_> {
    fn visit(&mut self, assign: &mut Assignment) -> Result<Option<PartEnd>> {
        self.tried += 1;
        if self.tried > self.budget {
            return Ok(Some(PartEnd::OverBudget));
        }
        if !self.all && self.winner.load(Ordering::Relaxed) < self.part {
            return Ok(Some(PartEnd::Aborted));
        }
        let (sound, nonempty) = self.space.sound_ok(assign);
        if !sound {
            return Ok(None);
        }
        let level = assign.len();
        if level == self.space.sources().len() {
            let ok = nonempty
                && match self.mode {
                    Mode::Sound => true,
                    Mode::Exact => self.space.complete(assign, self.det_cap)?,
                };
            if ok {
                self.found.push(assign.clone());
                if !self.all {
                    self.winner.fetch_min(self.part, Ordering::Relaxed);
                    return Ok(Some(PartEnd::Done));
                }
            }
            return Ok(None);
        }
        for choice in self.space.choices(self.view_space) {
            assign.push(choice);
            let r = self.visit(assign)?;
            assign.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
}

/// Depth-first enumeration of assignments, symbols in name order and per symbol `EMPTY`
/// first, then candidate views in canonical order. Assignments whose prefix (remaining
/// symbols `EMPTY`) already breaks soundness are cut.
///
/// The choices for the first symbol are distributed over `workers` threads; the result
/// and the statistics do not depend on the number of workers.
pub fn enumerate(space: &SearchSpace, view_space: ViewSpace, cfg: &SearchConfig, all: bool) -> Result<SearchOutcome> {
    let winner = AtomicUsize::new(usize::MAX);
    let budget_error = || Error::CapExceeded {
        resource: "search budget",
        limit: cfg.budget as usize,
    };
    let n = space.sources().len();
    let firsts: Vec<Vec<Element>> = if n == 0 {
        vec![Vec::new()]
    } else {
        space.choices(view_space).take(cfg.budget.saturating_add(1) as usize).collect()
    };
    let run = |part: usize, first: &Vec<Element>, budget: u64| -> Result<(u64, PartEnd, Vec<Assignment>)> {
        let mut w = Worker {
            space,
            view_space,
            mode: cfg.mode,
            det_cap: cfg.det_cap,
            budget,
            all,
            part,
            winner: &winner,
            tried: 0,
            found: Vec::new(),
        };
        let mut assign: Assignment = if n == 0 { Vec::new() } else { vec![first.clone()] };
        let end = w.visit(&mut assign)?;
        Ok((w.tried, end.unwrap_or(PartEnd::Done), w.found))
    };
    let workers = cfg.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start workers: {e}")))?;

    // Partitions run `workers` at a time, each allowed the budget left after the
    // partitions before its chunk, and are folded in order.
    let mut out = SearchOutcome::default();
    for (c, chunk) in firsts.chunks(workers).enumerate() {
        let left = cfg.budget - out.assignments_tried;
        let parts: Vec<Result<(u64, PartEnd, Vec<Assignment>)>> = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, f)| run(c * workers + i, f, left))
                .collect()
        });
        for part in parts {
            let (tried, end, found) = part?;
            out.assignments_tried += tried;
            if matches!(end, PartEnd::OverBudget) || out.assignments_tried > cfg.budget {
                return Err(budget_error());
            }
            if matches!(end, PartEnd::Aborted) {
                // only partitions after the winner are aborted
                return Ok(out);
            }
            out.solutions.extend(found);
            if !all && !out.solutions.is_empty() {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Keeps the assignments not strictly below another one, slot by slot.
pub fn maximal_only(solutions: &[Assignment]) -> Vec<Assignment> {
    let sets: Vec<Vec<BTreeSet<Element>>> = solutions
        .iter()
        .map(|a| a.iter().map(|v| v.iter().copied().collect()).collect())
        .collect();
    let below = |x: &Vec<BTreeSet<Element>>, y: &Vec<BTreeSet<Element>>| {
        x != y && x.iter().zip(y).all(|(a, b)| a.is_subset(b))
    };
    solutions
        .iter()
        .enumerate()
        .filter(|&(i, _)| !sets.iter().any(|y| below(&sets[i], y)))
        .map(|(_, a)| a.clone())
        .collect()
}

/// Greedily enlarges capturing views: symbols in name order, and for each symbol the
/// candidate classes in canonical order, keeping every class whose addition preserves
/// capture in `mode`. Adding a class can only add words, so a class rejected once stays
/// rejected and the result is maximal.
pub fn maximize(space: &SearchSpace, seed: &[Vec<Element>], mode: Mode, det_cap: usize) -> Result<Assignment> {
    if seed.len() != space.sources().len() {
        return Err(Error::invalid("the seed views do not cover the source symbols"));
    }
    if let Some(e) = seed.iter().flatten().find(|e| !space.options.contains(e)) {
        return Err(Error::invalid(format!("element {e} is not a view candidate")));
    }
    if !space.captures(seed, mode, det_cap)? {
        return Err(Error::NotCapturing("the seed views do not capture the mappings".into()));
    }
    let mut cur: Assignment = seed.iter().map(|v| v.iter().copied().sorted().dedup().collect()).collect();
    for slot in 0..cur.len() {
        for &e in &space.options {
            if cur[slot].contains(&e) {
                continue;
            }
            let mut trial = cur.clone();
            trial[slot].push(e);
            trial[slot].sort();
            if space.captures(&trial, mode, det_cap)? {
                cur = trial;
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    const SEC6: &str = "kind rpq\nsource a1 a2 a3\ntarget b1 b2\nmap (a1|a3).(a2|a3) ~> b1.b2\n";
    const EXACT: &str = "kind rpq\nsource a1 a2\ntarget 0 1\nmap a1.a2 ~> 0.0|0.1|1.0\n";

    fn space(text: &str) -> SearchSpace {
        SearchSpace::new(&parse_instance(text).unwrap(), Strategy::Reduced, DEFAULT_MONOID_CAP).unwrap()
    }

    fn class(s: &SearchSpace, w: &str) -> Element {
        s.monoid.class_of(&s.problem.instance.alphabet.parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn sec6_sound_finds_b1_b2_empty() {
        let s = space(SEC6);
        let out = enumerate(&s, ViewSpace::Classes, &SearchConfig::default(), false).unwrap();
        assert_eq!(out.solutions, vec![vec![vec![class(&s, "b1")], vec![class(&s, "b2")], vec![]]]);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let s = space(EXACT);
        let mut cfg = SearchConfig::default();
        let one = enumerate(&s, ViewSpace::Unions, &cfg, true).unwrap();
        cfg.workers = 4;
        let four = enumerate(&s, ViewSpace::Unions, &cfg, true).unwrap();
        assert_eq!(one.solutions, four.solutions);
        assert_eq!(one.assignments_tried, four.assignments_tried);
        let first1 = enumerate(&s, ViewSpace::Unions, &cfg, false).unwrap();
        cfg.workers = 1;
        let first4 = enumerate(&s, ViewSpace::Unions, &cfg, false).unwrap();
        assert_eq!(first1.solutions, first4.solutions);
        assert_eq!(first1.assignments_tried, first4.assignments_tried);
    }

    #[test]
    fn square_has_no_views() {
        let s = space("kind rpq\nsource a\ntarget b\nmap a.a ~> b\n");
        let out = enumerate(&s, ViewSpace::Classes, &SearchConfig::default(), false).unwrap();
        assert!(out.solutions.is_empty());
    }

    #[test]
    fn no_source_symbols() {
        let s = space("kind rpq\ntarget b1 b2\nmap b1.b2 ~> b1.b2\n");
        let out = enumerate(&s, ViewSpace::Classes, &SearchConfig::default(), false).unwrap();
        assert_eq!(out.solutions, vec![Vec::<Vec<Element>>::new()]);
    }

    #[test]
    fn maximize_reaches_a_maximum() {
        let s = space(EXACT);
        let (z, o) = (class(&s, "0"), class(&s, "1"));
        let got = maximize(&s, &[vec![z], vec![z]], Mode::Sound, DEFAULT_DETERMINIZATION_CAP).unwrap();
        let mut zo = vec![z, o];
        zo.sort();
        assert!(got == vec![zo.clone(), vec![z]] || got == vec![vec![z], zo.clone()]);
        let again = maximize(&s, &[zo.clone(), vec![z]], Mode::Sound, DEFAULT_DETERMINIZATION_CAP).unwrap();
        assert_eq!(again, vec![zo, vec![z]]);
    }

    #[test]
    fn budget_is_enforced() {
        let s = space(EXACT);
        let cfg = SearchConfig {
            budget: 5,
            ..SearchConfig::default()
        };
        assert!(matches!(
            enumerate(&s, ViewSpace::Unions, &cfg, true),
            Err(Error::CapExceeded { .. })
        ));
    }
}
