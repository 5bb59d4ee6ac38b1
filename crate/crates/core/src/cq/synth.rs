use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Cq, Mode, ProblemInstance, Query, SymbolId, Ucq};
use crate::report::{MappingRecord, Solution, Statistics, SynthesisReport};
use crate::rpq::DEFAULT_BUDGET;

use super::candidates::cq_candidates;
use super::hom::ucq_uncontained;
use super::substitute::{cq_substitute, CqView, CqViews};

/// Shape of the candidate views.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ViewKind {
    #[default]
    Cq,
    Ucq,
}

/// Size bounds on candidate views; a view set exists iff one exists within them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesisBounds {
    /// Sum over the mappings of the largest target disjunct.
    pub atom_bound: usize,
    /// Sum over the mappings of the number of target disjuncts.
    pub disjunct_bound: usize,
    pub variable_bound: usize,
}

impl SynthesisBounds {
    pub fn of(instance: &ProblemInstance) -> Self {
        let targets = instance.mappings.iter().filter_map(|m| m.target.as_relational());
        let atom_bound = targets.clone().map(Ucq::max_atoms).sum();
        let disjunct_bound = targets.map(|q| q.disjuncts.len()).sum();
        let al = &instance.alphabet;
        let head = al.sources().map(|s| al.arity(s)).max().unwrap_or(0);
        let width = al.targets().map(|s| al.arity(s)).max().unwrap_or(0);
        SynthesisBounds {
            atom_bound,
            disjunct_bound,
            variable_bound: head + atom_bound * width,
        }
    }

    pub fn to_map(&self) -> BTreeMap<String, usize> {
        BTreeMap::from([
            ("atom_bound".to_string(), self.atom_bound),
            ("disjunct_bound".to_string(), self.disjunct_bound),
            ("variable_bound".to_string(), self.variable_bound),
        ])
    }
}

#[derive(Clone, Debug)]
pub struct CqSearchConfig {
    pub mode: Mode,
    pub view_kind: ViewKind,
    /// Bound on candidate bodies generated and on assignments examined.
    pub budget: u64,
    pub workers: usize,
}

impl Default for CqSearchConfig {
    fn default() -> Self {
        CqSearchConfig {
            mode: Mode::Sound,
            view_kind: ViewKind::Cq,
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Capture test for one mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CqMappingCheck {
    pub sound: bool,
    pub nonempty: bool,
    pub complete: Option<bool>,
    /// `q_s[V]`.
    pub substituted: Ucq,
    /// A disjunct of `q_s[V]` contained in no disjunct of `q_t`.
    pub counterexample: Option<Cq>,
    /// A disjunct of `q_t` contained in no disjunct of `q_s[V]`.
    pub missing: Option<Cq>,
}

impl CqMappingCheck {
    pub fn holds(&self) -> bool {
        self.sound && self.nonempty && self.complete != Some(false)
    }
}

fn relational(q: &Query) -> Result<&Ucq> {
    q.as_relational()
        .ok_or_else(|| Error::invalid("expected a conjunctive query mapping"))
}

/// Decides capture of every mapping by substitution and containment mappings.
pub fn cq_capture_check(instance: &ProblemInstance, views: &CqViews, mode: Mode) -> Result<Vec<CqMappingCheck>> {
    let mut out = Vec::new();
    for m in &instance.mappings {
        let (qs, qt) = (relational(&m.source)?, relational(&m.target)?);
        let sub = cq_substitute(qs, views, &instance.alphabet)?;
        let counterexample = ucq_uncontained(&sub, qt)?.cloned();
        let missing = match mode {
            Mode::Sound => None,
            Mode::Exact => Some(ucq_uncontained(qt, &sub)?.cloned()),
        };
        out.push(CqMappingCheck {
            sound: counterexample.is_none(),
            nonempty: !sub.disjuncts.is_empty(),
            complete: missing.as_ref().map(Option::is_none),
            substituted: sub,
            counterexample,
            missing: missing.flatten(),
        });
    }
    Ok(out)
}

pub fn cq_records(checks: &[CqMappingCheck], alphabet: &Alphabet) -> Vec<MappingRecord> {
    let text = |q: &Cq| Ucq::single(q.clone()).to_text(alphabet);
    checks
        .iter()
        .enumerate()
        .map(|(i, c)| MappingRecord {
            mapping: i,
            sound: c.sound,
            nonempty: c.nonempty,
            exact: c.complete,
            nonempty_witness: c.substituted.disjuncts.first().map(text),
            counterexample: c.counterexample.as_ref().map(text),
            missing: c.missing.as_ref().map(text),
        })
        .collect()
}

/// `None` is an undefined view, otherwise indices into the candidate list of the symbol.
type Choice = Option<Vec<usize>>;

struct Space<'a> {
    instance: &'a ProblemInstance,
    mode: Mode,
    kind: ViewKind,
    disjuncts: usize,
    sources: Vec<SymbolId>,
    candidates: Vec<std::sync::Arc<Vec<Cq>>>,
    undefined_ok: Vec<bool>,
}

impl Space<'_> {
    fn view(&self, slot: usize, choice: &Choice) -> CqView {
        match choice {
            None => CqView::Undefined,
            Some(ix) => CqView::Query(Ucq {
                disjuncts: ix.iter().map(|&i| self.candidates[slot][i].clone()).collect(),
            }),
        }
    }

    fn views(&self, assign: &[Choice]) -> CqViews {
        assign
            .iter()
            .enumerate()
            .map(|(slot, c)| (self.sources[slot], self.view(slot, c)))
            .collect()
    }

    /// Soundness of the disjuncts whose source predicates are all assigned.
    fn partial_sound(&self, assign: &[Choice]) -> Result<bool> {
        let views = self.views(assign);
        for m in &self.instance.mappings {
            let sub = cq_substitute(relational(&m.source)?, &views, &self.instance.alphabet)?;
            if ucq_uncontained(&sub, relational(&m.target)?)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn captures(&self, assign: &[Choice]) -> Result<bool> {
        let checks = cq_capture_check(self.instance, &self.views(assign), self.mode)?;
        Ok(checks.iter().all(CqMappingCheck::holds))
    }

    fn choices(&self, slot: usize) -> Box<dyn Iterator<Item = Choice> + Send + '_> {
        let n = self.candidates[slot].len();
        let undefined = self.undefined_ok[slot].then_some(None);
        match self.kind {
            ViewKind::Cq => Box::new(undefined.into_iter().chain((0..n).map(|i| Some(vec![i])))),
            ViewKind::Ucq => Box::new(
                undefined
                    .into_iter()
                    .chain((1..=self.disjuncts.min(n)).flat_map(move |k| (0..n).combinations(k).map(Some))),
            ),
        }
    }
}

enum PartEnd {
    Done,
    OverBudget,
    Aborted,
}

struct Worker<'a> {
    space: &'a Space<'a>,
    budget: u64,
    part: usize,
    winner: &'a AtomicUsize,
    tried: u64,
    found: Option<Vec<Choice>>,
}

impl Worker<'_> {
    fn visit(&mut self, assign: &mut Vec<Choice>) -> Result<Option<PartEnd>> {
        self.tried += 1;
        if self.tried > self.budget {
            return Ok(Some(PartEnd::OverBudget));
        }
        if self.winner.load(Ordering::Relaxed) < self.part {
            return Ok(Some(PartEnd::Aborted));
        }
        if !self.space.partial_sound(assign)? {
            return Ok(None);
        }
        let level = assign.len();
        if level == self.space.sources.len() {
            if self.space.captures(assign)? {
                self.found = Some(assign.clone());
                self.winner.fetch_min(self.part, Ordering::Relaxed);
                return Ok(Some(PartEnd::Done));
            }
            return Ok(None);
        }
        for choice in self.space.choices(level) {
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

/// Result of a conjunctive-query synthesis run.
pub struct CqSynthesis {
    pub instance: ProblemInstance,
    pub mode: Mode,
    pub view_kind: ViewKind,
    pub bounds: SynthesisBounds,
    /// Candidate bodies per source symbol, in symbol order.
    pub candidates: Vec<usize>,
    pub views: Option<CqViews>,
    pub checks: Vec<CqMappingCheck>,
    pub assignments_tried: u64,
}

impl CqSynthesis {
    pub fn found(&self) -> bool {
        self.views.is_some()
    }

    pub fn report(&self) -> SynthesisReport {
        let al = &self.instance.alphabet;
        let solutions = self
            .views
            .iter()
            .map(|v| Solution {
                views: v
                    .iter()
                    .map(|(&s, view)| (al.name(s).to_string(), view.to_text(s, al)))
                    .collect(),
                verification: cq_records(&self.checks, al),
            })
            .collect();
        let stats = Statistics {
            assignments_tried: self.assignments_tried,
            monoid_size: None,
            view_candidates: Some(self.candidates.iter().sum()),
            bounds: Some(self.bounds.to_map()),
        };
        SynthesisReport::new(self.instance.kind, self.mode, false, solutions, stats)
    }
}

/// Searches views for a (union of) conjunctive query instance.
///
/// Candidate bodies have at most `atom_bound` atoms; union views at most `disjunct_bound`
/// disjuncts. Source symbols are assigned in name order, each with its candidates in
/// canonical order (an undefined view first where allowed), and a prefix is cut as soon
/// as a fully substituted disjunct escapes the target query. The first capturing
/// assignment in that order is returned; not finding one is conclusive.
pub fn synthesize_cq(instance: &ProblemInstance, cfg: &CqSearchConfig) -> Result<CqSynthesis> {
    if instance.kind.is_path() {
        return Err(Error::Unsupported(format!(
            "conjunctive query synthesis for {} instances",
            instance.kind
        )));
    }
    let bounds = SynthesisBounds::of(instance);
    let al = &instance.alphabet;
    let targets: Vec<(SymbolId, usize)> = al.targets().map(|t| (t, al.arity(t))).collect();
    let sources = instance.occurring_sources();
    let mut by_arity: BTreeMap<usize, std::sync::Arc<Vec<Cq>>> = BTreeMap::new();
    let mut candidates = Vec::new();
    for &s in &sources {
        let k = al.arity(s);
        if let std::collections::btree_map::Entry::Vacant(e) = by_arity.entry(k) {
            let c = cq_candidates(k, &targets, bounds.atom_bound, cfg.budget)?;
            e.insert(std::sync::Arc::new(c));
        }
        candidates.push(by_arity[&k].clone());
    }
    let undefined_ok = sources
        .iter()
        .map(|&s| {
            instance.mappings.iter().all(|m| {
                let q = m.source.as_relational().expect("validated instance");
                q.disjuncts.iter().any(|d| !d.predicates().contains(&s))
            })
        })
        .collect();
    let space = Space {
        instance,
        mode: cfg.mode,
        kind: cfg.view_kind,
        disjuncts: bounds.disjunct_bound.max(1),
        sources: sources.clone(),
        candidates,
        undefined_ok,
    };

    let winner = AtomicUsize::new(usize::MAX);
    let n = sources.len();
    let firsts: Vec<Choice> = if n == 0 {
        vec![None]
    } else {
        space.choices(0).take(cfg.budget.saturating_add(1) as usize).collect()
    };
    let run = |part: usize, first: &Choice| -> Result<(u64, PartEnd, Option<Vec<Choice>>)> {
        let mut w = Worker {
            space: &space,
            budget: cfg.budget,
            part,
            winner: &winner,
            tried: 0,
            found: None,
        };
        let mut assign = if n == 0 { Vec::new() } else { vec![first.clone()] };
        let end = w.visit(&mut assign)?;
        Ok((w.tried, end.unwrap_or(PartEnd::Done), w.found))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start workers: {e}")))?;
    let parts: Vec<_> = pool.install(|| firsts.par_iter().enumerate().map(|(i, f)| run(i, f)).collect());

    let mut tried = 0u64;
    let mut solution = None;
    for part in parts {
        let (t, end, found) = part?;
        tried += t;
        if matches!(end, PartEnd::OverBudget) || tried > cfg.budget {
            return Err(Error::CapExceeded {
                resource: "search budget",
                limit: cfg.budget as usize,
            });
        }
        if matches!(end, PartEnd::Aborted) {
            break;
        }
        if found.is_some() {
            solution = found;
            break;
        }
    }

    let views = solution.map(|a| space.views(&a));
    let checks = match &views {
        Some(v) => {
            let c = cq_capture_check(instance, v, cfg.mode)?;
            if !c.iter().all(CqMappingCheck::holds) {
                return Err(Error::invalid("internal error: a synthesized view set failed verification"));
            }
            c
        }
        None => Vec::new(),
    };
    Ok(CqSynthesis {
        instance: instance.clone(),
        mode: cfg.mode,
        view_kind: cfg.view_kind,
        bounds,
        candidates: space.candidates.iter().map(|c| c.len()).collect(),
        views,
        checks,
        assignments_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    const CHAIN: &str = "kind cq\nsource a/2\ntarget r/2 s/2\nmap q(x,y) :- a(x,y) ~> q(x,y) :- r(x,z), s(z,y)\n";

    fn synth(text: &str, mode: Mode, view_kind: ViewKind) -> CqSynthesis {
        let inst = parse_instance(text).unwrap();
        let cfg = CqSearchConfig {
            mode,
            view_kind,
            ..Default::default()
        };
        synthesize_cq(&inst, &cfg).unwrap()
    }

    #[test]
    fn chain_exact() {
        let s = synth(CHAIN, Mode::Exact, ViewKind::Cq);
        let r = s.report();
        assert!(r.found());
        assert_eq!(r.solutions[0].views["a"], "a(u,v) :- r(u,w), s(w,v)");
        assert_eq!(s.checks[0].complete, Some(true));
        assert_eq!(s.bounds.atom_bound, 2);
        assert_eq!(s.bounds.variable_bound, 6);
    }

    #[test]
    fn identity_shaped_sound() {
        let s = synth(
            "kind cq\nsource a/2\ntarget r/2\nmap q(x,y) :- a(x,y) ~> q(x,y) :- r(x,y)\n",
            Mode::Sound,
            ViewKind::Cq,
        );
        assert_eq!(s.report().solutions[0].views["a"], "a(u,v) :- r(u,v)");
    }

    #[test]
    fn impossible_instance() {
        // the head of q_t is not reachable from the single source variable
        let s = synth(
            "kind cq\nsource a/1\ntarget r/2\nmap q(x,y) :- a(x), a(y) ~> q(x,y) :- r(x,y)\n",
            Mode::Sound,
            ViewKind::Cq,
        );
        assert!(!s.found());
    }

    #[test]
    fn union_target_exact() {
        let text = "kind ucq\nsource a/2\ntarget r/2 s/2\nmap q(x,y) :- a(x,y) ~> q(x,y) :- r(x,y) ; q(x,y) :- s(x,y)\n";
        assert!(!synth(text, Mode::Exact, ViewKind::Cq).found());
        let s = synth(text, Mode::Exact, ViewKind::Ucq);
        assert_eq!(s.report().solutions[0].views["a"], "a(u,v) :- r(u,v) ; a(u,v) :- s(u,v)");
    }

    #[test]
    fn undefined_view_for_droppable_predicate() {
        let text = "kind ucq\nsource a/2 b/2\ntarget r/2\nmap q(x,y) :- a(x,y) ; q(x,y) :- b(x,y), b(y,x) ~> q(x,y) :- r(x,y)\n";
        let s = synth(text, Mode::Sound, ViewKind::Cq);
        let r = s.report();
        assert_eq!(r.solutions[0].views["a"], "empty");
        assert_eq!(r.solutions[0].views["b"], "b(u,v) :- r(u,v)");
    }

    #[test]
    fn workers_do_not_change_the_answer() {
        let inst = parse_instance(CHAIN).unwrap();
        let mut reports = Vec::new();
        for workers in [1, 4] {
            let cfg = CqSearchConfig {
                mode: Mode::Exact,
                workers,
                ..Default::default()
            };
            reports.push(synthesize_cq(&inst, &cfg).unwrap().report().to_json());
        }
        assert_eq!(reports[0], reports[1]);
    }
}
