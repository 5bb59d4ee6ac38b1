use std::collections::{BTreeMap, BTreeSet};

use super::graph::{eval_2rpq, GraphDatabase};
use super::random::{random_graph, random_rel_instance, seeded};
use super::relational::{eval_ucq, RelInstance, Tuple};
use crate::automata::compile;
use crate::cq::{CqView, CqViews};
use crate::error::{Error, Result};
use crate::model::{Alphabet, Mode, ProblemInstance, Regex, SymbolId};

/// Path views as expressions; `Regex::Empty` or a missing entry is the empty view.
pub type PathViews = BTreeMap<SymbolId, Regex>;

/// A database on which the views misbehave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceFailure {
    pub sample: usize,
    pub mapping: usize,
    /// The target database in its text format.
    pub database: String,
    pub answer: String,
    /// `true` when the answer is produced by the source query but not the target query,
    /// `false` when the target query has an answer the source query misses (exact mode).
    pub unsound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceOutcome {
    pub samples: usize,
    pub seed: u64,
    pub failure: Option<CoherenceFailure>,
}

impl CoherenceOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn compare<T: Ord + Clone>(source: &BTreeSet<T>, target: &BTreeSet<T>, mode: Mode) -> Option<(T, bool)> {
    if let Some(x) = source.difference(target).next() {
        return Some((x.clone(), true));
    }
    if mode == Mode::Exact {
        if let Some(x) = target.difference(source).next() {
            return Some((x.clone(), false));
        }
    }
    None
}

/// Populates each source symbol `a` with the answers of `V(a)` on `db`, evaluates every
/// source query on the result and compares with the target query on `db`: inclusion in
/// sound mode, equality in exact mode. Returns the first offending mapping and pair.
pub fn path_coherence_on(
    instance: &ProblemInstance,
    views: &PathViews,
    mode: Mode,
    db: &GraphDatabase,
) -> Result<Option<(usize, (usize, usize), bool)>> {
    if !instance.kind.is_path() {
        return Err(Error::invalid("expected a path-query instance"));
    }
    let mut combined = db.clone();
    for s in instance.alphabet.sources() {
        let Some(v) = views.get(&s) else { continue };
        for (x, y) in eval_2rpq(db, &compile(v, &[])) {
            combined.add_edge(x, s, y);
        }
    }
    for (i, m) in instance.mappings.iter().enumerate() {
        let qs = compile(m.source.as_path().expect("path instance"), &[]);
        let qt = compile(m.target.as_path().expect("path instance"), &[]);
        let got = eval_2rpq(&combined, &qs);
        let want = eval_2rpq(db, &qt);
        if let Some((pair, unsound)) = compare(&got, &want, mode) {
            return Ok(Some((i, pair, unsound)));
        }
    }
    Ok(None)
}

/// Runs [`path_coherence_on`] on `samples` random target databases of at most four
/// objects. Sample `i` is drawn from seed `seed + i`.
pub fn coherence_soundness_sample(
    instance: &ProblemInstance,
    views: &PathViews,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<CoherenceOutcome> {
    let labels: Vec<SymbolId> = instance.alphabet.targets().collect();
    for i in 0..samples {
        let db = random_graph(&mut seeded(seed.wrapping_add(i as u64)), &labels, 4);
        if let Some((mapping, (x, y), unsound)) = path_coherence_on(instance, views, mode, &db)? {
            return Ok(CoherenceOutcome {
                samples: i + 1,
                seed,
                failure: Some(CoherenceFailure {
                    sample: i,
                    mapping,
                    database: db.to_text(&instance.alphabet),
                    answer: format!("({}, {})", db.name(x), db.name(y)),
                    unsound,
                }),
            });
        }
    }
    Ok(CoherenceOutcome {
        samples,
        seed,
        failure: None,
    })
}

/// The relational counterpart of [`path_coherence_on`].
pub fn cq_coherence_on(
    instance: &ProblemInstance,
    views: &CqViews,
    mode: Mode,
    db: &RelInstance,
) -> Result<Option<(usize, Tuple, bool)>> {
    if instance.kind.is_path() {
        return Err(Error::invalid("expected a conjunctive query instance"));
    }
    let mut combined = db.clone();
    for (&s, v) in views {
        if let CqView::Query(q) = v {
            for t in eval_ucq(db, q) {
                combined.insert(s, t);
            }
        }
    }
    for (i, m) in instance.mappings.iter().enumerate() {
        let qs = m.source.as_relational().expect("relational instance");
        let qt = m.target.as_relational().expect("relational instance");
        let got = eval_ucq(&combined, qs);
        let want = eval_ucq(db, qt);
        if let Some((t, unsound)) = compare(&got, &want, mode) {
            return Ok(Some((i, t, unsound)));
        }
    }
    Ok(None)
}

fn tuple_text(db: &RelInstance, t: &Tuple) -> String {
    let names: Vec<&str> = t.iter().map(|&c| db.constant_name(c)).collect();
    format!("({})", names.join(", "))
}

/// Runs [`cq_coherence_on`] on `samples` random target databases over at most four
/// constants. Sample `i` is drawn from seed `seed + i`.
pub fn cq_coherence_soundness_sample(
    instance: &ProblemInstance,
    views: &CqViews,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<CoherenceOutcome> {
    let al: &Alphabet = &instance.alphabet;
    let preds: Vec<(SymbolId, usize)> = al.targets().map(|t| (t, al.arity(t))).collect();
    for i in 0..samples {
        let db = random_rel_instance(&mut seeded(seed.wrapping_add(i as u64)), &preds, 4);
        if let Some((mapping, t, unsound)) = cq_coherence_on(instance, views, mode, &db)? {
            return Ok(CoherenceOutcome {
                samples: i + 1,
                seed,
                failure: Some(CoherenceFailure {
                    sample: i,
                    mapping,
                    database: db.to_text(al),
                    answer: tuple_text(&db, &t),
                    unsound,
                }),
            });
        }
    }
    Ok(CoherenceOutcome {
        samples,
        seed,
        failure: None,
    })
}
