use std::collections::{BTreeMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::automata::{compile, Nwa};
use crate::error::{Error, Result};
use crate::model::{Alphabet, Letter, ProblemInstance, QueryKind, SymbolId, Word};

/// Assignment of each source symbol to a single word, or `None` for the empty view.
pub type WordViews = BTreeMap<SymbolId, Option<Word>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteOutcome {
    /// The first capturing assignment found, in enumeration order.
    pub views: Option<WordViews>,
    /// Longest candidate word per symbol.
    pub word_bound: usize,
    pub assignments_tried: u64,
}

impl BruteOutcome {
    pub fn found(&self) -> bool {
        self.views.is_some()
    }
}

type Relation = Vec<bool>;

fn letter_relation(a: &Nwa, l: Letter) -> Relation {
    let n = a.num_states();
    let mut r = vec![false; n * n];
    for p in 0..n {
        for &(m, q) in a.transitions(p) {
            if m == l {
                r[p * n + q] = true;
            }
        }
    }
    r
}

fn compose(x: &Relation, y: &Relation, n: usize) -> Relation {
    let mut r = vec![false; n * n];
    for p in 0..n {
        for m in 0..n {
            if x[p * n + m] {
                for q in 0..n {
                    r[p * n + q] |= y[m * n + q];
                }
            }
        }
    }
    r
}

/// Length of the longest shortest word over `letters` among the state relations that
/// words induce on `a` (epsilon-free). Every relation is realized by a word at most this
/// long.
pub fn relation_depth(a: &Nwa, letters: &[Letter]) -> usize {
    let n = a.num_states();
    let gens: Vec<Relation> = letters.iter().map(|&l| letter_relation(a, l)).collect();
    let mut id = vec![false; n * n];
    for p in 0..n {
        id[p * n + p] = true;
    }
    let mut seen: HashSet<Relation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    let mut depth = 0;
    loop {
        let mut next = Vec::new();
        for r in &frontier {
            for g in &gens {
                let s = compose(r, g, n);
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            return depth;
        }
        depth += 1;
        frontier = next;
    }
}

fn step(a: &Nwa, set: &[bool], l: Letter) -> Vec<bool> {
    let mut out = vec![false; a.num_states()];
    for (p, _) in set.iter().enumerate().filter(|(_, &b)| b) {
        for &(m, q) in a.transitions(p) {
            if m == l {
                out[q] = true;
            }
        }
    }
    out
}

/// Simulates `source` with each source letter replaced by its view word while tracking
/// the set of `target` states reached. Returns `(sound, nonempty)`: every word of
/// `q_s[V]` is accepted by `target`, and `q_s[V]` has a word. Both automata must be
/// epsilon-free.
pub fn word_views_capture(source: &Nwa, target: &Nwa, alphabet: &Alphabet, views: &WordViews) -> (bool, bool) {
    let mut init = vec![false; target.num_states()];
    for &p in target.initials() {
        init[p] = true;
    }
    let mut seen: HashSet<(usize, Vec<bool>)> = HashSet::new();
    let mut queue = VecDeque::new();
    for &p in source.initials() {
        if seen.insert((p, init.clone())) {
            queue.push_back((p, init.clone()));
        }
    }
    let mut nonempty = false;
    while let Some((p, set)) = queue.pop_front() {
        if source.is_final(p) {
            nonempty = true;
            if !set.iter().enumerate().any(|(q, &b)| b && target.is_final(q)) {
                return (false, true);
            }
        }
        for &(l, q) in source.transitions(p) {
            let next = if alphabet.is_source(l.symbol) {
                match views.get(&l.symbol) {
                    Some(Some(w)) => w.iter().fold(set.clone(), |s, &m| step(target, &s, m)),
                    _ => continue,
                }
            } else {
                step(target, &set, l)
            };
            if seen.insert((q, next.clone())) {
                queue.push_back((q, next));
            }
        }
    }
    (true, nonempty)
}

/// Exhaustive search for sound views on a path-query instance: every source symbol gets
/// the empty view or one word over the target alphabet, up to the relation depth of the
/// targets. Symbols and words are tried in a fixed order (shorter words first).
pub fn brute_view_existence_rpq(instance: &ProblemInstance, budget: u64) -> Result<BruteOutcome> {
    if instance.kind != QueryKind::Rpq {
        return Err(Error::Unsupported(format!("brute-force search on {} instances", instance.kind)));
    }
    let al = &instance.alphabet;
    let letters = al.target_letters();
    let compiled: Vec<(Nwa, Nwa)> = instance
        .mappings
        .iter()
        .map(|m| {
            let s = m.source.as_path().expect("validated path instance");
            let t = m.target.as_path().expect("validated path instance");
            (compile(s, &[]), compile(t, &[]))
        })
        .collect();
    let union = compiled
        .iter()
        .map(|(_, t)| t.clone())
        .reduce(|a, b| a.disjoint_union(&b))
        .ok_or_else(|| Error::invalid("no mappings"))?;
    let bound = relation_depth(&union, &letters);

    let mut words: Vec<Option<Word>> = vec![None, Some(Vec::new())];
    for len in 1..=bound {
        for w in std::iter::repeat_n(letters.iter().copied(), len).multi_cartesian_product() {
            words.push(Some(w));
        }
    }
    let sources = instance.occurring_sources();
    let total = (words.len() as u64).checked_pow(sources.len() as u32);
    if total.is_none_or(|t| t > budget) {
        return Err(Error::CapExceeded {
            resource: "brute-force assignments",
            limit: budget as usize,
        });
    }

    let choices: Box<dyn Iterator<Item = Vec<usize>>> = if sources.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(std::iter::repeat(0..words.len()).take(sources.len()).multi_cartesian_product())
    };
    let mut tried = 0;
    for choice in choices {
        tried += 1;
        let views: WordViews = sources.iter().zip(&choice).map(|(&s, &i)| (s, words[i].clone())).collect();
        let ok = compiled.iter().all(|(s, t)| word_views_capture(s, t, al, &views) == (true, true));
        if ok {
            return Ok(BruteOutcome {
                views: Some(views),
                word_bound: bound,
                assignments_tried: tried,
            });
        }
    }
    Ok(BruteOutcome {
        views: None,
        word_bound: bound,
        assignments_tried: tried,
    })
}

/// Length bound for fold witnesses: `2|u| + 2·states`.
pub fn fold_length_bound(u_len: usize, states: usize) -> usize {
    2 * u_len + 2 * states
}

/// Whether some word of `L(a)` with at most `max_len` letters folds onto `u`: a
/// breadth-first search over (state, position in `u`) where a letter either moves one
/// position right matching `u`, or one position left matching the inverse of the letter
/// it crosses.
pub fn brute_fold_member(a: &Nwa, u: &[Letter], max_len: usize) -> bool {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut frontier: Vec<(usize, usize)> = Vec::new();
    for &p in a.initials() {
        if seen.insert((p, 0)) {
            frontier.push((p, 0));
        }
    }
    for depth in 0..=max_len {
        if frontier.iter().any(|&(p, i)| i == u.len() && a.is_final(p)) {
            return true;
        }
        if depth == max_len {
            break;
        }
        let mut next = Vec::new();
        for &(p, i) in &frontier {
            for &(l, q) in a.transitions(p) {
                if i < u.len() && u[i] == l && seen.insert((q, i + 1)) {
                    next.push((q, i + 1));
                }
                if i > 0 && u[i - 1].inverted() == l && seen.insert((q, i - 1)) {
                    next.push((q, i - 1));
                }
            }
        }
        frontier = next;
    }
    false
}
