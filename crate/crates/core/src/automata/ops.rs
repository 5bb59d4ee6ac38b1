use std::collections::{HashMap, VecDeque};

use super::dwa::{determinize_over, Dwa};
use super::nwa::{Nwa, StateId};
use crate::error::Result;
use crate::model::{Letter, Word};

/// Default bound on the number of subsets built by determinization.
pub const DEFAULT_DETERMINIZATION_CAP: usize = 100_000;

/// Intersection automaton over the union of both alphabets, restricted to reachable pairs.
pub fn product(a: &Nwa, b: &Nwa) -> Nwa {
    let a = if a.has_epsilon() { a.eliminate_epsilon() } else { a.clone() };
    let b = if b.has_epsilon() { b.eliminate_epsilon() } else { b.clone() };
    let mut out = Nwa::new(a.alphabet().iter().chain(b.alphabet()).copied());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in a.initials() {
        for &q in b.initials() {
            let id = out.add_state(a.is_final(p) && b.is_final(q));
            out.add_initial(id);
            index.insert((p, q), id);
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let from = index[&(p, q)];
        for &(l, p2) in a.transitions(p) {
            for &(m, q2) in b.transitions(q) {
                if l != m {
                    continue;
                }
                let to = *index.entry((p2, q2)).or_insert_with(|| {
                    queue.push_back((p2, q2));
                    out.add_state(a.is_final(p2) && b.is_final(q2))
                });
                out.add_transition(from, l, to);
            }
        }
    }
    out
}

/// A shortest accepted word, if any. Among words of minimal length the one found first
/// in breadth-first order (letters in alphabet order) is returned.
pub fn shortest_word(a: &Nwa) -> Option<Word> {
    let n = a.num_states();
    // 0-1 BFS: epsilon moves cost 0
    let mut dist = vec![usize::MAX; n];
    let mut pred: Vec<Option<(StateId, Option<Letter>)>> = vec![None; n];
    let mut deque = VecDeque::new();
    for &p in a.initials() {
        dist[p] = 0;
        deque.push_back(p);
    }
    let mut best: Option<StateId> = None;
    while let Some(p) = deque.pop_front() {
        if a.is_final(p) {
            best = Some(p);
            break;
        }
        for &q in a.epsilons(p) {
            if dist[p] < dist[q] {
                dist[q] = dist[p];
                pred[q] = Some((p, None));
                deque.push_front(q);
            }
        }
        let mut row: Vec<(Letter, StateId)> = a.transitions(p).to_vec();
        row.sort();
        for (l, q) in row {
            if dist[p] + 1 < dist[q] {
                dist[q] = dist[p] + 1;
                pred[q] = Some((p, Some(l)));
                deque.push_back(q);
            }
        }
    }
    let mut p = best?;
    let mut word = Vec::new();
    while let Some((q, l)) = pred[p] {
        if let Some(l) = l {
            word.push(l);
        }
        p = q;
    }
    word.reverse();
    Some(word)
}

pub fn is_empty(a: &Nwa) -> bool {
    shortest_word(a).is_none()
}

/// Complement of `a` over `alphabet ∪ alphabet(a)`.
pub fn complement(a: &Nwa, alphabet: &[Letter], cap: usize) -> Result<Dwa> {
    Ok(determinize_over(a, alphabet, cap)?.complement())
}

/// `None` when `L(a) ⊆ L(b)`, otherwise a shortest word of `L(a) ∖ L(b)`.
///
/// Computed as the emptiness of `a × complement(determinize(b))`, the complement being
/// taken over the union of both alphabets.
pub fn containment_counterexample(a: &Nwa, b: &Nwa, cap: usize) -> Result<Option<Word>> {
    let sigma: Vec<Letter> = a.alphabet().iter().chain(b.alphabet()).copied().collect();
    let not_b = complement(b, &sigma, cap)?;
    Ok(shortest_word(&product(a, &not_b.to_nwa())))
}

/// `L(a) ⊆ L(b)`.
pub fn contains(a: &Nwa, b: &Nwa, cap: usize) -> Result<bool> {
    Ok(containment_counterexample(a, b, cap)?.is_none())
}

/// Either `None` (equivalent) or a separating word together with the side it belongs to
/// (`true` when it is in `L(a)` only).
pub fn equivalence_counterexample(a: &Nwa, b: &Nwa, cap: usize) -> Result<Option<(Word, bool)>> {
    if let Some(w) = containment_counterexample(a, b, cap)? {
        return Ok(Some((w, true)));
    }
    Ok(containment_counterexample(b, a, cap)?.map(|w| (w, false)))
}

pub fn equivalent(a: &Nwa, b: &Nwa, cap: usize) -> Result<bool> {
    Ok(equivalence_counterexample(a, b, cap)?.is_none())
}
