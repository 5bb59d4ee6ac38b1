use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::model::{Letter, Word};

pub type StateId = usize;

/// Nondeterministic word automaton with optional epsilon moves and several initial states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nwa {
    alphabet: Vec<Letter>,
    initials: Vec<StateId>,
    finals: Vec<bool>,
    delta: Vec<Vec<(Letter, StateId)>>,
    eps: Vec<Vec<StateId>>,
}

impl Nwa {
    /// An automaton with no states over `alphabet` (accepts nothing).
    pub fn new(alphabet: impl IntoIterator<Item = Letter>) -> Self {
        let mut alphabet: Vec<Letter> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        Nwa {
            alphabet,
            initials: Vec::new(),
            finals: Vec::new(),
            delta: Vec::new(),
            eps: Vec::new(),
        }
    }

    /// Automaton accepting exactly `word`.
    pub fn from_word(alphabet: impl IntoIterator<Item = Letter>, word: &[Letter]) -> Self {
        let mut a = Nwa::new(alphabet.into_iter().chain(word.iter().copied()));
        let mut p = a.add_state(word.is_empty());
        a.add_initial(p);
        for (i, &l) in word.iter().enumerate() {
            let q = a.add_state(i + 1 == word.len());
            a.add_transition(p, l, q);
            p = q;
        }
        a
    }

    pub fn add_state(&mut self, is_final: bool) -> StateId {
        self.finals.push(is_final);
        self.delta.push(Vec::new());
        self.eps.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn add_initial(&mut self, p: StateId) {
        if let Err(i) = self.initials.binary_search(&p) {
            self.initials.insert(i, p);
        }
    }

    pub fn set_final(&mut self, p: StateId, is_final: bool) {
        self.finals[p] = is_final;
    }

    pub fn add_transition(&mut self, from: StateId, letter: Letter, to: StateId) {
        if let Err(i) = self.alphabet.binary_search(&letter) {
            self.alphabet.insert(i, letter);
        }
        let row = &mut self.delta[from];
        if !row.contains(&(letter, to)) {
            row.push((letter, to));
        }
    }

    pub fn add_epsilon(&mut self, from: StateId, to: StateId) {
        if from != to && !self.eps[from].contains(&to) {
            self.eps[from].push(to);
        }
    }

    /// Adds letters to the alphabet without adding transitions.
    pub fn extend_alphabet(&mut self, letters: impl IntoIterator<Item = Letter>) {
        self.alphabet.extend(letters);
        self.alphabet.sort();
        self.alphabet.dedup();
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn initials(&self) -> &[StateId] {
        &self.initials
    }

    pub fn is_final(&self, p: StateId) -> bool {
        self.finals[p]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(move |&p| self.finals[p])
    }

    pub fn transitions(&self, p: StateId) -> &[(Letter, StateId)] {
        &self.delta[p]
    }

    pub fn epsilons(&self, p: StateId) -> &[StateId] {
        &self.eps[p]
    }

    pub fn has_epsilon(&self) -> bool {
        self.eps.iter().any(|e| !e.is_empty())
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum::<usize>() + self.eps.iter().map(Vec::len).sum::<usize>()
    }

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.num_states())
    }

    /// Adds to `set` every state reachable from it through epsilon moves.
    pub fn epsilon_close(&self, set: &mut FixedBitSet) {
        let mut stack: Vec<StateId> = set.ones().collect();
        while let Some(p) = stack.pop() {
            for &q in &self.eps[p] {
                if !set.contains(q) {
                    set.insert(q);
                    stack.push(q);
                }
            }
        }
    }

    pub fn initial_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        for &p in &self.initials {
            s.insert(p);
        }
        self.epsilon_close(&mut s);
        s
    }

    /// Epsilon-closed successor set.
    pub fn step(&self, set: &FixedBitSet, letter: Letter) -> FixedBitSet {
        let mut out = self.empty_set();
        for p in set.ones() {
            for &(l, q) in &self.delta[p] {
                if l == letter {
                    out.insert(q);
                }
            }
        }
        self.epsilon_close(&mut out);
        out
    }

    pub fn accepts_from(&self, set: &FixedBitSet) -> bool {
        set.ones().any(|p| self.finals[p])
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut cur = self.initial_set();
        for &l in word {
            cur = self.step(&cur, l);
            if cur.is_clear() {
                return false;
            }
        }
        self.accepts_from(&cur)
    }

    /// Equivalent automaton without epsilon moves, restricted to useful states and
    /// renumbered in breadth-first order from the initial states.
    pub fn eliminate_epsilon(&self) -> Nwa {
        let n = self.num_states();
        let closures: Vec<FixedBitSet> = (0..n)
            .map(|p| {
                let mut s = self.empty_set();
                s.insert(p);
                self.epsilon_close(&mut s);
                s
            })
            .collect();
        let mut out = Nwa::new(self.alphabet.iter().copied());
        for p in 0..n {
            let is_final = closures[p].ones().any(|q| self.finals[q]);
            out.add_state(is_final);
        }
        for p in 0..n {
            for q in closures[p].ones() {
                for &(l, r) in &self.delta[q] {
                    out.add_transition(p, l, r);
                }
            }
        }
        for &p in &self.initials {
            out.add_initial(p);
        }
        out.trim()
    }

    /// Keeps only states that are reachable and co-reachable; numbering is breadth-first
    /// from the initial states, following transitions in letter order.
    ///
    /// An automaton with an empty language keeps a single non-final initial state.
    pub fn trim(&self) -> Nwa {
        let n = self.num_states();
        // co-reachability through both kinds of moves
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for p in 0..n {
            for &(_, q) in &self.delta[p] {
                rev[q].push(p);
            }
            for &q in &self.eps[p] {
                rev[q].push(p);
            }
        }
        let mut useful = vec![false; n];
        let mut stack: Vec<StateId> = self.finals().collect();
        for &p in &stack {
            useful[p] = true;
        }
        while let Some(p) = stack.pop() {
            for &q in &rev[p] {
                if !useful[q] {
                    useful[q] = true;
                    stack.push(q);
                }
            }
        }

        let mut order: Vec<Option<StateId>> = vec![None; n];
        let mut queue = VecDeque::new();
        let mut count = 0;
        for &p in &self.initials {
            if useful[p] && order[p].is_none() {
                order[p] = Some(count);
                count += 1;
                queue.push_back(p);
            }
        }
        while let Some(p) = queue.pop_front() {
            let mut succ: Vec<(Option<Letter>, StateId)> = self.eps[p].iter().map(|&q| (None, q)).collect();
            succ.extend(self.delta[p].iter().map(|&(l, q)| (Some(l), q)));
            succ.sort();
            for (_, q) in succ {
                if useful[q] && order[q].is_none() {
                    order[q] = Some(count);
                    count += 1;
                    queue.push_back(q);
                }
            }
        }

        let mut out = Nwa::new(self.alphabet.iter().copied());
        if count == 0 {
            let p = out.add_state(false);
            out.add_initial(p);
            return out;
        }
        let mut old_of = vec![0; count];
        for (old, new) in order.iter().enumerate() {
            if let Some(new) = new {
                old_of[*new] = old;
            }
        }
        for &old in &old_of {
            out.add_state(self.finals[old]);
        }
        for (new, &old) in old_of.iter().enumerate() {
            let mut row: Vec<(Letter, StateId)> = self.delta[old]
                .iter()
                .filter_map(|&(l, q)| order[q].map(|nq| (l, nq)))
                .collect();
            row.sort();
            row.dedup();
            out.delta[new] = row;
            let mut e: Vec<StateId> = self.eps[old].iter().filter_map(|&q| order[q]).collect();
            e.sort();
            e.dedup();
            out.eps[new] = e;
        }
        for &p in &self.initials {
            if let Some(np) = order[p] {
                out.add_initial(np);
            }
        }
        out
    }

    /// Automaton for the reversed language with every letter inverted; this is the
    /// language of the inverse path query.
    pub fn inverse(&self) -> Nwa {
        let mut out = Nwa::new(self.alphabet.iter().map(|l| l.inverted()));
        for p in 0..self.num_states() {
            out.add_state(self.initials.contains(&p));
        }
        for p in 0..self.num_states() {
            for &(l, q) in &self.delta[p] {
                out.add_transition(q, l.inverted(), p);
            }
            for &q in &self.eps[p] {
                out.add_epsilon(q, p);
            }
        }
        for p in self.finals() {
            out.add_initial(p);
        }
        out
    }

    /// Disjoint union: states of `other` are shifted by `self.num_states()`.
    pub fn disjoint_union(&self, other: &Nwa) -> Nwa {
        let off = self.num_states();
        let mut out = self.clone();
        out.extend_alphabet(other.alphabet.iter().copied());
        for p in 0..other.num_states() {
            out.add_state(other.finals[p]);
        }
        for p in 0..other.num_states() {
            for &(l, q) in &other.delta[p] {
                out.add_transition(p + off, l, q + off);
            }
            for &q in &other.eps[p] {
                out.add_epsilon(p + off, q + off);
            }
        }
        for &p in &other.initials {
            out.add_initial(p + off);
        }
        out
    }

    /// Concatenation `L(self)·L(other)`.
    pub fn concat(&self, other: &Nwa) -> Nwa {
        let off = self.num_states();
        let mut out = self.disjoint_union(other);
        out.initials.retain(|&p| p < off);
        for f in self.finals().collect::<Vec<_>>() {
            out.finals[f] = false;
            for &i in &other.initials {
                out.add_epsilon(f, i + off);
            }
        }
        out
    }

    /// All accepted words of length at most `max_len`, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier: Vec<(Word, FixedBitSet)> = vec![(Vec::new(), self.initial_set())];
        for len in 0..=max_len {
            for (w, s) in &frontier {
                if self.accepts_from(s) {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &frontier {
                for &l in &self.alphabet {
                    let t = self.step(s, l);
                    if !t.is_clear() {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push((w2, t));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Quotient by the coarsest forward bisimulation, followed by `trim`. Requires an
    /// epsilon-free automaton.
    pub fn reduce(&self) -> Nwa {
        assert!(!self.has_epsilon(), "reduce needs an epsilon-free automaton");
        let n = self.num_states();
        let mut block: Vec<usize> = self.finals.iter().map(|&f| f as usize).collect();
        let mut count = 0;
        loop {
            let mut ids: HashMap<(usize, Vec<(Letter, usize)>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for p in 0..n {
                let mut sig: Vec<(Letter, usize)> =
                    self.delta[p].iter().map(|&(l, q)| (l, block[q])).collect();
                sig.sort();
                sig.dedup();
                let fresh = ids.len();
                next[p] = *ids.entry((block[p], sig)).or_insert(fresh);
            }
            let c = ids.len();
            block = next;
            if c == count {
                break;
            }
            count = c;
        }
        let mut out = Nwa::new(self.alphabet.iter().copied());
        for _ in 0..count {
            out.add_state(false);
        }
        for p in 0..n {
            if self.finals[p] {
                out.set_final(block[p], true);
            }
            for &(l, q) in &self.delta[p] {
                out.add_transition(block[p], l, block[q]);
            }
        }
        for &p in &self.initials {
            out.add_initial(block[p]);
        }
        out.trim()
    }

    /// Letters appearing on some transition.
    pub fn used_letters(&self) -> BTreeSet<Letter> {
        self.delta.iter().flatten().map(|&(l, _)| l).collect()
    }
}
