//! Folding of words over `Σ±`, two-way automata and containment of two-way path queries.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::automata::{containment_counterexample, Dwa, Nwa, StateId};
use crate::error::{Error, Result};
use crate::model::{Letter, Word};

/// Closes a set of letters under inversion and sorts it.
pub fn two_way_closure(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = letters.into_iter().flat_map(|l| [l, l.inverted()]).collect();
    out.sort();
    out.dedup();
    out
}

/// Index sequence `i_0 … i_m` witnessing that `v` folds onto `u`, if it does.
///
/// Step `j` moves right when `v_{j+1} = u_{i_j + 1}` and left when `v_{j+1}` is the
/// inverse of `u_{i_j}`, the letter just crossed.
pub fn folds_onto(v: &[Letter], u: &[Letter]) -> Option<Vec<usize>> {
    let (k, m) = (v.len(), u.len());
    let mut pred: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    pred.insert((0, 0), usize::MAX);
    while let Some((j, i)) = queue.pop_front() {
        if j == k {
            if i == m {
                let mut cert = vec![i];
                let (mut jj, mut ii) = (j, i);
                while jj > 0 {
                    ii = pred[&(jj, ii)];
                    jj -= 1;
                    cert.push(ii);
                }
                cert.reverse();
                return Some(cert);
            }
            continue;
        }
        let x = v[j];
        let mut moves = Vec::with_capacity(2);
        if i < m && x == u[i] {
            moves.push(i + 1);
        }
        if i > 0 && x == u[i - 1].inverted() {
            moves.push(i - 1);
        }
        for i2 in moves {
            if let std::collections::hash_map::Entry::Vacant(e) = pred.entry((j + 1, i2)) {
                e.insert(i);
                queue.push_back((j + 1, i2));
            }
        }
    }
    None
}

/// Symbol under the head of a two-way automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    LeftEnd,
    Letter(Letter),
    RightEnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Left,
    Right,
}

/// Two-way nondeterministic word automaton running on `⊢ u ⊣`.
///
/// A run starts on `⊢` in the initial state and accepts when it reads `⊣` in a final
/// state. Moves left of `⊢` and right of `⊣` are discarded.
#[derive(Clone, Debug)]
pub struct TwoNwa {
    alphabet: Vec<Letter>,
    initial: StateId,
    finals: Vec<bool>,
    delta: Vec<Vec<(Cell, Dir, StateId)>>,
}

impl TwoNwa {
    pub fn new(alphabet: Vec<Letter>) -> Self {
        TwoNwa {
            alphabet,
            initial: 0,
            finals: Vec::new(),
            delta: Vec::new(),
        }
    }

    pub fn add_state(&mut self, is_final: bool) -> StateId {
        self.finals.push(is_final);
        self.delta.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn set_initial(&mut self, p: StateId) {
        self.initial = p;
    }

    pub fn add_transition(&mut self, from: StateId, read: Cell, dir: Dir, to: StateId) {
        match (read, dir) {
            (Cell::LeftEnd, Dir::Left) | (Cell::RightEnd, Dir::Right) => return,
            _ => {}
        }
        let row = &mut self.delta[from];
        if !row.contains(&(read, dir, to)) {
            row.push((read, dir, to));
        }
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, p: StateId) -> bool {
        self.finals[p]
    }

    pub fn moves(&self, p: StateId, read: Cell) -> impl Iterator<Item = (Dir, StateId)> + '_ {
        self.delta[p]
            .iter()
            .filter(move |&&(c, _, _)| c == read)
            .map(|&(_, d, q)| (d, q))
    }

    /// Direct membership test by search over configurations `(state, cell)`.
    pub fn accepts(&self, u: &[Letter]) -> bool {
        let cells = u.len() + 2;
        let cell = |c: usize| {
            if c == 0 {
                Cell::LeftEnd
            } else if c == cells - 1 {
                Cell::RightEnd
            } else {
                Cell::Letter(u[c - 1])
            }
        };
        let n = self.num_states();
        let mut seen = FixedBitSet::with_capacity(n * cells);
        let mut stack = vec![(self.initial, 0usize)];
        seen.insert(self.initial * cells);
        while let Some((p, c)) = stack.pop() {
            if c == cells - 1 && self.finals[p] {
                return true;
            }
            for (d, q) in self.moves(p, cell(c)) {
                let c2 = match d {
                    Dir::Left => c - 1,
                    Dir::Right => c + 1,
                };
                if !seen.put(q * cells + c2) {
                    stack.push((q, c2));
                }
            }
        }
        false
    }
}

/// Two-way automaton for `fold(L(a))` over `two_way_closure(alphabet ∪ alphabet(a))`.
///
/// Its states are a start state and, for each state `q` of `a`, a state `N(q)` sitting
/// just right of the boundary it is at (about to move right over the next letter) and a
/// state `L(q)` sitting just left of it (about to move left over the letter just
/// crossed). Moving right over `y` runs `a` on `y`; moving left over `x` runs `a` on `x⁻`.
pub fn fold_automaton(a: &Nwa, alphabet: &[Letter]) -> Result<TwoNwa> {
    if a.has_epsilon() {
        return Err(Error::invalid("fold_automaton needs an epsilon-free automaton"));
    }
    let sigma = two_way_closure(alphabet.iter().chain(a.alphabet()).copied());
    let n = a.num_states();
    let mut t = TwoNwa::new(sigma.clone());
    let start = t.add_state(false);
    let nstate = |q: StateId| 1 + q;
    let lstate = |q: StateId| 1 + n + q;
    for q in 0..n {
        t.add_state(a.is_final(q));
    }
    for _ in 0..n {
        t.add_state(false);
    }
    t.set_initial(start);
    for &q in a.initials() {
        t.add_transition(start, Cell::LeftEnd, Dir::Right, nstate(q));
    }
    for q in 0..n {
        for &(y, q2) in a.transitions(q) {
            t.add_transition(nstate(q), Cell::Letter(y), Dir::Right, nstate(q2));
            t.add_transition(lstate(q), Cell::Letter(y.inverted()), Dir::Left, lstate(q2));
        }
        for &x in &sigma {
            t.add_transition(nstate(q), Cell::Letter(x), Dir::Left, lstate(q));
            t.add_transition(lstate(q), Cell::Letter(x), Dir::Right, nstate(q));
        }
        t.add_transition(nstate(q), Cell::RightEnd, Dir::Left, lstate(q));
        t.add_transition(lstate(q), Cell::LeftEnd, Dir::Right, nstate(q));
    }
    Ok(t)
}

/// One-way automaton with the language of `t`, built from crossing behaviour.
///
/// After a prefix `⊢ u_1 … u_c` the deterministic state records the states in which `t`
/// can cross from cell `c` into cell `c + 1` for the first time coming from the start,
/// and for every pair `(p, q)` whether entering cell `c` from the right in `p` can lead
/// back across the same boundary in `q`. Fails when more than `cap` states are built.
pub fn two_to_one(t: &TwoNwa, cap: usize) -> Result<Nwa> {
    let n = t.num_states();
    let sigma = t.alphabet().to_vec();

    // closure at a cell under "step left, come back through ret"
    let reach = |start: &FixedBitSet, read: Cell, ret: &FixedBitSet| -> FixedBitSet {
        let mut seen = start.clone();
        let mut stack: Vec<StateId> = start.ones().collect();
        while let Some(s) = stack.pop() {
            for (d, s2) in t.moves(s, read) {
                if d == Dir::Left {
                    for q in 0..n {
                        if ret.contains(s2 * n + q) && !seen.put(q) {
                            stack.push(q);
                        }
                    }
                }
            }
        }
        seen
    };
    let right_exits = |set: &FixedBitSet, read: Cell| -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(n);
        for s in set.ones() {
            for (d, s2) in t.moves(s, read) {
                if d == Dir::Right {
                    out.insert(s2);
                }
            }
        }
        out
    };
    let advance = |enter: &FixedBitSet, ret: &FixedBitSet, read: Cell| {
        let enter2 = right_exits(&reach(enter, read, ret), read);
        let mut ret2 = FixedBitSet::with_capacity(n * n);
        for p in 0..n {
            let mut single = FixedBitSet::with_capacity(n);
            single.insert(p);
            for q in right_exits(&reach(&single, read, ret), read).ones() {
                ret2.insert(p * n + q);
            }
        }
        (enter2, ret2)
    };

    let mut init_enter = FixedBitSet::with_capacity(n);
    init_enter.insert(t.initial());
    let first = advance(&init_enter, &FixedBitSet::with_capacity(n * n), Cell::LeftEnd);

    let mut index: HashMap<(FixedBitSet, FixedBitSet), StateId> = HashMap::new();
    let mut states: Vec<(FixedBitSet, FixedBitSet)> = Vec::new();
    let mut table: Vec<StateId> = Vec::new();
    index.insert(first.clone(), 0);
    states.push(first);
    let mut head = 0;
    while head < states.len() {
        for &l in &sigma {
            let (enter, ret) = &states[head];
            let next = advance(enter, ret, Cell::Letter(l));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= cap {
                        return Err(Error::CapExceeded {
                            resource: "two-way conversion state count",
                            limit: cap,
                        });
                    }
                    let id = states.len();
                    index.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            table.push(id);
        }
        head += 1;
    }
    let finals: Vec<bool> = states
        .iter()
        .map(|(enter, ret)| reach(enter, Cell::RightEnd, ret).ones().any(|s| t.is_final(s)))
        .collect();
    let k = sigma.len();
    let d = Dwa::from_fn(sigma, states.len(), 0, finals, |p, i| table[p * k + i]);
    Ok(d.to_nwa().trim())
}

/// Automaton for `fold(L(a))`.
pub fn fold_language(a: &Nwa, alphabet: &[Letter], cap: usize) -> Result<Nwa> {
    let a = if a.has_epsilon() { a.eliminate_epsilon() } else { a.clone() };
    two_to_one(&fold_automaton(&a, alphabet)?, cap)
}

/// `None` when `q1 ⊑ q2` as two-way path queries, i.e. `L(q1) ⊆ fold(L(q2))`; otherwise a
/// word of `L(q1)` outside `fold(L(q2))`.
pub fn containment_counterexample_2rpq(q1: &Nwa, q2: &Nwa, cap: usize) -> Result<Option<Word>> {
    let sigma = two_way_closure(q1.alphabet().iter().chain(q2.alphabet()).copied());
    let folded = fold_language(q2, &sigma, cap)?;
    containment_counterexample(q1, &folded, cap)
}

pub fn contains_2rpq(q1: &Nwa, q2: &Nwa, cap: usize) -> Result<bool> {
    Ok(containment_counterexample_2rpq(q1, q2, cap)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, DEFAULT_DETERMINIZATION_CAP};
    use crate::model::{parse_regex_open, Alphabet};

    fn setup(names: &[&str]) -> Alphabet {
        let mut al = Alphabet::new();
        for n in names {
            al.declare(n, crate::model::SymbolKind::Target, 2).unwrap();
        }
        al
    }

    fn nwa(al: &mut Alphabet, text: &str) -> Nwa {
        let r = parse_regex_open(text, al, true).unwrap();
        compile(&r, &[])
    }

    #[test]
    fn fold_certificate_example() {
        let al = setup(&["a", "b", "c"]);
        let v = al.parse_word("a b b^- b c").unwrap();
        let u = al.parse_word("a b c").unwrap();
        assert_eq!(folds_onto(&v, &u), Some(vec![0, 1, 2, 1, 2, 3]));
        assert_eq!(folds_onto(&u, &u), Some(vec![0, 1, 2, 3]));
        let a = al.parse_word("a").unwrap();
        let b = al.parse_word("b").unwrap();
        assert_eq!(folds_onto(&a, &b), None);
    }

    #[test]
    fn fold_automaton_accepts_folded_word() {
        let mut al = setup(&["a", "b", "c"]);
        let a = nwa(&mut al, "a.b.b^-.b.c");
        let t = fold_automaton(&a, &[]).unwrap();
        let u = al.parse_word("a b c").unwrap();
        assert!(t.accepts(&u));
        let one = two_to_one(&t, 10_000).unwrap();
        assert!(one.accepts(&u));
        assert!(one.accepts(&al.parse_word("a b b^- b c").unwrap()));
        assert!(!one.accepts(&al.parse_word("a c").unwrap()));
    }

    #[test]
    fn containment_examples() {
        let mut al = setup(&["a", "b", "c"]);
        let cap = DEFAULT_DETERMINIZATION_CAP;
        let ac = nwa(&mut al, "a.c");
        let abbc = nwa(&mut al, "a.b.b^-.c");
        // x -a-> y -c-> z answers a.c but has no b edge at y
        assert!(!contains_2rpq(&ac, &abbc, cap).unwrap());
        // x0 -a-> x1 -b-> x2 <-b- x3 -c-> x4 answers a.b.b^-.c only
        assert!(!contains_2rpq(&abbc, &ac, cap).unwrap());
        let abc = nwa(&mut al, "a.b.c");
        let abbbc = nwa(&mut al, "a.b.b^-.b.c");
        assert!(contains_2rpq(&abc, &abbbc, cap).unwrap());
        assert!(contains_2rpq(&abbc, &abbc, cap).unwrap());
        let ab = nwa(&mut al, "a.b");
        let acq = nwa(&mut al, "a.c");
        assert_eq!(
            containment_counterexample_2rpq(&ab, &acq, cap).unwrap(),
            Some(al.parse_word("a b").unwrap())
        );
    }

    #[test]
    fn forward_language_is_inside_its_fold() {
        let mut al = setup(&["a", "b"]);
        let a = nwa(&mut al, "(a|b.a)*.b");
        let f = fold_language(&a, &[], 10_000).unwrap();
        for w in a.words_up_to(5) {
            assert!(f.accepts(&w));
        }
    }

    #[test]
    fn conversion_cap() {
        let mut al = setup(&["a", "b"]);
        let a = nwa(&mut al, "(a|b)*.a.b^-");
        assert!(matches!(fold_language(&a, &[], 1), Err(Error::CapExceeded { .. })));
    }
}
