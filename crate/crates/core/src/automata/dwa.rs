use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::nwa::{Nwa, StateId};
use crate::error::{Error, Result};
use crate::model::Letter;

/// Complete deterministic word automaton over a fixed alphabet.
///
/// Words containing letters outside the alphabet are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dwa {
    alphabet: Vec<Letter>,
    initial: StateId,
    finals: Vec<bool>,
    // next[state * |alphabet| + letter index]
    next: Vec<StateId>,
}

impl Dwa {
    /// Builds a DWA from an explicit table; `next(p, i)` gives the successor of `p` on
    /// the `i`-th letter of the sorted alphabet.
    pub fn from_fn(
        alphabet: Vec<Letter>,
        num_states: usize,
        initial: StateId,
        finals: Vec<bool>,
        mut next: impl FnMut(StateId, usize) -> StateId,
    ) -> Self {
        debug_assert!(alphabet.windows(2).all(|w| w[0] < w[1]));
        let k = alphabet.len();
        let mut table = Vec::with_capacity(num_states * k);
        for p in 0..num_states {
            for i in 0..k {
                table.push(next(p, i));
            }
        }
        Dwa {
            alphabet,
            initial,
            finals,
            next: table,
        }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, p: StateId) -> bool {
        self.finals[p]
    }

    pub fn letter_index(&self, l: Letter) -> Option<usize> {
        self.alphabet.binary_search(&l).ok()
    }

    pub fn successor(&self, p: StateId, l: Letter) -> Option<StateId> {
        self.letter_index(l)
            .map(|i| self.next[p * self.alphabet.len() + i])
    }

    pub fn successor_by_index(&self, p: StateId, i: usize) -> StateId {
        self.next[p * self.alphabet.len() + i]
    }

    pub fn run(&self, word: &[Letter]) -> Option<StateId> {
        let mut p = self.initial;
        for &l in word {
            p = self.successor(p, l)?;
        }
        Some(p)
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run(word).is_some_and(|p| self.finals[p])
    }

    /// Checks that the table is total and deterministic (it is by construction).
    pub fn is_complete(&self) -> bool {
        self.next.len() == self.num_states() * self.alphabet.len()
            && self.next.iter().all(|&q| q < self.num_states())
    }

    /// Automaton for `Σ* ∖ L(self)` over the same alphabet.
    pub fn complement(&self) -> Dwa {
        Dwa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            finals: self.finals.iter().map(|f| !f).collect(),
            next: self.next.clone(),
        }
    }

    pub fn with_finals(&self, finals: Vec<bool>) -> Dwa {
        assert_eq!(finals.len(), self.num_states());
        Dwa {
            finals,
            ..self.clone()
        }
    }

    pub fn to_nwa(&self) -> Nwa {
        let mut a = Nwa::new(self.alphabet.iter().copied());
        for p in 0..self.num_states() {
            a.add_state(self.finals[p]);
        }
        a.add_initial(self.initial);
        for p in 0..self.num_states() {
            for (i, &l) in self.alphabet.iter().enumerate() {
                a.add_transition(p, l, self.successor_by_index(p, i));
            }
        }
        a
    }
}

/// Subset construction over the automaton's own alphabet.
pub fn determinize(a: &Nwa, cap: usize) -> Result<Dwa> {
    determinize_over(a, a.alphabet(), cap)
}

/// Subset construction over `alphabet ∪ alphabet(a)`. The empty subset acts as the sink,
/// so the result is always complete. Fails once more than `cap` subsets are reached.
pub fn determinize_over(a: &Nwa, alphabet: &[Letter], cap: usize) -> Result<Dwa> {
    let mut sigma: Vec<Letter> = alphabet.iter().chain(a.alphabet()).copied().collect();
    sigma.sort();
    sigma.dedup();

    let mut index: HashMap<FixedBitSet, StateId> = HashMap::new();
    let mut subsets: Vec<FixedBitSet> = Vec::new();
    let mut table: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();

    let init = a.initial_set();
    index.insert(init.clone(), 0);
    subsets.push(init);
    queue.push_back(0);
    while let Some(p) = queue.pop_front() {
        let mut row = Vec::with_capacity(sigma.len());
        for &l in &sigma {
            let t = a.step(&subsets[p], l);
            let q = match index.get(&t) {
                Some(&q) => q,
                None => {
                    if subsets.len() >= cap {
                        return Err(Error::CapExceeded {
                            resource: "determinization state count",
                            limit: cap,
                        });
                    }
                    let q = subsets.len();
                    index.insert(t.clone(), q);
                    subsets.push(t);
                    queue.push_back(q);
                    q
                }
            };
            row.push(q);
        }
        // rows are produced in state order because the queue is FIFO over fresh ids
        debug_assert_eq!(table.len(), p * sigma.len());
        table.extend(row);
    }
    let finals = subsets.iter().map(|s| a.accepts_from(s)).collect();
    Ok(Dwa {
        alphabet: sigma,
        initial: 0,
        finals,
        next: table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile;
    use crate::model::{parse_regex_open, Alphabet};

    #[test]
    fn complement_of_chain() {
        let mut al = Alphabet::new();
        let r = parse_regex_open("b1.b2", &mut al, false).unwrap();
        let a = compile(&r, &al.target_letters());
        let d = determinize(&a, 100).unwrap();
        assert!(d.is_complete());
        let c = d.complement();
        let w = |s: &str| al.parse_word(s).unwrap();
        assert!(c.accepts(&w("eps")));
        assert!(c.accepts(&w("b1")));
        assert!(c.accepts(&w("b1 b2 b1")));
        assert!(!c.accepts(&w("b1 b2")));
    }

    #[test]
    fn cap_is_enforced() {
        let mut al = Alphabet::new();
        // (a|b)*.a.(a|b).(a|b) needs 8 subsets
        let r = parse_regex_open("(a|b)*.a.(a|b).(a|b)", &mut al, false).unwrap();
        let a = compile(&r, &al.target_letters());
        assert!(matches!(determinize(&a, 4), Err(Error::CapExceeded { .. })));
        assert!(determinize(&a, 100).is_ok());
    }
}
