//! Transition monoid of a target automaton and the automata of its congruence classes.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::automata::{Dwa, Nwa, StateId};
use crate::error::{Error, Result};
use crate::model::{Alphabet, Letter, Word};

/// Default bound on the number of monoid elements.
pub const DEFAULT_MONOID_CAP: usize = 4096;

/// Binary relation over the states of an automaton, stored row-major: pair `(p, q)` is
/// bit `p * n + q`.
///
/// Relations are ordered by the numeric value of that bit string, bit `n² - 1` being the
/// most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateRelation {
    n: usize,
    bits: FixedBitSet,
}

impl StateRelation {
    pub fn empty(n: usize) -> Self {
        StateRelation {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for p in 0..n {
            r.insert(p, p);
        }
        r
    }

    /// `{(p, q) | q ∈ δ(p, l)}`.
    pub fn of_letter(a: &Nwa, l: Letter) -> Self {
        let mut r = Self::empty(a.num_states());
        for p in 0..a.num_states() {
            for &(m, q) in a.transitions(p) {
                if m == l {
                    r.insert(p, q);
                }
            }
        }
        r
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, p: StateId, q: StateId) {
        self.bits.insert(p * self.n + q);
    }

    pub fn contains(&self, p: StateId, q: StateId) -> bool {
        self.bits.contains(p * self.n + q)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.bits.ones().map(|b| (b / self.n, b % self.n))
    }

    /// Relational composition: `self` first, then `other`.
    pub fn compose(&self, other: &StateRelation) -> StateRelation {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::empty(n);
        for (p, q) in self.pairs() {
            for r in 0..n {
                if other.contains(q, r) {
                    out.insert(p, r);
                }
            }
        }
        out
    }
}

impl Ord for StateRelation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let a = self.bits.as_slice();
            let b = other.bits.as_slice();
            a.iter().rev().cmp(b.iter().rev())
        })
    }
}

impl PartialOrd for StateRelation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StateRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl fmt::Display for StateRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, q)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({p},{q})")?;
        }
        write!(f, "}}")
    }
}

/// Relation of `w` in `a`: `(p, q)` iff `q ∈ δ(p, w)`. Letters outside `sigma` are
/// rejected.
pub fn relation_of_word(a: &Nwa, sigma: &[Letter], w: &[Letter]) -> Result<StateRelation> {
    if a.has_epsilon() {
        return Err(Error::invalid("relation_of_word needs an epsilon-free automaton"));
    }
    let mut r = StateRelation::identity(a.num_states());
    for &l in w {
        if !sigma.contains(&l) {
            return Err(Error::invalid(format!("letter #{} is not in the target alphabet", l.symbol.0)));
        }
        r = r.compose(&StateRelation::of_letter(a, l));
    }
    Ok(r)
}

/// Monoid element index. Elements are numbered in canonical relation order.
pub type Element = usize;

/// Realized relations of an epsilon-free automaton, closed under composition.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    automaton: Nwa,
    letters: Vec<Letter>,
    elements: Vec<StateRelation>,
    witnesses: Vec<Word>,
    index: HashMap<StateRelation, Element>,
    identity: Element,
    // right[e * |letters| + i] = e ∘ R_{letters[i]}
    right: Vec<u32>,
    // table[e * len + f] = e ∘ f
    table: Vec<u32>,
    accepting: Vec<bool>,
}

impl TransitionMonoid {
    /// Closure of `{R_ε}` under right composition with `R_l` for every `l` in `letters`.
    /// Witnesses are assigned in breadth-first order, letters in sorted order, so each is
    /// a shortest word of its class.
    pub fn build(a: &Nwa, letters: &[Letter], cap: usize) -> Result<Self> {
        if a.has_epsilon() {
            return Err(Error::invalid("the transition monoid needs an epsilon-free automaton"));
        }
        let mut letters = letters.to_vec();
        letters.sort();
        letters.dedup();
        let n = a.num_states();
        let gens: Vec<StateRelation> = letters.iter().map(|&l| StateRelation::of_letter(a, l)).collect();
        let too_many = || Error::CapExceeded {
            resource: "monoid element count",
            limit: cap,
        };

        let mut found: Vec<StateRelation> = vec![StateRelation::identity(n)];
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut index: HashMap<StateRelation, usize> = HashMap::new();
        index.insert(found[0].clone(), 0);
        let mut right_bfs: Vec<usize> = Vec::new();
        if cap == 0 {
            return Err(too_many());
        }
        let mut head = 0;
        while head < found.len() {
            for (i, g) in gens.iter().enumerate() {
                let r = found[head].compose(g);
                let id = match index.get(&r) {
                    Some(&id) => id,
                    None => {
                        if found.len() >= cap {
                            return Err(too_many());
                        }
                        let id = found.len();
                        let mut w = words[head].clone();
                        w.push(letters[i]);
                        index.insert(r.clone(), id);
                        found.push(r);
                        words.push(w);
                        id
                    }
                };
                right_bfs.push(id);
            }
            head += 1;
        }

        // renumber canonically
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&x, &y| found[x].cmp(&found[y]));
        let mut rank = vec![0usize; found.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let k = letters.len();
        let elements: Vec<StateRelation> = order.iter().map(|&o| found[o].clone()).collect();
        let witnesses: Vec<Word> = order.iter().map(|&o| words[o].clone()).collect();
        let mut right = vec![0u32; found.len() * k];
        for (old, &new) in rank.iter().enumerate() {
            for i in 0..k {
                right[new * k + i] = rank[right_bfs[old * k + i]] as u32;
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let identity = rank[0];

        let len = elements.len();
        let mut table = vec![0u32; len * len];
        for e in 0..len {
            for f in 0..len {
                let mut x = e;
                for &l in &witnesses[f] {
                    let i = letters.binary_search(&l).unwrap();
                    x = right[x * k + i] as usize;
                }
                table[e * len + f] = x as u32;
            }
        }
        let accepting = elements
            .iter()
            .map(|r| {
                a.initials()
                    .iter()
                    .any(|&p| (0..n).any(|q| a.is_final(q) && r.contains(p, q)))
            })
            .collect();
        Ok(TransitionMonoid {
            automaton: a.clone(),
            letters,
            elements,
            witnesses,
            index,
            identity,
            right,
            table,
            accepting,
        })
    }

    pub fn automaton(&self) -> &Nwa {
        &self.automaton
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.elements.len()
    }

    pub fn relation(&self, e: Element) -> &StateRelation {
        &self.elements[e]
    }

    pub fn witness(&self, e: Element) -> &Word {
        &self.witnesses[e]
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn element_of(&self, r: &StateRelation) -> Option<Element> {
        self.index.get(r).copied()
    }

    /// `e ∘ f`, i.e. the class of `witness(e) · witness(f)`.
    pub fn compose(&self, e: Element, f: Element) -> Element {
        self.table[e * self.len() + f] as usize
    }

    /// Class of `witness(e) · l`, or `None` when `l` is outside the alphabet.
    pub fn step(&self, e: Element, l: Letter) -> Option<Element> {
        let i = self.letters.binary_search(&l).ok()?;
        Some(self.right[e * self.letters.len() + i] as usize)
    }

    /// Whether the class of `e` lies inside `L(automaton)`; otherwise it is disjoint from it.
    pub fn is_accepting(&self, e: Element) -> bool {
        self.accepting[e]
    }

    pub fn class_of(&self, w: &[Letter]) -> Result<Element> {
        let mut e = self.identity;
        for &l in w {
            e = self
                .step(e, l)
                .ok_or_else(|| Error::invalid(format!("letter #{} is not in the target alphabet", l.symbol.0)))?;
        }
        Ok(e)
    }

    /// Deterministic automaton of the class of `e`: states are the monoid elements, the
    /// initial state is the identity and `e` is the only final state.
    pub fn class_automaton(&self, e: Element) -> Result<Dwa> {
        self.class_union_automaton(&BTreeSet::from([e]))
    }

    /// Automaton accepting the union of the given classes.
    pub fn class_union_automaton(&self, set: &BTreeSet<Element>) -> Result<Dwa> {
        self.class_union_automaton_over(set, &self.letters)
    }

    /// Union of the given classes restricted to words over `letters`, a subset of the
    /// monoid's alphabet.
    pub fn class_union_automaton_over(&self, set: &BTreeSet<Element>, letters: &[Letter]) -> Result<Dwa> {
        if let Some(&bad) = set.iter().find(|&&e| e >= self.len()) {
            return Err(Error::invalid(format!("element {bad} is not in the monoid")));
        }
        let mut letters = letters.to_vec();
        letters.sort();
        letters.dedup();
        let idx: Vec<usize> = letters
            .iter()
            .map(|l| self.letters.binary_search(l))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid("letter outside the monoid alphabet"))?;
        let k = self.letters.len();
        let finals = (0..self.len()).map(|e| set.contains(&e)).collect();
        Ok(Dwa::from_fn(letters, self.len(), self.identity, finals, |p, i| {
            self.right[p * k + idx[i]] as usize
        }))
    }

    /// Elements realized by words over `letters`, in canonical order.
    pub fn generated_by(&self, letters: &[Letter]) -> Vec<Element> {
        let mut seen = vec![false; self.len()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(e) = stack.pop() {
            for &l in letters {
                if let Some(f) = self.step(e, l) {
                    if !seen[f] {
                        seen[f] = true;
                        stack.push(f);
                    }
                }
            }
        }
        (0..self.len()).filter(|&e| seen[e]).collect()
    }

    /// One line per element: index, relation, witness, and whether its class is accepted.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for e in self.elements() {
            out.push_str(&format!(
                "{e}\t{}\t{}\t{}\n",
                alphabet.format_word(self.witness(e)),
                self.relation(e),
                if self.is_accepting(e) { "accepting" } else { "-" },
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile;
    use crate::model::parse_regex_open;

    fn monoid(text: &str) -> (TransitionMonoid, Alphabet) {
        let mut al = Alphabet::new();
        let r = parse_regex_open(text, &mut al, false).unwrap();
        let letters = al.target_letters();
        let a = compile(&r, &letters);
        (TransitionMonoid::build(&a, &letters, DEFAULT_MONOID_CAP).unwrap(), al)
    }

    #[test]
    fn star_has_only_identity() {
        let (m, _) = monoid("b*");
        assert_eq!(m.len(), 1);
        assert_eq!(m.identity(), 0);
    }

    #[test]
    fn chain_monoid() {
        let (m, al) = monoid("b1.b2");
        assert_eq!(m.len(), 5);
        let mut ws: Vec<String> = m.elements().map(|e| al.format_word(m.witness(e))).collect();
        ws.sort();
        assert_eq!(ws, ["b1", "b1 b1", "b1 b2", "b2", "eps"]);
        let b1 = m.class_of(&al.parse_word("b1").unwrap()).unwrap();
        let pairs: Vec<_> = m.relation(b1).pairs().collect();
        assert_eq!(pairs, [(0, 1)]);
        let b2b1 = m.class_of(&al.parse_word("b2 b1").unwrap()).unwrap();
        assert!(m.relation(b2b1).is_empty());
        assert_eq!(m.relation(m.identity()), &StateRelation::identity(3));
    }

    #[test]
    fn canonical_order_is_numeric() {
        let (m, _) = monoid("b1.b2|b2*");
        for e in 1..m.len() {
            assert!(m.relation(e - 1) < m.relation(e));
        }
    }

    #[test]
    fn class_automaton_of_b1() {
        let (m, al) = monoid("b1.b2");
        let b1 = m.class_of(&al.parse_word("b1").unwrap()).unwrap();
        let d = m.class_automaton(b1).unwrap();
        let mut accepted = Vec::new();
        for w in words(&al.target_letters(), 4) {
            if d.accepts(&w) {
                accepted.push(al.format_word(&w));
            }
        }
        assert_eq!(accepted, ["b1"]);
        assert!(m.class_automaton(m.identity()).unwrap().accepts(&[]));
        assert!(m.class_automaton(99).is_err());
    }

    fn words(letters: &[Letter], max: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &layer {
                for &l in letters {
                    let mut v: Word = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn classes_partition_short_words() {
        let (m, al) = monoid("b1.b2");
        let autos: Vec<Dwa> = m.elements().map(|e| m.class_automaton(e).unwrap()).collect();
        let ws = words(&al.target_letters(), 4);
        assert_eq!(ws.len(), 31);
        for w in ws {
            let hits = autos.iter().filter(|d| d.accepts(&w)).count();
            assert_eq!(hits, 1, "{}", al.format_word(&w));
        }
    }

    #[test]
    fn witnesses_realize_their_element() {
        let (m, _) = monoid("(b1|b2.b1)*.b2");
        let a = m.automaton();
        for e in m.elements() {
            assert_eq!(&relation_of_word(a, m.letters(), m.witness(e)).unwrap(), m.relation(e));
        }
    }

    #[test]
    fn relation_of_word_rejects_foreign_letters() {
        let (m, mut al) = monoid("b1");
        let r = parse_regex_open("zz", &mut al, false).unwrap();
        let zz = r.letters()[0];
        assert!(relation_of_word(m.automaton(), m.letters(), &[zz]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let mut al = Alphabet::new();
        let r = parse_regex_open("(a|b)*.a.(a|b).(a|b)", &mut al, false).unwrap();
        let letters = al.target_letters();
        let a = compile(&r, &letters);
        assert!(matches!(
            TransitionMonoid::build(&a, &letters, 3),
            Err(Error::CapExceeded { .. })
        ));
    }
}
