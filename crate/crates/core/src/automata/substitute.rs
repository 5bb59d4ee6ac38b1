use std::collections::BTreeMap;

use super::nwa::Nwa;
use crate::error::{Error, Result};
use crate::model::{Alphabet, SymbolId};

/// Language assigned to a source symbol when substituting.
#[derive(Clone, Debug)]
pub enum ViewLanguage {
    Empty,
    Automaton(Nwa),
}

impl ViewLanguage {
    pub fn automaton(&self) -> Option<&Nwa> {
        match self {
            ViewLanguage::Empty => None,
            ViewLanguage::Automaton(a) => Some(a),
        }
    }
}

pub type ViewLanguages = BTreeMap<SymbolId, ViewLanguage>;

/// Replaces every source-letter transition `p -a-> q` of `source` with a fresh copy of
/// the automaton of `V(a)` spliced between `p` and `q`. A transition on `a⁻` receives
/// the inverse of `V(a)`. Transitions whose view is empty are dropped. Target letters
/// are kept as they are.
pub fn substitute(source: &Nwa, alphabet: &Alphabet, views: &ViewLanguages) -> Result<Nwa> {
    let mut out = Nwa::new(
        source
            .alphabet()
            .iter()
            .copied()
            .filter(|l| !alphabet.is_source(l.symbol)),
    );
    for p in 0..source.num_states() {
        out.add_state(source.is_final(p));
    }
    for &p in source.initials() {
        out.add_initial(p);
    }
    let mut inverses: BTreeMap<SymbolId, Nwa> = BTreeMap::new();
    for p in 0..source.num_states() {
        for &q in source.epsilons(p) {
            out.add_epsilon(p, q);
        }
        for &(l, q) in source.transitions(p) {
            if !alphabet.is_source(l.symbol) {
                out.add_transition(p, l, q);
                continue;
            }
            let view = views
                .get(&l.symbol)
                .ok_or_else(|| Error::UnassignedSymbol(alphabet.name(l.symbol).to_string()))?;
            let Some(v) = view.automaton() else { continue };
            let v = if l.inverse {
                inverses.entry(l.symbol).or_insert_with(|| v.inverse())
            } else {
                v
            };
            splice(&mut out, v, p, q);
        }
    }
    for view in views.values() {
        if let Some(v) = view.automaton() {
            out.extend_alphabet(v.alphabet().iter().copied());
        }
    }
    Ok(out)
}

fn splice(out: &mut Nwa, v: &Nwa, from: usize, to: usize) {
    let off = out.num_states();
    for _ in 0..v.num_states() {
        out.add_state(false);
    }
    for s in 0..v.num_states() {
        for &(l, t) in v.transitions(s) {
            out.add_transition(s + off, l, t + off);
        }
        for &t in v.epsilons(s) {
            out.add_epsilon(s + off, t + off);
        }
        if v.is_final(s) {
            out.add_epsilon(s + off, to);
        }
    }
    for &i in v.initials() {
        out.add_epsilon(from, i + off);
    }
}
