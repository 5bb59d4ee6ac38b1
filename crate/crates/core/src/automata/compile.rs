use super::nwa::{Nwa, StateId};
use crate::model::{Letter, Regex};

/// Thompson construction. The result has epsilon moves, a single initial and a single
/// final state, and `O(|r|)` states. `alphabet` is added to the automaton's alphabet.
pub fn compile_with_epsilon(r: &Regex, alphabet: &[Letter]) -> Nwa {
    let mut a = Nwa::new(alphabet.iter().copied().chain(r.letters()));
    let (s, f) = build(&mut a, r);
    a.add_initial(s);
    a.set_final(f, true);
    a
}

/// Compiles `r` into an epsilon-free, trimmed automaton reduced up to bisimulation.
pub fn compile(r: &Regex, alphabet: &[Letter]) -> Nwa {
    compile_with_epsilon(r, alphabet).eliminate_epsilon().reduce()
}

fn build(a: &mut Nwa, r: &Regex) -> (StateId, StateId) {
    match r {
        Regex::Empty => (a.add_state(false), a.add_state(false)),
        Regex::Epsilon => {
            let s = a.add_state(false);
            let f = a.add_state(false);
            a.add_epsilon(s, f);
            (s, f)
        }
        Regex::Letter(l) => {
            let s = a.add_state(false);
            let f = a.add_state(false);
            a.add_transition(s, *l, f);
            (s, f)
        }
        Regex::Concat(parts) => {
            let mut ends: Option<(StateId, StateId)> = None;
            for p in parts {
                let (s, f) = build(a, p);
                ends = Some(match ends {
                    None => (s, f),
                    Some((s0, f0)) => {
                        a.add_epsilon(f0, s);
                        (s0, f)
                    }
                });
            }
            ends.unwrap_or_else(|| build(a, &Regex::Epsilon))
        }
        Regex::Union(parts) => {
            let s = a.add_state(false);
            let f = a.add_state(false);
            for p in parts {
                let (ps, pf) = build(a, p);
                a.add_epsilon(s, ps);
                a.add_epsilon(pf, f);
            }
            (s, f)
        }
        Regex::Star(inner) => {
            let s = a.add_state(false);
            let f = a.add_state(false);
            let (is, ifin) = build(a, inner);
            a.add_epsilon(s, is);
            a.add_epsilon(s, f);
            a.add_epsilon(ifin, is);
            a.add_epsilon(ifin, f);
            (s, f)
        }
    }
}
