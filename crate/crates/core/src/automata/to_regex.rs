use std::collections::BTreeMap;

use super::nwa::Nwa;
use crate::model::Regex;

/// State elimination. The automaton is trimmed first; states are eliminated in order of
/// increasing `in-degree × out-degree`, ties broken by state number.
pub fn to_regex(a: &Nwa) -> Regex {
    let a = a.trim();
    let n = a.num_states();
    let start = n;
    let end = n + 1;
    let mut edges: BTreeMap<(usize, usize), Regex> = BTreeMap::new();
    let add = |edges: &mut BTreeMap<(usize, usize), Regex>, i, j, r: Regex| {
        let e = edges.remove(&(i, j)).unwrap_or(Regex::Empty);
        let u = Regex::union([e, r]);
        if u != Regex::Empty {
            edges.insert((i, j), u);
        }
    };
    for &p in a.initials() {
        add(&mut edges, start, p, Regex::Epsilon);
    }
    for p in 0..n {
        if a.is_final(p) {
            add(&mut edges, p, end, Regex::Epsilon);
        }
        for &q in a.epsilons(p) {
            add(&mut edges, p, q, Regex::Epsilon);
        }
        let mut row = a.transitions(p).to_vec();
        row.sort();
        for (l, q) in row {
            add(&mut edges, p, q, Regex::Letter(l));
        }
    }

    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let cost = |k: usize| {
            let ins = edges.keys().filter(|&&(i, j)| j == k && i != k).count();
            let outs = edges.keys().filter(|&&(i, j)| i == k && j != k).count();
            ins * outs
        };
        let (pos, &k) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &k)| (cost(k), k))
            .unwrap();
        remaining.remove(pos);

        let self_loop = edges.remove(&(k, k)).map(Regex::star).unwrap_or(Regex::Epsilon);
        let ins: Vec<(usize, Regex)> = edges
            .iter()
            .filter(|(&(_, j), _)| j == k)
            .map(|(&(i, _), r)| (i, r.clone()))
            .collect();
        let outs: Vec<(usize, Regex)> = edges
            .iter()
            .filter(|(&(i, _), _)| i == k)
            .map(|(&(_, j), r)| (j, r.clone()))
            .collect();
        edges.retain(|&(i, j), _| i != k && j != k);
        for (i, rin) in &ins {
            for (j, rout) in &outs {
                let path = Regex::concat([rin.clone(), self_loop.clone(), rout.clone()]);
                add(&mut edges, *i, *j, path);
            }
        }
    }
    edges.remove(&(start, end)).unwrap_or(Regex::Empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, equivalent};
    use crate::model::{parse_regex_open, Alphabet};

    fn round_trip(text: &str) -> (String, bool) {
        let mut al = Alphabet::new();
        let r = parse_regex_open(text, &mut al, false).unwrap();
        let a = compile(&r, &al.target_letters());
        let back = to_regex(&a);
        let b = compile(&back, &al.target_letters());
        (back.to_text(&al), equivalent(&a, &b, 1000).unwrap())
    }

    #[test]
    fn simple_shapes() {
        assert_eq!(round_trip("b1"), ("b1".to_string(), true));
        assert_eq!(round_trip("b1.b2"), ("b1.b2".to_string(), true));
        assert_eq!(round_trip("empty").0, "empty");
        assert_eq!(round_trip("eps").0, "eps");
    }

    #[test]
    fn language_preserved() {
        for t in ["(a|b)*.a.b", "a*.b*", "(a.b|b.a)*", "a.(b|c)*.a|c"] {
            assert!(round_trip(t).1, "{t}");
        }
    }
}
