use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write;

use fixedbitset::FixedBitSet;

use crate::automata::Nwa;
use crate::error::{Error, Result};
use crate::model::{Alphabet, Letter, SymbolId};

/// A finite edge-labelled graph. Objects are numbered from 0 and carry display names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDatabase {
    names: Vec<String>,
    edges: BTreeSet<(usize, SymbolId, usize)>,
}

impl GraphDatabase {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with objects `n0 … n{k-1}` and no edges.
    pub fn with_objects(k: usize) -> Self {
        GraphDatabase {
            names: (0..k).map(|i| format!("n{i}")).collect(),
            edges: BTreeSet::new(),
        }
    }

    /// The object called `name`, created if needed.
    pub fn object(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn add_edge(&mut self, from: usize, label: SymbolId, to: usize) {
        assert!(from < self.names.len() && to < self.names.len(), "edge endpoint out of range");
        self.edges.insert((from, label, to));
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, o: usize) -> &str {
        &self.names[o]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, SymbolId, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Parses `x -label-> y` lines; `#` starts a comment. A line holding a single name
    /// declares an isolated object.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut db = GraphDatabase::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                line: i + 1,
                column: 1,
                message,
            };
            let Some((from, rest)) = line.split_once(" -") else {
                if line.split_whitespace().count() == 1 {
                    db.object(line);
                    continue;
                }
                return Err(syntax("expected `node -label-> node`".to_string()));
            };
            let (label, to) = rest
                .split_once("-> ")
                .ok_or_else(|| syntax("expected `-> node`".to_string()))?;
            let label = label.trim();
            let id = alphabet
                .lookup(label)
                .ok_or_else(|| syntax(format!("unknown edge label `{label}`")))?;
            let x = db.object(from.trim());
            let y = db.object(to.trim());
            db.add_edge(x, id, y);
        }
        Ok(db)
    }

    /// As [`GraphDatabase::parse`], declaring unknown labels as binary target symbols.
    pub fn parse_open(text: &str, alphabet: &mut Alphabet) -> Result<Self> {
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("");
            if let Some((_, rest)) = line.split_once(" -") {
                if let Some((label, _)) = rest.split_once("-> ") {
                    let label = label.trim();
                    if alphabet.lookup(label).is_none() {
                        alphabet.declare(label, crate::model::SymbolKind::Target, 2)?;
                    }
                }
            }
        }
        Self::parse(text, alphabet)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let mut touched = vec![false; self.names.len()];
        for &(x, l, y) in &self.edges {
            touched[x] = true;
            touched[y] = true;
            let _ = writeln!(out, "{} -{}-> {}", self.names[x], alphabet.name(l), self.names[y]);
        }
        for (o, t) in touched.iter().enumerate() {
            if !t {
                let _ = writeln!(out, "{}", self.names[o]);
            }
        }
        out
    }

    /// Edges out of each object, and edges into it read backwards as inverse letters.
    fn moves(&self, two_way: bool) -> Vec<Vec<(Letter, usize)>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(x, l, y) in &self.edges {
            adj[x].push((Letter::forward(l), y));
            if two_way {
                adj[y].push((Letter::backward(l), x));
            }
        }
        adj
    }
}

fn eval(db: &GraphDatabase, a: &Nwa, two_way: bool) -> BTreeSet<(usize, usize)> {
    let adj = db.moves(two_way);
    let mut by_letter: Vec<HashMap<Letter, Vec<usize>>> = Vec::with_capacity(a.num_states());
    for p in 0..a.num_states() {
        let mut m: HashMap<Letter, Vec<usize>> = HashMap::new();
        for &(l, q) in a.transitions(p) {
            m.entry(l).or_default().push(q);
        }
        by_letter.push(m);
    }
    let mut out = BTreeSet::new();
    for x in 0..db.num_objects() {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut queue: VecDeque<(usize, usize)> = a.initials().iter().map(|&p| (x, p)).collect();
        seen.extend(queue.iter().copied());
        while let Some((o, p)) = queue.pop_front() {
            if a.is_final(p) {
                out.insert((x, o));
            }
            let mut next: Vec<(usize, usize)> = a.epsilons(p).iter().map(|&q| (o, q)).collect();
            for &(l, o2) in &adj[o] {
                if let Some(qs) = by_letter[p].get(&l) {
                    next.extend(qs.iter().map(|&q| (o2, q)));
                }
            }
            for s in next {
                if seen.insert(s) {
                    queue.push_back(s);
                }
            }
        }
    }
    out
}

/// Pairs of objects joined by a path spelling a word of `L(a)`, by reachability in the
/// product of the graph and the automaton. Inverse letters of `a` match nothing.
pub fn eval_rpq(db: &GraphDatabase, a: &Nwa) -> BTreeSet<(usize, usize)> {
    eval(db, a, false)
}

/// As [`eval_rpq`] over semipaths: an inverse letter `r⁻` crosses an `r` edge backwards.
pub fn eval_2rpq(db: &GraphDatabase, a: &Nwa) -> BTreeSet<(usize, usize)> {
    eval(db, a, true)
}

/// Pairs joined by a (semi)path of at most `max_len` edges whose label word `a` accepts,
/// by walking paths while tracking the set of automaton states reached. A walk stops when
/// that set is empty or when the same object and state set were already explored with at
/// least as many steps left.
pub fn eval_by_paths(db: &GraphDatabase, a: &Nwa, two_way: bool, max_len: usize) -> BTreeSet<(usize, usize)> {
    struct Walk<'a> {
        adj: Vec<Vec<(Letter, usize)>>,
        a: &'a Nwa,
        explored: HashMap<(usize, FixedBitSet), usize>,
        out: BTreeSet<(usize, usize)>,
    }

    impl Walk<'_> {
        fn go(&mut self, start: usize, at: usize, states: FixedBitSet, left: usize) {
            if states.is_clear() {
                return;
            }
            match self.explored.get(&(at, states.clone())) {
                Some(&l) if l >= left => return,
                _ => {
                    self.explored.insert((at, states.clone()), left);
                }
            }
            if self.a.accepts_from(&states) {
                self.out.insert((start, at));
            }
            if left == 0 {
                return;
            }
            for i in 0..self.adj[at].len() {
                let (l, next) = self.adj[at][i];
                let stepped = self.a.step(&states, l);
                self.go(start, next, stepped, left - 1);
            }
        }
    }

    let mut w = Walk {
        adj: db.moves(two_way),
        a,
        explored: HashMap::new(),
        out: BTreeSet::new(),
    };
    for x in 0..db.num_objects() {
        w.explored.clear();
        w.go(x, x, a.initial_set(), max_len);
    }
    w.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile;
    use crate::model::{parse_regex_open, Regex};

    fn setup() -> (Alphabet, GraphDatabase) {
        let mut al = Alphabet::new();
        parse_regex_open("b1|b2|r", &mut al, false).unwrap();
        let db = GraphDatabase::parse("x -b1-> y\ny -b2-> z\nw\n", &al).unwrap();
        (al, db)
    }

    fn q(al: &mut Alphabet, t: &str) -> Nwa {
        let r = parse_regex_open(t, al, true).unwrap();
        compile(&r, &[])
    }

    #[test]
    fn chain_query() {
        let (mut al, db) = setup();
        assert_eq!(db.num_objects(), 4);
        let a = q(&mut al, "b1.b2");
        assert_eq!(eval_rpq(&db, &a), BTreeSet::from([(0, 2)]));
    }

    #[test]
    fn epsilon_relates_every_object_to_itself() {
        let (_, db) = setup();
        let a = compile(&Regex::Epsilon, &[]);
        let got = eval_rpq(&db, &a);
        assert_eq!(got, (0..4).map(|o| (o, o)).collect());
    }

    #[test]
    fn inverse_edges() {
        let mut al = Alphabet::new();
        parse_regex_open("r", &mut al, false).unwrap();
        let db = GraphDatabase::parse("x -r-> y\n", &al).unwrap();
        let back = q(&mut al, "r^-");
        assert_eq!(eval_2rpq(&db, &back), BTreeSet::from([(1, 0)]));
        assert!(eval_rpq(&db, &back).is_empty());
        let there_and_back = q(&mut al, "r.r^-");
        assert_eq!(eval_2rpq(&db, &there_and_back), BTreeSet::from([(0, 0)]));
    }

    #[test]
    fn text_round_trip() {
        let (al, db) = setup();
        let again = GraphDatabase::parse(&db.to_text(&al), &al).unwrap();
        assert_eq!(again, db);
    }

    #[test]
    fn unknown_label() {
        let (al, _) = setup();
        assert!(GraphDatabase::parse("x -zz-> y\n", &al).is_err());
    }
}
