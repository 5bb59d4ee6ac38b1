use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Cq, SymbolId, Ucq};

pub type Tuple = Vec<u32>;

/// A relational database: a set of tuples per predicate over named constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelInstance {
    names: Vec<String>,
    facts: BTreeMap<SymbolId, BTreeSet<Tuple>>,
}

impl RelInstance {
    pub fn new() -> Self {
        Self::default()
    }

    /// An instance over constants `c0 … c{k-1}` with no facts.
    pub fn with_constants(k: usize) -> Self {
        RelInstance {
            names: (0..k).map(|i| format!("c{i}")).collect(),
            facts: BTreeMap::new(),
        }
    }

    pub fn constant(&mut self, name: &str) -> u32 {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i as u32,
            None => {
                self.names.push(name.to_string());
                self.names.len() as u32 - 1
            }
        }
    }

    pub fn constant_name(&self, c: u32) -> &str {
        &self.names[c as usize]
    }

    pub fn num_constants(&self) -> usize {
        self.names.len()
    }

    pub fn insert(&mut self, predicate: SymbolId, tuple: Tuple) {
        assert!(tuple.iter().all(|&c| (c as usize) < self.names.len()), "unknown constant");
        self.facts.entry(predicate).or_default().insert(tuple);
    }

    pub fn tuples(&self, predicate: SymbolId) -> impl Iterator<Item = &Tuple> {
        self.facts.get(&predicate).into_iter().flatten()
    }

    pub fn num_facts(&self) -> usize {
        self.facts.values().map(BTreeSet::len).sum()
    }

    /// Parses facts such as `r(1,2)`, separated by newlines or whitespace.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut db = RelInstance::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for fact in line.split_whitespace() {
                let syntax = |message: String| Error::Syntax {
                    line: i + 1,
                    column: 1,
                    message,
                };
                let (pred, rest) = fact
                    .split_once('(')
                    .ok_or_else(|| syntax(format!("expected a fact, found `{fact}`")))?;
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| syntax(format!("missing `)` in `{fact}`")))?;
                let id = alphabet
                    .lookup(pred)
                    .ok_or_else(|| syntax(format!("unknown predicate `{pred}`")))?;
                let tuple: Tuple = if args.is_empty() {
                    Vec::new()
                } else {
                    args.split(',').map(|a| db.constant(a.trim())).collect()
                };
                if tuple.len() != alphabet.arity(id) {
                    return Err(syntax(format!("`{pred}` expects {} arguments", alphabet.arity(id))));
                }
                db.insert(id, tuple);
            }
        }
        Ok(db)
    }

    /// As [`RelInstance::parse`], declaring unknown predicates as target symbols with
    /// the arity of their first fact.
    pub fn parse_open(text: &str, alphabet: &mut Alphabet) -> Result<Self> {
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("");
            for fact in line.split_whitespace() {
                if let Some((pred, rest)) = fact.split_once('(') {
                    if alphabet.lookup(pred).is_none() {
                        let args = rest.trim_end_matches(')');
                        let arity = if args.is_empty() { 0 } else { args.split(',').count() };
                        alphabet.declare(pred, crate::model::SymbolKind::Target, arity)?;
                    }
                }
            }
        }
        Self::parse(text, alphabet)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (&p, tuples) in &self.facts {
            for t in tuples {
                let args: Vec<&str> = t.iter().map(|&c| self.constant_name(c)).collect();
                let _ = writeln!(out, "{}({})", alphabet.name(p), args.join(","));
            }
        }
        out
    }
}

fn join(db: &RelInstance, q: &Cq, k: usize, binding: &mut Vec<Option<u32>>, out: &mut BTreeSet<Tuple>) {
    let Some(atom) = q.atoms.get(k) else {
        if let Some(t) = q.head.iter().map(|v| binding[v.index()]).collect::<Option<Tuple>>() {
            out.insert(t);
        }
        return;
    };
    for t in db.tuples(atom.predicate) {
        let mut set = Vec::new();
        let mut ok = true;
        for (v, &c) in atom.args.iter().zip(t) {
            match binding[v.index()] {
                Some(d) if d != c => {
                    ok = false;
                    break;
                }
                Some(_) => {}
                None => {
                    binding[v.index()] = Some(c);
                    set.push(v.index());
                }
            }
        }
        if ok {
            join(db, q, k + 1, binding, out);
        }
        for i in set {
            binding[i] = None;
        }
    }
}

/// Answers of a conjunctive query: head images of all satisfying assignments.
pub fn eval_cq(db: &RelInstance, q: &Cq) -> BTreeSet<Tuple> {
    let n = q
        .head
        .iter()
        .chain(q.atoms.iter().flat_map(|a| a.args.iter()))
        .map(|v| v.index() + 1)
        .max()
        .unwrap_or(0);
    let mut out = BTreeSet::new();
    join(db, q, 0, &mut vec![None; n], &mut out);
    out
}

pub fn eval_ucq(db: &RelInstance, q: &Ucq) -> BTreeSet<Tuple> {
    q.disjuncts.iter().flat_map(|d| eval_cq(db, d)).collect()
}

/// The database obtained by freezing each variable of `q` into a constant of the same
/// name, and the frozen head.
pub fn canonical_db(q: &Cq) -> (RelInstance, Tuple) {
    let mut db = RelInstance::new();
    let frozen = |db: &mut RelInstance, v: crate::model::Var| db.constant(&format!("c{}", q.var_name(v)));
    let head = q.head.iter().map(|&v| frozen(&mut db, v)).collect();
    for a in &q.atoms {
        let t = a.args.iter().map(|&v| frozen(&mut db, v)).collect();
        db.insert(a.predicate, t);
    }
    (db, head)
}

/// `q1 ⊑ q2`, decided by evaluating `q2` on the canonical database of `q1`.
pub fn contained_by_canonical(q1: &Cq, q2: &Ucq) -> bool {
    let (db, head) = canonical_db(q1);
    eval_ucq(&db, q2).contains(&head)
}

/// `q1 ⊑ q2` for unions, disjunct by disjunct.
pub fn ucq_contained_by_canonical(q1: &Ucq, q2: &Ucq) -> bool {
    q1.disjuncts.iter().all(|d| contained_by_canonical(d, q2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_ucq, Scope, SymbolKind};

    fn al() -> Alphabet {
        let mut a = Alphabet::new();
        a.declare("r", SymbolKind::Target, 2).unwrap();
        a.declare("s", SymbolKind::Target, 2).unwrap();
        a
    }

    #[test]
    fn evaluates_a_join() {
        let a = al();
        let db = RelInstance::parse("r(1,2) s(2,3)\ns(1,1)", &a).unwrap();
        let q = parse_ucq("q(x,y) :- r(x,z), s(z,y)", &a, Scope::TargetOnly).unwrap();
        let got = eval_ucq(&db, &q);
        let want: Tuple = vec![db.clone().constant("1"), db.clone().constant("3")];
        assert_eq!(got, BTreeSet::from([want]));
    }

    #[test]
    fn canonical_database_of_a_chain() {
        let a = al();
        let q = parse_ucq("q(x,y) :- r(x,z), s(z,y)", &a, Scope::TargetOnly).unwrap();
        let (db, head) = canonical_db(&q.disjuncts[0]);
        assert_eq!(db.to_text(&a), "r(cx,cz)\ns(cz,cy)\n");
        assert_eq!(head.len(), 2);
    }

    #[test]
    fn canonical_containment() {
        let a = al();
        let long = parse_ucq("q(x) :- r(x,y), r(y,z)", &a, Scope::TargetOnly).unwrap();
        let short = parse_ucq("q(x) :- r(x,y)", &a, Scope::TargetOnly).unwrap();
        assert!(ucq_contained_by_canonical(&long, &short));
        assert!(!ucq_contained_by_canonical(&short, &long));
    }
}
