use std::collections::BTreeSet;
use std::fmt;

use super::alphabet::{Alphabet, SymbolId};

/// Variable of a conjunctive query, local to that query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: SymbolId,
    pub args: Vec<Var>,
}

/// A conjunctive query. Terms are variables only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cq {
    pub name: String,
    pub head: Vec<Var>,
    pub atoms: Vec<Atom>,
    /// Display names, indexed by `Var`.
    pub var_names: Vec<String>,
}

impl Cq {
    /// Builds a query whose variables get generated names (`x0`, `x1`, ...).
    pub fn new(head: Vec<Var>, atoms: Vec<Atom>) -> Self {
        let n = head
            .iter()
            .chain(atoms.iter().flat_map(|a| a.args.iter()))
            .map(|v| v.index() + 1)
            .max()
            .unwrap_or(0);
        Cq {
            name: "q".to_string(),
            head,
            atoms,
            var_names: (0..n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.head.len()
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.head
            .iter()
            .chain(self.atoms.iter().flat_map(|a| a.args.iter()))
            .copied()
            .collect()
    }

    pub fn predicates(&self) -> BTreeSet<SymbolId> {
        self.atoms.iter().map(|a| a.predicate).collect()
    }

    /// Head variables all occur in the body.
    pub fn is_safe(&self) -> bool {
        let body: BTreeSet<Var> = self.atoms.iter().flat_map(|a| a.args.iter().copied()).collect();
        self.head.iter().all(|v| body.contains(v))
    }

    pub fn var_name(&self, v: Var) -> String {
        self.var_names
            .get(v.index())
            .cloned()
            .unwrap_or_else(|| format!("x{}", v.0))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> CqDisplay<'a> {
        CqDisplay { cq: self, alphabet }
    }
}

/// A nonempty union of conjunctive queries with a common head arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ucq {
    pub disjuncts: Vec<Cq>,
}

impl Ucq {
    pub fn single(cq: Cq) -> Self {
        Ucq { disjuncts: vec![cq] }
    }

    pub fn arity(&self) -> usize {
        self.disjuncts.first().map_or(0, Cq::arity)
    }

    pub fn predicates(&self) -> BTreeSet<SymbolId> {
        self.disjuncts.iter().flat_map(|d| d.predicates()).collect()
    }

    /// Largest atom count over the disjuncts.
    pub fn max_atoms(&self) -> usize {
        self.disjuncts.iter().map(|d| d.atoms.len()).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> UcqDisplay<'a> {
        UcqDisplay {
            ucq: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

pub struct CqDisplay<'a> {
    cq: &'a Cq,
    alphabet: &'a Alphabet,
}

impl fmt::Display for CqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.cq;
        let head: Vec<String> = q.head.iter().map(|&v| q.var_name(v)).collect();
        write!(f, "{}({}) :- ", q.name, head.join(","))?;
        for (i, atom) in q.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let args: Vec<String> = atom.args.iter().map(|&v| q.var_name(v)).collect();
            write!(f, "{}({})", self.alphabet.name(atom.predicate), args.join(","))?;
        }
        Ok(())
    }
}

pub struct UcqDisplay<'a> {
    ucq: &'a Ucq,
    alphabet: &'a Alphabet,
}

impl fmt::Display for UcqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.ucq.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{}", d.display(self.alphabet))?;
        }
        Ok(())
    }
}
