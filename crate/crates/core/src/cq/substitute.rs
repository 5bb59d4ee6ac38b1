use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Atom, Cq, SymbolId, Ucq, Var, ViewDef, ViewSet};

use super::hom::var_span;

/// View of one source predicate. Views are partial: a missing entry is `Undefined`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CqView {
    Undefined,
    Query(Ucq),
}

impl CqView {
    pub fn as_query(&self) -> Option<&Ucq> {
        match self {
            CqView::Query(q) => Some(q),
            CqView::Undefined => None,
        }
    }

    /// Rule text with the head named after the predicate, or `empty`.
    pub fn to_text(&self, predicate: SymbolId, alphabet: &Alphabet) -> String {
        match self {
            CqView::Undefined => "empty".to_string(),
            CqView::Query(q) => {
                let mut q = q.clone();
                for d in &mut q.disjuncts {
                    d.name = alphabet.name(predicate).to_string();
                }
                q.to_text(alphabet)
            }
        }
    }
}

pub type CqViews = BTreeMap<SymbolId, CqView>;

/// Views from a parsed views file.
pub fn cq_views_from_defs(defs: &ViewSet, alphabet: &Alphabet) -> Result<CqViews> {
    let mut out = CqViews::new();
    for (&s, d) in defs {
        let v = match d {
            ViewDef::Empty => CqView::Undefined,
            ViewDef::Relational(q) => CqView::Query(q.clone()),
            ViewDef::Path(_) => {
                return Err(Error::invalid(format!(
                    "view for `{}` is not a conjunctive query",
                    alphabet.name(s)
                )))
            }
        };
        out.insert(s, v);
    }
    Ok(out)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as representative so original names win
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

fn fresh_name(base: &str, used: &mut HashSet<String>) -> String {
    let mut name = format!("{base}'");
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}

/// Expands one disjunct for one choice of view disjunct per source atom.
fn expand(d: &Cq, source_atoms: &[usize], choice: &[&Cq]) -> Cq {
    let n = var_span(d);
    let mut names: Vec<String> = (0..n).map(|i| d.var_name(Var(i as u32))).collect();
    let mut used: HashSet<String> = names.iter().cloned().collect();
    let mut uf = UnionFind((0..n).collect());
    let mut atoms: Vec<Atom> = Vec::new();
    let mut k = 0;
    for (i, atom) in d.atoms.iter().enumerate() {
        if k < source_atoms.len() && source_atoms[k] == i {
            let v = choice[k];
            k += 1;
            let mut vm: Vec<Option<usize>> = vec![None; var_span(v)];
            for (&hv, &t) in v.head.iter().zip(&atom.args) {
                match vm[hv.index()] {
                    Some(u) => uf.union(u, t.index()),
                    None => vm[hv.index()] = Some(t.index()),
                }
            }
            for b in &v.atoms {
                let args = b
                    .args
                    .iter()
                    .map(|&x| {
                        *vm[x.index()].get_or_insert_with(|| {
                            names.push(fresh_name(&v.var_name(x), &mut used));
                            uf.0.push(uf.0.len());
                            names.len() - 1
                        })
                    })
                    .map(|i| Var(i as u32))
                    .collect();
                atoms.push(Atom {
                    predicate: b.predicate,
                    args,
                });
            }
        } else {
            atoms.push(atom.clone());
        }
    }

    // merge unified variables and renumber by first occurrence
    let mut renum: Vec<Option<Var>> = vec![None; names.len()];
    let mut out_names = Vec::new();
    let mut rename = |v: Var, uf: &mut UnionFind| -> Var {
        let r = uf.find(v.index());
        *renum[r].get_or_insert_with(|| {
            out_names.push(names[r].clone());
            Var(out_names.len() as u32 - 1)
        })
    };
    let head: Vec<Var> = d.head.iter().map(|&v| rename(v, &mut uf)).collect();
    let mut seen = HashSet::new();
    let mut out_atoms = Vec::new();
    for a in atoms {
        let b = Atom {
            predicate: a.predicate,
            args: a.args.iter().map(|&v| rename(v, &mut uf)).collect(),
        };
        if seen.insert(b.clone()) {
            out_atoms.push(b);
        }
    }
    Cq {
        name: d.name.clone(),
        head,
        atoms: out_atoms,
        var_names: out_names,
    }
}

/// Replaces every source atom of `q_s` by the body of its view, head variables bound to
/// the atom's arguments and existential variables renamed apart per occurrence. Union
/// views are distributed over the conjunctions; a disjunct mentioning a source predicate
/// whose view is undefined is dropped, so the result may have no disjuncts.
pub fn cq_substitute(q_s: &Ucq, views: &CqViews, alphabet: &Alphabet) -> Result<Ucq> {
    let mut out = Vec::new();
    'disjunct: for d in &q_s.disjuncts {
        let mut source_atoms = Vec::new();
        let mut options: Vec<&[Cq]> = Vec::new();
        for (i, atom) in d.atoms.iter().enumerate() {
            if !alphabet.is_source(atom.predicate) {
                continue;
            }
            let Some(CqView::Query(v)) = views.get(&atom.predicate) else {
                continue 'disjunct;
            };
            if v.disjuncts.is_empty() {
                continue 'disjunct;
            }
            if v.arity() != atom.args.len() {
                return Err(Error::invalid(format!(
                    "view for `{}` has arity {} but the atom has {} arguments",
                    alphabet.name(atom.predicate),
                    v.arity(),
                    atom.args.len()
                )));
            }
            source_atoms.push(i);
            options.push(&v.disjuncts);
        }
        if options.is_empty() {
            out.push(expand(d, &[], &[]));
            continue;
        }
        for choice in options.iter().map(|o| o.iter()).multi_cartesian_product() {
            out.push(expand(d, &source_atoms, &choice));
        }
    }
    Ok(Ucq { disjuncts: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_ucq, Scope, SymbolKind};

    fn setup() -> (Alphabet, SymbolId) {
        let mut al = Alphabet::new();
        let a = al.declare("a", SymbolKind::Source, 2).unwrap();
        al.declare("r", SymbolKind::Target, 2).unwrap();
        al.declare("s", SymbolKind::Target, 2).unwrap();
        (al, a)
    }

    fn views(al: &Alphabet, a: SymbolId, text: &str) -> CqViews {
        CqViews::from([(a, CqView::Query(parse_ucq(text, al, Scope::TargetOnly).unwrap()))])
    }

    #[test]
    fn single_atom_is_a_renaming() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,y)", &al, Scope::Any).unwrap();
        let v = views(&al, a, "q(u,v) :- r(u,z), s(z,v)");
        let s = cq_substitute(&q, &v, &al).unwrap();
        assert_eq!(s.to_text(&al), "q(x,y) :- r(x,z'), s(z',y)");
    }

    #[test]
    fn fresh_existentials_per_occurrence() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,z), a(z,y)", &al, Scope::Any).unwrap();
        let v = views(&al, a, "q(u,v) :- r(u,z), s(z,v)");
        let s = cq_substitute(&q, &v, &al).unwrap();
        let d = &s.disjuncts[0];
        assert_eq!(d.atoms.len(), 4);
        assert_eq!(d.vars().len(), 5);
        assert_eq!(s.to_text(&al), "q(x,y) :- r(x,z'), s(z',z), r(z,z''), s(z'',y)");
    }

    #[test]
    fn unions_distribute() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,z), a(z,y)", &al, Scope::Any).unwrap();
        let v = views(&al, a, "q(u,v) :- r(u,v) ; q(u,v) :- s(u,v)");
        assert_eq!(cq_substitute(&q, &v, &al).unwrap().disjuncts.len(), 4);
    }

    #[test]
    fn repeated_head_variables_unify() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,y), r(y,x)", &al, Scope::Any).unwrap();
        let v = views(&al, a, "q(u,u) :- s(u,u)");
        let s = cq_substitute(&q, &v, &al).unwrap();
        assert_eq!(s.to_text(&al), "q(x,x) :- s(x,x), r(x,x)");
    }

    #[test]
    fn undefined_views_drop_disjuncts() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,y) ; q(x,y) :- r(x,y)", &al, Scope::Any).unwrap();
        let s = cq_substitute(&q, &CqViews::new(), &al).unwrap();
        assert_eq!(s.to_text(&al), "q(x,y) :- r(x,y)");
        let only = parse_ucq("q(x,y) :- a(x,y)", &al, Scope::Any).unwrap();
        let v = CqViews::from([(a, CqView::Undefined)]);
        assert!(cq_substitute(&only, &v, &al).unwrap().disjuncts.is_empty());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let (al, a) = setup();
        let q = parse_ucq("q(x,y) :- a(x,y)", &al, Scope::Any).unwrap();
        let v = views(&al, a, "q(u) :- r(u,v)");
        assert!(cq_substitute(&q, &v, &al).is_err());
    }
}
