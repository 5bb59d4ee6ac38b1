use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Cq, SymbolId, Ucq, Var};

/// A containment mapping: `map[v]` is the image of variable `v` of the source query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub map: Vec<Option<Var>>,
}

impl Hom {
    pub fn image(&self, v: Var) -> Option<Var> {
        self.map.get(v.index()).copied().flatten()
    }
}

/// One past the largest variable index used by `q`.
pub(crate) fn var_span(q: &Cq) -> usize {
    q.head
        .iter()
        .chain(q.atoms.iter().flat_map(|a| a.args.iter()))
        .map(|v| v.index() + 1)
        .max()
        .unwrap_or(0)
        .max(q.var_names.len())
}

struct Search<'a> {
    from: &'a Cq,
    to_atoms: HashMap<SymbolId, Vec<&'a [Var]>>,
    order: Vec<usize>,
    map: Vec<Option<Var>>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) -> bool {
        let Some(&ai) = self.order.get(k) else {
            return true;
        };
        let atom = &self.from.atoms[ai];
        let Some(images) = self.to_atoms.get(&atom.predicate) else {
            return false;
        };
        for img in images.clone() {
            let mut bound = Vec::new();
            let mut ok = true;
            for (&v, &w) in atom.args.iter().zip(img) {
                match self.map[v.index()] {
                    Some(x) if x != w => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        self.map[v.index()] = Some(w);
                        bound.push(v);
                    }
                }
            }
            if ok && self.extend(k + 1) {
                return true;
            }
            for v in bound {
                self.map[v.index()] = None;
            }
        }
        false
    }
}

/// Searches a containment mapping from `from` to `to`: head variables go to head variables
/// position by position and every atom of `from` lands on an atom of `to` with the same
/// predicate. One exists iff `to ⊑ from`.
pub fn find_hom(from: &Cq, to: &Cq) -> Result<Option<Hom>> {
    if from.arity() != to.arity() {
        return Err(Error::invalid(format!(
            "head arities differ ({} and {})",
            from.arity(),
            to.arity()
        )));
    }
    let mut map = vec![None; var_span(from)];
    for (&v, &w) in from.head.iter().zip(&to.head) {
        match map[v.index()] {
            Some(x) if x != w => return Ok(None),
            _ => map[v.index()] = Some(w),
        }
    }
    let mut to_atoms: HashMap<SymbolId, Vec<&[Var]>> = HashMap::new();
    for a in &to.atoms {
        let list = to_atoms.entry(a.predicate).or_default();
        if !list.contains(&a.args.as_slice()) {
            list.push(&a.args);
        }
    }
    // rarest predicate first
    let mut order: Vec<usize> = (0..from.atoms.len()).collect();
    order.sort_by_key(|&i| to_atoms.get(&from.atoms[i].predicate).map_or(0, Vec::len));
    let mut s = Search {
        from,
        to_atoms,
        order,
        map,
    };
    Ok(s.extend(0).then_some(Hom { map: s.map }))
}

/// `q1 ⊑ q2` for conjunctive queries.
pub fn cq_contains(q1: &Cq, q2: &Cq) -> Result<bool> {
    Ok(find_hom(q2, q1)?.is_some())
}

/// First disjunct of `q1` contained in no disjunct of `q2`, if any.
pub fn ucq_uncontained<'a>(q1: &'a Ucq, q2: &Ucq) -> Result<Option<&'a Cq>> {
    for d1 in &q1.disjuncts {
        let mut covered = false;
        for d2 in &q2.disjuncts {
            if cq_contains(d1, d2)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(Some(d1));
        }
    }
    Ok(None)
}

/// `q1 ⊑ q2` for unions: every disjunct of `q1` is contained in some disjunct of `q2`.
/// A union without disjuncts is contained in everything.
pub fn ucq_contains(q1: &Ucq, q2: &Ucq) -> Result<bool> {
    if let (Some(a), Some(b)) = (q1.disjuncts.first(), q2.disjuncts.first()) {
        if a.arity() != b.arity() {
            return Err(Error::invalid(format!(
                "head arities differ ({} and {})",
                a.arity(),
                b.arity()
            )));
        }
    }
    Ok(ucq_uncontained(q1, q2)?.is_none())
}
