use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{Atom, Cq, SymbolId, Var};

const NAMES: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

fn var_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| NAMES.get(i).map_or_else(|| format!("u{i}"), |s| s.to_string()))
        .collect()
}

/// Encoding of a query body: head variables, then per atom the predicate followed by its
/// arguments, variables renumbered by first occurrence.
fn encode(head: &[u32], atoms: &[(SymbolId, &[u32])]) -> Vec<u32> {
    let mut renum: Vec<Option<u32>> = Vec::new();
    let mut next = 0;
    let mut get = |v: u32| -> u32 {
        let i = v as usize;
        if renum.len() <= i {
            renum.resize(i + 1, None);
        }
        *renum[i].get_or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let mut out: Vec<u32> = head.iter().map(|&v| get(v)).collect();
    for (p, args) in atoms {
        out.push(p.0);
        out.extend(args.iter().map(|&v| get(v)));
    }
    out
}

/// Least encoding over all orderings of the atoms.
fn canonical(head: &[u32], atoms: &[(SymbolId, &[u32])]) -> Vec<u32> {
    (0..atoms.len())
        .permutations(atoms.len())
        .map(|perm| {
            let order: Vec<(SymbolId, &[u32])> = perm.iter().map(|&i| atoms[i]).collect();
            encode(head, &order)
        })
        .min()
        .unwrap_or_else(|| encode(head, &[]))
}

/// Restricted growth strings of length `n`: each entry at most one more than the maximum
/// of the entries before it. These are the set partitions of `n` slots.
fn restricted_growth(n: usize, mut f: impl FnMut(&[u32]) -> Result<()>) -> Result<()> {
    fn go(s: &mut Vec<u32>, n: usize, max: u32, f: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
        if s.len() == n {
            return f(s);
        }
        let bound = if s.is_empty() { 0 } else { max + 1 };
        for v in 0..=bound {
            s.push(v);
            go(s, n, max.max(v), f)?;
            s.pop();
        }
        Ok(())
    }
    go(&mut Vec::with_capacity(n), n, 0, &mut f)
}

fn decode(enc: &[u32], arity: usize, predicates: &[(SymbolId, usize)]) -> Cq {
    let head: Vec<Var> = enc[..arity].iter().map(|&v| Var(v)).collect();
    let mut atoms = Vec::new();
    let mut i = arity;
    while i < enc.len() {
        let p = SymbolId(enc[i]);
        let k = predicates.iter().find(|(q, _)| *q == p).map_or(0, |&(_, k)| k);
        atoms.push(Atom {
            predicate: p,
            args: enc[i + 1..i + 1 + k].iter().map(|&v| Var(v)).collect(),
        });
        i += 1 + k;
    }
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
        var_names: var_names(n),
    }
}

/// All conjunctive queries with head arity `arity` and 1 to `max_atoms` atoms over
/// `predicates` (id, arity), one per isomorphism class, safe and without repeated atoms.
///
/// Order: fewer atoms first, then heads without repeated variables, then more distinct
/// variables, then the canonical encoding. `limit` bounds the number of raw bodies
/// generated.
pub fn cq_candidates(arity: usize, predicates: &[(SymbolId, usize)], max_atoms: usize, limit: u64) -> Result<Vec<Cq>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<(usize, bool, usize, Vec<u32>)> = Vec::new();
    let mut generated: u64 = 0;
    let mut preds: Vec<(SymbolId, usize)> = predicates.to_vec();
    preds.sort();
    for n in 1..=max_atoms {
        for combo in preds.iter().combinations_with_replacement(n) {
            let slots = arity + combo.iter().map(|(_, k)| k).sum::<usize>();
            restricted_growth(slots, |s| {
                generated += 1;
                if generated > limit {
                    return Err(Error::CapExceeded {
                        resource: "candidate views",
                        limit: limit as usize,
                    });
                }
                let head = &s[..arity];
                let mut atoms: Vec<(SymbolId, &[u32])> = Vec::with_capacity(n);
                let mut i = arity;
                for &&(p, k) in &combo {
                    atoms.push((p, &s[i..i + k]));
                    i += k;
                }
                if head.iter().any(|v| !s[arity..].contains(v)) {
                    return Ok(());
                }
                if atoms.iter().duplicates().next().is_some() {
                    return Ok(());
                }
                let enc = canonical(head, &atoms);
                if seen.insert(enc.clone()) {
                    let repeated = head.iter().duplicates().next().is_some();
                    let vars = s.iter().max().map_or(0, |&m| m as usize + 1);
                    found.push((n, repeated, usize::MAX - vars, enc));
                }
                Ok(())
            })?;
        }
    }
    found.sort();
    Ok(found.into_iter().map(|(_, _, _, enc)| decode(&enc, arity, &preds)).collect())
}
