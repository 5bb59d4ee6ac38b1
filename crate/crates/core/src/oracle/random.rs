//! Seeded generators for test instances, automata and databases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::GraphDatabase;
use super::relational::RelInstance;
use crate::automata::{to_regex, Nwa};
use crate::model::{
    Alphabet, Atom, Cq, Letter, Mapping, Mode, ProblemInstance, Query, QueryKind, Regex, SymbolId, SymbolKind, Ucq,
    Var, ViewSet,
};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random expression of nesting depth at most `depth` over `letters`.
pub fn random_regex<R: Rng>(rng: &mut R, letters: &[Letter], depth: usize) -> Regex {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(0.1) {
            Regex::Epsilon
        } else {
            Regex::Letter(*letters.choose(rng).expect("nonempty alphabet"))
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..10) {
        0..=2 => leaf(rng),
        3..=5 => Regex::concat([random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1)]),
        6..=8 => Regex::union([random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1)]),
        _ => Regex::star(random_regex(rng, letters, depth - 1)),
    }
}

/// An automaton with 1 to `max_states` states, initial state 0, at least one final state
/// and each transition present with probability 0.35.
pub fn random_nwa<R: Rng>(rng: &mut R, letters: &[Letter], max_states: usize) -> Nwa {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut a = Nwa::new(letters.iter().copied());
    for _ in 0..n {
        let f = rng.gen_bool(0.4);
        a.add_state(f);
    }
    let forced = rng.gen_range(0..n);
    a.set_final(forced, true);
    a.add_initial(0);
    for p in 0..n {
        for &l in letters {
            for q in 0..n {
                if rng.gen_bool(0.35) {
                    a.add_transition(p, l, q);
                }
            }
        }
    }
    a
}

/// Shape of a random path-query instance.
#[derive(Clone, Copy, Debug)]
pub struct RpqShape {
    pub sources: usize,
    pub targets: usize,
    pub mappings: usize,
    /// Most states of the automaton behind each target query.
    pub target_states: usize,
    /// Nesting depth of the source expressions.
    pub source_depth: usize,
}

impl Default for RpqShape {
    fn default() -> Self {
        RpqShape {
            sources: 2,
            targets: 2,
            mappings: 1,
            target_states: 3,
            source_depth: 3,
        }
    }
}

/// A random path-query instance with sources `a1 …` and targets `b1 …`. Each target
/// query is the expression of a random automaton; source queries mix both alphabets
/// with source letters twice as likely.
pub fn random_rpq_instance<R: Rng>(rng: &mut R, shape: RpqShape) -> ProblemInstance {
    let mut al = Alphabet::new();
    let sources: Vec<SymbolId> = (1..=shape.sources)
        .map(|i| al.declare(&format!("a{i}"), SymbolKind::Source, 2).expect("fresh name"))
        .collect();
    let targets: Vec<SymbolId> = (1..=shape.targets)
        .map(|i| al.declare(&format!("b{i}"), SymbolKind::Target, 2).expect("fresh name"))
        .collect();
    let tl: Vec<Letter> = targets.iter().map(|&t| Letter::forward(t)).collect();
    let mut sl: Vec<Letter> = sources.iter().flat_map(|&s| [Letter::forward(s); 2]).collect();
    sl.extend(&tl);
    let mappings = (0..shape.mappings)
        .map(|_| {
            let target = to_regex(&random_nwa(rng, &tl, shape.target_states));
            let source = random_regex(rng, &sl, shape.source_depth);
            Mapping {
                source: Query::Path(source),
                target: Query::Path(target),
            }
        })
        .collect();
    ProblemInstance {
        kind: QueryKind::Rpq,
        mode: Mode::Sound,
        alphabet: al,
        mappings,
        views: ViewSet::new(),
    }
}

/// A graph with 1 to `max_objects` objects; each possible edge is present with a
/// probability drawn once per graph.
pub fn random_graph<R: Rng>(rng: &mut R, labels: &[SymbolId], max_objects: usize) -> GraphDatabase {
    let n = rng.gen_range(1..=max_objects.max(1));
    let p = rng.gen_range(0.15..0.5);
    let mut db = GraphDatabase::with_objects(n);
    for x in 0..n {
        for &l in labels {
            for y in 0..n {
                if rng.gen_bool(p) {
                    db.add_edge(x, l, y);
                }
            }
        }
    }
    db
}

/// A random conjunctive query with 1 to `max_atoms` atoms over `predicates` (id, arity)
/// and at most `max_vars` variables. Head variables are drawn from the body, so the query
/// is safe; variables are renumbered by first occurrence.
pub fn random_cq<R: Rng>(
    rng: &mut R,
    predicates: &[(SymbolId, usize)],
    head_arity: usize,
    max_atoms: usize,
    max_vars: usize,
) -> Cq {
    let n = rng.gen_range(1..=max_atoms.max(1));
    let atoms: Vec<(SymbolId, Vec<u32>)> = (0..n)
        .map(|_| {
            let &(p, k) = predicates.choose(rng).expect("nonempty signature");
            (p, (0..k).map(|_| rng.gen_range(0..max_vars.max(1) as u32)).collect())
        })
        .collect();
    let body: Vec<u32> = atoms.iter().flat_map(|(_, a)| a.iter().copied()).collect();
    let head: Vec<u32> = (0..head_arity)
        .map(|_| *body.choose(rng).expect("predicates of arity 0 only"))
        .collect();
    let mut renum: Vec<Option<u32>> = vec![None; max_vars.max(1)];
    let mut next = 0;
    let mut get = |v: u32| {
        Var(*renum[v as usize].get_or_insert_with(|| {
            next += 1;
            next - 1
        }))
    };
    let head = head.into_iter().map(&mut get).collect();
    let atoms = atoms
        .into_iter()
        .map(|(p, a)| Atom {
            predicate: p,
            args: a.into_iter().map(&mut get).collect(),
        })
        .collect();
    Cq::new(head, atoms)
}

/// A random union instance: source `a/2`, targets `r/2` and `p/1`, head arity 1 or 2,
/// one or two disjuncts of one or two atoms on each side, every source disjunct using
/// `a` at least once.
pub fn random_ucq_instance<R: Rng>(rng: &mut R) -> ProblemInstance {
    let mut al = Alphabet::new();
    let a = al.declare("a", SymbolKind::Source, 2).expect("fresh name");
    let r = al.declare("r", SymbolKind::Target, 2).expect("fresh name");
    let p = al.declare("p", SymbolKind::Target, 1).expect("fresh name");
    let head = rng.gen_range(1..=2);
    let mixed = [(a, 2), (a, 2), (r, 2), (p, 1)];
    let targets = [(r, 2), (p, 1)];
    let source = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut q = random_cq(rng, &mixed, head, 2, 3);
            if !q.atoms.iter().any(|x| x.predicate == a) {
                let args = q.atoms[0].args.clone();
                let first = args[0];
                let second = args.get(1).copied().unwrap_or(first);
                q.atoms[0] = Atom {
                    predicate: a,
                    args: vec![first, second],
                };
            }
            q
        })
        .collect();
    let target = (0..rng.gen_range(1..=2))
        .map(|_| random_cq(rng, &targets, head, 2, 3))
        .collect();
    ProblemInstance {
        kind: QueryKind::Ucq,
        mode: Mode::Sound,
        alphabet: al,
        mappings: vec![Mapping {
            source: Query::Relational(Ucq { disjuncts: source }),
            target: Query::Relational(Ucq { disjuncts: target }),
        }],
        views: ViewSet::new(),
    }
}

/// A database over 1 to `max_constants` constants; each possible fact is present with
/// a probability drawn once per database.
pub fn random_rel_instance<R: Rng>(rng: &mut R, predicates: &[(SymbolId, usize)], max_constants: usize) -> RelInstance {
    let n = rng.gen_range(1..=max_constants.max(1)) as u32;
    let p = rng.gen_range(0.15..0.5);
    let mut db = RelInstance::with_constants(n as usize);
    for &(pred, k) in predicates {
        let tuples = std::iter::repeat(0..n).take(k);
        for t in itertools::Itertools::multi_cartesian_product(tuples) {
            if rng.gen_bool(p) {
                db.insert(pred, t);
            }
        }
        if k == 0 && rng.gen_bool(p) {
            db.insert(pred, Vec::new());
        }
    }
    db
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a = random_rpq_instance(&mut seeded(7), RpqShape::default());
        let b = random_rpq_instance(&mut seeded(7), RpqShape::default());
        assert_eq!(a.to_text(), b.to_text());
        let u = random_ucq_instance(&mut seeded(3));
        assert_eq!(u.to_text(), random_ucq_instance(&mut seeded(3)).to_text());
    }

    #[test]
    fn generated_instances_parse_back() {
        for seed in 0..50 {
            let i = random_rpq_instance(&mut seeded(seed), RpqShape::default());
            let again = crate::model::parse_instance(&i.to_text()).unwrap();
            assert_eq!(again.to_text(), i.to_text());
            let u = random_ucq_instance(&mut seeded(seed));
            u.validate().unwrap();
            let again = crate::model::parse_instance(&u.to_text()).unwrap();
            assert_eq!(again.to_text(), u.to_text());
        }
    }

    #[test]
    fn random_cq_is_safe() {
        let mut al = Alphabet::new();
        let r = al.declare("r", SymbolKind::Target, 2).unwrap();
        let mut rng = seeded(1);
        for _ in 0..100 {
            let q = random_cq(&mut rng, &[(r, 2)], 2, 3, 4);
            assert!(q.is_safe());
            assert!(q.num_vars() <= 4);
        }
    }
}
