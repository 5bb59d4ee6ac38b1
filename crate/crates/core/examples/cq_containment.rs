//! Containment of conjunctive queries by homomorphism, checked against canonical databases.

use viewsynth::cq::{find_hom, ucq_contains};
use viewsynth::model::{parse_ucq_open, Alphabet};
use viewsynth::oracle::{canonical_db, contained_by_canonical};

fn main() -> viewsynth::Result<()> {
    let mut al = Alphabet::new();
    let pairs = [
        ("q(x) :- r(x,y), r(y,x)", "q(x) :- r(x,y)"),
        ("q(x) :- r(x,y)", "q(x) :- r(x,y), r(y,x)"),
        ("q(x,y) :- r(x,z), r(z,y)", "q(x,y) :- r(x,z), r(z,w), r(v,y)"),
        ("q(x) :- r(x,x)", "q(x) :- r(x,y), r(y,z), r(z,x)"),
    ];
    for (a, b) in pairs {
        let q1 = parse_ucq_open(a, &mut al)?;
        let q2 = parse_ucq_open(b, &mut al)?;
        let by_hom = ucq_contains(&q1, &q2)?;
        let by_db = contained_by_canonical(&q1.disjuncts[0], &q2);
        println!("{a}  <=  {b}: {by_hom} (canonical database: {by_db})");
        if let Some(h) = find_hom(&q2.disjuncts[0], &q1.disjuncts[0])? {
            println!("  containment mapping: {:?}", h.map);
        }
    }
    let (db, head) = canonical_db(&parse_ucq_open("q(x) :- r(x,y), r(y,x)", &mut al)?.disjuncts[0]);
    print!("canonical database, head {head:?}:\n{}", db.to_text(&al));
    Ok(())
}
