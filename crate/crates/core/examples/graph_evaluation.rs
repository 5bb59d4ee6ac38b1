//! Evaluating path queries over a small graph database.

use viewsynth::automata::compile;
use viewsynth::model::{parse_regex_open, Alphabet};
use viewsynth::oracle::{eval_2rpq, eval_by_paths, eval_rpq, GraphDatabase};

const GRAPH: &str = "\
alice -knows-> bob
bob -knows-> carol
carol -worksAt-> acme
alice -worksAt-> acme
";

fn main() -> viewsynth::Result<()> {
    let mut al = Alphabet::new();
    let db = GraphDatabase::parse_open(GRAPH, &mut al)?;
    for (text, two_way) in [("knows.knows*", false), ("knows*.worksAt", false), ("worksAt.worksAt^-", true)] {
        let a = compile(&parse_regex_open(text, &mut al, two_way)?, &[]);
        let answers = if two_way { eval_2rpq(&db, &a) } else { eval_rpq(&db, &a) };
        assert_eq!(answers, eval_by_paths(&db, &a, two_way, 2 * db.num_objects() * a.num_states()));
        let shown: Vec<String> = answers.iter().map(|&(x, y)| format!("({}, {})", db.name(x), db.name(y))).collect();
        println!("{text}: {}", shown.join(" "));
    }
    Ok(())
}
