//! Containment and equivalence of regular path queries.

use viewsynth::automata::{compile, containment_counterexample, equivalent, to_regex, DEFAULT_DETERMINIZATION_CAP};
use viewsynth::model::{parse_regex_open, Alphabet};

fn main() -> viewsynth::Result<()> {
    let mut al = Alphabet::new();
    let pairs = [("b1.b2", "b1.(b2|b1)"), ("(b1|b2)*", "b1*"), ("b1.(b1|b2)", "b1.b1|b1.b2")];
    for (x, y) in pairs {
        let a = compile(&parse_regex_open(x, &mut al, false)?, &[]);
        let b = compile(&parse_regex_open(y, &mut al, false)?, &[]);
        match containment_counterexample(&a, &b, DEFAULT_DETERMINIZATION_CAP)? {
            None => println!("{x} is contained in {y}"),
            Some(w) => println!("{x} is not contained in {y}: {}", al.format_word(&w)),
        }
        println!("  equivalent: {}", equivalent(&a, &b, DEFAULT_DETERMINIZATION_CAP)?);
        println!("  {x} as regex after reduction: {}", to_regex(&a).to_text(&al));
    }
    Ok(())
}
