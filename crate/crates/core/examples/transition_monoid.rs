//! The transition monoid of `b1.b2` and the partition of words into congruence classes.

use viewsynth::automata::compile;
use viewsynth::congruence::{TransitionMonoid, DEFAULT_MONOID_CAP};
use viewsynth::model::{parse_regex_open, Alphabet};

fn main() -> viewsynth::Result<()> {
    let mut al = Alphabet::new();
    let a = compile(&parse_regex_open("b1.b2", &mut al, false)?, &[]);
    let letters = al.target_letters();
    let m = TransitionMonoid::build(&a, &letters, DEFAULT_MONOID_CAP)?;
    print!("{}", m.describe(&al));

    let mut words = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..3 {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<_>| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
            .collect();
        words.extend(layer.iter().cloned());
    }
    for w in &words {
        let e = m.class_of(w)?;
        let shown = if w.is_empty() { "eps".to_string() } else { al.format_word(w) };
        println!("{shown:>12} -> class {e} (witness {})", al.format_word(m.witness(e)));
    }
    Ok(())
}
