//! Foldings, the fold automaton and two-way containment.

use viewsynth::automata::{compile, DEFAULT_DETERMINIZATION_CAP};
use viewsynth::model::{parse_regex_open, Alphabet};
use viewsynth::twoway::{contains_2rpq, fold_language, folds_onto};

fn main() -> viewsynth::Result<()> {
    let mut al = Alphabet::new();
    let q = parse_regex_open("a.b.b^-.b.c", &mut al, true)?;
    let v = al.parse_word("a b b^- b c")?;
    let u = al.parse_word("a b c")?;
    println!("certificate for abb⁻bc onto abc: {:?}", folds_onto(&v, &u));

    let a = compile(&q, &[]);
    let letters = al.target_letters_two_way();
    let fold = fold_language(&a, &letters, DEFAULT_DETERMINIZATION_CAP)?;
    println!("one-way words folded onto by abb⁻bc, up to length 4:");
    for w in fold.words_up_to(4) {
        println!("  {}", al.format_word(&w));
    }

    for (x, y) in [("a.b.c", "a.b.b^-.b.c"), ("a.c", "a.b.b^-.c"), ("a.b.b^-.b.c", "a.b.c")] {
        let l = compile(&parse_regex_open(x, &mut al, true)?, &[]);
        let r = compile(&parse_regex_open(y, &mut al, true)?, &[]);
        println!("{x} contained in {y}: {}", contains_2rpq(&l, &r, DEFAULT_DETERMINIZATION_CAP)?);
    }
    Ok(())
}
