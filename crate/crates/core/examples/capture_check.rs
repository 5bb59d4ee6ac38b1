//! Checking given views against a mapping, with a separating word when capture fails.

use viewsynth::automata::DEFAULT_DETERMINIZATION_CAP;
use viewsynth::model::{parse_instance, parse_views, Mode};
use viewsynth::report::describe_record;
use viewsynth::rpq::{capture_check, records, view_languages, views_from_defs, RpqProblem};

fn main() -> viewsynth::Result<()> {
    let instance = parse_instance(include_str!("sec6_sound.vs"))?;
    let problem = RpqProblem::new(&instance)?;
    for text in ["view a1 = b1\nview a2 = b2\nview a3 = empty\n", include_str!("bad_views.vs")] {
        let defs = parse_views(text, &instance)?;
        let views = views_from_defs(&defs, &instance.alphabet)?;
        let langs = view_languages(&views, None, &problem.view_letters)?;
        let verdict = capture_check(&problem, &langs, Mode::Sound, DEFAULT_DETERMINIZATION_CAP)?;
        println!("{}", if verdict.holds() { "captures" } else { "does not capture" });
        for r in records(&verdict, &instance.alphabet) {
            print!("{}", describe_record(&r));
        }
    }
    Ok(())
}
