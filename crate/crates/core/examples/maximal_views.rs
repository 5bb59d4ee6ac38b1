//! Every maximal view set for `a1.a2 ~> 0.0|0.1|1.0`, in both capture modes.

use viewsynth::model::{parse_instance, Mode};
use viewsynth::rpq::{synthesize_rpq, RpqRequest, SearchConfig};

fn main() -> viewsynth::Result<()> {
    let instance = parse_instance(include_str!("union_exact.vs"))?;
    for mode in [Mode::Sound, Mode::Exact] {
        let req = RpqRequest {
            config: SearchConfig {
                mode,
                ..Default::default()
            },
            maximal: true,
            all: true,
        };
        let s = synthesize_rpq(&instance, &req)?;
        println!("== {mode}");
        for sol in s.report().solutions {
            let views: Vec<String> = sol.views.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            println!("{}", views.join(", "));
        }
    }
    Ok(())
}
