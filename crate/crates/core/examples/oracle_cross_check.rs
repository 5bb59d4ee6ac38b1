//! Random instances checked by the synthesis engine, the brute-force search and random
//! databases.

use viewsynth::oracle::random::{random_rpq_instance, seeded, RpqShape};
use viewsynth::oracle::{brute_view_existence_rpq, coherence_soundness_sample};
use viewsynth::rpq::{synthesize_sound, SearchConfig};

fn main() -> viewsynth::Result<()> {
    for seed in 0..10 {
        let instance = random_rpq_instance(&mut seeded(seed), RpqShape::default());
        let engine = synthesize_sound(&instance, &SearchConfig::default())?;
        let brute = brute_view_existence_rpq(&instance, 1_000_000)?;
        let coherent = match engine.solutions.first() {
            Some(sol) => coherence_soundness_sample(&instance, &sol.regexes, instance.mode, 20, seed)?
                .passed()
                .to_string(),
            None => "-".to_string(),
        };
        let m = &instance.mappings[0];
        let al = &instance.alphabet;
        println!(
            "seed {seed}: {} ~> {} | engine {} brute {} coherent {coherent}",
            m.source.to_text(al),
            m.target.to_text(al),
            engine.found(),
            brute.found(),
        );
    }
    Ok(())
}
