//! Sound views for `(a1|a3).(a2|a3) ~> b1.b2`.
//!
//! Run with `cargo run --example rpq_sound_synthesis`.

use viewsynth::model::parse_instance;
use viewsynth::rpq::{synthesize_sound, SearchConfig};

fn main() -> viewsynth::Result<()> {
    let instance = parse_instance(include_str!("sec6_sound.vs"))?;
    let synthesis = synthesize_sound(&instance, &SearchConfig::default())?;
    println!("target monoid: {} elements", synthesis.space.monoid.len());
    print!("{}", synthesis.report().to_text());
    Ok(())
}
