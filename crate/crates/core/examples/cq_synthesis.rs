//! Conjunctive-query views: a chain mapping, and a target union that needs union views.

use viewsynth::cq::{synthesize_cq, CqSearchConfig, ViewKind};
use viewsynth::model::{parse_instance, Mode};

fn main() -> viewsynth::Result<()> {
    let chain = parse_instance(include_str!("chain_cq.vs"))?;
    let s = synthesize_cq(
        &chain,
        &CqSearchConfig {
            mode: Mode::Exact,
            ..Default::default()
        },
    )?;
    print!("{}", s.report().to_text());

    let union = parse_instance(
        "kind ucq\nmode exact\nsource a/2\ntarget r/2 s/2\nmap q(x,y) :- a(x,y) ~> q(x,y) :- r(x,y) ; q(x,y) :- s(x,y)\n",
    )?;
    for view_kind in [ViewKind::Cq, ViewKind::Ucq] {
        let cfg = CqSearchConfig {
            mode: Mode::Exact,
            view_kind,
            ..Default::default()
        };
        println!("== {view_kind:?} views");
        print!("{}", synthesize_cq(&union, &cfg)?.report().to_text());
    }
    Ok(())
}
