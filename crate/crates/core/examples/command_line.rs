//! Driving the `viewsynth` command line in process.

use viewsynth::cli::run_with;

fn main() {
    let instance = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sec6_sound.vs");
    let views = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bad_views.vs");
    let runs: [&[&str]; 3] = [
        &["viewsynth", "synth", "--format", "json", instance],
        &["viewsynth", "check", instance, "--views", views],
        &["viewsynth", "contain", "--kind", "rpq", "b1.b2", "b1.(b2|b1)"],
    ];
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut std::io::empty(), &mut out, &mut err);
        println!("$ {}\n{}{}exit {code}\n", args[1..].join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
