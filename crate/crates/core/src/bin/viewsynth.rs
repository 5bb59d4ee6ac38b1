fn main() {
    std::process::exit(viewsynth::cli::run(std::env::args_os()));
}
