fn main() {
    std::process::exit(congruence_lab::cli::run(std::env::args()));
}
