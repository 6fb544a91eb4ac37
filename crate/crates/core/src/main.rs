fn main() {
    std::process::exit(kneser_tw::cli::main());
}
