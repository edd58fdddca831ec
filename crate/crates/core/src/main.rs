fn main() {
    std::process::exit(dampq::cli::main_with_std());
}
