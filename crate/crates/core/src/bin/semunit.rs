fn main() { std::process::exit(semantic_units::cli::execute(std::env::args().collect())) }
