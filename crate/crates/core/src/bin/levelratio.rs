fn main() {
    std::process::exit(level_ratios::cli::main());
}
