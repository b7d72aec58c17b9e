fn main() {
    std::process::exit(additive_cyclic::cli::cli_main());
}
