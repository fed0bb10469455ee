fn main() {
    std::process::exit(suffix_nsc::cli::main());
}
