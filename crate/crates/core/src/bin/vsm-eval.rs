fn main() {
    std::process::exit(vsm_eval::cli::main());
}
