fn main() {
    std::process::exit(tspfg::cli::main());
}
