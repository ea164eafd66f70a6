fn main() {
    std::process::exit(affgr::cli::main_with_args(std::env::args().skip(1).collect()));
}
