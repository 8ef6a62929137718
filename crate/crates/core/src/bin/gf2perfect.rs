fn main() {
    std::process::exit(gf2_perfect::cli::run(std::env::args_os()));
}
