fn main() {
    std::process::exit(lefschetz_tqft::cli::run(std::env::args_os()));
}
