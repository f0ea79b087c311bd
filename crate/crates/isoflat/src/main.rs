fn main() {
    std::process::exit(isoflat::cli::run(std::env::args_os()));
}
