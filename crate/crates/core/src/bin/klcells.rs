fn main() {
    std::process::exit(klcells::cli::run(std::env::args_os()));
}
