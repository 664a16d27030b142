fn main() {
    std::process::exit(exptower::cli::run(std::env::args_os()));
}
