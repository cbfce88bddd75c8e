fn main() {
    std::process::exit(soq::cli::run(std::env::args_os()));
}
