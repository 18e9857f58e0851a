fn main() {
    std::process::exit(mobnet::cli::run(std::env::args_os()));
}
