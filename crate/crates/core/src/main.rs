fn main() {
    std::process::exit(nilindex_core::cli::run(std::env::args_os()));
}
