fn main() {
    std::process::exit(ncl::cli::run(std::env::args_os()));
}
