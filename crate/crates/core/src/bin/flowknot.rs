fn main() {
    std::process::exit(flowknot::cli::run(std::env::args_os()));
}
