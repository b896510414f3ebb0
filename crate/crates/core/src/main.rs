fn main() {
    std::process::exit(quadric_jacobi::cli::run(std::env::args_os()));
}
