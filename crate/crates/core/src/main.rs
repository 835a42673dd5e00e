fn main() {
    std::process::exit(alpha_energy::cli::run(std::env::args_os()));
}
