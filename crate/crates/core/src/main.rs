fn main() {
    std::process::exit(threshold_spectra::cli::run(std::env::args_os()));
}
