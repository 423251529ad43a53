fn main() {
    std::process::exit(lieb_spectra::cli::run(std::env::args_os()));
}
