fn main() {
    gcs_core::cli::init_logging();
    let code = gcs_core::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
