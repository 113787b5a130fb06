fn main() {
    std::process::exit(frl_core::cli::dispatch(std::env::args_os()));
}
