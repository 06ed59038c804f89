fn main() {
    std::process::exit(meanvalue::cli::dispatch(std::env::args_os()));
}
