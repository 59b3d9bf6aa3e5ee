fn main() {
    std::process::exit(revspy::harness::cli_main(std::env::args_os()));
}
