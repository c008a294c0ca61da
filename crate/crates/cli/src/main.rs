fn main() {
    std::process::exit(nk_cli::cli_main(std::env::args_os()));
}
