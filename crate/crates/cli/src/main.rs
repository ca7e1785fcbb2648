fn main() {
    std::process::exit(biphoton_ret_cli::run_cli(std::env::args_os()));
}
