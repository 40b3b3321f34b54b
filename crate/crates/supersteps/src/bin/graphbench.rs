use std::process::exit;

fn main() {
    exit(supersteps::bench::cli_main(std::env::args_os()));
}
