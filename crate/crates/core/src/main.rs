use std::process::exit;

fn main() {
    exit(set_ramsey::cli::run());
}
