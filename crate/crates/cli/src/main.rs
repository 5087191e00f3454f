fn main() {
    std::process::exit(vfrac_cli::run(std::env::args_os()));
}
