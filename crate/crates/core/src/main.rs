fn main() {
    std::process::exit(hzl::cli::main_with(std::env::args_os()));
}
