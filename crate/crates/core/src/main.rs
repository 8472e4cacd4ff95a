fn main() {
    std::process::exit(pickernel::cli::run(std::env::args_os()));
}
