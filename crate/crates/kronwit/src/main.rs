fn main() {
    let result = kronwit::run(std::env::args_os());
    result.emit();
    std::process::exit(result.status.exit_code());
}
