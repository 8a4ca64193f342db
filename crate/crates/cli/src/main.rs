fn main() {
    std::process::exit(netsched::run(std::env::args_os()));
}
