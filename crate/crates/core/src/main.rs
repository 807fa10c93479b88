fn main() {
    let (code, out) = mukai::cli::run(std::env::args_os());
    if code == 2 {
        eprintln!("{out}");
    } else if !out.is_empty() {
        println!("{out}");
    }
    std::process::exit(code);
}
