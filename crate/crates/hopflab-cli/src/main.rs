fn main() {
    eprintln!("hopflab CLI is under construction");
    std::process::exit(2);
}
