use std::io::Write;

fn main() {
    let out = grassfrieze::cli::run(std::env::args_os());
    if !out.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.stdout.trim_end());
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}
