use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("NILHECKE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let out = nilhecke_cli::run(std::env::args_os());
    if let Some(body) = &out.stdout {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{body}");
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}
