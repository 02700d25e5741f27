use std::io::{self, Write};

fn main() {
    if let Some(threads) = std::env::var("JETMODULI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if threads > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("thread pool set once");
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = jetmoduli::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    out.flush().ok();
    std::process::exit(code);
}
