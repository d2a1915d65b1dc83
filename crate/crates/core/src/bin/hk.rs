use std::io::Write;

fn main() {
    let cap = std::env::var("HK_CAP").ok();
    let out = hk_core::cli::run(std::env::args_os(), cap.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
