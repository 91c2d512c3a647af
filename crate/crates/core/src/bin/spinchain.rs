use clap::Parser;

use spinchain::cli;

fn main() {
    // die quietly when a downstream pipe closes instead of panicking in
    // the print macros
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let args = cli::Args::parse();
    std::process::exit(cli::run(args));
}
