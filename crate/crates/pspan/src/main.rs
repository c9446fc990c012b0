fn main() {
    // die on closed pipes like other line-oriented tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(pspan::cli::run(std::env::args()));
}
