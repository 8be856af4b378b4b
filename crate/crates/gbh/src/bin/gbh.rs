use std::io::{self, Write};

/// Stdout that exits quietly once the reader hangs up (`gbh ... | head`).
struct Stdout(io::Stdout);

impl Write for Stdout {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.write(buf).map_err(hang_up)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.0.flush().map_err(hang_up)
    }
}

fn hang_up(e: io::Error) -> io::Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    e
}

fn main() {
    let code = gbh::cli::run(std::env::args_os(), &mut Stdout(io::stdout()), &mut io::stderr());
    std::process::exit(code);
}
