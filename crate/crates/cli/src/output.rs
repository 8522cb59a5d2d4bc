//! Output formatting: scientific notation at a configured number of
//! significant digits, written to stdout or a file.

use std::io::Write;
use std::path::Path;

/// Format with `precision` significant digits in scientific notation.
pub fn fmt_num(x: f64, precision: usize) -> String {
    format!("{:.*e}", precision.saturating_sub(1), x)
}

/// Print to stdout, or to `path` when given.
pub fn write_out(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
        }
    }
}
