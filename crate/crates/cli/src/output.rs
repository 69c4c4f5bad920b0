//! Deterministic text delivery. Every floating-point cell is written with
//! exactly 12 significant digits in scientific notation, so identical
//! invocations produce byte-identical files on any platform.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// 12-significant-digit scientific notation, locale-independent.
pub fn sig12(value: f64) -> String {
    format!("{value:.11e}")
}

/// CSV cell for a boolean flag.
pub fn flag(value: bool) -> &'static str {
    if value {
        "1"
    } else {
        "0"
    }
}

/// Write `text` to the file at `out` if given, otherwise to stdout. The text
/// already carries its trailing newline.
pub fn deliver(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|err| CliError::Io(format!("cannot write to stdout: {err}")))
        }
    }
}
