//! Dataset files: one byte string per line, ids assigned by line order.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use segjoin::Record;

/// A dataset file could not be read.
#[derive(Debug, thiserror::Error)]
#[error("cannot read {}: {source}", path.display())]
pub struct DatasetError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// Load one record per line with 0-based ids in line order. Bytes are kept
/// verbatim except the line terminator: a `\r` directly before the `\n` is
/// stripped with it, so CRLF files load like LF files. The final line needs
/// no terminator, and empty lines are legal zero-length records. Loads are
/// all-or-nothing.
pub fn load_dataset(path: &Path) -> Result<Vec<Record>, DatasetError> {
    let fail = |source| DatasetError {
        path: path.to_owned(),
        source,
    };
    let mut reader = BufReader::new(File::open(path).map_err(fail)?);
    let mut records = Vec::new();
    let mut line = Vec::new();
    loop {
        let n = reader.read_until(b'\n', &mut line).map_err(fail)?;
        if n == 0 {
            break;
        }
        if line.last() == Some(&b'\n') {
            line.pop();
            if line.last() == Some(&b'\r') {
                line.pop();
            }
        }
        records.push(Record::new(records.len() as u32, std::mem::take(&mut line)));
    }
    Ok(records)
}
