use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Formats a float with 17 significant digits, which round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn fmt_bool(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// RFC-4180 CSV (CRLF line ends, minimal quoting) rendered to a string.
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let dump = |e: csv::Error| Error::Table(e.to_string());
    w.write_record(header).map_err(dump)?;
    for row in rows {
        w.write_record(row).map_err(dump)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Table(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Table(e.to_string()))
}

/// Column access into a parsed CSV document.
pub struct Table {
    header: Vec<String>,
    rows: Vec<csv::StringRecord>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let dump = |e: csv::Error| Error::Table(e.to_string());
        let header = r.headers().map_err(dump)?.iter().map(str::to_string).collect();
        let rows = r.records().collect::<std::result::Result<_, _>>().map_err(dump)?;
        Ok(Table { header, rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Table(format!("missing column `{name}`")))
    }

    /// Column values; empty cells are `None`.
    pub fn optional(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let i = self.index(name)?;
        self.rows
            .iter()
            .map(|row| {
                let cell = &row[i];
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse()
                        .map(Some)
                        .map_err(|_| Error::Table(format!("bad number `{cell}` in `{name}`")))
                }
            })
            .collect()
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        self.optional(name)?
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::Table(format!("empty cell in `{name}`"))))
            .collect()
    }

    pub fn flags(&self, name: &str) -> Result<Vec<bool>> {
        Ok(self.column(name)?.into_iter().map(|v| v != 0.0).collect())
    }
}

/// Writes `contents` to `path` via a temporary file in the same directory
/// and a rename, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents)
        .and_then(|_| tmp.as_file().sync_all())
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
