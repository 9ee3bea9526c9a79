use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// 12 significant digits, locale independent.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub struct CsvWriter {
    inner: Box<dyn Write>,
}

impl CsvWriter {
    pub fn open(path: Option<&Path>) -> io::Result<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { inner })
    }

    pub fn header(&mut self, cols: &[&str]) -> io::Result<()> {
        writeln!(self.inner, "{}", cols.join(","))
    }

    pub fn row(&mut self, cells: &[String]) -> io::Result<()> {
        writeln!(self.inner, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}
