use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

/// Destination of a command's main output: a file or stdout.
pub struct Out {
    w: Box<dyn Write>,
}

impl Out {
    pub fn open(path: Option<&Path>) -> io::Result<Out> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Out { w })
    }

    /// `# heterobaker <version> <command> <config as JSON>`, then one comment
    /// line per note, then the column names.
    pub fn csv_header<C: Serialize>(&mut self, command: &str, config: &C, notes: &[String], columns: &[&str]) -> io::Result<()> {
        let cfg = serde_json::to_string(config).map_err(io::Error::other)?;
        writeln!(self.w, "# heterobaker {} {command} {cfg}", env!("CARGO_PKG_VERSION"))?;
        for n in notes {
            writeln!(self.w, "# {n}")?;
        }
        writeln!(self.w, "{}", columns.join(","))
    }

    pub fn row(&mut self, fields: &[Field]) -> io::Result<()> {
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.w.write_all(b",")?;
            }
            match f {
                Field::Real(x) => write!(self.w, "{}", real(*x))?,
                Field::Int(n) => write!(self.w, "{n}")?,
                Field::Text(s) => write!(self.w, "{s}")?,
            }
        }
        self.w.write_all(b"\n")
    }

    /// Pretty JSON with the config embedded next to the payload.
    pub fn json<C: Serialize, T: Serialize>(&mut self, command: &str, config: &C, payload: &T) -> io::Result<()> {
        let doc = serde_json::json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "result": payload,
        });
        serde_json::to_writer_pretty(&mut self.w, &doc).map_err(io::Error::other)?;
        self.w.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.w.flush()
    }
}

pub enum Field {
    Real(f64),
    Int(u64),
    Text(String),
}

/// 17 significant digits, enough to round-trip any double.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}
