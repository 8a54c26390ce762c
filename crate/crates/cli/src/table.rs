use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::Context;
use xxchain::Temperature;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn temperature(t: Temperature) -> String {
    match t {
        Temperature::Zero => "0".to_string(),
        Temperature::Finite(t) => float(t),
    }
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub struct Table {
    header: &'static [&'static str],
    body: String,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Self {
            header,
            body: String::new(),
        }
    }

    pub fn push(&mut self, row: &[String]) {
        assert_eq!(row.len(), self.header.len(), "row width");
        writeln!(self.body, "{}", row.join(",")).unwrap();
    }

    pub fn render(&self) -> String {
        format!("{}\n{}", self.header.join(","), self.body)
    }
}

/// Write to `out`, or stdout when absent.
pub fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
