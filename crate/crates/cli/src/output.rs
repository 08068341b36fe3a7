//! CSV assembly and atomic file output.
//!
//! Files are written next to their final path and renamed into place, so
//! a crashed run never leaves a truncated artifact. All floats render in
//! Rust's shortest round-trip form: deterministic inputs give
//! byte-identical files once the timestamp header is off.

use std::borrow::Cow;
use std::io::Write;
use std::path::Path;
use std::time::SystemTime;

use anyhow::{Context, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stamp {
    On,
    Off,
}

/// Optional `# generated <rfc3339>` header line.
pub fn stamp_line(stamp: Stamp) -> Option<String> {
    match stamp {
        Stamp::On => Some(format!(
            "# generated {}\n",
            humantime::format_rfc3339_seconds(SystemTime::now())
        )),
        Stamp::Off => None,
    }
}

/// RFC 4180 escaping: quote fields holding separators, quotes, or breaks.
pub fn csv_field(s: &str) -> Cow<'_, str> {
    if s.contains([',', '"', '\n', '\r']) {
        Cow::Owned(format!("\"{}\"", s.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(s)
    }
}

/// Join already-escaped fields into one CSV record.
pub fn csv_row(fields: &[&str]) -> String {
    let mut row = fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",");
    row.push('\n');
    row
}

/// Write to stdout, or atomically (write-then-rename) to a path.
pub fn write_out(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .context("writing to stdout"),
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
            tmp.write_all(content.as_bytes())
                .with_context(|| format!("writing {}", p.display()))?;
            tmp.persist(p)
                .with_context(|| format!("renaming into {}", p.display()))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_with_separators_are_quoted_and_doubled() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_row(&["x", "1,5", "y"]), "x,\"1,5\",y\n");
    }

    #[test]
    fn atomic_write_replaces_the_target() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        write_out(Some(&path), "first\n").unwrap();
        write_out(Some(&path), "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
    }
}
