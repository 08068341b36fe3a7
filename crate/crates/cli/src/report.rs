//! `report`: merge verify CSVs into one summary grouped by suite.
//!
//! Records are keyed by (suite, check, params); the merge refuses
//! duplicate keys instead of guessing which record to keep. Comment
//! lines (`#`) are skipped on input, so summaries parse as inputs again.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::output::{csv_row, stamp_line, write_out};
use crate::verify::REPORT_HEADER;
use crate::ReportArgs;

type Row = Vec<String>;

fn read_report(path: &Path, merged: &mut BTreeMap<String, Vec<Row>>) -> Result<usize> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("cannot read report {}", path.display()))?;
    let header: Vec<String> = reader
        .headers()
        .with_context(|| format!("missing header in {}", path.display()))?
        .iter()
        .map(str::to_string)
        .collect();
    let expected: Vec<&str> = REPORT_HEADER.split(',').collect();
    if header != expected {
        bail!(
            "unexpected header in {}: got {:?}, expected {:?}",
            path.display(),
            header.join(","),
            REPORT_HEADER
        );
    }
    let mut rows = 0;
    for record in reader.records() {
        let record = record.with_context(|| format!("malformed row in {}", path.display()))?;
        if record.len() != expected.len() {
            bail!(
                "row with {} fields in {} (expected {})",
                record.len(),
                path.display(),
                expected.len()
            );
        }
        let row: Row = record.iter().map(str::to_string).collect();
        merged
            .entry(row[0].clone())
            .or_default()
            .push(row);
        rows += 1;
    }
    Ok(rows)
}

pub fn run(args: &ReportArgs) -> Result<u8> {
    let mut merged: BTreeMap<String, Vec<Row>> = BTreeMap::new();
    let mut total = 0;
    for path in &args.inputs {
        total += read_report(path, &mut merged)?;
    }

    // Keys must be unique across every input: a collision means the same
    // check was merged twice, and silently keeping one record would hide it.
    let mut seen: BTreeMap<(String, String, String), ()> = BTreeMap::new();
    for rows in merged.values() {
        for row in rows {
            let key = (row[0].clone(), row[1].clone(), row[2].clone());
            match seen.entry(key) {
                Entry::Vacant(slot) => {
                    slot.insert(());
                }
                Entry::Occupied(slot) => {
                    let (suite, check, params) = slot.key();
                    bail!("duplicate record key: suite={suite} check={check} params={params}");
                }
            }
        }
    }

    let mut content = stamp_line(args.timestamp).unwrap_or_default();
    content.push_str(REPORT_HEADER);
    content.push('\n');
    for (suite, rows) in &merged {
        content.push_str(&format!("# section: {suite}\n"));
        for row in rows {
            let fields: Vec<&str> = row.iter().map(String::as_str).collect();
            content.push_str(&csv_row(&fields));
        }
    }
    write_out(args.out.as_deref(), &content)?;
    if args.out.is_some() {
        println!(
            "merged {total} records from {} files into {} sections",
            args.inputs.len(),
            merged.len()
        );
    }
    Ok(0)
}
