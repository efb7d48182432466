//! Plain-text row cache.
//!
//! One line per row: `KIND n k0 k1 k2 ...` with decimal integers, space
//! separated, newline terminated; KIND is one of D, S, C, Dr:r, Dm:m.
//! Import recomputes every row from the recurrence and rejects the file on
//! the first mismatch, so an accepted cache is bit-identical to a fresh
//! computation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::triangles::{Count, Tables, TriangleKind, TriangleTable};

/// Serializes rows 0..=max_n of one triangle.
pub fn export_rows(tables: &mut Tables, kind: TriangleKind, max_n: usize) -> String {
    let table = tables.table_mut(kind);
    let mut out = String::new();
    for n in 0..=max_n {
        let row = table.row(n);
        write!(out, "{} {}", kind.token(), n).unwrap();
        for v in row {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parsed but unverified cache contents.
type ParsedRows = BTreeMap<TriangleKind, BTreeMap<usize, Vec<Count>>>;

fn parse(text: &str) -> Result<ParsedRows> {
    let mut rows: ParsedRows = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        let kind = TriangleKind::parse(parts.next().unwrap()).map_err(|e| Error::CacheParse {
            line: lineno,
            msg: e.to_string(),
        })?;
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::CacheParse { line: lineno, msg: "missing row index".into() })?
            .parse()
            .map_err(|_| Error::CacheParse { line: lineno, msg: "bad row index".into() })?;
        let mut row = Vec::new();
        for tok in parts {
            let v = tok.parse::<BigUint>().map_err(|_| Error::CacheParse {
                line: lineno,
                msg: format!("bad entry {tok:?}"),
            })?;
            row.push(v);
        }
        if row.is_empty() {
            return Err(Error::CacheParse { line: lineno, msg: "row has no entries".into() });
        }
        if rows.entry(kind).or_default().insert(n, row).is_some() {
            return Err(Error::CacheParse {
                line: lineno,
                msg: format!("duplicate row {kind} {n}"),
            });
        }
    }
    Ok(rows)
}

/// Parses and verifies a cache file, merging the verified rows into
/// `tables`. Every row is checked against the recurrence before acceptance;
/// any gap below a listed row is filled by computation.
pub fn import(tables: &mut Tables, text: &str) -> Result<ImportReport> {
    let parsed = parse(text)?;
    let mut report = ImportReport::default();
    for (kind, by_n) in parsed {
        let table = tables.table_mut(kind);
        for (n, row) in by_n {
            if !verify_against(table, n, &row) {
                return Err(Error::CacheVerify { kind: kind.token(), n });
            }
            table.ensure_rows(n);
            report.rows_accepted += 1;
        }
        report.kinds += 1;
    }
    Ok(report)
}

fn verify_against(table: &mut TriangleTable, n: usize, row: &[Count]) -> bool {
    table.verify_row(n, row)
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct ImportReport {
    pub kinds: usize,
    pub rows_accepted: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_identical() {
        let mut tables = Tables::new();
        let text = export_rows(&mut tables, TriangleKind::D, 12)
            + &export_rows(&mut tables, TriangleKind::Dr(2), 9);
        let mut fresh = Tables::new();
        let report = import(&mut fresh, &text).unwrap();
        assert_eq!(report.rows_accepted, 23);
        let again = export_rows(&mut fresh, TriangleKind::D, 12)
            + &export_rows(&mut fresh, TriangleKind::Dr(2), 9);
        assert_eq!(text, again);
    }

    #[test]
    fn corrupted_row_is_rejected() {
        let mut tables = Tables::new();
        let text = export_rows(&mut tables, TriangleKind::D, 6);
        let bad = text.replace("0 1 25 15", "0 1 26 15");
        assert_ne!(text, bad);
        let mut fresh = Tables::new();
        match import(&mut fresh, &bad) {
            Err(Error::CacheVerify { kind, n }) => {
                assert_eq!(kind, "D");
                assert_eq!(n, 6);
            }
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn malformed_lines_report_position() {
        let mut fresh = Tables::new();
        match import(&mut fresh, "D 0 1\nD x 0 1\n") {
            Err(Error::CacheParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse failure, got {other:?}"),
        }
        assert!(import(&mut fresh, "Q 0 1\n").is_err());
    }
}
