//! b-file cross-checking: plain-text `index value` lines, `#` comments,
//! compared entry by entry against the exact computation.

use num_bigint::BigUint;

use assoc_stirling::error::{Error, Result};
use assoc_stirling::triangles::Tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// D(n) totals
    DTotal,
    /// Bell numbers B(n)
    Bell,
    /// fixed column D(n, k)
    DColumn(usize),
}

impl SequenceKind {
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self> {
        match name {
            "d-total" => Ok(SequenceKind::DTotal),
            "bell" => Ok(SequenceKind::Bell),
            "d-col" => k.map(SequenceKind::DColumn).ok_or_else(|| {
                Error::InvalidArgument("--sequence d-col requires --k".into())
            }),
            other => Err(Error::InvalidArgument(format!(
                "unknown sequence {other:?} (expected d-total, bell, or d-col)"
            ))),
        }
    }

    fn value(self, tables: &mut Tables, n: usize) -> BigUint {
        match self {
            SequenceKind::DTotal => tables.d_total(n),
            SequenceKind::Bell => tables.bell(n),
            SequenceKind::DColumn(k) => tables.d_count(n, k),
        }
    }
}

#[derive(Debug)]
pub enum CrosscheckOutcome {
    /// All listed entries agree; the count is how many were compared.
    Agreement { entries: usize },
    /// Vacuous agreement: the file had no data lines.
    Empty,
    /// First mismatch found.
    Mismatch { index: usize, file_value: String, computed: String },
}

pub fn parse_bfile(text: &str) -> Result<Vec<(usize, BigUint)>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        let n: usize = parts
            .next()
            .unwrap()
            .parse()
            .map_err(|_| Error::BFileParse { line: lineno, msg: "bad index".into() })?;
        let value: BigUint = parts
            .next()
            .ok_or_else(|| Error::BFileParse { line: lineno, msg: "missing value".into() })?
            .parse()
            .map_err(|_| Error::BFileParse { line: lineno, msg: "bad value".into() })?;
        if parts.next().is_some() {
            return Err(Error::BFileParse { line: lineno, msg: "trailing tokens".into() });
        }
        entries.push((n, value));
    }
    Ok(entries)
}

pub fn crosscheck(tables: &mut Tables, kind: SequenceKind, text: &str) -> Result<CrosscheckOutcome> {
    let entries = parse_bfile(text)?;
    if entries.is_empty() {
        return Ok(CrosscheckOutcome::Empty);
    }
    for (n, file_value) in &entries {
        let computed = kind.value(tables, *n);
        if computed != *file_value {
            return Ok(CrosscheckOutcome::Mismatch {
                index: *n,
                file_value: file_value.to_string(),
                computed: computed.to_string(),
            });
        }
    }
    Ok(CrosscheckOutcome::Agreement { entries: entries.len() })
}
