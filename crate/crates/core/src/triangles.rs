//! Exact counting triangles, computed by recurrence with row-level
//! memoization.
//!
//! Kinds:
//! - `D`: partitions of [n] into k blocks, every block of size >= 2
//! - `S`: Stirling numbers of the second kind
//! - `C`: signless Stirling numbers of the first kind (cycle counts)
//! - `Dr(r)`: permutations with k cycles, every cycle longer than r
//! - `Dm(m)`: partitions with k blocks, every block of size >= m
//!
//! Recurrences:
//!   D(n,k)   = k D(n-1,k) + (n-1) D(n-2,k-1)
//!   S(n,k)   = k S(n-1,k) + S(n-1,k-1)
//!   c(n,k)   = (n-1) c(n-1,k) + c(n-1,k-1)
//!   d_r(n,k) = (n-1) d_r(n-1,k) + (n-1)!/(n-1-r)! d_r(n-r-1,k-1)
//!   D_m(n,k) = k D_m(n-1,k) + C(n-1,m-1) D_m(n-m,k-1)
//! with seeds T(0,0) = 1 and T(n,0) = 0 for n >= 1 throughout. Out-of-support
//! entries are 0. The d_r and D_m recurrences are validated against the
//! enumeration oracle in the test suites.
//!
//! Concurrency contract: rows are append-only and never mutated once
//! computed, so shared `&Tables` readers are safe and the values are Send;
//! extension takes `&mut` and is idempotent (recomputing a row yields
//! identical values), so independent tables may extend in parallel.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Ratio;

/// Arbitrary-precision nonnegative count.
pub type Count = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriangleKind {
    D,
    S,
    C,
    Dr(usize),
    Dm(usize),
}

impl TriangleKind {
    /// Number of stored entries in row n (indices 0..=max support).
    pub fn row_width(self, n: usize) -> usize {
        match self {
            TriangleKind::D => n / 2 + 1,
            TriangleKind::S | TriangleKind::C => n + 1,
            TriangleKind::Dr(r) => n / (r + 1) + 1,
            TriangleKind::Dm(m) => n / m.max(1) + 1,
        }
    }

    /// Cache-file token: D, S, C, Dr:r, Dm:m.
    pub fn token(self) -> String {
        match self {
            TriangleKind::D => "D".into(),
            TriangleKind::S => "S".into(),
            TriangleKind::C => "C".into(),
            TriangleKind::Dr(r) => format!("Dr:{r}"),
            TriangleKind::Dm(m) => format!("Dm:{m}"),
        }
    }

    pub fn parse(token: &str) -> Result<Self> {
        match token {
            "D" => Ok(TriangleKind::D),
            "S" => Ok(TriangleKind::S),
            "C" => Ok(TriangleKind::C),
            _ => {
                let bad = || Error::InvalidArgument(format!("unknown triangle kind {token:?}"));
                if let Some(r) = token.strip_prefix("Dr:") {
                    return r.parse().map(TriangleKind::Dr).map_err(|_| bad());
                }
                if let Some(m) = token.strip_prefix("Dm:") {
                    let m: usize = m.parse().map_err(|_| bad())?;
                    if m == 0 {
                        return Err(Error::InvalidArgument("Dm requires m >= 1".into()));
                    }
                    return Ok(TriangleKind::Dm(m));
                }
                Err(bad())
            }
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Append-only memo of triangle rows; rows are immutable once computed.
#[derive(Debug, Clone)]
pub struct TriangleTable {
    kind: TriangleKind,
    rows: Vec<Vec<Count>>,
}

impl TriangleTable {
    pub fn new(kind: TriangleKind) -> Self {
        if let TriangleKind::Dm(m) = kind {
            assert!(m >= 1, "Dm requires m >= 1");
        }
        TriangleTable { kind, rows: vec![vec![Count::one()]] }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn computed_rows(&self) -> usize {
        self.rows.len()
    }

    fn get(&self, n: usize, k: usize) -> Count {
        match self.rows[n].get(k) {
            Some(v) => v.clone(),
            None => Count::zero(),
        }
    }

    /// Computes row `len` from the rows below it. Extracted so that cache
    /// import can recompute a row without mutating the table.
    fn compute_next_row(&self) -> Vec<Count> {
        let n = self.rows.len();
        let width = self.kind.row_width(n);
        let mut row = vec![Count::zero(); width];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = match self.kind {
                TriangleKind::D => {
                    let mut v = self.get(n - 1, k) * Count::from(k);
                    if n >= 2 {
                        v += self.get(n - 2, k - 1) * Count::from(n - 1);
                    }
                    v
                }
                TriangleKind::S => self.get(n - 1, k) * Count::from(k) + self.get(n - 1, k - 1),
                TriangleKind::C => {
                    self.get(n - 1, k) * Count::from(n - 1) + self.get(n - 1, k - 1)
                }
                TriangleKind::Dr(r) => {
                    let mut v = self.get(n - 1, k) * Count::from(n - 1);
                    if n >= r + 1 {
                        // (n-1)!/(n-1-r)! = (n-1)(n-2)...(n-r)
                        let mut ff = Count::one();
                        for i in 0..r {
                            ff *= Count::from(n - 1 - i);
                        }
                        v += self.get(n - r - 1, k - 1) * ff;
                    }
                    v
                }
                TriangleKind::Dm(m) => {
                    let mut v = self.get(n - 1, k) * Count::from(k);
                    if n >= m {
                        v += self.get(n - m, k - 1)
                            * binomial(Count::from(n - 1), Count::from(m - 1));
                    }
                    v
                }
            };
        }
        row
    }

    /// Extends the memo so rows 0..=n exist. Recomputing a row always yields
    /// identical values, so extension is idempotent.
    pub fn ensure_rows(&mut self, n: usize) {
        while self.rows.len() <= n {
            let row = self.compute_next_row();
            self.rows.push(row);
        }
    }

    /// Full row n, index k from 0 to the maximal support index.
    pub fn row(&mut self, n: usize) -> &[Count] {
        self.ensure_rows(n);
        &self.rows[n]
    }

    /// Row access without extension; None if not yet computed.
    pub fn row_if_computed(&self, n: usize) -> Option<&[Count]> {
        self.rows.get(n).map(|r| r.as_slice())
    }

    pub fn entry(&mut self, n: usize, k: usize) -> Count {
        self.ensure_rows(n);
        self.get(n, k)
    }

    pub fn row_total(&mut self, n: usize) -> Count {
        self.row(n).iter().sum()
    }

    /// Verifies that `claimed` equals the recurrence-computed row n; the
    /// table is extended up to row n-1 as a side effect.
    pub fn verify_row(&mut self, n: usize, claimed: &[Count]) -> bool {
        if n == 0 {
            return claimed == [Count::one()];
        }
        self.ensure_rows(n - 1);
        if self.rows.len() > n {
            return self.rows[n] == claimed;
        }
        self.compute_next_row() == claimed
    }
}

/// Bundle of all memoized triangles used across the crate.
#[derive(Debug, Clone)]
pub struct Tables {
    d: TriangleTable,
    s: TriangleTable,
    c: TriangleTable,
    dr: BTreeMap<usize, TriangleTable>,
    dm: BTreeMap<usize, TriangleTable>,
}

impl Default for Tables {
    fn default() -> Self {
        Self::new()
    }
}

impl Tables {
    pub fn new() -> Self {
        Tables {
            d: TriangleTable::new(TriangleKind::D),
            s: TriangleTable::new(TriangleKind::S),
            c: TriangleTable::new(TriangleKind::C),
            dr: BTreeMap::new(),
            dm: BTreeMap::new(),
        }
    }

    pub fn table_mut(&mut self, kind: TriangleKind) -> &mut TriangleTable {
        match kind {
            TriangleKind::D => &mut self.d,
            TriangleKind::S => &mut self.s,
            TriangleKind::C => &mut self.c,
            TriangleKind::Dr(r) => self
                .dr
                .entry(r)
                .or_insert_with(|| TriangleTable::new(TriangleKind::Dr(r))),
            TriangleKind::Dm(m) => self
                .dm
                .entry(m)
                .or_insert_with(|| TriangleTable::new(TriangleKind::Dm(m))),
        }
    }

    /// Full row n of the given triangle, memoized.
    pub fn triangle_row(&mut self, kind: TriangleKind, n: usize) -> &[Count] {
        self.table_mut(kind).row(n)
    }

    /// Number of partitions of [n] into k blocks, each of size >= 2.
    pub fn d_count(&mut self, n: usize, k: usize) -> Count {
        self.d.entry(n, k)
    }

    /// D(n) = sum_k D(n,k); D(0) = 1 by convention.
    pub fn d_total(&mut self, n: usize) -> Count {
        self.d.row_total(n)
    }

    pub fn stirling2(&mut self, n: usize, k: usize) -> Count {
        self.s.entry(n, k)
    }

    /// Bell number B(n).
    pub fn bell(&mut self, n: usize) -> Count {
        self.s.row_total(n)
    }

    pub fn stirling1_unsigned(&mut self, n: usize, k: usize) -> Count {
        self.c.entry(n, k)
    }

    /// Permutations of [n] with k cycles, each longer than r.
    pub fn d_r_cycle(&mut self, n: usize, k: usize, r: usize) -> Count {
        if r == 0 {
            return self.stirling1_unsigned(n, k);
        }
        self.table_mut(TriangleKind::Dr(r)).entry(n, k)
    }

    /// Partitions of [n] into k blocks, each of size >= m (m >= 1).
    pub fn d_m_block(&mut self, n: usize, k: usize, m: usize) -> Result<Count> {
        match m {
            0 => Err(Error::InvalidArgument("d_m_block requires m >= 1".into())),
            1 => Ok(self.stirling2(n, k)),
            2 => Ok(self.d_count(n, k)),
            _ => Ok(self.table_mut(TriangleKind::Dm(m)).entry(n, k)),
        }
    }

    /// sum_k k * row(n)[k] as an exact integer.
    pub fn weighted_row_sum(&mut self, kind: TriangleKind, n: usize) -> Count {
        self.triangle_row(kind, n)
            .iter()
            .enumerate()
            .map(|(k, v)| v * Count::from(k))
            .sum()
    }

    /// sum_k k^2 * row(n)[k].
    pub fn square_weighted_row_sum(&mut self, kind: TriangleKind, n: usize) -> Count {
        self.triangle_row(kind, n)
            .iter()
            .enumerate()
            .map(|(k, v)| v * Count::from(k * k))
            .sum()
    }

    /// D(n)/B(n) as an exact rational (no enumeration).
    pub fn singleton_free_fraction(&mut self, n: usize) -> Ratio {
        Ratio::new(self.d_total(n).into(), self.bell(n).into())
    }
}
