//! Recurrence-vs-enumeration validation: every triangle recurrence must
//! reproduce the brute-force counts before anything downstream trusts it.
//! (The full enumeration budget runs again in the acceptance suite; this
//! suite keeps a slightly smaller sweep for quick feedback.)

use assoc_stirling::numeric::Ratio;
use assoc_stirling::oracle;
use assoc_stirling::peaks;
use assoc_stirling::triangles::{Count, Tables, TriangleKind};

fn assert_row_matches(row: &[Count], hist: &[Count], what: &str) {
    let width = row.len().max(hist.len());
    for k in 0..width {
        let a = row.get(k).cloned().unwrap_or_default();
        let b = hist.get(k).cloned().unwrap_or_default();
        assert_eq!(a, b, "{what}, k = {k}");
    }
}

#[test]
fn d_triangle_matches_enumeration() {
    let mut tables = Tables::new();
    for n in 0..=11 {
        let hist = oracle::count_partitions_by_blocks(n, 2).unwrap();
        let row = tables.triangle_row(TriangleKind::D, n).to_vec();
        assert_row_matches(&row, &hist, &format!("D row {n}"));
    }
}

#[test]
fn s_triangle_matches_enumeration() {
    let mut tables = Tables::new();
    for n in 0..=11 {
        let hist = oracle::count_partitions_by_blocks(n, 1).unwrap();
        let row = tables.triangle_row(TriangleKind::S, n).to_vec();
        assert_row_matches(&row, &hist, &format!("S row {n}"));
    }
}

#[test]
fn dm_triangles_match_enumeration() {
    let mut tables = Tables::new();
    for m in 3..=4usize {
        for n in 0..=11 {
            let hist = oracle::count_partitions_by_blocks(n, m).unwrap();
            let row = tables.triangle_row(TriangleKind::Dm(m), n).to_vec();
            assert_row_matches(&row, &hist, &format!("Dm({m}) row {n}"));
        }
    }
}

#[test]
fn dr_triangles_match_enumeration() {
    let mut tables = Tables::new();
    for r in 0..=3usize {
        for n in 0..=9 {
            let hist = oracle::count_permutations_by_cycles(n, r).unwrap();
            let kind = if r == 0 { TriangleKind::C } else { TriangleKind::Dr(r) };
            let row = tables.triangle_row(kind, n).to_vec();
            assert_row_matches(&row, &hist, &format!("Dr({r}) row {n}"));
        }
    }
}

#[test]
fn block_removal_bijection_up_to_ten() {
    for n in 1..=10 {
        assert!(
            oracle::verify_block_removal_bijection(n).unwrap(),
            "bijection fails at n = {n}"
        );
    }
}

#[test]
fn enumerated_means_match_formula() {
    let mut tables = Tables::new();
    for n in 2..=11 {
        let by_formula = peaks::block_count_mean(&mut tables, n).unwrap();
        let by_enumeration = oracle::mean_blocks_by_enumeration(n, 2).unwrap();
        assert_eq!(by_formula, by_enumeration, "n = {n}");
    }
}

#[test]
fn unrestricted_mean_is_bell_ratio() {
    let mut tables = Tables::new();
    for n in 1..=11 {
        let by_enumeration = oracle::mean_blocks_by_enumeration(n, 1).unwrap();
        let b_next = tables.bell(n + 1);
        let b = tables.bell(n);
        let expected = Ratio::new(
            num_bigint::BigInt::from(b_next - &b),
            num_bigint::BigInt::from(b),
        );
        assert_eq!(by_enumeration, expected, "n = {n}");
    }
}

#[test]
fn singleton_free_fraction_decreases() {
    let mut tables = Tables::new();
    let mut prev: Option<Ratio> = None;
    for n in 1..=11 {
        let frac = oracle::count_singleton_free_fraction(n).unwrap();
        assert_eq!(frac, tables.singleton_free_fraction(n), "n = {n}");
        if n >= 4 {
            if let Some(p) = prev {
                assert!(frac < p, "fraction must decrease at n = {n}");
            }
            prev = Some(frac);
        }
    }
}
