//! Brute-force ground truth: exhaustive enumeration of set partitions and
//! permutations with size/cycle restrictions.
//!
//! Everything here is independent of the recurrence tables; the test suites
//! validate each recurrence against these counts before trusting large n.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Ratio;

/// Largest n for which set partitions are enumerated (B(13) ~ 2.8e7).
pub const PARTITION_BUDGET: usize = 13;
/// Largest n for which permutations are enumerated by cycle type.
pub const PERMUTATION_BUDGET: usize = 9;

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget {
        Err(Error::EnumerationBudget { n, budget })
    } else {
        Ok(())
    }
}

/// Iterates over all set partitions of [n] in restricted-growth-string order.
///
/// `a[i]` is the block index of element i+1; a valid string has a[0] = 0 and
/// a[i] <= 1 + max(a[..i]).
pub struct PartitionIterator {
    a: Vec<u8>,
    // b[i] = 1 + max(a[..i]) for i >= 1; b[0] = 0 so a[0] never increments.
    b: Vec<u8>,
    n: usize,
    started: bool,
    done: bool,
}

impl PartitionIterator {
    pub fn new(n: usize) -> Self {
        PartitionIterator {
            a: vec![0; n],
            b: {
                let mut b = vec![0u8; n];
                for i in 1..n {
                    b[i] = 1;
                }
                b
            },
            n,
            started: false,
            done: false,
        }
    }

    /// Advances to the next restricted growth string, returning it, or None
    /// once all B(n) partitions have been visited.
    pub fn advance(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.a);
        }
        // Find the rightmost position that can still grow.
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.a[i] < self.b[i] {
                break;
            }
        }
        self.a[i] += 1;
        for j in i + 1..self.n {
            self.a[j] = 0;
            self.b[j] = self.b[j - 1].max(self.a[j - 1] + 1);
        }
        Some(&self.a)
    }
}

/// Calls `f` once per set partition of [n] (including n = 0, which has
/// exactly one, empty, partition).
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u8])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut it = PartitionIterator::new(n);
    while let Some(rgs) = it.advance() {
        f(rgs);
    }
}

fn block_sizes(rgs: &[u8], sizes: &mut Vec<u32>) {
    sizes.clear();
    for &v in rgs {
        let v = v as usize;
        if v >= sizes.len() {
            sizes.resize(v + 1, 0);
        }
        sizes[v] += 1;
    }
}

/// Histogram over k of partitions of [n] whose blocks all have size >= `min_block`.
///
/// Index k of the result is the number of partitions with exactly k blocks.
pub fn count_partitions_by_blocks(n: usize, min_block: usize) -> Result<Vec<BigUint>> {
    check_budget(n, PARTITION_BUDGET)?;
    let mut hist: Vec<u64> = vec![0; n + 1];
    let mut sizes = Vec::new();
    for_each_partition(n, |rgs| {
        block_sizes(rgs, &mut sizes);
        if sizes.iter().all(|&s| s as usize >= min_block) {
            hist[sizes.len()] += 1;
        }
    });
    while hist.len() > 1 && *hist.last().unwrap() == 0 {
        hist.pop();
    }
    Ok(hist.into_iter().map(BigUint::from).collect())
}

/// D(n)/B(n) as an exact rational.
pub fn count_singleton_free_fraction(n: usize) -> Result<Ratio> {
    check_budget(n, PARTITION_BUDGET)?;
    let mut singleton_free = 0u64;
    let mut total = 0u64;
    let mut sizes = Vec::new();
    for_each_partition(n, |rgs| {
        total += 1;
        block_sizes(rgs, &mut sizes);
        if sizes.iter().all(|&s| s >= 2) {
            singleton_free += 1;
        }
    });
    Ok(Ratio::new(singleton_free.into(), total.into()))
}

/// Exact average block count over partitions of [n] with all blocks >= `min_block`.
pub fn mean_blocks_by_enumeration(n: usize, min_block: usize) -> Result<Ratio> {
    check_budget(n, PARTITION_BUDGET)?;
    let hist = count_partitions_by_blocks(n, min_block)?;
    let mut total = BigUint::zero();
    let mut weighted = BigUint::zero();
    for (k, c) in hist.iter().enumerate() {
        total += c;
        weighted += c * BigUint::from(k);
    }
    if total.is_zero() {
        return Err(Error::UndefinedStatistic(format!(
            "no partitions of [{n}] with min block size {min_block}"
        )));
    }
    Ok(Ratio::new(weighted.into(), total.into()))
}

/// First and second moments of the number of non-singleton blocks over all
/// (unrestricted) partitions of [n].
pub fn nonsingleton_block_moments(n: usize) -> Result<(Ratio, Ratio)> {
    check_budget(n, PARTITION_BUDGET)?;
    let mut total = 0u64;
    let mut sum = 0u64;
    let mut sum_sq = 0u64;
    let mut sizes = Vec::new();
    for_each_partition(n, |rgs| {
        total += 1;
        block_sizes(rgs, &mut sizes);
        let big = sizes.iter().filter(|&&s| s >= 2).count() as u64;
        sum += big;
        sum_sq += big * big;
    });
    Ok((
        Ratio::new(sum.into(), total.into()),
        Ratio::new(sum_sq.into(), total.into()),
    ))
}

fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}

/// Histogram over k of permutations of [n] with all cycles strictly longer
/// than `min_cycle_exclusive`.
///
/// Counts by cycle type: a type with m_j cycles of length j contributes
/// n! / prod_j (j^{m_j} m_j!).
pub fn count_permutations_by_cycles(n: usize, min_cycle_exclusive: usize) -> Result<Vec<BigUint>> {
    check_budget(n, PERMUTATION_BUDGET)?;
    let mut hist = vec![BigUint::zero(); n + 1];
    if n == 0 {
        hist[0] = BigUint::one();
        return Ok(trim(hist));
    }
    let n_fact = factorial(n);
    // parts: current cycle lengths (non-increasing), each > min_cycle_exclusive
    fn rec(
        remaining: usize,
        max_part: usize,
        min_len: usize,
        parts: &mut Vec<usize>,
        n_fact: &BigUint,
        hist: &mut [BigUint],
    ) {
        if remaining == 0 {
            // weight = n! / prod j^{m_j} m_j!
            let mut denom = BigUint::one();
            let mut j = 0;
            while j < parts.len() {
                let len = parts[j];
                let mut mult = 0usize;
                while j < parts.len() && parts[j] == len {
                    mult += 1;
                    j += 1;
                }
                denom *= BigUint::from(len).pow(mult as u32);
                denom *= factorial(mult);
            }
            hist[parts.len()] += n_fact / denom;
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= min_len {
            parts.push(part);
            rec(remaining - part, part, min_len, parts, n_fact, hist);
            parts.pop();
            part -= 1;
        }
    }
    let mut parts = Vec::new();
    rec(n, n, min_cycle_exclusive + 1, &mut parts, &n_fact, &mut hist);
    Ok(trim(hist))
}

fn trim(mut hist: Vec<BigUint>) -> Vec<BigUint> {
    while hist.len() > 1 && hist.last().unwrap().is_zero() {
        hist.pop();
    }
    hist
}

/// Second-level check of the cycle-type counter: walk all n! permutations.
pub fn count_permutations_by_cycles_bruteforce(
    n: usize,
    min_cycle_exclusive: usize,
) -> Result<Vec<BigUint>> {
    check_budget(n, 7)?;
    let mut hist = vec![0u64; n + 1];
    if n == 0 {
        hist[0] = 1;
    } else {
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, n, &mut |p| {
            if let Some(k) = cycle_count_min_len(p, min_cycle_exclusive) {
                hist[k] += 1;
            }
        });
    }
    Ok(trim(hist.into_iter().map(BigUint::from).collect()))
}

// Heap's algorithm.
fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k {
        permute_all(perm, k - 1, visit);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Number of cycles if every cycle is longer than `min_len_exclusive`, else None.
fn cycle_count_min_len(perm: &[usize], min_len_exclusive: usize) -> Option<usize> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len <= min_len_exclusive {
            return None;
        }
        cycles += 1;
    }
    Some(cycles)
}

/// Canonical restricted growth string of a partition given as arbitrary
/// block labels.
fn canonicalize(labels: &[u8]) -> Vec<u8> {
    let mut map: Vec<Option<u8>> = vec![None; 2 * labels.len() + 2];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(labels.len());
    for &v in labels {
        let slot = &mut map[v as usize];
        let id = match slot {
            Some(id) => *id,
            None => {
                let id = next;
                *slot = Some(id);
                next += 1;
                id
            }
        };
        out.push(id);
    }
    out
}

/// Literal check of the block-removal bijection behind B(n) = D(n) + D(n+1):
/// singleton-free partitions of [n] map to themselves, singleton-free
/// partitions of [n+1] map by deleting n+1 and splitting its ex-blockmates
/// into singletons. Verifies injectivity and that the image is every
/// partition of [n].
pub fn verify_block_removal_bijection(n: usize) -> Result<bool> {
    check_budget(n + 1, PARTITION_BUDGET)?;
    let mut images: HashSet<Vec<u8>> = HashSet::new();
    let mut sizes = Vec::new();
    let mut duplicates = false;

    for_each_partition(n, |rgs| {
        block_sizes(rgs, &mut sizes);
        if sizes.iter().all(|&s| s >= 2) && !images.insert(rgs.to_vec()) {
            duplicates = true;
        }
    });
    for_each_partition(n + 1, |rgs| {
        block_sizes(rgs, &mut sizes);
        if !sizes.iter().all(|&s| s >= 2) {
            return;
        }
        let last = rgs[n];
        let mut labels = Vec::with_capacity(n);
        let mut fresh = n as u8 + 1;
        for &v in &rgs[..n] {
            if v == last {
                // ex-blockmate of n+1 becomes its own singleton
                labels.push(fresh);
                fresh += 1;
            } else {
                labels.push(v);
            }
        }
        if !images.insert(canonicalize(&labels)) {
            duplicates = true;
        }
    });

    let mut bell = 0usize;
    for_each_partition(n, |_| bell += 1);
    Ok(!duplicates && images.len() == bell)
}
