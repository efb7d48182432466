//! Bernoulli factorization of real-rooted generating polynomials and the
//! empirical normal-approximation diagnostic for the block count.
//!
//! A real-rooted polynomial with nonnegative coefficients and p(1) > 0 is a
//! product of Bernoulli probability generating functions (x - r_i)/(1 - r_i)
//! with success probabilities p_i = 1/(1 - r_i); the diagnostic compares the
//! exact block-count distribution with the moment-matched Gaussian on the
//! half-integer lattice.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{ratio_string, ratio_to_f64, Ratio};
use crate::poly::IntPoly;
use crate::triangles::{Tables, TriangleKind};

use super::family::DFamilyRoots;
use super::{isolate_roots, RootBracket};

/// Exact rational interval certified to contain one success probability;
/// lo = hi for probabilities known exactly (the root at zero gives 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityBracket {
    pub lo: Ratio,
    pub hi: Ratio,
}

impl ProbabilityBracket {
    fn exact(v: Ratio) -> Self {
        ProbabilityBracket { lo: v.clone(), hi: v }
    }

    pub fn value(&self) -> f64 {
        ratio_to_f64(&((&self.lo + &self.hi) / Ratio::from_integer(2.into())))
    }

    pub fn error_bound(&self) -> f64 {
        ratio_to_f64(&(&self.hi - &self.lo)) / 2.0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lo": ratio_string(&self.lo),
            "hi": ratio_string(&self.hi),
            "approx": self.value(),
        })
    }
}

/// p_i = 1/(1 - r_i) from a certified root bracket; monotone increasing in
/// the root, so the interval endpoints map directly.
pub fn bernoulli_from_brackets(brackets: &[RootBracket]) -> Result<Vec<ProbabilityBracket>> {
    let one = Ratio::one();
    let mut out = Vec::with_capacity(brackets.len());
    for b in brackets {
        if b.hi().is_positive() && b.lo().is_positive() {
            return Err(Error::PositiveRoot);
        }
        let lo = &one / (&one - b.lo());
        let hi = &one / (&one - b.hi());
        out.push(ProbabilityBracket { lo, hi });
    }
    Ok(out)
}

/// Bernoulli success probabilities of a real-rooted polynomial with
/// nonnegative coefficients and p(1) > 0, one per root, error bounds
/// inherited from the isolating brackets. Rejects positive roots.
pub fn bernoulli_decomposition(p: &IntPoly) -> Result<Vec<ProbabilityBracket>> {
    if p.coeffs().iter().any(Signed::is_negative) {
        return Err(Error::NotAProbabilityPolynomial);
    }
    if !p.eval_rational(&Ratio::one()).is_positive() {
        return Err(Error::NotAProbabilityPolynomial);
    }
    // Split off the exact root at zero: each factor x contributes p_i = 1.
    let mut coeffs = p.coeffs().to_vec();
    let mut zeros = 0usize;
    while coeffs.first().is_some_and(Zero::is_zero) {
        coeffs.remove(0);
        zeros += 1;
    }
    let reduced = IntPoly::from_bigints(coeffs);
    let mut probs = vec![ProbabilityBracket::exact(Ratio::one()); zeros];
    if reduced.degree().unwrap_or(0) > 0 {
        let brackets = isolate_roots(&reduced)?;
        if brackets.first().is_some_and(|b| b.lo().is_positive()) {
            return Err(Error::PositiveRoot);
        }
        // Brackets may leak slightly past zero; tighten them below zero so
        // the probability intervals stay inside (0, 1].
        let mut tightened = Vec::with_capacity(brackets.len());
        for mut b in brackets {
            let mut guard = 0;
            while b.hi().is_positive() {
                b.bisect_step(&reduced);
                guard += 1;
                if guard > 4096 {
                    return Err(Error::PositiveRoot);
                }
            }
            tightened.push(b);
        }
        probs.extend(bernoulli_from_brackets(&tightened)?);
    }
    Ok(probs)
}

/// Interval coefficients of prod (x - r_i) / prod (1 - r_i) given root
/// brackets; the exact normalized polynomial must lie inside coefficientwise.
pub fn reconstruct_intervals(brackets: &[RootBracket]) -> Vec<(Ratio, Ratio)> {
    let mut coeffs: Vec<(Ratio, Ratio)> = vec![(Ratio::one(), Ratio::one())];
    let mut scale = (Ratio::one(), Ratio::one());
    for b in brackets {
        // factor (x - r): constant term interval [-hi, -lo]
        let c_lo = -b.hi().clone();
        let c_hi = -b.lo().clone();
        let mut next = vec![(Ratio::zero(), Ratio::zero()); coeffs.len() + 1];
        for (i, (lo, hi)) in coeffs.iter().enumerate() {
            // times x
            next[i + 1].0 += lo;
            next[i + 1].1 += hi;
            // times the constant interval
            let (plo, phi) = interval_mul(lo, hi, &c_lo, &c_hi);
            next[i].0 += plo;
            next[i].1 += phi;
        }
        coeffs = next;
        // (1 - r) interval: [1 - hi_r ... ] with r in [lo, hi]
        let one = Ratio::one();
        let f_lo = &one - b.hi();
        let f_hi = &one - b.lo();
        scale = interval_mul(&scale.0, &scale.1, &f_lo, &f_hi);
    }
    coeffs
        .into_iter()
        .map(|(lo, hi)| interval_div(&lo, &hi, &scale.0, &scale.1))
        .collect()
}

fn interval_mul(alo: &Ratio, ahi: &Ratio, blo: &Ratio, bhi: &Ratio) -> (Ratio, Ratio) {
    let products = [alo * blo, alo * bhi, ahi * blo, ahi * bhi];
    let mut lo = products[0].clone();
    let mut hi = products[0].clone();
    for p in &products[1..] {
        if p < &lo {
            lo = p.clone();
        }
        if p > &hi {
            hi = p.clone();
        }
    }
    (lo, hi)
}

// Requires 0 < blo <= bhi.
fn interval_div(alo: &Ratio, ahi: &Ratio, blo: &Ratio, bhi: &Ratio) -> (Ratio, Ratio) {
    debug_assert!(blo.is_positive());
    let quotients = [alo / blo, alo / bhi, ahi / blo, ahi / bhi];
    let mut lo = quotients[0].clone();
    let mut hi = quotients[0].clone();
    for q in &quotients[1..] {
        if q < &lo {
            lo = q.clone();
        }
        if q > &hi {
            hi = q.clone();
        }
    }
    (lo, hi)
}

/// Normal-approximation diagnostic for the block-count distribution of D_n.
#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub n: usize,
    pub mean: Ratio,
    pub variance: Ratio,
    pub bernoulli_probs: Vec<ProbabilityBracket>,
    pub sup_cdf_distance: f64,
}

impl NormalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "mean": ratio_string(&self.mean),
            "variance": ratio_string(&self.variance),
            "bernoulli_probs": self.bernoulli_probs.iter().map(ProbabilityBracket::to_json).collect::<Vec<_>>(),
            "sup_cdf_distance": self.sup_cdf_distance,
        })
    }
}

fn gaussian_cdf(z: f64) -> f64 {
    0.5 * (1.0 + libm::erf(z / std::f64::consts::SQRT_2))
}

/// Exact block-count distribution of D_n versus the moment-matched Gaussian:
/// sup over the half-integer lattice k + 1/2 of |CDF - Phi|.
pub fn normality_diagnostic(
    tables: &mut Tables,
    family: &mut DFamilyRoots,
    n: usize,
) -> Result<NormalityReport> {
    assert!(n >= 4, "the diagnostic needs a nondegenerate distribution");
    let row = tables.triangle_row(TriangleKind::D, n).to_vec();
    let total: crate::triangles::Count = row.iter().sum();
    let total_ratio = Ratio::from_integer(total.clone().into());
    let mut sum_k = Ratio::zero();
    let mut sum_k2 = Ratio::zero();
    for (k, v) in row.iter().enumerate() {
        let w = Ratio::from_integer(v.clone().into());
        sum_k += &w * Ratio::from_integer(k.into());
        sum_k2 += &w * Ratio::from_integer((k * k).into());
    }
    let mean = &sum_k / &total_ratio;
    let variance = &sum_k2 / &total_ratio - &mean * &mean;

    let mu = ratio_to_f64(&mean);
    let sigma = ratio_to_f64(&variance).sqrt();
    let mut cumulative = Ratio::zero();
    let mut sup = 0.0f64;
    for (k, v) in row.iter().enumerate() {
        cumulative += Ratio::from_integer(v.clone().into());
        let exact_cdf = ratio_to_f64(&(&cumulative / &total_ratio));
        let z = (k as f64 + 0.5 - mu) / sigma;
        let dist = (exact_cdf - gaussian_cdf(z)).abs();
        if dist > sup {
            sup = dist;
        }
    }

    let brackets = family.all_brackets(tables, n)?;
    let bernoulli_probs = bernoulli_from_brackets(&brackets)?;
    Ok(NormalityReport { n, mean, variance, bernoulli_probs, sup_cdf_distance: sup })
}

/// Exact distribution of the block count: (k, D(n,k)/D(n)) over the support.
pub fn block_count_distribution(tables: &mut Tables, n: usize) -> Vec<(usize, Ratio)> {
    let row = tables.triangle_row(TriangleKind::D, n).to_vec();
    let total: crate::triangles::Count = row.iter().sum();
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, Ratio::new(v.clone().into(), total.clone().into())))
        .collect()
}
