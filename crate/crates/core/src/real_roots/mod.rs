//! Certified real-root counting, isolation, interlacing verification, and
//! normality diagnostics for the real-rooted generating polynomials.

mod family;
mod normality;
mod sturm;

pub use family::{reduced_d_poly, DFamilyRoots, InterlacingReport};
pub use normality::{
    bernoulli_decomposition, bernoulli_from_brackets, block_count_distribution,
    normality_diagnostic, reconstruct_intervals, NormalityReport, ProbabilityBracket,
};
pub use sturm::{count_real_roots, isolate_roots, verify_real_rooted, RealRootedReport, RootCount, SturmChain};

use serde_json::{json, Value};

use crate::numeric::{ratio_string, ratio_to_f64, Ratio};
use crate::poly::IntPoly;

/// How a bracket's root count was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// Opposite (or zero-at-hi) polynomial signs at the endpoints, combined
    /// with a global count argument by the producer.
    SignChange,
    /// Sturm variation count over (lo, hi] equal to 1.
    SturmCount,
}

/// Exact rational interval certified to contain exactly one real root.
///
/// Invariant: lo < hi, p(lo) != 0, and either p(hi) = 0 (root exactly at hi)
/// or sign p(lo) != sign p(hi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    lo: Ratio,
    hi: Ratio,
    certification: Certification,
}

impl RootBracket {
    /// Builds a bracket after checking the sign invariant against `p`.
    pub fn certified(p: &IntPoly, lo: Ratio, hi: Ratio, certification: Certification) -> Self {
        debug_assert!(lo < hi, "bracket endpoints out of order");
        debug_assert!(
            {
                let sl = p.sign_at(&lo);
                let sh = p.sign_at(&hi);
                sl != 0 && (sh == 0 || sh != sl)
            },
            "bracket lacks a sign certificate"
        );
        RootBracket { lo, hi, certification }
    }

    pub fn lo(&self) -> &Ratio {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio {
        &self.hi
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn width(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Ratio {
        (&self.lo + &self.hi) / Ratio::from_integer(2.into())
    }

    pub fn approx_f64(&self) -> f64 {
        ratio_to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Ratio) -> bool {
        &self.lo < x && x <= &self.hi
    }

    /// One bisection step; never loses the root or the certificate.
    pub fn bisect_step(&mut self, p: &IntPoly) {
        let mid = self.midpoint();
        let sm = p.sign_at(&mid);
        if sm == 0 {
            // The midpoint is the root exactly; collapse around it.
            let mut delta = self.width() / Ratio::from_integer(8.into());
            loop {
                let lo = &mid - &delta;
                let hi = &mid + &delta;
                if p.sign_at(&lo) != 0 && p.sign_at(&hi) != 0 && p.sign_at(&lo) != p.sign_at(&hi) {
                    self.lo = lo;
                    self.hi = hi;
                    return;
                }
                delta = delta / Ratio::from_integer(2.into());
            }
        }
        let sl = p.sign_at(&self.lo);
        if sm == sl {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Shrinks the bracket until its width is at most `eps`.
    pub fn refine(&self, p: &IntPoly, eps: &Ratio) -> RootBracket {
        let mut b = self.clone();
        while b.width() > *eps {
            b.bisect_step(p);
        }
        b
    }

    /// Shrinks until width <= rel * |midpoint|. A midpoint that is exactly
    /// the root (possible for rational roots, always for the root at zero)
    /// ends the refinement after one collapse step: the root is then known
    /// exactly and no relative target applies.
    pub fn refine_relative(&self, p: &IntPoly, rel: f64) -> RootBracket {
        let mut b = self.clone();
        loop {
            let mid = b.midpoint();
            if p.sign_at(&mid) == 0 {
                b.bisect_step(p);
                return b;
            }
            let target = num_traits::Signed::abs(&mid)
                * crate::numeric::ratio_from_f64(rel).expect("finite rel");
            if b.width() <= target {
                return b;
            }
            b.bisect_step(p);
        }
    }

    /// `{lo, hi, approx}` with decimal rational strings; the float field is
    /// display-only at 17 significant digits.
    pub fn to_json(&self) -> Value {
        json!({
            "lo": ratio_string(&self.lo),
            "hi": ratio_string(&self.hi),
            "approx": crate::numeric::format_sig17(self.approx_f64()),
        })
    }
}

/// Root report JSON: one object per bracket, sorted as given.
pub fn brackets_to_json(brackets: &[RootBracket]) -> Value {
    Value::Array(brackets.iter().map(RootBracket::to_json).collect())
}
