//! Sturm chains over exact integer arithmetic.
//!
//! The chain stores primitive integer polynomials scaled by positive
//! constants only, so every element has the same sign as the textbook
//! rational-coefficient chain at every point. Sign variations skip zeros,
//! which makes V(a) - V(b) the exact number of distinct roots in (a, b]
//! even when an endpoint is itself a root.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Ratio;
use crate::poly::IntPoly;

use super::{Certification, RootBracket};

pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.primitive_part()];
        let deriv = p.derivative();
        if !deriv.is_zero() {
            chain.push(deriv.primitive_part());
            loop {
                let n = chain.len();
                let r = pseudo_rem_pos(&chain[n - 2], &chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().primitive_part());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    /// Last chain element: a positive-scalar multiple of gcd(p, p').
    pub fn gcd_witness(&self) -> &IntPoly {
        self.chain.last().unwrap()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd_witness().degree() == Some(0)
    }

    /// Sign variations at x, skipping zero values.
    pub fn variations_at(&self, x: &Ratio) -> usize {
        let mut count = 0;
        let mut prev = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in (lo, hi].
    pub fn count_half_open(&self, lo: &Ratio, hi: &Ratio) -> usize {
        debug_assert!(lo < hi);
        let vl = self.variations_at(lo);
        let vh = self.variations_at(hi);
        debug_assert!(vl >= vh, "sign variations must be non-increasing");
        vl - vh
    }
}

// Remainder of f by g scaled by a positive constant (|lc(g)|^steps).
fn pseudo_rem_pos(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let dg = g.degree().expect("nonzero divisor");
    let lg = g.leading().unwrap().clone();
    let mut rem: Vec<BigInt> = f.coeffs().to_vec();
    let mut steps = 0usize;
    loop {
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        if rem.len() <= dg {
            break;
        }
        let dr = rem.len() - 1;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lg;
        }
        for (j, oc) in g.coeffs().iter().enumerate() {
            let prod = oc * &top;
            rem[dr - dg + j] -= prod;
        }
        steps += 1;
    }
    let r = IntPoly::from_bigints(rem);
    if lg.is_negative() && steps % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

/// Result of a root count, with the effective (possibly nudged) endpoints.
#[derive(Debug, Clone)]
pub struct RootCount {
    pub count: usize,
    pub lo: Ratio,
    pub hi: Ratio,
    pub nudged: bool,
}

/// Exact number of distinct real roots of p in (lo, hi].
///
/// Endpoints that are themselves roots are nudged by exact rational steps
/// (shrinking powers of two of the interval width) until they are not; the
/// nudge is verified to cross no root and is reported in the result.
pub fn count_real_roots(p: &IntPoly, lo: &Ratio, hi: &Ratio) -> Result<RootCount> {
    if lo >= hi {
        return Err(Error::InvalidArgument("count_real_roots requires lo < hi".into()));
    }
    let chain = SturmChain::new(p)?;
    let width = hi - lo;
    let mut eff_lo = lo.clone();
    let mut eff_hi = hi.clone();
    let mut nudged = false;

    if p.sign_at(&eff_lo) == 0 {
        nudged = true;
        eff_lo = nudge_up(p, &chain, &eff_lo, &width);
    }
    if p.sign_at(&eff_hi) == 0 {
        nudged = true;
        eff_hi = nudge_up(p, &chain, &eff_hi, &width);
    }
    let count = chain.count_half_open(&eff_lo, &eff_hi);
    Ok(RootCount { count, lo: eff_lo, hi: eff_hi, nudged })
}

// Smallest x + width/2^j that is not a root and has no root in (x, x'].
// With x itself a root, moving up to x' keeps the half-open count intact:
// the departed root was excluded from (x, hi] anyway.
fn nudge_up(p: &IntPoly, chain: &SturmChain, x: &Ratio, width: &Ratio) -> Ratio {
    let mut j = 2u32;
    loop {
        let step = width / Ratio::from_integer(BigInt::one() << j);
        let cand = x + &step;
        if p.sign_at(&cand) != 0 && chain.count_half_open(x, &cand) == 0 {
            return cand;
        }
        j += 1;
        assert!(j < 4096, "nudge failed to separate endpoint from nearby roots");
    }
}

/// Flags from the certified real-rootedness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealRootedReport {
    pub degree: usize,
    pub distinct_real: usize,
    pub all_real: bool,
    pub all_simple: bool,
    pub all_nonpositive: bool,
}

/// Counts distinct real roots by Sturm's theorem over (-B, B] with B the
/// Cauchy bound; nonpositivity is the absence of roots in (0, B].
pub fn verify_real_rooted(p: &IntPoly) -> Result<RealRootedReport> {
    let chain = SturmChain::new(p)?;
    let degree = p.degree().unwrap();
    let gcd_degree = chain.gcd_witness().degree().unwrap_or(0);
    let bound = Ratio::from_integer(p.cauchy_bound());
    let distinct_real = if degree == 0 {
        0
    } else {
        chain.count_half_open(&-&bound, &bound)
    };
    let positive = if degree == 0 {
        0
    } else {
        chain.count_half_open(&Ratio::zero(), &bound)
    };
    Ok(RealRootedReport {
        degree,
        distinct_real,
        all_real: distinct_real == degree - gcd_degree,
        all_simple: gcd_degree == 0,
        all_nonpositive: positive == 0,
    })
}

/// Disjoint brackets, one per root, sorted descending; requires a
/// squarefree, real-rooted input.
pub fn isolate_roots(p: &IntPoly) -> Result<Vec<RootBracket>> {
    let chain = SturmChain::new(p)?;
    if !chain.is_squarefree() {
        return Err(Error::NotSquarefree {
            gcd_degree: chain.gcd_witness().degree().unwrap_or(0),
        });
    }
    let degree = p.degree().unwrap();
    if degree == 0 {
        return Ok(Vec::new());
    }
    let bound = Ratio::from_integer(p.cauchy_bound());
    let lo = -&bound;
    let total = chain.count_half_open(&lo, &bound);
    if total != degree {
        return Err(Error::NotRealRooted { distinct_real: total, degree });
    }

    let mut out = Vec::with_capacity(degree);
    // Stack of (lo, hi, count); lower halves pushed first so the upper ones
    // pop first and the output comes out descending.
    let mut stack = vec![(lo, bound, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(RootBracket::certified(p, lo, hi, Certification::SturmCount)),
            _ => {
                let mid = (&lo + &hi) / Ratio::from_integer(2.into());
                if p.sign_at(&mid) == 0 {
                    // Exact root at the split point: carve a private interval
                    // around it, then recurse on the two remainders.
                    let mut j = 3u32;
                    loop {
                        let delta = (&hi - &lo) / Ratio::from_integer(BigInt::one() << j);
                        let a = &mid - &delta;
                        let b = &mid + &delta;
                        if p.sign_at(&a) != 0
                            && p.sign_at(&b) != 0
                            && chain.count_half_open(&a, &b) == 1
                        {
                            let below = chain.count_half_open(&lo, &a);
                            let above = chain.count_half_open(&b, &hi);
                            stack.push((lo, a.clone(), below));
                            stack.push((
                                a.clone(),
                                b.clone(),
                                1,
                            ));
                            stack.push((b, hi, above));
                            break;
                        }
                        j += 1;
                        assert!(j < 4096, "failed to shrink around an exact rational root");
                    }
                } else {
                    let below = chain.count_half_open(&lo, &mid);
                    stack.push((lo, mid.clone(), below));
                    stack.push((mid, hi, count - below));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use crate::poly::d_poly;
    use crate::triangles::Tables;

    #[test]
    fn chain_shapes() {
        // x^2 - 1: three elements ending in a nonzero constant
        let chain = SturmChain::new(&IntPoly::from_i64s(&[-1, 0, 1])).unwrap();
        assert_eq!(chain.polys().len(), 3);
        assert_eq!(chain.gcd_witness().degree(), Some(0));
        assert!(chain.is_squarefree());

        // (x-1)^2: ends at a degree-1 gcd witness
        let chain = SturmChain::new(&IntPoly::from_i64s(&[1, -2, 1])).unwrap();
        assert_eq!(chain.gcd_witness().degree(), Some(1));
        assert!(!chain.is_squarefree());
    }

    #[test]
    fn d4_chain_certifies_two_roots() {
        let mut t = Tables::new();
        let d4 = d_poly(&mut t, 4);
        let chain = SturmChain::new(&d4).unwrap();
        assert_eq!(chain.count_half_open(&rat_int(-1), &rat_int(1)), 2);
    }

    #[test]
    fn count_examples() {
        let mut t = Tables::new();
        let d4 = d_poly(&mut t, 4);
        assert_eq!(count_real_roots(&d4, &rat_int(-1), &rat_int(1)).unwrap().count, 2);
        let d5 = d_poly(&mut t, 5);
        assert_eq!(count_real_roots(&d5, &rat(-1, 20), &rat_int(1)).unwrap().count, 1);
        let no_real = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(count_real_roots(&no_real, &rat_int(-10), &rat_int(10)).unwrap().count, 0);
    }

    #[test]
    fn endpoint_roots_are_nudged() {
        let mut t = Tables::new();
        let d4 = d_poly(&mut t, 4); // roots 0 and -1/3
        let r = count_real_roots(&d4, &Ratio::zero(), &rat_int(1)).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.nudged);
        let r = count_real_roots(&d4, &rat_int(-1), &Ratio::zero()).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.nudged);
    }

    #[test]
    fn real_rooted_reports() {
        let mut t = Tables::new();
        let d10 = d_poly(&mut t, 10);
        let rep = verify_real_rooted(&d10).unwrap();
        assert!(rep.all_real && rep.all_simple && rep.all_nonpositive);
        assert_eq!(rep.degree, 5);

        let rep = verify_real_rooted(&IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        assert!(!rep.all_real);

        let c5 = crate::poly::c_poly(&mut t, 5);
        let rep = verify_real_rooted(&c5).unwrap();
        assert!(rep.all_real && rep.all_simple && rep.all_nonpositive);

        // (x-1)^2: real but not simple, and a positive root
        let rep = verify_real_rooted(&IntPoly::from_i64s(&[1, -2, 1])).unwrap();
        assert!(rep.all_real && !rep.all_simple && !rep.all_nonpositive);
    }

    #[test]
    fn isolation_of_d4_and_d5() {
        let mut t = Tables::new();
        for (n, roots) in [(4usize, vec![rat_int(0), rat(-1, 3)]), (5, vec![rat_int(0), rat(-1, 10)])] {
            let p = d_poly(&mut t, n);
            let brackets = isolate_roots(&p).unwrap();
            assert_eq!(brackets.len(), roots.len());
            for (b, r) in brackets.iter().zip(&roots) {
                assert!(b.contains(r), "n={n}: {:?} should contain {}", b, r);
            }
            // descending order
            for w in brackets.windows(2) {
                assert!(w[0].lo() >= w[1].hi());
            }
        }
    }

    #[test]
    fn isolation_rejects_bad_inputs() {
        assert!(matches!(
            isolate_roots(&IntPoly::from_i64s(&[1, -2, 1])),
            Err(Error::NotSquarefree { .. })
        ));
        assert!(matches!(
            isolate_roots(&IntPoly::from_i64s(&[1, 0, 1])),
            Err(Error::NotRealRooted { .. })
        ));
        let x = IntPoly::x();
        let brackets = isolate_roots(&x).unwrap();
        assert_eq!(brackets.len(), 1);
        assert!(brackets[0].contains(&Ratio::zero()));
    }

    #[test]
    fn refinement_examples() {
        let mut t = Tables::new();
        let d4 = d_poly(&mut t, 4);
        let brackets = isolate_roots(&d4).unwrap();
        let third = brackets[1].refine(&d4, &rat(1, 1000));
        assert!(third.width() <= rat(1, 1000));
        assert!(third.contains(&rat(-1, 3)));
        // already tight: unchanged
        let again = third.refine(&d4, &rat(1, 1000));
        assert_eq!(again, third);

        let d10 = d_poly(&mut t, 10);
        let brackets = isolate_roots(&d10).unwrap();
        let leftmost = brackets.last().unwrap().refine(&d10, &rat(1, 100));
        let approx = leftmost.approx_f64();
        assert!((approx + 9.22).abs() < 0.02, "leftmost root of D_10 ~ -9.22, got {approx}");
    }
}
