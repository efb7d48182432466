//! Root isolation for the D_n family by interlacing induction.
//!
//! Write E_n = D_n(x)/x (constant term D(n,1) = 1). Once the negative roots
//! of E_{n-1} are bracketed, one evaluation point inside each bracket plus 0
//! and (for even n) a point below everything yields deg E_n sign
//! alternations of E_n. That many alternations is a complete certificate:
//! E_n has deg E_n distinct real roots, all simple, all negative, one per
//! interval — real-rootedness and isolation in one pass, without a Sturm
//! chain at large degree. Sturm chains stay available as an independent
//! certifier at checkpoints.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ratio_from_f64, ratio_to_f64, Ratio};
use crate::poly::{d_poly, IntPoly};
use crate::triangles::{Tables, TriangleKind};

use super::sturm::SturmChain;
use super::{Certification, RootBracket};

const REFINE_ATTEMPT_BUDGET: usize = 6000;

/// D_n(x) with the root at 0 divided out.
pub fn reduced_d_poly(tables: &mut Tables, n: usize) -> IntPoly {
    assert!(n >= 2, "E_n is defined for n >= 2");
    let coeffs = tables.triangle_row(TriangleKind::D, n)[1..]
        .iter()
        .map(|c| BigInt::from(c.clone()))
        .collect();
    IntPoly::from_bigints(coeffs)
}

/// Interlacing verification result for D_n against D_{n-1}.
#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub n: usize,
    /// (deg D_n, deg D_{n-1})
    pub degrees: (usize, usize),
    pub equal_degree: bool,
    pub chain_verified: bool,
    /// Brackets for all roots of D_n (zero root first, then descending).
    pub brackets_n: Vec<RootBracket>,
    /// Brackets for all roots of D_{n-1}.
    pub brackets_prev: Vec<RootBracket>,
}

/// Memoized certified brackets for the negative roots of every D_n level.
#[derive(Debug, Default)]
pub struct DFamilyRoots {
    levels: BTreeMap<usize, Vec<RootBracket>>,
}

impl DFamilyRoots {
    pub fn new() -> Self {
        Self::default()
    }

    /// Certified brackets of the negative roots of D_n, descending
    /// (closest to zero first). Builds all levels up to n on demand.
    pub fn negative_brackets(&mut self, tables: &mut Tables, n: usize) -> Result<&[RootBracket]> {
        self.ensure(tables, n)?;
        Ok(&self.levels[&n])
    }

    pub fn ensure(&mut self, tables: &mut Tables, n: usize) -> Result<()> {
        assert!(n >= 4, "the bracket ladder starts at n = 4");
        if self.levels.is_empty() {
            self.seed(tables);
        }
        let mut next = *self.levels.keys().last().unwrap() + 1;
        while next <= n {
            self.build_level(tables, next)?;
            next += 1;
        }
        Ok(())
    }

    fn seed(&mut self, tables: &mut Tables) {
        // E_4 = 3x + 1 and E_5 = 10x + 1 have the rational roots -1/3, -1/10.
        let e4 = reduced_d_poly(tables, 4);
        let e5 = reduced_d_poly(tables, 5);
        self.levels.insert(
            4,
            vec![RootBracket::certified(
                &e4,
                Ratio::new(BigInt::from(-11), 32.into()),
                Ratio::new(BigInt::from(-21), 64.into()),
                Certification::SignChange,
            )],
        );
        self.levels.insert(
            5,
            vec![RootBracket::certified(
                &e5,
                Ratio::new(BigInt::from(-1), 8.into()),
                Ratio::new(BigInt::from(-1), 16.into()),
                Certification::SignChange,
            )],
        );
    }

    fn build_level(&mut self, tables: &mut Tables, n: usize) -> Result<()> {
        let e_n = reduced_d_poly(tables, n);
        let e_prev = reduced_d_poly(tables, n - 1);
        let deg = e_n.degree().expect("deg E_n >= 2 for n >= 6");
        let mut prev = self.levels.remove(&(n - 1)).expect("previous level built");

        let mut seps: Vec<Ratio> = Vec::with_capacity(deg + 1);
        seps.push(Ratio::zero());
        let mut prev_sign = 1; // E_n(0) = D(n,1) = 1
        let mut attempts = 0usize;
        for bracket in prev.iter_mut() {
            loop {
                attempts += 1;
                if attempts > REFINE_ATTEMPT_BUDGET {
                    return Err(Error::RefinementBudget { n });
                }
                let m = bracket.midpoint();
                let s = e_n.sign_at(&m);
                if s == -prev_sign {
                    seps.push(m);
                    prev_sign = s;
                    break;
                }
                // The midpoint cannot yet separate the neighbouring roots of
                // E_n; tighten the bracket around its E_{n-1} root and retry.
                bracket.bisect_step(&e_prev);
            }
        }
        if n % 2 == 0 {
            // deg E_n = deg E_{n-1} + 1: one more root below everything.
            let expected = if deg % 2 == 0 { 1 } else { -1 };
            debug_assert_eq!(expected, -prev_sign);
            let mut m = bottom_start(tables, n);
            let cauchy = e_n.cauchy_bound();
            loop {
                let point = Ratio::from_integer(-m.clone());
                if e_n.sign_at(&point) == expected {
                    seps.push(point);
                    break;
                }
                m *= 2;
                if m > cauchy {
                    return Err(Error::NotRealRooted { distinct_real: deg - 1, degree: deg });
                }
            }
        }
        debug_assert_eq!(seps.len(), deg + 1);

        let brackets = seps
            .windows(2)
            .map(|w| RootBracket::certified(&e_n, w[1].clone(), w[0].clone(), Certification::SignChange))
            .collect();
        self.levels.insert(n - 1, prev);
        self.levels.insert(n, brackets);
        Ok(())
    }

    /// All roots of D_n: a certified bracket around 0 first, then the
    /// negative roots descending.
    pub fn all_brackets(&mut self, tables: &mut Tables, n: usize) -> Result<Vec<RootBracket>> {
        self.ensure(tables, n)?;
        let e_n = reduced_d_poly(tables, n);
        let level = self.levels.get_mut(&n).unwrap();
        // Shrink the top bracket until it stays strictly below zero, so the
        // zero bracket cannot overlap it.
        while !level[0].hi().is_negative() {
            level[0].bisect_step(&e_n);
        }
        let d_n = d_poly(tables, n);
        let t = -(level[0].hi() / Ratio::from_integer(2.into()));
        let zero = RootBracket::certified(&d_n, -t.clone(), t, Certification::SignChange);
        let mut out = vec![zero];
        out.extend(level.iter().cloned());
        Ok(out)
    }

    /// Leftmost root of D_n, refined to |width| <= rel * |root|.
    pub fn leftmost(&mut self, tables: &mut Tables, n: usize, rel: f64) -> Result<RootBracket> {
        self.ensure(tables, n)?;
        let e_n = reduced_d_poly(tables, n);
        let level = self.levels.get_mut(&n).unwrap();
        let refined = level.last().unwrap().refine_relative(&e_n, rel);
        *level.last_mut().unwrap() = refined.clone();
        Ok(refined)
    }

    /// Verifies the strict interlacing chain between the roots of D_n and
    /// D_{n-1}, refining brackets until every pair is disjoint and ordered.
    pub fn verify_interlacing(&mut self, tables: &mut Tables, n: usize) -> Result<InterlacingReport> {
        assert!(n >= 5, "interlacing verification starts at n = 5");
        self.ensure(tables, n)?;
        let e_n = reduced_d_poly(tables, n);
        let e_prev = reduced_d_poly(tables, n - 1);
        let mut xs = self.levels[&n].clone();
        let mut ys = self.levels[&(n - 1)].clone();

        let deg_n = n / 2;
        let deg_prev = (n - 1) / 2;
        let equal_degree = deg_n == deg_prev;
        // Parity-dependent degree pattern of the theorem.
        let pattern_ok = if n % 2 == 1 {
            equal_degree && xs.len() == ys.len()
        } else {
            deg_n == deg_prev + 1 && xs.len() == ys.len() + 1
        };

        let mut ordered = pattern_ok;
        if pattern_ok {
            'outer: for i in 0..ys.len() {
                // x_{i+1} > y_{i+1}: bracket X[i] entirely above Y[i].
                let mut attempts = 0;
                while xs[i].lo() < ys[i].hi() {
                    attempts += 1;
                    if attempts > REFINE_ATTEMPT_BUDGET {
                        ordered = false;
                        break 'outer;
                    }
                    if xs[i].width() >= ys[i].width() {
                        xs[i].bisect_step(&e_n);
                    } else {
                        ys[i].bisect_step(&e_prev);
                    }
                }
                // y_{i+1} > x_{i+2} when the next x exists.
                if i + 1 < xs.len() {
                    let mut attempts = 0;
                    while ys[i].lo() < xs[i + 1].hi() {
                        attempts += 1;
                        if attempts > REFINE_ATTEMPT_BUDGET {
                            ordered = false;
                            break 'outer;
                        }
                        if ys[i].width() >= xs[i + 1].width() {
                            ys[i].bisect_step(&e_prev);
                        } else {
                            xs[i + 1].bisect_step(&e_n);
                        }
                    }
                }
            }
        }

        self.levels.insert(n, xs);
        self.levels.insert(n - 1, ys);
        let brackets_n = self.all_brackets(tables, n)?;
        let brackets_prev = self.all_brackets(tables, n - 1)?;
        Ok(InterlacingReport {
            n,
            degrees: (deg_n, deg_prev),
            equal_degree,
            chain_verified: ordered,
            brackets_n,
            brackets_prev,
        })
    }

    /// Independent Sturm certification of level n: squarefree chain, total
    /// count equal to the degree, and exactly one root per stored bracket.
    pub fn sturm_checkpoint(&mut self, tables: &mut Tables, n: usize) -> Result<bool> {
        self.ensure(tables, n)?;
        let e_n = reduced_d_poly(tables, n);
        let chain = SturmChain::new(&e_n)?;
        if !chain.is_squarefree() {
            return Ok(false);
        }
        let deg = e_n.degree().unwrap();
        let bound = Ratio::from_integer(e_n.cauchy_bound());
        if chain.count_half_open(&-&bound, &Ratio::zero()) != deg {
            return Ok(false);
        }
        for b in &self.levels[&n] {
            if chain.count_half_open(b.lo(), b.hi()) != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// Starting guess for the point below all roots of E_n (even n): the
// float-rounded Samuelson endpoint padded upward, clamped to at least 4.
fn bottom_start(tables: &mut Tables, n: usize) -> BigInt {
    let d = n / 2;
    let top = tables.d_count(n, d);
    let a1 = Ratio::new(BigInt::from(tables.d_count(n, d - 1)), BigInt::from(top.clone()));
    let guess = if d >= 2 {
        let a2 = Ratio::new(BigInt::from(tables.d_count(n, d - 2)), BigInt::from(top));
        let a1f = ratio_to_f64(&a1);
        let a2f = ratio_to_f64(&a2);
        let rad = a1f * a1f - 2.0 * d as f64 / (d as f64 - 1.0) * a2f;
        a1f / d as f64 + (d as f64 - 1.0) / d as f64 * rad.max(0.0).sqrt()
    } else {
        ratio_to_f64(&a1)
    };
    let padded = guess.abs() * 1.25 + 4.0;
    match ratio_from_f64(padded) {
        Ok(r) => r.ceil().to_integer(),
        Err(_) => BigInt::from(4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn ladder_matches_sturm_isolation_small() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        for n in 4..=24 {
            let brackets = fam.negative_brackets(&mut tables, n).unwrap().to_vec();
            assert_eq!(brackets.len(), n / 2 - 1, "n={n}");
            assert!(fam.sturm_checkpoint(&mut tables, n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn known_roots_are_bracketed() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        let b4 = fam.negative_brackets(&mut tables, 4).unwrap();
        assert!(b4[0].contains(&rat(-1, 3)));
        let b5 = fam.negative_brackets(&mut tables, 5).unwrap();
        assert!(b5[0].contains(&rat(-1, 10)));
    }

    #[test]
    fn interlacing_n5_explicit_chain() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        let report = fam.verify_interlacing(&mut tables, 5).unwrap();
        assert!(report.chain_verified);
        assert!(report.equal_degree);
        assert_eq!(report.degrees, (2, 2));
        // 0 > -1/10 > -1/3
        let x1 = &report.brackets_n[1];
        let y1 = &report.brackets_prev[1];
        assert!(x1.contains(&rat(-1, 10)));
        assert!(y1.contains(&rat(-1, 3)));
        assert!(x1.lo() >= y1.hi());
    }

    #[test]
    fn interlacing_n6_degree_pattern() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        let report = fam.verify_interlacing(&mut tables, 6).unwrap();
        assert!(report.chain_verified);
        assert!(!report.equal_degree);
        assert_eq!(report.degrees, (3, 2));
        assert_eq!(report.brackets_n.len(), 3);
        assert_eq!(report.brackets_prev.len(), 2);
    }

    #[test]
    fn leftmost_root_of_d10() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        let b = fam.leftmost(&mut tables, 10, 1e-4).unwrap();
        let approx = b.approx_f64();
        assert!((approx + 9.2232).abs() < 5e-3, "got {approx}");
    }

    #[test]
    fn zero_bracket_is_separated() {
        let mut tables = Tables::new();
        let mut fam = DFamilyRoots::new();
        let all = fam.all_brackets(&mut tables, 8).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all[0].contains(&Ratio::zero()));
        assert!(all[0].lo() >= all[1].hi());
    }
}
