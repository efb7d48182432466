//! Ordinary generating functions f_k(x) = sum_n D(n,k) x^n as exact
//! rational functions, their Ward-polynomial factored form, principal parts
//! at the dominant pole, and the fixed-k asymptotics they imply.
//!
//! The recursion is f_k = x^2/(1 - kx) (x f_{k-1})' from f_1 = x^2/(1 - x);
//! each f_k reduces to x^{2k} p_k(x) / prod_{j=1..k} (jx - 1)^{k+1-j} with
//! deg p_k = k(k-1)/2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lambert;
use crate::numeric::{ratio_to_f64, Ratio};
use crate::peaks::coefficient_peaks;
use crate::poly::IntPoly;
use crate::triangles::{Tables, TriangleKind};

/// Reduced rational function over the integers: gcd(num, den) = 1 as
/// polynomials, coprime contents, positive denominator leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: IntPoly::one() };
        }
        let g = IntPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num
                .div_exact(&IntPoly::constant(c.clone()))
                .expect("content divides");
            den = den.div_exact(&IntPoly::constant(c)).expect("content divides");
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den));
        RatFunc::reduce(num, self.den.mul(&other.den))
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> RatFunc {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFunc::reduce(num, self.den.mul(&self.den))
    }

    /// Exact value when x is not a pole.
    pub fn eval(&self, x: &Ratio) -> Option<Ratio> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }

    /// Maclaurin coefficients 0..=n by the denominator-driven linear
    /// recurrence; requires den(0) != 0.
    pub fn series_prefix(&self, n: usize) -> Result<Vec<Ratio>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let d0 = Ratio::from_integer(d0);
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = Ratio::from_integer(self.num.coeff(i));
            for j in 1..=i.min(self.den.degree().unwrap_or(0)) {
                acc -= Ratio::from_integer(self.den.coeff(j)) * &coeffs[i - j];
            }
            coeffs.push(acc / &d0);
        }
        Ok(coeffs)
    }

    /// Coefficient of x^n in the Maclaurin expansion.
    pub fn series_coeff(&self, n: usize) -> Result<Ratio> {
        Ok(self.series_prefix(n)?.pop().unwrap())
    }

    /// `{num: [...], den: [...]}` with decimal coefficient strings.
    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

/// Memoized ladder of the f_k rational functions.
#[derive(Debug, Default)]
pub struct OgfLadder {
    // fs[k-1] = f_k
    fs: Vec<RatFunc>,
}

impl OgfLadder {
    pub fn new() -> Self {
        Self::default()
    }

    /// f_k for k >= 1, computed by the derivative recursion and memoized.
    pub fn f_k(&mut self, k: usize) -> Result<&RatFunc> {
        assert!(k >= 1, "f_k starts at k = 1");
        if self.fs.is_empty() {
            // f_1 = x^2 / (1 - x)
            self.fs.push(RatFunc::new(
                IntPoly::monomial(BigInt::one(), 2),
                IntPoly::from_i64s(&[1, -1]),
            )?);
        }
        while self.fs.len() < k {
            let next_k = self.fs.len() + 1;
            let prev = self.fs.last().unwrap();
            // (x f_{k-1})'
            let shifted = RatFunc::reduce(prev.num.mul_xpow(1), prev.den.clone());
            let deriv = shifted.derivative();
            // x^2 / (1 - kx)
            let front = RatFunc::new(
                IntPoly::monomial(BigInt::one(), 2),
                IntPoly::from_bigints(vec![BigInt::one(), -BigInt::from(next_k)]),
            )?;
            self.fs.push(front.mul(&deriv));
        }
        Ok(&self.fs[k - 1])
    }
}

/// f_k in the factored form x^{2k} p_k(x) / prod (jx-1)^{k+1-j}.
#[derive(Debug, Clone)]
pub struct WardForm {
    pub k: usize,
    /// Ward polynomial, printed convention (denominator factors as jx - 1).
    pub p_k: IntPoly,
    /// (j, exponent) pairs, j = k down to 1 with exponent k+1-j.
    pub denominator_factors: Vec<(usize, usize)>,
    /// Power of the leading monomial x^{2k}.
    pub leading_monomial_power: usize,
}

impl WardForm {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "p_k": self.p_k.to_json(),
            "factors": self.denominator_factors,
            "x_power": self.leading_monomial_power,
        })
    }

    /// The display convention of the factored form, e.g.
    /// `x^4 (2x - 3) / ((2x-1)(x-1)^2)`.
    pub fn display(&self) -> String {
        let mut den = String::new();
        for &(j, e) in &self.denominator_factors {
            let factor = if j == 1 { "(x-1)".to_string() } else { format!("({j}x-1)") };
            den.push_str(&factor);
            if e > 1 {
                den.push_str(&format!("^{e}"));
            }
        }
        format!("x^{} ({}) / ({})", self.leading_monomial_power, self.p_k, den)
    }
}

/// prod_{j=1..k} (jx - 1)^{k+1-j}
fn ward_denominator(k: usize) -> IntPoly {
    let mut den = IntPoly::one();
    for j in 1..=k {
        let factor = IntPoly::from_bigints(vec![-BigInt::one(), BigInt::from(j)]);
        den = den.mul(&factor.pow(k + 1 - j));
    }
    den
}

/// Factors the denominator of f_k into the prescribed linear powers and
/// extracts p_k, validating deg p_k = k(k-1)/2. A mismatch would falsify
/// the factored form and is reported as a hard failure.
pub fn ward_form(ladder: &mut OgfLadder, k: usize) -> Result<WardForm> {
    let f = ladder.f_k(k)?.clone();
    let expected_den = ward_denominator(k);
    if *f.den() != expected_den {
        return Err(Error::WardFactorizationMismatch { k });
    }
    let p_k = f
        .num()
        .div_exact(&IntPoly::monomial(BigInt::one(), 2 * k))
        .ok_or(Error::WardFactorizationMismatch { k })?;
    if p_k.degree() != Some(k * (k - 1) / 2) {
        return Err(Error::WardFactorizationMismatch { k });
    }
    // Reassembly must reproduce f_k exactly.
    let rebuilt = RatFunc::new(p_k.mul_xpow(2 * k), expected_den)?;
    if rebuilt != f {
        return Err(Error::WardFactorizationMismatch { k });
    }
    Ok(WardForm {
        k,
        p_k,
        denominator_factors: (1..=k).rev().map(|j| (j, k + 1 - j)).collect(),
        leading_monomial_power: 2 * k,
    })
}

/// Verifies that x = 1/k is a simple pole of f_k with residue -1/(k k!) and
/// returns the principal part -1/(k k! (x - 1/k)) as an integer-coefficient
/// rational function.
pub fn principal_part(ladder: &mut OgfLadder, k: usize) -> Result<RatFunc> {
    let f = ladder.f_k(k)?.clone();
    let pole = Ratio::new(BigInt::one(), BigInt::from(k));
    let den_at = f.den().eval_rational(&pole);
    if !den_at.is_zero() {
        return Err(Error::PrincipalPartMismatch {
            k,
            detail: "1/k is not a pole".into(),
        });
    }
    let dprime_at = f.den().derivative().eval_rational(&pole);
    if dprime_at.is_zero() {
        return Err(Error::PrincipalPartMismatch {
            k,
            detail: "pole at 1/k is not simple".into(),
        });
    }
    let num_at = f.num().eval_rational(&pole);
    if num_at.is_zero() {
        return Err(Error::PrincipalPartMismatch {
            k,
            detail: "numerator vanishes at 1/k".into(),
        });
    }
    let residue = num_at / dprime_at;
    let mut k_fact = BigInt::one();
    for i in 2..=k {
        k_fact *= BigInt::from(i);
    }
    let expected = -Ratio::new(BigInt::one(), BigInt::from(k) * &k_fact);
    if residue != expected {
        return Err(Error::PrincipalPartMismatch {
            k,
            detail: format!("residue {residue} != {expected}"),
        });
    }
    // -1/(k k! (x - 1/k)) = -1 / (k! (kx - 1))
    RatFunc::new(
        IntPoly::constant(-BigInt::one()),
        IntPoly::from_bigints(vec![-k_fact.clone(), BigInt::from(k) * k_fact]),
    )
}

/// Normalized-error report for D(n,k) = k^n/k! + O(k-1+eps)^n at fixed k.
#[derive(Debug, Clone)]
pub struct AsymptoticErrorReport {
    pub k: usize,
    pub eps: f64,
    /// (n, |D(n,k) - k^n/k!| / (k-1+eps)^n)
    pub normalized_errors: Vec<(usize, f64)>,
    pub max_error: f64,
    /// max over the top decade <= max over the rest (no growth trend)
    pub bounded: bool,
}

pub fn asymptotic_error_check(
    tables: &mut Tables,
    k: usize,
    n_lo: usize,
    n_hi: usize,
    eps: f64,
) -> Result<AsymptoticErrorReport> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "the error term is vacuous for k < 2".into(),
        ));
    }
    if n_lo > n_hi {
        return Err(Error::InvalidArgument("empty range".into()));
    }
    let mut k_fact = BigInt::one();
    for i in 2..=k {
        k_fact *= BigInt::from(i);
    }
    let base = (k - 1) as f64 + eps;
    let mut rows = Vec::with_capacity(n_hi - n_lo + 1);
    for n in n_lo..=n_hi {
        let exact = Ratio::from_integer(BigInt::from(tables.d_count(n, k)));
        let main = Ratio::new(BigInt::from(k).pow(n as u32), k_fact.clone());
        let diff = (exact - main).abs();
        let err = ratio_to_f64(&diff) / base.powi(n as i32);
        rows.push((n, err));
    }
    let max_error = rows.iter().map(|&(_, e)| e).fold(0.0, f64::max);
    let split = n_hi.saturating_sub(10).max(n_lo);
    let top = rows
        .iter()
        .filter(|&&(n, _)| n > split)
        .map(|&(_, e)| e)
        .fold(0.0, f64::max);
    let rest = rows
        .iter()
        .filter(|&&(n, _)| n <= split)
        .map(|&(_, e)| e)
        .fold(0.0, f64::max);
    let bounded = rows.len() < 2 || top <= rest.max(f64::MIN_POSITIVE);
    Ok(AsymptoticErrorReport { k, eps, normalized_errors: rows, max_error, bounded })
}

/// Peak comparison: argmax of D(n,.) against argmax of S(n,.) and the two
/// closed-form approximations, plus the n/log n ratio.
#[derive(Debug, Clone)]
pub struct PeakAsymptoticReport {
    pub n: usize,
    pub d_argmax: usize,
    pub s_argmax: usize,
    /// (n - 1/2)/W(n - 1/2)
    pub lambert_approx: f64,
    /// e^r - 1 with r e^r = n
    pub stirling_approx: f64,
    /// K*_n log(n) / n
    pub ratio_n_over_log: f64,
    pub asymptotic_regime: bool,
}

impl PeakAsymptoticReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d_argmax": self.d_argmax,
            "s_argmax": self.s_argmax,
            "lambert_approx": self.lambert_approx,
            "stirling_approx": self.stirling_approx,
            "ratio_n_over_log": self.ratio_n_over_log,
            "asymptotic_regime": self.asymptotic_regime,
        })
    }
}

pub fn verify_peak_asymptotic(tables: &mut Tables, n: usize) -> Result<PeakAsymptoticReport> {
    if n < 10 {
        return Err(Error::InvalidArgument("peak report starts at n = 10".into()));
    }
    let d_argmax = *coefficient_peaks(tables.triangle_row(TriangleKind::D, n))
        .first()
        .ok_or_else(|| Error::UndefinedStatistic("empty D row".into()))?;
    let s_argmax = *coefficient_peaks(tables.triangle_row(TriangleKind::S, n))
        .first()
        .ok_or_else(|| Error::UndefinedStatistic("empty S row".into()))?;
    let nf = n as f64;
    Ok(PeakAsymptoticReport {
        n,
        d_argmax,
        s_argmax,
        lambert_approx: lambert::peak_approx_lambert(n)?,
        stirling_approx: lambert::stirling_peak_approx(n),
        ratio_n_over_log: d_argmax as f64 * nf.ln() / nf,
        asymptotic_regime: n >= 20,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn expand(factors: &[(i64, i64, usize)]) -> IntPoly {
        // (a + b x)^e products
        let mut p = IntPoly::one();
        for &(a, b, e) in factors {
            p = p.mul(&IntPoly::from_i64s(&[a, b]).pow(e));
        }
        p
    }

    #[test]
    fn f1_and_f2_match_printed_forms() {
        let mut ladder = OgfLadder::new();
        let f1 = ladder.f_k(1).unwrap().clone();
        // x^2/(1-x) reduces to -x^2/(x-1)
        assert_eq!(f1, RatFunc::new(IntPoly::from_i64s(&[0, 0, 1]), IntPoly::from_i64s(&[1, -1])).unwrap());

        let f2 = ladder.f_k(2).unwrap().clone();
        // x^4 (2x-3) / ((x-1)^2 (2x-1))
        let num = IntPoly::from_i64s(&[-3, 2]).mul_xpow(4);
        let den = expand(&[(-1, 1, 2), (-1, 2, 1)]);
        assert_eq!(f2, RatFunc::new(num, den).unwrap());
    }

    #[test]
    fn f3_and_f4_match_printed_forms() {
        let mut ladder = OgfLadder::new();
        let f3 = ladder.f_k(3).unwrap().clone();
        let num3 = IntPoly::from_i64s(&[15, -45, 40, -12]).mul_xpow(6);
        let den3 = expand(&[(-1, 1, 3), (-1, 2, 2), (-1, 3, 1)]);
        assert_eq!(f3, RatFunc::new(num3, den3).unwrap());

        let f4 = ladder.f_k(4).unwrap().clone();
        let num4 = IntPoly::from_i64s(&[105, -840, 2625, -4130, 3500, -1560, 288]).mul_xpow(8);
        let den4 = expand(&[(-1, 1, 4), (-1, 2, 3), (-1, 3, 2), (-1, 4, 1)]);
        assert_eq!(f4, RatFunc::new(num4, den4).unwrap());
    }

    #[test]
    fn series_coefficients_are_triangle_entries() {
        let mut ladder = OgfLadder::new();
        let mut t = Tables::new();
        let f2 = ladder.f_k(2).unwrap().clone();
        assert_eq!(f2.series_coeff(6).unwrap(), rat_int(25));
        let f1 = ladder.f_k(1).unwrap().clone();
        let prefix = f1.series_prefix(10).unwrap();
        for (n, c) in prefix.iter().enumerate() {
            let expect = if n >= 2 { rat_int(1) } else { rat_int(0) };
            assert_eq!(*c, expect, "f_1 coefficient {n}");
        }
        let f3 = ladder.f_k(3).unwrap().clone();
        assert_eq!(f3.series_coeff(5).unwrap(), rat_int(0));
        for k in 1..=6 {
            let f = ladder.f_k(k).unwrap().clone();
            let prefix = f.series_prefix(24).unwrap();
            for (n, c) in prefix.iter().enumerate() {
                assert_eq!(
                    *c,
                    Ratio::from_integer(BigInt::from(t.d_count(n, k))),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn ward_forms() {
        let mut ladder = OgfLadder::new();
        let w1 = ward_form(&mut ladder, 1).unwrap();
        assert_eq!(w1.p_k, IntPoly::from_i64s(&[-1]));
        assert_eq!(w1.leading_monomial_power, 2);

        let w3 = ward_form(&mut ladder, 3).unwrap();
        assert_eq!(w3.p_k, IntPoly::from_i64s(&[15, -45, 40, -12]));

        for k in 1..=10 {
            let w = ward_form(&mut ladder, k).unwrap();
            assert_eq!(w.p_k.degree(), Some(k * (k - 1) / 2), "k={k}");
        }
        let w5 = ward_form(&mut ladder, 5).unwrap();
        assert_eq!(w5.p_k.degree(), Some(10));
        assert!(w3.display().contains("(x-1)^3"));
    }

    #[test]
    fn principal_parts() {
        let mut ladder = OgfLadder::new();
        // k = 1: -1/(x-1), all coefficients 1
        let pp1 = principal_part(&mut ladder, 1).unwrap();
        assert_eq!(pp1, RatFunc::new(IntPoly::from_i64s(&[-1]), IntPoly::from_i64s(&[-1, 1])).unwrap());
        for n in 0..8 {
            assert_eq!(pp1.series_coeff(n).unwrap(), rat_int(1));
        }
        // k = 2: coefficient of x^n is 2^n/2
        let pp2 = principal_part(&mut ladder, 2).unwrap();
        for n in 0..10 {
            assert_eq!(pp2.series_coeff(n).unwrap(), rat(1 << n, 2));
        }
        // k = 3: k^n/k!
        let pp3 = principal_part(&mut ladder, 3).unwrap();
        for n in 0..10 {
            assert_eq!(pp3.series_coeff(n).unwrap(), rat(3i64.pow(n as u32), 6));
        }
    }

    #[test]
    fn principal_part_leaves_removable_point() {
        let mut ladder = OgfLadder::new();
        for k in 1..=8 {
            let f = ladder.f_k(k).unwrap().clone();
            let pp = principal_part(&mut ladder, k).unwrap();
            let g = f.sub(&pp);
            let pole = Ratio::new(BigInt::one(), BigInt::from(k));
            assert!(
                !g.den().eval_rational(&pole).is_zero(),
                "pole at 1/{k} should be removed"
            );
        }
    }

    #[test]
    fn error_term_is_bounded() {
        let mut t = Tables::new();
        let rep = asymptotic_error_check(&mut t, 3, 20, 60, 0.1).unwrap();
        assert!(rep.bounded, "normalized errors must not grow: {:?}", rep.max_error);
        assert!(asymptotic_error_check(&mut t, 1, 5, 10, 0.1).is_err());
        // D(10,2) 2!/2^10 inside (0, 2)
        let ratio = t.d_count(10, 2) * crate::triangles::Count::from(2u32);
        let ratio = ratio_to_f64(&Ratio::new(BigInt::from(ratio), BigInt::from(1u32 << 10)));
        assert!(ratio > 0.0 && ratio < 2.0);
    }

    #[test]
    fn peak_report_examples() {
        let mut t = Tables::new();
        let rep = verify_peak_asymptotic(&mut t, 100).unwrap();
        assert!((rep.d_argmax as i64 - rep.s_argmax as i64).abs() <= 2);
        let rep10 = verify_peak_asymptotic(&mut t, 10).unwrap();
        assert!(!rep10.asymptotic_regime);
        let rep200 = verify_peak_asymptotic(&mut t, 200).unwrap();
        assert!(rep200.ratio_n_over_log > 0.7 && rep200.ratio_n_over_log < 1.3);
    }
}
