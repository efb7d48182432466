//! Dense integer-coefficient polynomials: exact arithmetic, rational
//! evaluation, differentiation, gcd, and the horizontal generating
//! polynomials of the counting triangles.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numeric::{parse_ratio, Ratio};
use crate::triangles::Tables;

/// Dense polynomial over the integers; index i holds the coefficient of x^i.
/// The coefficient vector carries no trailing zeros; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        IntPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_bigints(vec![c])
    }

    pub fn from_bigints(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// c * x^d
    pub fn monomial(c: BigInt, d: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_bigints(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_bigints(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by x^k.
    pub fn mul_xpow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_bigints(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact value p(x) by Horner evaluation over the rationals.
    pub fn eval_rational(&self, x: &Ratio) -> Ratio {
        let mut acc = Ratio::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Ratio::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of p(x) at a rational point, computed without building the full
    /// rational value: sign of sum_i c_i num^i den^(deg-i).
    pub fn sign_at(&self, x: &Ratio) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let num = x.numer();
        let den = x.denom();
        let d = self.coeffs.len() - 1;
        let mut den_pow = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            den_pow[i] = &den_pow[i - 1] * den;
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == d {
                acc = c.clone();
            } else {
                acc = acc * num + c * &den_pow[d - i];
            }
        }
        match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Gcd of the absolute values of the coefficients (0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, preserving signs.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Exact polynomial division; None if `other` does not divide `self`.
    pub fn div_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (ds, dd) = (self.degree()?, other.degree()?);
        if ds < dd {
            return None;
        }
        let lead = other.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                let prod = oc * &q;
                rem[i + j] -= prod;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_bigints(quot))
    }

    /// Primitive gcd with positive leading coefficient, via a primitive
    /// polynomial remainder sequence.
    pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut f = a.primitive_part();
        let mut g = b.primitive_part();
        if f.is_zero() {
            return normalize_sign(g);
        }
        while !g.is_zero() {
            let r = pseudo_rem_abs(&f, &g).primitive_part();
            f = g;
            g = r;
        }
        normalize_sign(f)
    }

    /// self / gcd(self, self'): same distinct roots, all simple.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = IntPoly::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
            .expect("gcd divides the polynomial")
            .primitive_part()
    }

    /// Integer B > max |root|: 1 + ceil(max |c_i| / |c_d|).
    pub fn cauchy_bound(&self) -> BigInt {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return BigInt::one(),
        };
        let lead = self.coeffs[d].magnitude().clone();
        let max_low: BigUint = self.coeffs[..d]
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default();
        let (q, r) = max_low.div_rem(&lead);
        let ceil = if r.is_zero() { q } else { q + 1u32 };
        BigInt::from(ceil) + 1
    }

    /// JSON array of decimal coefficient strings, lowest degree first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Result<IntPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("polynomial JSON must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::InvalidArgument("coefficients must be strings".into()))?;
            let r = parse_ratio(s)?;
            if !r.is_integer() {
                return Err(Error::InvalidArgument(format!("non-integer coefficient {s}")));
            }
            coeffs.push(r.to_integer());
        }
        Ok(IntPoly::from_bigints(coeffs))
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    match p.leading() {
        Some(l) if l.is_negative() => p.neg(),
        _ => p,
    }
}

// Remainder of (|lc(g)|^k * f) / g over the integers, where k is the number
// of elimination steps; the positive multiplier keeps the sign of the true
// remainder at every point.
fn pseudo_rem_abs(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let dg = g.degree().expect("nonzero divisor");
    let lg = g.leading().unwrap().clone();
    let mut rem = f.coeffs.clone();
    let mut steps = 0usize;
    while rem.len() > dg {
        let top = rem.last().unwrap().clone();
        let dr = rem.len() - 1;
        if top.is_zero() {
            rem.pop();
            continue;
        }
        // rem = lg * rem - top * x^(dr-dg) * g
        for c in rem.iter_mut() {
            *c *= &lg;
        }
        for (j, oc) in g.coeffs.iter().enumerate() {
            let prod = oc * &top;
            rem[dr - dg + j] -= prod;
        }
        steps += 1;
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    let mut r = IntPoly::from_bigints(rem);
    if lg.is_negative() && steps % 2 == 1 {
        r = r.neg();
    }
    r
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// D_n(x): coefficient of x^k is D(n,k); the zero polynomial for n = 1.
pub fn d_poly(tables: &mut Tables, n: usize) -> IntPoly {
    row_poly(tables, crate::triangles::TriangleKind::D, n)
}

/// S_n(x): coefficient of x^k is S(n,k).
pub fn s_poly(tables: &mut Tables, n: usize) -> IntPoly {
    row_poly(tables, crate::triangles::TriangleKind::S, n)
}

/// C_n(x) = x(x+1)...(x+n-1): coefficient of x^k is c(n,k).
pub fn c_poly(tables: &mut Tables, n: usize) -> IntPoly {
    row_poly(tables, crate::triangles::TriangleKind::C, n)
}

/// d_{n,r}(x): coefficient of x^k is d_r(n,k).
pub fn dr_poly(tables: &mut Tables, n: usize, r: usize) -> IntPoly {
    if r == 0 {
        return c_poly(tables, n);
    }
    row_poly(tables, crate::triangles::TriangleKind::Dr(r), n)
}

fn row_poly(tables: &mut Tables, kind: crate::triangles::TriangleKind, n: usize) -> IntPoly {
    let coeffs = tables
        .triangle_row(kind, n)
        .iter()
        .map(|c| BigInt::from(c.clone()))
        .collect();
    IntPoly::from_bigints(coeffs)
}

/// Expanded product x(x+1)...(x+n-1), built independently of the C triangle.
pub fn rising_factorial_poly(n: usize) -> IntPoly {
    let mut p = IntPoly::x();
    if n == 0 {
        return IntPoly::one();
    }
    for a in 1..n {
        p = p.mul(&IntPoly::from_bigints(vec![BigInt::from(a), BigInt::one()]));
    }
    p
}

/// Checks D_n(x) = x (D_{n-1}'(x) + (n-1) D_{n-2}(x)) exactly.
pub fn check_functional_recurrence(tables: &mut Tables, n: usize) -> bool {
    if n < 3 {
        return false;
    }
    let lhs = d_poly(tables, n);
    let prev = d_poly(tables, n - 1);
    let prev2 = d_poly(tables, n - 2);
    let rhs = prev
        .derivative()
        .add(&prev2.scale(&BigInt::from(n - 1)))
        .mul_xpow(1);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn d_poly_examples() {
        let mut t = Tables::new();
        assert_eq!(d_poly(&mut t, 4), IntPoly::from_i64s(&[0, 1, 3]));
        assert_eq!(d_poly(&mut t, 1), IntPoly::zero());
        assert_eq!(d_poly(&mut t, 6), IntPoly::from_i64s(&[0, 1, 25, 15]));
        assert_eq!(d_poly(&mut t, 4).to_string(), "3x^2 + x");
    }

    #[test]
    fn c_poly_matches_rising_factorial() {
        let mut t = Tables::new();
        assert_eq!(c_poly(&mut t, 1), IntPoly::x());
        assert_eq!(c_poly(&mut t, 2), IntPoly::from_i64s(&[0, 1, 1]));
        assert_eq!(c_poly(&mut t, 3), IntPoly::from_i64s(&[0, 2, 3, 1]));
        for n in 1..=25 {
            assert_eq!(c_poly(&mut t, n), rising_factorial_poly(n), "n={n}");
        }
    }

    #[test]
    fn s_poly_examples() {
        let mut t = Tables::new();
        assert_eq!(s_poly(&mut t, 1), IntPoly::x());
        assert_eq!(s_poly(&mut t, 3), IntPoly::from_i64s(&[0, 1, 3, 1]));
        assert_eq!(s_poly(&mut t, 4), IntPoly::from_i64s(&[0, 1, 7, 6, 1]));
    }

    #[test]
    fn dr_poly_examples() {
        let mut t = Tables::new();
        assert_eq!(dr_poly(&mut t, 3, 0), c_poly(&mut t, 3));
        assert_eq!(dr_poly(&mut t, 4, 1), IntPoly::from_i64s(&[0, 6, 3]));
        assert_eq!(dr_poly(&mut t, 2, 1), IntPoly::x());
    }

    #[test]
    fn rational_evaluation() {
        let mut t = Tables::new();
        let d4 = d_poly(&mut t, 4);
        assert_eq!(d4.eval_rational(&rat(-1, 3)), Ratio::zero());
        assert_eq!(d4.eval_rational(&Ratio::zero()), Ratio::zero());
        let d5 = d_poly(&mut t, 5);
        assert_eq!(d5.eval_rational(&rat_int(1)), rat_int(11));
        let c = IntPoly::from_i64s(&[7]);
        assert_eq!(c.eval_rational(&rat(9, 2)), rat_int(7));
    }

    #[test]
    fn sign_at_matches_eval() {
        let p = IntPoly::from_i64s(&[-6, 1, 1]); // (x+3)(x-2)
        for (num, den, expect) in [(-4i64, 1i64, 1), (0, 1, -1), (5, 2, 1), (2, 1, 0), (-3, 1, 0)] {
            assert_eq!(p.sign_at(&rat(num, den)), expect);
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(IntPoly::from_i64s(&[0, 1, 3]).derivative(), IntPoly::from_i64s(&[1, 6]));
        assert_eq!(IntPoly::from_i64s(&[5]).derivative(), IntPoly::zero());
        assert_eq!(
            IntPoly::from_i64s(&[0, 1, 25, 15]).derivative(),
            IntPoly::from_i64s(&[1, 50, 45])
        );
    }

    #[test]
    fn functional_recurrence_small() {
        let mut t = Tables::new();
        for n in 3..=120 {
            assert!(check_functional_recurrence(&mut t, n), "n={n}");
        }
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = IntPoly::from_i64s(&[1, -2, 1]); // (x-1)^2
        let g = IntPoly::gcd(&p, &p.derivative());
        assert_eq!(g, IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(p.squarefree_part(), IntPoly::from_i64s(&[-1, 1]));
        let q = IntPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(IntPoly::gcd(&q, &q.derivative()).degree(), Some(0));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]);
        let b = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        assert!(a.div_exact(&IntPoly::from_i64s(&[1, 2])).is_none());
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = IntPoly::from_i64s(&[-6, 1, 1]); // roots -3, 2
        assert!(p.cauchy_bound() >= BigInt::from(4));
    }

    #[test]
    fn json_round_trip() {
        let mut t = Tables::new();
        let p = d_poly(&mut t, 10);
        let j = p.to_json();
        assert_eq!(IntPoly::from_json(&j).unwrap(), p);
        assert_eq!(j[1], Value::String("1".into()));
    }
}
