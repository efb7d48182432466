//! Exact rational scalars and the few float conversions the reporting
//! layers are allowed to make.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Ratio = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(num))
}

/// Splits off the top 54 bits so huge magnitudes survive the trip to f64.
fn biguint_to_f64_exp(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 53 {
        (x.to_f64().unwrap_or(0.0), 0)
    } else {
        let shift = bits - 54;
        ((x >> shift).to_f64().unwrap_or(0.0), shift as i64)
    }
}

/// Best-effort f64 rendering of an exact rational; values outside the f64
/// range saturate to +/-inf. Display only, never fed back into exact paths.
pub fn ratio_to_f64(r: &Ratio) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (num_f, num_e) = biguint_to_f64_exp(r.numer().magnitude());
    let (den_f, den_e) = biguint_to_f64_exp(r.denom().magnitude());
    let sign = if r.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    let e = num_e - den_e;
    let base = sign * num_f / den_f;
    if e == 0 {
        base
    } else if e > 2048 {
        sign * f64::INFINITY
    } else if e < -2048 {
        0.0
    } else {
        base * 2f64.powi(e as i32)
    }
}

/// Exact rational equal to the given finite float.
pub fn ratio_from_f64(x: f64) -> Result<Ratio> {
    Ratio::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite float {x}")))
}

/// `"p/q"` (or `"p"` when q = 1) with decimal digits.
pub fn ratio_string(r: &Ratio) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::InvalidArgument(format!("bad rational component {t:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            Ok(Ratio::new(parse_int(num)?, den))
        }
        None => Ok(Ratio::from_integer(parse_int(s)?)),
    }
}

/// Binary64 rendered at 17 significant digits (round-trippable).
pub fn format_sig17(x: f64) -> String {
    format!("{x:.16e}")
}
