//! Expected block counts, Darroch peak localization, strong log-concavity,
//! and the Bell-number comparison identities.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{rat_int, ratio_string, ratio_to_f64, Ratio};
use crate::oracle;
use crate::poly::IntPoly;
use crate::triangles::{Count, Tables, TriangleKind};

/// Peak location report for a coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakReport {
    /// mu = A'(1)/A(1), the exact mean of the counted statistic.
    pub mu: Ratio,
    /// Argmax indices of the coefficients (1 or 2, consecutive when 2).
    pub peak_indices: Vec<usize>,
    /// |mu - m| < 1 for some peak index m.
    pub darroch_ok: bool,
}

/// Indices attaining the maximum positive entry.
pub fn coefficient_peaks(values: &[Count]) -> Vec<usize> {
    let mut best: Option<&Count> = None;
    for v in values {
        if !v.is_zero() && best.is_none_or(|b| v > b) {
            best = Some(v);
        }
    }
    match best {
        None => Vec::new(),
        Some(b) => values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == b)
            .map(|(k, _)| k)
            .collect(),
    }
}

/// E(X_n) = (D(n+1) - n D(n-1)) / D(n), the mean number of blocks over
/// singleton-free partitions of [n]; cross-checkable as sum k D(n,k) / D(n).
pub fn block_count_mean(tables: &mut Tables, n: usize) -> Result<Ratio> {
    if n < 2 {
        return Err(Error::UndefinedStatistic(format!(
            "block count mean needs n >= 2 (D({n}) = 0)"
        )));
    }
    let d_n = tables.d_total(n);
    let numer = BigInt::from(tables.d_total(n + 1)) - BigInt::from(n) * BigInt::from(tables.d_total(n - 1));
    Ok(Ratio::new(numer, d_n.into()))
}

/// Darroch localization for a real-rooted polynomial with nonnegative
/// coefficients: the coefficient peak lies within distance 1 of mu.
pub fn darroch_locate(p: &IntPoly) -> Result<PeakReport> {
    if p.coeffs().iter().any(Signed::is_negative) {
        return Err(Error::NotAProbabilityPolynomial);
    }
    let total = p.eval_rational(&Ratio::one());
    if !total.is_positive() {
        return Err(Error::NotAProbabilityPolynomial);
    }
    let mu = p.derivative().eval_rational(&Ratio::one()) / &total;
    let coeffs: Vec<Count> = p
        .coeffs()
        .iter()
        .map(|c| c.magnitude().clone())
        .collect();
    let peak_indices = coefficient_peaks(&coeffs);
    let darroch_ok = peak_indices.iter().any(|&m| {
        let m = rat_int(m as i64);
        let diff = &mu - &m;
        diff.abs() < Ratio::one()
    });
    Ok(PeakReport { mu, peak_indices, darroch_ok })
}

/// Strong log-concavity of the D_n coefficient row over its support:
/// b_j^2 >= b_{j-1} b_{j+1} (j+1)/j (d-j+1)/(d-j) for internal j, with the
/// support reindexed to 1..d and d = deg D_n. Exact integer comparison.
pub fn strong_log_concavity_check(tables: &mut Tables, n: usize) -> bool {
    if n < 6 {
        return false;
    }
    let row = tables.triangle_row(TriangleKind::D, n);
    let d = row.len() - 1; // deg D_n
    let b = &row[1..=d]; // b[j-1] = D(n,j)
    for j in 2..d {
        // b_j^2 j (d-j) >= b_{j-1} b_{j+1} (j+1)(d-j+1)
        let lhs = &b[j - 1] * &b[j - 1] * Count::from(j * (d - j));
        let rhs = &b[j - 2] * &b[j] * Count::from((j + 1) * (d - j + 1));
        if lhs < rhs {
            return false;
        }
    }
    true
}

/// Peak-count shape required of every computed row: one peak or two
/// consecutive peaks.
pub fn row_peaks_are_unimodal(values: &[Count]) -> bool {
    let peaks = coefficient_peaks(values);
    match peaks.len() {
        1 => true,
        2 => peaks[1] == peaks[0] + 1,
        _ => false,
    }
}

/// Outcome of the Bell comparison identities at one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BellIdentityReport {
    /// B(n) = D(n) + D(n+1)
    pub a: bool,
    /// E(X_{n+1}-1) D(n+1)/B(n) + E(X_n) D(n)/B(n) = E(N_n)
    pub b: bool,
    /// the squared-moment version of (b)
    pub c: bool,
    /// E(N_n) moments taken from the enumeration oracle rather than the
    /// triangle convolution
    pub oracle_side: bool,
}

impl BellIdentityReport {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

/// First and second moments of the number of non-singleton blocks of an
/// unrestricted partition of [n], by summing over the singleton set:
/// sum_j C(n,j) sum_k k^i D(n-j,k), normalized by B(n).
pub fn nonsingleton_moments_by_formula(tables: &mut Tables, n: usize) -> (Ratio, Ratio) {
    let mut sum1 = Count::zero();
    let mut sum2 = Count::zero();
    for j in 0..=n {
        let choose = binomial(Count::from(n), Count::from(j));
        sum1 += &choose * tables.weighted_row_sum(TriangleKind::D, n - j);
        sum2 += &choose * tables.square_weighted_row_sum(TriangleKind::D, n - j);
    }
    let bell = tables.bell(n);
    (
        Ratio::new(sum1.into(), bell.clone().into()),
        Ratio::new(sum2.into(), bell.into()),
    )
}

fn d_first_two_moments(tables: &mut Tables, n: usize) -> (Ratio, Ratio) {
    let total = tables.d_total(n);
    let m1 = tables.weighted_row_sum(TriangleKind::D, n);
    let m2 = tables.square_weighted_row_sum(TriangleKind::D, n);
    (
        Ratio::new(m1.into(), total.clone().into()),
        Ratio::new(m2.into(), total.into()),
    )
}

/// Verifies, over exact rationals, the three identities tying the D and
/// Bell ensembles together. With `use_oracle`, E(N_n) moments come from
/// exhaustive enumeration (n <= 13); otherwise from the triangle formula.
pub fn verify_bell_identities(tables: &mut Tables, n: usize, use_oracle: bool) -> Result<BellIdentityReport> {
    if n < 2 {
        return Err(Error::UndefinedStatistic("identities need n >= 2".into()));
    }
    let bell = tables.bell(n);
    let d_n = tables.d_total(n);
    let d_n1 = tables.d_total(n + 1);
    let a = bell == &d_n + &d_n1;

    let (en1, en2) = if use_oracle {
        oracle::nonsingleton_block_moments(n)?
    } else {
        nonsingleton_moments_by_formula(tables, n)
    };

    let bell_r = Ratio::from_integer(BigInt::from(bell));
    let dn_r = Ratio::from_integer(BigInt::from(d_n));
    let dn1_r = Ratio::from_integer(BigInt::from(d_n1));

    let (x_np1_m1, x_np1_m2) = d_first_two_moments(tables, n + 1);
    let (x_n_m1, x_n_m2) = d_first_two_moments(tables, n);

    // (b): E(X_{n+1} - 1) D(n+1)/B(n) + E(X_n) D(n)/B(n) = E(N_n)
    let lhs_b = (&x_np1_m1 - Ratio::one()) * &dn1_r / &bell_r + &x_n_m1 * &dn_r / &bell_r;
    let b = lhs_b == en1;

    // (c): E((X_{n+1} - 1)^2) D(n+1)/B(n) + E(X_n^2) D(n)/B(n) = E(N_n^2)
    let x_np1_shift_sq = &x_np1_m2 - Ratio::from_integer(2.into()) * &x_np1_m1 + Ratio::one();
    let lhs_c = x_np1_shift_sq * &dn1_r / &bell_r + &x_n_m2 * &dn_r / &bell_r;
    let c = lhs_c == en2;

    Ok(BellIdentityReport { a, b, c, oracle_side: use_oracle })
}

/// Exact growth ratios with their predicted asymptotic companions, for
/// trend inspection.
#[derive(Debug, Clone)]
pub struct AsymptoticRatios {
    pub n: usize,
    /// B(n)/B(n-1)
    pub bell_ratio: Ratio,
    /// n B(n-1)/B(n) = E(#singleton blocks)
    pub singleton_mean: Ratio,
    /// D(n+1)/B(n)
    pub d_over_bell: Ratio,
    /// n / (e log n)
    pub predicted_bell_ratio: f64,
    /// e log n
    pub predicted_singleton_mean: f64,
    /// true when n is large enough for the asymptotic claims to be quoted
    pub asymptotic_regime: bool,
}

impl AsymptoticRatios {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "bell_ratio": ratio_string(&self.bell_ratio),
            "bell_ratio_approx": ratio_to_f64(&self.bell_ratio),
            "singleton_mean": ratio_string(&self.singleton_mean),
            "singleton_mean_approx": ratio_to_f64(&self.singleton_mean),
            "d_over_bell": ratio_string(&self.d_over_bell),
            "d_over_bell_approx": ratio_to_f64(&self.d_over_bell),
            "predicted_bell_ratio": self.predicted_bell_ratio,
            "predicted_singleton_mean": self.predicted_singleton_mean,
            "asymptotic_regime": self.asymptotic_regime,
        })
    }
}

pub fn asymptotic_ratio_report(tables: &mut Tables, n: usize) -> Result<AsymptoticRatios> {
    if n < 3 {
        return Err(Error::UndefinedStatistic("ratio report needs n >= 3".into()));
    }
    let bell_n = tables.bell(n);
    let bell_prev = tables.bell(n - 1);
    let d_next = tables.d_total(n + 1);
    let bell_ratio = Ratio::new(BigInt::from(bell_n.clone()), BigInt::from(bell_prev.clone()));
    let singleton_mean = Ratio::new(
        BigInt::from(n) * BigInt::from(bell_prev),
        BigInt::from(bell_n.clone()),
    );
    let d_over_bell = Ratio::new(BigInt::from(d_next), BigInt::from(bell_n));
    let nf = n as f64;
    Ok(AsymptoticRatios {
        n,
        bell_ratio,
        singleton_mean,
        d_over_bell,
        predicted_bell_ratio: nf / (std::f64::consts::E * nf.ln()),
        predicted_singleton_mean: std::f64::consts::E * nf.ln(),
        asymptotic_regime: n >= 10,
    })
}

/// The CLI-facing peak report: {n, mu, peaks, darroch_ok, identities}.
pub fn peak_report_json(tables: &mut Tables, n: usize) -> Result<Value> {
    let p = crate::poly::d_poly(tables, n);
    let report = darroch_locate(&p)?;
    let identities = verify_bell_identities(tables, n, false)?;
    Ok(json!({
        "n": n,
        "mu": ratio_string(&report.mu),
        "peaks": report.peak_indices,
        "darroch_ok": report.darroch_ok,
        "identities": { "a": identities.a, "b": identities.b, "c": identities.c },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::poly::d_poly;

    #[test]
    fn mean_examples() {
        let mut t = Tables::new();
        assert_eq!(block_count_mean(&mut t, 5).unwrap(), rat(21, 11));
        assert_eq!(block_count_mean(&mut t, 2).unwrap(), rat_int(1));
        assert_eq!(block_count_mean(&mut t, 4).unwrap(), rat(7, 4));
        assert!(block_count_mean(&mut t, 1).is_err());
    }

    #[test]
    fn mean_agrees_with_row_sum() {
        let mut t = Tables::new();
        for n in 2..=60 {
            let mu = block_count_mean(&mut t, n).unwrap();
            let total = Ratio::from_integer(BigInt::from(t.d_total(n)));
            let weighted = Ratio::from_integer(BigInt::from(t.weighted_row_sum(TriangleKind::D, n)));
            assert_eq!(mu * total, weighted, "n={n}");
        }
    }

    #[test]
    fn darroch_examples() {
        let mut t = Tables::new();
        let report = darroch_locate(&d_poly(&mut t, 5)).unwrap();
        assert_eq!(report.mu, rat(21, 11));
        assert_eq!(report.peak_indices, vec![2]);
        assert!(report.darroch_ok);

        let report = darroch_locate(&IntPoly::x()).unwrap();
        assert_eq!(report.mu, rat_int(1));
        assert_eq!(report.peak_indices, vec![1]);
        assert!(report.darroch_ok);

        let report = darroch_locate(&d_poly(&mut t, 100)).unwrap();
        assert!(report.darroch_ok);

        assert!(darroch_locate(&IntPoly::from_i64s(&[1, -1])).is_err());
        assert!(darroch_locate(&IntPoly::zero()).is_err());
    }

    #[test]
    fn log_concavity_examples() {
        let mut t = Tables::new();
        assert!(strong_log_concavity_check(&mut t, 6));
        assert!(strong_log_concavity_check(&mut t, 7));
        assert!(strong_log_concavity_check(&mut t, 100));
    }

    #[test]
    fn bell_identities_small() {
        let mut t = Tables::new();
        for n in 2..=10 {
            let rep = verify_bell_identities(&mut t, n, true).unwrap();
            assert!(rep.all(), "oracle side n={n}: {rep:?}");
            let rep = verify_bell_identities(&mut t, n, false).unwrap();
            assert!(rep.all(), "formula side n={n}: {rep:?}");
        }
    }

    #[test]
    fn formula_moments_match_oracle() {
        let mut t = Tables::new();
        for n in 2..=11 {
            let (o1, o2) = oracle::nonsingleton_block_moments(n).unwrap();
            let (f1, f2) = nonsingleton_moments_by_formula(&mut t, n);
            assert_eq!(o1, f1, "first moment n={n}");
            assert_eq!(o2, f2, "second moment n={n}");
        }
    }

    #[test]
    fn ratio_report_structure() {
        let mut t = Tables::new();
        let rep = asymptotic_ratio_report(&mut t, 3).unwrap();
        assert!(!rep.asymptotic_regime);
        assert_eq!(rep.bell_ratio, rat(5, 2));
        // D(n+1)/B(n) drifts toward 1 from below as n grows.
        let r100 = asymptotic_ratio_report(&mut t, 100).unwrap();
        let r200 = asymptotic_ratio_report(&mut t, 200).unwrap();
        assert!(r100.d_over_bell < r200.d_over_bell);
        assert!(r200.d_over_bell < Ratio::one());
    }

    #[test]
    fn peak_shapes() {
        let mut t = Tables::new();
        for n in 2..=80 {
            let row = t.triangle_row(TriangleKind::D, n).to_vec();
            assert!(row_peaks_are_unimodal(&row), "D row {n}");
            let row = t.triangle_row(TriangleKind::S, n).to_vec();
            assert!(row_peaks_are_unimodal(&row), "S row {n}");
        }
    }
}
