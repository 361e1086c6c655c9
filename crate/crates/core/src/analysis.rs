//! Closed-form communication loads, baselines and the appendix inequalities,
//! all in exact big-integer arithmetic.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{is_prime, is_prime_power};

/// `C(n, k)` by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn int(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn big(x: BigUint) -> BigInt {
    BigInt::from(x)
}

/// Optimal load of cascaded CDC with `K` nodes, computation load `r` and
/// `s` reducers per function.
pub fn li_load(k: u64, r: u64, s: u64) -> Result<BigRational> {
    if r < 1 || s < 1 || r > k || s > k {
        return Err(Error::Domain(format!("li_load needs 1 <= r, s <= K, got K={k} r={r} s={s}")));
    }
    let denom = big(binomial(k, s));
    let lo = (r + 1).max(s);
    let hi = (r + s).min(k);
    let mut sum = BigRational::zero();
    for l in lo..=hi {
        let weight = big(binomial(k - r, k - l) * binomial(r, l - s));
        sum += BigRational::new(weight * int(l - r), denom.clone() * int(l - 1));
    }
    Ok(sum)
}

/// Load of the symmetric-design scheme: `((v-1)^2 - tv + v) / (v(v-1))`.
pub fn ours_sd_load(v: u64, t: u64) -> Result<BigRational> {
    if v <= 1 {
        return Err(Error::Domain(format!("v must exceed 1, got {v}")));
    }
    let (v, t) = (int(v), int(t));
    let one = BigInt::one();
    Ok(BigRational::new(
        (&v - &one) * (&v - &one) - &t * &v + &v,
        &v * (&v - &one),
    ))
}

/// Baseline `(v - t) / (v - 1)`.
pub fn jiang_load(v: u64, t: u64) -> Result<BigRational> {
    if v <= 1 {
        return Err(Error::Domain(format!("v must exceed 1, got {v}")));
    }
    Ok(ratio(int(v) - int(t), v - 1))
}

/// The other baseline load listed alongside `(K - r)/(K - 1)`:
/// `r(K - r) / ((r - 1)K)`.
pub fn jiang_auxiliary_load(k: u64, r: u64) -> Result<BigRational> {
    if r < 2 || r > k {
        return Err(Error::Domain(format!("need 2 <= r <= K, got K={k} r={r}")));
    }
    Ok(ratio(int(r) * int(k - r), (r - 1) * k))
}

/// Load of the almost-difference-set scheme: `(n-1)/(2n)` for `lambda >= 1`
/// and `(2n - 2 - k(k-1)) / (2n)` for `lambda = 0`.
pub fn ads_load(n: u64, k: u64, lambda: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if lambda >= 1 {
        Ok(ratio(n - 1, 2 * n))
    } else {
        Ok(ratio(int(2 * n) - 2 - int(k) * int(k.saturating_sub(1)), 2 * n))
    }
}

/// `(p^2 + p - 4) / (2(p^2 - p))`, the Golomb-ruler scheme load for prime `p`.
pub fn ruzsa_load(p: u64) -> Result<BigRational> {
    if p < 2 {
        return Err(Error::Domain(format!("p must be at least 2, got {p}")));
    }
    Ok(ratio(int(p * p + p) - 4, 2 * (p * p - p)))
}

fn check_appendix_p(p: u64) -> Result<()> {
    if p < 5 {
        return Err(Error::Domain(format!("the appendix needs p >= 5, got {p}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma31 {
    pub p: u64,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

/// `sum_{l=0}^{p-1} l C(p^2-2p+1, l) C(p-1, l) > (p-3) C(p^2-p, p-1)`.
pub fn lemma31_check(p: u64) -> Result<Lemma31> {
    check_appendix_p(p)?;
    let m = p * p - 2 * p + 1;
    let lhs = (0..p).fold(BigUint::zero(), |acc, l| {
        acc + binomial(m, l) * binomial(p - 1, l) * l
    });
    let rhs = binomial(p * p - p, p - 1) * (p - 3);
    let holds = lhs > rhs;
    Ok(Lemma31 { p, lhs, rhs, holds })
}

/// `d_l = (p-3-l) C(p-1, p-1-l) C(p^2-2p+1, l)`.
fn appendix_term(p: u64, l: u64) -> BigUint {
    binomial(p - 1, p - 1 - l) * binomial(p * p - 2 * p + 1, l) * (p - 3 - l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixSteps {
    pub p: u64,
    /// `C(m, p-1) > C(p-1, 3) C(m, p-4)` with `m = p^2 - 2p + 1`.
    pub for32: bool,
    /// `2 C(m, p-4) C(p-1, 3) > sum_{l=0}^{p-4} d_l`.
    pub for33: bool,
    /// `d_l / d_{l+1}` strictly increasing over `l in [0, p-5]`.
    pub ratios_increasing: bool,
    pub last_ratio: BigRational,
    pub last_ratio_below_half: bool,
}

impl AppendixSteps {
    pub fn holds(&self) -> bool {
        self.for32 && self.for33 && self.ratios_increasing && self.last_ratio_below_half
    }
}

pub fn appendix_step_checks(p: u64) -> Result<AppendixSteps> {
    check_appendix_p(p)?;
    let m = p * p - 2 * p + 1;
    let c3 = binomial(p - 1, 3);
    let for32 = binomial(m, p - 1) > &c3 * binomial(m, p - 4);
    let d: Vec<BigInt> = (0..=p - 4).map(|l| big(appendix_term(p, l))).collect();
    let total: BigInt = d.iter().sum();
    let for33 = big(binomial(m, p - 4) * &c3 * 2u32) > total;
    let ratios: Vec<BigRational> = d
        .windows(2)
        .map(|w| BigRational::new(w[0].clone(), w[1].clone()))
        .collect();
    let ratios_increasing = ratios.windows(2).all(|w| w[0] < w[1]);
    let last_ratio = ratios.last().cloned().expect("p >= 5 gives at least one ratio");
    let last_ratio_below_half = last_ratio < ratio(1, 2);
    Ok(AppendixSteps {
        p,
        for32,
        for33,
        ratios_increasing,
        last_ratio,
        last_ratio_below_half,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub p: u64,
    pub lower: BigRational,
    pub li: BigRational,
    pub upper: BigRational,
    pub holds: bool,
}

/// `(p-3)/(2p-3) < L_Li(p^2-p, p-1, p-1) < (p-1)/(2p-3)`.
pub fn li_sandwich(p: u64) -> Result<Sandwich> {
    check_appendix_p(p)?;
    let li = li_load(p * p - p, p - 1, p - 1)?;
    let lower = ratio(p - 3, 2 * p - 3);
    let upper = ratio(p - 1, 2 * p - 3);
    let holds = lower < li && li < upper;
    Ok(Sandwich {
        p,
        lower,
        li,
        upper,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JiangComparison {
    pub ours: BigRational,
    pub jiang: BigRational,
    pub gap: BigRational,
    pub strict: bool,
}

pub fn compare_ours_vs_jiang(v: u64, t: u64) -> Result<JiangComparison> {
    let ours = ours_sd_load(v, t)?;
    let jiang = jiang_load(v, t)?;
    let gap = &jiang - &ours;
    let strict = gap.is_positive();
    Ok(JiangComparison {
        ours,
        jiang,
        gap,
        strict,
    })
}

/// Infinite families of symmetric designs, parametrized by `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdFamily {
    /// `(b^2+b+1, b+1, 1)`, `b` a prime power.
    ProjectivePlane,
    /// `(b^3+b^2+b+1, b^2+b+1, b+1)`, `b` a prime power.
    ProjectiveSpace,
    /// `(b^3+2b^2, b^2+b, b)`, `b` a prime power.
    Family3,
    /// `(b^3+b+1, b^2+1, b)`, `b - 1` and `b^2 - b + 1` prime powers.
    Family4,
}

impl SdFamily {
    pub const ALL: [SdFamily; 4] = [
        SdFamily::ProjectivePlane,
        SdFamily::ProjectiveSpace,
        SdFamily::Family3,
        SdFamily::Family4,
    ];

    /// `(v, t, lambda)` for `b`, or `None` when `b` is outside the family.
    pub fn params(self, b: u64) -> Option<(u64, u64, u64)> {
        let admissible = match self {
            SdFamily::Family4 => b >= 2 && is_prime_power(b - 1) && is_prime_power(b * b - b + 1),
            _ => is_prime_power(b),
        };
        if !admissible {
            return None;
        }
        Some(match self {
            SdFamily::ProjectivePlane => (b * b + b + 1, b + 1, 1),
            SdFamily::ProjectiveSpace => (b * b * b + b * b + b + 1, b * b + b + 1, b + 1),
            SdFamily::Family3 => (b * b * b + 2 * b * b, b * b + b, b),
            SdFamily::Family4 => (b * b * b + b + 1, b * b + 1, b),
        })
    }
}

/// Loads of one parameter point side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadReport {
    pub k: u64,
    pub r: u64,
    pub s: u64,
    pub l_measured: Option<BigRational>,
    pub l_ours: BigRational,
    pub l_li: BigRational,
    pub l_jiang: Option<BigRational>,
}

impl LoadReport {
    /// Report for the scheme on a `(v, t, lambda)` symmetric design.
    pub fn sd(v: u64, t: u64) -> Result<Self> {
        Ok(Self {
            k: v,
            r: t,
            s: v - t,
            l_measured: None,
            l_ours: ours_sd_load(v, t)?,
            l_li: li_load(v, t, v - t)?,
            l_jiang: Some(jiang_load(v, t)?),
        })
    }

    /// Report for the scheme on an `(n, k, lambda, mu)` almost difference set.
    pub fn ads(n: u64, k: u64, lambda: u64) -> Result<Self> {
        Ok(Self {
            k: n,
            r: k,
            s: k,
            l_measured: None,
            l_ours: ads_load(n, k, lambda)?,
            l_li: li_load(n, k, k)?,
            l_jiang: None,
        })
    }

    pub fn ratio_ours_li(&self) -> Option<BigRational> {
        (!self.l_li.is_zero()).then(|| &self.l_ours / &self.l_li)
    }

    pub fn ratio_ours_jiang(&self) -> Option<BigRational> {
        self.l_jiang
            .as_ref()
            .filter(|j| !j.is_zero())
            .map(|j| &self.l_ours / j)
    }
}

/// Decimal rendering of `x` rounded half away from zero to `digits`
/// significant digits.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let x = x.abs();
    let ten = BigInt::from(10);
    let lower = num_traits::pow(ten.clone(), digits - 1);
    let upper = &lower * &ten;
    // Find `shift` with lower <= x * 10^shift < upper.
    let mut shift: i64 = 0;
    let scaled = |shift: i64| -> BigRational {
        if shift >= 0 {
            &x * BigRational::from_integer(num_traits::pow(ten.clone(), shift as usize))
        } else {
            &x / BigRational::from_integer(num_traits::pow(ten.clone(), (-shift) as usize))
        }
    };
    while scaled(shift).to_integer() >= upper {
        shift -= 1;
    }
    while scaled(shift).to_integer() < lower {
        shift += 1;
    }
    let y = scaled(shift);
    let (q, rem) = y.numer().div_rem(y.denom());
    let mut mantissa = if rem * 2 >= *y.denom() { q + 1 } else { q };
    if mantissa == upper {
        mantissa /= 10;
        shift -= 1;
    }
    let text = mantissa.to_string();
    let body = if shift <= 0 {
        format!("{text}{}", "0".repeat((-shift) as usize))
    } else {
        let shift = shift as usize;
        if shift >= text.len() {
            format!("0.{}{text}", "0".repeat(shift - text.len()))
        } else {
            let (a, b) = text.split_at(text.len() - shift);
            format!("{a}.{b}")
        }
    };
    format!("{sign}{body}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    /// Projective planes of prime order `b`: `K = b^2+b+1`, `r = b+1`.
    Plane,
    /// Ruzsa rulers for prime `p`: `K = p^2-p`, `r = s = p-1`.
    Ruzsa,
}

impl SweepFamily {
    fn name(self) -> &'static str {
        match self {
            SweepFamily::Plane => "plane",
            SweepFamily::Ruzsa => "ruzsa",
        }
    }
}

pub const CSV_HEADER: &str = "family,param,K,r,s,N,Q,L_ours,L_jiang,L_li,ratio_ours_li";

fn sweep_row(family: SweepFamily, param: u64, decimal: bool) -> Result<String> {
    let report = match family {
        SweepFamily::Plane => LoadReport::sd(param * param + param + 1, param + 1)?,
        SweepFamily::Ruzsa => LoadReport::ads(param * param - param, param - 1, 0)?,
    };
    let cell = |x: Option<&BigRational>| -> String {
        match x {
            None => String::new(),
            Some(x) if decimal => format!("{x},{}", to_decimal(x, 12)),
            Some(x) => x.to_string(),
        }
    };
    let mut row = format!(
        "{},{param},{k},{r},{s},{k},{k},",
        family.name(),
        k = report.k,
        r = report.r,
        s = report.s
    );
    let ratio = report.ratio_ours_li();
    let jiang = match (&report.l_jiang, decimal) {
        (None, true) => ",".to_string(),
        (j, _) => cell(j.as_ref()),
    };
    let ratio_cell = match (&ratio, decimal) {
        (None, true) => ",".to_string(),
        (r, _) => cell(r.as_ref()),
    };
    write!(
        row,
        "{},{jiang},{},{ratio_cell}",
        cell(Some(&report.l_ours)),
        cell(Some(&report.l_li))
    )
    .expect("writing to a string");
    Ok(row)
}

/// Header line of a sweep, with decimal columns when requested.
pub fn csv_header(decimal: bool) -> String {
    if !decimal {
        return CSV_HEADER.into();
    }
    let mut cols = Vec::new();
    for col in CSV_HEADER.split(',') {
        cols.push(col.to_string());
        if col.starts_with("L_") || col.starts_with("ratio") {
            cols.push(format!("{col}_decimal"));
        }
    }
    cols.join(",")
}

/// CSV rows for every prime parameter in `min..=max`, in ascending order.
///
/// Non-prime parameters are skipped with a logged note. The work is spread
/// over `jobs` threads; output order does not depend on it.
pub fn sweep(family: SweepFamily, min: u64, max: u64, decimal: bool, jobs: usize) -> Result<String> {
    let floor = match family {
        SweepFamily::Plane => 2,
        SweepFamily::Ruzsa => 3,
    };
    let mut params = Vec::new();
    for x in min..=max {
        if x >= floor && is_prime(x) {
            params.push(x);
        } else {
            log::warn!("{} sweep: skipping {x} (not a prime >= {floor})", family.name());
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let rows = pool.install(|| {
        params
            .par_iter()
            .map(|&x| sweep_row(family, x, decimal))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut out = csv_header(decimal);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factorial-based binomial as an independent check.
    fn binomial_oracle(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn binomial_matches_factorials() {
        for n in 0..40 {
            for k in 0..=n + 1 {
                assert_eq!(binomial(n, k), binomial_oracle(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn li_examples() {
        assert_eq!(li_load(2, 1, 1).unwrap(), ratio(1, 2));
        assert_eq!(li_load(7, 3, 4).unwrap(), ratio(13, 25));
        for s in 1..=6 {
            assert!(li_load(6, 6, s).unwrap().is_zero());
        }
        assert!(matches!(li_load(5, 0, 1), Err(Error::Domain(_))));
        assert!(matches!(li_load(5, 2, 6), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(ours_sd_load(7, 3).unwrap(), ratio(11, 21));
        assert_eq!(ours_sd_load(13, 4).unwrap(), ratio(35, 52));
        assert_eq!(jiang_load(7, 3).unwrap(), ratio(2, 3));
        assert_eq!(jiang_load(13, 4).unwrap(), ratio(3, 4));
        assert!(jiang_load(5, 5).unwrap().is_zero());
        assert!(matches!(ours_sd_load(1, 1), Err(Error::Domain(_))));
        assert_eq!(ads_load(6, 3, 1).unwrap(), ratio(5, 12));
        assert_eq!(ads_load(6, 2, 0).unwrap(), ratio(2, 3));
        assert_eq!(jiang_auxiliary_load(7, 3).unwrap(), ratio(6, 7));
    }

    #[test]
    fn ruzsa_identity() {
        for p in 3..=50u64 {
            assert_eq!(ads_load(p * p - p, p - 1, 0).unwrap(), ruzsa_load(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn appendix_small_primes() {
        for p in [5, 7, 11, 13] {
            assert!(lemma31_check(p).unwrap().holds, "p={p}");
            assert!(appendix_step_checks(p).unwrap().holds(), "p={p}");
            assert!(li_sandwich(p).unwrap().holds, "p={p}");
        }
        assert_eq!(appendix_step_checks(5).unwrap().last_ratio, ratio(1, 32));
        assert_eq!(appendix_step_checks(7).unwrap().last_ratio, ratio(9, 68));
        assert!(matches!(lemma31_check(4), Err(Error::Domain(_))));
        assert!(matches!(appendix_step_checks(4), Err(Error::Domain(_))));
        assert!(matches!(li_sandwich(3), Err(Error::Domain(_))));
    }

    #[test]
    fn lemma31_values_at_five() {
        let lemma = lemma31_check(5).unwrap();
        let m = 16;
        let lhs: BigUint = (0..5u64)
            .map(|l| binomial_oracle(m, l) * binomial_oracle(4, l) * l)
            .sum();
        assert_eq!(lemma.lhs, lhs);
        assert_eq!(lemma.rhs, binomial_oracle(20, 4) * 2u32);
    }

    #[test]
    fn families() {
        assert_eq!(SdFamily::ProjectivePlane.params(2), Some((7, 3, 1)));
        assert_eq!(SdFamily::ProjectiveSpace.params(2), Some((15, 7, 3)));
        assert_eq!(SdFamily::Family3.params(2), Some((16, 6, 2)));
        assert_eq!(SdFamily::Family4.params(2), None);
        assert_eq!(SdFamily::Family4.params(3), Some((31, 10, 3)));
        assert_eq!(SdFamily::ProjectivePlane.params(6), None);
        for family in SdFamily::ALL {
            for b in 2..=16 {
                if let Some((v, t, lambda)) = family.params(b) {
                    assert_eq!(lambda * (v - 1), t * (t - 1), "{family:?} b={b}");
                }
            }
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(11, 21), 12), "0.523809523810");
        assert_eq!(to_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&ratio(1, 2), 3), "0.500");
        assert_eq!(to_decimal(&ratio(9995, 1000), 3), "10.0");
        assert_eq!(to_decimal(&ratio(123456, 1), 3), "123000");
        assert_eq!(to_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&BigRational::zero(), 12), "0");
    }

    #[test]
    fn sweep_rows() {
        let csv = sweep(SweepFamily::Plane, 2, 5, false, 1).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("plane,2,7,3,4,7,7,11/21,2/3,13/25,"));
        assert_eq!(sweep(SweepFamily::Plane, 14, 16, false, 1).unwrap(), format!("{CSV_HEADER}\n"));
        let ruzsa = sweep(SweepFamily::Ruzsa, 5, 11, true, 3).unwrap();
        assert_eq!(ruzsa, sweep(SweepFamily::Ruzsa, 5, 11, true, 1).unwrap());
        let widths: Vec<usize> = ruzsa.lines().map(|l| l.split(',').count()).collect();
        assert!(widths.iter().all(|&w| w == widths[0]));
        assert_eq!(widths.len(), 4);
    }
}
