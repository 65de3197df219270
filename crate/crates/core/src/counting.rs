//! Closed-form counts of Zariski k-plets and related families.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::trees::catalan;

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// (k, ε) with k = ⌊(m−2)/2⌋ and ε = m − 2k − 2.
pub fn degree_parameters(m: u64) -> (u64, u64) {
    let k = (m - 2) / 2;
    (k, m - 2 * k - 2)
}

fn z_product(m: u64) -> BigUint {
    let (k, eps) = degree_parameters(m);
    catalan(k - 1) * binom(k, k / 2) * binom(k / 2, eps)
}

/// Z(m) = (1/k)·binom(2k−2, k−1)·binom(k, ⌊k/2⌋)·binom(⌊k/2⌋, ε).
pub fn zariski_count(m: u64) -> Result<BigUint> {
    if m < 8 {
        return Err(Error::Domain(format!("Z(m) is defined for m >= 8, got {m}")));
    }
    let (k, eps) = degree_parameters(m);
    let v = binom(2 * k - 2, k - 1) * binom(k, k / 2) * binom(k / 2, eps) / BigUint::from(k);
    if v != z_product(m) {
        return Err(Error::Invariant(format!("Z({m}) disagrees with its product form")));
    }
    Ok(v)
}

/// R(m) = binom(2m−12, m−6)/(m−5).
pub fn reducible_count(m: u64) -> Result<BigUint> {
    if m < 8 {
        return Err(Error::Domain(format!("R(m) is defined for m >= 8, got {m}")));
    }
    let v = binom(2 * m - 12, m - 6) / BigUint::from(m - 5);
    if v != catalan(m - 6) {
        return Err(Error::Invariant(format!("R({m}) disagrees with C({})", m - 6)));
    }
    Ok(v)
}

/// A count evaluated by its defining product; `below_domain` marks
/// arguments outside the range of the closed formula (m ≥ 8).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealCount {
    #[serde(serialize_with = "as_string")]
    pub value: BigUint,
    pub argument: u64,
    pub below_domain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealCounts {
    pub z_real: Option<RealCount>,
    pub r_real: Option<RealCount>,
}

/// Families containing real curves: Z(4t+2) when m = 8t+2, and R(t+3)
/// when m = 2t+1.
pub fn real_counts(m: u64) -> RealCounts {
    let z_real = (m >= 10 && m % 8 == 2).then(|| {
        let t = (m - 2) / 8;
        let value = catalan(2 * t - 1) * binom(2 * t, t);
        RealCount { value, argument: 4 * t + 2, below_domain: 4 * t + 2 < 8 }
    });
    let r_real = (m % 2 == 1 && m >= 7).then(|| {
        let t = (m - 1) / 2;
        RealCount { value: catalan(t - 3), argument: t + 3, below_domain: t + 3 < 8 }
    });
    RealCounts { z_real, r_real }
}

/// Z_ar(m) ≥ binom(2k−2, k−1)/2 for m = 2k+1 ≥ 5.
pub fn arithmetic_lower_bound(m: u64) -> Result<BigUint> {
    if m % 2 == 0 || m < 5 {
        return Err(Error::Domain(format!("the arithmetic bound needs odd m >= 5, got {m}")));
    }
    let k = (m - 1) / 2;
    let v = binom(2 * k - 2, k - 1) / BigUint::from(2u32);
    if v != catalan(k - 1) * BigUint::from(k) / BigUint::from(2u32) {
        return Err(Error::Invariant(format!("Z_ar({m}) disagrees with the tree count")));
    }
    Ok(v)
}

/// (C(2s−1), C(2s−1)/(2s+1)): deformation families of surfaces and the
/// lower bound for arithmetic Zariski families.
pub fn surface_counts(s: u64) -> Result<(BigUint, BigRational)> {
    if s == 0 {
        return Err(Error::Domain("surface counts need s >= 1".into()));
    }
    let c = catalan(2 * s - 1);
    let bound = BigRational::new(BigInt::from(c.clone()), BigInt::from(2 * s + 1));
    Ok((c, bound))
}

/// Number of ordered pairs (a, b) of nonnegative integers with a+b ≤ 2t−2
/// and a+b even.
pub fn real_subclass_count(t: u64) -> Result<BigUint> {
    if t == 0 {
        return Err(Error::Domain("real subclass count needs t >= 1".into()));
    }
    Ok(BigUint::from(t) * BigUint::from(t))
}

/// (leading digit, exponent) of `n` rounded to one significant digit.
pub fn one_significant_digit(n: &BigUint) -> (u32, u32) {
    let s = n.to_string();
    let e = s.len() as u32 - 1;
    let lead = s.as_bytes()[0] - b'0';
    let next = s.as_bytes().get(1).map_or(0, |b| b - b'0');
    let d = lead as u32 + u32::from(next >= 5);
    if d == 10 {
        (1, e + 1)
    } else {
        (d, e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Z,
    R,
    ZReal,
    RReal,
    ZAr,
    SurfacesA,
    SurfacesB,
    RealSubclasses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub m: u64,
    pub k: u64,
    pub epsilon: u64,
    pub kind: CountKind,
    #[serde(serialize_with = "as_string")]
    pub value: BigUint,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Every count defined at degree m.
pub fn count_reports(m: u64) -> Vec<CountReport> {
    let (k, epsilon) = if m >= 2 { degree_parameters(m) } else { (0, 0) };
    let mut out = Vec::new();
    let mut push = |kind, value| out.push(CountReport { m, k, epsilon, kind, value });
    if let Ok(v) = zariski_count(m) {
        push(CountKind::Z, v);
    }
    if let Ok(v) = reducible_count(m) {
        push(CountKind::R, v);
    }
    let real = real_counts(m);
    if let Some(r) = real.z_real {
        push(CountKind::ZReal, r.value);
    }
    if let Some(r) = real.r_real {
        push(CountKind::RReal, r.value);
    }
    if let Ok(v) = arithmetic_lower_bound(m) {
        push(CountKind::ZAr, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn table() {
        let z: Vec<BigUint> = (8..=14).map(|m| zariski_count(m).unwrap()).collect();
        let r: Vec<BigUint> = (8..=14).map(|m| reducible_count(m).unwrap()).collect();
        assert_eq!(z, [6, 6, 30, 60, 140, 280, 840].map(u));
        assert_eq!(r, [2, 5, 14, 42, 132, 429, 1430].map(u));
        assert!(zariski_count(7).is_err());
        assert!(reducible_count(7).is_err());
    }

    #[test]
    fn rounded_rows() {
        let rows = [(20, (2, 5), (3, 6)), (40, (4, 13), (8, 17)), (80, (1, 31), (3, 41))];
        for (m, zr, rr) in rows {
            assert_eq!(one_significant_digit(&zariski_count(m).unwrap()), zr);
            assert_eq!(one_significant_digit(&reducible_count(m).unwrap()), rr);
        }
        assert_eq!(one_significant_digit(&u(96)), (1, 2));
        assert_eq!(one_significant_digit(&u(7)), (7, 0));
    }

    #[test]
    fn reals() {
        let r = real_counts(10);
        let z = r.z_real.unwrap();
        assert_eq!((z.value, z.argument, z.below_domain), (u(2), 6, true));
        assert!(r.r_real.is_none());
        let r = real_counts(9);
        assert!(r.z_real.is_none());
        let rr = r.r_real.unwrap();
        assert_eq!((rr.value, rr.argument, rr.below_domain), (u(1), 7, true));
        assert_eq!(real_counts(12), RealCounts { z_real: None, r_real: None });
        let z18 = real_counts(18).z_real.unwrap();
        assert_eq!(z18.value, zariski_count(10).unwrap());
        assert!(!z18.below_domain);
        assert_eq!(real_counts(21).r_real.unwrap().value, reducible_count(13).unwrap());
        assert!(real_counts(5).r_real.is_none());
    }

    #[test]
    fn arithmetic() {
        assert_eq!([5, 7, 9].map(|m| arithmetic_lower_bound(m).unwrap()), [1, 3, 10].map(u));
        assert!(arithmetic_lower_bound(8).is_err());
        assert!(arithmetic_lower_bound(3).is_err());
    }

    #[test]
    fn surfaces() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(surface_counts(1).unwrap(), (u(1), r(1, 3)));
        assert_eq!(surface_counts(2).unwrap(), (u(5), r(1, 1)));
        assert_eq!(surface_counts(3).unwrap(), (u(42), r(6, 1)));
    }

    #[test]
    fn reports() {
        let kinds: Vec<CountKind> = count_reports(9).iter().map(|r| r.kind).collect();
        assert_eq!(kinds, vec![CountKind::Z, CountKind::R, CountKind::RReal, CountKind::ZAr]);
        let j = serde_json::to_string(&count_reports(8)[0]).unwrap();
        assert_eq!(j, r#"{"m":8,"k":3,"epsilon":0,"kind":"z","value":6}"#);
    }
}
