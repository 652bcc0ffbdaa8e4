//! Truncated Laurent series in a positive infinitesimal `ε`.
//!
//! A [`HyperReal`] is `Σ a_q ε^q` over integer exponents `q ∈ [-K, K]`.
//! `Ω = 1/ε` is the canonical unlimited unit; every hypernatural scale
//! `λ_r` is represented as `r·Ω`. Terms above `ε^K` are discarded after a
//! product or quotient (they can never dominate); a term below `ε^-K` is an
//! error because it would be the dominant part of the value.

mod parse;
pub mod scalar;
pub mod transcendental;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::ParseHyperError;
pub use scalar::{Coeff, Fixed, DEFAULT_PRECISION, GUARD_DIGITS};

use crate::rational::{floor, format_rational, Rational};

/// Default truncation order `K`.
pub const DEFAULT_ORDER: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("term ε^{exponent} falls outside the truncation window [-{order}, {order}]")]
    TruncationOverflow { exponent: i64, order: u32 },
    #[error("value is unlimited; standard part undefined")]
    Unlimited,
    #[error("negative input {0}")]
    NegativeInput(String),
    #[error(transparent)]
    Parse(#[from] ParseHyperError),
}

pub type Result<T> = std::result::Result<T, HyperError>;

/// Galaxy/monad classification of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Infinitesimal,
    LimitedNoninfinitesimal,
    Unlimited,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Infinitesimal => "infinitesimal",
            Class::LimitedNoninfinitesimal => "limited-noninfinitesimal",
            Class::Unlimited => "unlimited",
        })
    }
}

#[derive(Clone, Debug)]
pub struct HyperReal {
    terms: BTreeMap<i32, Coeff>,
    order: u32,
}

impl HyperReal {
    pub fn zero() -> HyperReal {
        HyperReal { terms: BTreeMap::new(), order: DEFAULT_ORDER }
    }

    pub fn one() -> HyperReal {
        HyperReal::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> HyperReal {
        HyperReal::monomial(Coeff::Exact(r), 0)
    }

    pub fn from_int(n: i64) -> HyperReal {
        HyperReal::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_coeff(c: Coeff) -> HyperReal {
        HyperReal::monomial(c, 0)
    }

    /// `c·ε^q`.
    pub fn monomial(c: Coeff, q: i32) -> HyperReal {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        HyperReal { terms, order: DEFAULT_ORDER }
    }

    pub fn epsilon() -> HyperReal {
        HyperReal::monomial(Coeff::one(), 1)
    }

    /// `Ω = 1/ε`.
    pub fn omega() -> HyperReal {
        HyperReal::monomial(Coeff::one(), -1)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(terms: I) -> HyperReal {
        let mut map: BTreeMap<i32, Coeff> = BTreeMap::new();
        for (q, c) in terms {
            let slot = map.entry(q).or_insert_with(Coeff::zero);
            *slot = slot.clone() + c;
        }
        HyperReal { terms: map, order: DEFAULT_ORDER }.normalized()
    }

    pub fn with_order(mut self, order: u32) -> HyperReal {
        self.order = order;
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Checks that every stored exponent lies in the window.
    pub fn checked(self) -> Result<HyperReal> {
        if let Some((&q, _)) = self.terms.iter().next() {
            if q < -(self.order as i32) {
                return Err(HyperError::TruncationOverflow { exponent: q as i64, order: self.order });
            }
        }
        Ok(self)
    }

    fn normalized(mut self) -> HyperReal {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Coeff)> {
        self.terms.iter().map(|(q, c)| (*q, c))
    }

    pub fn coeff(&self, q: i32) -> Coeff {
        self.terms.get(&q).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    /// Most significant term `(q, a_q)`.
    pub fn leading(&self) -> Option<(i32, &Coeff)> {
        self.terms.iter().next().map(|(q, c)| (*q, c))
    }

    pub fn signum(&self) -> i8 {
        self.leading().map_or(0, |(_, c)| c.signum())
    }

    /// A constant with no `ε` terms.
    pub fn as_standard(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_standard().and_then(|c| c.as_exact().cloned())
    }

    pub fn add(&self, other: &HyperReal) -> HyperReal {
        let mut terms = self.terms.clone();
        for (q, c) in &other.terms {
            let slot = terms.entry(*q).or_insert_with(Coeff::zero);
            *slot = slot.clone() + c.clone();
        }
        HyperReal { terms, order: self.order.max(other.order) }.normalized()
    }

    pub fn sub(&self, other: &HyperReal) -> HyperReal {
        self.add(&other.clone().neg())
    }

    pub fn scale(&self, c: &Coeff) -> HyperReal {
        HyperReal {
            terms: self.terms.iter().map(|(q, a)| (*q, a.clone() * c.clone())).collect(),
            order: self.order,
        }
        .normalized()
    }

    pub fn scale_rational(&self, r: &Rational) -> HyperReal {
        self.scale(&Coeff::Exact(r.clone()))
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> HyperReal {
        HyperReal { terms: self.terms.iter().map(|(q, c)| (q + k, c.clone())).collect(), order: self.order }
    }

    /// Convolution keeping exponents `<= max_exp`.
    fn raw_mul(&self, other: &HyperReal, max_exp: i32) -> HyperReal {
        let mut terms: BTreeMap<i32, Coeff> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let e = p + q;
                if e > max_exp {
                    // exponents only grow along the inner iteration
                    break;
                }
                let slot = terms.entry(e).or_insert_with(Coeff::zero);
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        HyperReal { terms, order: self.order.max(other.order) }.normalized()
    }

    pub fn mul(&self, other: &HyperReal) -> Result<HyperReal> {
        let order = self.order.max(other.order);
        self.raw_mul(other, order as i32).with_order(order).checked()
    }

    /// `1/(1+u)` for `u` with strictly positive exponents, through `ε^n`.
    fn geometric_inverse(u: &HyperReal, n: i32) -> HyperReal {
        let mut sum = HyperReal::one();
        if n < 0 {
            return sum;
        }
        let neg_u = u.clone().neg();
        let mut power = HyperReal::one();
        for _ in 0..n {
            power = power.raw_mul(&neg_u, n);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        sum
    }

    pub fn div(&self, other: &HyperReal) -> Result<HyperReal> {
        let order = self.order.max(other.order);
        let (p, c) = match other.leading() {
            Some((p, c)) => (p, c.clone()),
            None => return Err(HyperError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(HyperReal::zero().with_order(order));
        }
        let c_inv = c.inv().ok_or(HyperError::DivisionByZero)?;
        // other = c ε^p (1 + u)
        let u = other.shift(-p).scale(&c_inv).sub(&HyperReal::one());
        let min_self = self.leading().map(|(q, _)| q).unwrap_or(0);
        let need = order as i32 - min_self + p;
        let inv = HyperReal::geometric_inverse(&u, need);
        let big = i32::MAX / 4;
        let q = self.raw_mul(&inv, big).shift(-p).scale(&c_inv);
        let mut truncated = q;
        truncated.terms.retain(|e, _| *e <= order as i32);
        truncated.with_order(order).checked()
    }

    pub fn powi(&self, n: u32) -> Result<HyperReal> {
        let mut acc = HyperReal::one().with_order(self.order);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Order of the ordered field: sign of the leading coefficient of the difference.
    pub fn compare(&self, other: &HyperReal) -> Ordering {
        match self.sub(other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn classify(&self) -> Class {
        match self.leading() {
            None => Class::Infinitesimal,
            Some((q, _)) if q > 0 => Class::Infinitesimal,
            Some((q, _)) if q < 0 => Class::Unlimited,
            _ => Class::LimitedNoninfinitesimal,
        }
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.classify() == Class::Infinitesimal
    }

    pub fn is_limited(&self) -> bool {
        self.classify() != Class::Unlimited
    }

    /// Standard part: the `ε^0` coefficient of a limited value.
    pub fn st(&self) -> Result<Coeff> {
        if !self.is_limited() {
            return Err(HyperError::Unlimited);
        }
        Ok(self.coeff(0))
    }

    /// Same monad: the difference is infinitesimal.
    pub fn monad_eq(&self, other: &HyperReal) -> bool {
        self.sub(other).is_infinitesimal()
    }

    /// Infinitesimal part `x - st(x)` of a limited value.
    pub fn infinitesimal_part(&self) -> Result<HyperReal> {
        let s = self.st()?;
        Ok(self.sub(&HyperReal::from_coeff(s)))
    }

    /// Exact equality of every stored coefficient.
    pub fn exactly_eq(&self, other: &HyperReal) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(q, c)| match other.terms.get(q) {
                Some(d) => match (c, d) {
                    (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
                    _ => c.to_rational() == d.to_rational(),
                },
                None => false,
            })
    }

    /// True when the value is a nonnegative integer constant.
    pub fn as_natural(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() && !r.is_negative() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Positive unlimited values, or nonnegative integer constants: values that
    /// can stand in a hypernatural slot.
    pub fn is_nat_like(&self) -> bool {
        match self.classify() {
            Class::Unlimited => self.signum() > 0,
            _ => self.as_natural().is_some(),
        }
    }
}

impl Neg for HyperReal {
    type Output = HyperReal;
    fn neg(self) -> HyperReal {
        HyperReal { terms: self.terms.into_iter().map(|(q, c)| (q, -c)).collect(), order: self.order }
    }
}

impl PartialEq for HyperReal {
    fn eq(&self, other: &HyperReal) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for HyperReal {
    fn partial_cmp(&self, other: &HyperReal) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for HyperReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (q, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = mag.is_exact() && mag.as_exact().is_some_and(|r| r.is_one());
            match *q {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("e")?,
                1 => write!(f, "{mag}e")?,
                _ if unit => write!(f, "e^{q}")?,
                _ => write!(f, "{mag}e^{q}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for HyperReal {
    type Err = HyperError;
    fn from_str(s: &str) -> Result<HyperReal> {
        Ok(parse::parse_series(s)?)
    }
}

impl Serialize for HyperReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HyperReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Transcendental functions that can be lifted to limited arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transcendental {
    Sin,
    Cos,
    Exp,
}

impl std::str::FromStr for Transcendental {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sin" => Ok(Transcendental::Sin),
            "cos" => Ok(Transcendental::Cos),
            "exp" => Ok(Transcendental::Exp),
            _ => Err(format!("unknown function `{s}`")),
        }
    }
}

fn scale_for(precision: u32) -> u32 {
    precision + GUARD_DIGITS
}

/// `sin` or `cos` of `k·π/2` for integer `k`: always 0 or ±1.
fn quarter_turn(func: Transcendental, k: &BigInt) -> Rational {
    let m: BigInt = k.mod_floor(&BigInt::from(4));
    let m: u8 = m.try_into().unwrap_or(0);
    let (s, c) = match m {
        0 => (0, 1),
        1 => (1, 0),
        2 => (0, -1),
        _ => (-1, 0),
    };
    Rational::from_integer(BigInt::from(if func == Transcendental::Sin { s } else { c }))
}

/// Taylor assembly `Σ d_k h^k / k!` with `h` infinitesimal.
fn taylor(derivs: &[Coeff], h: &HyperReal, order: u32) -> Result<HyperReal> {
    let mut sum = HyperReal::from_coeff(derivs[0].clone()).with_order(order);
    if h.is_zero() {
        return Ok(sum);
    }
    let mut power = HyperReal::one().with_order(order);
    let mut fact = Rational::one();
    for (k, d) in derivs.iter().enumerate().skip(1) {
        power = power.mul(h)?;
        if power.is_zero() {
            break;
        }
        fact *= Rational::from_integer(BigInt::from(k));
        sum = sum.add(&power.scale(&d.clone()).scale_rational(&fact.recip()));
    }
    Ok(sum)
}

/// `fn(x)` for limited `x`, expanded about `st(x)` through the truncation order.
pub fn lift(func: Transcendental, x: &HyperReal, precision: u32) -> Result<HyperReal> {
    let c = x.st()?;
    let h = x.sub(&HyperReal::from_coeff(c.clone()));
    let order = x.order();
    let n = order as usize + 1;
    let derivs: Vec<Coeff> = match (c.as_exact(), func) {
        (Some(r), Transcendental::Sin | Transcendental::Cos) if r.is_zero() => {
            let base = if func == Transcendental::Sin { 0 } else { 1 };
            (0..n).map(|k| Coeff::Exact(quarter_turn(Transcendental::Sin, &BigInt::from(k + base)))).collect()
        }
        (Some(r), Transcendental::Exp) if r.is_zero() => vec![Coeff::one(); n],
        _ => {
            let scale = scale_for(precision);
            let r = c.to_rational();
            match func {
                Transcendental::Exp => vec![Coeff::Approx(transcendental::exp(&r, scale)); n],
                Transcendental::Sin | Transcendental::Cos => {
                    let s = Coeff::Approx(transcendental::sin(&r, scale));
                    let co = Coeff::Approx(transcendental::cos(&r, scale));
                    let cycle = [s.clone(), co.clone(), -s, -co];
                    let offset = if func == Transcendental::Sin { 0 } else { 1 };
                    (0..n).map(|k| cycle[(k + offset) % 4].clone()).collect()
                }
            }
        }
    };
    taylor(&derivs, &h, order)
}

/// `fn(u·π/2)` for limited `u` and `fn ∈ {sin, cos}`. Exact whenever `u` is an
/// integer constant; otherwise decimal at the given precision.
pub fn lift_half_pi(func: Transcendental, u: &HyperReal, precision: u32) -> Result<HyperReal> {
    assert!(func != Transcendental::Exp, "lift_half_pi only covers sin and cos");
    let c = u.st()?;
    let h = u.sub(&HyperReal::from_coeff(c.clone()));
    let order = u.order();
    let n = order as usize + 1;
    let scale = scale_for(precision);
    let derivs: Vec<Coeff> = match c.as_exact() {
        Some(r) if r.is_integer() => {
            let k = r.to_integer();
            (0..n).map(|j| Coeff::Exact(quarter_turn(func, &(&k + BigInt::from(j))))).collect()
        }
        _ => {
            let r = c.to_rational();
            let s = Coeff::Approx(transcendental::sin_half_pi(&r, scale));
            let co = Coeff::Approx(transcendental::cos_half_pi(&r, scale));
            let cycle = [s.clone(), co.clone(), -s, -co];
            let offset = if func == Transcendental::Sin { 0 } else { 1 };
            (0..n).map(|k| cycle[(k + offset) % 4].clone()).collect()
        }
    };
    if h.is_zero() {
        return Ok(HyperReal::from_coeff(derivs[0].clone()).with_order(order));
    }
    let half_pi = Coeff::Approx(transcendental::pi(scale)) * Coeff::Exact(Rational::new(1.into(), 2.into()));
    taylor(&derivs, &h.scale(&half_pi), order)
}

/// `π` as a decimal coefficient.
pub fn pi(precision: u32) -> Coeff {
    Coeff::Approx(transcendental::pi(scale_for(precision)))
}

/// A hyperreal guaranteed usable as a hypernatural count. Only the
/// contract `st(value·ε)` is tracked; no integer-part certificate is kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NatLike {
    value: HyperReal,
}

impl NatLike {
    pub fn finite(n: u64) -> NatLike {
        NatLike { value: HyperReal::from_rational(Rational::from_integer(BigInt::from(n))) }
    }

    pub fn new(value: HyperReal) -> Result<NatLike> {
        if value.signum() < 0 {
            return Err(HyperError::NegativeInput(value.to_string()));
        }
        Ok(NatLike { value })
    }

    pub fn value(&self) -> &HyperReal {
        &self.value
    }

    pub fn into_value(self) -> HyperReal {
        self.value
    }

    pub fn is_unlimited(&self) -> bool {
        self.value.classify() == Class::Unlimited
    }

    /// `st(λ·ε)`: the standard ratio this count encodes.
    pub fn ratio(&self) -> Result<Coeff> {
        self.value.mul(&HyperReal::epsilon())?.st()
    }
}

/// `Σ_{n=1}^{count} summand` for a constant summand.
pub fn hypersum_const(count: &NatLike, summand: &HyperReal) -> Result<HyperReal> {
    count.value().mul(summand)
}

/// `λ_r = r·Ω`, so that `st(λ_r·ε) = r`; `λ_0 = 0`.
pub fn hypernat_for(r: &Rational) -> Result<NatLike> {
    if r.is_negative() {
        return Err(HyperError::NegativeInput(format_rational(r)));
    }
    NatLike::new(HyperReal::omega().scale_rational(r))
}

/// Finite content of the approximation theorem: `f/m` with `0 <= r - f/m < 1/m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximation {
    pub n: BigInt,
    pub cell: BigInt,
    pub f: BigInt,
    pub m: BigInt,
    pub gap: Rational,
}

impl Approximation {
    pub fn value(&self) -> Rational {
        Rational::new(self.f.clone(), self.m.clone())
    }

    /// `0 <= gap < 1/m`.
    pub fn certified(&self) -> bool {
        !self.gap.is_negative() && self.gap < Rational::new(BigInt::one(), self.m.clone())
    }
}

impl fmt::Display for Approximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}, gap {}", self.f, self.m, format_rational(&self.gap))
    }
}

/// Panics when `m` is zero.
pub fn approximate_shadow(r: &Rational, m: &BigInt) -> Approximation {
    assert!(m.is_positive(), "cell count must be positive");
    let n = floor(r);
    let offset = r - Rational::from_integer(n.clone());
    let cell = floor(&(offset * Rational::from_integer(m.clone())));
    let f = m * &n + &cell;
    let gap = r - Rational::new(f.clone(), m.clone());
    Approximation { n, cell, f, m: m.clone(), gap }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn h(s: &str) -> HyperReal {
        s.parse().unwrap()
    }

    #[test]
    fn omega_times_epsilon_squared_is_epsilon() {
        let r = HyperReal::omega().mul(&HyperReal::epsilon().powi(2).unwrap()).unwrap();
        assert!(r.exactly_eq(&HyperReal::epsilon()));
    }

    #[test]
    fn self_subtraction_vanishes() {
        let x = h("3 + 5e");
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn omega_squared_overflows_small_window() {
        let w = HyperReal::omega().with_order(1);
        assert_eq!(w.mul(&w).unwrap_err(), HyperError::TruncationOverflow { exponent: -2, order: 1 });
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(HyperReal::epsilon().compare(&HyperReal::zero()), Ordering::Greater);
        assert_eq!(HyperReal::one().compare(&h("1 + e")), Ordering::Less);
        assert_eq!(HyperReal::omega().compare(&HyperReal::from_int(1_000_000)), Ordering::Greater);
    }

    #[test]
    fn standard_part_examples() {
        assert_eq!(h("3 + 5e - 2e^3").st().unwrap(), Coeff::from_int(3));
        assert_eq!(HyperReal::omega().st().unwrap_err(), HyperError::Unlimited);
        let m0 = rat(7, 3);
        let lambda = HyperReal::omega().scale_rational(&m0);
        assert_eq!(lambda.mul(&HyperReal::epsilon()).unwrap().st().unwrap(), Coeff::Exact(m0));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(h("1/2e^2").classify(), Class::Infinitesimal);
        assert_eq!(HyperReal::omega().classify(), Class::Unlimited);
        assert_eq!(h("1 + e").classify(), Class::LimitedNoninfinitesimal);
        assert_eq!(HyperReal::zero().classify(), Class::Infinitesimal);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(HyperReal::one().div(&HyperReal::zero()).unwrap_err(), HyperError::DivisionByZero);
    }

    #[test]
    fn unit_inverse_is_exact_within_window() {
        let x = h("2 + 3e - e^2");
        let inv = HyperReal::one().div(&x).unwrap();
        assert!(x.mul(&inv).unwrap().exactly_eq(&HyperReal::one()));
    }

    #[test]
    fn lift_special_cases_are_exact() {
        let s = lift_half_pi(Transcendental::Sin, &HyperReal::one(), 50).unwrap();
        assert!(s.exactly_eq(&HyperReal::one()));
        let c = lift_half_pi(Transcendental::Cos, &HyperReal::one(), 50).unwrap();
        assert!(c.is_zero());
        let e = lift(Transcendental::Sin, &HyperReal::epsilon(), 50).unwrap();
        assert!(e.is_exact());
        assert_eq!(e.coeff(3), Coeff::Exact(rat(-1, 6)));
    }

    #[test]
    fn lift_sixth_turn_is_half_to_forty_digits() {
        let u = HyperReal::from_rational(rat(1, 3));
        let s = lift_half_pi(Transcendental::Sin, &u, 50).unwrap();
        let diff = (s.st().unwrap().to_rational() - rat(1, 2)).abs();
        assert!(diff < Rational::new(1.into(), scalar::pow10(40)));
    }

    #[test]
    fn lift_rejects_unlimited() {
        assert_eq!(lift(Transcendental::Exp, &HyperReal::omega(), 50).unwrap_err(), HyperError::Unlimited);
    }

    #[test]
    fn hypersum_examples() {
        let m0 = rat(3, 2);
        let lambda = hypernat_for(&m0).unwrap();
        let mass = hypersum_const(&lambda, &HyperReal::epsilon()).unwrap();
        assert_eq!(mass.st().unwrap(), Coeff::Exact(m0));
        let huge = NatLike::new(HyperReal::omega().powi(2).unwrap()).unwrap();
        let total = hypersum_const(&huge, &HyperReal::epsilon()).unwrap();
        assert!(total.exactly_eq(&HyperReal::omega()));
        assert_eq!(total.classify(), Class::Unlimited);
        let five = hypersum_const(&NatLike::finite(5), &HyperReal::epsilon()).unwrap();
        assert!(five.exactly_eq(&h("5e")));
        assert!(five.is_infinitesimal());
    }

    #[test]
    fn hypernat_examples() {
        let l = hypernat_for(&rat(5, 2)).unwrap();
        assert_eq!(l.ratio().unwrap(), Coeff::Exact(rat(5, 2)));
        assert!(hypernat_for(&int(0)).unwrap().value().is_zero());
        assert!(hypernat_for(&int(1)).unwrap().is_unlimited());
        assert!(matches!(hypernat_for(&rat(-1, 2)), Err(HyperError::NegativeInput(_))));
    }

    #[test]
    fn approximation_examples() {
        let a = approximate_shadow(&rat(1, 3), &BigInt::from(1000));
        assert_eq!(a.f, BigInt::from(333));
        assert_eq!(a.gap, rat(1, 3000));
        assert_eq!(a.to_string(), "333/1000, gap 1/3000");
        let b = approximate_shadow(&int(2), &BigInt::from(10));
        assert_eq!((b.f.clone(), b.gap.clone()), (BigInt::from(20), int(0)));
        let c = approximate_shadow(&rat(-7, 4), &BigInt::from(4));
        assert_eq!((c.n, c.cell, c.f), (BigInt::from(-2), BigInt::from(1), BigInt::from(-7)));
        assert!(c.gap.is_zero());
    }

    #[test]
    fn display_round_trips() {
        let x = h("3 + 5e - 2e^3 + 7e^-1");
        assert_eq!(x.to_string(), "7e^-1 + 3 + 5e - 2e^3");
        assert!(x.to_string().parse::<HyperReal>().unwrap().exactly_eq(&x));
    }
}
