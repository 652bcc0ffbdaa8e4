//! Coefficient field for [`HyperReal`](super::HyperReal) series.
//!
//! Coefficients stay exact rationals until a transcendental value enters
//! the computation. From then on they are fixed-point decimals carrying
//! `precision + GUARD_DIGITS` digits after the point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};

/// Digits carried beyond the configured precision.
pub const GUARD_DIGITS: u32 = 10;

/// Default number of significant decimal places for transcendental values.
pub const DEFAULT_PRECISION: u32 = 50;

pub(crate) fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Divides rounding half away from zero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (na, da) = (n.abs(), d.abs());
    let q: BigInt = (na * 2 + &da) / (da * 2);
    if (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus) {
        -q
    } else {
        q
    }
}

/// Fixed-point decimal `mantissa / 10^scale`.
#[derive(Clone, Debug)]
pub struct Fixed {
    mantissa: BigInt,
    scale: u32,
}

impl Fixed {
    pub fn from_rational(r: &Rational, scale: u32) -> Fixed {
        let n = r.numer() * pow10(scale);
        Fixed { mantissa: div_round(&n, r.denom()), scale }
    }

    pub(crate) fn from_raw(mantissa: BigInt, scale: u32) -> Fixed {
        Fixed { mantissa, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Precision (significant decimals) this value was produced at.
    pub fn precision(&self) -> u32 {
        self.scale.saturating_sub(GUARD_DIGITS)
    }

    pub fn rescale(&self, scale: u32) -> Fixed {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Fixed {
                mantissa: &self.mantissa * pow10(scale - self.scale),
                scale,
            },
            Ordering::Less => Fixed {
                mantissa: div_round(&self.mantissa, &pow10(self.scale - scale)),
                scale,
            },
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    /// Magnitude below `10^-precision`: indistinguishable from rounding noise.
    pub fn is_negligible(&self) -> bool {
        self.mantissa.abs() < pow10(GUARD_DIGITS.min(self.scale))
    }

    pub fn signum(&self) -> i8 {
        if self.is_negligible() {
            0
        } else if self.mantissa.is_negative() {
            -1
        } else {
            1
        }
    }

    fn add(&self, other: &Fixed) -> Fixed {
        let s = self.scale.max(other.scale);
        Fixed { mantissa: self.rescale(s).mantissa + other.rescale(s).mantissa, scale: s }
    }

    fn mul(&self, other: &Fixed) -> Fixed {
        let s = self.scale.max(other.scale);
        let raw = &self.mantissa * &other.mantissa;
        let shift = self.scale + other.scale - s;
        Fixed { mantissa: div_round(&raw, &pow10(shift)), scale: s }
    }

    fn div(&self, other: &Fixed) -> Fixed {
        let s = self.scale.max(other.scale);
        let n = &self.mantissa * pow10(s + other.scale - self.scale);
        Fixed { mantissa: div_round(&n, &other.mantissa), scale: s }
    }

    /// Decimal rendering with `digits` places after the point.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let v = self.rescale(digits);
        let neg = v.mantissa.is_negative();
        let m = v.mantissa.abs().to_string();
        let d = digits as usize;
        let padded = if m.len() <= d { format!("{}{}", "0".repeat(d + 1 - m.len()), m) } else { m };
        let (ip, fp) = padded.split_at(padded.len() - d);
        let sign = if neg && v.mantissa.sign() != Sign::NoSign { "-" } else { "" };
        if d == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

/// A series coefficient: exact rational or transcendental-tainted decimal.
#[derive(Clone, Debug)]
pub enum Coeff {
    Exact(Rational),
    Approx(Fixed),
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Exact(Rational::zero())
    }

    pub fn one() -> Coeff {
        Coeff::Exact(Rational::one())
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff::Exact(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Coeff::Exact(r) => Some(r),
            Coeff::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(r) => r.is_zero(),
            Coeff::Approx(f) => f.is_negligible(),
        }
    }

    pub fn signum(&self) -> i8 {
        match self {
            Coeff::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Coeff::Approx(f) => f.signum(),
        }
    }

    /// Rational value; decimals convert exactly from their digits.
    pub fn to_rational(&self) -> Rational {
        match self {
            Coeff::Exact(r) => r.clone(),
            Coeff::Approx(f) => f.to_rational(),
        }
    }

    pub fn to_fixed(&self, scale: u32) -> Fixed {
        match self {
            Coeff::Exact(r) => Fixed::from_rational(r, scale),
            Coeff::Approx(f) => f.rescale(scale),
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// True when both values agree: exactly if both are exact, otherwise
    /// within `10^-(p-10)` where `p` is the coarser precision involved.
    pub fn approx_eq(&self, other: &Coeff) -> bool {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
            _ => {
                let p = match (self, other) {
                    (Coeff::Approx(a), Coeff::Approx(b)) => a.precision().min(b.precision()),
                    (Coeff::Approx(a), _) | (_, Coeff::Approx(a)) => a.precision(),
                    _ => unreachable!(),
                };
                let diff = (self.clone() - other.clone()).to_rational().abs();
                diff < Rational::new(BigInt::one(), pow10(p.saturating_sub(10)))
            }
        }
    }

    /// Exact identity with a rational: decimals qualify only when every
    /// carried digit matches.
    pub fn is_exactly(&self, r: &Rational) -> bool {
        match self {
            Coeff::Exact(v) => v == r,
            Coeff::Approx(f) => &f.to_rational() == r,
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Exact(r) => Coeff::Exact(r.recip()),
            Coeff::Approx(f) => Coeff::Approx(Fixed::from_rational(&Rational::one(), f.scale).div(f)),
        })
    }

    pub fn abs(&self) -> Coeff {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Coeff) -> bool {
        self.approx_eq(other)
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Coeff) -> Option<Ordering> {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a.partial_cmp(b),
            _ => Some(match (self.clone() - other.clone()).signum() {
                -1 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            }),
        }
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Coeff {
        Coeff::Exact(r)
    }
}

impl From<Fixed> for Coeff {
    fn from(f: Fixed) -> Coeff {
        Coeff::Approx(f)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            (Coeff::Approx(a), Coeff::Approx(b)) => Coeff::Approx(a.add(&b)),
            (Coeff::Approx(a), Coeff::Exact(b)) | (Coeff::Exact(b), Coeff::Approx(a)) => {
                let bf = Fixed::from_rational(&b, a.scale);
                Coeff::Approx(a.add(&bf))
            }
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::Exact(-a),
            Coeff::Approx(a) => Coeff::Approx(Fixed { mantissa: -a.mantissa, scale: a.scale }),
        }
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        self + (-rhs)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a * b),
            // an exact zero annihilates decimals exactly
            (Coeff::Exact(z), _) | (_, Coeff::Exact(z)) if z.is_zero() => Coeff::zero(),
            (Coeff::Approx(a), Coeff::Approx(b)) => Coeff::Approx(a.mul(&b)),
            (Coeff::Approx(a), Coeff::Exact(b)) | (Coeff::Exact(b), Coeff::Approx(a)) => {
                let n = a.mantissa * b.numer();
                Coeff::Approx(Fixed { mantissa: div_round(&n, b.denom()), scale: a.scale })
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(r) => f.write_str(&format_rational(r)),
            Coeff::Approx(x) => f.write_str(&x.to_decimal_string(x.precision())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn fixed_round_trips_terminating_rationals() {
        let f = Fixed::from_rational(&rat(-7, 8), 20);
        assert_eq!(f.to_rational(), rat(-7, 8));
        assert_eq!(f.to_decimal_string(4), "-0.8750");
    }

    #[test]
    fn div_round_is_half_away_from_zero() {
        assert_eq!(div_round(&BigInt::from(5), &BigInt::from(2)), BigInt::from(3));
        assert_eq!(div_round(&BigInt::from(-5), &BigInt::from(2)), BigInt::from(-3));
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(-2)), BigInt::from(-4));
        assert_eq!(div_round(&BigInt::from(4), &BigInt::from(3)), BigInt::from(1));
    }

    #[test]
    fn mixed_arithmetic_turns_decimal() {
        let third = Coeff::Approx(Fixed::from_rational(&rat(1, 3), 60));
        let three = Coeff::from_int(3);
        let prod = third * three;
        assert!(!prod.is_exact());
        assert!(prod.approx_eq(&Coeff::one()));
        assert!(!prod.is_exactly(&rat(1, 1)));
    }

    #[test]
    fn exact_zero_annihilates_decimals() {
        let x = Coeff::Approx(Fixed::from_rational(&rat(22, 7), 60));
        assert!((Coeff::zero() * x).is_exact());
    }

    #[test]
    fn small_decimals_are_negligible() {
        let tiny = Fixed::from_raw(BigInt::from(123), 60);
        assert!(tiny.is_negligible());
        assert_eq!(Coeff::Approx(tiny).signum(), 0);
    }
}
