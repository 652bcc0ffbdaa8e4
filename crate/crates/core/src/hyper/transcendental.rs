//! Fixed-point evaluation of pi, sin, cos and exp on big integers.
//!
//! All routines take the target scale (digits after the point) and work
//! internally with ten extra digits before rounding back.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::scalar::{div_round, pow10, Fixed};
use crate::rational::Rational;

const WORK_GUARD: u32 = 10;

fn atan_inv(n: u32, one: &BigInt) -> BigInt {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = one / BigInt::from(n);
    let mut sum = power.clone();
    let mut k = 1u32;
    loop {
        power /= &n2;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi_raw(work: u32) -> BigInt {
    let one = pow10(work);
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    atan_inv(5, &one) * 16 - atan_inv(239, &one) * 4
}

pub fn pi(scale: u32) -> Fixed {
    let work = scale + WORK_GUARD;
    Fixed::from_raw(div_round(&pi_raw(work), &pow10(WORK_GUARD)), scale)
}

fn to_work(x: &Rational, work: u32) -> BigInt {
    div_round(&(x.numer() * pow10(work)), x.denom())
}

fn mul_work(a: &BigInt, b: &BigInt, one: &BigInt) -> BigInt {
    div_round(&(a * b), one)
}

/// Reduces `x` into `[-pi, pi]` in working units.
fn reduce_angle(x: BigInt, work: u32) -> BigInt {
    let pi = pi_raw(work);
    let two_pi = &pi * 2;
    if x.abs() <= pi {
        return x;
    }
    let k = div_round(&x, &two_pi);
    x - k * two_pi
}

fn sin_cos_series(x: &BigInt, one: &BigInt, start_with_x: bool) -> BigInt {
    let x2 = mul_work(x, x, one);
    let (mut term, mut n) = if start_with_x { (x.clone(), 1u32) } else { (one.clone(), 0u32) };
    let mut sum = term.clone();
    loop {
        term = mul_work(&term, &x2, one);
        term = -term / BigInt::from((n + 1) * (n + 2));
        n += 2;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

pub fn sin(x: &Rational, scale: u32) -> Fixed {
    let work = scale + WORK_GUARD;
    let one = pow10(work);
    let r = reduce_angle(to_work(x, work), work);
    let s = sin_cos_series(&r, &one, true);
    Fixed::from_raw(div_round(&s, &pow10(WORK_GUARD)), scale)
}

pub fn cos(x: &Rational, scale: u32) -> Fixed {
    let work = scale + WORK_GUARD;
    let one = pow10(work);
    let r = reduce_angle(to_work(x, work), work);
    let c = sin_cos_series(&r, &one, false);
    Fixed::from_raw(div_round(&c, &pow10(WORK_GUARD)), scale)
}

/// Angle `u * pi / 2` for rational `u`, computed at working precision.
fn half_pi_multiple(u: &Rational, work: u32) -> BigInt {
    let pi = pi_raw(work);
    div_round(&(pi * u.numer()), &(u.denom() * 2))
}

pub fn sin_half_pi(u: &Rational, scale: u32) -> Fixed {
    let work = scale + WORK_GUARD;
    let one = pow10(work);
    let r = reduce_angle(half_pi_multiple(u, work), work);
    let s = sin_cos_series(&r, &one, true);
    Fixed::from_raw(div_round(&s, &pow10(WORK_GUARD)), scale)
}

pub fn cos_half_pi(u: &Rational, scale: u32) -> Fixed {
    let work = scale + WORK_GUARD;
    let one = pow10(work);
    let r = reduce_angle(half_pi_multiple(u, work), work);
    let c = sin_cos_series(&r, &one, false);
    Fixed::from_raw(div_round(&c, &pow10(WORK_GUARD)), scale)
}

pub fn exp(x: &Rational, scale: u32) -> Fixed {
    // halve until |x| < 1/2, then square back; each squaring costs < 1 digit
    let mut halvings = 0u32;
    let mut y = x.clone();
    let half = Rational::new(1.into(), 2.into());
    while y.abs() >= half {
        y /= Rational::from_integer(2.into());
        halvings += 1;
    }
    let work = scale + WORK_GUARD + halvings;
    let one = pow10(work);
    let yw = to_work(&y, work);
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut n = 1u32;
    loop {
        term = mul_work(&term, &yw, &one) / BigInt::from(n);
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..halvings {
        sum = mul_work(&sum, &sum, &one);
    }
    Fixed::from_raw(div_round(&sum, &pow10(WORK_GUARD + halvings)), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974945";

    #[test]
    fn pi_matches_reference_digits() {
        assert_eq!(pi(60).to_decimal_string(60), PI_60);
    }

    #[test]
    fn sin_of_sixth_turn_is_half() {
        let s = sin_half_pi(&rat(1, 3), 60);
        let diff = (s.to_rational() - rat(1, 2)).abs();
        assert!(diff < Rational::new(1.into(), pow10(55)));
    }

    #[test]
    fn cos_zero_and_large_arguments() {
        assert_eq!(cos(&int(0), 30).to_rational(), int(1));
        assert_eq!(sin(&int(1), 40).to_decimal_string(40), "0.8414709848078965066525023216302989996226");
        // 401 quarter turns reduce to one
        let big = sin_half_pi(&int(401), 40).to_rational();
        assert!((big - int(1)).abs() < Rational::new(1.into(), pow10(35)));
    }

    #[test]
    fn exp_of_one() {
        let e = exp(&int(1), 40).to_decimal_string(40);
        assert_eq!(e, "2.7182818284590452353602874713526624977572");
        let inv = exp(&int(-3), 40).to_rational() * exp(&int(3), 40).to_rational();
        assert!((inv - int(1)).abs() < Rational::new(1.into(), pow10(35)));
    }
}
