//! Exact rational values and their report renderings.
//!
//! All metric arithmetic in this crate is exact: values are ratios of
//! integers, reduced, with no floating point until a report is rendered.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

/// The exact rational type used for every metric value.
pub type Rational = num_rational::BigRational;

/// Builds a rational from small integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders a rational as `"num/den"`, always including the denominator.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders `(numer, denom)` as a pair of `i64` for JSON reports.
///
/// Returns `None` when the value does not fit; report consumers only ever
/// see ratios of modest integers, so in practice this always succeeds.
pub fn fraction_pair(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Number of significant digits used for decimal renderings in reports.
pub const REPORT_SIG_DIGITS: usize = 12;

/// Renders a rational in plain decimal notation with a fixed number of
/// significant digits (round half away from zero), e.g. `9/2` with 12
/// digits becomes `"4.50000000000"`.
pub fn decimal_string(r: &Rational, sig_digits: usize) -> String {
    assert!(sig_digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().clone();

    let int_digits = decimal_digits(&(&num / &den));
    if int_digits >= sig_digits {
        // Value is at least 10^(sig-1); round off the excess integer digits.
        let mut drop = int_digits - sig_digits;
        let mut q = round_div(&num, &(&den * pow10(drop)));
        if decimal_digits(&q) > sig_digits {
            q = round_div(&q, &pow10(1));
            drop += 1;
        }
        return format!("{sign}{q}{}", "0".repeat(drop));
    }
    if int_digits > 0 {
        let mut frac = sig_digits - int_digits;
        let mut scaled = round_div(&(&num * pow10(frac)), &den);
        if decimal_digits(&scaled) > sig_digits {
            // Rounding carried into a new leading digit (e.g. 9.99... -> 10.0...).
            frac -= 1;
            scaled = round_div(&(&num * pow10(frac)), &den);
        }
        return place_point(sign, &scaled, frac);
    }
    // |value| < 1: count leading zeros after the point.
    let mut zeros = 0usize;
    while &num * pow10(zeros + 1) < den {
        zeros += 1;
    }
    let mut scaled = round_div(&(&num * pow10(zeros + sig_digits)), &den);
    if decimal_digits(&scaled) > sig_digits {
        if zeros == 0 {
            // 0.999... rounded up to 1.0...
            let scaled = round_div(&scaled, &pow10(1));
            return place_point(sign, &scaled, sig_digits - 1);
        }
        zeros -= 1;
        scaled = round_div(&(&num * pow10(zeros + sig_digits)), &den);
    }
    format!("{sign}0.{}{}", "0".repeat(zeros), scaled)
}

fn place_point(sign: &str, scaled: &BigInt, frac: usize) -> String {
    let s = scaled.to_string();
    if frac == 0 {
        return format!("{sign}{s}");
    }
    let split = s.len() - frac;
    format!("{sign}{}.{}", &s[..split], &s[split..])
}

fn decimal_digits(x: &BigInt) -> usize {
    if x.is_zero() {
        0
    } else {
        x.to_string().trim_start_matches('-').len()
    }
}

fn pow10(exp: usize) -> BigInt {
    BigInt::from(10u32).pow(exp as u32)
}

// Round half away from zero; both arguments positive.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(num.sign() != Sign::Minus && den.sign() == Sign::Plus);
    (num * 2 + den) / (den * 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_rendering_keeps_denominator() {
        assert_eq!(fraction_string(&ratio(9, 2)), "9/2");
        assert_eq!(fraction_string(&int(6)), "6/1");
        assert_eq!(fraction_string(&ratio(-8, 15)), "-8/15");
    }

    #[test]
    fn decimal_rendering_fixed_significant_digits() {
        assert_eq!(decimal_string(&ratio(9, 2), 12), "4.50000000000");
        assert_eq!(decimal_string(&int(3), 12), "3.00000000000");
        assert_eq!(decimal_string(&ratio(45923, 1980), 12), "23.1934343434");
        assert_eq!(decimal_string(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(decimal_string(&ratio(-8, 15), 12), "-0.533333333333");
        assert_eq!(decimal_string(&ratio(34, 5), 3), "6.80");
        assert_eq!(decimal_string(&int(0), 12), "0");
    }

    #[test]
    fn decimal_rendering_rounds_half_away() {
        assert_eq!(decimal_string(&ratio(25, 10), 1), "3");
        assert_eq!(decimal_string(&ratio(15, 1000), 1), "0.02");
        assert_eq!(decimal_string(&ratio(999, 1000), 2), "1.0");
        assert_eq!(decimal_string(&ratio(9999, 10), 3), "1000");
    }

    #[test]
    fn decimal_rendering_small_values() {
        assert_eq!(decimal_string(&ratio(1, 800), 3), "0.00125");
        assert_eq!(decimal_string(&ratio(1, 1024), 4), "0.0009766");
    }
}
