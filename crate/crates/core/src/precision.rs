//! Arbitrary-precision decimal expansion of exact values.
//!
//! Constants are computed in binary fixed point (an integer `X` standing for
//! `X / 2^bits`): π by Machin's formula, `log m` by reducing `m` against the
//! nearest power of two and summing the `atanh` series. The exact rational
//! coefficients are applied afterwards, and the working precision is raised
//! until the accumulated error is well below the last requested digit.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, Rational};

/// Upper bound on requested significant digits.
pub const MAX_DIGITS: usize = 10_000;

const GUARD_DIGITS: usize = 10;
const GUARD_BITS: u64 = 32;
/// Per-constant error, in units of the last bit, after the guard bits are dropped.
const CONSTANT_ULPS: u64 = 2;

/// `Σ_k (−1)^k / ((2k+1) x^{2k+1})`, scaled by `2^bits`.
fn atan_inverse(x: u64, bits: u64) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `Σ_k y^{2k+1} / (2k+1)` with `y = num / den`, `|y| < 1`, scaled by `2^bits`.
fn atanh_ratio(num: &BigInt, den: &BigInt, bits: u64) -> BigInt {
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (num << bits) / den;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = power * &num2 / &den2;
        k += 1;
    }
    sum
}

/// π · 2^bits, within a couple of units in the last place.
pub fn pi_fixed(bits: u64) -> BigInt {
    let work = bits + GUARD_BITS;
    let pi = atan_inverse(5, work) * 16 - atan_inverse(239, work) * 4;
    pi >> GUARD_BITS
}

fn ln2_work(work: u64) -> BigInt {
    atanh_ratio(&BigInt::one(), &BigInt::from(3), work) * 2
}

/// log(m) · 2^bits for `m >= 1`, within a couple of units in the last place.
pub fn ln_fixed(m: u64, bits: u64) -> BigInt {
    assert!(m >= 1, "log of zero");
    let work = bits + GUARD_BITS;
    // m = 2^e · r with r in [3/4, 3/2)
    let mut e = 63 - u64::from(m.leading_zeros());
    let m_big = BigInt::from(m);
    if &m_big * 2 >= BigInt::from(3u8) << e {
        e += 1;
    }
    let pow2 = BigInt::one() << e;
    let reduced = atanh_ratio(&(&m_big - &pow2), &(&m_big + &pow2), work) * 2;
    let total = ln2_work(work) * BigInt::from(e) + reduced;
    total >> GUARD_BITS
}

fn mul_rational(x: &BigInt, c: &Rational) -> BigInt {
    x * c.numer() / c.denom()
}

/// Fixed-point approximation of `value` together with an error bound, both
/// in units of `2^-bits`.
fn evaluate_fixed(value: &ExactValue, bits: u64) -> (BigInt, BigInt) {
    match value {
        ExactValue::PiMultiple(c) => {
            let x = mul_rational(&pi_fixed(bits), c);
            let err = ceil_abs(c) * CONSTANT_ULPS + 1;
            (x, err)
        }
        ExactValue::LogCombination(terms) => {
            let mut x = BigInt::zero();
            let mut err = BigInt::one();
            for (&base, c) in terms {
                x += mul_rational(&ln_fixed(base, bits), c);
                err += ceil_abs(c) * CONSTANT_ULPS + 1;
            }
            (x, err)
        }
    }
}

fn ceil_abs(c: &Rational) -> BigInt {
    c.abs().ceil().to_integer()
}

fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u8), e)
}

/// Decimal expansion of `value` to `digits` significant digits, truncated
/// toward zero. The result is within one unit of the last digit.
///
/// Zero renders as `0.` followed by `digits` zeros.
pub fn decimal_string(value: &ExactValue, digits: usize) -> Result<String> {
    if digits > MAX_DIGITS {
        return Err(Error::DigitsCap { requested: digits, cap: MAX_DIGITS });
    }
    if digits == 0 {
        return Err(Error::Domain("at least one digit is required".into()));
    }
    if value.is_zero() {
        return Ok(format!("0.{}", "0".repeat(digits)));
    }

    let target = digits + GUARD_DIGITS;
    let mut bits = (target as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 64;
    // a normalized combination can still vanish (log 6 − log 2 − log 3);
    // past this precision it is reported as zero
    let max_bits = bits * 8 + 4096;
    loop {
        let (x, err) = evaluate_fixed(value, bits);
        // need |x| >= err · 10^target so the leading digits are settled
        if x.abs() >= err * pow10(target) {
            return Ok(format_fixed(&x, bits, digits));
        }
        if bits > max_bits {
            return Ok(format!("0.{}", "0".repeat(digits)));
        }
        bits *= 2;
    }
}

/// Truncates `x / 2^bits` to `digits` significant decimal digits.
fn format_fixed(x: &BigInt, bits: u64, digits: usize) -> String {
    let negative = x.sign() == Sign::Minus;
    let mag = x.abs();
    // first guess at the decimal exponent of the leading digit
    let approx = (mag.bits() as f64 - bits as f64) * std::f64::consts::LOG10_2;
    let mut exp10 = approx.floor() as i64;
    let mantissa = loop {
        let shift = digits as i64 - 1 - exp10;
        let scaled = if shift >= 0 {
            (&mag * pow10(shift as usize)) >> bits
        } else {
            (&mag >> bits) / pow10((-shift) as usize)
        };
        let len = scaled.to_string().len();
        if scaled.is_zero() || len < digits {
            exp10 -= 1;
        } else if len > digits {
            exp10 += 1;
        } else {
            break scaled.to_string();
        }
    };

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp10 >= 0 {
        let int_len = exp10 as usize + 1;
        if int_len >= digits {
            out.push_str(&mantissa);
            out.push_str(&"0".repeat(int_len - digits));
        } else {
            out.push_str(&mantissa[..int_len]);
            out.push('.');
            out.push_str(&mantissa[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp10 - 1) as usize));
        out.push_str(&mantissa);
    }
    out
}

/// Rounds a fixed-point value to the nearest `f64`.
pub fn fixed_to_f64(x: &BigInt, bits: u64) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top * 2f64.powi(shift as i32 - bits as i32)
}
