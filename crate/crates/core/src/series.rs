//! Exact truncated Maclaurin series over the Gaussian rationals.
//!
//! Everything here is exact. A [`TruncatedSeries`] carries its order
//! explicitly, so "the zero series of order m" is a well-defined value even
//! when every coefficient vanishes.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, parity_sign, Rational};

/// A complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_integer(re: i64) -> Self {
        Self::from_real(Rational::from_integer(re.into()))
    }

    /// `i · b`
    pub fn imaginary(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn zero() -> Self {
        Self::from_real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_real(Rational::one())
    }

    /// `i^e` for any integer `e`.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::from_integer(1),
            1 => Self::imaginary(Rational::one()),
            2 => Self::from_integer(-1),
            _ => Self::imaginary(-Rational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self { re: &self.re * factor, im: &self.im * factor }
    }

    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the underlying rationals.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let denom = rhs.norm_sqr();
        let num = self * &rhs.conj();
        GaussianRational { re: num.re / &denom, im: num.im / denom }
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

/// Maclaurin coefficients `c_0 .. c_order`; `coeffs[j]` multiplies `x^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<GaussianRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![GaussianRational::zero(); order + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a truncated series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> Option<&GaussianRational> {
        self.coeffs.get(j)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Sum at the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|j| &self.coeffs[j] + &other.coeffs[j]).collect();
        Self { coeffs }
    }

    /// Cauchy product at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

fn factorial(j: usize) -> Rational {
    Rational::from_integer((1..=j).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
}

/// Series of `P_m(scale · x)`, where `P_m` is the order-`m` Maclaurin
/// polynomial of `e^x`. `P_{-1}` is the zero polynomial, returned as the
/// zero series of order 0.
pub fn maclaurin_exp(m: i64, scale: &GaussianRational) -> Result<TruncatedSeries> {
    if m < -1 {
        return Err(Error::Domain(format!("maclaurin_exp needs m >= -1, got {m}")));
    }
    if m == -1 {
        return Ok(TruncatedSeries::zero(0));
    }
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut power = GaussianRational::one();
    for j in 0..=m as usize {
        let inv_fact = factorial(j).recip();
        coeffs.push(power.scale(&inv_fact));
        power = &power * scale;
    }
    Ok(TruncatedSeries { coeffs })
}

fn sine_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|j| {
            if j % 2 == 0 {
                GaussianRational::zero()
            } else {
                let sign = parity_sign(((j - 1) / 2) as i64);
                GaussianRational::from_real(factorial(j).recip() * Rational::from_integer(sign.into()))
            }
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// Maclaurin coefficients of `sinⁿx` through `x^order`, by repeated
/// multiplication of the sine series.
pub fn sin_pow_series(n: u32, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::Domain("sin_pow_series needs n >= 1".into()));
    }
    let sine = sine_series(order);
    let mut acc = sine.clone();
    for _ in 1..n {
        acc = acc.mul(&sine);
    }
    Ok(acc)
}

/// One term `coefficient · e^{i · frequency · x}` of an exponential sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialTerm {
    pub coefficient: GaussianRational,
    pub frequency: i64,
}

/// `1 / (2i)^n`
fn inverse_two_i_pow(n: u32) -> GaussianRational {
    let two_pow = Rational::from_integer(BigInt::one() << n);
    GaussianRational::i_pow(-i64::from(n)).scale(&two_pow.recip())
}

/// `sinⁿx = (2i)^{-n} Σ_{k=0}^{n} (-1)^k C(n,k) e^{i(n-2k)x}`, one term per `k`.
pub fn sin_pow_exponential_coeffs(n: u32) -> Result<Vec<ExponentialTerm>> {
    if n == 0 {
        return Err(Error::Domain("sin_pow_exponential_coeffs needs n >= 1".into()));
    }
    let prefactor = inverse_two_i_pow(n);
    let n = i64::from(n);
    (0..=n)
        .map(|k| {
            let weight = binomial(n, k)? * parity_sign(k);
            Ok(ExponentialTerm {
                coefficient: prefactor.scale(&Rational::from_integer(weight)),
                frequency: n - 2 * k,
            })
        })
        .collect()
}

/// The exponential expansion of `sinⁿx` folded onto positive frequencies.
///
/// Term `k` and term `n - k` share the frequency magnitude `n - 2k`; the
/// second one carries `(-1)^n` times the first coefficient. Only the terms
/// `k <= ⌊(n-1)/2⌋` are kept, plus the zero-frequency term `k = n/2` for even `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfRangeExpansion {
    pub n: u32,
    /// Terms with strictly positive frequency.
    pub terms: Vec<ExponentialTerm>,
    /// Coefficient of `e^{0}`, present only for even `n`.
    pub zero_frequency: Option<GaussianRational>,
}

impl HalfRangeExpansion {
    pub fn new(n: u32) -> Result<Self> {
        let full = sin_pow_exponential_coeffs(n)?;
        let half = ((n - 1) / 2) as usize;
        let terms = full[..=half].to_vec();
        let zero_frequency = n.is_multiple_of(2).then(|| full[n as usize / 2].coefficient.clone());
        Ok(Self { n, terms, zero_frequency })
    }

    /// Sign relating term `k` to its partner `n - k`.
    pub fn partner_sign(&self) -> i32 {
        parity_sign(self.n.into())
    }

    /// Re-expands into the `k = 0..n` form, ordered by `k`.
    pub fn to_full_range(&self) -> Vec<ExponentialTerm> {
        let sign = GaussianRational::from_integer(self.partner_sign().into());
        let mut out = self.terms.clone();
        if let Some(c) = &self.zero_frequency {
            out.push(ExponentialTerm { coefficient: c.clone(), frequency: 0 });
        }
        out.extend(self.terms.iter().rev().map(|t| ExponentialTerm {
            coefficient: &t.coefficient * &sign,
            frequency: -t.frequency,
        }));
        out
    }
}

/// `Σ coefficient · P_m(i · frequency · x)` as a series of order `m`
/// (order 0 when `m = -1`).
pub fn exponential_combination(terms: &[ExponentialTerm], m: i64) -> Result<TruncatedSeries> {
    let order = m.max(0) as usize;
    let mut acc = TruncatedSeries::zero(order);
    for term in terms {
        let scale = GaussianRational::imaginary(Rational::from_integer(term.frequency.into()));
        let p = maclaurin_exp(m, &scale)?;
        let padded = if p.order() < order { TruncatedSeries::zero(order).add(&p) } else { p };
        acc = acc.add(&padded.scale(&term.coefficient));
    }
    Ok(acc)
}

/// Whether `(2i)^{-n} Σ_{k=0}^{n} (-1)^k C(n,k) P_{q-2}(i(n-2k)x)` is the zero
/// series of order `q - 2`. It is the order-`(q-2)` Maclaurin polynomial of
/// `sinⁿx`, which vanishes because `sinⁿx` has a zero of order `n >= q`.
pub fn maclaurin_combination_is_zero(n: u32, q: u32) -> Result<bool> {
    if q == 0 || n < q {
        return Err(Error::InvalidDomain { n: n.into(), q: q.into() });
    }
    let terms = sin_pow_exponential_coeffs(n)?;
    Ok(exponential_combination(&terms, i64::from(q) - 2)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::alternating_sum;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn real(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_real(r(n, d))
    }

    #[test]
    fn maclaurin_exp_examples() {
        let zero = maclaurin_exp(-1, &GaussianRational::from_integer(5)).unwrap();
        assert_eq!(zero, TruncatedSeries::zero(0));

        let p2 = maclaurin_exp(2, &GaussianRational::one()).unwrap();
        assert_eq!(p2.coeffs(), &[real(1, 1), real(1, 1), real(1, 2)]);

        let p3 = maclaurin_exp(3, &GaussianRational::imaginary(r(2, 1))).unwrap();
        let expected = vec![
            real(1, 1),
            GaussianRational::imaginary(r(2, 1)),
            real(-2, 1),
            GaussianRational::imaginary(r(-4, 3)),
        ];
        assert_eq!(p3.coeffs(), expected.as_slice());

        assert!(maclaurin_exp(-2, &GaussianRational::one()).is_err());
    }

    #[test]
    fn sin_pow_series_examples() {
        let s1 = sin_pow_series(1, 3).unwrap();
        assert_eq!(s1.coeffs(), &[real(0, 1), real(1, 1), real(0, 1), real(-1, 6)]);

        let s2 = sin_pow_series(2, 4).unwrap();
        assert_eq!(s2.coeffs(), &[real(0, 1), real(0, 1), real(1, 1), real(0, 1), real(-1, 3)]);

        for n in 1..=9 {
            let s = sin_pow_series(n, n as usize - 1).unwrap();
            assert_eq!(s.order(), n as usize - 1);
            assert!(s.is_zero());
            assert!(!sin_pow_series(n, n as usize).unwrap().is_zero());
        }
    }

    #[test]
    fn exponential_coeffs_small_n() {
        let one = sin_pow_exponential_coeffs(1).unwrap();
        let inv_2i = GaussianRational::one() / GaussianRational::imaginary(r(2, 1));
        assert_eq!(one[0], ExponentialTerm { coefficient: inv_2i.clone(), frequency: 1 });
        assert_eq!(one[1], ExponentialTerm { coefficient: -inv_2i, frequency: -1 });

        let two = sin_pow_exponential_coeffs(2).unwrap();
        let freqs: Vec<i64> = two.iter().map(|t| t.frequency).collect();
        let coeffs: Vec<GaussianRational> = two.into_iter().map(|t| t.coefficient).collect();
        assert_eq!(freqs, vec![2, 0, -2]);
        assert_eq!(coeffs, vec![real(-1, 4), real(1, 2), real(-1, 4)]);
    }

    #[test]
    fn exponential_expansion_at_half_pi_is_one() {
        // e^{i m π/2} = i^m, so the expansion evaluated at π/2 is exact
        for n in 1..=30 {
            let total = sin_pow_exponential_coeffs(n)
                .unwrap()
                .iter()
                .fold(GaussianRational::zero(), |acc, t| {
                    acc + &t.coefficient * &GaussianRational::i_pow(t.frequency)
                });
            assert_eq!(total, GaussianRational::one(), "n={n}");
        }
    }

    #[test]
    fn exponential_expansion_matches_direct_series() {
        for n in 1..=10u32 {
            for order in 0..=14usize {
                let terms = sin_pow_exponential_coeffs(n).unwrap();
                let via_exp = exponential_combination(&terms, order as i64).unwrap();
                let direct = sin_pow_series(n, order).unwrap();
                assert_eq!(via_exp, direct, "n={n} order={order}");
            }
        }
    }

    #[test]
    fn maclaurin_combination_examples() {
        assert!(maclaurin_combination_is_zero(3, 3).unwrap());
        assert!(maclaurin_combination_is_zero(1, 1).unwrap());
        assert!(maclaurin_combination_is_zero(8, 5).unwrap());
        assert!(sin_pow_series(8, 3).unwrap().is_zero());
        assert!(maclaurin_combination_is_zero(2, 3).is_err());
    }

    #[test]
    fn combination_is_nonzero_past_the_zero_order() {
        // guards against a vacuous check: at order n the x^n coefficient is 1
        for n in 1..=8u32 {
            let terms = sin_pow_exponential_coeffs(n).unwrap();
            let s = exponential_combination(&terms, n.into()).unwrap();
            assert_eq!(s.coefficient(n as usize), Some(&GaussianRational::one()));
        }
    }

    #[test]
    fn half_range_round_trips_to_full_range() {
        for n in 1..=25 {
            let half = HalfRangeExpansion::new(n).unwrap();
            assert_eq!(half.terms.len(), ((n - 1) / 2 + 1) as usize);
            assert!(half.terms.iter().all(|t| t.frequency > 0));
            assert_eq!(half.zero_frequency.is_some(), n % 2 == 0);
            assert_eq!(half.to_full_range(), sin_pow_exponential_coeffs(n).unwrap());
        }
    }

    #[test]
    fn top_coefficient_links_to_alternating_sum() {
        // x^{q-1} coefficient of the full exponential combination equals
        // 2 i^{q-1} / ((2i)^n (q-1)!) times the alternating sum, and vanishes
        for n in 3..=16u32 {
            for q in 2..n {
                if (n + q) % 2 == 0 {
                    continue;
                }
                let terms = sin_pow_exponential_coeffs(n).unwrap();
                let s = exponential_combination(&terms, (q - 1).into()).unwrap();
                let top = s.coefficient((q - 1) as usize).unwrap().clone();
                assert!(top.is_zero());

                let prefactor = (GaussianRational::i_pow((q - 1).into()) * inverse_two_i_pow(n))
                    .scale(&(r(2, 1) / factorial((q - 1) as usize)));
                let alt = GaussianRational::from_real(Rational::from_integer(
                    alternating_sum(n, q).unwrap(),
                ));
                assert_eq!(top, prefactor * alt, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn half_range_top_coefficient_is_alternating_sum() {
        // positive frequencies alone give i^{q-1} / ((2i)^n (q-1)!) times the sum,
        // which is nonzero e.g. for every n = q
        for n in 1..=14u32 {
            for q in 1..=n {
                let half = HalfRangeExpansion::new(n).unwrap();
                let s = exponential_combination(&half.terms, (q - 1).into()).unwrap();
                let top = s.coefficient((q - 1) as usize).unwrap().clone();
                let prefactor = (GaussianRational::i_pow((q - 1).into()) * inverse_two_i_pow(n))
                    .scale(&factorial((q - 1) as usize).recip());
                let alt = GaussianRational::from_real(Rational::from_integer(
                    alternating_sum(n, q).unwrap(),
                ));
                assert_eq!(top, prefactor * alt, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn gaussian_division_inverts_multiplication() {
        let a = GaussianRational::new(r(3, 4), r(-2, 5));
        let b = GaussianRational::new(r(-1, 7), r(5, 3));
        assert_eq!((&a * &b) / b, a);
    }
}
