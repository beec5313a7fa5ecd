//! Exact evaluation of the sinc-power integrals `I(n, q) = ∫₀^∞ sinⁿx / x^q dx`.
//!
//! For integers `n >= q >= 1` the integral is either a rational multiple of π
//! (when `n + q` is even) or a rational combination of logarithms of the
//! integers `n - 2k` (when `n + q` is odd). Every coefficient here is computed
//! with arbitrary-precision integers; nothing goes through floating point.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::series::GaussianRational;

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

/// `(-1)^e` for any integer exponent, including negative ones.
pub(crate) fn parity_sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) requires 0 <= k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // acc = C(n - k + i - 1, i - 1), so the division is exact
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    Ok(acc)
}

fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The pair `(n, q)` indexing `I(n, q)`, with `n >= q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralSpec {
    n: u32,
    q: u32,
}

impl IntegralSpec {
    pub fn new(n: i64, q: i64) -> Result<Self> {
        if q < 1 || n < q || n > i64::from(u32::MAX) {
            return Err(Error::InvalidDomain { n, q });
        }
        Ok(Self { n: n as u32, q: q as u32 })
    }

    /// Like [`IntegralSpec::new`], but also rejects the divergent corner `q = 1`, `n` even.
    pub fn convergent(n: i64, q: i64) -> Result<Self> {
        let spec = Self::new(n, q)?;
        spec.ensure_convergent()?;
        Ok(spec)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `sinⁿx / x` is not integrable at infinity when `n` is even.
    pub fn is_convergent(&self) -> bool {
        self.q >= 2 || self.n % 2 == 1
    }

    pub fn ensure_convergent(&self) -> Result<()> {
        if self.is_convergent() {
            Ok(())
        } else {
            Err(Error::DivergentIntegral { n: self.n })
        }
    }

    /// True when the value is a rational multiple of π.
    pub fn is_pi_case(&self) -> bool {
        (self.n + self.q).is_multiple_of(2)
    }

    /// All convergent specs with `1 <= q <= n <= n_max`, sorted by `(n, q)`.
    pub fn all_convergent(n_max: u32) -> Vec<Self> {
        (1..=n_max)
            .flat_map(|n| (1..=n).map(move |q| Self { n, q }))
            .filter(Self::is_convergent)
            .collect()
    }
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {})", self.n, self.q)
    }
}

/// An exact value of `I(n, q)`.
///
/// Log combinations are kept normalized: no base below 2, no base that is a
/// perfect power, no zero coefficients, bases in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    /// `coefficient * π`
    PiMultiple(Rational),
    /// `Σ coefficient * log(base)`
    LogCombination(BTreeMap<u64, Rational>),
}

impl ExactValue {
    pub fn pi_multiple(coefficient: Rational) -> Self {
        ExactValue::PiMultiple(coefficient)
    }

    /// Builds a normalized log combination. Perfect powers are rewritten
    /// over their smallest root (`log 4 = 2 log 2`), repeated bases are
    /// merged by addition, `log 1` terms and zero coefficients are dropped.
    pub fn log_combination<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (base, coefficient) in terms {
            match base {
                0 => return Err(Error::Domain("log(0) is undefined".into())),
                1 => continue,
                _ => {
                    let (root, exponent) = primitive_root(base);
                    let scaled = coefficient * Rational::from_integer(exponent.into());
                    *map.entry(root).or_insert_with(Rational::zero) += scaled;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(ExactValue::LogCombination(map))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::PiMultiple(c) => c.is_zero(),
            ExactValue::LogCombination(terms) => terms.is_empty(),
        }
    }

    /// Double-precision value, obtained by rounding a high-precision
    /// evaluation so that cancellation between log terms cannot leak in.
    pub fn to_f64(&self) -> f64 {
        crate::precision::decimal_string(self, 25)
            .expect("25 digits is under the cap")
            .parse()
            .expect("decimal renderer emits parseable numbers")
    }
}

/// Smallest `r` with `r^e = m`, together with that `e`.
pub(crate) fn primitive_root(m: u64) -> (u64, u32) {
    let max_exp = 63 - m.leading_zeros();
    for e in (2..=max_exp).rev() {
        let r = m.nth_root(e);
        if r.checked_pow(e) == Some(m) {
            return (r, e);
        }
    }
    (m, 1)
}

/// `Σ_{k=0}^{⌊(n-1)/2⌋} (-1)^k C(n, k) (n - 2k)^(q-1)`.
///
/// Vanishes whenever `n > q >= 2` and `n + q` is odd.
pub fn alternating_sum(n: u32, q: u32) -> Result<BigInt> {
    if n == 0 || q == 0 {
        return Err(Error::Domain(format!("alternating_sum({n}, {q}) requires n, q >= 1")));
    }
    let n = i64::from(n);
    let mut sum = BigInt::zero();
    for k in 0..=(n - 1) / 2 {
        let term = binomial(n, k)? * BigInt::from(n - 2 * k).pow(q - 1);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Exact value of `I(n, q)`.
pub fn closed_form(spec: IntegralSpec) -> Result<ExactValue> {
    spec.ensure_convergent()?;
    let (n, q) = (i64::from(spec.n), i64::from(spec.q));
    let q_fact = factorial(spec.q - 1);

    if spec.is_pi_case() {
        let sign = parity_sign((q - n) / 2);
        let numer = alternating_sum(spec.n, spec.q)? * sign;
        let denom = (BigInt::one() << spec.n) * q_fact;
        return Ok(ExactValue::pi_multiple(Rational::new(numer, denom)));
    }

    let sign = parity_sign((q - n + 1) / 2);
    let denom = (BigInt::one() << (spec.n - 1)) * q_fact;
    let mut terms = Vec::new();
    for k in 0..=(n - 1) / 2 {
        let base = n - 2 * k;
        let mut numer = binomial(n, k)? * BigInt::from(base).pow(spec.q - 1);
        if parity_sign(k) * sign < 0 {
            numer = -numer;
        }
        terms.push((base as u64, Rational::new(numer, denom.clone())));
    }
    ExactValue::log_combination(terms)
}

/// `c_q = i^(q-1) H_(q-1) / (q-1)!`, with `c_1 = 0`.
pub fn c_constant(q: u32) -> Result<GaussianRational> {
    if q == 0 {
        return Err(Error::Domain("c_constant requires q >= 1".into()));
    }
    let m = q - 1;
    let harmonic: Rational = (1..=m).map(|k| Rational::new(BigInt::one(), BigInt::from(k))).sum();
    let magnitude = harmonic / Rational::from_integer(factorial(m));
    Ok(GaussianRational::i_pow(m as i64) * GaussianRational::from_real(magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn logs(terms: &[(u64, Rational)]) -> ExactValue {
        ExactValue::LogCombination(terms.iter().cloned().collect())
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial(17, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(17, 17).unwrap(), BigInt::one());
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        // factorial ratio oracle, independent of the multiplicative recurrence
        let f = |m: u32| (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        let expected = f(60) / (f(30) * f(30));
        assert_eq!(expected.to_string(), "118264581564861424");
        assert_eq!(binomial(60, 30).unwrap(), expected);
        for n in 0..40u32 {
            for k in 0..=n {
                assert_eq!(binomial(n.into(), k.into()).unwrap(), f(n) / (f(k) * f(n - k)));
            }
        }
    }

    #[test]
    fn binomial_rejects_bad_input() {
        assert!(binomial(3, 4).is_err());
        assert!(binomial(-1, 0).is_err());
        assert!(binomial(3, -1).is_err());
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(alternating_sum(3, 2).unwrap(), BigInt::zero());
        assert_eq!(alternating_sum(1, 1).unwrap(), BigInt::one());
        assert_eq!(alternating_sum(5, 3).unwrap(), BigInt::from(25 - 45 + 10));
        assert!(alternating_sum(0, 1).is_err());
    }

    #[test]
    fn alternating_sum_vanishes_below_order() {
        for n in 3..=60u32 {
            for q in 2..n {
                if (n + q) % 2 == 1 {
                    assert!(alternating_sum(n, q).unwrap().is_zero(), "n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn closed_form_golden_values() {
        let cf = |n, q| closed_form(IntegralSpec::new(n, q).unwrap()).unwrap();
        assert_eq!(cf(1, 1), ExactValue::PiMultiple(r(1, 2)));
        assert_eq!(cf(2, 2), ExactValue::PiMultiple(r(1, 2)));
        assert_eq!(cf(3, 3), ExactValue::PiMultiple(r(3, 8)));
        assert_eq!(cf(4, 2), ExactValue::PiMultiple(r(1, 4)));
        assert_eq!(cf(3, 2), logs(&[(3, r(3, 4))]));
        assert_eq!(cf(4, 3), logs(&[(2, r(1, 1))]));
    }

    #[test]
    fn closed_form_rejects_bad_specs() {
        let spec = IntegralSpec::new(2, 1).unwrap();
        assert_eq!(closed_form(spec), Err(Error::DivergentIntegral { n: 2 }));
        assert!(matches!(IntegralSpec::new(2, 3), Err(Error::InvalidDomain { .. })));
        assert!(matches!(IntegralSpec::new(0, 0), Err(Error::InvalidDomain { .. })));
        assert!(matches!(IntegralSpec::new(-3, 1), Err(Error::InvalidDomain { .. })));
    }

    #[test]
    fn log_bases_share_parity_with_n() {
        for spec in IntegralSpec::all_convergent(20) {
            if let ExactValue::LogCombination(terms) = closed_form(spec).unwrap() {
                assert!(!spec.is_pi_case());
                for (&base, c) in &terms {
                    assert!(base >= 2);
                    assert!(!c.is_zero());
                    assert_eq!(base % 2, u64::from(spec.n() % 2));
                }
            } else {
                assert!(spec.is_pi_case());
            }
        }
    }

    #[test]
    fn log_combination_normalizes() {
        let v = ExactValue::log_combination(vec![
            (5, r(1, 2)),
            (1, r(7, 1)),
            (3, r(1, 3)),
            (5, r(1, 2)),
            (7, r(2, 1)),
            (7, r(-2, 1)),
        ])
        .unwrap();
        assert_eq!(v, logs(&[(3, r(1, 3)), (5, r(1, 1))]));
        let powers = ExactValue::log_combination(vec![(4, r(1, 1)), (2, r(-1, 1)), (27, r(1, 3))]);
        assert_eq!(powers.unwrap(), logs(&[(2, r(1, 1)), (3, r(1, 1))]));
        assert!(ExactValue::log_combination(vec![(0, r(1, 1))]).is_err());
        assert!(ExactValue::log_combination(vec![(1, r(1, 1))]).unwrap().is_zero());
    }

    #[test]
    fn large_parameters_stay_exact() {
        // (n - 2k)^(q-1) and C(n, k) are far past u64 here
        let v = closed_form(IntegralSpec::new(40, 30).unwrap()).unwrap();
        let x = v.to_f64();
        assert!(x.is_finite() && x > 0.0);
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(1).unwrap(), GaussianRational::zero());
        assert_eq!(c_constant(2).unwrap(), GaussianRational::new(r(0, 1), r(1, 1)));
        assert_eq!(c_constant(4).unwrap(), GaussianRational::new(r(0, 1), r(-11, 36)));
        assert!(c_constant(0).is_err());
    }

    #[test]
    fn c_constant_recursion() {
        // i^q / (q! q) + i c_q / q = c_(q+1)
        let i = GaussianRational::i_pow(1);
        for q in 1..=30u32 {
            let qr = GaussianRational::from_real(Rational::from_integer(q.into()));
            let lhs = GaussianRational::i_pow(q.into())
                * GaussianRational::from_real(Rational::new(
                    BigInt::one(),
                    factorial(q) * BigInt::from(q),
                ))
                + (i.clone() * c_constant(q).unwrap()) / qr;
            assert_eq!(lhs, c_constant(q + 1).unwrap(), "q={q}");
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(2), (2, 1));
        assert_eq!(primitive_root(4), (2, 2));
        assert_eq!(primitive_root(64), (2, 6));
        assert_eq!(primitive_root(36), (6, 2));
        assert_eq!(primitive_root(12), (12, 1));
        assert_eq!(primitive_root(3u64.pow(40)), (3, 40));
        assert_eq!(primitive_root(u64::MAX), (u64::MAX, 1));
    }

    #[test]
    fn parity_sign_handles_negative_exponents() {
        assert_eq!(parity_sign(-3), -1);
        assert_eq!(parity_sign(-2), 1);
        assert_eq!(parity_sign(0), 1);
        assert_eq!(parity_sign(5), -1);
    }
}
