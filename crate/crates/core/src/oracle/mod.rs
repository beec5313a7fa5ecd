//! Numerical cross-checks for the exact evaluator.
//!
//! [`integrate`] evaluates `∫ sinⁿx / x^q` directly by quadrature and knows
//! nothing about the closed forms. [`lemma1_residual`] and
//! [`finite_eps_reconstruction`] rebuild the exact derivation at a finite
//! cut-off `ε`: the first measures how far the truncated-exponential integral
//! is from its `c_q`/`E_ε` decomposition, the second evaluates the pre-limit
//! sums of sine and cosine integrals that tend to the closed form as `ε → 0`.

pub mod gauss;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{binomial, c_constant, parity_sign, IntegralSpec, Rational};
use crate::special::{ci_upper, e_eps, si_upper, ComplexFloat};
use gauss::{alternating_tail, graded, PanelSum};

/// Hard cap on the number of panels a single evaluation may use.
pub const MAX_PANELS: usize = 2_000_000;

/// Smallest tolerance [`integrate`] accepts.
pub const MIN_TOLERANCE: f64 = 1e-10;

/// A quadrature estimate with a conservative error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Panel error estimates plus the bound on everything past `tail_cut`.
    pub error_bound: f64,
    pub panels_used: usize,
    /// Where explicit panel integration stopped.
    pub tail_cut: f64,
}

/// `sinⁿx / x^q`, continuous at 0.
fn sinc_power(n: u32, q: u32) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        if x == 0.0 {
            return if n == q { 1.0 } else { 0.0 };
        }
        let s = x.sin();
        (s / x).powi(q as i32) * s.powi((n - q) as i32)
    }
}

/// Mean value of `sinⁿx` over a period: `C(n, n/2) / 2^n` for even `n`, else 0.
fn sin_pow_mean(n: u32) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let c = binomial(n.into(), (n / 2).into()).expect("valid binomial");
    Rational::new(c, num_bigint::BigInt::from(1u8) << n).to_f64().unwrap_or(0.0)
}

/// `∫_lower^∞ sinⁿx / x^q dx` by π-aligned Gauss–Legendre panels.
///
/// For `q >= 2` panels run up to a cut `T = Jπ`. Beyond it `sinⁿx` splits into
/// its mean, integrated exactly, and harmonics `cos(kx)`/`sin(kx)` whose tail
/// integrals are each bounded by `2 / (k T^q)`; the harmonic coefficients
/// sum to at most 1 in absolute value, giving the tail bound `2 T^{-q}`.
///
/// For `q = 1` (odd `n` only) the per-period integrals alternate in sign and
/// are summed with Euler averaging.
pub fn integrate(n: u32, q: u32, tol: f64, lower: f64) -> Result<QuadratureResult> {
    let spec = IntegralSpec::convergent(n.into(), q.into())?;
    if tol.is_nan() || tol < MIN_TOLERANCE || tol.is_infinite() {
        return Err(Error::Domain(format!("tolerance must be in [{MIN_TOLERANCE:e}, ∞), got {tol}")));
    }
    if lower.is_nan() || lower < 0.0 || lower.is_infinite() {
        return Err(Error::Domain(format!("lower limit must be finite and >= 0, got {lower}")));
    }
    let f = sinc_power(spec.n(), spec.q());
    let first_zero = (lower / PI).ceil().max(1.0) * PI;

    if q == 1 {
        let sum = alternating_tail(&f, lower, first_zero, PI, tol, MAX_PANELS)
            .ok_or(Error::ToleranceUnreachable { tol, panels: MAX_PANELS })?;
        return Ok(QuadratureResult {
            value: sum.value,
            error_bound: sum.panel_error + sum.acceleration_error,
            panels_used: sum.panels,
            tail_cut: sum.end,
        });
    }

    // smallest J with 2 (Jπ)^{-q} <= tol / 2
    let qf = f64::from(q);
    let cut_periods = ((4.0 / tol).powf(1.0 / qf) / PI).ceil().max(first_zero / PI);
    if cut_periods > MAX_PANELS as f64 {
        return Err(Error::ToleranceUnreachable { tol, panels: MAX_PANELS });
    }
    let tail_cut = cut_periods * PI;
    let body: PanelSum<f64> = graded(&f, lower, tail_cut, PI, tol / 4.0);
    let mean_tail = sin_pow_mean(n) * tail_cut.powf(1.0 - qf) / (qf - 1.0);
    let tail_bound = 2.0 * tail_cut.powf(-qf);
    let value = body.value + mean_tail;
    let rounding = 4.0 * f64::EPSILON * (body.panels as f64).sqrt() * value.abs().max(1.0);
    Ok(QuadratureResult {
        value,
        error_bound: body.error + tail_bound + rounding,
        panels_used: body.panels,
        tail_cut,
    })
}

/// `∫_a^b f` on panels of width at most `width`.
pub fn integrate_interval(f: impl Fn(f64) -> f64, a: f64, b: f64, width: f64, tol: f64) -> QuadratureResult {
    let sum = graded(&f, a, b, width, tol);
    QuadratureResult { value: sum.value, error_bound: sum.error, panels_used: sum.panels, tail_cut: b }
}

/// `Σ_{j>=0} (iα)^j x^j / (j + q - 1)!`, which times `(iα)^{q-1} / x` equals
/// `(e^{iαx} − P_{q-2}(iαx)) / x^q` without the cancellation.
fn exp_remainder_series(q: u32, iax: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    for j in 1..q {
        term /= f64::from(j);
    }
    let mut sum = term;
    for j in 1..60u32 {
        term *= iax / f64::from(j + q - 1);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn truncated_exp(m: i64, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=m {
        if j > 0 {
            term *= z / j as f64;
        }
        sum += term;
    }
    sum
}

/// `(e^{iαx} − P_{q−2}(iαx)) / x^q`, switching to the remainder series for `|αx| < 1`.
fn lemma_integrand(q: u32, alpha: f64) -> impl Fn(f64) -> Complex64 {
    let ia = Complex64::new(0.0, alpha);
    let ia_pow = ia.powi(q as i32 - 1);
    move |x: f64| {
        let z = ia * x;
        if (alpha * x).abs() < 1.0 {
            ia_pow / x * exp_remainder_series(q, z)
        } else {
            (z.exp() - truncated_exp(i64::from(q) - 2, z)) / x.powi(q as i32)
        }
    }
}

/// Number of integration-by-parts steps used for the oscillatory tail.
const TAIL_TERMS: u32 = 10;

/// `∫_T^∞ e^{iαx} x^{-q} dx` by repeated integration by parts, with a bound on
/// the discarded remainder.
fn oscillatory_tail(q: u32, alpha: f64, cut: f64) -> (Complex64, f64) {
    let ia = Complex64::new(0.0, alpha);
    let phase = Complex64::new(0.0, alpha * cut).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    // rising = (q)_k
    let mut rising = 1.0;
    for k in 0..TAIL_TERMS {
        let kf = f64::from(k);
        sum -= phase * rising / ia.powi(k as i32 + 1) * cut.powf(-f64::from(q) - kf);
        rising *= f64::from(q) + kf;
    }
    let rest = f64::from(q + TAIL_TERMS);
    let bound = rising / alpha.abs().powi(TAIL_TERMS as i32) * cut.powf(1.0 - rest) / (rest - 1.0);
    (sum, bound)
}

/// `∫_ε^∞ (e^{iαx} − P_{q−2}(iαx)) / x^q dx` minus `c_q α^{q−1} + (iα)^{q−1}/(q−1)! · E_ε(α)`.
///
/// The left side is computed by quadrature. For `q = 1` this is `∫_ε^∞ e^{iαx}/x`,
/// whose real and imaginary parts are summed as alternating series; the
/// residual is then exactly zero up to quadrature error. For `q >= 2` the
/// integrand is integrated on panels refined towards `ε` up to a cut `T`,
/// the polynomial part of the tail is integrated exactly and the oscillatory
/// part by repeated integration by parts.
pub fn lemma1_residual(q: u32, alpha: f64, eps: f64) -> Result<ComplexFloat> {
    if q == 0 {
        return Err(Error::Domain("lemma1_residual needs q >= 1".into()));
    }
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite and nonzero, got {alpha}")));
    }
    if eps.is_nan() || eps <= 0.0 || eps.is_infinite() {
        return Err(Error::Domain(format!("eps must be finite and > 0, got {eps}")));
    }
    let tol = 1e-12;
    let spacing = PI / alpha.abs();
    let lhs = if q == 1 {
        let cos_part = |x: f64| (alpha * x).cos() / x;
        let sin_part = |x: f64| (alpha * x).sin() / x;
        let cos_zero = ((eps / spacing - 0.5).ceil().max(0.0) + 0.5) * spacing;
        let sin_zero = (eps / spacing).ceil().max(1.0) * spacing;
        let unreachable = || Error::ToleranceUnreachable { tol, panels: MAX_PANELS };
        let re = alternating_tail(&cos_part, eps, cos_zero, spacing, tol, MAX_PANELS).ok_or_else(unreachable)?;
        let im = alternating_tail(&sin_part, eps, sin_zero, spacing, tol, MAX_PANELS).ok_or_else(unreachable)?;
        Complex64::new(re.value, im.value)
    } else {
        let f = lemma_integrand(q, alpha);
        let cut = ((60.0 / spacing).ceil() * spacing).max(eps * 2.0);
        let body = graded(&f, eps, cut, spacing, tol);
        let (osc, _) = oscillatory_tail(q, alpha, cut);
        let ia = Complex64::new(0.0, alpha);
        let mut poly = Complex64::new(0.0, 0.0);
        let mut coeff = Complex64::new(1.0, 0.0);
        for j in 0..=(q - 2) {
            if j > 0 {
                coeff *= ia / f64::from(j);
            }
            let power = f64::from(j) - f64::from(q) + 1.0;
            poly += coeff * cut.powf(power) / -power;
        }
        body.value + osc - poly
    };

    let c_q = c_constant(q)?;
    let c_q = Complex64::new(c_q.re.to_f64().unwrap_or(f64::NAN), c_q.im.to_f64().unwrap_or(f64::NAN));
    let ia = Complex64::new(0.0, alpha);
    let factorial: f64 = (1..q).map(f64::from).product();
    let rhs = c_q * alpha.powi(q as i32 - 1) + ia.powi(q as i32 - 1) / factorial * e_eps(alpha, eps)?;
    Ok(lhs - rhs)
}

/// The closed-form derivation stopped at a positive cut-off `ε`.
///
/// Even `n + q`:
/// `(−1)^{(q−n)/2} / (2^{n−1}(q−1)!) · Σ_k (−1)^k C(n,k) (n−2k)^{q−1} si_upper((n−2k)ε)`.
///
/// Odd `n + q`: the same sum with sign `(−1)^{(q−n−1)/2}` and
/// `ci_upper((n−2k)ε) − ci_upper(ε)` in place of `si_upper`. Subtracting
/// `ci_upper(ε)` does not change the value because the plain alternating sum
/// vanishes in this case (for `q >= 2`).
///
/// Integer prefactors are exact; only the sine/cosine integrals are floating.
pub fn finite_eps_reconstruction(n: u32, q: u32, eps: f64) -> Result<f64> {
    let spec = IntegralSpec::convergent(n.into(), q.into())?;
    if eps.is_nan() || eps <= 0.0 || eps.is_infinite() {
        return Err(Error::Domain(format!("eps must be finite and > 0, got {eps}")));
    }
    let (ni, qi) = (i64::from(n), i64::from(q));
    let factorial: num_bigint::BigInt = (1..qi).map(num_bigint::BigInt::from).product();
    let denom = (num_bigint::BigInt::from(1u8) << (n - 1)) * factorial;
    let even = spec.is_pi_case();
    let sign = if even { parity_sign((qi - ni) / 2) } else { parity_sign((qi - ni - 1) / 2) };
    let ci_eps = if even { 0.0 } else { ci_upper(eps)? };

    let mut terms = Vec::new();
    for k in 0..=(ni - 1) / 2 {
        let m = ni - 2 * k;
        let weight = binomial(ni, k)? * num_bigint::BigInt::from(m).pow(q - 1) * (parity_sign(k) * sign);
        let weight = Rational::new(weight, denom.clone()).to_f64().unwrap_or(f64::NAN);
        let special = if even { si_upper(m as f64 * eps)? } else { ci_upper(m as f64 * eps)? - ci_eps };
        terms.push(weight * special);
    }
    Ok(neumaier_sum(&terms))
}

/// Compensated summation.
fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Evaluates `integrate(n, q, tol, 0)` for each spec on worker threads,
/// returning results in input order.
pub fn integrate_many(specs: &[IntegralSpec], tol: f64) -> Vec<Result<QuadratureResult>> {
    use rayon::prelude::*;
    specs.par_iter().map(|s| integrate(s.n(), s.q(), tol, 0.0)).collect()
}
