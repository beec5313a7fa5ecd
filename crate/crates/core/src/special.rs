//! Sine and cosine integrals in the upper (complement) convention.
//!
//! * `si_upper(t) = ∫_t^∞ sin x / x dx = π/2 − Si(t)`
//! * `ci_upper(t) = ∫_t^∞ cos x / x dx = −Ci(t)`
//!
//! where `Si` and `Ci` are the usual sine and cosine integrals. Note the sign
//! flip on `ci_upper`: it is the negative of the textbook `Ci`, not a shifted
//! copy of it.
//!
//! Small arguments use the Maclaurin series. Above [`SERIES_CUTOFF`] both
//! functions come out of one continued fraction for `E₁(it) = ci_upper(t) − i si_upper(t)`,
//! evaluated with the modified Lentz method.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex double-precision value.
pub type ComplexFloat = Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Series below, continued fraction above.
pub const SERIES_CUTOFF: f64 = 2.0;

const MAX_ITER: usize = 10_000;

/// Returns `(Si(t), Σ_{k≥1} (−1)^k t^{2k} / (2k (2k)!))` for `0 <= t <= SERIES_CUTOFF`.
fn small_series(t: f64) -> (f64, f64) {
    let mut si = 0.0;
    let mut ci = 0.0;
    // power = t^m / m!
    let mut power = t;
    for m in 1..200usize {
        // odd m = 2k+1 and even m = 2k both carry (−1)^k
        let k = m / 2;
        let signed = if k % 2 == 0 { power } else { -power } / m as f64;
        if m % 2 == 1 {
            si += signed;
        } else {
            ci += signed;
        }
        if m > 2 && signed.abs() < 1e-20 {
            break;
        }
        power *= t / (m + 1) as f64;
    }
    (si, ci)
}

/// `E₁(it)` for `t > 0` by the continued fraction
/// `E₁(z) = e^{−z} / (z + 1 − 1²/(z + 3 − 2²/(z + 5 − …)))`.
fn e1_imaginary(t: f64) -> Complex64 {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, t);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm_sqr() < 1e-34 {
            break;
        }
    }
    Complex64::new(t.cos(), -t.sin()) * h
}

/// `∫_t^∞ sin x / x dx`, equal to `π/2 − Si(t)`.
pub fn si_upper(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain(format!("si_upper needs t >= 0, got {t}")));
    }
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    if t <= SERIES_CUTOFF {
        Ok(FRAC_PI_2 - small_series(t).0)
    } else {
        Ok(-e1_imaginary(t).im)
    }
}

/// `∫_t^∞ cos x / x dx`, equal to `−Ci(t)`. Diverges like `−log t` at 0.
pub fn ci_upper(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Domain(format!("ci_upper needs t > 0, got {t}")));
    }
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    if t <= SERIES_CUTOFF {
        Ok(-(EULER_GAMMA + t.ln() + small_series(t).1))
    } else {
        Ok(e1_imaginary(t).re)
    }
}

/// `E_ε(α) = ∫_ε^∞ e^{iαx} / x dx`.
///
/// For `α > 0` this is `ci_upper(αε) + i si_upper(αε)`; negative `α` gives the
/// complex conjugate.
pub fn e_eps(alpha: f64, eps: f64) -> Result<ComplexFloat> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("e_eps needs finite nonzero alpha, got {alpha}")));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain(format!("e_eps needs eps > 0, got {eps}")));
    }
    let t = alpha.abs() * eps;
    let value = Complex64::new(ci_upper(t)?, si_upper(t)?);
    Ok(if alpha > 0.0 { value } else { value.conj() })
}
