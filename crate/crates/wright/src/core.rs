//! σ-derived parameters, shared value types, and regime classification.
//!
//! Everything downstream keys off the shape parameter σ ∈ (0,1). Two facts
//! about σ are *discrete* — whether it equals a regime boundary (1/3, 1/2)
//! and whether it is the reciprocal of an integer (which kills the
//! algebraic expansion on the negative axis) — so σ is carried as either an
//! exact rational or a machine real. Machine reals within 10⁻¹² of a small
//! rational are snapped to that rational on construction; the tolerance is
//! the documented boundary-decision policy for inexact input.

use crate::error::{Result, WrightError};
use crate::prec::{bits, float, pi};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Largest denominator considered when snapping a machine-real σ to an
/// exact rational.
const SNAP_DEN_MAX: u32 = 64;

/// Snap tolerance for machine-real σ near a small rational.
const SNAP_TOL: f64 = 1e-12;

/// A real parameter kept exact when it is known exactly.
///
/// Used for σ itself and for anything derived from it by rational
/// arithmetic (the series parameters λ = −σ, μ = 1−σ, phases in units of
/// π). Exactness is what lets pole conditions and regime boundaries be
/// decided in integer arithmetic rather than by floating comparison.
#[derive(Clone, Debug)]
pub enum Real {
    /// p/q exactly.
    Exact(Rational),
    /// Known only as a machine real (already snap-checked).
    Approx(f64),
}

/// The shape parameter σ ∈ (0,1), carried exactly when known.
pub type Sigma = Real;

impl Real {
    /// Exact rational constructor σ = num/den.
    pub fn ratio(num: i64, den: i64) -> Self {
        Real::Exact(Rational::from((num, den)))
    }

    /// From a machine real, snapping to p/q (q ≤ 64) within 10⁻¹².
    pub fn from_f64(v: f64) -> Self {
        for q in 1..=SNAP_DEN_MAX {
            let p = (v * q as f64).round();
            if p >= 0.0 && (v - p / q as f64).abs() < SNAP_TOL {
                return Real::Exact(Rational::from((p as i64, q as i64)));
            }
        }
        Real::Approx(v)
    }

    /// Parse "p/q" or a decimal literal; decimals become exact decimal
    /// fractions first and are then snap-checked like any machine input
    /// (so "0.3333333333333333" means 1/3, while "0.3333" stays 3333/10⁴).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || WrightError::Domain(format!("cannot parse sigma from {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Real::Exact(Rational::from((n, d))));
        }
        let r = Rational::from_str_radix(s, 10)
            .or_else(|_| decimal_to_rational(s))
            .map_err(|_| bad())?;
        // Snap exactly-parsed decimals the same way as machine reals.
        let v = r.to_f64();
        for q in 1..=SNAP_DEN_MAX {
            let p = (v * q as f64).round();
            if p >= 0.0 {
                let cand = Rational::from((p as i64, q as i64));
                if cand != r && (v - p / q as f64).abs() < SNAP_TOL {
                    return Ok(Real::Exact(cand));
                }
            }
        }
        Ok(Real::Exact(r))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64(),
            Real::Approx(v) => *v,
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Real::Exact(r) => Float::with_val(prec, r),
            Real::Approx(v) => Float::with_val(prec, *v),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }

    /// Exact equality with p/q (false for Approx — those were snap-checked
    /// already, so "not exactly equal" is the honest answer).
    pub fn eq_ratio(&self, num: i64, den: i64) -> bool {
        match self {
            Real::Exact(r) => *r == Rational::from((num, den)),
            Real::Approx(_) => false,
        }
    }

    /// Some(p) when σ = 1/p for an integer p ≥ 2.
    pub fn one_over_int(&self) -> Option<u32> {
        match self {
            Real::Exact(r) => {
                if *r.numer() == 1 && *r.denom() >= 2 {
                    r.denom().to_u32()
                } else {
                    None
                }
            }
            Real::Approx(_) => None,
        }
    }

    /// Negation, preserving exactness.
    pub fn neg(&self) -> Self {
        match self {
            Real::Exact(r) => Real::Exact(-r.clone()),
            Real::Approx(v) => Real::Approx(-v),
        }
    }

    /// 1 − self, preserving exactness.
    pub fn one_minus(&self) -> Self {
        match self {
            Real::Exact(r) => Real::Exact(Rational::from(1u32) - r.clone()),
            Real::Approx(v) => Real::Approx(1.0 - v),
        }
    }

    /// Exact integer constructor.
    pub fn int(n: i64) -> Self {
        Real::Exact(Rational::from(n))
    }

    /// True when the value is an exact integer.
    pub fn is_integer(&self) -> bool {
        match self {
            Real::Exact(r) => r.is_integer(),
            Real::Approx(_) => false,
        }
    }
}

/// Parse a plain decimal literal (e.g. "0.45") into an exact rational.
fn decimal_to_rational(s: &str) -> std::result::Result<Rational, ()> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(());
    }
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(());
    }
    let num: rug::Integer = digits.parse().map_err(|_| ())?;
    let den = rug::Integer::from(10u32).pow(frac_part.len() as u32);
    Ok(Rational::from((num * sign, den)))
}

/// Derived constants for a given σ (all at one working precision):
/// κ = 1−σ, ϑ = σ−½, h = σ^σ, A = √(2π/σ)(σ/κ)^σ, A′ = A(σ/κ)^κ.
#[derive(Clone, Debug)]
pub struct SigmaParams {
    pub sigma: Sigma,
    pub prec: u32,
    pub sigma_f: Float,
    pub kappa: Float,
    pub theta: Float,
    pub h: Float,
    pub a_sigma: Float,
    pub a_prime: Float,
}

/// The large parameter X = κ(hx)^{1/κ} together with the x it came from.
#[derive(Clone, Debug)]
pub struct BigX {
    pub value: Float,
    pub x: Float,
}

/// Qualitative behavior of M_σ(−x) as x → +∞, by σ band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// σ < 1/3: exponentially large with oscillation.
    ExpLargeOscillatory,
    /// σ = 1/3: oscillatory with algebraically controlled amplitude.
    PureOscillatory,
    /// 1/3 < σ < 1/2: exponentially small oscillation plus algebraic tail.
    ExpSmallPlusAlgebraic,
    /// σ = 1/2: the two contributions merge (Stokes configuration); the
    /// expansions of the other bands do not apply.
    StokesHalf,
    /// σ > 1/2: purely algebraic decay.
    AlgebraicOnly,
}

/// A numeric result carrying its working precision and a cancellation
/// estimate, so callers can judge how many digits are actually meaningful.
#[derive(Clone, Debug)]
pub struct PrecisionValue<T> {
    pub value: T,
    /// Decimal digits of working precision used for the final summation.
    pub working_digits: u32,
    /// Number of series terms summed.
    pub terms_used: usize,
    /// log10(max term magnitude / |result|): decimal digits lost to
    /// cancellation.
    pub cancellation_digits: f64,
}

/// Compute the σ-derived constants at `digits` decimal digits.
pub fn derive_params(sigma: &Sigma, digits: u32) -> Result<SigmaParams> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    let p = bits(digits);
    let sf = sigma.to_float(p);
    let one = float(p, 1u32);
    let kappa = Float::with_val(p, &one - &sf);
    let theta = Float::with_val(p, &sf - 0.5f64);
    // h = σ^σ = exp(σ ln σ)
    let h = Float::with_val(p, &sf * sf.clone().ln()).exp();
    // A = √(2π/σ) (σ/κ)^σ
    let two_pi = Float::with_val(p, 2u32 * pi(p));
    let ratio = Float::with_val(p, &sf / &kappa);
    let a_sigma = Float::with_val(p, &two_pi / &sf).sqrt()
        * Float::with_val(p, &sf * ratio.clone().ln()).exp();
    let a_prime = Float::with_val(p, &a_sigma * Float::with_val(p, &kappa * ratio.ln()).exp());
    Ok(SigmaParams {
        sigma: sigma.clone(),
        prec: p,
        sigma_f: sf,
        kappa,
        theta,
        h,
        a_sigma,
        a_prime,
    })
}

/// X = κ(hx)^{1/κ} for x > 0; strictly increasing in x.
pub fn big_x(params: &SigmaParams, x: &Float) -> Result<BigX> {
    if !(x.is_finite() && x.is_sign_positive() && !x.is_zero()) {
        return Err(WrightError::Domain("big_x requires x > 0".into()));
    }
    let p = params.prec;
    let hx = Float::with_val(p, &params.h * x);
    let value = Float::with_val(p, hx.ln() / &params.kappa).exp() * &params.kappa;
    Ok(BigX {
        value,
        x: x.clone(),
    })
}

/// Classify M_σ(−x) behavior by σ band; boundaries decided exactly for
/// rational σ (snapped machine input inherits the exact decision).
pub fn classify_regime(sigma: &Sigma) -> Result<Regime> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    if sigma.eq_ratio(1, 3) {
        return Ok(Regime::PureOscillatory);
    }
    if sigma.eq_ratio(1, 2) {
        return Ok(Regime::StokesHalf);
    }
    Ok(if v < 1.0 / 3.0 {
        Regime::ExpLargeOscillatory
    } else if v < 0.5 {
        Regime::ExpSmallPlusAlgebraic
    } else {
        Regime::AlgebraicOnly
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_at_half() {
        // κ=1/2, ϑ=0, h=2^{−1/2}, A=2√π
        let sp = derive_params(&Real::ratio(1, 2), 40).unwrap();
        let p = sp.prec;
        assert!((sp.kappa.clone() - 0.5f64).abs() < float(p, 1e-38));
        assert!(sp.theta.abs() < float(p, 1e-38));
        let h_want = float(p, 0.5f64).sqrt();
        assert!((sp.h.clone() - h_want).abs() < float(p, 1e-38));
        let a_want = float(p, 2u32) * pi(p).sqrt();
        assert!((sp.a_sigma.clone() - a_want).abs() < float(p, 1e-36));
    }

    #[test]
    fn params_at_quarter() {
        // h = (1/4)^{1/4} = 2^{−1/2}; A = √(8π)·(1/3)^{1/4}
        let sp = derive_params(&Real::ratio(1, 4), 40).unwrap();
        let p = sp.prec;
        let h_want = float(p, 0.5f64).sqrt();
        assert!((sp.h.clone() - h_want).abs() < float(p, 1e-36));
        let a_want = Float::with_val(p, 8u32 * pi(p)).sqrt()
            * Float::with_val(p, float(p, 3u32).recip().ln() / 4u32).exp();
        assert!((sp.a_sigma.clone() - a_want).abs() < float(p, 1e-36));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            derive_params(&Real::from_f64(1.0), 20),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            derive_params(&Real::from_f64(0.0), 20),
            Err(WrightError::Domain(_))
        ));
        let sp = derive_params(&Real::ratio(1, 2), 20).unwrap();
        assert!(matches!(
            big_x(&sp, &float(sp.prec, 0u32)),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            big_x(&sp, &float(sp.prec, -3f64)),
            Err(WrightError::Domain(_))
        ));
    }

    #[test]
    fn big_x_at_half() {
        // σ=1/2, x=3: X = (1/2)(3/√2)² = 9/4
        let sp = derive_params(&Real::ratio(1, 2), 40).unwrap();
        let x = big_x(&sp, &float(sp.prec, 3u32)).unwrap();
        assert!((x.value.clone() - 2.25f64).abs() < float(sp.prec, 1e-36));
    }

    #[test]
    fn big_x_monotone() {
        let sp = derive_params(&Real::from_f64(0.37), 30).unwrap();
        let mut prev = float(sp.prec, 0u32);
        for i in 1..40 {
            let x = float(sp.prec, i as f64 * 0.25);
            let bx = big_x(&sp, &x).unwrap();
            assert!(bx.value > prev);
            prev = bx.value;
        }
    }

    #[test]
    fn prefactor_reduces_to_gaussian_at_half() {
        // A(σ)/(2π)·X^ϑ = 1/√π at σ=1/2 (ϑ=0).
        let sp = derive_params(&Real::ratio(1, 2), 40).unwrap();
        let p = sp.prec;
        let lhs = sp.a_sigma.clone() / Float::with_val(p, 2u32 * pi(p));
        let want = pi(p).sqrt().recip();
        assert!((lhs - want).abs() < float(p, 1e-36));
    }

    #[test]
    fn regime_bands() {
        assert_eq!(
            classify_regime(&Real::ratio(1, 4)).unwrap(),
            Regime::ExpLargeOscillatory
        );
        assert_eq!(
            classify_regime(&Real::ratio(1, 3)).unwrap(),
            Regime::PureOscillatory
        );
        assert_eq!(
            classify_regime(&Real::from_f64(0.45)).unwrap(),
            Regime::ExpSmallPlusAlgebraic
        );
        assert_eq!(
            classify_regime(&Real::ratio(1, 2)).unwrap(),
            Regime::StokesHalf
        );
        assert_eq!(
            classify_regime(&Real::ratio(2, 3)).unwrap(),
            Regime::AlgebraicOnly
        );
        // Machine real within 1e-12 of 1/3 snaps to the exact boundary.
        assert_eq!(
            classify_regime(&Real::from_f64(1.0 / 3.0)).unwrap(),
            Regime::PureOscillatory
        );
    }

    #[test]
    fn sigma_parsing() {
        assert!(Real::parse("2/5").unwrap().eq_ratio(2, 5));
        assert!(Real::parse("0.45").unwrap().eq_ratio(9, 20));
        assert!(Real::parse("0.3333333333333333").unwrap().eq_ratio(1, 3));
        // Short decimal stays what it says.
        assert!(!Real::parse("0.3333").unwrap().eq_ratio(1, 3));
        assert!(Real::parse("").is_err());
        assert!(Real::parse("x/y").is_err());
        assert!(Real::parse("1/0").is_err());
    }

    #[test]
    fn one_over_int_detection() {
        assert_eq!(Real::ratio(1, 4).one_over_int(), Some(4));
        assert_eq!(Real::ratio(2, 5).one_over_int(), None);
        assert_eq!(Real::from_f64(0.25).one_over_int(), Some(4));
        assert_eq!(Real::from_f64(0.2500001).one_over_int(), None);
    }

    #[test]
    fn derive_params_deterministic() {
        let a = derive_params(&Real::ratio(3, 4), 50).unwrap();
        let b = derive_params(&Real::ratio(3, 4), 50).unwrap();
        assert_eq!(a.h, b.h);
        assert_eq!(a.a_sigma, b.a_sigma);
        assert_eq!(a.a_prime, b.a_prime);
    }
}
