//! Arbitrary-precision scaffolding: digit/bit bookkeeping, `rug::Float`
//! helpers, and a small complex type built on pairs of `Float`s.
//!
//! Precision is requested by callers in decimal digits and carried
//! internally in bits of mantissa. All constructors here take bits; the
//! conversion adds a fixed guard so that decimal round-tripping does not eat
//! into the requested accuracy.
//!
//! The complex helpers deliberately include "analytic phase" constructors
//! (`cispi`, `pow_times_cispi`) for expressions of the form z = x·e^{iπt}:
//! forming such phases through floating-point multiples of π and the complex
//! exponential can land on the wrong side of a branch cut when the rounded
//! sine changes sign, so the phases are built from sin(πt), cos(πt) with the
//! reduction of t done exactly in integer arithmetic.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

/// log2(10), used for digit/bit conversion.
const LOG2_10: f64 = 3.321928094887362;

/// Guard bits added on top of any digit request.
const GUARD_BITS: u32 = 24;

/// Convert requested decimal digits into bits of mantissa (with guard).
pub fn bits(digits: u32) -> u32 {
    ((digits as f64) * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Convert bits of mantissa back to a (conservative) decimal digit count.
pub fn digits_of(bits: u32) -> u32 {
    ((bits.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32
}

/// A fresh `Float` of `prec` bits holding `val`.
pub fn float<T>(prec: u32, val: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(prec, val)
}

/// π at `prec` bits.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Parse a decimal literal into a `Float` at `prec` bits.
///
/// Panics on malformed input; intended for compile-time constant strings
/// (frozen reference values in tests, tabulated data).
pub fn parse(prec: u32, s: &str) -> Float {
    Float::with_val(prec, Float::parse(s).expect("malformed numeric literal"))
}

/// Base-10 magnitude of a `Float` as an `f64`: log10|x|, or -inf for zero.
///
/// Uses the binary exponent only (cheap, ~0.3 digit accuracy), which is all
/// the cancellation bookkeeping needs. Never overflows for any representable
/// `Float`.
pub fn log10_mag(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.get_exp() {
        Some(e) => (e as f64) * std::f64::consts::LOG10_2,
        None => f64::NAN, // inf/nan carry no exponent
    }
}

/// Base-10 magnitude log10|x| to full f64 accuracy: binary exponent plus
/// mantissa correction, safe for exponents far beyond f64 range; -inf for
/// zero. Use this for reported magnitudes; `log10_mag` for cheap bookkeeping.
pub fn log10_exact(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.get_exp() {
        Some(e) => {
            // |mantissa| in [0.5, 1): exponent shift is exact.
            let mant = Float::with_val(x.prec(), x >> e);
            (e as f64) * std::f64::consts::LOG10_2 + mant.to_f64().abs().log10()
        }
        None => f64::NAN, // inf/nan carry no exponent
    }
}

/// sin(πt) and cos(πt) with the reduction of t modulo 2 done exactly.
///
/// The fractional part is extracted in integer arithmetic at the working
/// precision of `t` (plus its exponent), so t = 10^40 + 1/3 still produces
/// the sine of π/3 exactly rather than noise.
pub fn sin_cos_pi(t: &Float, prec: u32) -> (Float, Float) {
    // Work at enough precision to hold both the integer part and `prec`
    // fractional bits of t.
    let exp = t.get_exp().unwrap_or(0).max(0) as u32;
    let wp = prec + exp + 8;
    let tw = Float::with_val(wp, t);
    // r = t - 2*floor(t/2)  in [0, 2)
    let half = Float::with_val(wp, &tw / 2u32);
    let fl = half.floor();
    let two_fl = Float::with_val(wp, 2u32 * &fl);
    let r = Float::with_val(wp, &tw - &two_fl);
    let angle = pi(wp) * r;
    let (s, c) = angle.sin_cos(Float::new(wp));
    (Float::with_val(prec, s), Float::with_val(prec, c))
}

/// cos(x) with argument reduction modulo 2π performed at padded precision.
///
/// For |x| beyond ~10^6 a plain cosine call would lose the phase to the
/// rounding of x itself; the reduction here pads the working precision by
/// the exponent of x so that the reduced angle keeps `prec` significant
/// bits.
pub fn cos_reduced(x: &Float, prec: u32) -> Float {
    let exp = x.get_exp().unwrap_or(0).max(0) as u32;
    let wp = prec + exp + 8;
    let xw = Float::with_val(wp, x);
    let twopi = Float::with_val(wp, 2u32 * pi(wp));
    let q = Float::with_val(wp, &xw / &twopi).floor();
    let r = Float::with_val(wp, &xw - q * &twopi);
    Float::with_val(prec, r.cos())
}

/// Complex number as a pair of `rug::Float`s with a shared precision.
#[derive(Clone, Debug)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl Cplx {
    pub fn new(re: Float, im: Float) -> Self {
        Cplx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cplx {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Cplx {
            re,
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// x·e^{iπt} for real x > 0 and exact phase parameter t (in units of π).
    pub fn from_polar_pi(x: &Float, t: &Float, prec: u32) -> Self {
        let (s, c) = sin_cos_pi(t, prec);
        Cplx {
            re: Float::with_val(prec, &c * x),
            im: Float::with_val(prec, &s * x),
        }
    }

    pub fn conj(&self) -> Self {
        Cplx {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        Cplx {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }

    pub fn add(&self, o: &Cplx) -> Self {
        let p = self.prec();
        Cplx {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Cplx) -> Self {
        let p = self.prec();
        Cplx {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Cplx) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cplx { re, im }
    }

    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec();
        Cplx {
            re: Float::with_val(p, &self.re * f),
            im: Float::with_val(p, &self.im * f),
        }
    }

    pub fn div(&self, o: &Cplx) -> Self {
        let p = self.prec();
        let den = Float::with_val(p, o.re.clone().square() + o.im.clone().square());
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Cplx {
            re: re / &den,
            im: im / &den,
        }
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cplx {
            re: Float::with_val(p, &m * &c),
            im: Float::with_val(p, &m * &s),
        }
    }

    /// Principal logarithm: ln|z| + i·arg z.
    pub fn ln(&self) -> Self {
        Cplx {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Principal power z^s for real exponent s: exp(s·ln z).
    pub fn powf(&self, s: &Float) -> Self {
        let l = self.ln();
        Cplx {
            re: Float::with_val(self.prec(), &l.re * s),
            im: Float::with_val(self.prec(), &l.im * s),
        }
        .exp()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// e^{iπt} with the reduction of t modulo 2 done exactly.
///
/// This is the branch-safe way to write phases like e^{±iπϑ} or e^{±iπσ}:
/// the parameter t stays a real `Float` and never passes through an inexact
/// multiple of π.
pub fn cispi(t: &Float, prec: u32) -> Cplx {
    let (s, c) = sin_cos_pi(t, prec);
    Cplx { re: c, im: s }
}

/// (x·e^{iπphase})^s for real x > 0, computed as x^s · e^{iπ·phase·s}.
///
/// Used for powers along rotated rays, e.g. (X e^{±πi})^ϑ = X^ϑ e^{±iπϑ},
/// where the literal (unwrapped) phase is meant rather than the principal
/// branch of the numeric product.
pub fn pow_on_ray(x: &Float, phase: &Float, s: &Float, prec: u32) -> Cplx {
    let mag = Float::with_val(prec, x.clone().pow(s));
    let t = Float::with_val(prec, phase * s);
    cispi(&t, prec).scale(&mag)
}

/// Exact floor of a `Float` as `Integer` (value must be finite).
pub fn floor_int(x: &Float) -> Integer {
    x.clone().floor().to_integer().expect("finite float expected")
}
