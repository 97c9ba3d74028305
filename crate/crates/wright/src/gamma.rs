//! High-precision gamma oracle: ln Γ, Γ, 1/Γ (real and complex), and the
//! scaled gamma Γ*(z) = Γ(z)·(2π)^{−1/2} e^z z^{1/2−z}.
//!
//! Method: for arguments with real part above a precision-dependent
//! threshold r₀, the Stirling series
//!
//!   ln Γ(w) = (w−½)ln w − w + ½ln 2π + Σ_{n≥1} B_{2n}/(2n(2n−1)) w^{1−2n}
//!
//! with exact Bernoulli coefficients; below the threshold, upward shifting
//! through Γ(z)·z(z+1)⋯ and, on the left half-line, the reflection formula
//! with sin(πz) reduced exactly. The threshold r₀ ≈ 0.11·(bits) puts the
//! smallest Stirling term near e^{−2πr₀} < 2^{−bits}, so the tail always
//! reaches the working precision.
//!
//! 1/Γ is exactly 0 at non-positive integer arguments (the reciprocal is
//! entire); callers that sum series across gamma poles rely on getting the
//! exact zero rather than an overflow or a signal.

use crate::bernoulli::with_bernoulli;
use crate::prec::{pi, sin_cos_pi, Cplx};
use rug::Float;

/// Per-computation gamma context: working precision plus the Stirling tail
/// coefficients B_{2n}/(2n(2n−1)) converted once to working-precision floats.
pub struct GammaCtx {
    prec: u32,
    r0: f64,
    tail: Vec<Float>,
}

impl GammaCtx {
    pub fn new(prec: u32) -> Self {
        // Smallest Stirling term at Re w = r0 is ~e^{−2π r0}; place it just
        // below 2^{−prec} with margin.
        let r0 = 0.1103 * (prec as f64) + 8.0;
        // Terms shrink until n ≈ π·r0; beyond that the series diverges.
        let k_max = (std::f64::consts::PI * r0).ceil() as usize + 4;
        let tail = with_bernoulli(2 * k_max, |b| {
            (1..=k_max)
                .map(|n| {
                    let denom = (2 * n * (2 * n - 1)) as u64;
                    let mut c = Float::with_val(prec, &b[n]);
                    c /= denom;
                    c
                })
                .collect()
        });
        GammaCtx { prec, r0, tail }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Stirling correction T(w) = Σ b_n w^{1−2n} for real w ≥ r0.
    fn tail_real(&self, w: &Float) -> Float {
        let p = self.prec;
        let inv = Float::with_val(p, w.clone().recip());
        let inv2 = inv.clone().square();
        let mut pw = inv;
        let mut sum = Float::new(p);
        let cut = -((p as i32) + 8);
        for b in &self.tail {
            let term = Float::with_val(p, b * &pw);
            sum += &term;
            if term.get_exp().map_or(true, |e| e < cut) {
                break;
            }
            pw *= &inv2;
        }
        sum
    }

    fn tail_cplx(&self, w: &Cplx) -> Cplx {
        let p = self.prec;
        let inv = Cplx::from_real(Float::with_val(p, 1u32)).div(w);
        let inv2 = inv.mul(&inv);
        let mut pw = inv;
        let mut sum = Cplx::zero(p);
        let cut = Float::with_val(p, Float::i_exp(1, -((p as i32) + 8)));
        for b in &self.tail {
            let term = pw.scale(b);
            sum = sum.add(&term);
            if term.abs() < cut {
                break;
            }
            pw = pw.mul(&inv2);
        }
        sum
    }

    /// ln Γ(w) by direct Stirling; requires w ≥ r0 (real case).
    fn ln_gamma_stirling(&self, w: &Float) -> Float {
        let p = self.prec;
        let lnw = w.clone().ln();
        let half = Float::with_val(p, 0.5f64);
        let mut r = Float::with_val(p, w - &half);
        r *= &lnw;
        r -= w;
        let two_pi = Float::with_val(p, 2u32 * pi(p));
        r += two_pi.ln() / 2u32;
        r += self.tail_real(w);
        r
    }

    /// ln Γ(z) for real z > 0, shifting below the Stirling threshold.
    pub fn ln_gamma_pos(&self, z: &Float) -> Float {
        debug_assert!(z.is_sign_positive() && !z.is_zero());
        let p = self.prec;
        let zf = z.to_f64();
        if zf >= self.r0 {
            return self.ln_gamma_stirling(z);
        }
        let n = (self.r0 - zf).ceil() as u32;
        let w = Float::with_val(p, z + n);
        // Π_{k<n} (z+k); magnitude ≤ r0^r0, far inside range.
        let mut prod = Float::with_val(p, 1u32);
        for k in 0..n {
            prod *= Float::with_val(p, z + k);
        }
        self.ln_gamma_stirling(&w) - prod.ln()
    }

    /// Γ(z) for real z, any sign, z not a non-positive integer.
    pub fn gamma_real(&self, z: &Float) -> Float {
        let p = self.prec;
        if z.to_f64() >= 0.5 {
            return self.ln_gamma_pos(z).exp();
        }
        // Reflection: Γ(z) = π / (sin(πz) Γ(1−z)).
        let (s, _) = sin_cos_pi(z, p);
        let one_minus = Float::with_val(p, 1u32 - z);
        let g = self.ln_gamma_pos(&one_minus).exp();
        pi(p) / (s * g)
    }

    /// 1/Γ(z) for real z; exactly 0 at non-positive integers.
    pub fn recip_gamma_real(&self, z: &Float) -> Float {
        let p = self.prec;
        if z.is_zero() || (z.is_integer() && z.is_sign_negative()) {
            return Float::new(p);
        }
        if z.to_f64() >= 0.5 {
            let mut l = self.ln_gamma_pos(z);
            l = -l;
            return l.exp();
        }
        // 1/Γ(z) = sin(πz)·Γ(1−z)/π.
        let (s, _) = sin_cos_pi(z, p);
        let one_minus = Float::with_val(p, 1u32 - z);
        let g = self.ln_gamma_pos(&one_minus).exp();
        s * g / pi(p)
    }

    /// Γ*(z) = Γ(z)·(2π)^{−1/2}·e^z·z^{1/2−z} for real z > 0.
    pub fn gamma_star(&self, z: &Float) -> Float {
        let p = self.prec;
        let lg = self.ln_gamma_pos(z);
        let two_pi = Float::with_val(p, 2u32 * pi(p));
        let half = Float::with_val(p, 0.5f64);
        let mut e = lg - two_pi.ln() / 2u32 + z;
        e += Float::with_val(p, &half - z) * z.clone().ln();
        e.exp()
    }

    /// Γ(w) for complex w with Re w ≥ r0, by Stirling (principal ln w).
    fn gamma_stirling_cplx(&self, w: &Cplx) -> Cplx {
        let p = self.prec;
        let lnw = w.ln();
        let half = Cplx::from_real(Float::with_val(p, 0.5f64));
        let two_pi = Float::with_val(p, 2u32 * pi(p));
        let mut e = w.sub(&half).mul(&lnw).sub(w);
        e.re += two_pi.ln() / 2u32;
        e = e.add(&self.tail_cplx(w));
        e.exp()
    }

    /// 1/Γ(z) for complex z (entire function; finite everywhere).
    pub fn recip_gamma_cplx(&self, z: &Cplx) -> Cplx {
        let p = self.prec;
        let re = z.re.to_f64();
        if re >= 0.5 {
            // Shift into the Stirling region: 1/Γ(z) = Π_{k<n}(z+k) / Γ(z+n).
            let n = if re >= self.r0 {
                0u32
            } else {
                (self.r0 - re).ceil() as u32
            };
            let mut prod = Cplx::from_real(Float::with_val(p, 1u32));
            for k in 0..n {
                let zk = Cplx::new(Float::with_val(p, &z.re + k), z.im.clone());
                prod = prod.mul(&zk);
            }
            let w = Cplx::new(Float::with_val(p, &z.re + n), z.im.clone());
            return prod.div(&self.gamma_stirling_cplx(&w));
        }
        // Reflection: 1/Γ(z) = sin(πz)·Γ(1−z)/π.
        let s = sin_pi_cplx(z, p);
        let one = Float::with_val(p, 1u32);
        let om = Cplx::new(Float::with_val(p, &one - &z.re), Float::with_val(p, -&z.im));
        let g = if om.re.to_f64() >= self.r0 {
            self.gamma_stirling_cplx(&om)
        } else {
            let n = (self.r0 - om.re.to_f64()).ceil() as u32;
            let mut prod = Cplx::from_real(Float::with_val(p, 1u32));
            for k in 0..n {
                prod = prod.mul(&Cplx::new(Float::with_val(p, &om.re + k), om.im.clone()));
            }
            let w = Cplx::new(Float::with_val(p, &om.re + n), om.im.clone());
            self.gamma_stirling_cplx(&w).div(&prod)
        };
        s.mul(&g).scale(&pi(p).recip())
    }
}

/// sin(πz) for complex z with the real part reduced exactly:
/// sin(π(x+iy)) = sin(πx)cosh(πy) + i·cos(πx)sinh(πy).
fn sin_pi_cplx(z: &Cplx, prec: u32) -> Cplx {
    let (s, c) = sin_cos_pi(&z.re, prec);
    let py = Float::with_val(prec, pi(prec) * &z.im);
    let ch = py.clone().cosh();
    let sh = py.sinh();
    Cplx::new(s * ch, c * sh)
}

/// ln|Γ(x)| in f64, for cheap term-size scans (≈10 significant digits).
///
/// Used only to pre-size working precision before an exact summation; never
/// feeds a returned value.
pub(crate) fn ln_abs_gamma_f64(x: f64) -> f64 {
    if x < 0.5 {
        // ln|Γ(x)| = ln π − ln|sin πx| − ln Γ(1−x)
        let s = (std::f64::consts::PI * frac_mod2(x)).sin().abs();
        if s == 0.0 {
            return f64::INFINITY; // pole
        }
        return std::f64::consts::PI.ln() - s.ln() - ln_abs_gamma_f64(1.0 - x);
    }
    let mut x = x;
    let mut shift = 0.0f64;
    while x < 10.0 {
        shift += x.ln();
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // B_2/2, B_4/(4·3), B_6/(6·5), B_8/(8·7)
    let tail = (1.0 / 12.0
        + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))))
        / x;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + tail - shift
}

/// ln|1/Γ(x)| in f64 (−∞ at poles), same sizing-only caveat.
/// Smooth upper envelope of ln|1/Γ(x)|. On the left half-line the reflection
/// |1/Γ(x)| = |sin(πx)|·Γ(1−x)/π oscillates through zeros, so a sampled walk
/// over it can mistake a dip near a zero for genuine decay; dropping the
/// bounded sine factor leaves a smooth profile that is safe to size against.
pub(crate) fn ln_recip_gamma_envelope_f64(x: f64) -> f64 {
    if x >= 0.5 {
        -ln_abs_gamma_f64(x)
    } else {
        ln_abs_gamma_f64(1.0 - x) - std::f64::consts::PI.ln()
    }
}

fn frac_mod2(x: f64) -> f64 {
    let r = x % 2.0;
    if r < 0.0 {
        r + 2.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::{bits, float, parse};

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let ctx = GammaCtx::new(bits(50));
        let g = ctx.gamma_real(&float(ctx.prec(), 0.5f64));
        let sp = pi(ctx.prec()).sqrt();
        assert!((g - sp).abs() < float(ctx.prec(), 1e-48));
    }

    #[test]
    fn gamma_small_integers() {
        let ctx = GammaCtx::new(bits(40));
        for (z, want) in [(1u32, 1u64), (2, 1), (3, 2), (4, 6), (5, 24), (8, 5040)] {
            let g = ctx.gamma_real(&float(ctx.prec(), z));
            assert!(
                (g - want).abs() < float(ctx.prec(), 1e-30),
                "Gamma({z}) mismatch"
            );
        }
    }

    #[test]
    fn recip_gamma_poles_are_exact_zero() {
        let ctx = GammaCtx::new(bits(40));
        for z in [0i32, -1, -2, -7, -40] {
            let r = ctx.recip_gamma_real(&float(ctx.prec(), z));
            assert!(r.is_zero(), "1/Gamma({z}) must be exactly zero");
        }
    }

    #[test]
    fn reflection_negative_argument() {
        // Γ(−1/2) = −2√π
        let ctx = GammaCtx::new(bits(50));
        let g = ctx.gamma_real(&float(ctx.prec(), -0.5f64));
        let want = -float(ctx.prec(), 2u32) * pi(ctx.prec()).sqrt();
        assert!((g - want).abs() < float(ctx.prec(), 1e-45));
    }

    #[test]
    fn gamma_star_frozen_value() {
        // Reference value computed independently at 25 digits.
        let ctx = GammaCtx::new(bits(60));
        let got = ctx.gamma_star(&float(ctx.prec(), 50u32));
        let want = parse(ctx.prec(), "1.001668034070735365868975");
        assert!((got - want).abs() < float(ctx.prec(), 1e-24));
    }

    #[test]
    fn complex_recip_matches_real_axis() {
        let ctx = GammaCtx::new(bits(45));
        for z in [3.25f64, 0.75, -2.3, -17.8] {
            let r1 = ctx.recip_gamma_real(&float(ctx.prec(), z));
            let r2 = ctx.recip_gamma_cplx(&Cplx::from_real(float(ctx.prec(), z)));
            let scale = float(ctx.prec(), 1u32).max(&r1.clone().abs());
            assert!(
                (r1 - &r2.re).abs() < float(ctx.prec(), 1e-38) * scale && r2.im.is_zero(),
                "complex path deviates at {z}"
            );
        }
    }

    #[test]
    fn complex_recip_conjugate_symmetry() {
        let ctx = GammaCtx::new(bits(45));
        let z = Cplx::new(float(ctx.prec(), -1.3f64), float(ctx.prec(), 2.7f64));
        let a = ctx.recip_gamma_cplx(&z);
        let b = ctx.recip_gamma_cplx(&z.conj());
        assert!((a.re.clone() - &b.re).abs() < float(ctx.prec(), 1e-38));
        assert!((a.im.clone() + &b.im).abs() < float(ctx.prec(), 1e-38));
    }

    #[test]
    fn f64_scan_helper_sanity() {
        assert!((ln_abs_gamma_f64(10.0) - 12.801827480081469).abs() < 1e-9);
        assert!((ln_abs_gamma_f64(0.5) - 0.5723649429247001).abs() < 1e-9);
        // Γ(−2.5) = −8√π/15 → ln|Γ| = ln(8√π/15)
        let want = (8.0 * std::f64::consts::PI.sqrt() / 15.0f64).ln();
        assert!((ln_abs_gamma_f64(-2.5) - want).abs() < 1e-9);
    }
}
