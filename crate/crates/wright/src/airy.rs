//! Airy function Ai(x) by its Maclaurin pair, as an independent oracle.
//!
//! Ai(x) = c₁·f(x) − c₂·g(x) with
//!
//!   f(x) = Σ_{k≥0} 3^k (1/3)_k x^{3k}/(3k)!,
//!   g(x) = Σ_{k≥0} 3^k (2/3)_k x^{3k+1}/(3k+1)!,
//!   c₁ = Ai(0) = 3^{−2/3}/Γ(2/3),   c₂ = −Ai′(0) = 3^{−1/3}/Γ(1/3).
//!
//! Both component series are entire with all-positive terms for x > 0, but
//! the combination cancels down to Ai(x) ~ e^{−ζ}, ζ = (2/3)x^{3/2}, so the
//! working precision is padded by the ~2ζ·log₂e bits the cancellation
//! destroys. This routine deliberately shares nothing with the Wright-series
//! machinery — it exists to cross-check it.

use rug::Float;

use crate::gamma::GammaCtx;


/// Ai(x) at the precision of `x`.
pub fn airy_ai(x: &Float) -> Float {
    let p = x.prec();
    // Cancellation padding for x > 0: the f,g humps grow like e^{+ζ} while
    // Ai decays like e^{−ζ}.
    let xf = x.to_f64();
    let zeta = if xf > 0.0 { (2.0 / 3.0) * xf.powf(1.5) } else { 0.0 };
    let wp = p + (2.2 * zeta / std::f64::consts::LN_2).ceil() as u32 + 24;

    let xw = Float::with_val(wp, x);
    let x3 = Float::with_val(wp, xw.clone().square() * &xw);
    let mut tiny = Float::with_val(wp, 1u32);
    tiny >>= wp + 8; // 2^{−(wp+8)}: below the last retained bit

    // f(x): t_{k+1} = t_k · x³ / ((3k+2)(3k+3))
    let mut f = Float::with_val(wp, 1u32);
    let mut t = Float::with_val(wp, 1u32);
    let mut k = 0u64;
    loop {
        t *= &x3;
        t /= (3 * k + 2) * (3 * k + 3);
        f += &t;
        k += 1;
        if t.clone().abs() < tiny || k > 100_000 {
            break;
        }
    }
    // g(x): t_{k+1} = t_k · x³ / ((3k+3)(3k+4)), starting from t_0 = x.
    let mut g = xw.clone();
    let mut t = xw.clone();
    let mut k = 0u64;
    loop {
        t *= &x3;
        t /= (3 * k + 3) * (3 * k + 4);
        g += &t;
        k += 1;
        if t.clone().abs() < tiny || k > 100_000 {
            break;
        }
    }

    let ctx = GammaCtx::new(wp);
    let third = Float::with_val(wp, 1u32) / 3u32;
    let two_third = Float::with_val(wp, 2u32) / 3u32;
    // 3^{−2/3} = exp(−(2/3)ln3), 3^{−1/3} likewise.
    let ln3 = Float::with_val(wp, 3u32).ln();
    let c1 = Float::with_val(wp, -(two_third.clone() * &ln3)).exp() / ctx.gamma_real(&two_third);
    let c2 = Float::with_val(wp, -(third.clone() * &ln3)).exp() / ctx.gamma_real(&third);

    Float::with_val(p, c1 * f - c2 * g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::{bits, float, parse};

    #[test]
    fn value_at_zero() {
        // Ai(0) = 3^{−2/3}/Γ(2/3) ≈ 0.3550280538878172
        let p = bits(30);
        let got = airy_ai(&float(p, 0u32));
        let want = parse(p, "0.35502805388781723926006318600418");
        assert!((got - want).abs() < float(p, 1e-28));
    }

    #[test]
    fn value_at_one() {
        // Ai(1) ≈ 0.1352924163128814 (standard reference value)
        let p = bits(25);
        let got = airy_ai(&float(p, 1u32));
        let want = parse(p, "0.13529241631288141552414742352");
        assert!((got - want).abs() < float(p, 1e-23));
    }

    #[test]
    fn negative_argument() {
        // Ai(−2) ≈ 0.2274074282016855 (oscillatory side)
        let p = bits(25);
        let got = airy_ai(&float(p, -2i32));
        let want = parse(p, "0.22740742820168557599192443");
        assert!((got - want).abs() < float(p, 1e-22));
    }

    #[test]
    fn moderately_large_positive() {
        // Ai(5) ≈ 1.0834442813607441734e-4; exercises the cancellation pad.
        let p = bits(30);
        let got = airy_ai(&float(p, 5u32));
        let want = parse(p, "1.08344428136074417349865025033e-4");
        let rel = (got.clone() - &want).abs() / want.clone().abs();
        assert!(rel < float(p, 1e-27), "got {got}");
    }
}
