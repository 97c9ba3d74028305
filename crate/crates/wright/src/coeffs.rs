//! Asymptotic-expansion coefficients c_j(σ), computed two independent ways.
//!
//! Closed form: c_j = (2−σ)(1−2σ)/(2^{3j} 3^j j! σ^j) · d_j(σ) with fixed
//! polynomials d_1..d_6 (stored as exact integer data below; the table is
//! cross-validated against the algorithmic path to well below 10⁻¹⁰ across
//! σ ∈ (0,1), and both reproduce the same published reference values).
//!
//! Algorithmic path: write the termwise gamma-ratio of the expansion as
//! R(s)·Υ(s) with
//!
//!   Υ(s) = Γ*(σs+σ)·Γ*(κs+ϑ′)/Γ*(1+s),   ϑ′ = 3/2 − σ,
//!   R(s) = e(σs;σ)·e(κs;ϑ′)/e(s;1),
//!   e(αs;a) = e^{−a}(1 + a/(αs))^{αs+a−1/2},
//!
//! expand everything as a truncated power series in 1/s using the Stirling
//! coefficients γ_k of Γ*(z) ~ Σ (−1)^k γ_k z^{−k}, convert to the variable
//! v = 1/(κs), and match against the inverse-factorial basis
//! 1/(κs+ϑ′)_j = v^j·Π_{l<j}(1+(ϑ′+l)v)^{−1}. The change of basis is
//! triangular with unit diagonal, so the c_j pop out by forward
//! elimination. All of this is done in exact rational arithmetic when σ is
//! rational, else in floats at twice the requested precision.

use crate::bernoulli::with_bernoulli;
use crate::core::Sigma;
use crate::error::{Result, WrightError};
use crate::powser::{binom_recip_pow, log1p_cv, FloatRing, RatRing, Ring, Series};
use crate::prec::bits;
use rug::{Float, Integer, Rational};

/// Default ceiling on the number of coefficients the algorithmic path will
/// produce in one call.
pub const DEFAULT_COEFF_CEILING: usize = 100;

/// Which path produced a coefficient table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMethod {
    /// The fixed d_j(σ) polynomial table (available through j = 6).
    ClosedForm,
    /// The inverse-factorial expansion algorithm (any order).
    InverseFactorial,
}

/// c_0..c_{M−1}(σ) with the method that produced them.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub sigma: Sigma,
    pub coeffs: Vec<Float>,
    pub method: CoeffMethod,
    pub m: usize,
}

/// Exact Stirling coefficients γ_0..γ_K of Γ*(z) ~ Σ (−1)^k γ_k z^{−k}.
///
/// Generated by exponentiating ln Γ*(z) = Σ_{n≥1} B_{2n}/(2n(2n−1)) z^{1−2n}
/// as an exact rational power series.
#[derive(Clone, Debug)]
pub struct StirlingCoeffs {
    pub gammas: Vec<Rational>,
}

/// γ_0..γ_K, exact.
pub fn stirling_coeffs(k_max: usize) -> StirlingCoeffs {
    let g = gstar_series_exact(k_max);
    let gammas = g
        .into_iter()
        .enumerate()
        .map(|(k, gk)| if k % 2 == 1 { -gk } else { gk })
        .collect();
    StirlingCoeffs { gammas }
}

/// Coefficients g_k of Γ*(z) ~ Σ g_k z^{−k} (so g_k = (−1)^k γ_k), exact.
fn gstar_series_exact(k_max: usize) -> Vec<Rational> {
    // T(u) = Σ_{n≥1} B_{2n}/(2n(2n−1)) u^{2n−1} truncated at order k_max.
    let mut t = Series::zero(RatRing, k_max);
    with_bernoulli(k_max + 1, |b| {
        let mut n = 1usize;
        while 2 * n - 1 <= k_max {
            let denom = Rational::from(((2 * n * (2 * n - 1)) as u64, 1u64));
            t.c[2 * n - 1] = Rational::from(&b[n] / denom);
            n += 1;
        }
    });
    t.exp().c
}

/// Integer data for d_1..d_6: (denominator, ascending σ-coefficients).
/// Validated against the inverse-factorial algorithm at 30+ digits.
fn d_poly(j: usize) -> (i64, Vec<Integer>) {
    match j {
        1 => (1, vec![Integer::from(1)]),
        2 => (1, [2i64, 19, 2].iter().map(|&v| Integer::from(v)).collect()),
        3 => (
            5,
            [-556i64, 1628, 9093, 1628, -556]
                .iter()
                .map(|&v| Integer::from(v))
                .collect(),
        ),
        4 => (
            5,
            [-4568i64, -226668, 465702, 2013479, 465702, -226668, -4568]
                .iter()
                .map(|&v| Integer::from(v))
                .collect(),
        ),
        5 => (
            7,
            [
                2622064i64,
                -12598624,
                -167685080,
                302008904,
                1115235367,
                302008904,
                -167685080,
                -12598624,
                2622064,
            ]
            .iter()
            .map(|&v| Integer::from(v))
            .collect(),
        ),
        6 => (
            35,
            [
                167898208i64,
                22774946512,
                -88280004528,
                -611863976472,
                1041430242126,
                3446851131657,
                1041430242126,
                -611863976472,
                -88280004528,
                22774946512,
                167898208,
            ]
            .iter()
            .map(|&v| Integer::from(v))
            .collect(),
        ),
        _ => unreachable!("d_poly defined for j = 1..6"),
    }
}

/// Closed-form coefficient table c_0..c_{M−1}; M ≤ 7.
pub fn c_closed(sigma: &Sigma, m: usize, digits: u32) -> Result<CoefficientTable> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    if m < 1 || m > 7 {
        return Err(WrightError::Range(format!(
            "closed-form coefficients exist for 1 <= M <= 7, got {m}"
        )));
    }
    let p = bits(digits);
    let coeffs = match sigma.as_rational() {
        Some(r) => c_closed_exact(r, m)
            .into_iter()
            .map(|c| Float::with_val(p, c))
            .collect(),
        None => c_closed_float(v, m, p),
    };
    Ok(CoefficientTable {
        sigma: sigma.clone(),
        coeffs,
        method: CoeffMethod::ClosedForm,
        m,
    })
}

fn c_closed_exact(sigma: &Rational, m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from(1u32)];
    // prefator (2−σ)(1−2σ)
    let two_minus = Rational::from(2u32) - sigma.clone();
    let one_minus2 = Rational::from(1u32) - Rational::from(2u32 * sigma.clone());
    let pre = two_minus * one_minus2;
    let mut fact = Integer::from(1u32); // j!
    let mut pow24 = Integer::from(1u32); // 24^j
    let mut sig_j = Rational::from(1u32); // σ^j
    for j in 1..m {
        fact *= j as u32;
        pow24 *= 24u32;
        sig_j *= sigma;
        let (den, poly) = d_poly(j);
        // d_j(σ) = Σ poly[i] σ^i / den
        let mut d = Rational::new();
        let mut sp = Rational::from(1u32);
        for coef in &poly {
            d += Rational::from(coef * &sp);
            sp *= sigma;
        }
        d /= Rational::from(den);
        let denom = Rational::from(&pow24 * &fact) * &sig_j;
        out.push(Rational::from(&pre * &d) / denom);
    }
    out
}

fn c_closed_float(sigma: f64, m: usize, p: u32) -> Vec<Float> {
    let s = Float::with_val(p, sigma);
    let mut out = vec![Float::with_val(p, 1u32)];
    let pre = Float::with_val(p, 2u32 - &s) * Float::with_val(p, 1i32 - Float::with_val(p, 2u32 * &s));
    let mut fact = Float::with_val(p, 1u32);
    let mut pow24 = Float::with_val(p, 1u32);
    let mut sig_j = Float::with_val(p, 1u32);
    for j in 1..m {
        fact *= j as u32;
        pow24 *= 24u32;
        sig_j *= &s;
        let (den, poly) = d_poly(j);
        let mut d = Float::new(p);
        let mut sp = Float::with_val(p, 1u32);
        for coef in &poly {
            d += Float::with_val(p, coef * &sp);
            sp *= &s;
        }
        d /= den;
        let denom = Float::with_val(p, &pow24 * &fact) * &sig_j;
        out.push(Float::with_val(p, &pre * &d) / denom);
    }
    out
}

/// Expansion of e(αs;a) = e^{−a}(1+a/(αs))^{αs+a−1/2} in powers of 1/s,
/// through order `j`. The order-1 coefficient is a(a−1)/(2α).
pub fn e_factor_series(alpha: &Rational, a: &Rational, j: usize) -> Vec<Rational> {
    e_factor_series_in(&RatRing, &alpha.clone(), &a.clone(), j).c
}

/// Generic e-factor expansion over any coefficient ring.
fn e_factor_series_in<R: Ring>(ring: &R, alpha: &R::El, a: &R::El, order: usize) -> Series<R> {
    // Work one order higher: the αs·ln(...) product shifts down by one.
    let c = ring.div(a, alpha); // a/α
    let l = log1p_cv(ring.clone(), &c, order + 1); // ln(1+(a/α)u)
    // (αs + a − 1/2)·L − a  where s = 1/u:
    //   α·(L shifted down one)  +  (a − 1/2)·L  −  a
    let mut expo = Series::zero(ring.clone(), order);
    for k in 0..=order {
        // α·L_{k+1}
        let mut term = ring.mul(alpha, &l.c[k + 1]);
        if k >= 1 {
            let half = ring.div(&ring.one(), &ring.from_i64(2));
            let am = ring.sub(a, &half);
            term = ring.add(&term, &ring.mul(&am, &l.c[k]));
        }
        expo.c[k] = term;
    }
    // Constant term is α·(a/α) − a = 0 by construction; force exact zero so
    // exp() sees it.
    expo.c[0] = ring.zero();
    expo.exp()
}

/// Γ*(αs+a) as a series in u = 1/s through `order`, using exact γ_k data
/// converted into the ring.
fn gamma_star_series_in<R: Ring>(
    ring: &R,
    alpha: &R::El,
    a: &R::El,
    g_exact: &[Rational],
    order: usize,
    conv: &impl Fn(&Rational) -> R::El,
) -> Series<R> {
    // (αs+a)^{−k} = (u/α)^k (1 + (a/α)u)^{−k}
    let c = ring.div(a, alpha);
    let inv_alpha = ring.div(&ring.one(), alpha);
    let mut sum = Series::zero(ring.clone(), order);
    sum.c[0] = conv(&g_exact[0]); // g_0 = 1
    let mut alpha_pow = ring.one();
    for k in 1..=order {
        alpha_pow = ring.mul(&alpha_pow, &inv_alpha);
        let gk = conv(&g_exact[k]);
        let scale = ring.mul(&gk, &alpha_pow);
        if ring.is_zero(&scale) {
            continue;
        }
        let b = binom_recip_pow(ring.clone(), &c, k as u32, order - k);
        for i in 0..=(order - k) {
            let t = ring.mul(&scale, &b.c[i]);
            sum.c[k + i] = ring.add(&sum.c[k + i], &t);
        }
    }
    sum
}

/// The full R(s)·Υ(s) product as a series in u = 1/s.
fn rv_upsilon_series_in<R: Ring>(
    ring: &R,
    sigma: &R::El,
    order: usize,
    conv: &impl Fn(&Rational) -> R::El,
) -> Series<R> {
    let one = ring.one();
    let kappa = ring.sub(&one, sigma);
    let three_half = ring.div(&ring.from_i64(3), &ring.from_i64(2));
    let theta_p = ring.sub(&three_half, sigma); // ϑ′ = 3/2 − σ
    let g = gstar_series_exact(order);
    // Υ = Γ*(σs+σ)·Γ*(κs+ϑ′)/Γ*(1+s)
    let g1 = gamma_star_series_in(ring, sigma, sigma, &g, order, conv);
    let g2 = gamma_star_series_in(ring, &kappa, &theta_p, &g, order, conv);
    let g3 = gamma_star_series_in(ring, &one, &one, &g, order, conv);
    let upsilon = g1.mul(&g2).mul(&g3.recip());
    // R = e(σs;σ)·e(κs;ϑ′)/e(s;1)
    let e1 = e_factor_series_in(ring, sigma, sigma, order);
    let e2 = e_factor_series_in(ring, &kappa, &theta_p, order);
    let e3 = e_factor_series_in(ring, &one, &one, order);
    let r = e1.mul(&e2).mul(&e3.recip());
    r.mul(&upsilon)
}

/// Convert the u-series to v = u/κ and solve the triangular system against
/// the inverse-factorial basis, returning c_0..c_{M−1}.
fn extract_coeffs_in<R: Ring>(
    ring: &R,
    sigma: &R::El,
    m: usize,
    conv: &impl Fn(&Rational) -> R::El,
) -> Vec<R::El> {
    let order = m - 1;
    let p_u = rv_upsilon_series_in(ring, sigma, order, conv);
    // v = 1/(κs) = u/κ  ⇒  coefficient of v^j is P_j·κ^j.
    let one = ring.one();
    let kappa = ring.sub(&one, sigma);
    let three_half = ring.div(&ring.from_i64(3), &ring.from_i64(2));
    let theta_p = ring.sub(&three_half, sigma);
    let mut p_v = Vec::with_capacity(order + 1);
    let mut kpow = ring.one();
    for j in 0..=order {
        p_v.push(ring.mul(&p_u.c[j], &kpow));
        kpow = ring.mul(&kpow, &kappa);
    }
    // Basis element W_i(v) = v^i·Π_{l<i}(1+(ϑ′+l)v)^{−1}, built iteratively.
    let mut basis: Vec<Series<R>> = Vec::with_capacity(order + 1);
    basis.push(Series::one(ring.clone(), order));
    for i in 0..order {
        let fac = ring.add(&theta_p, &ring.from_i64(i as i64));
        let recip = binom_recip_pow(ring.clone(), &fac, 1, order);
        let next = basis[i].mul(&recip).shift(1);
        basis.push(next);
    }
    // Forward elimination: c_m = Pv[m] − Σ_{i<m} c_i·W_i[m].
    let mut c = Vec::with_capacity(order + 1);
    for mm in 0..=order {
        let mut acc = p_v[mm].clone();
        for (i, ci) in c.iter().enumerate().take(mm) {
            let t = ring.mul(ci, &basis[i].c[mm]);
            acc = ring.sub(&acc, &t);
        }
        c.push(acc);
    }
    c
}

/// Quantities used by the algorithmic path, exposed for validation:
/// ϑ′ = 3/2−σ, 𝒜 = σ−1−(ϑ/κ)(1−ϑ), ℬ = 1/σ+σ/κ, and the power-series
/// coefficients of R(s)Υ(s) in (κs)^{−1}. The order-1 identity
/// c_1 = ½κ(𝒜 + ℬ/6) ties them together.
#[derive(Clone, Debug)]
pub struct InverseFactorialWork {
    pub theta_prime: Float,
    pub a_script: Float,
    pub b_script: Float,
    pub c_series: Vec<Float>,
}

/// Compute the diagnostic quantities for `sigma` at `digits` precision.
pub fn inverse_factorial_work(sigma: &Sigma, m: usize, digits: u32) -> Result<InverseFactorialWork> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    let p = bits(2 * digits);
    let pout = bits(digits);
    let sf = sigma.to_float(p);
    let kappa = Float::with_val(p, 1u32 - &sf);
    let theta = Float::with_val(p, &sf - 0.5f64);
    let theta_prime = Float::with_val(p, 1.5f64 - &sf);
    let a_script = Float::with_val(p, &sf - 1u32)
        - Float::with_val(p, &theta / &kappa) * Float::with_val(p, 1u32 - &theta);
    let b_script = Float::with_val(p, sf.clone().recip()) + Float::with_val(p, &sf / &kappa);
    let ring = FloatRing { prec: p };
    let conv = |r: &Rational| Float::with_val(p, r);
    let order = m.max(2) - 1;
    let p_u = rv_upsilon_series_in(&ring, &sf, order, &conv);
    let mut c_series = Vec::with_capacity(order + 1);
    let mut kpow = Float::with_val(p, 1u32);
    for j in 0..=order {
        c_series.push(Float::with_val(pout, Float::with_val(p, &p_u.c[j] * &kpow)));
        kpow *= &kappa;
    }
    Ok(InverseFactorialWork {
        theta_prime: Float::with_val(pout, theta_prime),
        a_script: Float::with_val(pout, a_script),
        b_script: Float::with_val(pout, b_script),
        c_series,
    })
}

/// Algorithmic coefficient table with the default ceiling.
pub fn c_algorithm(sigma: &Sigma, m: usize, digits: u32) -> Result<CoefficientTable> {
    c_algorithm_with_ceiling(sigma, m, DEFAULT_COEFF_CEILING, digits)
}

/// Algorithmic coefficient table; `ceiling` bounds the order.
pub fn c_algorithm_with_ceiling(
    sigma: &Sigma,
    m: usize,
    ceiling: usize,
    digits: u32,
) -> Result<CoefficientTable> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    if m < 1 {
        return Err(WrightError::Range("need M >= 1 coefficients".into()));
    }
    if m > ceiling {
        return Err(WrightError::Range(format!(
            "M = {m} exceeds the coefficient ceiling {ceiling}"
        )));
    }
    let pout = bits(digits);
    let coeffs: Vec<Float> = match sigma.as_rational() {
        Some(r) => {
            let ring = RatRing;
            let conv = |q: &Rational| q.clone();
            extract_coeffs_in(&ring, r, m, &conv)
                .into_iter()
                .map(|c| Float::with_val(pout, c))
                .collect()
        }
        None => {
            // Floats at twice the requested precision: the elimination
            // amplifies rounding.
            let p = bits(2 * digits);
            let ring = FloatRing { prec: p };
            let conv = |q: &Rational| Float::with_val(p, q);
            let sf = Float::with_val(p, v);
            extract_coeffs_in(&ring, &sf, m, &conv)
                .into_iter()
                .map(|c| Float::with_val(pout, c))
                .collect()
        }
    };
    Ok(CoefficientTable {
        sigma: sigma.clone(),
        coeffs,
        method: CoeffMethod::InverseFactorial,
        m,
    })
}

/// Convenience: the best coefficient source for a given order — closed form
/// through 7 coefficients, algorithmic beyond.
pub fn coefficients(sigma: &Sigma, m: usize, digits: u32) -> Result<CoefficientTable> {
    if m <= 7 {
        c_closed(sigma, m, digits)
    } else {
        c_algorithm(sigma, m, digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::float;

    #[test]
    fn stirling_first_four() {
        let s = stirling_coeffs(3);
        assert_eq!(s.gammas[0], Rational::from(1u32));
        assert_eq!(s.gammas[1], Rational::from((-1i32, 12u32)));
        assert_eq!(s.gammas[2], Rational::from((1u32, 288u32)));
        assert_eq!(s.gammas[3], Rational::from((139u32, 51840u32)));
    }

    #[test]
    fn stirling_k0() {
        let s = stirling_coeffs(0);
        assert_eq!(s.gammas, vec![Rational::from(1u32)]);
    }

    #[test]
    fn e_factor_order1() {
        // order-1 coefficient = a(a−1)/(2α)
        let cases = [
            ((1i64, 1i64), (1i64, 1i64)), // a=1 → 0
            ((1, 4), (1, 4)),             // α=σ=1/4 → (1/4)(−3/4)/(1/2) = −3/8
            ((1, 1), (2, 1)),             // α=1, a=2 → 1
        ];
        for ((an, ad), (bn, bd)) in cases {
            let alpha = Rational::from((an, ad));
            let a = Rational::from((bn, bd));
            let e = e_factor_series(&alpha, &a, 3);
            let want = Rational::from(&a * Rational::from(&a - Rational::from(1u32)))
                / (Rational::from(2u32) * &alpha);
            assert_eq!(e[1], want, "alpha={alpha}, a={a}");
            assert_eq!(e[0], Rational::from(1u32));
        }
    }

    #[test]
    fn e_factor_order2_alpha1_a2() {
        // Order-2 coefficient of e(s;2): validated against a numerical fit
        // of the defining expression at large s (three-point Richardson).
        let e = e_factor_series(&Rational::from(1u32), &Rational::from(2u32), 2);
        assert_eq!(e[2], Rational::from((1u32, 6u32)));
    }

    #[test]
    fn c1_from_script_quantities() {
        // c_1 = ½κ(𝒜 + ℬ/6) must match the closed form (2−σ)(1−2σ)/(24σ).
        for (n, d) in [(1i64, 4i64), (2, 5), (3, 4), (1, 3)] {
            let sig = Sigma::ratio(n, d);
            let w = inverse_factorial_work(&sig, 3, 30).unwrap();
            let p = w.a_script.prec();
            let sf = sig.to_float(p);
            let kappa = Float::with_val(p, 1u32 - &sf);
            let c1 = Float::with_val(p, &w.a_script + Float::with_val(p, &w.b_script / 6u32))
                * kappa
                / 2u32;
            let table = c_closed(&sig, 2, 30).unwrap();
            let diff = Float::with_val(p, &c1 - &table.coeffs[1]).abs();
            assert!(diff < float(p, 1e-25), "sigma={n}/{d}");
        }
    }

    #[test]
    fn closed_form_half_vanishes() {
        let t = c_closed(&Sigma::ratio(1, 2), 7, 30).unwrap();
        assert_eq!(t.coeffs[0], 1u32);
        for j in 1..7 {
            assert!(t.coeffs[j].is_zero(), "c_{j}(1/2) must vanish");
        }
    }

    #[test]
    fn algorithm_half_vanishes() {
        let t = c_algorithm(&Sigma::ratio(1, 2), 10, 30).unwrap();
        let p = t.coeffs[0].prec();
        assert!((t.coeffs[0].clone() - 1u32).abs() < float(p, 1e-28));
        for j in 1..10 {
            assert!(
                t.coeffs[j].clone().abs() < float(p, 1e-25),
                "c_{j}(1/2) must vanish, got {}",
                t.coeffs[j]
            );
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            c_closed(&Sigma::ratio(1, 4), 8, 20),
            Err(WrightError::Range(_))
        ));
        assert!(matches!(
            c_closed(&Sigma::ratio(1, 4), 0, 20),
            Err(WrightError::Range(_))
        ));
        assert!(matches!(
            c_algorithm_with_ceiling(&Sigma::ratio(1, 4), 101, 100, 20),
            Err(WrightError::Range(_))
        ));
        assert!(matches!(
            c_closed(&Sigma::from_f64(1.2), 3, 20),
            Err(WrightError::Domain(_))
        ));
    }

    #[test]
    fn cross_validation_spot() {
        // Full 8-σ sweep lives in the integration suite; spot-check one
        // rational and one irrational σ here.
        for sig in [Sigma::ratio(1, 4), Sigma::from_f64(0.61803398875)] {
            let a = c_algorithm(&sig, 7, 40).unwrap();
            let c = c_closed(&sig, 7, 40).unwrap();
            let p = a.coeffs[0].prec();
            for j in 0..7 {
                let diff = Float::with_val(p, &a.coeffs[j] - &c.coeffs[j]).abs();
                assert!(
                    diff < float(p, 1e-12),
                    "j={j}: algorithm {} vs closed {}",
                    a.coeffs[j],
                    c.coeffs[j]
                );
            }
        }
    }
}
