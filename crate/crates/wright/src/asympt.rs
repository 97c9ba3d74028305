//! Large-argument asymptotic expansions.
//!
//! For x → +∞ both auxiliary functions decay like exp(−X) with
//! X = κ(hx)^{1/κ}, modulated by a single asymptotic power series in
//! (−X)^{−1} whose coefficients c_j(σ) come from [`crate::coeffs`]:
//!
//! * M_σ(x) ~ (A(σ)/2π) X^ϑ e^{−X} Σ_j c_j (−X)^{−j},
//! * F_σ(x) ~ (A′(σ)/2π) X^{1/2} e^{−X} Σ_j c_j (−X)^{−j}.
//!
//! On the negative axis the behavior is compound: an exponential (cosine)
//! part with growth factor e^{X cos(πσ/κ)} and an algebraic part in inverse
//! powers x^{−k/σ}. Which part dominates depends on the σ band (see
//! [`crate::core::Regime`]); at σ = 1/2 the two merge and the compound
//! expansion is invalid — the exact Gaussian value must be used instead.
//!
//! The same machinery evaluates ℱ(z) = Σ_{n≥0} Γ(σn+σ) z^n/n! for large
//! complex z: an exponential expansion E(z) in the sector |arg z| < πκ, an
//! algebraic expansion in inverse powers of z·e^{∓iπ} everywhere away from
//! the rays |arg z| = πκ, and a dedicated evaluation *on* those rays where
//! the algebraic series must be optimally truncated and the exponential
//! series enters with half weight (the average of its values on the two
//! sides of the ray).
//!
//! All phase factors of the form (x e^{iπt})^s are assembled analytically
//! as x^s·e^{iπts} — the phase stays a number in units of π and is never
//! recovered from an `atan2`, so no branch-cut surprises enter. Cosine
//! arguments are reduced modulo 2π at padded precision before evaluation.

use rug::{Float, Integer, Rational};

use crate::coeffs::{c_algorithm, coefficients, DEFAULT_COEFF_CEILING};
use crate::core::{
    big_x, classify_regime, derive_params, BigX, Real, Regime, Sigma, SigmaParams,
};
use crate::error::{Result, WrightError};
use crate::gamma::GammaCtx;
use crate::prec::{cispi, cos_reduced, float, pi, pow_on_ray, sin_cos_pi, Cplx};
use crate::series::PolarArg;

/// Default decimal working target for the expansion evaluators.
pub const ASYMPT_DIGITS: u32 = 50;

/// Default half-width (radians) of the exclusion zone around the rays
/// |arg z| = πκ where the plain sector expansions are refused.
pub const DEFAULT_STOKES_MARGIN_RAD: f64 = 0.05;

/// Coefficient budget when scanning for an optimal exponential truncation.
const EXP_SCAN_COEFFS: usize = 30;

/// Scan budgets for the algebraic-series truncation search.
const ALG_SCAN_NONZERO_CAP: usize = 200;
const ALG_SCAN_INDEX_CAP: usize = 1000;

/// The two contributions a compound expansion is assembled from.
#[derive(Clone, Debug)]
pub struct Components<T> {
    pub exponential: T,
    pub algebraic: T,
}

/// Outcome of an asymptotic evaluation.
///
/// `value = components.exponential + components.algebraic` holds exactly;
/// a band where one contribution is absent reports that component as zero
/// with zero terms used.
///
/// `last_term_magnitude` is the error proxy: the magnitude of the first
/// omitted term of the retained series (summed over both parts of a
/// compound expansion), except for the Stokes-line evaluation where it
/// estimates the unresolved smoothing term instead (see [`calf_stokes`]).
///
/// `accuracy_warning` is raised when a *fixed* truncation ran into the
/// divergent tail — the first omitted term is no smaller than the last
/// retained one, so adding terms has stopped helping. Optimally truncated
/// series never warn; their proxy already states the attainable accuracy.
#[derive(Clone, Debug)]
pub struct ExpansionResult<T> {
    pub value: T,
    pub regime: Regime,
    pub exp_terms_used: usize,
    pub alg_terms_used: usize,
    pub last_term_magnitude: Float,
    pub components: Components<T>,
    pub accuracy_warning: bool,
}

/// Truncation request for one series of a compound expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Retain exactly this many term indices from the start of the series.
    Fixed(usize),
    /// Stop at the first local minimum of the term magnitudes.
    Optimal,
}

/// Truncation choices for the negative-axis compound expansions.
#[derive(Clone, Copy, Debug)]
pub struct NegOpts {
    /// Exponential (cosine) series truncation.
    pub j_exp: Truncation,
    /// Algebraic series truncation.
    pub k_alg: Truncation,
}

impl Default for NegOpts {
    fn default() -> Self {
        NegOpts {
            j_exp: Truncation::Optimal,
            k_alg: Truncation::Optimal,
        }
    }
}

/// Which of the two rays x·e^{±iπκ} a Stokes-line evaluation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StokesSign {
    Plus,
    Minus,
}

/// Smallest-term stopping rule: the index of the first local minimum of a
/// magnitude sequence, ties broken toward the smaller index; the last index
/// when the sequence keeps decreasing. Summing an asymptotic series past
/// the returned index makes the result worse, not better.
pub fn optimal_truncation(mags: &[Float]) -> usize {
    for i in 0..mags.len().saturating_sub(1) {
        if mags[i + 1] >= mags[i] {
            return i;
        }
    }
    mags.len().saturating_sub(1)
}

/// Outcome of one series of a compound expansion.
struct PartEval {
    value: Float,
    terms_used: usize,
    proxy: Float,
    warning: bool,
}

/// Shared positive-axis evaluator: prefactor · Σ_{j<J} c_j (−X)^{−j}.
fn pos_core(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    digits: u32,
    f_form: bool,
) -> Result<ExpansionResult<Float>> {
    if j_terms == 0 {
        return Err(WrightError::Range(
            "at least one expansion term is required".into(),
        ));
    }
    if j_terms > DEFAULT_COEFF_CEILING {
        return Err(WrightError::Range(format!(
            "truncation order {} exceeds the coefficient ceiling {}",
            j_terms, DEFAULT_COEFF_CEILING
        )));
    }
    let params = derive_params(sigma, digits + 10)?;
    let wp = params.prec;
    if !(x.is_finite() && x > 0.0) {
        return Err(WrightError::Domain(
            "the x -> +infinity expansion requires x > 0".into(),
        ));
    }
    let regime = classify_regime(sigma)?;
    let xf = float(wp, x);
    let bx = big_x(&params, &xf)?;
    let xx = &bx.value;

    let want = (j_terms + 1).min(DEFAULT_COEFF_CEILING);
    let tab = coefficients(sigma, want, digits + 10)?;
    let have_extra = tab.coeffs.len() > j_terms;

    let xinv = Float::with_val(wp, xx.clone().recip());
    let mut pow = float(wp, 1u32);
    let mut sum = Float::new(wp);
    let mut mags: Vec<Float> = Vec::with_capacity(tab.coeffs.len());
    for (j, c) in tab.coeffs.iter().enumerate() {
        let cw = Float::with_val(wp, c);
        mags.push(Float::with_val(wp, cw.clone().abs() * &pow));
        if j < j_terms {
            let mut t = Float::with_val(wp, &cw * &pow);
            if j % 2 == 1 {
                t = -t;
            }
            sum += &t;
        }
        pow *= &xinv;
    }

    let lnxx = xx.clone().ln();
    let pref_mag = if f_form {
        Float::with_val(
            wp,
            &params.a_prime * Float::with_val(wp, 0.5f64 * &lnxx).exp(),
        )
    } else {
        Float::with_val(
            wp,
            &params.a_sigma * Float::with_val(wp, &params.theta * &lnxx).exp(),
        )
    };
    let damp = Float::with_val(wp, -xx.clone()).exp();
    let mut pref = Float::with_val(wp, &pref_mag * &damp);
    pref /= Float::with_val(wp, 2u32 * pi(wp));

    let value = Float::with_val(wp, &pref * &sum);
    let last_inc = mags[j_terms - 1].clone();
    let first_om = if have_extra {
        Some(mags[j_terms].clone())
    } else {
        None
    };
    let proxy_env = first_om.clone().unwrap_or_else(|| last_inc.clone());
    let proxy = Float::with_val(wp, &pref * &proxy_env);
    let warning = match &first_om {
        Some(f) => f >= &last_inc,
        None => j_terms >= 2 && mags[j_terms - 1] >= mags[j_terms - 2],
    };
    Ok(ExpansionResult {
        value: value.clone(),
        regime,
        exp_terms_used: j_terms,
        alg_terms_used: 0,
        last_term_magnitude: proxy,
        components: Components {
            exponential: value,
            algebraic: Float::new(wp),
        },
        accuracy_warning: warning,
    })
}

/// M_σ(x) for x → +∞: (A(σ)/2π) X^ϑ e^{−X} Σ_{j<J} c_j(σ) (−X)^{−j}.
///
/// `j_terms` is the number of retained terms (the highest retained power is
/// j_terms−1). The error proxy is the magnitude of the first omitted term.
pub fn m_pos_asympt(sigma: &Sigma, x: f64, j_terms: usize) -> Result<ExpansionResult<Float>> {
    pos_core(sigma, x, j_terms, ASYMPT_DIGITS, false)
}

/// [`m_pos_asympt`] at a chosen decimal working target.
pub fn m_pos_asympt_prec(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    digits: u32,
) -> Result<ExpansionResult<Float>> {
    pos_core(sigma, x, j_terms, digits, false)
}

/// F_σ(x) for x → +∞: (A′(σ)/2π) X^{1/2} e^{−X} Σ_{j<J} c_j(σ) (−X)^{−j}.
///
/// Term by term this equals σx·[`m_pos_asympt`], since
/// A′(σ) X^{1/2} = σx·A(σ) X^ϑ identically.
pub fn f_pos_asympt(sigma: &Sigma, x: f64, j_terms: usize) -> Result<ExpansionResult<Float>> {
    pos_core(sigma, x, j_terms, ASYMPT_DIGITS, true)
}

/// [`f_pos_asympt`] at a chosen decimal working target.
pub fn f_pos_asympt_prec(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    digits: u32,
) -> Result<ExpansionResult<Float>> {
    pos_core(sigma, x, j_terms, digits, true)
}

/// Algebraic series of the negative-axis expansion of M_σ(−x):
///
///   Ĥ(x) = (1/σ) Σ_{k≥1} x^{−(k+σ)/σ} / (k! Γ(−k/σ)).
///
/// Gamma poles are decided exactly for rational σ: −k/σ a non-positive
/// integer makes the k-th term exactly zero, and σ = 1/p kills every term,
/// so the series vanishes identically. Optimal truncation scans the
/// *nonzero* term magnitudes for their first local minimum.
fn hat_h_part(
    params: &SigmaParams,
    ctx: &GammaCtx,
    x: &Float,
    trunc: Truncation,
) -> Result<PartEval> {
    let wp = params.prec;
    let sf = &params.sigma_f;
    if params.sigma.one_over_int().is_some() {
        // σ = 1/p: every k ≥ 1 hits a gamma pole; identically zero.
        return Ok(PartEval {
            value: Float::new(wp),
            terms_used: 0,
            proxy: Float::new(wp),
            warning: false,
        });
    }
    let exact = params.sigma.as_rational().cloned();
    let lnx = x.clone().ln();
    let mut e = Float::with_val(wp, &lnx / sf);
    e = -e;
    let u = e.exp(); // x^{−1/σ}
    let xinv = Float::with_val(wp, x.clone().recip());

    let fixed_cap = match trunc {
        Truncation::Fixed(k) => {
            if k == 0 {
                return Err(WrightError::Range(
                    "at least one algebraic term is required".into(),
                ));
            }
            Some(k)
        }
        Truncation::Optimal => None,
    };
    let scan_cap = fixed_cap.map(|kk| kk + 60).unwrap_or(ALG_SCAN_INDEX_CAP);

    let mut upow = float(wp, 1u32);
    let mut kfact = float(wp, 1u32);
    let mut terms: Vec<Float> = Vec::new(); // index k−1 holds term k
    let mut nz: Vec<(usize, Float)> = Vec::new(); // (k, |term_k|) for nonzero terms
    let mut k = 0usize;
    while k < scan_cap {
        k += 1;
        upow *= &u;
        kfact *= k as u32;
        let pole = match &exact {
            Some(r) => {
                let num = Integer::from(r.denom() * -(k as i64));
                Rational::from((num, r.numer().clone())).is_integer()
            }
            None => false,
        };
        let t = if pole {
            Float::new(wp)
        } else {
            let mut a = Float::with_val(wp, -(k as i64));
            a /= sf;
            let rg = ctx.recip_gamma_real(&a);
            let mut t = Float::with_val(wp, &xinv * &upow);
            t *= &rg;
            t /= Float::with_val(wp, &kfact * sf);
            t
        };
        if !t.is_zero() {
            nz.push((k, t.clone().abs()));
        }
        terms.push(t);
        match fixed_cap {
            Some(kk) => {
                if k >= kk && nz.iter().any(|(i, _)| *i > kk) {
                    break;
                }
            }
            None => {
                let n = nz.len();
                if n >= ALG_SCAN_NONZERO_CAP {
                    break;
                }
                if n >= 4 && nz[n - 1].1 > nz[n - 2].1 && nz[n - 2].1 > nz[n - 3].1 {
                    break;
                }
                if let Some((_, m)) = nz.last() {
                    if let Some(ex) = m.get_exp() {
                        if i64::from(ex) < -(wp as i64) - 64 {
                            break; // below working accuracy; truncate here
                        }
                    }
                }
            }
        }
    }

    match fixed_cap {
        Some(kk) => {
            let upto = kk.min(terms.len());
            let mut value = Float::new(wp);
            for t in &terms[..upto] {
                value += t;
            }
            let last_inc = nz
                .iter()
                .rev()
                .find(|(i, _)| *i <= kk)
                .map(|(_, m)| m.clone());
            let first_om = nz.iter().find(|(i, _)| *i > kk).map(|(_, m)| m.clone());
            let proxy = first_om
                .clone()
                .or_else(|| last_inc.clone())
                .unwrap_or_else(|| Float::new(wp));
            let warning = match (&first_om, &last_inc) {
                (Some(f), Some(l)) => f >= l,
                _ => false,
            };
            Ok(PartEval {
                value,
                terms_used: kk,
                proxy,
                warning,
            })
        }
        None => {
            if nz.is_empty() {
                return Ok(PartEval {
                    value: Float::new(wp),
                    terms_used: 0,
                    proxy: Float::new(wp),
                    warning: false,
                });
            }
            let mags: Vec<Float> = nz.iter().map(|(_, m)| m.clone()).collect();
            let pick = optimal_truncation(&mags);
            let k_stop = nz[pick].0;
            let mut value = Float::new(wp);
            for t in &terms[..k_stop] {
                value += t;
            }
            let proxy = if pick + 1 < mags.len() {
                mags[pick + 1].clone()
            } else {
                mags[pick].clone()
            };
            Ok(PartEval {
                value,
                terms_used: k_stop,
                proxy,
                warning: false,
            })
        }
    }
}

/// Exponential (cosine) series of the negative-axis expansion of M_σ(−x):
///
///   Ê(x) = (A(σ) X^ϑ/π) e^{X cos(πσ/κ)}
///          Σ_{j<J} c_j(σ) (−X)^{−j} cos[X sin(πσ/κ) + (π/κ)(ϑ−j)].
///
/// The optimal truncation scans the coefficient envelope |c_j| X^{−j}
/// (the cosine is bounded); cosine arguments are reduced mod 2π at padded
/// precision so large X sin(πσ/κ) keeps full phase accuracy.
fn hat_e_part(
    params: &SigmaParams,
    bx: &BigX,
    trunc: Truncation,
    digits: u32,
) -> Result<PartEval> {
    let wp = params.prec;
    let xx = &bx.value;
    let lnxx = xx.clone().ln();
    let xinv = Float::with_val(wp, xx.clone().recip());

    let (tab, j_terms) = match trunc {
        Truncation::Fixed(j) => {
            if j == 0 {
                return Err(WrightError::Range(
                    "at least one exponential term is required".into(),
                ));
            }
            if j > DEFAULT_COEFF_CEILING {
                return Err(WrightError::Range(format!(
                    "truncation order {} exceeds the coefficient ceiling {}",
                    j, DEFAULT_COEFF_CEILING
                )));
            }
            let want = (j + 1).min(DEFAULT_COEFF_CEILING);
            (coefficients(&params.sigma, want, digits)?, j)
        }
        Truncation::Optimal => {
            let tab = c_algorithm(&params.sigma, EXP_SCAN_COEFFS, digits)?;
            let mut pw = float(wp, 1u32);
            let mut mags = Vec::with_capacity(tab.coeffs.len());
            for c in &tab.coeffs {
                let cw = Float::with_val(wp, c);
                mags.push(Float::with_val(wp, cw.abs() * &pw));
                pw *= &xinv;
            }
            let j = optimal_truncation(&mags) + 1;
            (tab, j)
        }
    };
    let have_extra = tab.coeffs.len() > j_terms;

    let t = Float::with_val(wp, &params.sigma_f / &params.kappa);
    let (st, ct) = sin_cos_pi(&t, wp);
    let mut pref = Float::with_val(wp, &params.theta * &lnxx).exp();
    pref *= Float::with_val(wp, xx * &ct).exp();
    pref *= &params.a_sigma;
    pref /= pi(wp);

    let step = Float::with_val(wp, pi(wp) / &params.kappa);
    let mut alpha0 = Float::with_val(wp, xx * &st);
    alpha0 += Float::with_val(wp, &step * &params.theta);

    let mut pw = float(wp, 1u32);
    let mut sum = Float::new(wp);
    let mut mags: Vec<Float> = Vec::with_capacity(tab.coeffs.len());
    for (j, c) in tab.coeffs.iter().enumerate() {
        let cw = Float::with_val(wp, c);
        mags.push(Float::with_val(wp, cw.clone().abs() * &pw));
        if j < j_terms {
            let alpha = Float::with_val(wp, &alpha0 - Float::with_val(wp, &step * (j as u32)));
            let cosj = cos_reduced(&alpha, wp);
            let mut term = Float::with_val(wp, &cw * &pw);
            term *= &cosj;
            if j % 2 == 1 {
                term = -term;
            }
            sum += &term;
        }
        pw *= &xinv;
    }
    let value = Float::with_val(wp, &pref * &sum);
    let last_inc = mags[j_terms - 1].clone();
    let first_om = if have_extra {
        Some(mags[j_terms].clone())
    } else {
        None
    };
    let proxy_env = first_om.clone().unwrap_or_else(|| last_inc.clone());
    let proxy = Float::with_val(wp, &pref * &proxy_env);
    let warning = match trunc {
        Truncation::Optimal => false,
        Truncation::Fixed(_) => match &first_om {
            Some(f) => f >= &last_inc,
            None => j_terms >= 2 && mags[j_terms - 1] >= mags[j_terms - 2],
        },
    };
    Ok(PartEval {
        value,
        terms_used: j_terms,
        proxy,
        warning,
    })
}

/// Shared negative-axis evaluator; the F-form is −σx times the M-form.
fn neg_core(
    sigma: &Sigma,
    x: f64,
    opts: NegOpts,
    digits: u32,
    f_form: bool,
) -> Result<ExpansionResult<Float>> {
    if sigma.eq_ratio(1, 2) {
        return Err(WrightError::Stokes(
            "the negative-axis expansion is invalid at sigma = 1/2, where its exponential \
             and algebraic parts merge; use the exact value instead: \
             M_{1/2}(-x) = exp(-x^2/4)/sqrt(pi) (see m_closed), and \
             F_{1/2}(-x) = (-x/2) * M_{1/2}(-x)"
                .into(),
        ));
    }
    let params = derive_params(sigma, digits + 10)?;
    let wp = params.prec;
    if !(x.is_finite() && x > 0.0) {
        return Err(WrightError::Domain(
            "the negative-axis expansion takes the magnitude x > 0 of the argument -x".into(),
        ));
    }
    let regime = classify_regime(sigma)?;
    let ctx = GammaCtx::new(wp);
    let xf = float(wp, x);
    let alg = hat_h_part(&params, &ctx, &xf, opts.k_alg)?;
    let exp_part = if sigma.to_f64() < 0.5 {
        let bx = big_x(&params, &xf)?;
        Some(hat_e_part(&params, &bx, opts.j_exp, digits + 10)?)
    } else {
        None
    };
    let (e_val, e_used, e_proxy, e_warn) = match exp_part {
        Some(p) => (p.value, p.terms_used, p.proxy, p.warning),
        None => (Float::new(wp), 0, Float::new(wp), false),
    };
    // F_σ(−x) = −σx·M_σ(−x), applied term by term.
    let scale = if f_form {
        let mut s = Float::with_val(wp, &params.sigma_f * &xf);
        s = -s;
        s
    } else {
        float(wp, 1u32)
    };
    let e_scaled = Float::with_val(wp, &e_val * &scale);
    let a_scaled = Float::with_val(wp, &alg.value * &scale);
    let value = Float::with_val(wp, &e_scaled + &a_scaled);
    let mut proxy = Float::with_val(wp, &e_proxy + &alg.proxy);
    proxy *= scale.clone().abs();
    Ok(ExpansionResult {
        value,
        regime,
        exp_terms_used: e_used,
        alg_terms_used: alg.terms_used,
        last_term_magnitude: proxy,
        components: Components {
            exponential: e_scaled,
            algebraic: a_scaled,
        },
        accuracy_warning: e_warn || alg.warning,
    })
}

/// M_σ(−x) for x → +∞ (pass the magnitude x > 0).
///
/// Assembles Ê(x) + Ĥ(x) for 0 < σ < 1/2 and Ĥ(x) alone for σ > 1/2;
/// refuses σ = 1/2 with [`WrightError::Stokes`], since the two parts merge
/// there and the exact Gaussian value is available from
/// [`crate::series::m_closed`]. The σ-band character of the result is
/// reported in `regime`.
pub fn m_neg_asympt(sigma: &Sigma, x: f64, opts: NegOpts) -> Result<ExpansionResult<Float>> {
    neg_core(sigma, x, opts, ASYMPT_DIGITS, false)
}

/// [`m_neg_asympt`] at a chosen decimal working target.
pub fn m_neg_asympt_prec(
    sigma: &Sigma,
    x: f64,
    opts: NegOpts,
    digits: u32,
) -> Result<ExpansionResult<Float>> {
    neg_core(sigma, x, opts, digits, false)
}

/// F_σ(−x) for x → +∞ (pass the magnitude x > 0).
///
/// Computed as −σx·[`m_neg_asympt`] term by term, which is the exact
/// interrelation F_σ(−x) = −σx·M_σ(−x).
pub fn f_neg_asympt(sigma: &Sigma, x: f64, opts: NegOpts) -> Result<ExpansionResult<Float>> {
    neg_core(sigma, x, opts, ASYMPT_DIGITS, true)
}

/// [`f_neg_asympt`] at a chosen decimal working target.
pub fn f_neg_asympt_prec(
    sigma: &Sigma,
    x: f64,
    opts: NegOpts,
    digits: u32,
) -> Result<ExpansionResult<Float>> {
    neg_core(sigma, x, opts, digits, true)
}

/// Diagnostic: the exponential (cosine) series of the negative-axis
/// expansion evaluated with *no* guard at σ = 1/2.
///
/// At exactly σ = 1/2 the retained sum collapses to a multiple of the
/// Gaussian and comes out at **twice** the true value of M_{1/2}(−x):
/// on this boundary half of the cosine sum belongs to an expansion that
/// has already switched off, and keeping all of it double-counts the
/// recessive part. This function exists so that regression tests can pin
/// that factor of 2 — it is *why* [`m_neg_asympt`] refuses σ = 1/2.
pub fn neg_exp_sum_unguarded(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    digits: u32,
) -> Result<Float> {
    let params = derive_params(sigma, digits + 10)?;
    let wp = params.prec;
    if !(x.is_finite() && x > 0.0) {
        return Err(WrightError::Domain(
            "the negative-axis expansion takes the magnitude x > 0 of the argument -x".into(),
        ));
    }
    let xf = float(wp, x);
    let bx = big_x(&params, &xf)?;
    Ok(hat_e_part(&params, &bx, Truncation::Fixed(j_terms), digits + 10)?.value)
}

/// Reduce a phase (in units of π) to the canonical window (−1, 1].
fn canonical_phase(p: &Real) -> Real {
    match p {
        Real::Exact(r) => {
            // r − 2·ceil((r−1)/2) ∈ (−1, 1]
            let mut t = Rational::from(r - 1u32);
            t /= 2u32;
            let ce = t.ceil();
            let two_ce = Rational::from(2u32 * &ce);
            Real::Exact(Rational::from(r - &two_ce))
        }
        Real::Approx(v) => Real::Approx(v - 2.0 * ((v - 1.0) / 2.0).ceil()),
    }
}

/// Shift a phase (in units of π) by an integer, without re-wrapping: the
/// result is the *literal* phase of z·e^{inπ} under analytic continuation.
fn phase_add_int(p: &Real, n: i64) -> Real {
    match p {
        Real::Exact(r) => Real::Exact(Rational::from(r + Rational::from(n))),
        Real::Approx(v) => Real::Approx(v + n as f64),
    }
}

/// ℱ(z) for large |z| away from the rays |arg z| = πκ.
///
/// Uses the default angular margin [`DEFAULT_STOKES_MARGIN_RAD`] and
/// working target [`ASYMPT_DIGITS`]; see [`calf_asympt_with`].
pub fn calf_asympt(
    sigma: &Sigma,
    z: &PolarArg,
    j_terms: usize,
    k_terms: usize,
) -> Result<ExpansionResult<Cplx>> {
    calf_asympt_with(sigma, z, j_terms, k_terms, DEFAULT_STOKES_MARGIN_RAD, ASYMPT_DIGITS)
}

/// ℱ(z) for large |z|, with configurable Stokes-line margin and precision.
///
/// In the sector |arg z| < πκ the value is E(z) + (algebraic series in
/// z·e^{∓iπ}); beyond the rays only the algebraic series survives. The
/// rotation sign follows arg z (e^{−iπ} for arg z ≥ 0, e^{+iπ} below the
/// axis) and the rotated phase is kept literal — the algebraic series is
/// evaluated on the analytically continued ray, not on a re-wrapped one.
/// Within `margin_rad` of |arg z| = πκ the request is refused with
/// [`WrightError::StokesLine`]; use [`calf_stokes`] on the line itself.
///
/// E(z) = A(σ) Z^ϑ e^Z Σ_{j<J} c_j Z^{−j} with Z = κ(hz)^{1/κ}; note the
/// *plain* Z^{−j} here, against the (−X)^{−j} of the real-axis forms.
pub fn calf_asympt_with(
    sigma: &Sigma,
    z: &PolarArg,
    j_terms: usize,
    k_terms: usize,
    margin_rad: f64,
    digits: u32,
) -> Result<ExpansionResult<Cplx>> {
    if j_terms == 0 || k_terms == 0 {
        return Err(WrightError::Range(
            "at least one term of each retained expansion is required".into(),
        ));
    }
    if !(margin_rad >= 0.0 && margin_rad.is_finite()) {
        return Err(WrightError::Domain(
            "the Stokes-line margin must be a finite non-negative angle".into(),
        ));
    }
    let params = derive_params(sigma, digits + 10)?;
    let wp = params.prec;
    if !(z.modulus.is_finite() && z.modulus > 0.0) {
        return Err(WrightError::Domain(
            "the large-|z| expansion requires |z| > 0".into(),
        ));
    }
    let regime = classify_regime(sigma)?;
    let phi = canonical_phase(&z.phase_pi);
    let phi_v = phi.to_f64();
    let kappa_v = 1.0 - sigma.to_f64();
    let dist = (phi_v.abs() - kappa_v).abs() * std::f64::consts::PI;
    if dist < margin_rad {
        return Err(WrightError::StokesLine(format!(
            "arg z = {:.6}*pi lies within {:.3} rad of the Stokes line |arg z| = pi*kappa \
             (kappa = {:.6}); use the dedicated on-line evaluation (calf_stokes) there",
            phi_v, margin_rad, kappa_v
        )));
    }
    let exp_sector = phi_v.abs() < kappa_v;
    let shift: i64 = if phi_v >= 0.0 { -1 } else { 1 };
    let psi = phase_add_int(&phi, shift);
    let ctx = GammaCtx::new(wp);
    let sf = &params.sigma_f;
    let r = float(wp, z.modulus);

    // Algebraic series at w = z·e^{∓iπ} = r·e^{iπψ}:
    //   (1/σ) Σ_{k} (−1)^k Γ(1+k/σ)/k! · w^{−(1+k/σ)}
    let lnr = r.clone().ln();
    let mut eneg = Float::with_val(wp, &lnr / sf);
    eneg = -eneg;
    let ru = eneg.exp(); // r^{−1/σ}
    let psif = psi.to_float(wp + 16);
    let mut pw = Float::with_val(wp, r.clone().recip());
    let mut kfact = float(wp, 1u32);
    let mut h_sum = Cplx::zero(wp);
    let mut h_mags: Vec<Float> = Vec::with_capacity(k_terms + 1);
    for k in 0..=k_terms {
        if k > 0 {
            kfact *= k as u32;
        }
        let mut s_k = Float::with_val(wp, k as u32);
        s_k /= sf;
        s_k += 1u32;
        let g = ctx.gamma_real(&s_k);
        let mut gmag = Float::with_val(wp, &g * &pw);
        gmag /= Float::with_val(wp, &kfact * sf);
        if k < k_terms {
            let skw = Float::with_val(wp + 16, &s_k);
            let mut ph = Float::with_val(wp + 16, &skw * &psif);
            ph = -ph;
            let mut term = cispi(&ph, wp).scale(&gmag);
            if k % 2 == 1 {
                term = term.neg();
            }
            h_sum = h_sum.add(&term);
        }
        h_mags.push(gmag);
        pw *= &ru;
    }
    let h_last = h_mags[k_terms - 1].clone();
    let h_proxy = h_mags[k_terms].clone();
    let h_warn = h_proxy >= h_last;

    // Exponential part E(z), only inside its sector.
    let (e_val, e_used, e_proxy, e_warn) = if exp_sector {
        if j_terms > DEFAULT_COEFF_CEILING {
            return Err(WrightError::Range(format!(
                "truncation order {} exceeds the coefficient ceiling {}",
                j_terms, DEFAULT_COEFF_CEILING
            )));
        }
        let want = (j_terms + 1).min(DEFAULT_COEFF_CEILING);
        let tab = coefficients(sigma, want, digits + 10)?;
        let have_extra = tab.coeffs.len() > j_terms;
        let hr = Float::with_val(wp, &params.h * &r);
        let zmag = Float::with_val(
            wp,
            Float::with_val(wp, hr.ln() / &params.kappa).exp() * &params.kappa,
        );
        let phi_z = Float::with_val(wp + 16, phi.to_float(wp + 16) / &params.kappa);
        let (sz, cz) = sin_cos_pi(&phi_z, wp);
        let re_z = Float::with_val(wp, &zmag * &cz);
        let im_z = Float::with_val(wp, &zmag * &sz);
        let (sim, cim) = im_z.sin_cos(Float::new(wp));
        let e_z = Cplx::new(cim, sim).scale(&re_z.clone().exp());
        let z_theta = pow_on_ray(&zmag, &phi_z, &params.theta, wp);
        let zth_mag = Float::with_val(wp, &params.theta * zmag.clone().ln()).exp();
        let zinv = Float::with_val(wp, zmag.clone().recip());
        let mut nphi = Float::with_val(wp + 16, &phi_z);
        nphi = -nphi;
        let zinv_c = cispi(&nphi, wp).scale(&zinv);
        let mut zpow = Cplx::from_real(float(wp, 1u32));
        let mut pw_env = float(wp, 1u32);
        let mut sum = Cplx::zero(wp);
        let mut mags: Vec<Float> = Vec::with_capacity(tab.coeffs.len());
        for (j, c) in tab.coeffs.iter().enumerate() {
            let cw = Float::with_val(wp, c);
            mags.push(Float::with_val(wp, cw.clone().abs() * &pw_env));
            if j < j_terms {
                sum = sum.add(&zpow.scale(&cw));
            }
            zpow = zpow.mul(&zinv_c);
            pw_env *= &zinv;
        }
        let e_val = z_theta.mul(&e_z).mul(&sum).scale(&params.a_sigma);
        let env = if have_extra {
            mags[j_terms].clone()
        } else {
            mags[j_terms - 1].clone()
        };
        let mut proxy = Float::with_val(wp, &zth_mag * re_z.clone().exp());
        proxy *= &params.a_sigma;
        proxy *= &env;
        let warn = if have_extra {
            mags[j_terms] >= mags[j_terms - 1]
        } else {
            j_terms >= 2 && mags[j_terms - 1] >= mags[j_terms - 2]
        };
        (e_val, j_terms, proxy, warn)
    } else {
        (Cplx::zero(wp), 0usize, Float::new(wp), false)
    };

    let value = e_val.add(&h_sum);
    let proxy = Float::with_val(wp, &e_proxy + &h_proxy);
    Ok(ExpansionResult {
        value,
        regime,
        exp_terms_used: e_used,
        alg_terms_used: k_terms,
        last_term_magnitude: proxy,
        components: Components {
            exponential: e_val,
            algebraic: h_sum,
        },
        accuracy_warning: e_warn || h_warn,
    })
}

/// ℱ(x·e^{±iπκ}) — the value *on* a Stokes line, x > 0.
///
/// On the line the algebraic series must be truncated at its smallest term
/// (done here automatically; `alg_terms_used` reports the count m), and the
/// exponential series enters with half weight:
///
///   ℱ(xe^{±iπκ}) ≈ (e^{±iπσ}/σ) Σ_{k<m} Γ(1+k/σ)/k! x^{−(1+k/σ)}
///                 + (X e^{±iπ})^ϑ e^{−X} Σ_{j<J} ½·A(σ)c_j (−X)^{−j},
///
/// with (X e^{±iπ})^ϑ = X^ϑ e^{±iπϑ} assembled analytically. The ½ is the
/// Stokes average: the exponential expansion carries full weight on one
/// side of the line and none on the other.
///
/// The reported `last_term_magnitude` is *not* a first-omitted-term bound:
/// it estimates the unresolved smoothing correction
/// A(σ) X^{ϑ−1/2} e^{−X} / √(2πX), which dominates the error budget of the
/// half-weight approximation on the line.
pub fn calf_stokes(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    sign: StokesSign,
) -> Result<ExpansionResult<Cplx>> {
    calf_stokes_prec(sigma, x, j_terms, sign, ASYMPT_DIGITS)
}

/// [`calf_stokes`] at a chosen decimal working target.
pub fn calf_stokes_prec(
    sigma: &Sigma,
    x: f64,
    j_terms: usize,
    sign: StokesSign,
    digits: u32,
) -> Result<ExpansionResult<Cplx>> {
    if j_terms == 0 {
        return Err(WrightError::Range(
            "at least one exponential term is required".into(),
        ));
    }
    if j_terms > DEFAULT_COEFF_CEILING {
        return Err(WrightError::Range(format!(
            "truncation order {} exceeds the coefficient ceiling {}",
            j_terms, DEFAULT_COEFF_CEILING
        )));
    }
    let params = derive_params(sigma, digits + 10)?;
    let wp = params.prec;
    if !(x.is_finite() && x > 0.0) {
        return Err(WrightError::Domain(
            "the Stokes-line evaluation requires x > 0".into(),
        ));
    }
    let regime = classify_regime(sigma)?;
    let ctx = GammaCtx::new(wp);
    let sf = &params.sigma_f;
    let xf = float(wp, x);
    let bx = big_x(&params, &xf)?;
    let xx = &bx.value;
    let minus = sign == StokesSign::Minus;

    // Optimally truncated algebraic series (all terms positive here).
    let lnx = xf.clone().ln();
    let mut eneg = Float::with_val(wp, &lnx / sf);
    eneg = -eneg;
    let xu = eneg.exp(); // x^{−1/σ}
    let mut pw = Float::with_val(wp, xf.clone().recip());
    let mut kfact = float(wp, 1u32);
    let mut gmags: Vec<Float> = Vec::new();
    loop {
        let k = gmags.len();
        if k > 0 {
            kfact *= k as u32;
        }
        let mut s_k = Float::with_val(wp, k as u32);
        s_k /= sf;
        s_k += 1u32;
        let g = ctx.gamma_real(&s_k);
        let mut gm = Float::with_val(wp, &g * &pw);
        gm /= Float::with_val(wp, &kfact * sf);
        gmags.push(gm);
        pw *= &xu;
        let n = gmags.len();
        if n >= ALG_SCAN_NONZERO_CAP {
            break;
        }
        if n >= 4 && gmags[n - 1] > gmags[n - 2] && gmags[n - 2] > gmags[n - 3] {
            break;
        }
    }
    let m = optimal_truncation(&gmags) + 1;
    let mut s_alg = Float::new(wp);
    for gm in &gmags[..m] {
        s_alg += gm;
    }
    let mut ph_sig = Float::with_val(wp + 16, sf);
    if minus {
        ph_sig = -ph_sig;
    }
    let alg = cispi(&ph_sig, wp).scale(&s_alg);

    // Half-weight exponential series.
    let want = (j_terms + 1).min(DEFAULT_COEFF_CEILING);
    let tab = coefficients(sigma, want, digits + 10)?;
    let have_extra = tab.coeffs.len() > j_terms;
    let xinv = Float::with_val(wp, xx.clone().recip());
    let mut pwj = float(wp, 1u32);
    let mut sum = Float::new(wp);
    let mut mags: Vec<Float> = Vec::with_capacity(tab.coeffs.len());
    for (j, c) in tab.coeffs.iter().enumerate() {
        let cw = Float::with_val(wp, c);
        mags.push(Float::with_val(wp, cw.clone().abs() * &pwj));
        if j < j_terms {
            let mut t = Float::with_val(wp, &cw * &pwj);
            if j % 2 == 1 {
                t = -t;
            }
            sum += &t;
        }
        pwj *= &xinv;
    }
    let xth = Float::with_val(wp, &params.theta * xx.clone().ln()).exp();
    let damp = Float::with_val(wp, -xx.clone()).exp();
    let mut emag = Float::with_val(wp, &xth * &damp);
    emag *= &params.a_sigma;
    emag /= 2u32;
    emag *= &sum;
    let mut ph_th = Float::with_val(wp + 16, &params.theta);
    if minus {
        ph_th = -ph_th;
    }
    let exp_c = cispi(&ph_th, wp).scale(&emag);

    // Proxy for the unresolved smoothing term on the line.
    let mut proxy = Float::with_val(wp, &params.theta - 0.5f64);
    proxy *= xx.clone().ln();
    proxy = proxy.exp();
    proxy *= &damp;
    proxy *= &params.a_sigma;
    let mut root = Float::with_val(wp, 2u32 * pi(wp));
    root *= xx;
    proxy /= root.sqrt();

    let warn = if have_extra {
        mags[j_terms] >= mags[j_terms - 1]
    } else {
        j_terms >= 2 && mags[j_terms - 1] >= mags[j_terms - 2]
    };
    let value = exp_c.add(&alg);
    Ok(ExpansionResult {
        value,
        regime,
        exp_terms_used: j_terms,
        alg_terms_used: m,
        last_term_magnitude: proxy,
        components: Components {
            exponential: exp_c,
            algebraic: alg,
        },
        accuracy_warning: warn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::bits;
    use crate::series::{calf_series, f_series, m_closed, m_series};

    fn rel(a: &Float, b: &Float) -> f64 {
        let wp = a.prec().max(b.prec());
        let d = Float::with_val(wp, a - b);
        let q = Float::with_val(wp, &d / b);
        q.abs().to_f64().abs()
    }

    #[test]
    fn truncation_rule_examples() {
        let m = |v: &[f64]| v.iter().map(|x| float(64, *x)).collect::<Vec<_>>();
        assert_eq!(optimal_truncation(&m(&[1.0, 0.1, 0.01, 0.05, 0.2])), 2);
        assert_eq!(optimal_truncation(&m(&[5.0, 4.0, 3.0, 2.0, 1.0])), 4);
        assert_eq!(optimal_truncation(&m(&[5.0])), 0);
        assert_eq!(optimal_truncation(&m(&[1.0, 1.0, 2.0])), 0);
    }

    #[test]
    fn pos_expansion_error_profile_quarter() {
        let s = Real::ratio(1, 4);
        let exact = m_series(&s, 6.0, 30).unwrap().value;
        let r1 = rel(&m_pos_asympt(&s, 6.0, 1).unwrap().value, &exact);
        let r3 = rel(&m_pos_asympt(&s, 6.0, 3).unwrap().value, &exact);
        let r5 = rel(&m_pos_asympt(&s, 6.0, 5).unwrap().value, &exact);
        // published relative errors for these truncations: 2.623e-2, 4.123e-4
        assert!((r1 / 2.623e-2 - 1.0).abs() < 0.3, "r1 = {r1:e}");
        assert!((r3 / 4.123e-4 - 1.0).abs() < 0.3, "r3 = {r3:e}");
        assert!(r1 > r3 && r3 > r5, "not monotone: {r1:e} {r3:e} {r5:e}");
    }

    #[test]
    fn pos_expansion_error_profile_three_quarters() {
        let s = Real::ratio(3, 4);
        let exact = m_series(&s, 6.0, 40).unwrap().value;
        let r7 = rel(&m_pos_asympt(&s, 6.0, 7).unwrap().value, &exact);
        let ratio = r7 / 3.874e-15;
        assert!(ratio > 1.0 / 3.0 && ratio < 3.0, "ratio = {ratio}");
    }

    #[test]
    fn pos_f_is_sigma_x_times_m() {
        let s = Real::ratio(3, 8);
        let f = f_pos_asympt(&s, 7.0, 4).unwrap();
        let m = m_pos_asympt(&s, 7.0, 4).unwrap();
        let wp = f.value.prec();
        let scaled = Float::with_val(wp, 0.375f64 * 7.0f64) * &m.value;
        let scaled = Float::with_val(wp, scaled);
        assert!(rel(&f.value, &scaled) < 1e-35);

        let s34 = Real::ratio(3, 4);
        let exact = f_series(&s34, 4.0, 30).unwrap().value;
        let r5 = rel(&f_pos_asympt(&s34, 4.0, 5).unwrap().value, &exact);
        let ratio = r5 / 9.988e-9;
        assert!(ratio > 1.0 / 3.0 && ratio < 3.0, "ratio = {ratio}");
    }

    #[test]
    fn pos_warning_flags_divergent_tail() {
        let s = Real::ratio(1, 4);
        assert!(!m_pos_asympt(&s, 6.0, 2).unwrap().accuracy_warning);
        assert!(m_pos_asympt(&s, 6.0, 30).unwrap().accuracy_warning);
    }

    #[test]
    fn neg_quarter_exponential_only() {
        let s = Real::ratio(1, 4);
        let opts = NegOpts {
            j_exp: Truncation::Fixed(7),
            k_alg: Truncation::Optimal,
        };
        let exact6 = m_series(&s, -6.0, 30).unwrap().value;
        let r6 = m_neg_asympt(&s, 6.0, opts).unwrap();
        assert_eq!(r6.alg_terms_used, 0);
        assert!(r6.components.algebraic.is_zero());
        let e6 = rel(&r6.value, &exact6);
        let ratio6 = e6 / 2.176e-4;
        assert!(ratio6 > 1.0 / 3.0 && ratio6 < 3.0, "ratio6 = {ratio6}");

        let exact8 = m_series(&s, -8.0, 30).unwrap().value;
        let r8 = m_neg_asympt(&s, 8.0, opts).unwrap();
        let e8 = rel(&r8.value, &exact8);
        let ratio8 = e8 / 6.088e-6;
        assert!(ratio8 > 1.0 / 3.0 && ratio8 < 3.0, "ratio8 = {ratio8}");
    }

    #[test]
    fn neg_third_oscillatory() {
        let s = Real::ratio(1, 3);
        let opts = NegOpts {
            j_exp: Truncation::Fixed(7),
            k_alg: Truncation::Optimal,
        };
        let exact = m_series(&s, -4.0, 30).unwrap().value;
        let r = m_neg_asympt(&s, 4.0, opts).unwrap();
        assert_eq!(r.regime, Regime::PureOscillatory);
        assert_eq!(r.alg_terms_used, 0);
        let e = rel(&r.value, &exact);
        let ratio = e / 3.447e-4;
        assert!((ratio - 1.0).abs() < 0.4, "ratio = {ratio}");
    }

    #[test]
    fn neg_two_fifths_compound() {
        let s = Real::ratio(2, 5);
        let opts = NegOpts {
            j_exp: Truncation::Fixed(7),
            k_alg: Truncation::Optimal,
        };
        let exact = m_series(&s, -8.0, 30).unwrap().value;
        let r = m_neg_asympt(&s, 8.0, opts).unwrap();
        assert!(r.alg_terms_used > 0);
        assert!(!r.components.algebraic.is_zero());
        assert!(!r.components.exponential.is_zero());
        let e = rel(&r.value, &exact);
        let ratio = e / 5.153e-4;
        assert!(ratio > 0.4 && ratio < 2.5, "ratio = {ratio}");
    }

    #[test]
    fn neg_two_thirds_algebraic_fixed() {
        let s = Real::ratio(2, 3);
        let opts = NegOpts {
            j_exp: Truncation::Optimal,
            k_alg: Truncation::Fixed(11),
        };
        let exact = m_series(&s, -10.0, 30).unwrap().value;
        let r = m_neg_asympt(&s, 10.0, opts).unwrap();
        assert_eq!(r.exp_terms_used, 0);
        assert!(r.components.exponential.is_zero());
        assert_eq!(r.alg_terms_used, 11);
        let e = rel(&r.value, &exact);
        let ratio = e / 6.279e-11;
        assert!(ratio > 1.0 / 3.0 && ratio < 3.0, "ratio = {ratio}");
    }

    #[test]
    fn neg_half_refuses() {
        let s = Real::ratio(1, 2);
        let em = m_neg_asympt(&s, 4.0, NegOpts::default()).unwrap_err();
        assert!(matches!(em, WrightError::Stokes(_)), "{em:?}");
        assert!(em.to_string().contains("1/2"));
        let ef = f_neg_asympt(&s, 4.0, NegOpts::default()).unwrap_err();
        assert!(matches!(ef, WrightError::Stokes(_)), "{ef:?}");
    }

    #[test]
    fn unguarded_half_doubles_closed_form() {
        let s = Real::ratio(1, 2);
        let v = neg_exp_sum_unguarded(&s, 4.0, 1, 50).unwrap();
        let c = m_closed(&s, &float(bits(60), 4.0)).unwrap();
        let wp = v.prec();
        let ratio = Float::with_val(wp, &v / &c).to_f64();
        assert!((ratio - 2.0).abs() < 1e-10, "ratio = {ratio}");
    }

    #[test]
    fn neg_f_form_matches_series() {
        let s = Real::ratio(1, 4);
        let opts = NegOpts {
            j_exp: Truncation::Fixed(7),
            k_alg: Truncation::Optimal,
        };
        let exact = f_series(&s, -6.0, 30).unwrap().value;
        let f = f_neg_asympt(&s, 6.0, opts).unwrap();
        assert!(rel(&f.value, &exact) < 2e-3);
        assert_eq!(
            f.value.is_sign_positive(),
            exact.is_sign_positive(),
            "sign mismatch"
        );
        // exact −σx scaling of the M-form
        let m = m_neg_asympt(&s, 6.0, opts).unwrap();
        let wp = f.value.prec();
        let scaled = Float::with_val(wp, -0.25f64 * 6.0f64) * &m.value;
        let scaled = Float::with_val(wp, scaled);
        assert!(rel(&f.value, &scaled) < 1e-35);
    }

    #[test]
    fn sector_expansion_real_axis_half() {
        let s = Real::ratio(1, 2);
        let z = PolarArg::real(4.0);
        let r = calf_asympt(&s, &z, 1, 5).unwrap();
        let exact = calf_series(&s, &z, 30).unwrap().value;
        let wp = r.value.prec();
        let diff = r.value.sub(&exact).abs();
        let e = Float::with_val(wp, &diff / exact.abs()).to_f64();
        assert!(e < 1e-4, "rel = {e:e}");
        assert_eq!(r.exp_terms_used, 1);
        assert_eq!(r.alg_terms_used, 5);
    }

    #[test]
    fn sector_expansion_algebraic_only() {
        let s = Real::ratio(1, 4);
        let z = PolarArg::new(8.0, Real::ratio(9, 10));
        let r = calf_asympt(&s, &z, 1, 4).unwrap();
        assert_eq!(r.exp_terms_used, 0);
        let exact = calf_series(&s, &z, 30).unwrap().value;
        let wp = r.value.prec();
        let diff = r.value.sub(&exact).abs();
        let e = Float::with_val(wp, &diff / exact.abs()).to_f64();
        assert!(e < 2e-3, "rel = {e:e}");
    }

    #[test]
    fn sector_guard_near_stokes_line() {
        let s = Real::ratio(1, 4);
        let on = calf_asympt(&s, &PolarArg::new(8.0, Real::ratio(3, 4)), 2, 2).unwrap_err();
        assert!(matches!(on, WrightError::StokesLine(_)), "{on:?}");
        let near = calf_asympt(&s, &PolarArg::new(8.0, Real::from_f64(0.76)), 2, 2).unwrap_err();
        assert!(matches!(near, WrightError::StokesLine(_)), "{near:?}");
        assert!(calf_asympt(&s, &PolarArg::new(8.0, Real::from_f64(0.80)), 2, 2).is_ok());
        assert!(calf_asympt(&s, &PolarArg::new(8.0, Real::from_f64(0.70)), 2, 2).is_ok());
    }

    #[test]
    fn stokes_line_reconstruction() {
        let s = Real::ratio(1, 4);
        let sp = calf_stokes(&s, 6.0, 5, StokesSign::Plus).unwrap();
        assert_eq!(sp.alg_terms_used, 3);
        let exact = calf_series(&s, &PolarArg::new(6.0, Real::ratio(3, 4)), 30)
            .unwrap()
            .value;
        let diff = sp.value.sub(&exact).abs().to_f64();
        assert!(diff < 1.5e-2, "diff = {diff:e}");
        assert!(sp.last_term_magnitude.to_f64() > 0.0);
        // the conjugate ray gives the conjugate value
        let sm = calf_stokes(&s, 6.0, 5, StokesSign::Minus).unwrap();
        let dd = sm.value.sub(&sp.value.conj()).abs().to_f64();
        assert!(dd < 1e-30, "dd = {dd:e}");
    }

    #[test]
    fn domain_and_range_errors() {
        let s = Real::ratio(1, 4);
        assert!(matches!(
            m_pos_asympt(&s, 0.0, 3),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            m_pos_asympt(&s, -2.0, 3),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            m_pos_asympt(&s, 4.0, 0),
            Err(WrightError::Range(_))
        ));
        assert!(matches!(
            m_neg_asympt(&s, -1.0, NegOpts::default()),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            calf_asympt(&s, &PolarArg::real(0.0), 2, 2),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            calf_asympt(&s, &PolarArg::real(5.0), 0, 2),
            Err(WrightError::Range(_))
        ));
        assert!(matches!(
            calf_stokes(&s, 6.0, 0, StokesSign::Plus),
            Err(WrightError::Range(_))
        ));
        let bad = Real::from_f64(1.5);
        assert!(matches!(
            m_pos_asympt(&bad, 4.0, 2),
            Err(WrightError::Domain(_))
        ));
    }
}
