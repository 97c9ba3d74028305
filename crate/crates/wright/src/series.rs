//! Convergent-series reference evaluator for W_{λ,μ}(z), the auxiliary
//! functions F_σ and M_σ, and the gamma-weighted sum ℱ(z).
//!
//! This is the oracle the rest of the crate is judged against, so it is
//! built for correctness over speed:
//!
//! * Working precision is chosen by a cheap double-precision scan of the
//!   term profile, then *verified*: after summation the loss to
//!   cancellation is measured from the largest term actually seen, and the
//!   whole sum is repeated at escalated precision until the surviving
//!   digits provably cover the request. For M_σ(x) at large x > 0 the
//!   alternating series cancels down from terms of size ~e^{+cX} to a
//!   result of size e^{−X}, so this loop is load-bearing, not defensive.
//! * When λ and μ are exact rationals, the gamma factor 1/Γ(λn+μ) walks on
//!   exact rational arguments split into residue lanes modulo the
//!   denominator of λ; each lane advances by an integer step, so a pole of
//!   Γ is detected exactly (the term is exactly zero) and the per-term cost
//!   is a short product instead of a full log-gamma evaluation.
//! * Stopping is justified by the term-ratio: past the hump,
//!   |t_{n+1}/t_n| = |z|·|Γ(λn+μ)/Γ(λn+λ+μ)|/(n+1) ~ |z|·|λ|^{−λ}·n^{−(1+λ)},
//!   which tends to zero for every λ > −1, so once terms fall below the
//!   last retained bit of the running sum the tail is geometrically
//!   bounded. Eight consecutive negligible terms are required because
//!   rational λ produces exact zeros on a periodic sub-lattice and a lone
//!   small term proves nothing.

use rug::{Float, Integer, Rational};

use crate::core::{PrecisionValue, Real};
use crate::error::{Result, WrightError};
use crate::gamma::{ln_abs_gamma_f64, ln_recip_gamma_envelope_f64, GammaCtx};
use crate::prec::{bits, cispi, Cplx};

const LOG10_2: f64 = 0.301029995663981195;
const LN_10: f64 = 2.302585092994045684;

/// Hard ceiling on terms per attempt, independent of the per-request cap.
const TERM_SANITY_CAP: usize = 2_000_000;

/// Residue-lane optimization limit: λ denominators above this fall back to
/// direct per-term gamma evaluation (still with exact pole detection).
const MAX_LANES: u32 = 512;

/// Escalation ceiling: attempts = 1 + this many precision doublings.
const MAX_ESCALATIONS: u32 = 10;

/// Feasibility budget for one summation, in predicted digit·terms
/// (working digits × terms to settle). Requests far beyond this would grind
/// for minutes-to-hours before failing, so they are rejected up front.
const WORK_BUDGET: f64 = 5.0e7;

/// A complex parameter whose real part is carried exactly when known.
#[derive(Clone, Debug)]
pub struct ComplexParam {
    pub re: Real,
    pub im: f64,
}

impl ComplexParam {
    pub fn real(re: Real) -> Self {
        ComplexParam { re, im: 0.0 }
    }
}

impl From<f64> for ComplexParam {
    fn from(v: f64) -> Self {
        ComplexParam::real(Real::from_f64(v))
    }
}

/// A complex argument in polar form z = r·e^{iπφ}, with the phase φ in
/// units of π carried exactly when known.
///
/// Storing the phase this way (rather than a rectangular complex number at
/// some fixed precision) lets the evaluator rebuild z *exactly* at every
/// escalated working precision, and keeps arguments like x·e^{±πiκ} off
/// any branch-cut ambiguity: the phase is a number, not an atan2 result.
#[derive(Clone, Debug)]
pub struct PolarArg {
    pub modulus: f64,
    pub phase_pi: Real,
}

impl PolarArg {
    /// A real argument: x ≥ 0 gets phase 0, x < 0 gets phase 1.
    pub fn real(x: f64) -> Self {
        PolarArg {
            modulus: x.abs(),
            phase_pi: Real::int(if x < 0.0 { 1 } else { 0 }),
        }
    }

    /// r·e^{iπφ} with φ given in units of π.
    pub fn new(modulus: f64, phase_pi: Real) -> Self {
        PolarArg { modulus, phase_pi }
    }

    /// Some(sign) when the argument lies on the real axis.
    fn real_sign(&self) -> Option<f64> {
        match &self.phase_pi {
            Real::Exact(r) if r.is_integer() => {
                let even = Rational::from(r / 2u32).is_integer();
                Some(if even { 1.0 } else { -1.0 })
            }
            Real::Approx(v) if *v == v.round() => {
                Some(if (*v as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 })
            }
            _ => None,
        }
    }

    /// The complex value at working precision.
    fn to_cplx(&self, wp: u32) -> Cplx {
        let phase = self.phase_pi.to_float(wp + 8);
        let mut z = cispi(&phase, wp);
        z.re *= self.modulus;
        z.im *= self.modulus;
        z
    }
}

/// One series evaluation request: Σ_{n≥0} z^n / (n! Γ(λn+μ)).
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    /// λ > −1 (the convergence condition; the series is entire in z).
    pub lambda: Real,
    /// μ, complex with an exact-real fast path.
    pub mu: ComplexParam,
    /// z in polar form.
    pub z: PolarArg,
    /// Requested correct decimal digits (≥ 1).
    pub target_digits: u32,
}

// ---------------------------------------------------------------------------
// Gamma-factor sequencer
// ---------------------------------------------------------------------------

/// Produces the gamma factor of term n (either 1/Γ(μ+λn) or Γ(μ+λn)),
/// called with n = 0, 1, 2, … strictly in order.
struct GammaSeq<'a> {
    ctx: &'a GammaCtx,
    wp: u32,
    /// true: reciprocal gamma (Wright series); false: gamma (ℱ series).
    recip: bool,
    mode: SeqMode,
}

enum SeqMode {
    /// Exact rational λ, μ with a small λ denominator L: lane r holds the
    /// running value for n ≡ r (mod L), advanced by the integer step λL.
    Lanes {
        l: usize,
        step: Integer,
        lambda: Rational,
        mu: Rational,
        lanes: Vec<Option<LaneState>>,
    },
    /// Exact rational λ, μ, denominator too large for lanes: fresh
    /// evaluation each term, but poles still decided in rational arithmetic.
    ExactDirect { lambda: Rational, mu: Rational },
    /// Inexact parameters: fresh evaluation on floating arguments.
    FloatDirect { lambda: Float, mu: Float },
    /// Complex μ: fresh complex-gamma evaluation each term.
    CplxDirect { lambda: Float, mu_re: Float, mu_im: Float },
}

struct LaneState {
    arg: Rational,
    val: Float,
}

impl<'a> GammaSeq<'a> {
    fn new(ctx: &'a GammaCtx, recip: bool, lambda: &Real, mu: &ComplexParam) -> Self {
        let wp = ctx.prec();
        let mode = if mu.im != 0.0 {
            SeqMode::CplxDirect {
                lambda: lambda.to_float(wp),
                mu_re: mu.re.to_float(wp),
                mu_im: Float::with_val(wp, mu.im),
            }
        } else {
            match (lambda.as_rational(), mu.re.as_rational()) {
                (Some(l), Some(m)) => {
                    let q = l.denom().to_u32().unwrap_or(u32::MAX);
                    if q <= MAX_LANES {
                        let step = Integer::from(l.numer() * (q / l.denom().to_u32().unwrap()));
                        SeqMode::Lanes {
                            l: q as usize,
                            step,
                            lambda: l.clone(),
                            mu: m.clone(),
                            lanes: (0..q).map(|_| None).collect(),
                        }
                    } else {
                        SeqMode::ExactDirect {
                            lambda: l.clone(),
                            mu: m.clone(),
                        }
                    }
                }
                _ => SeqMode::FloatDirect {
                    lambda: lambda.to_float(wp),
                    mu: mu.re.to_float(wp),
                },
            }
        };
        GammaSeq {
            ctx,
            wp,
            recip,
            mode,
        }
    }

    /// The gamma factor for term n (real modes only).
    fn next_real(&mut self, n: usize) -> Float {
        let recip = self.recip;
        let wp = self.wp;
        match &mut self.mode {
            SeqMode::Lanes {
                l,
                step,
                lambda,
                mu,
                lanes,
            } => {
                let r = n % *l;
                if lanes[r].is_none() {
                    let arg = Rational::from(mu.clone() + Rational::from(lambda.clone() * n as u64));
                    let is_pole = arg.is_integer() && arg <= 0i32;
                    let val = if recip && is_pole {
                        Float::new(wp)
                    } else if recip {
                        self.ctx.recip_gamma_real(&Float::with_val(wp, &arg))
                    } else {
                        self.ctx.gamma_real(&Float::with_val(wp, &arg))
                    };
                    lanes[r] = Some(LaneState { arg, val });
                    return lanes[r].as_ref().unwrap().val.clone();
                }
                let lane = lanes[r].as_mut().unwrap();
                let old = lane.arg.clone();
                let new_arg = Rational::from(&old + &*step);
                if *step < 0i32 {
                    // Down-step: 1/Γ(a−k) = (a−1)(a−2)…(a−k)·1/Γ(a)
                    //            Γ(a−k)  = Γ(a)/((a−1)(a−2)…(a−k))
                    let k = Integer::from(step.clone().abs()).to_u64().unwrap();
                    let mut prod = Rational::from(1u32);
                    for i in 1..=k {
                        prod *= Rational::from(&old - Rational::from(i));
                    }
                    let pf = Float::with_val(wp, &prod);
                    if recip {
                        lane.val *= pf;
                    } else if prod == 0u32 {
                        // Γ itself has a pole here; re-derive (→ ±∞).
                        lane.val = self.ctx.gamma_real(&Float::with_val(wp, &new_arg));
                    } else {
                        lane.val /= pf;
                    }
                } else if *step > 0i32 {
                    // Up-step: Γ(a+k) = a(a+1)…(a+k−1)·Γ(a)
                    let k = step.to_u64().unwrap();
                    let mut prod = Rational::from(1u32);
                    for i in 0..k {
                        prod *= Rational::from(&old + Rational::from(i));
                    }
                    if recip {
                        if old <= 0u32 || prod == 0u32 {
                            // Stepping out of (or across) the pole region of
                            // Γ: the multiplicative form 0·∞ is ill-defined,
                            // so re-derive the value directly.
                            let is_pole = new_arg.is_integer() && new_arg <= 0i32;
                            lane.val = if is_pole {
                                Float::new(wp)
                            } else {
                                self.ctx.recip_gamma_real(&Float::with_val(wp, &new_arg))
                            };
                        } else {
                            lane.val /= Float::with_val(wp, &prod);
                        }
                    } else {
                        lane.val *= Float::with_val(wp, &prod);
                    }
                }
                lane.arg = new_arg;
                lane.val.clone()
            }
            SeqMode::ExactDirect { lambda, mu } => {
                let arg = Rational::from(mu.clone() + Rational::from(lambda.clone() * n as u64));
                let is_pole = arg.is_integer() && arg <= 0i32;
                if recip && is_pole {
                    Float::new(wp)
                } else if recip {
                    self.ctx.recip_gamma_real(&Float::with_val(wp, &arg))
                } else {
                    self.ctx.gamma_real(&Float::with_val(wp, &arg))
                }
            }
            SeqMode::FloatDirect { lambda, mu } => {
                let arg = Float::with_val(wp, &*mu + Float::with_val(wp, &*lambda * n as u64));
                if recip {
                    self.ctx.recip_gamma_real(&arg)
                } else {
                    self.ctx.gamma_real(&arg)
                }
            }
            SeqMode::CplxDirect { .. } => unreachable!("complex mu on the real path"),
        }
    }

    fn is_cplx(&self) -> bool {
        matches!(self.mode, SeqMode::CplxDirect { .. })
    }

    /// The gamma factor for term n, as a complex number (any mode).
    fn next_cplx(&mut self, n: usize) -> Cplx {
        if let SeqMode::CplxDirect { lambda, mu_re, mu_im } = &self.mode {
            let wp = self.wp;
            let arg = Cplx::new(
                Float::with_val(wp, mu_re + Float::with_val(wp, lambda * n as u64)),
                mu_im.clone(),
            );
            debug_assert!(self.recip, "gamma-weighted sums use real parameters");
            return self.ctx.recip_gamma_cplx(&arg);
        }
        Cplx::from_real(self.next_real(n))
    }
}

// ---------------------------------------------------------------------------
// Double-precision term-profile scan
// ---------------------------------------------------------------------------

struct ScanInfo {
    /// ln of the largest term magnitude.
    max_ln: f64,
    /// Index of the hump (largest term).
    n_peak: usize,
    /// First index past the hump where the term drops below the working
    /// threshold, if reached within the cap.
    n_settle: Option<usize>,
}

/// Walk the f64 term-magnitude profile ln|t_n| = n·ln|z| − lnΓ(n+1) ± ln|Γ(μ+λn)|
/// with a geometric stride. This only *sizes* the real computation (initial
/// precision, feasibility); the arbitrary-precision loop re-checks
/// everything. The reciprocal-gamma magnitude is taken as its smooth upper
/// envelope: the exact profile passes through zeros of 1/Γ on the left
/// half-line, and a stride that happens to sample near one would otherwise
/// report a settled tail in the middle of the hump.
fn scan_profile(lambda: f64, mu_re: f64, ln_z: f64, target: u32, cap: usize, recip: bool) -> ScanInfo {
    let mut max_ln = f64::NEG_INFINITY;
    let mut n_peak = 0usize;
    let mut n_settle = None;
    let mut n = 0usize;
    while n <= cap {
        let arg = mu_re + lambda * n as f64;
        let lg = if recip {
            ln_recip_gamma_envelope_f64(arg)
        } else {
            ln_abs_gamma_f64(arg)
        };
        let ln_t = n as f64 * ln_z - ln_abs_gamma_f64(n as f64 + 1.0) + lg;
        if ln_t.is_finite() && ln_t > max_ln {
            max_ln = ln_t;
            n_peak = n;
        }
        if n > n_peak && ln_t < -((target + 12) as f64) * LN_10 - max_ln.max(0.0) {
            n_settle = Some(n);
            break;
        }
        n += 1 + n / 64;
    }
    if max_ln == f64::NEG_INFINITY {
        max_ln = 0.0;
    }
    ScanInfo {
        max_ln,
        n_peak,
        n_settle,
    }
}

// ---------------------------------------------------------------------------
// Summation attempts at one working precision
// ---------------------------------------------------------------------------

struct AttemptOutcome<T> {
    value: T,
    max_exp: i64,
    terms: usize,
    converged: bool,
}

fn attempt_real(
    ctx: &GammaCtx,
    recip: bool,
    lambda: &Real,
    mu: &ComplexParam,
    z_signed: f64,
    cap: usize,
    n_min: usize,
) -> AttemptOutcome<Float> {
    let wp = ctx.prec();
    let z = Float::with_val(wp, z_signed);
    let mut seq = GammaSeq::new(ctx, recip, lambda, mu);
    let mut w = Float::with_val(wp, 1u32); // z^n / n!
    let mut sum = Float::new(wp);
    let mut max_exp = i64::MIN;
    let mut run = 0u32;
    let mut terms = 0usize;
    for n in 0..=cap {
        let g = seq.next_real(n);
        let t = Float::with_val(wp, &w * &g);
        terms = n + 1;
        if let Some(e) = t.get_exp() {
            max_exp = max_exp.max(e as i64);
        }
        sum += &t;
        w *= &z;
        w /= (n + 1) as u32;
        let small = t.is_zero()
            || match (t.get_exp(), sum.get_exp()) {
                (Some(te), Some(se)) => (te as i64) < se as i64 - wp as i64 - 4,
                (Some(te), None) => (te as i64) < max_exp - 2 * wp as i64,
                _ => true,
            };
        if n >= n_min && small {
            run += 1;
            if run >= 8 {
                return AttemptOutcome {
                    value: sum,
                    max_exp,
                    terms,
                    converged: true,
                };
            }
        } else {
            run = 0;
        }
    }
    AttemptOutcome {
        value: sum,
        max_exp,
        terms,
        converged: false,
    }
}

fn attempt_cplx(
    ctx: &GammaCtx,
    recip: bool,
    lambda: &Real,
    mu: &ComplexParam,
    z: &PolarArg,
    cap: usize,
    n_min: usize,
) -> AttemptOutcome<Cplx> {
    let wp = ctx.prec();
    let zc = z.to_cplx(wp);
    let mut seq = GammaSeq::new(ctx, recip, lambda, mu);
    let mut w = Cplx::from_real(Float::with_val(wp, 1u32));
    let mut sum = Cplx::zero(wp);
    let mut max_exp = i64::MIN;
    let mut run = 0u32;
    let mut terms = 0usize;
    let exp_of = |c: &Cplx| -> Option<i64> {
        match (c.re.get_exp(), c.im.get_exp()) {
            (Some(a), Some(b)) => Some(a.max(b) as i64),
            (Some(a), None) => Some(a as i64),
            (None, Some(b)) => Some(b as i64),
            (None, None) => None,
        }
    };
    for n in 0..=cap {
        let t = if seq.is_cplx() {
            let g = seq.next_cplx(n);
            w.mul(&g)
        } else {
            let g = seq.next_real(n);
            w.scale(&g)
        };
        terms = n + 1;
        if let Some(e) = exp_of(&t) {
            max_exp = max_exp.max(e);
        }
        sum = sum.add(&t);
        let zero_t = t.re.is_zero() && t.im.is_zero();
        w = w.mul(&zc);
        let inv = Float::with_val(wp, (n + 1) as u32).recip();
        w = w.scale(&inv);
        let small = zero_t
            || match (exp_of(&t), exp_of(&sum)) {
                (Some(te), Some(se)) => te < se - wp as i64 - 4,
                (Some(te), None) => te < max_exp - 2 * wp as i64,
                _ => true,
            };
        if n >= n_min && small {
            run += 1;
            if run >= 8 {
                return AttemptOutcome {
                    value: sum,
                    max_exp,
                    terms,
                    converged: true,
                };
            }
        } else {
            run = 0;
        }
    }
    AttemptOutcome {
        value: sum,
        max_exp,
        terms,
        converged: false,
    }
}

// ---------------------------------------------------------------------------
// Escalation driver
// ---------------------------------------------------------------------------

fn validate_request(lambda: &Real, target_digits: u32) -> Result<()> {
    if target_digits < 1 {
        return Err(WrightError::Domain("target_digits must be >= 1".into()));
    }
    if !(lambda.to_f64() > -1.0) {
        return Err(WrightError::Domain(format!(
            "series requires lambda > -1, got {}",
            lambda.to_f64()
        )));
    }
    Ok(())
}

/// Per-request term cap: generous for every desk-scale argument, and a hard
/// sanity ceiling beyond that.
///
/// The term hump of Σ |z|^n/(n!·|Γ(λn+μ)|^{±1}) settles on the scale
/// |z|^{1/s}, where s is the net factorial strength: the gamma weight
/// contributes λ·n·ln n to the denominator when it divides (`recip`) and
/// cancels that much of n! when it multiplies, so s = 1 ± λ by lane.
fn term_cap(lambda: f64, modulus: f64, recip: bool) -> usize {
    let slope = if recip { 1.0 + lambda } else { 1.0 - lambda };
    if slope <= 0.0 {
        return TERM_SANITY_CAP;
    }
    let grow = modulus.powf(1.0 / slope);
    let cap = 10.0 * (grow + 50.0);
    if cap.is_finite() && cap < TERM_SANITY_CAP as f64 {
        cap as usize
    } else {
        TERM_SANITY_CAP
    }
}

struct Shared {
    cap: usize,
    n_min: usize,
    start_digits: u32,
}

fn prepare(
    lambda: &Real,
    mu_re: f64,
    z_modulus: f64,
    target: u32,
    recip: bool,
) -> Result<Shared> {
    let lf = lambda.to_f64();
    let cap = term_cap(lf, z_modulus, recip);
    let scan = scan_profile(lf, mu_re, z_modulus.ln(), target, cap, recip);
    let n_settle = match scan.n_settle {
        Some(n) => n,
        None => {
            return Err(WrightError::Convergence(format!(
                "series would need more than {cap} terms to converge for |z| = {z_modulus} \
                 (term hump near n = {}); argument outside the feasible range",
                scan.n_peak
            )));
        }
    };
    // Initial working digits: the request, guard digits, and an allowance
    // for the cancellation the scan predicts.
    let bump = (1.1 * (scan.max_ln / LN_10).max(0.0)).ceil() as u32;
    let start_digits = target + 10 + bump;
    // A request can converge in principle yet cost hours: reject up front
    // when the predicted work (terms × working digits) is out of bounds.
    let work = n_settle as f64 * start_digits as f64;
    if work > WORK_BUDGET {
        return Err(WrightError::Convergence(format!(
            "series at |z| = {z_modulus} needs ≈{n_settle} terms carrying ≈{start_digits} \
             working digits (≈{bump} lost to cancellation); cost is beyond the feasible range"
        )));
    }
    Ok(Shared {
        cap,
        n_min: scan.n_peak,
        start_digits,
    })
}

fn escalate_real(
    lambda: &Real,
    mu: &ComplexParam,
    z_signed: f64,
    target: u32,
    recip: bool,
) -> Result<PrecisionValue<Float>> {
    let sh = prepare(lambda, mu.re.to_f64(), z_signed.abs(), target, recip)?;
    let mut wd = sh.start_digits;
    for _ in 0..=MAX_ESCALATIONS {
        let ctx = GammaCtx::new(bits(wd));
        let out = attempt_real(&ctx, recip, lambda, mu, z_signed, sh.cap, sh.n_min);
        if !out.converged {
            return Err(WrightError::Convergence(format!(
                "series did not settle within {} terms at |z| = {}",
                sh.cap,
                z_signed.abs()
            )));
        }
        let val_exp = out.value.get_exp().map(i64::from).unwrap_or(out.max_exp);
        let cancel = ((out.max_exp - val_exp).max(0) as f64) * LOG10_2;
        if wd as f64 - cancel >= (target + 5) as f64 {
            return Ok(PrecisionValue {
                value: Float::with_val(bits(target + 5), &out.value),
                working_digits: wd,
                terms_used: out.terms,
                cancellation_digits: cancel,
            });
        }
        wd = (2 * wd).max(target + cancel.ceil() as u32 + 10);
    }
    Err(WrightError::Convergence(format!(
        "precision escalation exceeded {MAX_ESCALATIONS} doublings (cancellation too severe)"
    )))
}

fn escalate_cplx(
    lambda: &Real,
    mu: &ComplexParam,
    z: &PolarArg,
    target: u32,
    recip: bool,
) -> Result<PrecisionValue<Cplx>> {
    let sh = prepare(lambda, mu.re.to_f64(), z.modulus, target, recip)?;
    let mut wd = sh.start_digits;
    for _ in 0..=MAX_ESCALATIONS {
        let ctx = GammaCtx::new(bits(wd));
        let out = attempt_cplx(&ctx, recip, lambda, mu, z, sh.cap, sh.n_min);
        if !out.converged {
            return Err(WrightError::Convergence(format!(
                "series did not settle within {} terms at |z| = {}",
                sh.cap, z.modulus
            )));
        }
        let val_exp = match (out.value.re.get_exp(), out.value.im.get_exp()) {
            (Some(a), Some(b)) => a.max(b) as i64,
            (Some(a), None) => a as i64,
            (None, Some(b)) => b as i64,
            (None, None) => out.max_exp,
        };
        let cancel = ((out.max_exp - val_exp).max(0) as f64) * LOG10_2;
        if wd as f64 - cancel >= (target + 5) as f64 {
            let po = bits(target + 5);
            return Ok(PrecisionValue {
                value: Cplx::new(
                    Float::with_val(po, &out.value.re),
                    Float::with_val(po, &out.value.im),
                ),
                working_digits: wd,
                terms_used: out.terms,
                cancellation_digits: cancel,
            });
        }
        wd = (2 * wd).max(target + cancel.ceil() as u32 + 10);
    }
    Err(WrightError::Convergence(format!(
        "precision escalation exceeded {MAX_ESCALATIONS} doublings (cancellation too severe)"
    )))
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// W_{λ,μ}(z) = Σ_{n≥0} z^n / (n! Γ(λn+μ)).
pub fn wright_series(req: &SeriesRequest) -> Result<PrecisionValue<Cplx>> {
    validate_request(&req.lambda, req.target_digits)?;
    if req.z.modulus == 0.0 {
        // Only the n = 0 term survives.
        let p = bits(req.target_digits + 5);
        let ctx = GammaCtx::new(bits(req.target_digits + 15));
        let value = if req.mu.im == 0.0 {
            let g = match req.mu.re.as_rational() {
                Some(r) if r.is_integer() && *r <= 0i32 => Float::new(ctx.prec()),
                _ => ctx.recip_gamma_real(&req.mu.re.to_float(ctx.prec())),
            };
            Cplx::from_real(Float::with_val(p, g))
        } else {
            let arg = Cplx::new(
                req.mu.re.to_float(ctx.prec()),
                Float::with_val(ctx.prec(), req.mu.im),
            );
            let g = ctx.recip_gamma_cplx(&arg);
            Cplx::new(Float::with_val(p, &g.re), Float::with_val(p, &g.im))
        };
        return Ok(PrecisionValue {
            value,
            working_digits: req.target_digits + 15,
            terms_used: 1,
            cancellation_digits: 0.0,
        });
    }
    if req.mu.im == 0.0 {
        if let Some(sign) = req.z.real_sign() {
            let pv = escalate_real(
                &req.lambda,
                &req.mu,
                sign * req.z.modulus,
                req.target_digits,
                true,
            )?;
            return Ok(PrecisionValue {
                value: Cplx::from_real(pv.value),
                working_digits: pv.working_digits,
                terms_used: pv.terms_used,
                cancellation_digits: pv.cancellation_digits,
            });
        }
    }
    escalate_cplx(&req.lambda, &req.mu, &req.z, req.target_digits, true)
}

fn check_sigma(sigma: &Real) -> Result<()> {
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(WrightError::Domain("sigma must lie in (0,1)".into()));
    }
    Ok(())
}

/// F_σ(x) = W_{−σ,0}(−x); F_σ(0) = 0 since 1/Γ(0) = 0.
pub fn f_series(sigma: &Real, x: f64, target_digits: u32) -> Result<PrecisionValue<Float>> {
    check_sigma(sigma)?;
    validate_request(&sigma.neg(), target_digits)?;
    if x == 0.0 {
        return Ok(PrecisionValue {
            value: Float::new(bits(target_digits + 5)),
            working_digits: target_digits,
            terms_used: 1,
            cancellation_digits: 0.0,
        });
    }
    escalate_real(
        &sigma.neg(),
        &ComplexParam::real(Real::int(0)),
        -x,
        target_digits,
        true,
    )
}

/// M_σ(x) = W_{−σ,1−σ}(−x); M_σ(0) = 1/Γ(1−σ).
pub fn m_series(sigma: &Real, x: f64, target_digits: u32) -> Result<PrecisionValue<Float>> {
    check_sigma(sigma)?;
    validate_request(&sigma.neg(), target_digits)?;
    if x == 0.0 {
        let ctx = GammaCtx::new(bits(target_digits + 15));
        let v = ctx.recip_gamma_real(&sigma.one_minus().to_float(ctx.prec()));
        return Ok(PrecisionValue {
            value: Float::with_val(bits(target_digits + 5), v),
            working_digits: target_digits + 15,
            terms_used: 1,
            cancellation_digits: 0.0,
        });
    }
    escalate_real(
        &sigma.neg(),
        &ComplexParam::real(sigma.one_minus()),
        -x,
        target_digits,
        true,
    )
}

/// ℱ(z) = Σ_{n≥0} Γ(σn+σ) z^n / n!.
pub fn calf_series(sigma: &Real, z: &PolarArg, target_digits: u32) -> Result<PrecisionValue<Cplx>> {
    check_sigma(sigma)?;
    if target_digits < 1 {
        return Err(WrightError::Domain("target_digits must be >= 1".into()));
    }
    if z.modulus == 0.0 {
        let ctx = GammaCtx::new(bits(target_digits + 15));
        let g = ctx.gamma_real(&sigma.to_float(ctx.prec()));
        return Ok(PrecisionValue {
            value: Cplx::from_real(Float::with_val(bits(target_digits + 5), g)),
            working_digits: target_digits + 15,
            terms_used: 1,
            cancellation_digits: 0.0,
        });
    }
    let mu = ComplexParam::real(sigma.clone());
    if let Some(sign) = z.real_sign() {
        let pv = escalate_real(sigma, &mu, sign * z.modulus, target_digits, false)?;
        return Ok(PrecisionValue {
            value: Cplx::from_real(pv.value),
            working_digits: pv.working_digits,
            terms_used: pv.terms_used,
            cancellation_digits: pv.cancellation_digits,
        });
    }
    escalate_cplx(sigma, &mu, z, target_digits, false)
}

/// Closed forms: M_0(x) = e^{−x} (boundary convention), M_{1/2}(x) =
/// e^{−x²/4}/√π, M_{1/3}(x) = 3^{2/3}·Ai(x·3^{−1/3}); `None` otherwise.
pub fn m_closed(sigma: &Real, x: &Float) -> Option<Float> {
    let p = x.prec();
    let wp = p + 24;
    if sigma.eq_ratio(0, 1) {
        let e = Float::with_val(wp, -x).exp();
        return Some(Float::with_val(p, e));
    }
    if sigma.eq_ratio(1, 2) {
        let q = Float::with_val(wp, x.clone().square() / 4u32);
        let e = Float::with_val(wp, -q).exp();
        let spi = crate::prec::pi(wp).sqrt();
        return Some(Float::with_val(p, e / spi));
    }
    if sigma.eq_ratio(1, 3) {
        // 3^{−1/3} and 3^{2/3} via cube roots.
        let c = Float::with_val(wp, 3u32).recip().cbrt(); // 3^{−1/3}
        let arg = Float::with_val(wp, x * &c);
        let ai = crate::airy::airy_ai(&arg);
        let nine = Float::with_val(wp, 9u32).cbrt(); // 3^{2/3}
        return Some(Float::with_val(p, ai * nine));
    }
    None
}

/// Expose the request-independent digit count actually achieved.
pub fn achieved_digits<T>(pv: &PrecisionValue<T>) -> f64 {
    pv.working_digits as f64 - pv.cancellation_digits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::{digits_of, float, parse, pi};

    fn req(lambda: Real, mu: f64, z: f64, d: u32) -> SeriesRequest {
        SeriesRequest {
            lambda,
            mu: ComplexParam::from(mu),
            z: PolarArg::real(z),
            target_digits: d,
        }
    }

    #[test]
    fn wright_at_zero_is_recip_gamma() {
        // λ=−1/2, μ=1/2, z=0 → 1/Γ(1/2) = 1/√π
        let pv = wright_series(&req(Real::ratio(-1, 2), 0.5, 0.0, 25)).unwrap();
        let p = pv.value.re.prec();
        let want = pi(p).sqrt().recip();
        assert!((pv.value.re.clone() - want).abs() < float(p, 1e-24));
        assert!(pv.value.im.is_zero());
        assert_eq!(pv.terms_used, 1);
    }

    #[test]
    fn wright_gaussian_point() {
        // λ=−1/2, μ=1/2, z=−2 → e^{−1}/√π
        let pv = wright_series(&req(Real::ratio(-1, 2), 0.5, -2.0, 30)).unwrap();
        let p = pv.value.re.prec();
        let want = Float::with_val(p, -1f64).exp() / pi(p).sqrt();
        let rel = (pv.value.re.clone() - &want).abs() / want;
        assert!(rel < float(p, 1e-29));
    }

    #[test]
    fn wright_airy_point() {
        // λ=−1/3, μ=2/3, z=−1 → 3^{2/3}·Ai(3^{−1/3})
        let pv = wright_series(&req(Real::ratio(-1, 3), 2.0 / 3.0, -1.0, 30)).unwrap();
        let p = pv.value.re.prec();
        let c = Float::with_val(p + 24, 3u32).recip().cbrt();
        let ai = crate::airy::airy_ai(&Float::with_val(p + 24, &c));
        let want = Float::with_val(p, ai * Float::with_val(p + 24, 9u32).cbrt());
        let rel = (pv.value.re.clone() - &want).abs() / want;
        assert!(rel < float(p, 1e-28));
    }

    #[test]
    fn m_series_at_zero() {
        // M_{3/4}(0) = 1/Γ(1/4)
        let pv = m_series(&Real::ratio(3, 4), 0.0, 25).unwrap();
        let p = pv.value.prec();
        let ctx = GammaCtx::new(p + 16);
        let want = ctx
            .gamma_real(&Float::with_val(p + 16, 0.25f64))
            .recip();
        assert!((pv.value.clone() - Float::with_val(p, want)).abs() < float(p, 1e-23));
    }

    #[test]
    fn m_series_gaussian() {
        let pv = m_series(&Real::ratio(1, 2), 4.0, 30).unwrap();
        let p = pv.value.prec();
        let want = Float::with_val(p, -4f64).exp() / pi(p).sqrt();
        let rel = (pv.value.clone() - &want).abs() / want;
        assert!(rel < float(p, 1e-29), "rel = {rel}");
    }

    #[test]
    fn m_series_cancellation_stress() {
        // Independently computed 25-digit reference for M_{3/4}(6): the
        // terms peak near 10^{+19} while the result is ~10^{−59}.
        let pv = m_series(&Real::ratio(3, 4), 6.0, 25).unwrap();
        let p = pv.value.prec();
        let want = parse(p, "1.558244141076293464824844e-59");
        let rel = (pv.value.clone() - &want).abs() / want.abs();
        assert!(rel < float(p, 1e-24), "rel = {rel}");
        assert!(pv.cancellation_digits > 30.0, "cancellation was severe here");
    }

    #[test]
    fn m_series_negative_axis() {
        // Independently computed reference for M_{1/4}(−6).
        let pv = m_series(&Real::ratio(1, 4), -6.0, 25).unwrap();
        let p = pv.value.prec();
        let want = parse(p, "-10.38353623176577420491982");
        let rel = (pv.value.clone() - &want).abs() / want.abs();
        assert!(rel < float(p, 1e-24), "rel = {rel}");
    }

    #[test]
    fn f_series_zero_and_half() {
        let pv = f_series(&Real::ratio(2, 5), 0.0, 20).unwrap();
        assert!(pv.value.is_zero());
        // F_{1/2}(2) = (2/(2√π))·e^{−1} = e^{−1}/√π
        let pv = f_series(&Real::ratio(1, 2), 2.0, 25).unwrap();
        let p = pv.value.prec();
        let want = Float::with_val(p, -1f64).exp() / pi(p).sqrt();
        let rel = (pv.value.clone() - &want).abs() / want;
        assert!(rel < float(p, 1e-24));
    }

    #[test]
    fn interrelation_f_eq_sigma_x_m() {
        for (sig, x) in [
            (Real::ratio(1, 4), 6.0f64),
            (Real::ratio(2, 3), -2.0),
            (Real::from_f64(0.37), 1.5),
        ] {
            let f = f_series(&sig, x, 25).unwrap();
            let m = m_series(&sig, x, 25).unwrap();
            let p = f.value.prec();
            let sx = sig.to_float(p) * Float::with_val(p, x);
            let want = Float::with_val(p, &m.value * &sx);
            let diff = (f.value.clone() - &want).abs();
            let scale = want.abs().max(&float(p, 1e-30));
            assert!(diff / scale < float(p, 1e-23), "sigma={:?} x={x}", sig.to_f64());
        }
    }

    #[test]
    fn calf_at_zero() {
        let pv = calf_series(&Real::ratio(1, 2), &PolarArg::real(0.0), 25).unwrap();
        let p = pv.value.re.prec();
        let want = pi(p).sqrt();
        assert!((pv.value.re.clone() - want).abs() < float(p, 1e-24));
    }

    #[test]
    fn calf_reconstruction_identity() {
        // (1/2π)[e^{πiϑ}ℱ(xe^{−πiκ}) + e^{−πiϑ}ℱ(xe^{πiκ})] = M_σ(x)
        let sig = Real::ratio(1, 4);
        let x = 1.0f64;
        let kappa = sig.one_minus();
        let d = 25u32;
        let plus = calf_series(&sig, &PolarArg::new(x, kappa.neg()), d).unwrap();
        let minus = calf_series(&sig, &PolarArg::new(x, kappa), d).unwrap();
        let p = plus.value.re.prec();
        // ϑ = σ − 1/2 = −1/4; e^{±πiϑ} built analytically.
        let theta = Float::with_val(p, -0.25f64);
        let eplus = cispi(&theta, p);
        let eminus = eplus.conj();
        let combo = eplus.mul(&plus.value).add(&eminus.mul(&minus.value));
        let two_pi = Float::with_val(p, 2u32 * pi(p));
        let got = Float::with_val(p, &combo.re / &two_pi);
        let m = m_series(&sig, x, d).unwrap();
        let rel = (got - &m.value).abs() / m.value.clone().abs();
        assert!(rel < float(p, 1e-22), "rel = {rel}");
        // The imaginary part must cancel to the same accuracy.
        assert!(combo.im.clone().abs() / combo.re.clone().abs() < float(p, 1e-20));
    }

    #[test]
    fn m_closed_cases() {
        let p = bits(30);
        let x = float(p, 2u32);
        assert!(m_closed(&Real::from_f64(0.4), &x).is_none());
        let e = m_closed(&Real::int(0), &x).unwrap();
        assert!((e - float(p, -2i32).exp()).abs() < float(p, 1e-27));
        let h = m_closed(&Real::ratio(1, 2), &x).unwrap();
        let want = float(p, -1i32).exp() / pi(p).sqrt();
        assert!((h - want).abs() < float(p, 1e-27));
        // σ=1/3 closed form against the series (independent paths).
        let a = m_closed(&Real::ratio(1, 3), &x).unwrap();
        let want = parse(p, "0.1736639759810554033110976");
        assert!((a - want).abs() < float(p, 1e-24));
    }

    #[test]
    fn infeasible_argument_errors_fast() {
        // σ = 0.9 on the negative axis at x = 10: the term hump sits beyond
        // 10^9 terms — must fail from the profile scan, not grind through
        // millions of arbitrary-precision terms (which would take minutes).
        let t0 = std::time::Instant::now();
        let r = m_series(&Real::from_f64(0.9), -10.0, 16);
        assert!(matches!(r, Err(WrightError::Convergence(_))));
        assert!(t0.elapsed().as_secs() < 30, "infeasibility must be detected cheaply");
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            m_series(&Real::from_f64(1.5), 1.0, 16),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            wright_series(&req(Real::from_f64(-1.2), 0.5, 1.0, 16)),
            Err(WrightError::Domain(_))
        ));
        assert!(matches!(
            wright_series(&req(Real::ratio(-1, 2), 0.5, 1.0, 0)),
            Err(WrightError::Domain(_))
        ));
    }

    #[test]
    fn complex_mu_conjugate_symmetry() {
        // W_{λ,μ̄}(z̄) = conj(W_{λ,μ}(z)) — exercises the complex-μ path.
        let z = PolarArg::new(1.5, Real::ratio(1, 3));
        let zbar = PolarArg::new(1.5, Real::ratio(-1, 3));
        let a = wright_series(&SeriesRequest {
            lambda: Real::ratio(-1, 2),
            mu: ComplexParam {
                re: Real::from_f64(0.7),
                im: 0.4,
            },
            z,
            target_digits: 20,
        })
        .unwrap();
        let b = wright_series(&SeriesRequest {
            lambda: Real::ratio(-1, 2),
            mu: ComplexParam {
                re: Real::from_f64(0.7),
                im: -0.4,
            },
            z: zbar,
            target_digits: 20,
        })
        .unwrap();
        let p = a.value.re.prec();
        assert!((a.value.re.clone() - &b.value.re).abs() < float(p, 1e-18));
        assert!((a.value.im.clone() + &b.value.im).abs() < float(p, 1e-18));
    }

    #[test]
    fn precision_value_fields_sane() {
        let pv = m_series(&Real::ratio(1, 2), 1.0, 16).unwrap();
        assert!(pv.working_digits >= 16);
        assert!(pv.terms_used > 3);
        assert!(pv.cancellation_digits >= 0.0);
        assert!(digits_of(pv.value.prec()) >= 16);
    }
}
