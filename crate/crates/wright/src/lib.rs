//! Auxiliary Wright functions of the second kind and their asymptotics.
//!
//! This crate evaluates the entire function
//!
//!   W_{λ,μ}(z) = Σ_{n≥0} z^n / (n! Γ(λn + μ)),   λ > −1,
//!
//! with a focus on the auxiliary functions of the second kind,
//!
//!   F_σ(z) = W_{−σ,0}(−z),   M_σ(z) = W_{−σ,1−σ}(−z),   0 < σ < 1,
//!
//! which arise as fundamental solutions of time-fractional diffusion-wave
//! equations and as spectral densities in probability theory.
//!
//! What's here:
//!
//! * arbitrary-precision Maclaurin summation with rigorous handling of the
//!   catastrophic cancellation on the exponentially small side
//!   ([`series`]);
//! * the asymptotic expansions for x → ±∞ — exponentially large,
//!   oscillatory-algebraic, and exponentially-small-plus-algebraic regimes,
//!   with the structure changing across σ = 1/3 and σ = 1/2 ([`asympt`]);
//! * the expansion coefficients c_j(σ), both from fixed polynomial data and
//!   from an exact inverse-factorial-series algorithm ([`coeffs`]);
//! * the σ → 1⁻ limit, where M_σ concentrates into δ(x−1): saddle-point
//!   evaluation of the Wright integral representation along its
//!   steepest-descent contour, and the matching closed limit formulas
//!   ([`limit`]).
//!
//! Precision is tracked end to end: public entry points take a target digit
//! count and return values carrying the working precision actually used,
//! the number of terms consumed, and how many digits were lost to
//! cancellation.

pub mod bernoulli;
pub mod core;
pub mod error;
pub mod gamma;
pub mod powser;
pub mod prec;

pub mod airy;
pub mod asympt;
pub mod coeffs;
pub mod limit;
pub mod series;

pub use crate::asympt::{
    calf_asympt, calf_stokes, f_neg_asympt, f_pos_asympt, m_neg_asympt, m_pos_asympt,
    optimal_truncation, Components, ExpansionResult, NegOpts, StokesSign, Truncation,
};
pub use crate::core::{
    big_x, classify_regime, derive_params, BigX, PrecisionValue, Real, Regime, Sigma, SigmaParams,
};
pub use crate::error::{Result, WrightError};
pub use crate::limit::{
    figure_grid, kreis_pipkin, kreis_pipkin_ln, m_limit_neg, m_limit_pos, m_limit_pos_ln,
    GridMethod, GridRow, KPSetup, QuadOpts, Side,
};
pub use crate::series::{calf_series, f_series, m_closed, m_series, PolarArg};
