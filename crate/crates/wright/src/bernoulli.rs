//! Exact even-index Bernoulli numbers B_{2n} as `rug::Rational`.
//!
//! These drive every Stirling-series evaluation in the crate (the log-gamma
//! tail and the scaled-gamma expansion coefficients). The values are
//! computed once by the classical recurrence
//!
//!   Σ_{k=0}^{m} C(m+1,k) B_k = 0   (m ≥ 1),  B_0 = 1,  B_1 = −1/2,
//!
//! restricted to even indices (odd Bernoulli numbers beyond B_1 vanish; the
//! B_1 contribution is folded in explicitly), and memoized process-wide:
//! the table is immutable data, extended monotonically under a lock.

use rug::{Integer, Rational};
use std::sync::{Mutex, OnceLock};

static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Run `f` on the slice [B_0, B_2, B_4, …, B_{2n}] with 2n ≥ `max_even`.
///
/// The closure borrows the cached table directly (no cloning); keep it
/// short-lived — typically a conversion of a prefix into working-precision
/// floats.
pub fn with_bernoulli<R>(max_even: usize, f: impl FnOnce(&[Rational]) -> R) -> R {
    let n_needed = max_even / 2 + 1; // entries for B_0 .. B_{2(n_needed-1)}
    let lock = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1u32)]));
    let mut tab = lock.lock().expect("bernoulli cache poisoned");
    while tab.len() < n_needed {
        let m = 2 * tab.len(); // next even index to fill
        let next = bernoulli_even(m, &tab);
        tab.push(next);
    }
    f(&tab[..n_needed])
}

/// B_m for even m ≥ 2 given [B_0, B_2, …, B_{m−2}].
fn bernoulli_even(m: usize, evens: &[Rational]) -> Rational {
    // Σ_{k even, k<m} C(m+1,k) B_k  +  C(m+1,1)·B_1, then B_m = −Σ/(m+1).
    let mut sum = Rational::from((-(m as i64 + 1), 2i64)); // C(m+1,1)·(−1/2)
    let mut binom = Integer::from(1u32); // C(m+1, 0)
    for k in 0..m {
        if k % 2 == 0 {
            sum += Rational::from(&binom * &evens[k / 2]);
        }
        // C(m+1, k+1) = C(m+1, k)·(m+1−k)/(k+1), exact.
        binom *= (m + 1 - k) as u32;
        debug_assert!(binom.is_divisible_u((k + 1) as u32), "inexact binomial step");
        binom /= (k + 1) as u32;
    }
    sum /= -(m as i64 + 1);
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        with_bernoulli(12, |b| {
            assert_eq!(b[0], Rational::from(1u32));
            assert_eq!(b[1], Rational::from((1u32, 6u32))); // B_2
            assert_eq!(b[2], Rational::from((-1i32, 30u32))); // B_4
            assert_eq!(b[3], Rational::from((1u32, 42u32))); // B_6
            assert_eq!(b[4], Rational::from((-1i32, 30u32))); // B_8
            assert_eq!(b[5], Rational::from((5u32, 66u32))); // B_10
            assert_eq!(b[6], Rational::from((-691i32, 2730u32))); // B_12
        });
    }

    #[test]
    fn extension_is_consistent() {
        // Ask small, then large, then small again: the cache must agree.
        let b6_first = with_bernoulli(6, |b| b[3].clone());
        let b20 = with_bernoulli(20, |b| b[10].clone());
        assert_eq!(b20, Rational::from((-174611i64, 330i64))); // B_20
        let b6_again = with_bernoulli(2, |_| ()); // no-op touch
        let _ = b6_again;
        let b6_second = with_bernoulli(6, |b| b[3].clone());
        assert_eq!(b6_first, b6_second);
    }
}
