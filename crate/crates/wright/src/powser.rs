//! Truncated formal power series in one variable, generic over the
//! coefficient field.
//!
//! The inverse-factorial coefficient algorithm composes a handful of
//! primitive expansions — log(1+cv), binomial powers (1+cv)^{−m}, products,
//! and exp of a series with zero constant term — all truncated at a fixed
//! order. Exact rational coefficients are used when σ is rational (the
//! triangular elimination downstream amplifies rounding), working-precision
//! floats otherwise. No symbolic engine; everything is plain convolution
//! arithmetic.

use rug::{Float, Rational};

/// Coefficient field operations needed by the series arithmetic.
///
/// Implementations are factories as well: `Float` coefficients need a
/// precision to be created, so the ring object carries it.
pub trait Ring: Clone {
    type El: Clone;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
}

/// Exact rational coefficients.
#[derive(Clone, Copy, Debug)]
pub struct RatRing;

impl Ring for RatRing {
    type El = Rational;
    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn one(&self) -> Rational {
        Rational::from(1u32)
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from(v)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a - b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a / b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Rational::from(-a)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        *a == 0u32
    }
}

/// Working-precision float coefficients.
#[derive(Clone, Copy, Debug)]
pub struct FloatRing {
    pub prec: u32,
}

impl Ring for FloatRing {
    type El = Float;
    fn zero(&self) -> Float {
        Float::new(self.prec)
    }
    fn one(&self) -> Float {
        Float::with_val(self.prec, 1u32)
    }
    fn from_i64(&self, v: i64) -> Float {
        Float::with_val(self.prec, v)
    }
    fn add(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a + b)
    }
    fn sub(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a - b)
    }
    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a * b)
    }
    fn div(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a / b)
    }
    fn neg(&self, a: &Float) -> Float {
        Float::with_val(self.prec, -a)
    }
    fn is_zero(&self, a: &Float) -> bool {
        a.is_zero()
    }
}

/// Power series truncated after v^order: coefficients c[0..=order].
#[derive(Clone, Debug)]
pub struct Series<R: Ring> {
    pub ring: R,
    pub c: Vec<R::El>,
}

impl<R: Ring> Series<R> {
    pub fn zero(ring: R, order: usize) -> Self {
        let c = (0..=order).map(|_| ring.zero()).collect();
        Series { ring, c }
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Series::zero(ring, order);
        s.c[0] = s.ring.one();
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for k in 0..=r.order() {
            r.c[k] = r.ring.add(&r.c[k], &o.c[k]);
        }
        r
    }

    pub fn scale(&self, f: &R::El) -> Self {
        let mut r = self.clone();
        for k in 0..=r.order() {
            r.c[k] = r.ring.mul(&r.c[k], f);
        }
        r
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, o: &Self) -> Self {
        let ring = self.ring.clone();
        let n = self.order();
        let mut r = Series::zero(ring, n);
        for i in 0..=n {
            if r.ring.is_zero(&self.c[i]) {
                continue;
            }
            for j in 0..=(n - i) {
                let t = r.ring.mul(&self.c[i], &o.c[j]);
                r.c[i + j] = r.ring.add(&r.c[i + j], &t);
            }
        }
        r
    }

    /// Multiply by v^j (shift up, truncating at the top).
    pub fn shift(&self, j: usize) -> Self {
        let mut r = Series::zero(self.ring.clone(), self.order());
        for k in j..=self.order() {
            r.c[k] = self.c[k - j].clone();
        }
        r
    }

    /// Reciprocal of a series with unit leading coefficient is not needed in
    /// general; this handles any invertible constant term by the standard
    /// recurrence b_0 = 1/a_0, b_k = −(Σ_{i=1..k} a_i b_{k−i})/a_0.
    pub fn recip(&self) -> Self {
        let ring = self.ring.clone();
        let n = self.order();
        let mut b = Series::zero(ring, n);
        b.c[0] = b.ring.div(&b.ring.one(), &self.c[0]);
        for k in 1..=n {
            let mut acc = b.ring.zero();
            for i in 1..=k {
                let t = b.ring.mul(&self.c[i], &b.c[k - i]);
                acc = b.ring.add(&acc, &t);
            }
            acc = b.ring.neg(&acc);
            b.c[k] = b.ring.div(&acc, &self.c[0]);
        }
        b
    }

    /// exp of a series with zero constant term: y' = u'y term recurrence
    /// k·y_k = Σ_{j=1..k} j·u_j·y_{k−j}.
    pub fn exp(&self) -> Self {
        let ring = self.ring.clone();
        debug_assert!(ring.is_zero(&self.c[0]), "exp needs zero constant term");
        let n = self.order();
        let mut y = Series::zero(ring, n);
        y.c[0] = y.ring.one();
        for k in 1..=n {
            let mut acc = y.ring.zero();
            for j in 1..=k {
                let ju = y.ring.mul(&y.ring.from_i64(j as i64), &self.c[j]);
                let t = y.ring.mul(&ju, &y.c[k - j]);
                acc = y.ring.add(&acc, &t);
            }
            y.c[k] = y.ring.div(&acc, &y.ring.from_i64(k as i64));
        }
        y
    }
}

/// ln(1 + c·v) = Σ_{k≥1} (−1)^{k+1} c^k / k · v^k.
pub fn log1p_cv<R: Ring>(ring: R, c: &R::El, order: usize) -> Series<R> {
    let mut s = Series::zero(ring, order);
    let mut ck = s.ring.one();
    for k in 1..=order {
        ck = s.ring.mul(&ck, c);
        let term = s.ring.div(&ck, &s.ring.from_i64(k as i64));
        s.c[k] = if k % 2 == 1 { term } else { s.ring.neg(&term) };
    }
    s
}

/// (1 + c·v)^{−m} = Σ_k C(m+k−1, k) (−c)^k v^k for integer m ≥ 1.
pub fn binom_recip_pow<R: Ring>(ring: R, c: &R::El, m: u32, order: usize) -> Series<R> {
    let mut s = Series::zero(ring, order);
    s.c[0] = s.ring.one();
    let neg_c = s.ring.neg(c);
    let mut coef = s.ring.one(); // C(m−1,0)·(−c)^0
    for k in 1..=order {
        // C(m+k−1,k) = C(m+k−2,k−1)·(m+k−1)/k
        coef = s.ring.mul(&coef, &s.ring.from_i64((m as i64) + (k as i64) - 1));
        coef = s.ring.div(&coef, &s.ring.from_i64(k as i64));
        coef = s.ring.mul(&coef, &neg_c);
        s.c[k] = coef.clone();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn exp_log_roundtrip_rational() {
        let u = log1p_cv(RatRing, &rat(3, 7), 8);
        let e = u.exp(); // should equal 1 + (3/7)v
        assert_eq!(e.c[0], rat(1, 1));
        assert_eq!(e.c[1], rat(3, 7));
        for k in 2..=8 {
            assert_eq!(e.c[k], Rational::new(), "order {k} must vanish");
        }
    }

    #[test]
    fn recip_binomial_agree() {
        // (1+cv)^{-1} two ways.
        let c = rat(5, 3);
        let mut lin = Series::one(RatRing, 6);
        lin.c[1] = c.clone();
        let r1 = lin.recip();
        let r2 = binom_recip_pow(RatRing, &c, 1, 6);
        for k in 0..=6 {
            assert_eq!(r1.c[k], r2.c[k]);
        }
    }

    #[test]
    fn binom_recip_pow_square() {
        // (1+cv)^{-2} = ((1+cv)^{-1})²
        let c = rat(-2, 9);
        let a = binom_recip_pow(RatRing, &c, 2, 7);
        let b1 = binom_recip_pow(RatRing, &c, 1, 7);
        let b2 = b1.mul(&b1);
        for k in 0..=7 {
            assert_eq!(a.c[k], b2.c[k]);
        }
    }

    #[test]
    fn float_ring_matches_rational() {
        let fr = FloatRing { prec: 128 };
        let c_r = rat(3, 8);
        let c_f = Float::with_val(128, 0.375f64);
        let a = log1p_cv(RatRing, &c_r, 10).exp();
        let b = log1p_cv(fr, &c_f, 10).exp();
        for k in 0..=10 {
            let want = Float::with_val(128, &a.c[k]);
            let diff = Float::with_val(128, &want - &b.c[k]).abs();
            assert!(diff < Float::with_val(128, 1e-30f64));
        }
    }
}
