//! Scalars at the 2r-th root of unity q = e^{iπ/r} and q-combinatorics.
//!
//! Everything downstream compares complex numbers through the tolerance
//! stored in [`RootData`], never exactly. q-powers accept arbitrary complex
//! exponents: q^α stands for e^{απi/r}.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub type C64 = Complex64;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("root parameter r must be at least 2, got {0}")]
    RootTooSmall(u32),
    #[error("q-factorial [{0}]! vanishes at a 2r-th root of unity for n >= r = {1}")]
    FactorialOutOfRange(u32, u32),
    #[error("q-binomial with non-integer column: top {0}, bottom {1}")]
    BinomialColumn(C64, C64),
}

/// Fixed root level r (q = e^{iπ/r}) plus the global comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootData {
    pub r: u32,
    pub tol: f64,
}

pub const DEFAULT_TOL: f64 = 1e-9;

impl RootData {
    pub fn new(r: u32) -> Result<Self, ScalarError> {
        Self::with_tol(r, DEFAULT_TOL)
    }

    pub fn with_tol(r: u32, tol: f64) -> Result<Self, ScalarError> {
        if r < 2 {
            return Err(ScalarError::RootTooSmall(r));
        }
        Ok(RootData { r, tol })
    }

    pub fn q(&self) -> C64 {
        self.q_power(ONE)
    }

    /// q^x = e^{xπi/r} for any complex exponent x.
    pub fn q_power(&self, x: C64) -> C64 {
        (I * PI * x / self.r as f64).exp()
    }

    /// {x} = q^x − q^{−x}.
    pub fn q_num(&self, x: C64) -> C64 {
        self.q_power(x) - self.q_power(-x)
    }

    /// [x] = {x}/{1} = sin(πx/r)/sin(π/r).
    pub fn q_int(&self, x: C64) -> C64 {
        (PI * x / self.r as f64).sin() / (PI / self.r as f64).sin()
    }

    /// [n]! for 0 ≤ n ≤ r−1. [r] = 0, so larger factorials are rejected.
    pub fn q_fact(&self, n: u32) -> Result<C64, ScalarError> {
        if n >= self.r {
            return Err(ScalarError::FactorialOutOfRange(n, self.r));
        }
        let mut acc = ONE;
        for j in 1..=n {
            acc *= self.q_int(C64::new(j as f64, 0.0));
        }
        Ok(acc)
    }

    /// q-binomial with complex top: ∏_{j=1..k} [a−k+j]/[j]. Negative k gives 0.
    pub fn q_binom(&self, a: C64, k: i64) -> C64 {
        if k < 0 {
            return ZERO;
        }
        let mut acc = ONE;
        for j in 1..=k {
            let jj = C64::new(j as f64, 0.0);
            acc *= self.q_int(a - C64::new(k as f64, 0.0) + jj) / self.q_int(jj);
        }
        acc
    }

    /// q-binomial [a; b] where either b or a−b is a non-negative integer
    /// (within tol). Used by the Clebsch–Gordan coefficient display, whose
    /// binomials carry complex entries in both slots.
    pub fn q_binom_pair(&self, a: C64, b: C64) -> Result<C64, ScalarError> {
        if let Some(k) = self.as_int(b) {
            return Ok(self.q_binom(a, k));
        }
        if let Some(k) = self.as_int(a - b) {
            // [a; b] = [a; a−b] with column k = a−b.
            return Ok(self.q_binom(a, k));
        }
        Err(ScalarError::BinomialColumn(a, b))
    }

    /// |a−b| ≤ tol·max(1,|a|,|b|).
    pub fn approx_eq(&self, a: C64, b: C64) -> bool {
        (a - b).norm() <= self.tol * 1f64.max(a.norm()).max(b.norm())
    }

    pub fn approx_zero(&self, a: C64) -> bool {
        a.norm() <= self.tol
    }

    /// Nearest integer if x is real-integral within tol.
    pub fn as_int(&self, x: C64) -> Option<i64> {
        let n = x.re.round();
        if x.im.abs() <= self.tol && (x.re - n).abs() <= self.tol {
            Some(n as i64)
        } else {
            None
        }
    }

    pub fn is_integer(&self, x: C64) -> bool {
        self.as_int(x).is_some()
    }

    /// Typicality condition for V_α: α ∈ (ℂ∖ℤ) ∪ rℤ.
    pub fn is_typical(&self, alpha: C64) -> bool {
        match self.as_int(alpha) {
            None => true,
            Some(n) => n.rem_euclid(self.r as i64) == 0,
        }
    }
}

/// Deterministic pseudo-random sampler for property suites (splitmix64).
/// Not a statistical RNG; just a stable source of generic parameters.
#[derive(Debug, Clone)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in (0,1).
    pub fn unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// A generic real color lift: non-integer, bounded away from ℤ by 0.05.
    pub fn generic_real(&mut self) -> f64 {
        loop {
            let x = self.range(-3.0, 3.0);
            if (x - x.round()).abs() > 0.05 {
                return x;
            }
        }
    }

    /// A generic complex color (off the real axis or off ℤ).
    pub fn generic_complex(&mut self) -> C64 {
        C64::new(self.generic_real(), self.range(-0.4, 0.4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn root(r: u32) -> RootData {
        RootData::new(r).unwrap()
    }

    #[test]
    fn q_power_basics() {
        let rd = root(2);
        assert!(rd.approx_eq(rd.q_power(C64::new(2.0, 0.0)), C64::new(-1.0, 0.0)));
        let rd4 = root(4);
        assert!(rd4.approx_eq(rd4.q_power(ZERO), ONE));
        // exp(iπ/4) = (√2/2)(1+i)
        let v = rd.q_power(C64::new(0.5, 0.0));
        assert!(rd.approx_eq(v, C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)));
    }

    #[test]
    fn q_power_is_multiplicative() {
        let rd = root(5);
        let mut s = Sampler::new(7);
        for _ in 0..20 {
            let x = s.generic_complex();
            let y = s.generic_complex();
            assert!(rd.approx_eq(rd.q_power(x + y), rd.q_power(x) * rd.q_power(y)));
        }
    }

    #[test]
    fn q_int_values() {
        let rd3 = root(3);
        assert!(rd3.approx_zero(rd3.q_int(ZERO)));
        // sin(2π/3)/sin(π/3) = 1
        assert!(rd3.approx_eq(rd3.q_int(C64::new(2.0, 0.0)), ONE));
        for r in 2..=5 {
            let rd = root(r);
            assert!(rd.approx_zero(rd.q_int(C64::new(r as f64, 0.0))));
        }
    }

    #[test]
    fn q_num_and_int_are_odd() {
        let rd = root(4);
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let x = s.generic_complex();
            assert!(rd.approx_eq(rd.q_num(-x), -rd.q_num(x)));
            assert!(rd.approx_eq(rd.q_int(-x), -rd.q_int(x)));
        }
    }

    #[test]
    fn q_int_consistent_with_q_num() {
        let rd = root(5);
        let mut s = Sampler::new(11);
        for _ in 0..10 {
            let x = s.generic_complex();
            assert!(rd.approx_eq(rd.q_int(x), rd.q_num(x) / rd.q_num(ONE)));
        }
    }

    #[test]
    fn q_fact_rejects_large_n() {
        let rd = root(3);
        assert!(rd.q_fact(2).is_ok());
        assert!(rd.q_fact(3).is_err());
        assert!(rd.approx_eq(rd.q_fact(0).unwrap(), ONE));
    }

    #[test]
    fn q_binom_matches_factorial_ratio() {
        for r in [4u32, 5] {
            let rd = root(r);
            for a in 0..r as i64 {
                for k in 0..=a {
                    let lhs = rd.q_binom(C64::new(a as f64, 0.0), k);
                    let rhs = rd.q_fact(a as u32).unwrap()
                        / (rd.q_fact(k as u32).unwrap() * rd.q_fact((a - k) as u32).unwrap());
                    assert!(rd.approx_eq(lhs, rhs), "r={r} a={a} k={k}");
                }
            }
        }
    }

    #[test]
    fn q_binom_pair_resolves_either_slot() {
        let rd = root(2);
        let a = C64::new(0.7, 0.1);
        // bottom = a − 1 so a − b = 1 is the integer slot
        let v = rd.q_binom_pair(a, a - ONE).unwrap();
        assert!(rd.approx_eq(v, rd.q_binom(a, 1)));
        assert!(rd.q_binom_pair(a, C64::new(0.3, 0.0)).is_err());
    }

    #[test]
    fn typicality() {
        let rd = root(3);
        assert!(rd.is_typical(C64::new(0.5, 0.0)));
        assert!(rd.is_typical(C64::new(3.0, 0.0)));
        assert!(rd.is_typical(C64::new(-6.0, 0.0)));
        assert!(!rd.is_typical(C64::new(2.0, 0.0)));
        assert!(rd.is_typical(C64::new(2.0, 0.3)));
    }
}
