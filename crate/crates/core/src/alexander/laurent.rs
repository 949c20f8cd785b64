//! Multivariable Laurent polynomials with integer coefficients.
//!
//! Exact arithmetic only; overflow is an error, never wraparound. These back
//! the Fox-calculus determinants, so everything stays in ℤ[t_1^±,…,t_m^±]
//! until the final numeric evaluation.

use crate::scalar::{C64, ONE};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("integer overflow in exact polynomial arithmetic")]
    Overflow,
    #[error("inexact polynomial division")]
    Inexact,
    #[error("variable count mismatch: {0} vs {1}")]
    Vars(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub nvars: usize,
    /// exponent vector → coefficient; zero coefficients are never stored.
    pub terms: BTreeMap<Vec<i64>, i64>,
}

fn add_i64(a: i64, b: i64) -> Result<i64, LaurentError> {
    a.checked_add(b).ok_or(LaurentError::Overflow)
}

fn mul_i64(a: i64, b: i64) -> Result<i64, LaurentError> {
    a.checked_mul(b).ok_or(LaurentError::Overflow)
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: i64) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// t_v (single variable as a monomial).
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn var_inv(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = -1;
        Self::monomial(nvars, e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: i64) -> Result<(), LaurentError> {
        if c == 0 {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut e) => {
                let v = add_i64(*e.get(), c)?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::Vars(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::Vars(self.nvars, other.nvars));
        }
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, mul_i64(*ca, *cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, exps: &[i64], c: i64) -> Result<Self, LaurentError> {
        let mut out = Self::zero(self.nvars);
        for (e, co) in &self.terms {
            let ne: Vec<i64> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.add_term(ne, mul_i64(*co, c)?)?;
        }
        Ok(out)
    }

    /// Substitute t_i ↦ t_i² (exponent doubling).
    pub fn squared_vars(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| 2 * x).collect(), *c))
                .collect(),
        }
    }

    /// Substitute t_i ↦ 1/t_i.
    pub fn reflected(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), *c))
                .collect(),
        }
    }

    /// All variables to a single one (exponents summed).
    pub fn specialize_diagonal(&self) -> Result<Self, LaurentError> {
        let mut out = Self::zero(1);
        for (e, c) in &self.terms {
            out.add_term(vec![e.iter().sum()], *c)?;
        }
        Ok(out)
    }

    /// Leading exponent vector in lexicographic order.
    pub fn lead(&self) -> Option<(&Vec<i64>, i64)> {
        self.terms.iter().next_back().map(|(e, c)| (e, *c))
    }

    /// Exact division; `None` when not exactly divisible.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>, LaurentError> {
        if divisor.is_zero() {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        let (dlead, dc) = divisor.lead().expect("nonzero divisor");
        let dlead = dlead.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > 100_000 {
                return Ok(None);
            }
            let (rlead, rc) = rem.lead().expect("nonzero remainder");
            if rc % dc != 0 {
                return Ok(None);
            }
            let qc = rc / dc;
            let qe: Vec<i64> = rlead.iter().zip(&dlead).map(|(a, b)| a - b).collect();
            quo.add_term(qe.clone(), qc)?;
            rem = rem.sub(&divisor.mul_monomial(&qe, qc)?)?;
        }
        Ok(Some(quo))
    }

    pub fn eval(&self, points: &[C64]) -> C64 {
        assert_eq!(points.len(), self.nvars);
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = C64::new(*c as f64, 0.0);
            for (p, k) in points.iter().zip(e) {
                term *= p.powi(*k as i32);
            }
            acc += term;
        }
        acc
    }

    /// Sum of coefficients (evaluation at all-ones).
    pub fn coeff_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Dense coefficient list of a one-variable polynomial with non-negative
    /// exponents.
    pub fn univariate_coeffs(&self) -> Option<Vec<i64>> {
        if self.nvars != 1 {
            return None;
        }
        let mut max = 0i64;
        for e in self.terms.keys() {
            if e[0] < 0 {
                return None;
            }
            max = max.max(e[0]);
        }
        let mut out = vec![0i64; (max + 1) as usize];
        for (e, c) in &self.terms {
            out[e[0] as usize] = *c;
        }
        Some(out)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if *c >= 0 { "+" } else { "-" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            let has_vars = e.iter().any(|x| *x != 0);
            if a != 1 || !has_vars {
                write!(f, "{a}")?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if self.nvars == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t{}", i + 1)?;
                }
                if *x != 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

/// (t − 1/t)^k as a one-variable Laurent polynomial.
pub fn z_power(k: usize) -> Result<LaurentPoly, LaurentError> {
    let z = LaurentPoly::var(1, 0).sub(&LaurentPoly::var_inv(1, 0))?;
    let mut acc = LaurentPoly::one(1);
    for _ in 0..k {
        acc = acc.mul(&z)?;
    }
    Ok(acc)
}

/// Evaluate a dense z-polynomial at z = t − 1/t symbolically.
pub fn conway_to_t(coeffs: &[i64]) -> Result<LaurentPoly, LaurentError> {
    let mut acc = LaurentPoly::zero(1);
    for (k, c) in coeffs.iter().enumerate() {
        if *c != 0 {
            acc = acc.add(&z_power(k)?.mul(&LaurentPoly::constant(1, *c))?)?;
        }
    }
    Ok(acc)
}

/// Complex power i^x = e^{iπx/2} for complex exponents.
pub fn i_power(x: C64) -> C64 {
    (C64::new(0.0, 1.0) * std::f64::consts::PI * x / 2.0).exp()
}

/// z = t − 1/t at a complex point.
pub fn z_at(t: C64) -> C64 {
    t - ONE / t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrip() {
        // (t1 − 1)(t1 + 1) = t1² − 1
        let t = LaurentPoly::var(2, 0);
        let one = LaurentPoly::one(2);
        let p = t.sub(&one).unwrap().mul(&t.add(&one).unwrap()).unwrap();
        let mut expect = LaurentPoly::zero(2);
        expect.add_term(vec![2, 0], 1).unwrap();
        expect.add_term(vec![0, 0], -1).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn exact_division() {
        let t = LaurentPoly::var(2, 1);
        let one = LaurentPoly::one(2);
        let d = t.sub(&one).unwrap();
        let p = d
            .mul(&LaurentPoly::monomial(2, vec![-1, 2], 3))
            .unwrap()
            .mul(&d)
            .unwrap();
        let q = p.div_exact(&d).unwrap().unwrap();
        assert_eq!(q, d.mul(&LaurentPoly::monomial(2, vec![-1, 2], 3)).unwrap());
        // not divisible
        let bad = p.add(&one).unwrap();
        assert!(bad.div_exact(&d).unwrap().is_none());
    }

    #[test]
    fn z_powers() {
        // (t − 1/t)² = t² − 2 + t^{−2}
        let z2 = z_power(2).unwrap();
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], 1).unwrap();
        expect.add_term(vec![0], -2).unwrap();
        expect.add_term(vec![-2], 1).unwrap();
        assert_eq!(z2, expect);
    }

    #[test]
    fn eval_with_negative_exponents() {
        let p = LaurentPoly::monomial(1, vec![-2], 3);
        let v = p.eval(&[C64::new(2.0, 0.0)]);
        assert!((v - C64::new(0.75, 0.0)).norm() < 1e-12);
    }
}
