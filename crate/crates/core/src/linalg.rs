//! Dense complex linear maps.
//!
//! Row-major matrices at desk scale (dimensions r^w with r ≤ 5, w ≤ 8).
//! A `DenseMap` is a morphism of based 𝕂-vector spaces; `rows` is the
//! codomain dimension, `cols` the domain dimension.

use crate::scalar::{C64, RootData, ONE, ZERO};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular within tolerance")]
    Singular,
    #[error("map is not a scalar multiple of the identity")]
    NotScalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMap {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl DenseMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMap { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        DenseMap { rows: r, cols: c, data }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = entries[i];
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn scale(&self, s: C64) -> Self {
        DenseMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &DenseMap) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(DenseMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DenseMap) -> Result<Self, LinalgError> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// self ∘ other: apply `other` first. self: B→C, other: A→B.
    pub fn compose(&self, other: &DenseMap) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, first factor slow index.
    pub fn tensor(&self, other: &DenseMap) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == ZERO {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.data[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] =
                            a * other.get(i2, j2);
                    }
                }
            }
        }
        out
    }

    pub fn mat_pow(&self, n: u32) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("power of non-square map".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Gauss–Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("inverse of non-square map".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut piv = col;
            for row in col + 1..n {
                if a.get(row, col).norm() > a.get(piv, col).norm() {
                    piv = row;
                }
            }
            if a.get(piv, col).norm() < 1e-14 {
                return Err(LinalgError::Singular);
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let d = a.get(col, col);
            for j in 0..n {
                let v = a.get(col, j) / d;
                a.set(col, j, v);
                let w = inv.get(col, j) / d;
                inv.set(col, j, w);
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a.get(row, col);
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(row, j) - f * a.get(col, j);
                    a.set(row, j, v);
                    let w = inv.get(row, j) - f * inv.get(col, j);
                    inv.set(row, j, w);
                }
            }
        }
        Ok(inv)
    }

    pub fn trace(&self) -> C64 {
        let mut t = ZERO;
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn residual_to(&self, other: &DenseMap) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Extract λ with self ≈ λ·id. Uses the maximal-modulus entry and then
    /// verifies every entry, so cancellation cannot fake a scalar.
    pub fn scalar_of(&self, root: &RootData) -> Result<C64, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotScalar);
        }
        if self.rows == 0 {
            return Ok(ONE);
        }
        let mut best = (0usize, 0usize, 0.0f64);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let n = self.get(i, j).norm();
                if n > best.2 {
                    best = (i, j, n);
                }
            }
        }
        let lambda = if best.2 <= root.tol { ZERO } else { self.get(best.0, best.1) };
        if best.2 > root.tol && best.0 != best.1 {
            return Err(LinalgError::NotScalar);
        }
        let allow = root.tol * 1f64.max(lambda.norm());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { lambda } else { ZERO };
                if (self.get(i, j) - want).norm() > allow {
                    return Err(LinalgError::NotScalar);
                }
            }
        }
        Ok(lambda)
    }

    /// Quantum partial trace of factor `k` (dims per tensor factor given for
    /// domain and codomain), weighted by the pivot matrix: the closed factor
    /// must have equal dimension on both sides.
    pub fn partial_close(
        &self,
        cod_dims: &[usize],
        dom_dims: &[usize],
        k: usize,
        pivot: &DenseMap,
    ) -> Result<Self, LinalgError> {
        let check = |dims: &[usize], total: usize| dims.iter().product::<usize>() == total;
        if !check(cod_dims, self.rows) || !check(dom_dims, self.cols) {
            return Err(LinalgError::Dimension("partial_close factor dims".into()));
        }
        if k >= cod_dims.len() || k >= dom_dims.len() || cod_dims[k] != dom_dims[k] {
            return Err(LinalgError::Dimension("partial_close closed factor".into()));
        }
        let d = cod_dims[k];
        if pivot.rows != d || pivot.cols != d {
            return Err(LinalgError::Dimension("partial_close pivot".into()));
        }
        let split = |dims: &[usize]| -> (usize, usize) {
            let left: usize = dims[..k].iter().product();
            let right: usize = dims[k + 1..].iter().product();
            (left, right)
        };
        let (cl, cr) = split(cod_dims);
        let (dl, dr) = split(dom_dims);
        let mut out = Self::zeros(cl * cr, dl * dr);
        for il in 0..cl {
            for ir in 0..cr {
                for jl in 0..dl {
                    for jr in 0..dr {
                        let mut acc = ZERO;
                        for x in 0..d {
                            for y in 0..d {
                                let row = (il * d + x) * cr + ir;
                                let col = (jl * d + y) * dr + jr;
                                acc += pivot.get(x, y) * self.get(row, col);
                            }
                        }
                        out.set(il * cr + ir, jl * dr + jr, acc);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Sampler;

    fn rd() -> RootData {
        RootData::new(2).unwrap()
    }

    fn random_map(s: &mut Sampler, rows: usize, cols: usize) -> DenseMap {
        DenseMap::from_fn(rows, cols, |_, _| C64::new(s.range(-1.0, 1.0), s.range(-1.0, 1.0)))
    }

    #[test]
    fn tensor_of_identities() {
        let m = DenseMap::identity(2).tensor(&DenseMap::identity(3));
        assert_eq!(m, DenseMap::identity(6));
    }

    #[test]
    fn compose_with_identity() {
        let mut s = Sampler::new(1);
        let f = random_map(&mut s, 3, 4);
        assert_eq!(f.compose(&DenseMap::identity(4)).unwrap(), f);
        assert_eq!(DenseMap::identity(3).compose(&f).unwrap(), f);
    }

    #[test]
    fn interchange_law() {
        // (a⊗b)∘(c⊗d) = (a∘c)⊗(b∘d)
        let mut s = Sampler::new(2);
        for _ in 0..5 {
            let a = random_map(&mut s, 2, 3);
            let b = random_map(&mut s, 2, 2);
            let c = random_map(&mut s, 3, 2);
            let d = random_map(&mut s, 2, 3);
            let lhs = a.tensor(&b).compose(&c.tensor(&d)).unwrap();
            let rhs = a.compose(&c).unwrap().tensor(&b.compose(&d).unwrap());
            assert!(lhs.residual_to(&rhs) < 1e-12);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut s = Sampler::new(3);
        let f = random_map(&mut s, 5, 5);
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).unwrap().residual_to(&DenseMap::identity(5)) < 1e-10);
    }

    #[test]
    fn scalar_extraction() {
        let root = rd();
        let lam = C64::new(0.3, -0.8);
        let m = DenseMap::identity(4).scale(lam);
        assert!(root.approx_eq(m.scalar_of(&root).unwrap(), lam));
        let mut bad = m.clone();
        bad.set(0, 1, C64::new(0.1, 0.0));
        assert!(bad.scalar_of(&root).is_err());
        assert!(root.approx_zero(DenseMap::zeros(3, 3).scalar_of(&root).unwrap()));
    }

    #[test]
    fn partial_close_of_identity_gives_pivot_trace() {
        let root = rd();
        let id = DenseMap::identity(6);
        let pivot = DenseMap::from_rows(vec![
            vec![C64::new(2.0, 0.0), C64::new(0.5, 0.0)],
            vec![ZERO, C64::new(-1.0, 0.0)],
        ]);
        let closed = id.partial_close(&[3, 2], &[3, 2], 1, &pivot).unwrap();
        let lam = closed.scalar_of(&root).unwrap();
        assert!(root.approx_eq(lam, pivot.trace()));
    }
}
