//! Wirtinger presentations and the Fox-calculus Alexander polynomial.
//!
//! Generators are the over-arcs of the diagram, one relator per crossing:
//! out = over^ε · in · over^{−ε} with ε the crossing sign. Abelianizing
//! x ↦ t_{component} gives the (n−1)×n Alexander matrix after one redundant
//! relator is dropped. Deleting a column and taking the fraction-free
//! determinant yields Δ_L, divided by (t_c − 1) in the multi-component case.
//! Everything stays in exact integer Laurent arithmetic.

use super::laurent::{LaurentError, LaurentPoly};
use crate::diagram::DiagramInfo;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FoxError {
    #[error("coupons are not allowed in Wirtinger input")]
    Coupons,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("degenerate presentation: {0}")]
    Degenerate(String),
}

/// Wirtinger data: one generator per arc, one relator per crossing.
#[derive(Debug, Clone)]
pub struct WirtingerPresentation {
    pub generators: usize,
    /// component of each generator
    pub gen_comp: Vec<usize>,
    /// relator words: (generator, ±1) letters
    pub relators: Vec<Vec<(usize, i8)>>,
    pub ncomps: usize,
    /// true when the underlying 4-valent diagram is connected (free-loop
    /// pieces and crossing-disjoint parts make it split)
    pub connected: bool,
}

/// Extract the Wirtinger presentation of a closed link diagram.
pub fn wirtinger(info: &DiagramInfo) -> Result<WirtingerPresentation, FoxError> {
    if info.has_coupons {
        return Err(FoxError::Coupons);
    }
    let ncomps = info.twists.len();
    // arcs: merge skein edges across the over strand of every crossing
    let mut arc_of: Vec<usize> = (0..info.edge_count).collect();
    fn find(arc_of: &mut Vec<usize>, mut x: usize) -> usize {
        while arc_of[x] != x {
            arc_of[x] = arc_of[arc_of[x]];
            x = arc_of[x];
        }
        x
    }
    for c in &info.crossings {
        let a = find(&mut arc_of, c.over_in);
        let b = find(&mut arc_of, c.over_out);
        arc_of[a] = b;
    }
    // generators = arc classes that actually occur on the link
    let mut live: BTreeMap<usize, usize> = BTreeMap::new();
    let mut gen_comp = Vec::new();
    let mut used = vec![false; info.edge_count];
    for c in &info.crossings {
        for e in [c.over_in, c.over_out, c.under_in, c.under_out] {
            used[e] = true;
        }
    }
    for e in 0..info.edge_count {
        if !used[e] {
            continue;
        }
        let root = find(&mut arc_of, e);
        live.entry(root).or_insert_with(|| {
            gen_comp.push(info.edge_comp[e]);
            gen_comp.len() - 1
        });
    }
    // a crossing-free component circle contributes one free generator
    let mut free_generators = 0usize;
    for (comp, n) in info.free_loops.iter().enumerate() {
        for _ in 0..*n {
            gen_comp.push(comp);
            free_generators += 1;
        }
    }
    let gen_of = |arc_of: &mut Vec<usize>, live: &BTreeMap<usize, usize>, e: usize| -> usize {
        live[&find(arc_of, e)]
    };
    let mut relators = Vec::new();
    for c in &info.crossings {
        let o = gen_of(&mut arc_of, &live, c.over_in);
        let xin = gen_of(&mut arc_of, &live, c.under_in);
        let xout = gen_of(&mut arc_of, &live, c.under_out);
        let s = c.sign;
        // out = o^s · in · o^{−s}  ⇒  relator o^s in o^{−s} out^{−1}
        relators.push(vec![(o, s), (xin, 1), (o, -s), (xout, -1)]);
    }
    // connectivity of the 4-valent graph over link components
    let mut comp_join: Vec<usize> = (0..ncomps).collect();
    for c in &info.crossings {
        let a = find(&mut comp_join, c.over_comp);
        let b = find(&mut comp_join, c.under_comp);
        comp_join[a] = b;
    }
    let mut roots: Vec<usize> = (0..ncomps).map(|c| find(&mut comp_join, c)).collect();
    roots.sort_unstable();
    roots.dedup();
    let connected = ncomps <= 1 || roots.len() == 1;
    let _ = free_generators;
    Ok(WirtingerPresentation {
        generators: gen_comp.len(),
        gen_comp,
        relators,
        ncomps,
        connected,
    })
}

/// Abelianized Fox derivative ∂w/∂x_g with x ↦ t_{comp}.
fn fox_derivative(
    p: &WirtingerPresentation,
    word: &[(usize, i8)],
    g: usize,
) -> Result<LaurentPoly, FoxError> {
    let m = p.ncomps;
    let mut deriv = LaurentPoly::zero(m);
    let mut prefix = vec![0i64; m]; // exponent vector of the running prefix
    for &(x, e) in word {
        let comp = p.gen_comp[x];
        if e > 0 {
            if x == g {
                deriv.add_term(prefix.clone(), 1)?;
            }
            prefix[comp] += 1;
        } else {
            prefix[comp] -= 1;
            if x == g {
                deriv.add_term(prefix.clone(), -1)?;
            }
        }
    }
    Ok(deriv)
}

/// Fraction-free (Bareiss) determinant over ℤ[t^±]. Rows are premultiplied
/// by monomials to clear negative exponents; the result is only used up to
/// monomial units.
fn det_bareiss(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<LaurentPoly, FoxError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one(nvars));
    }
    for row in m.iter_mut() {
        let mut mins = vec![0i64; nvars];
        for p in row.iter() {
            for e in p.terms.keys() {
                for (k, v) in e.iter().enumerate() {
                    mins[k] = mins[k].min(*v);
                }
            }
        }
        let shift: Vec<i64> = mins.iter().map(|x| -x).collect();
        if shift.iter().any(|x| *x != 0) {
            for p in row.iter_mut() {
                *p = p.mul_monomial(&shift, 1)?;
            }
        }
    }
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(LaurentPoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                let q = num
                    .div_exact(&prev)?
                    .ok_or_else(|| FoxError::Degenerate("Bareiss division failed".into()))?;
                m[i][j] = q;
            }
        }
        for i in k + 1..n {
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

/// Alexander polynomial of the presented link, up to ±monomial units.
/// Knots: determinant of the deleted-column Alexander matrix; links with
/// m ≥ 2 components: that determinant divided by (t_c − 1).
pub fn fox_alexander(p: &WirtingerPresentation) -> Result<LaurentPoly, FoxError> {
    let m = p.ncomps;
    if !p.connected {
        return Ok(LaurentPoly::zero(m));
    }
    let n = p.generators;
    if n == 0 {
        return Err(FoxError::Degenerate("no generators".into()));
    }
    if p.relators.is_empty() {
        // unknot with no crossings
        if n == 1 {
            return Ok(LaurentPoly::one(m));
        }
        return Ok(LaurentPoly::zero(m));
    }
    if p.relators.len() + 1 < n {
        return Ok(LaurentPoly::zero(m));
    }
    // full matrix, drop the last relator (redundant for connected diagrams)
    // and the column of generator 0
    let rows = n - 1;
    if p.relators.len() < rows {
        return Err(FoxError::Degenerate("too few relators".into()));
    }
    let mut matrix: Vec<Vec<LaurentPoly>> = Vec::with_capacity(rows);
    for rel in p.relators.iter().take(rows) {
        let mut row = Vec::with_capacity(n - 1);
        for g in 1..n {
            row.push(fox_derivative(p, rel, g)?);
        }
        matrix.push(row);
    }
    let det = det_bareiss(matrix, m)?;
    if m == 1 {
        return Ok(det);
    }
    // divide by (t_{c0} − 1)
    let c0 = p.gen_comp[0];
    let divisor = LaurentPoly::var(m, c0).sub(&LaurentPoly::one(m))?;
    let q = det
        .div_exact(&divisor)?
        .ok_or_else(|| FoxError::Degenerate("first-column division failed".into()))?;
    Ok(q)
}
