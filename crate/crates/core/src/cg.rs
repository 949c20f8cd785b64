//! r = 2 Clebsch–Gordan vertex machinery: the trivalent vertex tensor
//! 𝕜 → V_α ⊗ V_β ⊗ V_γ for admissible triples (α+β+γ = ±1, colors not odd
//! integers) and the isomorphism w_α : V_α → V_{−α}^*.
//!
//! The displayed coefficients are written in the basis
//! {v_0, v_1 = (i^{(α+1)/2}/[α+1]) F v_0}; this module converts them to the
//! plain F-basis used by the module representations. The third tensor index
//! of the display is complementary (h ↦ 1−h) to the basis index; the
//! equivariance suite pins this reading.

use crate::linalg::DenseMap;
use crate::scalar::{C64, ONE, RootData, ScalarError, ZERO};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CgError {
    #[error("vertex machinery is specific to r = 2, got r = {0}")]
    WrongRoot(u32),
    #[error("colors must avoid odd integers, got {0}")]
    OddInteger(C64),
    #[error("inadmissible color triple: {0} + {1} + {2} must be ±1")]
    Inadmissible(C64, C64, C64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn check_r2(root: &RootData) -> Result<(), CgError> {
    if root.r != 2 {
        return Err(CgError::WrongRoot(root.r));
    }
    Ok(())
}

fn check_not_odd(root: &RootData, x: C64) -> Result<(), CgError> {
    if let Some(n) = root.as_int(x) {
        if n.rem_euclid(2) == 1 {
            return Err(CgError::OddInteger(x));
        }
    }
    Ok(())
}

/// Basis rescaling v_j(display) = s_j(α)·v_j(F-basis); s_0 = 1.
fn s_factor(root: &RootData, alpha: C64, j: usize) -> C64 {
    if j == 0 {
        ONE
    } else {
        root.q_power((alpha + ONE) / 2.0) / root.q_int(alpha + ONE)
    }
}

/// w_α : V_α → V_{−α}^*, v_j ↦ i^{−((α+1)/2 − j)} φ^{1−j}, rescaled to the
/// F-bases on both sides. 2×2 at r = 2.
pub fn w_iso(root: &RootData, alpha: C64) -> Result<DenseMap, CgError> {
    check_r2(root)?;
    check_not_odd(root, alpha)?;
    let mut m = DenseMap::zeros(2, 2);
    for j in 0..2usize {
        let jj = C64::new(j as f64, 0.0);
        let coeff = root.q_power(-((alpha + ONE) / 2.0 - jj))
            / (s_factor(root, alpha, j) * s_factor(root, -alpha, 1 - j));
        m.set(1 - j, j, coeff);
    }
    Ok(m)
}

/// The summation constraint of the coefficient display:
/// 2(j+k−h) = α+β+γ+1 with indices in {0,1}.
pub fn vertex_support(root: &RootData, a: C64, b: C64, c: C64) -> Result<Vec<(usize, usize, usize)>, CgError> {
    let s = a + b + c;
    let rhs = s + ONE;
    let mut out = Vec::new();
    for j in 0..2usize {
        for k in 0..2usize {
            for h in 0..2usize {
                let lhs = C64::new(2.0 * (j as f64 + k as f64 - h as f64), 0.0);
                if root.approx_eq(lhs, rhs) {
                    out.push((j, k, h));
                }
            }
        }
    }
    Ok(out)
}

/// Coefficient C^{α,β,γ}_{j,k,h} of the r = 2 vertex display.
pub fn vertex_coefficient(
    root: &RootData,
    a: C64,
    b: C64,
    c: C64,
    j: usize,
    k: usize,
    h: usize,
) -> Result<C64, CgError> {
    let (jj, kk, hh) =
        (C64::new(j as f64, 0.0), C64::new(k as f64, 0.0), C64::new(h as f64, 0.0));
    let sign_kh = if (k as i64 - h as i64).rem_euclid(2) == 0 { ONE } else { -ONE };
    let phase = root.q_power(
        (b * (kk - ONE) - a * (jj + ONE)
            + C64::new(2.0 * (k as f64 + h as f64 - j as f64 - 1.0), 0.0)
            + C64::new((j * j) as f64 - (k * k) as f64, 0.0))
            / 2.0,
    );
    let b1 = root.q_binom_pair(ONE - c, ONE - c - hh)?;
    if b1.norm() < root.tol {
        return Err(CgError::OddInteger(c));
    }
    let b2 = root.q_binom_pair(ONE - c, (a + b - c + ONE) / 2.0)?;
    let mut total = ZERO;
    for t in 0..=h {
        let tt = C64::new(t as f64, 0.0);
        let s_idx = h - t;
        let ss = C64::new(s_idx as f64, 0.0);
        let sign_t = if t % 2 == 0 { ONE } else { -ONE };
        let inner_phase =
            root.q_power((C64::new(2.0 * t as f64, 0.0) - hh) * (C64::new(2.0, 0.0) - c - hh) / 2.0);
        let f1 = root.q_binom((a + b + c + ONE) / 2.0, j as i64 - t as i64);
        let f2 = root.q_binom_pair(a - jj + tt + ONE, a - jj + ONE)?;
        let f3 = root.q_binom_pair(b - kk + ss + ONE, b - kk + ONE)?;
        total += sign_t * inner_phase * f1 * f2 * f3;
    }
    Ok(sign_kh * phase / b1 * b2 * total)
}

/// Vertex tensor 𝕜 → V_a ⊗ V_b ⊗ V_c as an 8×1 map in the F-bases.
pub fn cg_vertex(root: &RootData, a: C64, b: C64, c: C64) -> Result<DenseMap, CgError> {
    check_r2(root)?;
    for x in [a, b, c] {
        check_not_odd(root, x)?;
    }
    let s = a + b + c;
    if !(root.approx_eq(s, ONE) || root.approx_eq(s, -ONE)) {
        return Err(CgError::Inadmissible(a, b, c));
    }
    let mut m = DenseMap::zeros(8, 1);
    for (j, k, h) in vertex_support(root, a, b, c)? {
        let coeff = vertex_coefficient(root, a, b, c, j, k, h)?;
        // display index h addresses the basis vector v_{1−h} of the third
        // factor; rescale all three factors to the F-basis
        let m_idx = 1 - h;
        let scaled = coeff
            * s_factor(root, a, j)
            * s_factor(root, b, k)
            * s_factor(root, c, m_idx);
        m.set((j * 2 + k) * 2 + m_idx, 0, scaled);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rep_of, tensor_module, typical_module, Color};
    use crate::linalg::DenseMap;
    use crate::scalar::Sampler;

    fn root2() -> RootData {
        RootData::new(2).unwrap()
    }

    /// Admissible triple with a+b+c = sign.
    fn admissible(s: &mut Sampler, sign: f64) -> (C64, C64, C64) {
        let a = C64::new(s.generic_real(), 0.0);
        let b = C64::new(s.generic_real(), 0.0);
        let c = C64::new(sign, 0.0) - a - b;
        (a, b, c)
    }

    #[test]
    fn support_matches_constraint() {
        let rd = root2();
        let mut s = Sampler::new(23);
        for sign in [1.0, -1.0] {
            let (a, b, c) = admissible(&mut s, sign);
            let sup = vertex_support(&rd, a, b, c).unwrap();
            assert_eq!(sup.len(), 3, "three summands at r=2");
            let v = cg_vertex(&rd, a, b, c).unwrap();
            // entries off the support vanish
            let idx: Vec<usize> = sup.iter().map(|(j, k, h)| (j * 2 + k) * 2 + (1 - h)).collect();
            for i in 0..8 {
                if !idx.contains(&i) {
                    assert!(v.get(i, 0).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn vertex_is_a_module_morphism() {
        let rd = root2();
        let mut s = Sampler::new(31);
        for sign in [1.0, -1.0] {
            for _ in 0..5 {
                let (a, b, c) = admissible(&mut s, sign);
                let va = typical_module(&rd, a).unwrap();
                let vb = typical_module(&rd, b).unwrap();
                let vc = typical_module(&rd, c).unwrap();
                let triple = tensor_module(&rd, &tensor_module(&rd, &va, &vb), &vc);
                let w = cg_vertex(&rd, a, b, c).unwrap();
                for (name, act) in
                    [("E", &triple.act_e), ("F", &triple.act_f), ("H", &triple.act_h)]
                {
                    let img = act.compose(&w).unwrap();
                    assert!(
                        img.max_norm() < 1e-8 * 1f64.max(w.max_norm()),
                        "generator {name} fails equivariance at ({a},{b},{c}): {}",
                        img.max_norm()
                    );
                }
                // K acts trivially on the image
                let img_k = triple.act_k.compose(&w).unwrap();
                assert!(img_k.residual_to(&w) < 1e-8 * 1f64.max(w.max_norm()));
            }
        }
    }

    #[test]
    fn w_iso_intertwines_generators() {
        let rd = root2();
        let mut s = Sampler::new(41);
        for _ in 0..10 {
            let a = C64::new(s.generic_real(), 0.0);
            let va = typical_module(&rd, a).unwrap();
            let dual = rep_of(&rd, &Color::Typical(-a).dual()).unwrap();
            let w = w_iso(&rd, a).unwrap();
            for (name, src, dst) in [
                ("E", &va.act_e, &dual.act_e),
                ("F", &va.act_f, &dual.act_f),
                ("H", &va.act_h, &dual.act_h),
                ("K", &va.act_k, &dual.act_k),
            ] {
                let lhs = w.compose(src).unwrap();
                let rhs = dst.compose(&w).unwrap();
                assert!(
                    lhs.residual_to(&rhs) < 1e-8 * 1f64.max(w.max_norm()),
                    "w_α fails to intertwine {name} at α={a}"
                );
            }
            // genuine isomorphism
            assert!(w.inverse().is_ok());
        }
    }

    #[test]
    fn inadmissible_triples_are_rejected() {
        let rd = root2();
        assert!(cg_vertex(&rd, C64::new(0.5, 0.0), C64::new(0.25, 0.0), C64::new(0.5, 0.0)).is_err());
        assert!(cg_vertex(&rd, C64::new(1.0, 0.0), C64::new(0.5, 0.0), C64::new(-0.5, 0.0)).is_err());
        let _ = DenseMap::identity(1);
    }
}
