//! The Alexander–Conway function ∇_L: unit normalization of the Fox
//! polynomial and numeric evaluation.
//!
//! The Fox output is defined up to ±t^a. Substituting t_i ↦ t_i² and
//! recentering kills the monomial: the inversion symmetry
//! ∇(1/t) = (−1)^m ∇(t) forces the exponent shift. The leftover sign is
//! pinned against the skein oracle through z = t − 1/t; for knots the
//! anchor is Δ(1) = 1, and the skein comparison is still checked exactly.
//! Knots carry the divisor (t − 1/t) symbolically: ∇_K = Δ_K(t²)/(t − 1/t).

use super::laurent::{conway_to_t, LaurentError, LaurentPoly};
use crate::scalar::C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NablaError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("polynomial is not inversion-symmetric up to units")]
    NotSymmetric,
    #[error("inversion symmetry has sign {got}, expected (−1)^m = {want}")]
    WrongSign { got: i64, want: i64 },
    #[error("skein anchor mismatch: fox side {fox}, conway side {conway}")]
    AnchorMismatch { fox: String, conway: String },
    #[error("knot normalization needs Δ(1) = ±1, got {0}")]
    BadAugmentation(i64),
    #[error("evaluation at a zero of the divisor t − 1/t")]
    DivisorZero,
}

/// ∇_L as a Laurent polynomial over a tracked divisor power:
/// ∇ = poly / (t_1 − t_1^{−1})^divisor_power (power 1 for knots, 0 else).
#[derive(Debug, Clone, PartialEq)]
pub struct Nabla {
    pub nvars: usize,
    pub poly: LaurentPoly,
    pub divisor_power: u32,
}

impl std::fmt::Display for Nabla {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.divisor_power == 0 {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "({}) / (t - t^-1)", self.poly)
        }
    }
}

/// Decompose q(1/t) = ε·t^v·q(t); error when no (ε, v) exists.
fn reflection_data(q: &LaurentPoly) -> Result<(i64, Vec<i64>), NablaError> {
    let refl = q.reflected();
    let (le_r, c_r) = refl.lead().expect("nonzero");
    let (le_q, c_q) = q.lead().expect("nonzero");
    let v: Vec<i64> = le_r.iter().zip(le_q).map(|(a, b)| a - b).collect();
    for eps in [1i64, -1] {
        if c_r == eps * c_q {
            let shifted = q.mul_monomial(&v, eps)?;
            if shifted == refl {
                return Ok((eps, v));
            }
        }
    }
    Err(NablaError::NotSymmetric)
}

/// Normalize a Fox Alexander polynomial to the Conway function, anchored by
/// the skein-oracle Conway polynomial of the same link.
pub fn normalize_conway(
    delta: &LaurentPoly,
    conway: &[i64],
) -> Result<Nabla, NablaError> {
    let m = delta.nvars;
    let divisor_power = if m == 1 { 1 } else { 0 };
    if delta.is_zero() {
        if !conway.is_empty() {
            return Err(NablaError::AnchorMismatch {
                fox: "0".into(),
                conway: format!("{conway:?}"),
            });
        }
        return Ok(Nabla { nvars: m, poly: LaurentPoly::zero(m), divisor_power });
    }
    let q0 = delta.squared_vars();
    let (eps, v) = reflection_data(&q0)?;
    let want = if m % 2 == 0 { 1 } else { -1 };
    // recenter: Q = t^{v/2}·q0 satisfies Q(1/t) = ε Q(t)
    let half: Vec<i64> = v.iter().map(|x| x / 2).collect();
    if half.iter().zip(&v).any(|(h, x)| 2 * h != *x) {
        return Err(NablaError::NotSymmetric);
    }
    let mut q = q0.mul_monomial(&half, 1)?;
    if m == 1 {
        // knots: symmetric with ε = +1, signed so Δ(1) = 1; the divisor
        // (t − 1/t) then supplies the (−1)^1 symmetry of ∇
        if eps != 1 {
            return Err(NablaError::WrongSign { got: eps, want: 1 });
        }
        let aug = q.coeff_sum();
        if aug.abs() != 1 {
            return Err(NablaError::BadAugmentation(aug));
        }
        if aug < 0 {
            q = q.neg();
        }
        // exact skein cross-check: C(t − 1/t) = Δ(t²) centered
        let rhs = conway_to_t(conway)?;
        if rhs != q {
            return Err(NablaError::AnchorMismatch {
                fox: q.to_string(),
                conway: rhs.to_string(),
            });
        }
        return Ok(Nabla { nvars: 1, poly: q, divisor_power: 1 });
    }
    if eps != want {
        return Err(NablaError::WrongSign { got: eps, want });
    }
    // sign from the one-variable specialization:
    // (t − 1/t)·∇(t,…,t) = C(t − 1/t)
    let spec = q.specialize_diagonal()?;
    let z = LaurentPoly::var(1, 0).sub(&LaurentPoly::var_inv(1, 0))?;
    let lhs = z.mul(&spec)?;
    let rhs = conway_to_t(conway)?;
    if lhs == rhs {
        Ok(Nabla { nvars: m, poly: q, divisor_power: 0 })
    } else if lhs.neg() == rhs {
        Ok(Nabla { nvars: m, poly: q.neg(), divisor_power: 0 })
    } else {
        Err(NablaError::AnchorMismatch { fox: lhs.to_string(), conway: rhs.to_string() })
    }
}

/// Evaluate ∇ at complex points, including the tracked divisor.
pub fn evaluate_nabla(n: &Nabla, points: &[C64], tol: f64) -> Result<C64, NablaError> {
    assert_eq!(points.len(), n.nvars);
    let mut value = n.poly.eval(points);
    for _ in 0..n.divisor_power {
        let d = points[0] - C64::new(1.0, 0.0) / points[0];
        if d.norm() <= tol {
            return Err(NablaError::DivisorZero);
        }
        value /= d;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::fox::{fox_alexander, wirtinger};
    use crate::alexander::skein::conway;
    use crate::algebra::Color;
    use crate::builders::{chain_link, hopf, unknot, Assignment, BraidSpec, ColorSlot, CompSpec, Plan};
    use crate::diagram::ComponentKind;
    use crate::scalar::ONE;

    fn typ(x: f64) -> Color {
        Color::typical(x)
    }

    fn nabla_of(plan: &Plan, cut: &str) -> Nabla {
        let d = plan.compile_closed(2, &Assignment::default(), cut).unwrap();
        let info = d.trace_closed().unwrap();
        let delta = fox_alexander(&wirtinger(&info).unwrap()).unwrap();
        let c = conway(&info).unwrap();
        normalize_conway(&delta, &c).unwrap()
    }

    #[test]
    fn unknot_nabla() {
        let plan = unknot("K", ColorSlot::Fixed(typ(0.5)), ComponentKind::Graph, 0);
        let n = nabla_of(&plan, "K");
        assert_eq!(n.divisor_power, 1);
        assert_eq!(n.poly, LaurentPoly::one(1));
        // 1/(i^{3/2} − i^{−3/2})
        let t = crate::alexander::laurent::i_power(C64::new(1.5, 0.0));
        let v = evaluate_nabla(&n, &[t], 1e-12).unwrap();
        assert!((v - ONE / (t - ONE / t)).norm() < 1e-12);
    }

    #[test]
    fn trefoil_nabla() {
        let plan = Plan::Braid(BraidSpec {
            strands: 2,
            word: vec![1, 1, 1],
            comps: vec![CompSpec::graph("K", typ(0.5))],
            framings: vec![3],
        });
        let n = nabla_of(&plan, "K");
        // (t² − 1 + t^{−2}) / (t − t^{−1})
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], 1).unwrap();
        expect.add_term(vec![0], -1).unwrap();
        expect.add_term(vec![-2], 1).unwrap();
        assert_eq!(n.poly, expect);
        assert_eq!(n.divisor_power, 1);
    }

    #[test]
    fn hopf_nabla_signs() {
        let pos = hopf(CompSpec::graph("A", typ(0.5)), CompSpec::graph("B", typ(0.5)), 1);
        let n = nabla_of(&pos, "A");
        assert_eq!(n.poly, LaurentPoly::one(2));
        let negp = hopf(CompSpec::graph("A", typ(0.5)), CompSpec::graph("B", typ(0.5)), -1);
        let n2 = nabla_of(&negp, "A");
        assert_eq!(n2.poly, LaurentPoly::one(2).neg());
    }

    #[test]
    fn figure_eight_nabla() {
        let plan = Plan::Braid(BraidSpec {
            strands: 3,
            word: vec![1, -2, 1, -2],
            comps: vec![CompSpec::graph("K", typ(0.5))],
            framings: vec![0],
        });
        let n = nabla_of(&plan, "K");
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], -1).unwrap();
        expect.add_term(vec![0], 3).unwrap();
        expect.add_term(vec![-2], -1).unwrap();
        assert_eq!(n.poly, expect);
    }

    #[test]
    fn chain3_nabla() {
        let comps = vec![
            CompSpec::graph("a", typ(0.5)),
            CompSpec::graph("b", typ(0.5)),
            CompSpec::graph("c", typ(0.5)),
        ];
        let plan = chain_link(comps, vec![0, 0, 0]);
        let n = nabla_of(&plan, "a");
        // t₂ − t₂^{−1}
        let mut expect = LaurentPoly::zero(3);
        expect.add_term(vec![0, 1, 0], 1).unwrap();
        expect.add_term(vec![0, -1, 0], -1).unwrap();
        assert_eq!(n.poly, expect);
    }

    #[test]
    fn symmetry_of_normalized_output() {
        let comps = vec![
            CompSpec::graph("a", typ(0.5)),
            CompSpec::graph("b", typ(0.5)),
        ];
        let plan = chain_link(comps, vec![2, -1]);
        let n = nabla_of(&plan, "a");
        let (eps, v) = super::reflection_data(&n.poly).unwrap();
        assert_eq!(eps, 1);
        assert!(v.iter().all(|x| *x == 0));
    }
}
