//! Evaluation of sliced diagrams: the functor from colored ribbon graphs to
//! linear maps, and the renormalized evaluation of closed graphs cut open at
//! a typical arc.
//!
//! The running state is kept as a map bottom-space → current-word-space and
//! events are applied to a window of adjacent tensor factors, so the cost per
//! slice is linear in the state dimension rather than cubic.

use crate::algebra::{
    braiding, braiding_inv, dual_data, mod_dim, rep_of, twist, AlgebraError, Color,
    WeightModuleRep,
};
use crate::cg;
use crate::diagram::{
    coupon_boundary, CouponKind, DiagramError, SliceEvent, SlicedDiagram, StrandLabel,
};
use crate::linalg::{DenseMap, LinalgError};
use crate::scalar::{C64, RootData};
use thiserror::Error;

pub const DEFAULT_WIDTH_CAP: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    pub width_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { width_cap: DEFAULT_WIDTH_CAP }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cg(#[from] crate::cg::CgError),
    #[error("slice width {width} exceeds the cap {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("event {0} cannot be applied: {1}")]
    BadEvent(usize, String),
    #[error("coupon requires root r = {expected}, diagram has r = {got}")]
    CouponRoot { expected: u32, got: u32 },
    #[error("evaluation is not a scalar multiple of the identity")]
    NotScalar,
    #[error("cut arc is not in outer closure form: {0}")]
    CutShape(String),
    #[error("cut arc must carry an upward typical color, found {0}")]
    CutColor(Color),
}

#[derive(Debug, Clone)]
pub struct EvaluationResult {
    pub map: DenseMap,
    /// Present when the map is λ·id (or 1×1) within tolerance.
    pub scalar: Option<C64>,
}

/// Fold a label to the color of the object it carries.
fn object_color(label: &StrandLabel) -> Color {
    if label.up {
        label.color.clone()
    } else {
        label.color.dual()
    }
}

struct Slot {
    label: StrandLabel,
    rep: WeightModuleRep,
}

fn apply_window(
    state: &mut Vec<C64>,
    word_dims: &mut Vec<usize>,
    bottom_dim: usize,
    pos: usize,
    n_in: usize,
    out_dims: &[usize],
    matrix: &DenseMap,
) {
    let left: usize = word_dims[..pos].iter().product();
    let mid_in: usize = word_dims[pos..pos + n_in].iter().product();
    let right: usize = word_dims[pos + n_in..].iter().product();
    let mid_out: usize = out_dims.iter().product();
    debug_assert_eq!(matrix.cols, mid_in);
    debug_assert_eq!(matrix.rows, mid_out);
    let mut next = vec![C64::new(0.0, 0.0); left * mid_out * right * bottom_dim];
    let rb = right * bottom_dim;
    for l in 0..left {
        for o in 0..mid_out {
            let out_base = (l * mid_out + o) * rb;
            for i in 0..mid_in {
                let m = matrix.get(o, i);
                if m.re == 0.0 && m.im == 0.0 {
                    continue;
                }
                let in_base = (l * mid_in + i) * rb;
                for t in 0..rb {
                    next[out_base + t] += m * state[in_base + t];
                }
            }
        }
    }
    *state = next;
    word_dims.splice(pos..pos + n_in, out_dims.iter().copied());
}

/// Matrix of a registry coupon at the given root.
pub fn coupon_matrix(root: &RootData, kind: &CouponKind) -> Result<DenseMap, EngineError> {
    if root.r != 2 {
        return Err(EngineError::CouponRoot { expected: 2, got: root.r });
    }
    match kind {
        CouponKind::WIso { alpha } => Ok(cg::w_iso(root, *alpha)?),
        CouponKind::CgVertex { a, b, c } => Ok(cg::cg_vertex(root, *a, *b, *c)?),
    }
}

/// Evaluate a sliced diagram to the linear map it denotes.
pub fn evaluate(
    root: &RootData,
    d: &SlicedDiagram,
    cfg: &EngineConfig,
) -> Result<EvaluationResult, EngineError> {
    let mut slots: Vec<Slot> = Vec::new();
    for (label, _) in &d.bottom {
        let rep = rep_of(root, &object_color(label))?;
        slots.push(Slot { label: label.clone(), rep });
    }
    if slots.len() > cfg.width_cap {
        return Err(EngineError::WidthCap { width: slots.len(), cap: cfg.width_cap });
    }
    let bottom_dim: usize = slots.iter().map(|s| s.rep.dim).product();
    let mut word_dims: Vec<usize> = slots.iter().map(|s| s.rep.dim).collect();
    let mut state: Vec<C64> = DenseMap::identity(bottom_dim).data;

    for (idx, ev) in d.events.iter().enumerate() {
        match ev {
            SliceEvent::CrossPos(p) | SliceEvent::CrossNeg(p) => {
                let p = *p;
                if p + 1 >= slots.len() {
                    return Err(EngineError::BadEvent(idx, "crossing out of range".into()));
                }
                let (a, b) = (&slots[p].rep, &slots[p + 1].rep);
                let m = if matches!(ev, SliceEvent::CrossPos(_)) {
                    braiding(root, a, b)
                } else {
                    // inverse braiding as a map A⊗B → B⊗A
                    braiding_inv(root, b, a)?
                };
                let out_dims = [b.dim, a.dim];
                apply_window(&mut state, &mut word_dims, bottom_dim, p, 2, &out_dims, &m);
                slots.swap(p, p + 1);
            }
            SliceEvent::Cup { pos, label, .. } => {
                if slots.len() + 2 > cfg.width_cap {
                    return Err(EngineError::WidthCap { width: slots.len() + 2, cap: cfg.width_cap });
                }
                let folded = object_color(label);
                let (m, left_rep, right_rep) = match &folded {
                    Color::Dual(inner) => {
                        let base = rep_of(root, inner)?;
                        let dd = dual_data(root, &base)?;
                        // legs (V*, V): b'
                        (dd.coev_r, dd.dual, base)
                    }
                    _ => {
                        let base = rep_of(root, &folded)?;
                        let dd = dual_data(root, &base)?;
                        // legs (V, V*): b
                        (dd.coev, base, dd.dual)
                    }
                };
                let out_dims = [left_rep.dim, right_rep.dim];
                apply_window(&mut state, &mut word_dims, bottom_dim, *pos, 0, &out_dims, &m);
                slots.insert(*pos, Slot { label: label.flipped(), rep: right_rep });
                slots.insert(*pos, Slot { label: label.clone(), rep: left_rep });
            }
            SliceEvent::Cap(p) => {
                let p = *p;
                if p + 1 >= slots.len() {
                    return Err(EngineError::BadEvent(idx, "cap out of range".into()));
                }
                let folded = object_color(&slots[p].label);
                let m = match &folded {
                    Color::Dual(inner) => {
                        let base = rep_of(root, inner)?;
                        // legs (V*, V): d
                        dual_data(root, &base)?.ev
                    }
                    _ => {
                        let base = rep_of(root, &folded)?;
                        // legs (V, V*): d'
                        dual_data(root, &base)?.ev_r
                    }
                };
                apply_window(&mut state, &mut word_dims, bottom_dim, p, 2, &[], &m);
                slots.remove(p + 1);
                slots.remove(p);
            }
            SliceEvent::Twist { pos, positive } => {
                let p = *pos;
                if p >= slots.len() {
                    return Err(EngineError::BadEvent(idx, "twist out of range".into()));
                }
                let th = twist(root, &slots[p].rep)?;
                let m = if *positive { th } else { th.inverse()? };
                let out_dims = [slots[p].rep.dim];
                apply_window(&mut state, &mut word_dims, bottom_dim, p, 1, &out_dims, &m);
            }
            SliceEvent::Coupon { pos, kind } => {
                let (inputs, outputs) = coupon_boundary(kind);
                if pos + inputs.len() > slots.len() {
                    return Err(EngineError::BadEvent(idx, "coupon out of range".into()));
                }
                if slots.len() - inputs.len() + outputs.len() > cfg.width_cap {
                    return Err(EngineError::WidthCap {
                        width: slots.len() - inputs.len() + outputs.len(),
                        cap: cfg.width_cap,
                    });
                }
                let m = coupon_matrix(root, kind)?;
                let out_reps: Vec<WeightModuleRep> = outputs
                    .iter()
                    .map(|l| rep_of(root, &object_color(l)))
                    .collect::<Result<_, _>>()?;
                let out_dims: Vec<usize> = out_reps.iter().map(|r| r.dim).collect();
                apply_window(&mut state, &mut word_dims, bottom_dim, *pos, inputs.len(), &out_dims, &m);
                let _ = slots.splice(*pos..*pos + inputs.len(), std::iter::empty()).count();
                for (k, (label, rep)) in outputs.into_iter().zip(out_reps).enumerate() {
                    slots.insert(pos + k, Slot { label, rep });
                }
            }
        }
        if slots.len() > cfg.width_cap {
            return Err(EngineError::WidthCap { width: slots.len(), cap: cfg.width_cap });
        }
    }

    let top_dim: usize = word_dims.iter().product();
    let map = DenseMap { rows: top_dim, cols: bottom_dim, data: state };
    let scalar = if map.rows == map.cols { map.scalar_of(root).ok() } else { None };
    Ok(EvaluationResult { map, scalar })
}

/// Evaluate a closed diagram to its scalar value.
pub fn evaluate_closed(
    root: &RootData,
    d: &SlicedDiagram,
    cfg: &EngineConfig,
) -> Result<C64, EngineError> {
    if !d.bottom.is_empty() {
        return Err(EngineError::CutShape("diagram has bottom boundary".into()));
    }
    let res = evaluate(root, d, cfg)?;
    res.scalar.ok_or(EngineError::NotScalar)
}

/// Close a (1,1)-tangle by joining its boundary strand around the left.
pub fn close_tangle(d: &SlicedDiagram) -> Result<SlicedDiagram, EngineError> {
    if d.bottom.len() != 1 {
        return Err(EngineError::CutShape("tangle must have exactly one bottom strand".into()));
    }
    let (label, comp) = d.bottom[0].clone();
    let mut events = Vec::with_capacity(d.events.len() + 2);
    events.push(SliceEvent::Cup { pos: 0, label: label.flipped(), component: comp });
    events.extend(d.events.iter().map(|e| e.shifted(1)));
    events.push(SliceEvent::Cap(0));
    Ok(SlicedDiagram {
        root_r: d.root_r,
        components: d.components.clone(),
        bottom: vec![],
        events,
    })
}

/// Cut a closed diagram open at its outermost closure: the first slice must
/// be a cup at position 0 belonging to the requested component, the last a
/// cap at position 0, and nothing in between may touch position 0.
pub fn excise_outer_closure(
    d: &SlicedDiagram,
    comp: usize,
) -> Result<SlicedDiagram, EngineError> {
    if !d.bottom.is_empty() || d.events.len() < 2 {
        return Err(EngineError::CutShape("expected a closed diagram with an outer closure".into()));
    }
    let (label, cup_comp) = match &d.events[0] {
        SliceEvent::Cup { pos: 0, label, component } => (label.clone(), *component),
        _ => return Err(EngineError::CutShape("first slice is not a cup at position 0".into())),
    };
    if cup_comp != comp {
        return Err(EngineError::CutShape(format!(
            "outer closure belongs to component {}, not the requested one",
            d.components[cup_comp].name
        )));
    }
    match d.events.last() {
        Some(SliceEvent::Cap(0)) => {}
        _ => return Err(EngineError::CutShape("last slice is not a cap at position 0".into())),
    }
    let inner = &d.events[1..d.events.len() - 1];
    for (i, ev) in inner.iter().enumerate() {
        if ev.pos() == 0 {
            return Err(EngineError::CutShape(format!(
                "slice {} touches the outer closure line",
                i + 2
            )));
        }
    }
    let events: Vec<SliceEvent> = inner
        .iter()
        .map(|e| {
            let mut e = e.clone();
            match &mut e {
                SliceEvent::CrossPos(p) | SliceEvent::CrossNeg(p) | SliceEvent::Cap(p) => *p -= 1,
                SliceEvent::Cup { pos, .. }
                | SliceEvent::Twist { pos, .. }
                | SliceEvent::Coupon { pos, .. } => *pos -= 1,
            }
            e
        })
        .collect();
    Ok(SlicedDiagram {
        root_r: d.root_r,
        components: d.components.clone(),
        bottom: vec![(label.flipped(), comp)],
        events,
    })
}

/// ⟨T_e⟩: evaluate a (1,1)-tangle whose boundary is an upward typical strand
/// and extract the scalar λ with F(T_e) = λ·id.
pub fn bracket_tangle(
    root: &RootData,
    d: &SlicedDiagram,
    cfg: &EngineConfig,
) -> Result<(C64, C64), EngineError> {
    if d.bottom.len() != 1 {
        return Err(EngineError::CutShape("tangle must have exactly one bottom strand".into()));
    }
    let label = &d.bottom[0].0;
    let alpha = match (&label.color, label.up) {
        (Color::Typical(a), true) => *a,
        _ => return Err(EngineError::CutColor(label.color.clone())),
    };
    let res = evaluate(root, d, cfg)?;
    let lambda = res.scalar.ok_or(EngineError::NotScalar)?;
    Ok((lambda, mod_dim(root, alpha)?))
}

/// Modified evaluation F'(T) = d(V)·⟨T_e⟩ of a closed diagram cut at the
/// outer-closure arc of `comp`.
pub fn modified_eval(
    root: &RootData,
    d: &SlicedDiagram,
    comp: usize,
    cfg: &EngineConfig,
) -> Result<C64, EngineError> {
    let open = excise_outer_closure(d, comp)?;
    let (lambda, dim) = bracket_tangle(root, &open, cfg)?;
    Ok(dim * lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{ComponentDecl, ComponentKind};
    use crate::scalar::ONE;

    fn root2() -> RootData {
        RootData::new(2).unwrap()
    }

    fn unknot(color: Color, twists: i64) -> SlicedDiagram {
        let mut events = vec![SliceEvent::Cup {
            pos: 0,
            label: StrandLabel::new(color, false),
            component: 0,
        }];
        for _ in 0..twists.abs() {
            events.push(SliceEvent::Twist { pos: 1, positive: twists > 0 });
        }
        events.push(SliceEvent::Cap(0));
        SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "K".into(), kind: ComponentKind::Graph }],
            bottom: vec![],
            events,
        }
    }

    #[test]
    fn typical_unknot_evaluates_to_zero() {
        for r in 2..=4u32 {
            let rd = RootData::new(r).unwrap();
            let mut d = unknot(Color::typical(0.37), 0);
            d.root_r = r;
            let v = evaluate_closed(&rd, &d, &EngineConfig::default()).unwrap();
            assert!(rd.approx_zero(v), "r={r}, got {v}");
        }
    }

    #[test]
    fn periodic_unknot_evaluates_to_one() {
        for r in 2..=4u32 {
            let rd = RootData::new(r).unwrap();
            for t in [-1i64, 0, 2] {
                let mut d = unknot(Color::Periodic(t), 0);
                d.root_r = r;
                let v = evaluate_closed(&rd, &d, &EngineConfig::default()).unwrap();
                assert!(rd.approx_eq(v, ONE), "r={r} t={t}, got {v}");
            }
        }
    }

    #[test]
    fn crossing_pair_cancels() {
        let rd = root2();
        let a = Color::typical(0.51);
        let b = Color::typical(-0.73);
        let d = SlicedDiagram {
            root_r: 2,
            components: vec![
                ComponentDecl { name: "A".into(), kind: ComponentKind::Graph },
                ComponentDecl { name: "B".into(), kind: ComponentKind::Graph },
            ],
            bottom: vec![
                (StrandLabel::new(a, true), 0),
                (StrandLabel::new(b, true), 1),
            ],
            events: vec![SliceEvent::CrossPos(0), SliceEvent::CrossNeg(0)],
        };
        let res = evaluate(&rd, &d, &EngineConfig::default()).unwrap();
        assert!(res.map.residual_to(&DenseMap::identity(4)) < 1e-10);
    }

    #[test]
    fn twist_pair_cancels() {
        let rd = root2();
        let mut d = unknot(Color::typical(0.4), 0);
        d.events.insert(1, SliceEvent::Twist { pos: 1, positive: true });
        d.events.insert(2, SliceEvent::Twist { pos: 1, positive: false });
        // still the 0-framed unknot: evaluates to qdim = 0, and the linking
        // data shows no residual framing
        let info = d.trace_closed().unwrap();
        assert_eq!(info.framing(0), 0);
        let v = evaluate_closed(&rd, &d, &EngineConfig::default()).unwrap();
        assert!(rd.approx_zero(v));
    }

    #[test]
    fn zig_zag_identities_hold() {
        // probes the derived right duality: closing a strand to either side
        // of a plain line gives back the identity
        let rd = root2();
        let c = Color::typical(0.29);
        // (d'⊗id) ∘ (id⊗b'): strand, cup (V*,V) to the right, cap (V,V*)
        let d = SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "A".into(), kind: ComponentKind::Graph }],
            bottom: vec![(StrandLabel::new(c.clone(), true), 0)],
            events: vec![
                SliceEvent::Cup {
                    pos: 1,
                    label: StrandLabel::new(c.clone(), false),
                    component: 0,
                },
                SliceEvent::Cap(0),
            ],
        };
        let res = evaluate(&rd, &d, &EngineConfig::default()).unwrap();
        assert!(res.map.residual_to(&DenseMap::identity(2)) < 1e-9);
        // (d⊗id) ∘ (id⊗b): the mirror snake
        let d2 = SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "A".into(), kind: ComponentKind::Graph }],
            bottom: vec![(StrandLabel::new(c.clone(), true), 0)],
            events: vec![
                SliceEvent::Cup { pos: 0, label: StrandLabel::new(c.clone(), true), component: 0 },
                SliceEvent::Cap(1),
            ],
        };
        let res2 = evaluate(&rd, &d2, &EngineConfig::default()).unwrap();
        assert!(res2.map.residual_to(&DenseMap::identity(2)) < 1e-9);
    }

    #[test]
    fn close_and_excise_roundtrip() {
        let rd = root2();
        let c = Color::typical(0.31);
        let open = SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "A".into(), kind: ComponentKind::Graph }],
            bottom: vec![(StrandLabel::new(c.clone(), true), 0)],
            events: vec![SliceEvent::Twist { pos: 0, positive: true }],
        };
        let closed = close_tangle(&open).unwrap();
        closed.trace_closed().unwrap();
        let back = excise_outer_closure(&closed, 0).unwrap();
        let a = evaluate(&rd, &open, &EngineConfig::default()).unwrap();
        let b = evaluate(&rd, &back, &EngineConfig::default()).unwrap();
        assert!(a.map.residual_to(&b.map) < 1e-12);
    }

    #[test]
    fn modified_eval_of_unknot_is_mod_dim() {
        let rd = root2();
        let alpha = C64::new(0.5, 0.0);
        let d = unknot(Color::Typical(alpha), 0);
        let v = modified_eval(&rd, &d, 0, &EngineConfig::default()).unwrap();
        assert!(rd.approx_eq(v, mod_dim(&rd, alpha).unwrap()));
    }

    #[test]
    fn width_cap_guard() {
        let rd = root2();
        let c = Color::typical(0.4);
        let mut events = Vec::new();
        for k in 0..5 {
            events.push(SliceEvent::Cup {
                pos: 2 * k,
                label: StrandLabel::new(c.clone(), false),
                component: 0,
            });
        }
        for _ in 0..5 {
            events.push(SliceEvent::Cap(0));
        }
        let d = SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "A".into(), kind: ComponentKind::Graph }],
            bottom: vec![],
            events,
        };
        let err = evaluate(&rd, &d, &EngineConfig::default());
        assert!(matches!(err, Err(EngineError::WidthCap { .. })));
    }
}
