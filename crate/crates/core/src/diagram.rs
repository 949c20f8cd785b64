//! Morse-sliced colored ribbon graphs.
//!
//! A diagram is a bottom boundary word plus an ordered list of elementary
//! events, each acting at a strand position: crossings, cups, caps, framing
//! twists and coupons. Reading is bottom to top. Orientation lives on the
//! labels: `(c, up)` carries the module of `c`, `(c, down)` its dual.
//!
//! `trace` walks the slices once and produces everything the rest of the
//! crate needs: component identification, crossing records with signs,
//! per-component writhe and twists, the linking matrix, and the oriented
//! edge structure consumed by the Alexander side.

use crate::algebra::Color;
use crate::scalar::{C64, RootData};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct StrandLabel {
    pub color: Color,
    pub up: bool,
}

impl StrandLabel {
    pub fn new(color: Color, up: bool) -> Self {
        StrandLabel { color, up }
    }

    pub fn flipped(&self) -> Self {
        StrandLabel { color: self.color.clone(), up: !self.up }
    }
}

/// Registry of coupon morphisms the engine knows how to realize.
#[derive(Debug, Clone, PartialEq)]
pub enum CouponKind {
    /// w_α : V_α → V_{−α}^* (r = 2). One input (typ α, up), one output
    /// (typ −α, down).
    WIso { alpha: C64 },
    /// Clebsch–Gordan vertex 𝕜 → V_a ⊗ V_b ⊗ V_c (r = 2). No inputs, three
    /// upward outputs.
    CgVertex { a: C64, b: C64, c: C64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SliceEvent {
    /// Braiding of positions (pos, pos+1); left strand passes over.
    CrossPos(usize),
    /// Inverse braiding; left strand passes under.
    CrossNeg(usize),
    /// Birth of a pair at `pos`; `label` is the left leg, the right leg is
    /// its orientation flip. `component` indexes the component table.
    Cup { pos: usize, label: StrandLabel, component: usize },
    /// Death of the pair at (pos, pos+1); colors must match, orientations
    /// must be opposite.
    Cap(usize),
    /// Framing twist ϑ^{±1} on the strand at `pos`.
    Twist { pos: usize, positive: bool },
    Coupon { pos: usize, kind: CouponKind },
}

impl SliceEvent {
    pub fn shifted(&self, by: usize) -> SliceEvent {
        let mut e = self.clone();
        match &mut e {
            SliceEvent::CrossPos(p) | SliceEvent::CrossNeg(p) | SliceEvent::Cap(p) => *p += by,
            SliceEvent::Cup { pos, .. }
            | SliceEvent::Twist { pos, .. }
            | SliceEvent::Coupon { pos, .. } => *pos += by,
        }
        e
    }

    pub fn pos(&self) -> usize {
        match self {
            SliceEvent::CrossPos(p) | SliceEvent::CrossNeg(p) | SliceEvent::Cap(p) => *p,
            SliceEvent::Cup { pos, .. }
            | SliceEvent::Twist { pos, .. }
            | SliceEvent::Coupon { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Surgery component with its declared integer framing.
    Surgery { framing: i64 },
    /// Part of the embedded graph T.
    Graph,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecl {
    pub name: String,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone)]
pub struct SlicedDiagram {
    pub root_r: u32,
    pub components: Vec<ComponentDecl>,
    /// Bottom boundary labels with their component.
    pub bottom: Vec<(StrandLabel, usize)>,
    pub events: Vec<SliceEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Defect {
    /// Event index, or `None` for diagram-level defects.
    pub at: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.at {
            Some(i) => write!(f, "slice {}: {}", i + 1, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid diagram: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
pub struct DiagramError(pub Vec<Defect>);

/// One crossing, with oriented sign and the skein-level edge ids of its four
/// legs (edges are maximal segments between crossing passages).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRec {
    pub sign: i8,
    pub over_comp: usize,
    pub under_comp: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// Result of a full trace of the diagram.
#[derive(Debug, Clone)]
pub struct DiagramInfo {
    pub top: Vec<(StrandLabel, usize)>,
    pub max_width: usize,
    pub crossings: Vec<CrossingRec>,
    /// Σ twists per component (signed).
    pub twists: Vec<i64>,
    /// Σ self-crossing signs per component.
    pub self_writhe: Vec<i64>,
    /// Off-diagonal: linking numbers; diagonal: drawn framing
    /// (self-writhe + twists).
    pub linking: Vec<Vec<i64>>,
    pub edge_count: usize,
    pub edge_comp: Vec<usize>,
    /// Closed crossing-free circles per component.
    pub free_loops: Vec<usize>,
    /// Color seen on each component (duals folded to the base color).
    pub comp_color: Vec<Option<Color>>,
    pub has_coupons: bool,
}

impl DiagramInfo {
    pub fn framing(&self, comp: usize) -> i64 {
        self.self_writhe[comp] + self.twists[comp]
    }
}

struct Strand {
    label: StrandLabel,
    comp: usize,
    /// Current skein edge id carried by this strand position.
    edge: usize,
}

impl SlicedDiagram {
    /// Validate wiring and labels; collects defects rather than aborting.
    pub fn validate(&self, root: &RootData) -> Vec<Defect> {
        match self.trace_inner(root, true) {
            Ok((_, defects)) => defects,
            Err(defects) => defects,
        }
    }

    pub fn trace(&self) -> Result<DiagramInfo, DiagramError> {
        let root = RootData::new(self.root_r.max(2)).expect("r >= 2");
        match self.trace_inner(&root, false) {
            Ok((info, defects)) if defects.is_empty() => Ok(info),
            Ok((_, defects)) | Err(defects) => Err(DiagramError(defects)),
        }
    }

    /// Expect a closed diagram (empty boundary after a defect-free trace).
    pub fn trace_closed(&self) -> Result<DiagramInfo, DiagramError> {
        let info = self.trace()?;
        if !self.bottom.is_empty() || !info.top.is_empty() {
            return Err(DiagramError(vec![Defect {
                at: None,
                message: "open wiring: diagram has boundary strands".into(),
            }]));
        }
        Ok(info)
    }

    /// The walk. With `lenient` set, label mismatches are recorded and the
    /// walk continues; structural breakage aborts either way.
    fn trace_inner(
        &self,
        root: &RootData,
        lenient: bool,
    ) -> Result<(DiagramInfo, Vec<Defect>), Vec<Defect>> {
        let nc = self.components.len();
        let mut defects: Vec<Defect> = Vec::new();
        let mut strands: Vec<Strand> = Vec::new();
        let mut edge_comp: Vec<usize> = Vec::new();
        let mut edge_seen_crossing: Vec<bool> = Vec::new();
        let mut comp_color: Vec<Option<Color>> = vec![None; nc];

        fn note_color(
            components: &[ComponentDecl],
            comp_color: &mut [Option<Color>],
            root: &RootData,
            comp: usize,
            color: &Color,
            defects: &mut Vec<Defect>,
            at: Option<usize>,
        ) {
            let base = color.base().clone();
            match &comp_color[comp] {
                None => comp_color[comp] = Some(base),
                Some(c) => {
                    if !c.approx_eq(&base, root) {
                        defects.push(Defect {
                            at,
                            message: format!(
                                "label mismatch on component {}: {} vs {}",
                                components[comp].name, c, base
                            ),
                        });
                    }
                }
            }
        }

        for (label, comp) in &self.bottom {
            if *comp >= nc {
                return Err(vec![Defect {
                    at: None,
                    message: "bottom label references unknown component".into(),
                }]);
            }
            let edge = edge_comp.len();
            edge_comp.push(*comp);
            edge_seen_crossing.push(false);
            note_color(&self.components, &mut comp_color, root, *comp, &label.color, &mut defects, None);
            strands.push(Strand { label: label.clone(), comp: *comp, edge });
        }

        let mut crossings: Vec<CrossingRec> = Vec::new();
        let mut twists = vec![0i64; nc];
        let mut self_writhe = vec![0i64; nc];
        let mut cross_sum = vec![vec![0i64; nc]; nc];
        let mut free_loops = vec![0usize; nc];
        let mut max_width = strands.len();
        let mut has_coupons = false;

        macro_rules! bail {
            ($at:expr, $msg:expr) => {{
                defects.push(Defect { at: Some($at), message: $msg });
                return Err(defects);
            }};
        }

        for (idx, ev) in self.events.iter().enumerate() {
            match ev {
                SliceEvent::CrossPos(p) | SliceEvent::CrossNeg(p) => {
                    if p + 1 >= strands.len() {
                        bail!(idx, format!("crossing at position {p} needs two strands, width is {}", strands.len()));
                    }
                    let base_sign: i8 = if matches!(ev, SliceEvent::CrossPos(_)) { 1 } else { -1 };
                    let or_l = if strands[*p].label.up { 1i8 } else { -1 };
                    let or_r = if strands[p + 1].label.up { 1i8 } else { -1 };
                    let sign = base_sign * or_l * or_r;
                    let (over_idx, under_idx) = if base_sign == 1 { (*p, p + 1) } else { (p + 1, *p) };
                    let over_comp = strands[over_idx].comp;
                    let under_comp = strands[under_idx].comp;
                    let over_new = edge_comp.len();
                    edge_comp.push(over_comp);
                    edge_seen_crossing.push(true);
                    let under_new = edge_comp.len();
                    edge_comp.push(under_comp);
                    edge_seen_crossing.push(true);
                    let orient = |up: bool, old: usize, new: usize| if up { (old, new) } else { (new, old) };
                    let (o_in, o_out) =
                        orient(strands[over_idx].label.up, strands[over_idx].edge, over_new);
                    let (u_in, u_out) =
                        orient(strands[under_idx].label.up, strands[under_idx].edge, under_new);
                    edge_seen_crossing[strands[over_idx].edge] = true;
                    edge_seen_crossing[strands[under_idx].edge] = true;
                    crossings.push(CrossingRec {
                        sign,
                        over_comp,
                        under_comp,
                        over_in: o_in,
                        over_out: o_out,
                        under_in: u_in,
                        under_out: u_out,
                    });
                    if over_comp == under_comp {
                        self_writhe[over_comp] += sign as i64;
                    } else {
                        cross_sum[over_comp][under_comp] += sign as i64;
                        cross_sum[under_comp][over_comp] += sign as i64;
                    }
                    strands[over_idx].edge = over_new;
                    strands[under_idx].edge = under_new;
                    strands.swap(*p, p + 1);
                }
                SliceEvent::Cup { pos, label, component } => {
                    if *pos > strands.len() {
                        bail!(idx, format!("cup at position {pos} exceeds width {}", strands.len()));
                    }
                    if *component >= nc {
                        bail!(idx, "cup references unknown component".to_string());
                    }
                    note_color(&self.components, &mut comp_color, root, *component, &label.color, &mut defects, Some(idx));
                    let edge = edge_comp.len();
                    edge_comp.push(*component);
                    edge_seen_crossing.push(false);
                    let left = Strand { label: label.clone(), comp: *component, edge };
                    let right = Strand { label: label.flipped(), comp: *component, edge };
                    strands.insert(*pos, right);
                    strands.insert(*pos, left);
                }
                SliceEvent::Cap(p) => {
                    if p + 1 >= strands.len() {
                        bail!(idx, format!("cap at position {p} needs two strands, width is {}", strands.len()));
                    }
                    let ok_colors =
                        strands[*p].label.color.approx_eq(&strands[p + 1].label.color, root);
                    if !ok_colors {
                        defects.push(Defect {
                            at: Some(idx),
                            message: format!(
                                "label mismatch at cap: {} vs {}",
                                strands[*p].label.color,
                                strands[p + 1].label.color
                            ),
                        });
                        if !lenient {
                            return Err(defects);
                        }
                    }
                    if strands[*p].label.up == strands[p + 1].label.up {
                        defects.push(Defect {
                            at: Some(idx),
                            message: "cap legs must have opposite orientations".into(),
                        });
                        if !lenient {
                            return Err(defects);
                        }
                    }
                    if strands[*p].comp != strands[p + 1].comp {
                        defects.push(Defect {
                            at: Some(idx),
                            message: format!(
                                "cap joins distinct components {} and {}",
                                self.components[strands[*p].comp].name,
                                self.components[strands[p + 1].comp].name
                            ),
                        });
                        if !lenient {
                            return Err(defects);
                        }
                    }
                    let (ea, eb) = (strands[*p].edge, strands[p + 1].edge);
                    let comp = strands[*p].comp;
                    if ea == eb {
                        if !edge_seen_crossing[ea] {
                            free_loops[comp] += 1;
                        }
                    } else {
                        let seen = edge_seen_crossing[ea] || edge_seen_crossing[eb];
                        edge_seen_crossing[ea] = seen;
                        edge_seen_crossing[eb] = seen;
                        for c in crossings.iter_mut() {
                            for e in
                                [&mut c.over_in, &mut c.over_out, &mut c.under_in, &mut c.under_out]
                            {
                                if *e == eb {
                                    *e = ea;
                                }
                            }
                        }
                        for s in strands.iter_mut() {
                            if s.edge == eb {
                                s.edge = ea;
                            }
                        }
                    }
                    strands.remove(p + 1);
                    strands.remove(*p);
                }
                SliceEvent::Twist { pos, positive } => {
                    if *pos >= strands.len() {
                        bail!(idx, format!("twist at position {pos} exceeds width {}", strands.len()));
                    }
                    twists[strands[*pos].comp] += if *positive { 1 } else { -1 };
                }
                SliceEvent::Coupon { pos, kind } => {
                    has_coupons = true;
                    let (inputs, outputs) = coupon_boundary(kind);
                    if *pos + inputs.len() > strands.len() {
                        bail!(idx, format!("coupon inputs exceed width {}", strands.len()));
                    }
                    for (k, want) in inputs.iter().enumerate() {
                        let have = &strands[pos + k].label;
                        if !have.color.approx_eq(&want.color, root) || have.up != want.up {
                            defects.push(Defect {
                                at: Some(idx),
                                message: format!("coupon input {k} mismatched"),
                            });
                            if !lenient {
                                return Err(defects);
                            }
                        }
                    }
                    let comp = if inputs.is_empty() {
                        0
                    } else {
                        strands[*pos].comp
                    };
                    let _removed: Vec<Strand> =
                        strands.splice(*pos..*pos + inputs.len(), std::iter::empty()).collect();
                    let mut at = *pos;
                    for out in outputs {
                        let edge = edge_comp.len();
                        edge_comp.push(comp);
                        edge_seen_crossing.push(true);
                        strands.insert(at, Strand { label: out, comp, edge });
                        at += 1;
                    }
                }
            }
            max_width = max_width.max(strands.len());
        }

        let mut linking = vec![vec![0i64; nc]; nc];
        for a in 0..nc {
            for b in 0..nc {
                if a == b {
                    continue;
                }
                if cross_sum[a][b] % 2 != 0 {
                    defects.push(Defect {
                        at: None,
                        message: format!(
                            "odd crossing parity between components {} and {}",
                            self.components[a].name, self.components[b].name
                        ),
                    });
                }
                linking[a][b] = cross_sum[a][b] / 2;
            }
        }
        for c in 0..nc {
            linking[c][c] = self_writhe[c] + twists[c];
            if let ComponentKind::Surgery { framing } = self.components[c].kind {
                if framing != linking[c][c] {
                    defects.push(Defect {
                        at: None,
                        message: format!(
                            "declared framing {} of component {} differs from drawn framing {}",
                            framing, self.components[c].name, linking[c][c]
                        ),
                    });
                }
            }
        }

        let top: Vec<(StrandLabel, usize)> =
            strands.iter().map(|s| (s.label.clone(), s.comp)).collect();
        let info = DiagramInfo {
            top,
            max_width,
            crossings,
            twists,
            self_writhe,
            linking,
            edge_count: edge_comp.len(),
            edge_comp,
            free_loops,
            comp_color,
            has_coupons,
        };
        Ok((info, defects))
    }
}

/// Boundary words of registry coupons.
pub fn coupon_boundary(kind: &CouponKind) -> (Vec<StrandLabel>, Vec<StrandLabel>) {
    match kind {
        CouponKind::WIso { alpha } => (
            vec![StrandLabel::new(Color::Typical(*alpha), true)],
            vec![StrandLabel::new(Color::Typical(-*alpha), false)],
        ),
        CouponKind::CgVertex { a, b, c } => (
            vec![],
            vec![
                StrandLabel::new(Color::Typical(*a), true),
                StrandLabel::new(Color::Typical(*b), true),
                StrandLabel::new(Color::Typical(*c), true),
            ],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple_root() -> RootData {
        RootData::new(2).unwrap()
    }

    fn unknot_diagram() -> SlicedDiagram {
        let c = Color::typical(0.5);
        SlicedDiagram {
            root_r: 2,
            components: vec![ComponentDecl { name: "K".into(), kind: ComponentKind::Graph }],
            bottom: vec![],
            events: vec![
                SliceEvent::Cup { pos: 0, label: StrandLabel::new(c, false), component: 0 },
                SliceEvent::Cap(0),
            ],
        }
    }

    #[test]
    fn unknot_is_valid_and_closed() {
        let d = unknot_diagram();
        assert!(d.validate(&simple_root()).is_empty());
        let info = d.trace_closed().unwrap();
        assert_eq!(info.free_loops[0], 1);
        assert_eq!(info.crossings.len(), 0);
    }

    #[test]
    fn dangling_arc_is_reported() {
        let mut d = unknot_diagram();
        d.events.pop();
        assert!(d.trace_closed().is_err());
    }

    #[test]
    fn cap_mismatch_is_reported() {
        let ca = Color::typical(0.5);
        let cb = Color::typical(0.25);
        let d = SlicedDiagram {
            root_r: 2,
            components: vec![
                ComponentDecl { name: "A".into(), kind: ComponentKind::Graph },
                ComponentDecl { name: "B".into(), kind: ComponentKind::Graph },
            ],
            bottom: vec![],
            events: vec![
                SliceEvent::Cup { pos: 0, label: StrandLabel::new(ca, false), component: 0 },
                SliceEvent::Cup { pos: 2, label: StrandLabel::new(cb, false), component: 1 },
                SliceEvent::Cap(1),
                SliceEvent::Cap(0),
            ],
        };
        let defects = d.validate(&simple_root());
        assert!(defects.iter().any(|d| d.message.contains("label mismatch")));
    }

    #[test]
    fn clasp_linking_matrix() {
        // cup K1, cup K2 beside the up leg, double positive crossing, caps
        let ca = Color::typical(0.5);
        let cb = Color::typical(0.25);
        let d = SlicedDiagram {
            root_r: 2,
            components: vec![
                ComponentDecl { name: "K1".into(), kind: ComponentKind::Graph },
                ComponentDecl { name: "K2".into(), kind: ComponentKind::Graph },
            ],
            bottom: vec![],
            events: vec![
                SliceEvent::Cup { pos: 0, label: StrandLabel::new(ca, false), component: 0 },
                SliceEvent::Cup { pos: 2, label: StrandLabel::new(cb.clone(), true), component: 1 },
                SliceEvent::CrossPos(1),
                SliceEvent::CrossPos(1),
                SliceEvent::Cap(2),
                SliceEvent::Cap(0),
            ],
        };
        let info = d.trace_closed().unwrap();
        assert_eq!(info.linking[0][1], 1);
        assert_eq!(info.linking[1][0], 1);
        assert_eq!(info.linking[0][0], 0);
        assert_eq!(info.crossings.len(), 2);
    }
}
