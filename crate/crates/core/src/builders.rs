//! Diagram constructions.
//!
//! Every closed object is built around a designated "cut" component whose
//! closure is the outermost cup/cap pair, so `engine::excise_outer_closure`
//! can reopen it. Re-cutting at a different arc recompiles the plan: braids
//! conjugate the chosen strand to the last position, spines re-root along
//! their path of meridians.

use crate::algebra::Color;
use crate::diagram::{ComponentDecl, ComponentKind, SliceEvent, SlicedDiagram, StrandLabel};
use crate::engine;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("braid word references generator {0} outside 1..{1}")]
    BadGenerator(i32, usize),
    #[error("component count mismatch: braid has {found} cycles, {given} specs given")]
    CycleCount { found: usize, given: usize },
    #[error("surgery slot {0} has no assigned color")]
    MissingSlot(usize),
    #[error("cut {0} is not reachable in this plan")]
    BadCut(String),
    #[error("arc occurrence {0} out of range for component {1}")]
    BadOccurrence(usize, String),
}

/// A component color: fixed, or filled in by a Kirby expansion term.
#[derive(Debug, Clone, PartialEq)]
pub enum ColorSlot {
    Fixed(Color),
    Surgery(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompSpec {
    pub name: String,
    pub kind: ComponentKind,
    pub color: ColorSlot,
}

impl CompSpec {
    pub fn graph(name: &str, color: Color) -> Self {
        CompSpec { name: name.into(), kind: ComponentKind::Graph, color: ColorSlot::Fixed(color) }
    }

    pub fn surgery(name: &str, slot: usize, framing: i64) -> Self {
        CompSpec {
            name: name.into(),
            kind: ComponentKind::Surgery { framing },
            color: ColorSlot::Surgery(slot),
        }
    }
}

/// Colors for the surgery slots of a plan.
#[derive(Debug, Clone, Default)]
pub struct Assignment(pub Vec<Color>);

impl Assignment {
    fn resolve(&self, slot: &ColorSlot) -> Result<Color, BuildError> {
        match slot {
            ColorSlot::Fixed(c) => Ok(c.clone()),
            ColorSlot::Surgery(j) => self.0.get(*j).cloned().ok_or(BuildError::MissingSlot(*j)),
        }
    }
}

/// Trace closure of a braid; components are the cycles of the braid
/// permutation, colors and framings are per component.
#[derive(Debug, Clone)]
pub struct BraidSpec {
    pub strands: usize,
    /// ±g for σ_g^{±1}, generators 1-based.
    pub word: Vec<i32>,
    pub comps: Vec<CompSpec>,
    /// Desired total framing per component; twists make up the difference
    /// from the braid writhe.
    pub framings: Vec<i64>,
}

impl BraidSpec {
    /// Component id per bottom strand position.
    pub fn strand_comps(&self) -> Result<Vec<usize>, BuildError> {
        let n = self.strands;
        let mut pos_strand: Vec<usize> = (0..n).collect();
        for &g in &self.word {
            let k = g.unsigned_abs() as usize;
            if k == 0 || k >= n {
                return Err(BuildError::BadGenerator(g, n.saturating_sub(1)));
            }
            pos_strand.swap(k - 1, k);
        }
        let mut comp = vec![usize::MAX; n];
        let mut cycles = 0usize;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            loop {
                comp[i] = cycles;
                i = pos_strand[i];
                if i == start {
                    break;
                }
            }
            cycles += 1;
        }
        if cycles != self.comps.len() {
            return Err(BuildError::CycleCount { found: cycles, given: self.comps.len() });
        }
        Ok(comp)
    }

    fn writhe(&self, word: &[i32], comp: &[usize]) -> Vec<i64> {
        let n = self.strands;
        let mut pos_strand: Vec<usize> = (0..n).collect();
        let mut w = vec![0i64; self.comps.len()];
        for &g in word {
            let k = g.unsigned_abs() as usize - 1;
            let (a, b) = (pos_strand[k], pos_strand[k + 1]);
            if comp[a] == comp[b] {
                w[comp[a]] += g.signum() as i64;
            }
            pos_strand.swap(k, k + 1);
        }
        w
    }

    fn compile(
        &self,
        root_r: u32,
        assign: &Assignment,
        cut_comp: usize,
        occurrence: usize,
    ) -> Result<SlicedDiagram, BuildError> {
        let n = self.strands;
        let comp_of = self.strand_comps()?;
        // rightmost strands first: occurrence 0 needs the least conjugation
        let positions: Vec<usize> = (0..n).rev().filter(|&i| comp_of[i] == cut_comp).collect();
        let &target = positions
            .get(occurrence)
            .ok_or_else(|| BuildError::BadOccurrence(occurrence, self.comps[cut_comp].name.clone()))?;
        // conjugate the braid so the target strand sits at the last position:
        // γ = σ_{t+1}…σ_{n−1} on top, γ^{-1} below
        let mut word: Vec<i32> = Vec::new();
        for g in (target + 1..n).rev() {
            word.push(-(g as i32));
        }
        word.extend(&self.word);
        for g in target + 1..n {
            word.push(g as i32);
        }
        let gamma_inv = |p: usize| -> usize {
            if p == n - 1 {
                target
            } else if p >= target {
                p + 1
            } else {
                p
            }
        };
        let comp_at: Vec<usize> = (0..n).map(|p| comp_of[gamma_inv(p)]).collect();
        debug_assert_eq!(comp_at[n - 1], cut_comp);

        let colors: Vec<Color> =
            self.comps.iter().map(|c| assign.resolve(&c.color)).collect::<Result<_, _>>()?;
        let writhe = self.writhe(&word, &comp_at);

        let mut events: Vec<SliceEvent> = Vec::new();
        for k in (0..n.saturating_sub(1)).rev() {
            events.push(SliceEvent::Cup {
                pos: n - 2 - k,
                label: StrandLabel::new(colors[comp_at[k]].clone(), false),
                component: comp_at[k],
            });
        }
        let off = n - 1;
        for &g in &word {
            let k = g.unsigned_abs() as usize - 1;
            if g > 0 {
                events.push(SliceEvent::CrossPos(off + k));
            } else {
                events.push(SliceEvent::CrossNeg(off + k));
            }
        }
        for c in 0..self.comps.len() {
            let need = self.framings[c] - writhe[c];
            if need != 0 {
                let p = (0..n).find(|&p| comp_at[p] == c).expect("component has a strand");
                for _ in 0..need.unsigned_abs() {
                    events.push(SliceEvent::Twist { pos: off + p, positive: need > 0 });
                }
            }
        }
        for k in (0..n.saturating_sub(1)).rev() {
            events.push(SliceEvent::Cap(k));
        }
        Ok(SlicedDiagram {
            root_r,
            components: self
                .comps
                .iter()
                .map(|c| ComponentDecl { name: c.name.clone(), kind: c.kind })
                .collect(),
            bottom: vec![(StrandLabel::new(colors[cut_comp].clone(), true), cut_comp)],
            events,
        })
    }
}

/// A meridian circle: clasps its predecessor in the branch (or the stem)
/// with linking `chirality`, carrying `twists` framing twists.
#[derive(Debug, Clone)]
pub struct MeridSpec {
    pub comp: CompSpec,
    pub twists: i64,
    pub chirality: i8,
}

/// A vertical stem with chains of meridians. Compiles open at the stem;
/// single-branch spines (paths) re-root to cut at any meridian.
#[derive(Debug, Clone)]
pub struct SpineSpec {
    pub stem: CompSpec,
    pub stem_twists: i64,
    pub branches: Vec<Vec<MeridSpec>>,
}

impl SpineSpec {
    fn compile(&self, root_r: u32, assign: &Assignment) -> Result<SlicedDiagram, BuildError> {
        let mut components =
            vec![ComponentDecl { name: self.stem.name.clone(), kind: self.stem.kind }];
        let stem_color = assign.resolve(&self.stem.color)?;
        let mut events: Vec<SliceEvent> = Vec::new();
        for _ in 0..self.stem_twists.unsigned_abs() {
            events.push(SliceEvent::Twist { pos: 0, positive: self.stem_twists > 0 });
        }
        for branch in &self.branches {
            let mut prev: Option<i64> = None;
            for m in branch {
                let comp_idx = components.len();
                components.push(ComponentDecl { name: m.comp.name.clone(), kind: m.comp.kind });
                let color = assign.resolve(&m.comp.color)?;
                match prev {
                    None => {
                        // clasp the stem through the up leg
                        events.push(SliceEvent::Cup {
                            pos: 1,
                            label: StrandLabel::new(color, true),
                            component: comp_idx,
                        });
                        for _ in 0..2 {
                            events.push(if m.chirality > 0 {
                                SliceEvent::CrossPos(0)
                            } else {
                                SliceEvent::CrossNeg(0)
                            });
                        }
                    }
                    Some(prev_twists) => {
                        // previous circle open with legs at (1,2); clasp its
                        // down leg (orientation flips the crossing type),
                        // then close it
                        events.push(SliceEvent::Cup {
                            pos: 3,
                            label: StrandLabel::new(color, true),
                            component: comp_idx,
                        });
                        for _ in 0..2 {
                            events.push(if m.chirality > 0 {
                                SliceEvent::CrossNeg(2)
                            } else {
                                SliceEvent::CrossPos(2)
                            });
                        }
                        for _ in 0..prev_twists.unsigned_abs() {
                            events.push(SliceEvent::Twist { pos: 1, positive: prev_twists > 0 });
                        }
                        events.push(SliceEvent::Cap(1));
                    }
                }
                prev = Some(m.twists);
            }
            if let Some(twists) = prev {
                for _ in 0..twists.unsigned_abs() {
                    events.push(SliceEvent::Twist { pos: 1, positive: twists > 0 });
                }
                events.push(SliceEvent::Cap(1));
            }
        }
        Ok(SlicedDiagram {
            root_r,
            components,
            bottom: vec![(StrandLabel::new(stem_color, true), 0)],
            events,
        })
    }

    /// Re-root a path-shaped spine at the named component.
    fn reroot(&self, at: &str) -> Result<SpineSpec, BuildError> {
        if self.stem.name == at {
            return Ok(self.clone());
        }
        if self.branches.len() != 1 {
            return Err(BuildError::BadCut(at.into()));
        }
        let chain = &self.branches[0];
        let pos = chain
            .iter()
            .position(|m| m.comp.name == at)
            .ok_or_else(|| BuildError::BadCut(at.into()))?;
        let fwd: Vec<MeridSpec> = chain[pos + 1..].to_vec();
        let mut back: Vec<MeridSpec> = Vec::new();
        let mut carry_chir = chain[pos].chirality;
        for i in (0..pos).rev() {
            back.push(MeridSpec {
                comp: chain[i].comp.clone(),
                twists: chain[i].twists,
                chirality: carry_chir,
            });
            carry_chir = chain[i].chirality;
        }
        back.push(MeridSpec {
            comp: self.stem.clone(),
            twists: self.stem_twists,
            chirality: carry_chir,
        });
        let mut branches = vec![back];
        if !fwd.is_empty() {
            branches.push(fwd);
        }
        Ok(SpineSpec {
            stem: chain[pos].comp.clone(),
            stem_twists: chain[pos].twists,
            branches,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Plan {
    Empty,
    Braid(BraidSpec),
    Spine(SpineSpec),
    Union(Vec<Plan>),
    /// A meridian circle clasping the `around` arc of the base plan, drawn
    /// at the very bottom of the cut-open form. `arc_twists` twists the
    /// encircled arc inside the pattern (blow-up compensation).
    WithMeridian { base: Box<Plan>, merid: MeridSpec, around: String, arc_twists: i64 },
}

impl Plan {
    pub fn comp_specs(&self) -> Vec<CompSpec> {
        match self {
            Plan::Empty => vec![],
            Plan::Braid(b) => b.comps.clone(),
            Plan::Spine(s) => {
                let mut v = vec![s.stem.clone()];
                for b in &s.branches {
                    v.extend(b.iter().map(|m| m.comp.clone()));
                }
                v
            }
            Plan::Union(ps) => ps.iter().flat_map(|p| p.comp_specs()).collect(),
            Plan::WithMeridian { base, merid, .. } => {
                let mut v = base.comp_specs();
                v.push(merid.comp.clone());
                v
            }
        }
    }

    fn contains(&self, comp: &str) -> bool {
        self.comp_specs().iter().any(|c| c.name == comp)
    }

    /// Compile as a (1,1)-tangle open at the named component. `occurrence`
    /// selects between parallel strands of braid components.
    pub fn compile_open(
        &self,
        root_r: u32,
        assign: &Assignment,
        cut: &str,
        occurrence: usize,
    ) -> Result<SlicedDiagram, BuildError> {
        match self {
            Plan::Empty => Err(BuildError::BadCut(cut.into())),
            Plan::Braid(b) => {
                let idx = b
                    .comps
                    .iter()
                    .position(|c| c.name == cut)
                    .ok_or_else(|| BuildError::BadCut(cut.into()))?;
                b.compile(root_r, assign, idx, occurrence)
            }
            Plan::Spine(s) => s.reroot(cut)?.compile(root_r, assign),
            Plan::Union(ps) => {
                let open_idx = ps
                    .iter()
                    .position(|p| p.contains(cut))
                    .ok_or_else(|| BuildError::BadCut(cut.into()))?;
                let mut d = ps[open_idx].compile_open(root_r, assign, cut, occurrence)?;
                for (i, p) in ps.iter().enumerate() {
                    if i == open_idx {
                        continue;
                    }
                    let closed = p.compile_closed_default(root_r, assign)?;
                    let comp_off = d.components.len();
                    d.components.extend(closed.components.iter().cloned());
                    d.events.extend(closed.events.iter().map(|e| {
                        let mut e = e.shifted(1);
                        if let SliceEvent::Cup { component, .. } = &mut e {
                            *component += comp_off;
                        }
                        e
                    }));
                }
                Ok(d)
            }
            Plan::WithMeridian { base, merid, around, arc_twists } => {
                if cut != around {
                    return Err(BuildError::BadCut(cut.into()));
                }
                let inner = base.compile_open(root_r, assign, cut, occurrence)?;
                let comp_idx = inner.components.len();
                let color = assign.resolve(&merid.comp.color)?;
                let mut events: Vec<SliceEvent> = Vec::new();
                for _ in 0..arc_twists.unsigned_abs() {
                    events.push(SliceEvent::Twist { pos: 0, positive: *arc_twists > 0 });
                }
                events.push(SliceEvent::Cup {
                    pos: 1,
                    label: StrandLabel::new(color, true),
                    component: comp_idx,
                });
                for _ in 0..2 {
                    events.push(if merid.chirality > 0 {
                        SliceEvent::CrossPos(0)
                    } else {
                        SliceEvent::CrossNeg(0)
                    });
                }
                for _ in 0..merid.twists.unsigned_abs() {
                    events.push(SliceEvent::Twist { pos: 1, positive: merid.twists > 0 });
                }
                events.push(SliceEvent::Cap(1));
                events.extend(inner.events.iter().cloned());
                let mut components = inner.components.clone();
                components
                    .push(ComponentDecl { name: merid.comp.name.clone(), kind: merid.comp.kind });
                Ok(SlicedDiagram { root_r, components, bottom: inner.bottom, events })
            }
        }
    }

    /// Compile closed with the named component's closure outermost.
    pub fn compile_closed(
        &self,
        root_r: u32,
        assign: &Assignment,
        outer: &str,
    ) -> Result<SlicedDiagram, BuildError> {
        let open = self.compile_open(root_r, assign, outer, 0)?;
        engine::close_tangle(&open).map_err(|_| BuildError::BadCut(outer.into()))
    }

    /// Compile closed at the first component, or the empty diagram.
    pub fn compile_closed_default(
        &self,
        root_r: u32,
        assign: &Assignment,
    ) -> Result<SlicedDiagram, BuildError> {
        match self {
            Plan::Empty => {
                Ok(SlicedDiagram { root_r, components: vec![], bottom: vec![], events: vec![] })
            }
            _ => {
                let name = self.comp_specs()[0].name.clone();
                self.compile_closed(root_r, assign, &name)
            }
        }
    }
}

/// Unknot with the given framing (as twists).
pub fn unknot(name: &str, color: ColorSlot, kind: ComponentKind, framing: i64) -> Plan {
    Plan::Spine(SpineSpec {
        stem: CompSpec { name: name.into(), kind, color },
        stem_twists: framing,
        branches: vec![],
    })
}

/// Hopf link: `b` clasps `a` with the given sign, both 0-framed.
pub fn hopf(a: CompSpec, b: CompSpec, sign: i8) -> Plan {
    Plan::Spine(SpineSpec {
        stem: a,
        stem_twists: 0,
        branches: vec![vec![MeridSpec { comp: b, twists: 0, chirality: sign }]],
    })
}

/// Chain of unknots c_1 – c_2 – … – c_m with +1 clasps and given framings.
pub fn chain_link(comps: Vec<CompSpec>, framings: Vec<i64>) -> Plan {
    assert_eq!(comps.len(), framings.len());
    let mut it = comps.into_iter().zip(framings);
    let (stem, stem_tw) = it.next().expect("nonempty chain");
    let branch: Vec<MeridSpec> =
        it.map(|(comp, tw)| MeridSpec { comp, twists: tw, chirality: 1 }).collect();
    Plan::Spine(SpineSpec {
        stem,
        stem_twists: stem_tw,
        branches: if branch.is_empty() { vec![] } else { vec![branch] },
    })
}

/// Meridian insertion on the designated arc of a plan.
pub fn with_meridian(plan: Plan, merid: MeridSpec, around: &str, arc_twists: i64) -> Plan {
    Plan::WithMeridian { base: Box::new(plan), merid, around: around.to_string(), arc_twists }
}

pub fn disjoint_union(plans: Vec<Plan>) -> Plan {
    Plan::Union(plans)
}

/// Matched diagrams related by one handle slide of the cut strand `e` over
/// the circle `k`: `e` threads `k` once, `k` is −1-framed. After the slide
/// `e` self-clasps, loops around `k` with the opposite clasp, and carries the
/// framing picked up from `k`.
pub struct SlidePair {
    pub pre: SlicedDiagram,
    pub post: SlicedDiagram,
}

/// Slide of an arc over an unknotted circle (config `chain_comp = None`) or
/// over a circle that also clasps a further chain circle colored by
/// `chain_color`.
pub fn slide_family(
    root_r: u32,
    e_color: Color,
    k_pre_color: Color,
    k_post_color: Color,
    chain: Option<(Color, i64)>,
) -> SlidePair {
    let e = StrandLabel::new(e_color, true);
    let mut comps = vec![
        ComponentDecl { name: "e".into(), kind: ComponentKind::Graph },
        ComponentDecl { name: "k".into(), kind: ComponentKind::Graph },
    ];
    if chain.is_some() {
        comps.push(ComponentDecl { name: "c".into(), kind: ComponentKind::Graph });
    }

    let k_cup = |color: &Color| SliceEvent::Cup {
        pos: 1,
        label: StrandLabel::new(color.clone(), true),
        component: 1,
    };
    // clasp of the chain circle c around k's up leg
    let chain_block = |events: &mut Vec<SliceEvent>, open: bool| {
        if let Some((c_color, c_twists)) = &chain {
            events.push(SliceEvent::Cup {
                pos: 2,
                label: StrandLabel::new(c_color.clone(), true),
                component: 2,
            });
            events.push(SliceEvent::CrossPos(1));
            events.push(SliceEvent::CrossPos(1));
            if !open {
                for _ in 0..c_twists.unsigned_abs() {
                    events.push(SliceEvent::Twist { pos: 2, positive: *c_twists > 0 });
                }
                events.push(SliceEvent::Cap(2));
            }
        }
    };
    let close_chain = |events: &mut Vec<SliceEvent>, at: usize| {
        if let Some((_, c_twists)) = &chain {
            for _ in 0..c_twists.unsigned_abs() {
                events.push(SliceEvent::Twist { pos: at, positive: *c_twists > 0 });
            }
            events.push(SliceEvent::Cap(at));
        }
    };

    // pre: e threads the −1-framed circle k once (positive clasp)
    let mut pre_events = vec![k_cup(&k_pre_color)];
    pre_events.push(SliceEvent::CrossPos(0));
    pre_events.push(SliceEvent::CrossPos(0));
    chain_block(&mut pre_events, false);
    pre_events.push(SliceEvent::Twist { pos: 1, positive: false });
    pre_events.push(SliceEvent::Cap(1));
    let pre = SlicedDiagram {
        root_r,
        components: comps.clone(),
        bottom: vec![(e.clone(), 0)],
        events: pre_events,
    };

    // post: e' = e + framed parallel of k; k recolored. The slid strand
    // picks up a +2 self-clasp against its stem, a −1 clasp with k, a +1
    // clasp with the chain circle when present, and a −1 twist.
    let mut post_events = vec![k_cup(&k_post_color)];
    post_events.push(SliceEvent::CrossPos(0));
    post_events.push(SliceEvent::CrossPos(0));
    if chain.is_some() {
        // open the chain circle around k's up leg and keep it open
        chain_block(&mut post_events, true);
        // word: e L? … build loop after c is open: [e, k^, c^, cv, kv]
        // loop cup between e and k legs
        post_events.push(SliceEvent::Cup {
            pos: 1,
            label: StrandLabel::new(e.color.clone(), false),
            component: 0,
        });
        // word: [e, L v, L ^, k^, c^, cv, kv]
        // self-clasp of e' (+2): stem with the loop down leg
        post_events.push(SliceEvent::CrossNeg(0));
        post_events.push(SliceEvent::CrossNeg(0));
        // transit over k's up leg (+1), clasp c (+2 → lk +1), back (−1),
        // then the −1 clasp with k
        post_events.push(SliceEvent::CrossPos(2));
        post_events.push(SliceEvent::CrossPos(3));
        post_events.push(SliceEvent::CrossPos(3));
        post_events.push(SliceEvent::CrossNeg(2));
        post_events.push(SliceEvent::CrossNeg(2));
        post_events.push(SliceEvent::CrossNeg(2));
        // kink-follow framing on the loop
        post_events.push(SliceEvent::Twist { pos: 2, positive: false });
        // snake cap joins stem and loop down leg
        post_events.push(SliceEvent::Cap(0));
        // word: [e', k^, c^, cv, kv]; close c, then k
        close_chain(&mut post_events, 2);
        post_events.push(SliceEvent::Twist { pos: 1, positive: false });
        post_events.push(SliceEvent::Cap(1));
    } else {
        post_events.push(SliceEvent::Cup {
            pos: 1,
            label: StrandLabel::new(e.color.clone(), false),
            component: 0,
        });
        // word: [e, L v, L ^, k^, kv]
        post_events.push(SliceEvent::CrossNeg(0));
        post_events.push(SliceEvent::CrossNeg(0));
        post_events.push(SliceEvent::CrossNeg(2));
        post_events.push(SliceEvent::CrossNeg(2));
        post_events.push(SliceEvent::Twist { pos: 2, positive: false });
        post_events.push(SliceEvent::Cap(0));
        post_events.push(SliceEvent::Twist { pos: 1, positive: false });
        post_events.push(SliceEvent::Cap(1));
    }
    let post =
        SlicedDiagram { root_r, components: comps, bottom: vec![(e, 0)], events: post_events };

    SlidePair { pre, post }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn typ(x: f64) -> Color {
        Color::typical(x)
    }

    #[test]
    fn trefoil_braid_structure() {
        let spec = BraidSpec {
            strands: 2,
            word: vec![1, 1, 1],
            comps: vec![CompSpec::graph("K", typ(0.5))],
            framings: vec![3],
        };
        let plan = Plan::Braid(spec);
        let d = plan.compile_closed(2, &Assignment::default(), "K").unwrap();
        let info = d.trace_closed().unwrap();
        assert_eq!(info.crossings.len(), 3);
        assert_eq!(info.self_writhe[0], 3);
        assert_eq!(info.twists[0], 0);
        assert_eq!(info.framing(0), 3);
    }

    #[test]
    fn hopf_linking_sign() {
        for sign in [1i8, -1] {
            let plan =
                hopf(CompSpec::graph("A", typ(0.5)), CompSpec::graph("B", typ(0.25)), sign);
            let d = plan.compile_closed(2, &Assignment::default(), "A").unwrap();
            let info = d.trace_closed().unwrap();
            assert_eq!(info.linking[0][1], sign as i64);
        }
    }

    #[test]
    fn chain_matrix_matches_construction() {
        let plan = chain_link(
            vec![CompSpec::graph("c1", typ(0.5)), CompSpec::graph("c2", typ(0.5))],
            vec![-2, -2],
        );
        let d = plan.compile_closed(2, &Assignment::default(), "c1").unwrap();
        let info = d.trace_closed().unwrap();
        assert_eq!(info.linking, vec![vec![-2, 1], vec![1, -2]]);
    }

    #[test]
    fn longer_chain_recut_preserves_linking() {
        let comps: Vec<CompSpec> =
            (0..4).map(|i| CompSpec::graph(&format!("c{i}"), typ(0.5))).collect();
        let plan = chain_link(comps, vec![-2, -1, -3, -2]);
        let mut matrices = Vec::new();
        for cut in ["c0", "c1", "c2", "c3"] {
            let d = plan.compile_closed(2, &Assignment::default(), cut).unwrap();
            let info = d.trace_closed().unwrap();
            let mut names: Vec<(String, usize)> =
                d.components.iter().enumerate().map(|(i, c)| (c.name.clone(), i)).collect();
            names.sort();
            let perm: Vec<usize> = names.iter().map(|(_, i)| *i).collect();
            let m: Vec<Vec<i64>> = perm
                .iter()
                .map(|&a| perm.iter().map(|&b| info.linking[a][b]).collect())
                .collect();
            matrices.push(m);
        }
        for m in &matrices[1..] {
            assert_eq!(m, &matrices[0]);
        }
    }

    #[test]
    fn braid_cut_occurrences_stay_framed() {
        let spec = BraidSpec {
            strands: 2,
            word: vec![1, 1, 1],
            comps: vec![CompSpec::graph("K", typ(0.5))],
            framings: vec![0],
        };
        let plan = Plan::Braid(spec);
        for occ in 0..2 {
            let d = plan.compile_open(2, &Assignment::default(), "K", occ).unwrap();
            let closed = engine::close_tangle(&d).unwrap();
            let info = closed.trace_closed().unwrap();
            assert_eq!(info.framing(0), 0);
        }
    }

    #[test]
    fn with_meridian_links_once() {
        let base = unknot("T", ColorSlot::Fixed(typ(0.5)), ComponentKind::Graph, 0);
        let plan = with_meridian(
            base,
            MeridSpec {
                comp: CompSpec::graph("m", typ(0.25)),
                twists: 1,
                chirality: 1,
            },
            "T",
            1,
        );
        let d = plan.compile_closed(2, &Assignment::default(), "T").unwrap();
        let info = d.trace_closed().unwrap();
        // component order: T then m
        assert_eq!(info.linking[0][1], 1);
        assert_eq!(info.framing(0), 1);
        assert_eq!(info.framing(1), 1);
    }

    #[test]
    fn slide_pair_invariants() {
        // config over an unknotted circle: post strand framing +1, zero
        // algebraic linking with k
        let p = slide_family(2, typ(-0.4), typ(0.6), typ(0.2), None);
        let pre = crate::engine::close_tangle(&p.pre).unwrap();
        let post = crate::engine::close_tangle(&p.post).unwrap();
        let pre_info = pre.trace_closed().unwrap();
        let post_info = post.trace_closed().unwrap();
        assert_eq!(pre_info.linking[0][1], 1);
        assert_eq!(pre_info.framing(1), -1);
        assert_eq!(pre_info.framing(0), 0);
        assert_eq!(post_info.linking[0][1], 0);
        assert_eq!(post_info.framing(0), 1);
        assert_eq!(post_info.framing(1), -1);

        // chain config: k also clasps c
        let p2 = slide_family(2, typ(-0.4), typ(0.6), typ(0.2), Some((typ(0.7), 0)));
        let pre2 = crate::engine::close_tangle(&p2.pre).unwrap();
        let post2 = crate::engine::close_tangle(&p2.post).unwrap();
        let pre_info2 = pre2.trace_closed().unwrap();
        let post_info2 = post2.trace_closed().unwrap();
        assert_eq!(pre_info2.linking[1][2], 1);
        assert_eq!(pre_info2.linking[0][2], 0);
        assert_eq!(post_info2.linking[0][2], 1);
        assert_eq!(post_info2.linking[0][1], 0);
        assert_eq!(post_info2.framing(0), 1);
    }
}
