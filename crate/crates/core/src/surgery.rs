//! Surgery invariants from modified Kirby colors.
//!
//! A surgery component of degree g is colored by the formal sum
//! Ω_g = Σ_k d(V_{g−r+1+2k})·V_{g−r+1+2k}; the renormalized evaluation F'
//! expands multilinearly over all r^m colorings. Blow-up anomalies Δ± come
//! from the ±1-framed Kirby-colored meridian around a matching twisted
//! strand, and
//!
//!   N(M,T,ω) = F'(L(ω) ∪ Γ_T) / (Δ₊^{σ₊} Δ₋^{σ₋}).
//!
//! N⁰ extends to non-computable triples by connected sum with an unknot
//! normalizer: N⁰ = N((M,T,ω) # (S³,u_V,ω_V)) / d(V).

use crate::algebra::{mod_dim, AlgebraError, Color, CriticalSet, GradeClass};
use crate::builders::{
    unknot, with_meridian, Assignment, BuildError, ColorSlot, CompSpec, MeridSpec, Plan, SpineSpec,
};
use crate::diagram::ComponentKind;
use crate::engine::{bracket_tangle, EngineConfig, EngineError};
use crate::scalar::{C64, ONE, RootData, ZERO};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degree {0} is not generic for the chosen critical set")]
    NonGeneric(C64),
    #[error("triple is not computable: {0}")]
    NotComputable(String),
    #[error("cocycle violated at component {0}")]
    Cocycle(String),
    #[error("invalid triple: {0}")]
    Invalid(String),
    #[error("engine defect: {0}")]
    EngineDefect(String),
}

/// Modified Kirby color: r typical colors of a common degree, weighted by
/// their modified dimensions.
#[derive(Debug, Clone)]
pub struct KirbyColor {
    pub degree_lift: C64,
    pub terms: Vec<(C64, C64)>,
}

/// Orbit representatives V_{g−r+1+2k}, k = 0..r−1, with coefficients d.
pub fn kirby_color(
    root: &RootData,
    g_lift: C64,
    critical: CriticalSet,
) -> Result<KirbyColor, SurgeryError> {
    let g = GradeClass::from_lift(g_lift);
    if !g.is_generic(critical, root) {
        return Err(SurgeryError::NonGeneric(g_lift));
    }
    let mut terms = Vec::with_capacity(root.r as usize);
    for k in 0..root.r {
        let beta = g_lift + C64::new(1.0 - root.r as f64 + 2.0 * k as f64, 0.0);
        let d = mod_dim(root, beta)?;
        terms.push((d, beta));
    }
    Ok(KirbyColor { degree_lift: g_lift, terms })
}

/// Degree lift used in cocycle sums: (α+r−1) for V_α, 0 for ε^t, negated
/// under duality.
pub fn degree_lift(root: &RootData, c: &Color) -> C64 {
    match c {
        Color::Typical(a) => *a + C64::new(root.r as f64 - 1.0, 0.0),
        Color::Periodic(_) => ZERO,
        Color::Dual(inner) => -degree_lift(root, inner),
    }
}

/// A surgery presentation plus cohomology decoration: `omega[j]` is the lift
/// at the meridian of the component carrying `ColorSlot::Surgery(j)`.
#[derive(Debug, Clone)]
pub struct SurgeryTriple {
    pub plan: Plan,
    pub omega: Vec<C64>,
    pub critical: CriticalSet,
}

/// Signature data of the surgery linking matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkingData {
    pub matrix: Vec<Vec<i64>>,
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub nullity: usize,
}

const SIGNATURE_ZERO_THRESHOLD: f64 = 1e-9;

/// Eigenvalue signs of a small symmetric matrix by Jacobi rotations.
fn signature(matrix: &[Vec<i64>]) -> LinkingData {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> =
        matrix.iter().map(|r| r.iter().map(|x| *x as f64).collect()).collect();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    for i in 0..n {
        if a[i][i] > SIGNATURE_ZERO_THRESHOLD {
            plus += 1;
        } else if a[i][i] < -SIGNATURE_ZERO_THRESHOLD {
            minus += 1;
        } else {
            zero += 1;
        }
    }
    LinkingData { matrix: matrix.to_vec(), sigma_plus: plus, sigma_minus: minus, nullity: zero }
}

/// Component roster of a triple: (spec, surgery slot or None).
fn roster(plan: &Plan) -> Vec<(CompSpec, Option<usize>)> {
    plan.comp_specs()
        .into_iter()
        .map(|c| {
            let slot = match &c.color {
                ColorSlot::Surgery(j) => Some(*j),
                ColorSlot::Fixed(_) => None,
            };
            (c, slot)
        })
        .collect()
}

fn dummy_assignment(omega_len: usize) -> Assignment {
    Assignment(vec![Color::typical(0.5); omega_len])
}

/// Linking data restricted to the surgery components.
pub fn linking_data(root: &RootData, s: &SurgeryTriple) -> Result<LinkingData, SurgeryError> {
    let comps = roster(&s.plan);
    if comps.is_empty() {
        return Ok(signature(&[]));
    }
    let first = comps[0].0.name.clone();
    let d = s.plan.compile_closed(root.r, &dummy_assignment(s.omega.len()), &first)?;
    let info = d.trace_closed().map_err(|e| SurgeryError::Invalid(e.to_string()))?;
    let surgery_named: Vec<&str> = comps
        .iter()
        .filter(|(c, _)| matches!(c.kind, ComponentKind::Surgery { .. }))
        .map(|(c, _)| c.name.as_str())
        .collect();
    let idx_of = |name: &str| d.components.iter().position(|c| c.name == name).unwrap();
    let m = surgery_named.len();
    let mut matrix = vec![vec![0i64; m]; m];
    for (a, na) in surgery_named.iter().enumerate() {
        for (b, nb) in surgery_named.iter().enumerate() {
            matrix[a][b] = info.linking[idx_of(na)][idx_of(nb)];
        }
    }
    Ok(signature(&matrix))
}

/// Check the triple invariants. Compatibility of the graph part is
/// structural (colors carry their degrees); the cocycle condition requires
/// every surgery row of the ω-weighted linking matrix to vanish mod 2.
pub fn validate_triple(root: &RootData, s: &SurgeryTriple) -> Result<(), SurgeryError> {
    let comps = roster(&s.plan);
    let n_slots = comps.iter().filter_map(|(_, s)| *s).max().map(|m| m + 1).unwrap_or(0);
    if n_slots != s.omega.len() {
        return Err(SurgeryError::Invalid(format!(
            "omega has {} entries, plan expects {}",
            s.omega.len(),
            n_slots
        )));
    }
    if comps.is_empty() {
        return Ok(());
    }
    let first = comps[0].0.name.clone();
    let d = s.plan.compile_closed(root.r, &dummy_assignment(s.omega.len()), &first)?;
    let info = d.trace_closed().map_err(|e| SurgeryError::Invalid(e.to_string()))?;
    let idx_of = |name: &str| d.components.iter().position(|c| c.name == name).unwrap();
    let mut value: Vec<C64> = vec![ZERO; d.components.len()];
    for (c, slot) in &comps {
        let v = match slot {
            Some(j) => s.omega[*j],
            None => match &c.color {
                ColorSlot::Fixed(col) => degree_lift(root, col),
                ColorSlot::Surgery(_) => unreachable!(),
            },
        };
        value[idx_of(&c.name)] = v;
    }
    for (c, slot) in &comps {
        if slot.is_none() {
            continue;
        }
        let j = idx_of(&c.name);
        let mut sum = ZERO;
        for (h, v) in value.iter().enumerate() {
            sum += C64::new(info.linking[j][h] as f64, 0.0) * v;
        }
        let half = sum.re / 2.0;
        let frac = (half - half.round()).abs();
        if frac * 2.0 > root.tol * 10.0 || sum.im.abs() > root.tol {
            return Err(SurgeryError::Cocycle(c.name.clone()));
        }
    }
    Ok(())
}

/// Computability: every surgery degree generic, or no surgery components
/// and at least one typical arc in the graph part.
pub fn is_computable(root: &RootData, s: &SurgeryTriple) -> bool {
    let comps = roster(&s.plan);
    let has_surgery = comps.iter().any(|(_, s)| s.is_some());
    if !has_surgery {
        return comps.iter().any(|(c, _)| match &c.color {
            ColorSlot::Fixed(col) => matches!(col.base(), Color::Typical(_)),
            _ => false,
        });
    }
    s.omega.iter().all(|a| GradeClass::from_lift(*a).is_generic(s.critical, root))
}

/// The default cut arc: first typical graph component, else the first
/// surgery component (its Kirby summands are typical).
pub fn default_cut(plan: &Plan) -> Option<String> {
    let comps = plan.comp_specs();
    for c in &comps {
        if let ColorSlot::Fixed(col) = &c.color {
            if matches!(col.base(), Color::Typical(_)) && matches!(c.kind, ComponentKind::Graph) {
                return Some(c.name.clone());
            }
        }
    }
    comps.first().map(|c| c.name.clone())
}

fn worker_count() -> usize {
    std::env::var("NSS3M_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n >= 1)
        .unwrap_or(1)
}

/// Kirby-expanded renormalized evaluation F'(L(ω) ∪ Γ_T) cut at `cut`:
/// Σ over colorings of ∏_j d(β_j) · F'(colored diagram). Terms are
/// independent; NSS3M_THREADS caps the worker count, and the final sum runs
/// in a fixed order either way.
pub fn fprime_kirby(
    root: &RootData,
    plan: &Plan,
    omega: &[C64],
    critical: CriticalSet,
    cut: &str,
    cfg: &EngineConfig,
) -> Result<C64, SurgeryError> {
    let kirby: Vec<KirbyColor> =
        omega.iter().map(|a| kirby_color(root, *a, critical)).collect::<Result<_, _>>()?;
    let m = kirby.len();
    let total: usize = (root.r as usize).pow(m as u32);
    let term = |t: usize| -> Result<C64, SurgeryError> {
        let mut idx = t;
        let mut coeff = ONE;
        let mut colors = Vec::with_capacity(m);
        for k in &kirby {
            let pick = idx % root.r as usize;
            idx /= root.r as usize;
            let (d, beta) = k.terms[pick];
            coeff *= d;
            colors.push(Color::Typical(beta));
        }
        let diagram = plan.compile_open(root.r, &Assignment(colors), cut, 0)?;
        let (lambda, dim) = bracket_tangle(root, &diagram, cfg)?;
        Ok(coeff * dim * lambda)
    };
    let workers = worker_count().min(total.max(1));
    let values: Vec<Result<C64, SurgeryError>> = if workers <= 1 || total <= 1 {
        (0..total).map(term).collect()
    } else {
        let mut out: Vec<Option<Result<C64, SurgeryError>>> = (0..total).map(|_| None).collect();
        let chunk = total.div_ceil(workers);
        std::thread::scope(|scope| {
            let mut rest: &mut [Option<Result<C64, SurgeryError>>] = &mut out;
            let mut start = 0usize;
            while !rest.is_empty() {
                let take = chunk.min(rest.len());
                let (head, tail) = rest.split_at_mut(take);
                let term = &term;
                scope.spawn(move || {
                    for (i, cell) in head.iter_mut().enumerate() {
                        *cell = Some(term(start + i));
                    }
                });
                start += take;
                rest = tail;
            }
        });
        out.into_iter().map(|c| c.expect("worker filled cell")).collect()
    };
    let mut sum = ZERO;
    for v in values {
        sum += v?;
    }
    Ok(sum)
}

/// Blow-up anomalies Δ±: bracket of the ±1-framed Kirby-colored meridian
/// around a matching ±1-twisted strand; independent of the strand color and
/// of the generic degree, which is asserted over samples.
pub fn delta_pm(
    root: &RootData,
    critical: CriticalSet,
    cfg: &EngineConfig,
) -> Result<(C64, C64), SurgeryError> {
    let sample = |c_lift: f64, sign: i8| -> Result<C64, SurgeryError> {
        let u = Color::typical(c_lift);
        let merid_deg = -degree_lift(root, &u);
        let plan = Plan::Spine(SpineSpec {
            stem: CompSpec {
                name: "u".into(),
                kind: ComponentKind::Graph,
                color: ColorSlot::Fixed(u.clone()),
            },
            stem_twists: sign as i64,
            branches: vec![vec![MeridSpec {
                comp: CompSpec {
                    name: "m".into(),
                    kind: ComponentKind::Surgery { framing: sign as i64 },
                    color: ColorSlot::Surgery(0),
                },
                twists: sign as i64,
                chirality: sign,
            }]],
        });
        let value = fprime_kirby(root, &plan, &[merid_deg], critical, "u", cfg)?;
        // the bracket, not F': divide out the cut arc's modified dimension
        Ok(value / mod_dim(root, C64::new(c_lift, 0.0))?)
    };
    let anchors = [0.37, 3.0 / 7.0, 0.5, -0.81, 1.0 / 3.0];
    let plus: Vec<C64> = anchors.iter().map(|c| sample(*c, 1)).collect::<Result<_, _>>()?;
    let minus: Vec<C64> = anchors.iter().map(|c| sample(*c, -1)).collect::<Result<_, _>>()?;
    for v in &plus[1..] {
        if (v - plus[0]).norm() > 1e-8 * 1f64.max(plus[0].norm()) {
            return Err(SurgeryError::EngineDefect(format!(
                "Δ+ depends on the sample: {} vs {}",
                v, plus[0]
            )));
        }
    }
    for v in &minus[1..] {
        if (v - minus[0]).norm() > 1e-8 * 1f64.max(minus[0].norm()) {
            return Err(SurgeryError::EngineDefect(format!(
                "Δ− depends on the sample: {} vs {}",
                v, minus[0]
            )));
        }
    }
    if (plus[0] * minus[0]).norm() < root.tol {
        return Err(SurgeryError::EngineDefect("Δ+·Δ− vanishes".into()));
    }
    Ok((plus[0], minus[0]))
}

/// The invariant N(M,T,ω) of a valid computable triple.
pub fn invariant_n(
    root: &RootData,
    s: &SurgeryTriple,
    cfg: &EngineConfig,
) -> Result<C64, SurgeryError> {
    validate_triple(root, s)?;
    if !is_computable(root, s) {
        return Err(SurgeryError::NotComputable(
            "a surgery degree lies in the critical set".into(),
        ));
    }
    let cut = default_cut(&s.plan)
        .ok_or_else(|| SurgeryError::Invalid("empty presentation with empty graph".into()))?;
    let fp = fprime_kirby(root, &s.plan, &s.omega, s.critical, &cut, cfg)?;
    let lk = linking_data(root, s)?;
    if lk.sigma_plus == 0 && lk.sigma_minus == 0 {
        return Ok(fp);
    }
    let (dp, dm) = delta_pm(root, s.critical, cfg)?;
    let mut denom = ONE;
    for _ in 0..lk.sigma_plus {
        denom *= dp;
    }
    for _ in 0..lk.sigma_minus {
        denom *= dm;
    }
    Ok(fp / denom)
}

/// ⟨H(V,W)⟩: bracket of the 0-framed V-meridian around a W-strand.
pub fn pairing_h(
    root: &RootData,
    v: &Color,
    w: &Color,
    cfg: &EngineConfig,
) -> Result<C64, SurgeryError> {
    let plan = Plan::Spine(SpineSpec {
        stem: CompSpec {
            name: "w".into(),
            kind: ComponentKind::Graph,
            color: ColorSlot::Fixed(w.clone()),
        },
        stem_twists: 0,
        branches: vec![vec![MeridSpec {
            comp: CompSpec::graph("v", v.clone()),
            twists: 0,
            chirality: 1,
        }]],
    });
    let d = plan.compile_open(root.r, &Assignment::default(), "w", 0)?;
    let (lambda, _) = bracket_tangle(root, &d, cfg)?;
    Ok(lambda)
}

/// H-stabilization: a 0-framed meridian colored by the degree-g typical
/// representative around the named graph arc. Returns the stabilized triple
/// and the meridian color.
pub fn h_stabilize(
    root: &RootData,
    s: &SurgeryTriple,
    arc: &str,
    g_lift: C64,
) -> Result<(SurgeryTriple, Color), SurgeryError> {
    let g = GradeClass::from_lift(g_lift);
    if !g.is_generic(s.critical, root) {
        return Err(SurgeryError::NonGeneric(g_lift));
    }
    let v = Color::Typical(g_lift + C64::new(1.0 - root.r as f64, 0.0));
    let plan = with_meridian(
        s.plan.clone(),
        MeridSpec { comp: CompSpec::graph("hstab", v.clone()), twists: 0, chirality: 1 },
        arc,
        0,
    );
    Ok((SurgeryTriple { plan, omega: s.omega.clone(), critical: s.critical }, v))
}

fn shift_slots(plan: &Plan, by: usize) -> Plan {
    fn shift_spec(c: &CompSpec, by: usize) -> CompSpec {
        let color = match &c.color {
            ColorSlot::Surgery(j) => ColorSlot::Surgery(j + by),
            fixed => fixed.clone(),
        };
        CompSpec { name: c.name.clone(), kind: c.kind, color }
    }
    match plan {
        Plan::Empty => Plan::Empty,
        Plan::Braid(b) => {
            let mut b = b.clone();
            b.comps = b.comps.iter().map(|c| shift_spec(c, by)).collect();
            Plan::Braid(b)
        }
        Plan::Spine(s) => {
            let mut s = s.clone();
            s.stem = shift_spec(&s.stem, by);
            for branch in s.branches.iter_mut() {
                for m in branch.iter_mut() {
                    m.comp = shift_spec(&m.comp, by);
                }
            }
            Plan::Spine(s)
        }
        Plan::Union(ps) => Plan::Union(ps.iter().map(|p| shift_slots(p, by)).collect()),
        Plan::WithMeridian { base, merid, around, arc_twists } => Plan::WithMeridian {
            base: Box::new(shift_slots(base, by)),
            merid: MeridSpec {
                comp: shift_spec(&merid.comp, by),
                twists: merid.twists,
                chirality: merid.chirality,
            },
            around: around.clone(),
            arc_twists: *arc_twists,
        },
    }
}

/// Connected sum at presentation level: disjoint union of presentations and
/// graphs, ω concatenated.
pub fn connected_sum(s1: &SurgeryTriple, s2: &SurgeryTriple) -> SurgeryTriple {
    let shifted = shift_slots(&s2.plan, s1.omega.len());
    let mut omega = s1.omega.clone();
    omega.extend(&s2.omega);
    SurgeryTriple {
        plan: Plan::Union(vec![s1.plan.clone(), shifted]),
        omega,
        critical: s1.critical,
    }
}

/// N⁰: the extension of N to all compatible triples via a d-normalized
/// unknot summand.
pub fn invariant_n0(
    root: &RootData,
    s: &SurgeryTriple,
    v: &Color,
    cfg: &EngineConfig,
) -> Result<C64, SurgeryError> {
    let alpha = match v.base() {
        Color::Typical(a) => *a,
        _ => return Err(SurgeryError::Invalid("auxiliary color must be typical".into())),
    };
    let aux = SurgeryTriple {
        plan: unknot("n0aux", ColorSlot::Fixed(v.clone()), ComponentKind::Graph, 0),
        omega: vec![],
        critical: s.critical,
    };
    let sum = connected_sum(s, &aux);
    let n = invariant_n(root, &sum, cfg)?;
    Ok(n / mod_dim(root, alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::modified_eval;

    fn root2() -> RootData {
        RootData::new(2).unwrap()
    }

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn kirby_color_terms() {
        let rd = root2();
        let k = kirby_color(&rd, C64::new(1.5, 0.0), CriticalSet::IntegerClasses).unwrap();
        assert_eq!(k.terms.len(), 2);
        assert!(rd.approx_eq(k.terms[0].1, C64::new(0.5, 0.0)));
        assert!(rd.approx_eq(k.terms[1].1, C64::new(2.5, 0.0)));
        for (c, beta) in &k.terms {
            assert!(rd.approx_eq(*c, mod_dim(&rd, *beta).unwrap()));
            let deg = Color::Typical(*beta).degree(&rd);
            assert!(deg.approx_eq(&GradeClass::from_lift(C64::new(1.5, 0.0)), &rd));
        }
        // representative shift by 2r changes no coefficient
        let shifted =
            kirby_color(&rd, C64::new(1.5 + 4.0, 0.0), CriticalSet::IntegerClasses).unwrap();
        for (a, b) in k.terms.iter().zip(&shifted.terms) {
            assert!(rd.approx_eq(a.0, b.0));
        }
        assert!(kirby_color(&rd, ONE, CriticalSet::IntegerClasses).is_err());
        // the refined critical set at r = 2 admits odd integer degrees
        assert!(kirby_color(&rd, ONE, CriticalSet::ZeroOnly).is_ok());
    }

    #[test]
    fn cocycle_validation() {
        let rd = root2();
        let ok = SurgeryTriple {
            plan: unknot("L1", ColorSlot::Surgery(0), ComponentKind::Surgery { framing: 0 }, 0),
            omega: vec![C64::new(0.5, 0.0)],
            critical: CriticalSet::IntegerClasses,
        };
        validate_triple(&rd, &ok).unwrap();
        assert!(is_computable(&rd, &ok));
        // +1-framed unknot with α = 1/2 violates 1·α ≡ 0
        let bad = SurgeryTriple {
            plan: unknot("L1", ColorSlot::Surgery(0), ComponentKind::Surgery { framing: 1 }, 1),
            omega: vec![C64::new(0.5, 0.0)],
            critical: CriticalSet::IntegerClasses,
        };
        assert!(matches!(validate_triple(&rd, &bad), Err(SurgeryError::Cocycle(_))));
    }

    #[test]
    fn empty_surgery_with_graph_is_computable() {
        let rd = root2();
        let s = SurgeryTriple {
            plan: unknot("T", ColorSlot::Fixed(Color::typical(0.5)), ComponentKind::Graph, 0),
            omega: vec![],
            critical: CriticalSet::IntegerClasses,
        };
        validate_triple(&rd, &s).unwrap();
        assert!(is_computable(&rd, &s));
        let n = invariant_n(&rd, &s, &cfg()).unwrap();
        assert!(rd.approx_eq(n, mod_dim(&rd, C64::new(0.5, 0.0)).unwrap()));
    }

    #[test]
    fn s1xs2_values() {
        let rd = root2();
        let make = |alpha: C64, critical| SurgeryTriple {
            plan: unknot("L1", ColorSlot::Surgery(0), ComponentKind::Surgery { framing: 0 }, 0),
            omega: vec![alpha],
            critical,
        };
        let n = invariant_n(&rd, &make(C64::new(0.5, 0.0), CriticalSet::IntegerClasses), &cfg())
            .unwrap();
        assert!((n - C64::new(4.0, 0.0)).norm() < 1e-9, "got {n}");
        let n2 =
            invariant_n(&rd, &make(C64::new(2.0 / 3.0, 0.0), CriticalSet::IntegerClasses), &cfg())
                .unwrap();
        assert!((n2 - C64::new(8.0 / 3.0, 0.0)).norm() < 1e-9, "got {n2}");
        // refined critical set: α = 1 gives 2/sin²(π/2) = 2
        let n3 = invariant_n(&rd, &make(ONE, CriticalSet::ZeroOnly), &cfg()).unwrap();
        assert!((n3 - C64::new(2.0, 0.0)).norm() < 1e-9, "got {n3}");
    }

    #[test]
    fn delta_independence_and_nonvanishing() {
        for r in 2..=4u32 {
            let rd = RootData::new(r).unwrap();
            let (dp, dm) = delta_pm(&rd, CriticalSet::IntegerClasses, &cfg()).unwrap();
            assert!((dp * dm).norm() > 1e-6, "r={r}: Δ+Δ− = {}", dp * dm);
        }
    }

    #[test]
    fn s3_presentations_agree() {
        let rd = root2();
        let c = Color::typical(0.5);
        let d_c = mod_dim(&rd, C64::new(0.5, 0.0)).unwrap();
        let empty = SurgeryTriple {
            plan: unknot("T", ColorSlot::Fixed(c.clone()), ComponentKind::Graph, 0),
            omega: vec![],
            critical: CriticalSet::IntegerClasses,
        };
        let n_empty = invariant_n(&rd, &empty, &cfg()).unwrap();
        assert!(rd.approx_eq(n_empty, d_c));
        // ±1-framed surgery unknot clasping a ±1-twisted graph meridian
        for sign in [1i8, -1] {
            let deg = degree_lift(&rd, &c);
            let plan = Plan::Spine(SpineSpec {
                stem: CompSpec {
                    name: "T".into(),
                    kind: ComponentKind::Graph,
                    color: ColorSlot::Fixed(c.clone()),
                },
                stem_twists: sign as i64,
                branches: vec![vec![MeridSpec {
                    comp: CompSpec {
                        name: "L1".into(),
                        kind: ComponentKind::Surgery { framing: sign as i64 },
                        color: ColorSlot::Surgery(0),
                    },
                    twists: sign as i64,
                    chirality: sign,
                }]],
            });
            let s =
                SurgeryTriple { plan, omega: vec![-deg], critical: CriticalSet::IntegerClasses };
            validate_triple(&rd, &s).unwrap();
            let n = invariant_n(&rd, &s, &cfg()).unwrap();
            assert!((n - d_c).norm() < 1e-8, "sign {sign}: N = {n}, expected {d_c}");
        }
    }

    #[test]
    fn h_stabilization_multiplies_by_pairing() {
        let rd = root2();
        let c = Color::typical(0.5);
        let base = SurgeryTriple {
            plan: unknot("T", ColorSlot::Fixed(c.clone()), ComponentKind::Graph, 0),
            omega: vec![],
            critical: CriticalSet::IntegerClasses,
        };
        let n0 = invariant_n(&rd, &base, &cfg()).unwrap();
        let g = C64::new(2.0 / 7.0, 0.0);
        let (stab, v) = h_stabilize(&rd, &base, "T", g).unwrap();
        let n1 = invariant_n(&rd, &stab, &cfg()).unwrap();
        let h = pairing_h(&rd, &v, &c, &cfg()).unwrap();
        assert!((n1 - h * n0).norm() < 1e-9, "N_stab {n1} vs ⟨H⟩N {}", h * n0);
        assert!(h.norm() > 1e-9);
    }

    #[test]
    fn n0_values() {
        let rd = root2();
        let s3 =
            SurgeryTriple { plan: Plan::Empty, omega: vec![], critical: CriticalSet::IntegerClasses };
        for a in [0.5, 1.0 / 3.0] {
            let v = Color::typical(a);
            let n = invariant_n0(&rd, &s3, &v, &cfg()).unwrap();
            assert!(rd.approx_eq(n, ONE), "aux α={a}: {n}");
        }
        // vanishing on a computable triple
        let s1s2 = SurgeryTriple {
            plan: unknot("L1", ColorSlot::Surgery(0), ComponentKind::Surgery { framing: 0 }, 0),
            omega: vec![C64::new(0.5, 0.0)],
            critical: CriticalSet::IntegerClasses,
        };
        let n = invariant_n0(&rd, &s1s2, &Color::typical(0.5), &cfg()).unwrap();
        assert!(rd.approx_zero(n), "N⁰ on computable triple: {n}");
    }

    #[test]
    fn split_vanishing() {
        let rd = root2();
        let plan = crate::builders::disjoint_union(vec![
            unknot("A", ColorSlot::Fixed(Color::typical(0.5)), ComponentKind::Graph, 0),
            unknot("B", ColorSlot::Fixed(Color::typical(0.25)), ComponentKind::Graph, 0),
        ]);
        let d = plan.compile_closed(2, &Assignment::default(), "A").unwrap();
        let v = modified_eval(&rd, &d, 0, &cfg()).unwrap();
        assert!(rd.approx_zero(v));
    }
}
