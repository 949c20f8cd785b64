//! One-variable Conway polynomial by recursive skein resolution.
//!
//! ∇(L+) − ∇(L−) = z·∇(L0) with ∇(unknot) = 1 and ∇(split) = 0. The pivot
//! crossing is the first one met going under before its over passage along a
//! canonical traversal; switching it enlarges the descending prefix and
//! smoothing drops a crossing, so the recursion terminates. Memoization is
//! keyed on the raw crossing table.

use crate::diagram::DiagramInfo;
use std::collections::BTreeMap;
use thiserror::Error;

pub const CROSSING_BUDGET: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkeinError {
    #[error("diagram has {0} crossings, budget is {CROSSING_BUDGET}")]
    Budget(usize),
    #[error("coupons are not allowed in skein input")]
    Coupons,
    #[error("skein wiring is inconsistent: {0}")]
    Wiring(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Crossing {
    sign: i8,
    u_in: u32,
    u_out: u32,
    o_in: u32,
    o_out: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tab {
    crossings: Vec<Crossing>,
    free_loops: u32,
}

/// Conway polynomial coefficients (z^0, z^1, …) of the closed link carried
/// by a traced diagram.
pub fn conway(info: &DiagramInfo) -> Result<Vec<i64>, SkeinError> {
    if info.has_coupons {
        return Err(SkeinError::Coupons);
    }
    if info.crossings.len() > CROSSING_BUDGET {
        return Err(SkeinError::Budget(info.crossings.len()));
    }
    // compact edge relabeling
    let mut remap: BTreeMap<usize, u32> = BTreeMap::new();
    let mut fresh = |e: usize, remap: &mut BTreeMap<usize, u32>| -> u32 {
        let next = remap.len() as u32;
        *remap.entry(e).or_insert(next)
    };
    let crossings: Vec<Crossing> = info
        .crossings
        .iter()
        .map(|c| Crossing {
            sign: c.sign,
            u_in: fresh(c.under_in, &mut remap),
            u_out: fresh(c.under_out, &mut remap),
            o_in: fresh(c.over_in, &mut remap),
            o_out: fresh(c.over_out, &mut remap),
        })
        .collect();
    let tab = Tab { crossings, free_loops: info.free_loops.iter().sum::<usize>() as u32 };
    let mut memo: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    resolve(&tab, &mut memo)
}

fn key_of(tab: &Tab) -> Vec<i64> {
    let mut k: Vec<i64> = vec![tab.free_loops as i64];
    let mut rows: Vec<[i64; 5]> = tab
        .crossings
        .iter()
        .map(|c| [c.sign as i64, c.u_in as i64, c.u_out as i64, c.o_in as i64, c.o_out as i64])
        .collect();
    rows.sort();
    for r in rows {
        k.extend_from_slice(&r);
    }
    k
}

fn poly_add(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i] += c;
    }
}

fn poly_shift_scale(p: &[i64], s: i64) -> Vec<i64> {
    // s·z·p
    let mut out = vec![0i64; p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] = s * c;
    }
    out
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn resolve(tab: &Tab, memo: &mut BTreeMap<Vec<i64>, Vec<i64>>) -> Result<Vec<i64>, SkeinError> {
    let key = key_of(tab);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let result = match first_bad_crossing(tab)? {
        None => {
            // descending diagram: an unlink
            let comps = component_count(tab)? + tab.free_loops as usize;
            if comps == 1 {
                vec![1]
            } else {
                vec![]
            }
        }
        Some(idx) => {
            let switched = switch(tab, idx);
            let smoothed = smooth(tab, idx);
            let a = resolve(&switched, memo)?;
            let b = resolve(&smoothed, memo)?;
            // positive pivot: ∇(D) = ∇(D_switched) + z ∇(D0); negative: − z
            let s = tab.crossings[idx].sign as i64;
            let mut out = a;
            poly_add(&mut out, &poly_shift_scale(&b, s));
            trim(out)
        }
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// Successor map along orientation: edge → (crossing, under?) where it ends.
fn ends(tab: &Tab) -> Result<BTreeMap<u32, (usize, bool)>, SkeinError> {
    let mut m = BTreeMap::new();
    for (i, c) in tab.crossings.iter().enumerate() {
        if m.insert(c.u_in, (i, true)).is_some() {
            return Err(SkeinError::Wiring("edge ends twice".into()));
        }
        if m.insert(c.o_in, (i, false)).is_some() {
            return Err(SkeinError::Wiring("edge ends twice".into()));
        }
    }
    Ok(m)
}

fn component_count(tab: &Tab) -> Result<usize, SkeinError> {
    let ends = ends(tab)?;
    let mut seen: BTreeMap<u32, bool> = BTreeMap::new();
    let mut comps = 0;
    let start_edges: Vec<u32> = ends.keys().copied().collect();
    for e0 in start_edges {
        if seen.contains_key(&e0) {
            continue;
        }
        comps += 1;
        let mut e = e0;
        loop {
            seen.insert(e, true);
            let &(ci, under) = ends
                .get(&e)
                .ok_or_else(|| SkeinError::Wiring("dangling edge".into()))?;
            let c = &tab.crossings[ci];
            e = if under { c.u_out } else { c.o_out };
            if e == e0 {
                break;
            }
            if seen.contains_key(&e) {
                return Err(SkeinError::Wiring("edge revisited".into()));
            }
        }
    }
    Ok(comps)
}

/// Walk components in canonical order; report the first crossing whose first
/// visit happens on the under strand.
fn first_bad_crossing(tab: &Tab) -> Result<Option<usize>, SkeinError> {
    let ends = ends(tab)?;
    let mut visited_edge: BTreeMap<u32, bool> = BTreeMap::new();
    let mut visited_crossing = vec![false; tab.crossings.len()];
    let start_edges: Vec<u32> = ends.keys().copied().collect();
    for e0 in start_edges {
        if visited_edge.contains_key(&e0) {
            continue;
        }
        let mut e = e0;
        loop {
            visited_edge.insert(e, true);
            let &(ci, under) = ends.get(&e).expect("checked in ends()");
            if !visited_crossing[ci] {
                if under {
                    return Ok(Some(ci));
                }
                visited_crossing[ci] = true;
            }
            let c = &tab.crossings[ci];
            e = if under { c.u_out } else { c.o_out };
            if e == e0 {
                break;
            }
        }
    }
    Ok(None)
}

fn switch(tab: &Tab, idx: usize) -> Tab {
    let mut out = tab.clone();
    let c = out.crossings[idx];
    out.crossings[idx] = Crossing {
        sign: -c.sign,
        u_in: c.o_in,
        u_out: c.o_out,
        o_in: c.u_in,
        o_out: c.u_out,
    };
    out
}

/// Oriented smoothing: under-in flows to over-out and over-in to under-out.
fn smooth(tab: &Tab, idx: usize) -> Tab {
    let removed = tab.crossings[idx];
    let mut crossings: Vec<Crossing> =
        tab.crossings.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, c)| *c).collect();
    let mut free_loops = tab.free_loops;
    let mut relabel = |from: u32, to: u32, crossings: &mut Vec<Crossing>| {
        for c in crossings.iter_mut() {
            for e in [&mut c.u_in, &mut c.u_out, &mut c.o_in, &mut c.o_out] {
                if *e == from {
                    *e = to;
                }
            }
        }
    };
    // join u_in → o_out
    let (mut a, b) = (removed.u_in, removed.o_out);
    if a == b {
        free_loops += 1;
        a = u32::MAX; // consumed
    } else {
        relabel(b, a, &mut crossings);
    }
    // join o_in → u_out, following the first merge
    let map1 = |e: u32| if e == b && a != u32::MAX { a } else { e };
    let (c1, d1) = (map1(removed.o_in), map1(removed.u_out));
    if c1 == d1 {
        free_loops += 1;
    } else {
        relabel(d1, c1, &mut crossings);
    }
    Tab { crossings, free_loops }
}
