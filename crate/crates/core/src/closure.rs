//! Extension closures, fountains and torsion classes in the arc model.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arc::{arcs_in_window, to_coord, Arc, Weight};
use crate::error::{Error, Result};
use crate::extension::{e_set, ptolemy_arcs};
use crate::hammock::hom_dim;

/// Default half-width of report windows.
pub const DEFAULT_WINDOW: i64 = 40;

/// Least superset of `x` closed under `step` applied to all pairs, self-pairs included.
fn saturate<F>(x: &BTreeSet<Arc>, step: F) -> Result<BTreeSet<Arc>>
where
    F: Fn(&Arc, &Arc) -> Result<BTreeSet<Arc>>,
{
    let mut all: Vec<Arc> = x.iter().copied().collect();
    let mut seen = x.clone();
    let mut k = 0;
    while k < all.len() {
        let a = all[k];
        for j in 0..=k {
            for c in step(&a, &all[j])? {
                if seen.insert(c) {
                    all.push(c);
                }
            }
        }
        k += 1;
    }
    Ok(seen)
}

pub fn ptolemy_closure(x: &BTreeSet<Arc>) -> Result<BTreeSet<Arc>> {
    saturate(x, |a, b| Ok(ptolemy_arcs(a, b)?.all()))
}

/// Closure under middle terms of extensions; shares no code with the Ptolemy rules.
pub fn extension_closure_oracle(x: &BTreeSet<Arc>) -> Result<BTreeSet<Arc>> {
    saturate(x, e_set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Arcs `{vertex, x}` with `x <= from` (left) or `x >= from` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FountainDescriptor {
    pub vertex: i64,
    pub side: Side,
    pub from: i64,
}

impl FountainDescriptor {
    fn validate(&self, w: Weight) -> Result<()> {
        let on_side = match self.side {
            Side::Left => self.from <= self.vertex,
            Side::Right => self.from >= self.vertex,
        };
        if on_side && Arc::new(w, self.vertex, self.from).is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidArc(self.vertex, self.from, w.0))
        }
    }

    pub fn contains(&self, a: &Arc) -> bool {
        if !a.incident(self.vertex) {
            return false;
        }
        let x = a.other(self.vertex);
        match self.side {
            Side::Left => x <= self.from,
            Side::Right => x >= self.from,
        }
    }

    /// Generated arcs whose free endpoint lies in `[lo, hi]`.
    pub fn instantiate(&self, w: Weight, lo: i64, hi: i64) -> Vec<Arc> {
        let (a, b) = match self.side {
            Side::Left => (lo, self.from.min(hi)),
            Side::Right => (self.from.max(lo), hi),
        };
        (a..=b).filter_map(|x| Arc::new(w, self.vertex, x).ok()).collect()
    }
}

/// Finite arcs plus fountain generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::DescriptorDoc", into = "crate::io::DescriptorDoc")]
pub struct DescriptorSet {
    pub w: Weight,
    pub arcs: BTreeSet<Arc>,
    pub fountains: BTreeSet<FountainDescriptor>,
}

impl DescriptorSet {
    /// Validates generators and drops finite arcs already generated by a fountain.
    pub fn new(
        w: Weight,
        arcs: impl IntoIterator<Item = Arc>,
        fountains: impl IntoIterator<Item = FountainDescriptor>,
    ) -> Result<DescriptorSet> {
        let w = Weight::arc_model(w.0)?;
        let fountains: BTreeSet<_> = fountains.into_iter().collect();
        for f in &fountains {
            f.validate(w)?;
        }
        let mut arcs_out = BTreeSet::new();
        for a in arcs {
            if a.weight() != w {
                return Err(Error::WeightMismatch(w.0, a.weight().0));
            }
            if !fountains.iter().any(|f| f.contains(&a)) {
                arcs_out.insert(a);
            }
        }
        Ok(DescriptorSet { w, arcs: arcs_out, fountains })
    }

    pub fn finite(w: Weight, arcs: impl IntoIterator<Item = Arc>) -> Result<DescriptorSet> {
        DescriptorSet::new(w, arcs, [])
    }

    pub fn contains(&self, a: &Arc) -> bool {
        self.arcs.contains(a) || self.fountains.iter().any(|f| f.contains(a))
    }

    /// Every member with both endpoints in `[lo, hi]`.
    pub fn instantiate(&self, lo: i64, hi: i64) -> BTreeSet<Arc> {
        let mut out: BTreeSet<Arc> =
            self.arcs.iter().filter(|a| a.lo() >= lo && a.hi() <= hi).copied().collect();
        for f in &self.fountains {
            if (lo..=hi).contains(&f.vertex) {
                out.extend(f.instantiate(self.w, lo, hi));
            }
        }
        out
    }

    /// Smallest interval holding every finite endpoint, fountain vertex and threshold.
    pub fn span(&self) -> Option<(i64, i64)> {
        let pts = self
            .arcs
            .iter()
            .flat_map(|a| a.endpoints())
            .chain(self.fountains.iter().flat_map(|f| [f.vertex, f.from]));
        pts.fold(None, |acc, p| match acc {
            None => Some((p, p)),
            Some((lo, hi)) => Some((lo.min(p), hi.max(p))),
        })
    }

    pub fn is_finite(&self) -> bool {
        self.fountains.is_empty()
    }

    fn features_within(&self, lo: i64, hi: i64) -> bool {
        match self.span() {
            Some((a, b)) => a >= lo && b <= hi,
            None => true,
        }
    }
}

/// Window margin used before promotion.
pub fn default_margin(x: &DescriptorSet) -> i64 {
    let d = x.w.d().abs();
    let level = x.arcs.iter().map(|a| to_coord(a).j).max().unwrap_or(0);
    4 * d * (level + 1)
}

const PROMOTION_HITS: usize = 4;

/// Longest unbroken run of arcs at `v` ending at the window edge on one side.
fn edge_run(w: Weight, closed: &BTreeSet<Arc>, v: i64, side: Side, lo: i64, hi: i64) -> Option<i64> {
    let candidates: Vec<i64> = match side {
        Side::Right => (v..=hi).rev().collect(),
        Side::Left => (lo..=v).collect(),
    };
    let mut hits = 0;
    let mut from = None;
    for x in candidates {
        let Ok(a) = Arc::new(w, v, x) else { continue };
        if !closed.contains(&a) {
            break;
        }
        hits += 1;
        from = Some(x);
    }
    (hits >= PROMOTION_HITS).then_some(from).flatten()
}

fn promote(w: Weight, closed: &BTreeSet<Arc>, lo: i64, hi: i64) -> Result<DescriptorSet> {
    let mut fountains = Vec::new();
    for v in lo..=hi {
        for side in [Side::Left, Side::Right] {
            if let Some(from) = edge_run(w, closed, v, side, lo, hi) {
                fountains.push(FountainDescriptor { vertex: v, side, from });
            }
        }
    }
    DescriptorSet::new(w, closed.iter().copied(), fountains)
}

fn windowed(x: &DescriptorSet, lo: i64, hi: i64) -> Result<DescriptorSet> {
    let closed = ptolemy_closure(&x.instantiate(lo, hi))?;
    promote(x.w, &closed, lo, hi)
}

/// Closure of a finitely presented set. Fountain-bearing inputs go through
/// windowed closure and fountain promotion; the answer is accepted only when
/// doubling the margin reproduces it and all its generators sit well inside
/// the smaller window. This is a heuristic, not a proved procedure.
pub fn symbolic_closure(x: &DescriptorSet) -> Result<DescriptorSet> {
    symbolic_closure_with(x, None)
}

pub fn symbolic_closure_with(x: &DescriptorSet, margin: Option<i64>) -> Result<DescriptorSet> {
    if x.is_finite() {
        return DescriptorSet::finite(x.w, ptolemy_closure(&x.arcs)?);
    }
    let (lo, hi) = x.span().expect("fountains give a span");
    let mut b = margin.unwrap_or_else(|| default_margin(x)).max(4 * x.w.d().abs());
    let mut prev = windowed(x, lo - b, hi + b)?;
    for _ in 0..3 {
        let next = windowed(x, lo - 2 * b, hi + 2 * b)?;
        if next == prev && next.features_within(lo - b / 2, hi + b / 2) {
            return Ok(next);
        }
        prev = next;
        b *= 2;
    }
    Err(Error::NonConvergence(format!(
        "generators keep changing up to margin {b} around [{lo}, {hi}]"
    )))
}

/// Fountain condition: right fountains need a left partner for `w >= 2`, and
/// left fountains a right partner for `w <= 0`.
pub fn contravariant_finiteness_witness(x: &DescriptorSet) -> Option<FountainDescriptor> {
    let (need, partner) = if x.w.0 >= 2 { (Side::Right, Side::Left) } else { (Side::Left, Side::Right) };
    x.fountains
        .iter()
        .find(|f| f.side == need && !x.fountains.iter().any(|g| g.vertex == f.vertex && g.side == partner))
        .copied()
}

pub fn is_contravariantly_finite(x: &DescriptorSet) -> bool {
    contravariant_finiteness_witness(x).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TorsionClass,
    NotClosed { a: Arc, b: Arc, missing: Arc },
    NotContravariantlyFinite { fountain: FountainDescriptor },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub verdict: Verdict,
    /// Arcs in `window` with no nonzero Hom from any generator sampled around it.
    pub perp_sample: Vec<Arc>,
    pub window: (i64, i64),
    /// Set when fountains are present: closedness was checked on a window only.
    pub windowed: bool,
}

/// First pair of members (inside the window) with a Ptolemy arc outside `x`.
pub fn closedness_witness(x: &DescriptorSet, lo: i64, hi: i64) -> Result<Option<(Arc, Arc, Arc)>> {
    let inst: Vec<Arc> = x.instantiate(lo, hi).into_iter().collect();
    for (i, a) in inst.iter().enumerate() {
        for b in &inst[..=i] {
            if let Some(c) = ptolemy_arcs(b, a)?.all().into_iter().find(|c| !x.contains(c)) {
                return Ok(Some((*b, *a, c)));
            }
        }
    }
    Ok(None)
}

pub fn is_torsion_class(x: &DescriptorSet) -> Result<TorsionReport> {
    is_torsion_class_with(x, DEFAULT_WINDOW)
}

pub fn is_torsion_class_with(x: &DescriptorSet, window: i64) -> Result<TorsionReport> {
    let (lo, hi) = x.span().unwrap_or((0, 0));
    let (wlo, whi) = (lo - window, hi + window);
    let check = if x.is_finite() { (lo, hi) } else { (wlo, whi) };
    let verdict = if let Some((a, b, missing)) = closedness_witness(x, check.0, check.1)? {
        Verdict::NotClosed { a, b, missing }
    } else if let Some(fountain) = contravariant_finiteness_witness(x) {
        Verdict::NotContravariantlyFinite { fountain }
    } else {
        Verdict::TorsionClass
    };
    let generators = x.instantiate(wlo - 2 * window, whi + 2 * window);
    let mut perp_sample = Vec::new();
    for b in arcs_in_window(x.w, wlo, whi) {
        let mut orth = true;
        for g in &generators {
            if hom_dim(g, &b)? != 0 {
                orth = false;
                break;
            }
        }
        if orth {
            perp_sample.push(b);
        }
    }
    Ok(TorsionReport { verdict, perp_sample, window: (wlo, whi), windowed: !x.is_finite() })
}
