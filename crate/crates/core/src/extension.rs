//! Middle terms of extensions and Ptolemy arcs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arc::{relation, same_weight, suspend, to_coord, Arc, RelationKind};
use crate::error::{Error, Result};
use crate::hammock::{
    ext_dim, hammock_side, hom_dim, in_eminus, in_eplus, in_hplus, v_index, CohomologyVector,
    HammockSide,
};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PtolemyArcs {
    pub class_i: BTreeSet<Arc>,
    pub class_ii: BTreeSet<Arc>,
    pub class_iii: BTreeSet<Arc>,
}

impl PtolemyArcs {
    pub fn all(&self) -> BTreeSet<Arc> {
        let mut out = self.class_i.clone();
        out.extend(self.class_ii.iter().copied());
        out.extend(self.class_iii.iter().copied());
        out
    }

    pub fn is_empty(&self) -> bool {
        self.class_i.is_empty() && self.class_ii.is_empty() && self.class_iii.is_empty()
    }
}

/// Ptolemy arcs of a pair. Class II needs `w <= 0`, class III needs `w = 0`.
pub fn ptolemy_arcs(a: &Arc, b: &Arc) -> Result<PtolemyArcs> {
    let rel = relation(a, b)?;
    let w = a.weight();
    let mut out = PtolemyArcs::default();
    let push = |set: &mut BTreeSet<Arc>, x: i64, y: i64| {
        if let Ok(c) = Arc::new(w, x, y) {
            set.insert(c);
        }
    };
    match rel.kind {
        RelationKind::Crossing => {
            for x in a.endpoints() {
                for y in b.endpoints() {
                    push(&mut out.class_i, x, y);
                }
            }
        }
        RelationKind::Neighbouring(_) if w.0 <= 0 => {
            let (ea, eb) = (a.endpoints(), b.endpoints());
            for i in 0..2 {
                for j in 0..2 {
                    if (ea[i] - eb[j]).abs() == 1 {
                        push(&mut out.class_ii, ea[1 - i], eb[1 - j]);
                    }
                }
            }
        }
        RelationKind::Adjacent(v) => {
            push(&mut out.class_iii, v, v);
            push(&mut out.class_iii, a.other(v), b.other(v));
        }
        RelationKind::Equal if w.0 == 0 && !a.is_loop() => {
            push(&mut out.class_iii, a.s(), a.s());
            push(&mut out.class_iii, a.e(), a.e());
        }
        _ => {}
    }
    Ok(out)
}

/// One non-split triangle `first -> middles -> last -> Sigma first`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionClass {
    pub first: Arc,
    pub last: Arc,
    pub middles: Vec<Arc>,
    pub side: HammockSide,
}

/// The two candidate summands `(e', e'')`; `e''` is the one ending at `e(a)`.
pub fn middle_pair(a: &Arc, b: &Arc, side: HammockSide) -> (Option<Arc>, Option<Arc>) {
    let w = a.weight();
    match side {
        HammockSide::Forward | HammockSide::BothW0SigmaA => {
            (Arc::oriented(w, a.s(), b.e()), Arc::oriented(w, b.s(), a.e()))
        }
        HammockSide::Backward => (Arc::oriented(w, b.s(), a.s()), Arc::oriented(w, b.e(), a.e())),
        HammockSide::None => (None, None),
    }
}

fn class(a: &Arc, b: &Arc, side: HammockSide) -> ExtensionClass {
    let (e1, e2) = middle_pair(a, b, side);
    ExtensionClass { first: *a, last: *b, middles: e1.into_iter().chain(e2).collect(), side }
}

/// Basis extensions `a -> e -> b`; empty when `Ext^1(b, a) = 0`.
pub fn middle_terms(a: &Arc, b: &Arc) -> Result<Vec<ExtensionClass>> {
    if ext_dim(b, a)? == 0 {
        return Ok(Vec::new());
    }
    match hammock_side(b, a)? {
        HammockSide::BothW0SigmaA => Ok(vec![
            class(a, b, HammockSide::Forward),
            ExtensionClass { first: *a, last: *b, middles: Vec::new(), side: HammockSide::BothW0SigmaA },
        ]),
        HammockSide::None => Err(Error::ValidationFailure(format!(
            "{b} has nonzero Ext against {a} but lies in neither partial fountain"
        ))),
        side => Ok(vec![class(a, b, side)]),
    }
}

/// Middle summands over both directions, excluding the outer arcs.
pub fn e_set(a: &Arc, b: &Arc) -> Result<BTreeSet<Arc>> {
    let mut out = BTreeSet::new();
    for c in middle_terms(a, b)?.into_iter().chain(middle_terms(b, a)?) {
        out.extend(c.middles);
    }
    out.remove(a);
    out.remove(b);
    Ok(out)
}

/// Closed-form cohomology of the middle term of `a -> e -> b` on the given side.
pub fn middle_cohomology(a: &Arc, b: &Arc, side: HammockSide) -> Result<CohomologyVector> {
    if ext_dim(b, a)? == 0 {
        return Err(Error::NoExtension(format!("Ext^1({b}, {a}) = 0")));
    }
    let d = a.weight().d();
    let (ca, cb) = (to_coord(a), to_coord(b));
    let (p, r, q, jb) = (ca.i, ca.j, cb.i, cb.j);
    let mut h = CohomologyVector::new();
    match side {
        HammockSide::BothW0SigmaA => {}
        HammockSide::Forward => {
            if !in_eplus(b, a) {
                return Err(Error::NotInHammock(b.to_string(), a.to_string()));
            }
            let s = (p - q) / d;
            let i = r + s - jb;
            for t in 1..=s {
                h.add(t * d - p, 1);
            }
            for t in 0..=(r - i) {
                h.add(-t * d - p, 2);
            }
            for t in (r - i + 1)..=r {
                h.add(-t * d - p, 1);
            }
        }
        HammockSide::Backward => {
            if !in_eminus(b, a) {
                return Err(Error::NotInHammock(b.to_string(), a.to_string()));
            }
            let i = (q - p - 1) / d;
            let s = jb - r + i;
            for t in 0..i {
                h.add(-t * d - p, 1);
            }
            for t in 1..=s {
                h.add(-(r + t) * d - 1 - p, 1);
            }
        }
        HammockSide::None => return Err(Error::NotInHammock(b.to_string(), a.to_string())),
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalKind {
    Ray,
    Coray,
}

/// Extended ray or coray of a hammock member: every arc through one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedInterval {
    pub kind: IntervalKind,
    pub vertex: i64,
}

impl ExtendedInterval {
    pub fn contains(&self, x: &Arc) -> bool {
        x.incident(self.vertex)
    }
}

fn side_of(b: &Arc, a: &Arc) -> Result<HammockSide> {
    same_weight(a, b)?;
    if in_eplus(b, a) {
        Ok(HammockSide::Forward)
    } else if in_eminus(b, a) {
        Ok(HammockSide::Backward)
    } else {
        Err(Error::NotInHammock(b.to_string(), a.to_string()))
    }
}

/// Vertex of `b` lying in `V_a`: the start for forward members, the end for backward ones.
pub fn key_vertex(a: &Arc, b: &Arc) -> Result<i64> {
    Ok(match side_of(b, a)? {
        HammockSide::Forward => b.s(),
        _ => b.e(),
    })
}

pub fn extended_interval(a: &Arc, b: &Arc, kind: IntervalKind) -> Result<ExtendedInterval> {
    let k = key_vertex(a, b)?;
    let vertex = match kind {
        IntervalKind::Ray => k,
        IntervalKind::Coray => b.other(k),
    };
    Ok(ExtendedInterval { kind, vertex })
}

fn ray_index(a: &Arc, b: &Arc) -> Result<i64> {
    let k = key_vertex(a, b)?;
    v_index(a, k).ok_or_else(|| Error::ValidationFailure(format!("key vertex {k} of {b} not in V_{a}")))
}

/// Total preorder on extended rays, by position of the key vertex in `V_a`.
pub fn exray_leq(a: &Arc, b1: &Arc, b2: &Arc) -> Result<bool> {
    Ok(ray_index(a, b1)? <= ray_index(a, b2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapClass {
    /// No choice involved.
    Generic,
    /// The component on `Sigma a` is an isomorphism.
    Isomorphism,
    /// The component on `Sigma a` is not an isomorphism.
    NonIsomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiClass {
    pub map: MapClass,
    pub middles: Vec<Arc>,
}

/// `split_off` was removed unchanged because its map factors through the map on `through`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub split_off: Arc,
    pub through: Arc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiExtension {
    pub classes: Vec<MultiClass>,
    pub reductions: Vec<Reduction>,
}

/// Which of two non-orthogonal summands splits off, given `Hom(b1, b2) != 0`.
fn split_choice(a: &Arc, b1: &Arc, b2: &Arc) -> (Arc, Arc) {
    let d = a.weight().d();
    let b1_splits = in_eplus(b1, a)
        || (in_eminus(b1, a) && in_hplus(to_coord(b1), to_coord(b2), d) && in_eminus(b2, a));
    if b1_splits {
        (*b1, *b2)
    } else {
        (*b2, *b1)
    }
}

fn find_reduction(a: &Arc, bs: &[Arc]) -> Result<Option<(usize, Reduction)>> {
    for i in 0..bs.len() {
        for j in (i + 1)..bs.len() {
            let (x, y) = (&bs[i], &bs[j]);
            let pick = if x == y {
                Some((*y, *x))
            } else if hom_dim(x, y)? != 0 {
                Some(split_choice(a, x, y))
            } else if hom_dim(y, x)? != 0 {
                Some(split_choice(a, y, x))
            } else {
                None
            };
            if let Some((split_off, through)) = pick {
                let idx = if split_off == *y { j } else { i };
                return Ok(Some((idx, Reduction { split_off, through })));
            }
        }
    }
    Ok(None)
}

/// Middle term for pairwise Hom-orthogonal summands, none equal to `Sigma a` when `w = 0`.
fn orthogonal_middle(a: &Arc, bs: &[Arc]) -> Result<Vec<Arc>> {
    let mut keyed = Vec::with_capacity(bs.len());
    for b in bs {
        keyed.push((ray_index(a, b)?, *b));
    }
    keyed.sort();
    let w = a.weight();
    let mut out = Vec::new();
    let first = keyed[0].1;
    out.extend(middle_pair(a, &first, side_of(&first, a)?).0);
    for pair in keyed.windows(2) {
        let (bi, bj) = (pair[0].1, pair[1].1);
        let k = key_vertex(a, &bi)?;
        let kj = key_vertex(a, &bj)?;
        let o = bj.other(kj);
        let x = match side_of(&bj, a)? {
            HammockSide::Forward => Arc::oriented(w, k, o),
            _ => Arc::oriented(w, o, k),
        };
        out.extend(x);
    }
    let last = keyed[keyed.len() - 1].1;
    out.extend(middle_pair(a, &last, side_of(&last, a)?).1);
    Ok(out)
}

fn generic_multi(a: &Arc, bs: &[Arc], reductions: &mut Vec<Reduction>) -> Result<Vec<Arc>> {
    let mut rest = bs.to_vec();
    let mut split = Vec::new();
    while let Some((idx, red)) = find_reduction(a, &rest)? {
        rest.remove(idx);
        split.push(red.split_off);
        reductions.push(red);
    }
    let mut out = if rest.len() == 1 {
        let (e1, e2) = middle_pair(a, &rest[0], side_of(&rest[0], a)?);
        e1.into_iter().chain(e2).collect()
    } else {
        orthogonal_middle(a, &rest)?
    };
    out.extend(split);
    Ok(out)
}

/// Middle term of `a -> e -> b_1 + ... + b_m` with every `h_i` nonzero.
pub fn middle_term_multi(a: &Arc, bs: &[Arc]) -> Result<MultiExtension> {
    if bs.is_empty() {
        return Err(Error::EmptyInput);
    }
    for b in bs {
        if ext_dim(b, a)? == 0 {
            return Err(Error::NotInHammock(b.to_string(), a.to_string()));
        }
    }
    let mut reductions = Vec::new();
    let sigma_a = suspend(a);
    let mut bs = bs.to_vec();
    if a.weight().0 == 0 && bs.contains(&sigma_a) {
        // duplicates of Sigma a split off first
        let pos = bs.iter().position(|b| *b == sigma_a).unwrap();
        bs.remove(pos);
        let mut extra = Vec::new();
        while let Some(p) = bs.iter().position(|b| *b == sigma_a) {
            bs.remove(p);
            extra.push(sigma_a);
            reductions.push(Reduction { split_off: sigma_a, through: sigma_a });
        }
        let classes = if bs.is_empty() {
            middle_terms(a, &sigma_a)?
                .into_iter()
                .map(|c| MultiClass {
                    map: if c.middles.is_empty() { MapClass::Isomorphism } else { MapClass::NonIsomorphism },
                    middles: c.middles.into_iter().chain(extra.iter().copied()).collect(),
                })
                .collect()
        } else {
            let mut iso: Vec<Arc> = bs.clone();
            iso.extend(extra.iter().copied());
            let mut non = generic_multi(a, &bs, &mut reductions)?;
            non.push(sigma_a);
            non.extend(extra.iter().copied());
            vec![
                MultiClass { map: MapClass::Isomorphism, middles: iso },
                MultiClass { map: MapClass::NonIsomorphism, middles: non },
            ]
        };
        return Ok(MultiExtension { classes, reductions });
    }
    let middles = generic_multi(a, &bs, &mut reductions)?;
    Ok(MultiExtension { classes: vec![MultiClass { map: MapClass::Generic, middles }], reductions })
}

/// As `middle_term_multi`, but rejects inputs that are not pairwise Hom-orthogonal.
pub fn middle_term_multi_strict(a: &Arc, bs: &[Arc]) -> Result<MultiExtension> {
    let m = middle_term_multi(a, bs)?;
    match m.reductions.first() {
        Some(r) => Err(Error::NonOrthogonalInput(format!(
            "the map on {} factors through the map on {}",
            r.split_off, r.through
        ))),
        None => Ok(m),
    }
}
