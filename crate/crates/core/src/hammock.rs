//! Hom and Ext dimensions in the arc model, computed three ways.
//!
//! * quiver coordinates: membership in forward/backward Hom-hammocks;
//! * partial fountains over the vertex set `V_a` (gives the hammock side);
//! * arc-level crossing/neighbouring/incidence rules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arc::{
    apply_functor, crosses, relation, same_weight, suspend, to_coord, Arc, Functor, QuiverCoord,
    RelationKind,
};
use crate::error::{Error, Result};

/// Finitely supported degree -> dimension map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyVector(pub BTreeMap<i64, u64>);

impl CohomologyVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn add_vector(&mut self, other: &CohomologyVector) {
        for (&k, &v) in &other.0 {
            self.add(k, v);
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&n, &v)| if n.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HammockSide {
    Forward,
    Backward,
    BothW0SigmaA,
    None,
}

fn exact_div(x: i64, d: i64) -> Option<i64> {
    (x % d == 0).then(|| x / d)
}

/// `b` in the forward Hom-hammock of `a`: rays out of the coray segment from `a` to the mouth.
pub(crate) fn in_hplus(a: QuiverCoord, b: QuiverCoord, d: i64) -> bool {
    match exact_div(a.i - b.i, d) {
        Some(n) => n >= 0 && b.j - n >= 0 && b.j - n <= a.j,
        None => false,
    }
}

/// `b` in the backward Hom-hammock of `x`: corays into the ray segment from the mouth to `x`.
pub(crate) fn in_hminus(x: QuiverCoord, b: QuiverCoord, d: i64) -> bool {
    match exact_div(b.i - x.i, d) {
        Some(n) => n >= 0 && n <= x.j && b.j >= x.j - n,
        None => false,
    }
}

pub fn hom_dim(a: &Arc, b: &Arc) -> Result<u32> {
    same_weight(a, b)?;
    let w = a.weight();
    if w.0 == 0 && a == b {
        return Ok(2);
    }
    let d = w.d();
    let sa = apply_functor(Functor::Serre, 1, a);
    let cb = to_coord(b);
    Ok((in_hplus(to_coord(a), cb, d) || in_hminus(to_coord(&sa), cb, d)) as u32)
}

/// `dim Ext^1(b, a) = dim Hom(b, Sigma a)`.
pub fn ext_dim(b: &Arc, a: &Arc) -> Result<u32> {
    same_weight(a, b)?;
    hom_dim(b, &suspend(a))
}

/// Coordinate test for the forward Ext-hammock `H+(tau^-1 a)`.
pub(crate) fn in_eplus(b: &Arc, a: &Arc) -> bool {
    let d = a.weight().d();
    let ta = apply_functor(Functor::Tau, -1, a);
    in_hplus(to_coord(&ta), to_coord(b), d)
}

/// Coordinate test for the backward Ext-hammock `H-(Sigma a)`.
pub(crate) fn in_eminus(b: &Arc, a: &Arc) -> bool {
    let d = a.weight().d();
    in_hminus(to_coord(&suspend(a)), to_coord(b), d)
}

/// Index of `x` in `V_a = {s + i d : 1 <= i <= k}`, where `e - s = k d + 1`.
pub fn v_index(a: &Arc, x: i64) -> Option<i64> {
    let d = a.weight().d();
    let k = (a.e() - a.s() - 1) / d;
    exact_div(x - a.s(), d).filter(|&i| (1..=k).contains(&i))
}

pub fn in_v(a: &Arc, x: i64) -> bool {
    v_index(a, x).is_some()
}

/// `b` joins a vertex of `V_a` to a vertex `>= th` (right) or `<= th` (left).
fn in_partial_fountain(a: &Arc, b: &Arc, th: i64, right: bool) -> bool {
    [(b.t(), b.u()), (b.u(), b.t())]
        .into_iter()
        .any(|(v, x)| in_v(a, v) && if right { x >= th } else { x <= th })
}

/// Membership of `b` in the forward and backward partial fountains of `a`.
pub fn fountain_sides(b: &Arc, a: &Arc) -> (bool, bool) {
    let w = a.weight().0;
    let fwd_th = a.e() + a.weight().d();
    let bwd_th = a.s() - 1;
    if w >= 2 {
        (in_partial_fountain(a, b, fwd_th, true), in_partial_fountain(a, b, bwd_th, false))
    } else {
        (in_partial_fountain(a, b, fwd_th, false), in_partial_fountain(a, b, bwd_th, true))
    }
}

pub fn hammock_side(b: &Arc, a: &Arc) -> Result<HammockSide> {
    if ext_dim(b, a)? == 0 {
        return Err(Error::NoExtension(format!("Ext^1({b}, {a}) = 0")));
    }
    if a.weight().0 == 0 && *b == suspend(a) {
        return Ok(HammockSide::BothW0SigmaA);
    }
    Ok(match fountain_sides(b, a) {
        (true, _) => HammockSide::Forward,
        (false, true) => HammockSide::Backward,
        (false, false) => HammockSide::None,
    })
}

/// Ext dimension from the arc-level rules alone.
pub fn ext_dim_arc(b: &Arc, a: &Arc) -> Result<u32> {
    let rel = relation(a, b)?;
    let w = a.weight().0;
    let (s, e) = (a.s(), a.e());
    let neighbours = matches!(rel.kind, RelationKind::Neighbouring(_));
    let near_mouth = b.incident(s - 1) || b.incident(e - 1);
    let sigma_a = suspend(a);
    let v_incident = |skip: Option<i64>| {
        b.endpoints().into_iter().any(|x| in_v(a, x) && Some(x) != skip)
    };
    let hit = if w >= 2 {
        crosses(a, b) && v_incident(None)
    } else if w <= -1 {
        (crosses(a, b) && v_incident(Some(e - 1))) || (neighbours && near_mouth) || *b == sigma_a
    } else {
        if *b == sigma_a {
            return Ok(2);
        }
        let cond2 = neighbours && near_mouth;
        let cond5 = b.s() == s && e - 1 <= b.e() && b.e() <= s - 1;
        if a.is_loop() {
            cond2 || cond5
        } else {
            crosses(a, b)
                || cond2
                || (b.s() == e && b.e() <= e - 1)
                || (b.e() == e && b.s() >= s - 1)
                || cond5
        }
    };
    Ok(hit as u32)
}

/// Cohomology of `Sigma^i X_j`: one-dimensional in degrees `-i, -i-d, ..., -i-jd`.
pub fn cohomology(a: &Arc) -> CohomologyVector {
    let c = to_coord(a);
    let d = a.weight().d();
    let mut h = CohomologyVector::new();
    for k in 0..=c.j {
        h.add(-c.i - k * d, 1);
    }
    h
}
