//! Arcs of the infinity-gon and their combinatorics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The weight `w` of the spherical generator. `d = w - 1` is the step of the
/// AR translate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub i64);

impl Weight {
    /// Weight usable with the arc model; `w = 1` is rejected.
    pub fn arc_model(w: i64) -> Result<Weight> {
        if w == 1 {
            Err(Error::WeightHasNoArcModel)
        } else {
            Ok(Weight(w))
        }
    }

    pub fn w(self) -> i64 {
        self.0
    }

    pub fn d(self) -> i64 {
        self.0 - 1
    }
}

/// Admissibility of an oriented pair: the length condition for the sign of `w`.
pub(crate) fn oriented_admissible(w: i64, t: i64, u: i64) -> bool {
    let d = w - 1;
    let diff = u - t;
    match w {
        0 => diff <= 0,
        w if w >= 2 => diff >= w && (diff - 1).rem_euclid(d) == 0,
        w if w <= -1 => diff <= w && (diff - 1).rem_euclid(-d) == 0,
        _ => false,
    }
}

/// Storage orientation: increasing for `w >= 2`, non-increasing otherwise.
fn orient(w: i64, x: i64, y: i64) -> (i64, i64) {
    if w >= 2 {
        (x.min(y), x.max(y))
    } else {
        (x.max(y), x.min(y))
    }
}

/// Whether the unordered pair `{x, y}` is an admissible arc for `w`.
pub fn is_admissible(w: Weight, x: i64, y: i64) -> Result<bool> {
    let w = Weight::arc_model(w.0)?;
    let (t, u) = orient(w.0, x, y);
    Ok(oriented_admissible(w.0, t, u))
}

/// An admissible arc `(t, u)`. Fields are private so every value is admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawArc", into = "RawArc")]
pub struct Arc {
    t: i64,
    u: i64,
    w: Weight,
}

#[derive(Serialize, Deserialize)]
struct RawArc {
    t: i64,
    u: i64,
    w: i64,
}

impl TryFrom<RawArc> for Arc {
    type Error = Error;
    fn try_from(r: RawArc) -> Result<Arc> {
        Arc::new(Weight(r.w), r.t, r.u)
    }
}

impl From<Arc> for RawArc {
    fn from(a: Arc) -> RawArc {
        RawArc { t: a.t, u: a.u, w: a.w.0 }
    }
}

impl Arc {
    /// Canonicalises the unordered pair and checks admissibility.
    pub fn new(w: Weight, x: i64, y: i64) -> Result<Arc> {
        let w = Weight::arc_model(w.0)?;
        let (t, u) = orient(w.0, x, y);
        if oriented_admissible(w.0, t, u) {
            Ok(Arc { t, u, w })
        } else {
            Err(Error::InvalidArc(x, y, w.0))
        }
    }

    /// The oriented pair `(t, u)` as an arc, if it is admissible in that orientation.
    pub fn oriented(w: Weight, t: i64, u: i64) -> Option<Arc> {
        (w.0 != 1 && oriented_admissible(w.0, t, u)).then_some(Arc { t, u, w })
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    /// Starting point.
    pub fn s(&self) -> i64 {
        self.t
    }

    /// Ending point.
    pub fn e(&self) -> i64 {
        self.u
    }

    pub fn weight(&self) -> Weight {
        self.w
    }

    pub fn len(&self) -> i64 {
        (self.u - self.t).abs()
    }

    pub fn is_loop(&self) -> bool {
        self.t == self.u
    }

    pub fn lo(&self) -> i64 {
        self.t.min(self.u)
    }

    pub fn hi(&self) -> i64 {
        self.t.max(self.u)
    }

    pub fn endpoints(&self) -> [i64; 2] {
        [self.t, self.u]
    }

    pub fn incident(&self, v: i64) -> bool {
        self.t == v || self.u == v
    }

    /// The endpoint other than `v` (for a loop, `v` itself).
    pub fn other(&self, v: i64) -> i64 {
        if self.t == v {
            self.u
        } else {
            self.t
        }
    }

    fn shifted(&self, by: i64) -> Arc {
        Arc { t: self.t + by, u: self.u + by, w: self.w }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Functor {
    Suspend,
    Tau,
    Serre,
}

/// `f^k a`; all three functors act by translation.
pub fn apply_functor(f: Functor, k: i64, a: &Arc) -> Arc {
    let step = match f {
        Functor::Suspend => 1,
        Functor::Tau => a.w.d(),
        Functor::Serre => a.w.0,
    };
    a.shifted(-k * step)
}

pub fn suspend(a: &Arc) -> Arc {
    apply_functor(Functor::Suspend, 1, a)
}

/// `Sigma^i X_j`: suspension exponent `i`, level `j >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuiverCoord {
    pub i: i64,
    pub j: i64,
}

pub fn to_coord(a: &Arc) -> QuiverCoord {
    let d = a.w.d();
    QuiverCoord { i: -a.u, j: (a.u - a.t - 1) / d - 1 }
}

pub fn from_coord(w: Weight, c: QuiverCoord) -> Result<Arc> {
    let w = Weight::arc_model(w.0)?;
    let d = w.d();
    let (t, u) = (-(c.j + 1) * d - 1 - c.i, -c.i);
    if c.j < 0 {
        return Err(Error::InvalidArc(t, u, w.0));
    }
    Arc::oriented(w, t, u).ok_or(Error::InvalidArc(t, u, w.0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    Equal,
    Crossing,
    /// Pairs `(x, y)` with `x` an endpoint of the first arc, `y` of the second, `|x - y| = 1`.
    Neighbouring(Vec<(i64, i64)>),
    /// Shared vertex of two distinct non-loop arcs (w = 0 only).
    Adjacent(i64),
    Disjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub distance: i64,
}

pub(crate) fn same_weight(a: &Arc, b: &Arc) -> Result<()> {
    if a.w == b.w {
        Ok(())
    } else {
        Err(Error::WeightMismatch(a.w.0, b.w.0))
    }
}

pub fn crosses(a: &Arc, b: &Arc) -> bool {
    let (p, q, r, s) = (a.lo(), a.hi(), b.lo(), b.hi());
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

pub fn distance(a: &Arc, b: &Arc) -> i64 {
    let mut best = i64::MAX;
    for x in a.endpoints() {
        for y in b.endpoints() {
            best = best.min((x - y).abs());
        }
    }
    best
}

pub fn relation(a: &Arc, b: &Arc) -> Result<Relation> {
    same_weight(a, b)?;
    let distance = distance(a, b);
    let kind = if a == b {
        RelationKind::Equal
    } else if crosses(a, b) {
        RelationKind::Crossing
    } else if distance == 1 {
        let mut pairs = Vec::new();
        for x in a.endpoints() {
            for y in b.endpoints() {
                if (x - y).abs() == 1 && !pairs.contains(&(x, y)) {
                    pairs.push((x, y));
                }
            }
        }
        RelationKind::Neighbouring(pairs)
    } else if a.w.0 == 0 && distance == 0 && !a.is_loop() && !b.is_loop() {
        let v = a.endpoints().into_iter().find(|&v| b.incident(v)).unwrap();
        RelationKind::Adjacent(v)
    } else {
        RelationKind::Disjoint
    };
    Ok(Relation { kind, distance })
}

/// All admissible arcs with both endpoints in `[lo, hi]`.
pub fn arcs_in_window(w: Weight, lo: i64, hi: i64) -> Vec<Arc> {
    let mut out = Vec::new();
    for x in lo..=hi {
        for y in x..=hi {
            if let Ok(a) = Arc::new(w, x, y) {
                out.push(a);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const WEIGHTS: [i64; 7] = [-3, -2, -1, 0, 2, 3, 4];

    fn arc(w: i64, x: i64, y: i64) -> Arc {
        Arc::new(Weight(w), x, y).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(Weight(2), 0, 3).unwrap());
        assert!(is_admissible(Weight(-2), 5, 0).unwrap());
        assert!(is_admissible(Weight(0), 4, 4).unwrap());
        assert!(!is_admissible(Weight(3), 0, 2).unwrap());
        assert_eq!(is_admissible(Weight(1), 0, 3), Err(Error::WeightHasNoArcModel));
        assert!(is_admissible(Weight(-2), 0, 5).unwrap());
    }

    #[test]
    fn functor_examples() {
        assert_eq!(apply_functor(Functor::Suspend, 1, &arc(2, 0, 3)), arc(2, -1, 2));
        assert_eq!(apply_functor(Functor::Serre, 1, &arc(-2, 5, 0)), arc(-2, 7, 2));
    }

    #[test]
    fn coord_examples() {
        assert_eq!(to_coord(&arc(2, -2, 0)), QuiverCoord { i: 0, j: 0 });
        assert_eq!(to_coord(&arc(-2, 5, 0)), QuiverCoord { i: 0, j: 1 });
        assert_eq!(to_coord(&arc(0, 4, 4)), QuiverCoord { i: -4, j: 0 });
        assert!(from_coord(Weight(2), QuiverCoord { i: 0, j: -1 }).is_err());
    }

    #[test]
    fn relation_examples() {
        let r = relation(&arc(2, 0, 3), &arc(2, 1, 4)).unwrap();
        assert_eq!(r.kind, RelationKind::Crossing);
        let r = relation(&arc(-2, 2, 0), &arc(-2, 8, 3)).unwrap();
        assert_eq!(r.kind, RelationKind::Neighbouring(vec![(2, 3)]));
        assert_eq!(r.distance, 1);
        let r = relation(&arc(0, 3, 1), &arc(0, 5, 3)).unwrap();
        assert_eq!(r.kind, RelationKind::Adjacent(3));
        assert!(matches!(
            relation(&arc(0, 3, 1), &arc(2, 3, 5)),
            Err(Error::WeightMismatch(0, 2))
        ));
    }

    #[test]
    fn loops_never_adjacent_but_may_neighbour() {
        let r = relation(&arc(0, 3, 3), &arc(0, 3, 1)).unwrap();
        assert_eq!(r.kind, RelationKind::Disjoint);
        let r = relation(&arc(0, 3, 3), &arc(0, 2, 2)).unwrap();
        assert_eq!(r.kind, RelationKind::Neighbouring(vec![(3, 2)]));
    }

    #[test]
    fn functor_algebra_exhaustive() {
        for w in WEIGHTS {
            let arcs = arcs_in_window(Weight(w), -12, 12);
            for a in &arcs {
                let st = apply_functor(Functor::Suspend, 1, &apply_functor(Functor::Tau, 1, a));
                assert_eq!(st, apply_functor(Functor::Serre, 1, a));
                assert_eq!(
                    apply_functor(Functor::Tau, 1, a),
                    apply_functor(Functor::Suspend, w - 1, a)
                );
                for f in [Functor::Suspend, Functor::Tau, Functor::Serre] {
                    let b = apply_functor(f, 1, a);
                    assert!(is_admissible(Weight(w), b.t(), b.u()).unwrap());
                    assert_eq!(apply_functor(f, -1, &b), *a);
                }
            }
        }
    }

    #[test]
    fn rays_and_corays_by_coordinates() {
        for w in WEIGHTS {
            let d = w - 1;
            let arcs = arcs_in_window(Weight(w), -10, 10);
            for a in &arcs {
                for b in &arcs {
                    let (ca, cb) = (to_coord(a), to_coord(b));
                    // same ray: Sigma^{i-nd} X_{j+n} for some integer n
                    let same_ray = (ca.i + ca.j * d) == (cb.i + cb.j * d);
                    assert_eq!(same_ray, a.t() == b.t());
                    assert_eq!(ca.i == cb.i, a.u() == b.u());
                }
            }
        }
    }

    #[test]
    fn relation_symmetric_and_crossing_irreflexive() {
        for w in WEIGHTS {
            let arcs = arcs_in_window(Weight(w), -6, 6);
            for a in &arcs {
                assert!(!crosses(a, a));
                for b in &arcs {
                    let (r, s) = (relation(a, b).unwrap(), relation(b, a).unwrap());
                    assert_eq!(r.distance, s.distance);
                    assert_eq!(crosses(a, b), crosses(b, a));
                    let kind = |k: &RelationKind| std::mem::discriminant(k);
                    assert_eq!(kind(&r.kind), kind(&s.kind));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn coord_round_trip(w in prop::sample::select(WEIGHTS.to_vec()), x in -60i64..60, y in -60i64..60) {
            if let Ok(a) = Arc::new(Weight(w), x, y) {
                let c = to_coord(&a);
                prop_assert!(c.j >= 0);
                prop_assert_eq!(from_coord(Weight(w), c).unwrap(), a);
                let sa = suspend(&a);
                prop_assert_eq!(to_coord(&sa), QuiverCoord { i: c.i + 1, j: c.j });
                let ta = apply_functor(Functor::Tau, 1, &a);
                prop_assert_eq!(to_coord(&ta), QuiverCoord { i: c.i + (w - 1), j: c.j });
            }
        }

        #[test]
        fn admissibility_order_insensitive(w in prop::sample::select(WEIGHTS.to_vec()), x in -40i64..40, y in -40i64..40) {
            prop_assert_eq!(is_admissible(Weight(w), x, y).unwrap(), is_admissible(Weight(w), y, x).unwrap());
        }

        #[test]
        fn arc_serde_round_trip(w in prop::sample::select(WEIGHTS.to_vec()), x in -40i64..40, y in -40i64..40) {
            if let Ok(a) = Arc::new(Weight(w), x, y) {
                let s = serde_json::to_string(&a).unwrap();
                prop_assert_eq!(serde_json::from_str::<Arc>(&s).unwrap(), a);
            }
        }
    }
}
