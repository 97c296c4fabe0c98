//! JSON documents exchanged by the CLI and the C ABI.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arc::{Arc, Weight};
use crate::closure::{DescriptorSet, FountainDescriptor};
use crate::error::{Error, Result};
use crate::orbit::{MDiagonal, OrbitCategory};
use crate::tube::T1Descriptor;

fn pairs(arcs: &BTreeSet<Arc>) -> Vec<[i64; 2]> {
    arcs.iter().map(|a| [a.t(), a.u()]).collect()
}

fn arcs_of(w: Weight, pairs: &[[i64; 2]]) -> Result<BTreeSet<Arc>> {
    pairs.iter().map(|p| Arc::new(w, p[0], p[1])).collect()
}

/// `{"w": .., "arcs": [[t,u], ..]}`; `w` may be omitted when the caller supplies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
    pub arcs: Vec<[i64; 2]>,
}

impl ArcSetDoc {
    pub fn new(w: Option<Weight>, arcs: &BTreeSet<Arc>) -> ArcSetDoc {
        ArcSetDoc { w: w.map(|w| w.0), arcs: pairs(arcs) }
    }

    /// The document's weight wins over `fallback`; one of them must be present.
    pub fn arcs(&self, fallback: Option<Weight>) -> Result<(Weight, BTreeSet<Arc>)> {
        let w = match (self.w, fallback) {
            (Some(w), Some(f)) if w != f.0 => return Err(Error::WeightMismatch(w, f.0)),
            (Some(w), _) => Weight(w),
            (None, Some(f)) => f,
            (None, None) => return Err(Error::EmptyInput),
        };
        let w = Weight::arc_model(w.0)?;
        Ok((w, arcs_of(w, &self.arcs)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorDoc {
    pub w: i64,
    #[serde(default)]
    pub arcs: Vec<[i64; 2]>,
    #[serde(default)]
    pub fountains: Vec<FountainDescriptor>,
}

impl TryFrom<DescriptorDoc> for DescriptorSet {
    type Error = Error;
    fn try_from(d: DescriptorDoc) -> Result<DescriptorSet> {
        let w = Weight::arc_model(d.w)?;
        DescriptorSet::new(w, arcs_of(w, &d.arcs)?, d.fountains)
    }
}

impl From<DescriptorSet> for DescriptorDoc {
    fn from(d: DescriptorSet) -> DescriptorDoc {
        DescriptorDoc { w: d.w.0, arcs: pairs(&d.arcs), fountains: d.fountains.into_iter().collect() }
    }
}

/// `{"w": 1, "pattern": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1Doc {
    pub w: i64,
    #[serde(flatten)]
    pub descriptor: T1Descriptor,
}

impl T1Doc {
    pub fn new(descriptor: T1Descriptor) -> T1Doc {
        T1Doc { w: 1, descriptor }
    }

    pub fn descriptor(&self) -> Result<&T1Descriptor> {
        if self.w != 1 {
            return Err(Error::WeightMismatch(1, self.w));
        }
        Ok(&self.descriptor)
    }
}

/// `{"n": .., "m": .., "diagonals": [[i,j], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub n: i64,
    pub m: i64,
    pub diagonals: Vec<MDiagonal>,
}

impl OrbitDoc {
    /// Checks every diagonal against the category with matching parameters.
    pub fn validate(&self, cat: &OrbitCategory) -> Result<BTreeSet<MDiagonal>> {
        if (self.n, self.m) != (cat.params.n, cat.params.m) {
            return Err(Error::ParamsMismatch(format!(
                "document is for (n,m) = ({},{}), category is ({},{})",
                self.n, self.m, cat.params.n, cat.params.m
            )));
        }
        self.diagonals.iter().map(|d| cat.object(d).map(|_| *d)).collect()
    }
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("documents always serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::ValidationFailure(format!("bad JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::Side;
    use crate::tube::{T1Verdict, TubeObject, TubePart};
    use std::collections::BTreeMap;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        assert_eq!(&from_json::<T>(&to_json(x)).unwrap(), x);
    }

    #[test]
    fn arc_set_format() {
        let w = Weight(2);
        let arcs: BTreeSet<Arc> = [Arc::new(w, 0, 4).unwrap(), Arc::new(w, 3, 1).unwrap()].into();
        assert_eq!(to_json(&ArcSetDoc::new(None, &arcs)), r#"{"arcs":[[0,4],[1,3]]}"#);
        let doc = ArcSetDoc::new(Some(w), &arcs);
        assert_eq!(to_json(&doc), r#"{"w":2,"arcs":[[0,4],[1,3]]}"#);
        assert_eq!(doc.arcs(None).unwrap(), (w, arcs.clone()));
        round_trip(&doc);
        let bad: ArcSetDoc = from_json(r#"{"w":2,"arcs":[[0,1]]}"#).unwrap();
        assert!(matches!(bad.arcs(None), Err(Error::InvalidArc(0, 1, 2))));
        assert!(matches!(doc.arcs(Some(Weight(3))), Err(Error::WeightMismatch(2, 3))));
    }

    #[test]
    fn descriptor_format() {
        let s = r#"{"w":-1,"arcs":[[2,-1]],"fountains":[{"vertex":0,"side":"right","from":1}]}"#;
        let d: DescriptorSet = from_json(s).unwrap();
        assert_eq!(d.fountains.iter().next().unwrap().side, Side::Right);
        assert_eq!(to_json(&d), s);
        round_trip(&d);
        assert!(from_json::<DescriptorSet>(r#"{"w":1}"#).is_err());
    }

    #[test]
    fn t1_format() {
        let doc: T1Doc = from_json(r#"{"w":1,"pattern":"upper","n":5}"#).unwrap();
        assert_eq!(doc.descriptor, T1Descriptor::Upper { n: 5 });
        assert_eq!(crate::tube::t1_classify(doc.descriptor().unwrap()), T1Verdict::TStructure(5));
        let explicit = T1Doc::new(T1Descriptor::Explicit {
            tubes: BTreeMap::from([(0, TubePart::All), (2, TubePart::Levels([0, 3].into()))]),
        });
        round_trip(&explicit);
        round_trip(&T1Doc::new(T1Descriptor::Empty));
        round_trip(&TubeObject::new(-2, 4));
    }

    #[test]
    fn orbit_format() {
        let cat = OrbitCategory::new(2, 2).unwrap();
        let doc: OrbitDoc = from_json(r#"{"n":2,"m":2,"diagonals":[[1,2],[4,3]]}"#).unwrap();
        assert_eq!(doc.validate(&cat).unwrap().len(), 2);
        assert_eq!(to_json(&doc), r#"{"n":2,"m":2,"diagonals":[[1,2],[3,4]]}"#);
        let other = OrbitCategory::new(3, 2).unwrap();
        assert!(matches!(doc.validate(&other), Err(Error::ParamsMismatch(_))));
        for o in cat.objects() {
            round_trip(o);
        }
    }

    proptest::proptest! {
        #[test]
        fn arcs_round_trip(w in proptest::sample::select(vec![-3i64, -1, 0, 2, 4]), x in -20i64..20, y in -20i64..20) {
            if let Ok(a) = Arc::new(Weight(w), x, y) {
                round_trip(&a);
                let d = DescriptorSet::finite(Weight(w), [a]).unwrap();
                round_trip(&d);
            }
        }
    }
}
