//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//! Every comparison is exact; the tolerances below are pinned at zero.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sphtor::arc::{apply_functor, arcs_in_window, suspend, Arc, Functor, Weight};
use sphtor::closure::{
    extension_closure_oracle, is_torsion_class_with, ptolemy_closure, symbolic_closure, DescriptorSet,
    FountainDescriptor, Side, Verdict,
};
use sphtor::extension::{e_set, middle_cohomology, middle_pair, middle_terms, ptolemy_arcs};
use sphtor::hammock::{cohomology, ext_dim, ext_dim_arc, hom_dim, CohomologyVector, HammockSide};
use sphtor::orbit::{db_hom_dim, indecomposable_count, m_diagonals, mask_is_closed, MDiagonal, OrbitCategory};
use sphtor::tube::{t1_classify, t1_split_witness, T1Descriptor, T1Verdict, TubePart};

/// Allowed absolute deviation in dimension counts.
const DIM_TOLERANCE: u64 = 0;
/// Allowed number of mismatching pairs or sets.
const MISMATCH_TOLERANCE: usize = 0;

const WEIGHTS: [i64; 7] = [-3, -2, -1, 0, 2, 3, 4];

type Outcome = Result<String, String>;

fn within(a: u64, b: u64) -> bool {
    a.abs_diff(b) <= DIM_TOLERANCE
}

fn verdict(mismatches: usize, checked: usize, what: &str, first: Option<String>) -> Outcome {
    if mismatches <= MISMATCH_TOLERANCE {
        Ok(format!("{checked} {what}, {mismatches} mismatches"))
    } else {
        Err(format!("{mismatches} of {checked} {what} mismatch; first: {}", first.unwrap_or_default()))
    }
}

/// 1. Hammock route agreement and Serre duality on [-40, 40].
fn hammock_routes() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for w in WEIGHTS {
        let arcs = arcs_in_window(Weight(w), -40, 40);
        for a in &arcs {
            let sa = suspend(a);
            let serre_a = apply_functor(Functor::Serre, 1, a);
            for b in &arcs {
                checked += 1;
                let e = ext_dim(b, a).unwrap() as u64;
                let ok = within(e, ext_dim_arc(b, a).unwrap() as u64)
                    && within(e, hom_dim(b, &sa).unwrap() as u64)
                    && within(hom_dim(a, b).unwrap() as u64, hom_dim(b, &serre_a).unwrap() as u64);
                if !ok {
                    bad += 1;
                    first.get_or_insert(format!("w={w} a={a} b={b}"));
                }
            }
        }
    }
    verdict(bad, checked, "pairs", first)
}

/// 2. E-sets equal the admissible Ptolemy arcs.
fn ptolemy_equality() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for w in WEIGHTS {
        let arcs = arcs_in_window(Weight(w), -15, 15);
        for a in &arcs {
            for b in &arcs {
                checked += 1;
                if e_set(a, b).unwrap() != ptolemy_arcs(a, b).unwrap().all() {
                    bad += 1;
                    first.get_or_insert(format!("w={w} a={a} b={b}"));
                }
            }
        }
    }
    verdict(bad, checked, "pairs", first)
}

/// 3. Summed cohomology of computed middle terms equals the closed form.
fn cohomology_oracle() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for w in WEIGHTS {
        let arcs = arcs_in_window(Weight(w), -12, 12);
        for a in &arcs {
            for b in &arcs {
                for class in middle_terms(a, b).unwrap() {
                    checked += 1;
                    let mut sum = CohomologyVector::new();
                    for m in &class.middles {
                        sum.add_vector(&cohomology(m));
                    }
                    if sum != middle_cohomology(a, b, class.side).unwrap() {
                        bad += 1;
                        first.get_or_insert(format!("w={w} a={a} b={b} side={:?}", class.side));
                    }
                }
            }
        }
    }
    verdict(bad, checked, "extension classes", first)
}

/// 4. Ptolemy closure equals extension closure on random small sets.
fn closure_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for w in WEIGHTS {
        let pool = arcs_in_window(Weight(w), -8, 8);
        for _ in 0..10_000 {
            let k = rng.gen_range(1..=6);
            let x: BTreeSet<Arc> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            checked += 1;
            if ptolemy_closure(&x).unwrap() != extension_closure_oracle(&x).unwrap() {
                bad += 1;
                first.get_or_insert(format!("w={w} {x:?}"));
            }
        }
    }
    verdict(bad, checked, "random sets", first)
}

/// 5. The two classes of Ext(Σa, a) and loop middles of self-extensions at w = 0.
fn w0_cases() -> Outcome {
    let w = Weight(0);
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for a in arcs_in_window(w, -15, 15) {
        let sa = suspend(&a);
        checked += 1;
        let classes = middle_terms(&a, &sa).unwrap();
        let (e1, e2) = middle_pair(&a, &sa, HammockSide::Forward);
        let mut expect: Vec<Arc> = [e1, e2].into_iter().flatten().collect();
        expect.sort();
        let mut forward = classes.first().map(|c| c.middles.clone()).unwrap_or_default();
        forward.sort();
        let mut ok = within(ext_dim(&sa, &a).unwrap() as u64, 2)
            && classes.len() == 2
            && classes[1].side == HammockSide::BothW0SigmaA
            && classes[1].middles.is_empty()
            && forward == expect;
        if !a.is_loop() {
            let own = middle_terms(&a, &a).unwrap();
            let loops: BTreeSet<Arc> = a.endpoints().iter().map(|&v| Arc::new(w, v, v).unwrap()).collect();
            ok &= own.len() == 1 && own[0].middles.iter().copied().collect::<BTreeSet<_>>() == loops;
        }
        if !ok {
            bad += 1;
            first.get_or_insert(a.to_string());
        }
    }
    verdict(bad, checked, "arcs", first)
}

/// 6. Tube classification against a windowed splitting test (shifts ±6).
fn t1_classification() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut checked, mut bad, mut first) = (0, 0, None);
    let mut check = |d: T1Descriptor, expect_accept: bool| {
        checked += 1;
        let v = t1_classify(&d);
        let accepted = v != T1Verdict::NotTorsionClass;
        let split = t1_split_witness(&d, 6).is_none();
        if accepted != expect_accept || accepted != split {
            bad += 1;
            first.get_or_insert(format!("{d:?} -> {v:?}"));
        }
    };
    check(T1Descriptor::Empty, true);
    check(T1Descriptor::All, true);
    for n in -10..=10 {
        check(T1Descriptor::Upper { n }, true);
    }
    for _ in 0..2_000 {
        let mut tubes = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(1..=4) {
            let part = if rng.gen_bool(0.5) {
                TubePart::All
            } else {
                TubePart::Levels((0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..5)).collect())
            };
            tubes.insert(rng.gen_range(-4..=4), part);
        }
        check(T1Descriptor::Explicit { tubes }, false);
    }
    verdict(bad, checked, "descriptors", first)
}

/// 7. Indecomposable counts against m-diagonal counts.
fn orbit_counts() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for n in 1..=6 {
        for m in 2..=4 {
            checked += 1;
            let c = OrbitCategory::new(n, m).unwrap();
            if c.len() != m_diagonals(n, m).len() || c.len() as i64 != indecomposable_count(n, m) {
                bad += 1;
                first.get_or_insert(format!("(n,m)=({n},{m})"));
            }
        }
    }
    let fixed = [((3, 2), 9), ((3, 3), 15)];
    for ((n, m), count) in fixed {
        checked += 1;
        if OrbitCategory::new(n, m).unwrap().len() != count {
            bad += 1;
            first.get_or_insert(format!("(n,m)=({n},{m}) expected {count}"));
        }
    }
    verdict(bad, checked, "parameter sets", first)
}

fn small_params(limit: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 1..=limit {
        for m in 2..=limit + 1 {
            if indecomposable_count(n, m) <= limit {
                out.push((n, m));
            }
        }
    }
    out
}

/// 8. Derived Hom vanishes outside orbit steps 0 and 1.
fn hom_window() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    for (n, m) in small_params(30) {
        let c = OrbitCategory::new(n, m).unwrap();
        for a in c.objects() {
            for b in c.objects() {
                for k in (-3..=4).filter(|k| *k != 0 && *k != 1) {
                    checked += 1;
                    if db_hom_dim(&a.rep, &c.orbit_functor(&b.rep, k)) != 0 {
                        bad += 1;
                        first.get_or_insert(format!("(n,m)=({n},{m}) {a} {b} k={k}"));
                    }
                }
            }
        }
    }
    verdict(bad, checked, "(pair, k) checks", first)
}

/// 9. E-closed equals Ptolemy-closed on every subset; enumeration count equals brute force.
fn closure_characterization() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    let params = small_params(16);
    for &(n, m) in &params {
        let c = OrbitCategory::new(n, m).unwrap();
        let (em, pm) = (c.e_set_masks().unwrap(), c.ptolemy_masks().unwrap());
        let mut brute = 0;
        for s in 0u32..1 << c.len() {
            checked += 1;
            let e_closed = mask_is_closed(s, &em);
            if e_closed != mask_is_closed(s, &pm) {
                bad += 1;
                first.get_or_insert(format!("(n,m)=({n},{m}) subset {s:#b}"));
            }
            brute += e_closed as usize;
        }
        let listed = c.torsion_enumerate().unwrap().len();
        if listed != brute {
            bad += 1;
            first.get_or_insert(format!("(n,m)=({n},{m}) enumerated {listed}, brute force {brute}"));
        }
    }
    verdict(bad, checked, &format!("subsets over {} parameter sets", params.len()), first)
}

/// 10. Ext vanishes between two arcs of T_{-1} but not between their diagonals in C_2(A_3).
fn orbit_versus_arc_ext() -> Outcome {
    let w = Weight(-1);
    let (a, b) = (Arc::new(w, 2, 1).unwrap(), Arc::new(w, 6, 5).unwrap());
    let arc_ext = ext_dim(&a, &b).unwrap() + ext_dim(&b, &a).unwrap();
    let c = OrbitCategory::new(3, 2).unwrap();
    let x = c.object(&MDiagonal::new(1, 2, 6).unwrap()).unwrap();
    let y = c.object(&MDiagonal::new(5, 6, 6).unwrap()).unwrap();
    let orbit_ext = c.ext(&x, &y).unwrap() + c.ext(&y, &x).unwrap();
    if arc_ext == 0 && orbit_ext != 0 {
        Ok(format!("T_-1 ext = {arc_ext}, C_2(A_3) ext = {orbit_ext}"))
    } else {
        Err(format!("T_-1 ext = {arc_ext}, C_2(A_3) ext = {orbit_ext}"))
    }
}

fn first_admissible(w: Weight, v: i64, side: Side) -> i64 {
    let mut x = v;
    loop {
        if Arc::new(w, v, x).is_ok() {
            return x;
        }
        x += if side == Side::Right { 1 } else { -1 };
    }
}

/// 11. One-sided fountains on the wrong side are rejected; finite closed sets are accepted.
fn fountain_logic() -> Outcome {
    let (mut checked, mut bad, mut first) = (0, 0, None);
    let mut record = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            bad += 1;
            first.get_or_insert(what);
        }
    };
    for w in WEIGHTS {
        let wt = Weight(w);
        for v in [-3, 0, 4] {
            for side in [Side::Left, Side::Right] {
                let f = FountainDescriptor { vertex: v, side, from: first_admissible(wt, v, side) };
                let x = DescriptorSet::new(wt, [], [f]).unwrap();
                let r = is_torsion_class_with(&x, 6).unwrap();
                let wrong = match w {
                    0 => true,
                    w if w >= 2 => side == Side::Right,
                    _ => side == Side::Left,
                };
                let ok = match (&r.verdict, wrong) {
                    (Verdict::TorsionClass, false) => true,
                    (Verdict::NotContravariantlyFinite { .. }, true) => w != 0,
                    (Verdict::NotClosed { .. }, true) => w == 0,
                    _ => false,
                };
                record(ok, format!("w={w} fountain {f:?} -> {:?}", r.verdict));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(11);
    for w in WEIGHTS {
        let pool = arcs_in_window(Weight(w), -6, 6);
        for _ in 0..100 {
            let x: BTreeSet<Arc> = (0..rng.gen_range(1..=4)).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            let closed = DescriptorSet::finite(Weight(w), ptolemy_closure(&x).unwrap()).unwrap();
            let same = symbolic_closure(&closed).unwrap() == closed;
            let r = is_torsion_class_with(&closed, 2).unwrap();
            record(same && r.verdict == Verdict::TorsionClass, format!("w={w} {x:?} -> {:?}", r.verdict));
        }
    }
    verdict(bad, checked, "descriptor sets", first)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("hammock route agreement", hammock_routes),
        ("Ptolemy equality", ptolemy_equality),
        ("cohomology oracle", cohomology_oracle),
        ("closure equivalence", closure_equivalence),
        ("w = 0 special cases", w0_cases),
        ("T_1 classification", t1_classification),
        ("orbit counts", orbit_counts),
        ("orbit Hom window", hom_window),
        ("closure characterization at desk scale", closure_characterization),
        ("orbit versus arc Ext example", orbit_versus_arc_ext),
        ("fountain logic", fountain_logic),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS: {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL: {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
