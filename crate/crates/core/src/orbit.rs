//! Orbit categories `C_m(A_n) = D^b(k A_n) / Σ^m τ` and their m-diagonal model.
//!
//! The derived-category side is authoritative; the polygon is a view whose
//! labelling is checked against the functor actions when a category is built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arc::Functor;
use crate::error::{Error, Result};

/// Largest category accepted by [`OrbitCategory::torsion_enumerate`].
pub const ENUMERATION_LIMIT: usize = 16;

/// `Σ^degree M[a,b]` over the linearly oriented quiver, `P(i) = M[1,i]`, `I(i) = M[i,n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalObject {
    pub degree: i64,
    pub a: i64,
    pub b: i64,
}

impl IntervalObject {
    pub fn new(degree: i64, a: i64, b: i64) -> IntervalObject {
        IntervalObject { degree, a, b }
    }

    fn check(&self, n: i64) -> Result<()> {
        if 1 <= self.a && self.a <= self.b && self.b <= n {
            Ok(())
        } else {
            Err(Error::ValidationFailure(format!("{self} is not an interval module over A_{n}")))
        }
    }
}

impl fmt::Display for IntervalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]@{}", self.a, self.b, self.degree)
    }
}

/// Hom in the derived category; only degree gaps 0 and 1 contribute.
pub fn db_hom_dim(x: &IntervalObject, y: &IntervalObject) -> u64 {
    match y.degree - x.degree {
        0 => (x.a <= y.a && y.a <= x.b && x.b <= y.b) as u64,
        1 => (y.a <= x.a - 1 && x.a - 1 <= y.b && y.b <= x.b - 1) as u64,
        _ => 0,
    }
}

pub fn db_tau(n: i64, x: &IntervalObject) -> IntervalObject {
    if x.a >= 2 {
        IntervalObject::new(x.degree, x.a - 1, x.b - 1)
    } else {
        IntervalObject::new(x.degree - 1, x.b, n)
    }
}

pub fn db_tau_inv(n: i64, x: &IntervalObject) -> IntervalObject {
    if x.b < n {
        IntervalObject::new(x.degree, x.a + 1, x.b + 1)
    } else {
        IntervalObject::new(x.degree + 1, 1, x.a)
    }
}

/// Applies `f^k`; negative `k` uses inverses.
pub fn db_functor(n: i64, f: Functor, k: i64, x: &IntervalObject) -> IntervalObject {
    let mut y = *x;
    for _ in 0..k.abs() {
        y = match (f, k > 0) {
            (Functor::Suspend, true) => IntervalObject::new(y.degree + 1, y.a, y.b),
            (Functor::Suspend, false) => IntervalObject::new(y.degree - 1, y.a, y.b),
            (Functor::Tau, true) => db_tau(n, &y),
            (Functor::Tau, false) => db_tau_inv(n, &y),
            (Functor::Serre, true) => {
                let t = db_tau(n, &y);
                IntervalObject::new(t.degree + 1, t.a, t.b)
            }
            (Functor::Serre, false) => db_tau_inv(n, &IntervalObject::new(y.degree - 1, y.a, y.b)),
        };
    }
    y
}

/// An m-diagonal `{i, j}` with `1 <= i < j <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct MDiagonal {
    i: i64,
    j: i64,
}

impl TryFrom<[i64; 2]> for MDiagonal {
    type Error = String;
    fn try_from(v: [i64; 2]) -> std::result::Result<Self, String> {
        if v[0] == v[1] || v[0] < 1 || v[1] < 1 {
            return Err(format!("{{{}, {}}} is not a diagonal", v[0], v[1]));
        }
        Ok(MDiagonal { i: v[0].min(v[1]), j: v[0].max(v[1]) })
    }
}

impl From<MDiagonal> for [i64; 2] {
    fn from(d: MDiagonal) -> [i64; 2] {
        [d.i, d.j]
    }
}

impl fmt::Display for MDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

fn modn(x: i64, big_n: i64) -> i64 {
    (x - 1).rem_euclid(big_n) + 1
}

/// Clockwise steps from `x` to `y`.
fn cw(x: i64, y: i64, big_n: i64) -> i64 {
    (y - x).rem_euclid(big_n)
}

/// Weak clockwise circular order: repeated vertices allowed.
pub fn circular(vs: &[i64], big_n: i64) -> bool {
    let total: i64 = (0..vs.len()).map(|k| cw(vs[k], vs[(k + 1) % vs.len()], big_n)).sum();
    total == big_n
}

impl MDiagonal {
    /// Vertices are reduced mod `N` first.
    pub fn new(x: i64, y: i64, big_n: i64) -> Option<MDiagonal> {
        let (x, y) = (modn(x, big_n), modn(y, big_n));
        (x != y).then(|| MDiagonal { i: x.min(y), j: x.max(y) })
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn vertices(&self) -> [i64; 2] {
        [self.i, self.j]
    }

    pub fn rotate(&self, k: i64, big_n: i64) -> MDiagonal {
        MDiagonal::new(self.i + k, self.j + k, big_n).expect("rotation keeps vertices distinct")
    }

    /// Both boundary pieces have a vertex count divisible by `m`.
    pub fn is_m_diagonal(&self, m: i64, big_n: i64) -> bool {
        let piece = self.j - self.i + 1;
        let other = big_n - (self.j - self.i) + 1;
        self.j <= big_n && piece % m == 0 && other % m == 0
    }

    pub fn crosses(&self, o: &MDiagonal) -> bool {
        (self.i < o.i && o.i < self.j && self.j < o.j) || (o.i < self.i && self.i < o.j && o.j < self.j)
    }

    pub fn shares_vertex(&self, o: &MDiagonal) -> bool {
        self.vertices().iter().any(|v| o.vertices().contains(v))
    }
}

/// Hom criterion on diagonals.
pub fn polygon_hom_nonzero(a: &MDiagonal, b: &MDiagonal, m: i64, big_n: i64) -> bool {
    let (a1, a2) = (a.i, a.j);
    [(b.i, b.j), (b.j, b.i)].into_iter().any(|(b1, b2)| {
        cw(a2, b1, big_n) % m == 0 && cw(a1, b2, big_n) % m == 0 && circular(&[a2, b1, a1, b2], big_n)
    })
}

/// `Ext^1(b, a)` criterion on diagonals.
pub fn polygon_ext_nonzero(b: &MDiagonal, a: &MDiagonal, m: i64, big_n: i64) -> bool {
    let (a1, a2) = (a.i, a.j);
    [(b.i, b.j), (b.j, b.i)].into_iter().any(|(b1, b2)| {
        cw(a2 + m, b1, big_n) % m == 0
            && cw(a1 + m, b2, big_n) % m == 0
            && circular(&[a2 + m, b1, a1 + m, b2], big_n)
    })
}

/// An indecomposable of a specific `C_m(A_n)`, held by its representative in
/// the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitIndec {
    pub n: i64,
    pub m: i64,
    pub rep: IntervalObject,
}

impl fmt::Display for OrbitIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonParams {
    pub n: i64,
    pub m: i64,
    pub big_n: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frames<'a> {
    pub start: &'a [OrbitIndec],
    pub end: &'a [OrbitIndec],
}

/// A validated orbit category with its polygon labelling.
#[derive(Debug, Clone)]
pub struct OrbitCategory {
    pub params: PolygonParams,
    objects: Vec<OrbitIndec>,
    diagonals: Vec<MDiagonal>,
    by_rep: BTreeMap<IntervalObject, usize>,
    by_diag: BTreeMap<MDiagonal, usize>,
    hom: Vec<Vec<u64>>,
    ext: Vec<Vec<u64>>,
    f_start: Vec<Vec<OrbitIndec>>,
    f_end: Vec<Vec<OrbitIndec>>,
}

/// Polygon label of `Σ^k M[a,b]`: `P(1)` in degree 0 goes to `{1, m}`.
fn gauge(x: &IntervalObject, m: i64, big_n: i64) -> Option<MDiagonal> {
    let alpha = 1 - m;
    MDiagonal::new(alpha + m * x.a + x.degree, alpha - 1 + m * (x.b + 1) + x.degree, big_n)
}

pub fn m_diagonals(n: i64, m: i64) -> Vec<MDiagonal> {
    let big_n = m * (n + 1) - 2;
    let mut out = Vec::new();
    for i in 1..=big_n {
        for j in i + 1..=big_n {
            let d = MDiagonal { i, j };
            if d.is_m_diagonal(m, big_n) {
                out.push(d);
            }
        }
    }
    out
}

impl OrbitCategory {
    pub fn new(n: i64, m: i64) -> Result<OrbitCategory> {
        if n < 1 || m < 2 {
            return Err(Error::ValidationFailure(format!("need n >= 1 and m >= 2, got n = {n}, m = {m}")));
        }
        let big_n = m * (n + 1) - 2;
        let params = PolygonParams { n, m, big_n };
        let mut objects = Vec::new();
        for degree in 0..m {
            for a in 1..=n {
                for b in a..=n {
                    let rep = IntervalObject::new(degree, a, b);
                    if in_domain(&rep, n, m) {
                        objects.push(OrbitIndec { n, m, rep });
                    }
                }
            }
        }
        let by_rep: BTreeMap<_, _> = objects.iter().enumerate().map(|(k, o)| (o.rep, k)).collect();
        let mut cat = OrbitCategory {
            params,
            objects,
            diagonals: Vec::new(),
            by_rep,
            by_diag: BTreeMap::new(),
            hom: Vec::new(),
            ext: Vec::new(),
            f_start: Vec::new(),
            f_end: Vec::new(),
        };
        cat.label()?;
        cat.tabulate()?;
        Ok(cat)
    }

    fn label(&mut self) -> Result<()> {
        let PolygonParams { n, m, big_n } = self.params;
        let fail = |msg: String| Err(Error::ValidationFailure(msg));
        let expected: BTreeSet<MDiagonal> = m_diagonals(n, m).into_iter().collect();
        if expected.len() != self.objects.len() {
            return fail(format!(
                "{} indecomposables but {} m-diagonals for n = {n}, m = {m}",
                self.objects.len(),
                expected.len()
            ));
        }
        let mut diagonals = Vec::new();
        for o in &self.objects {
            match gauge(&o.rep, m, big_n) {
                Some(d) if expected.contains(&d) => diagonals.push(d),
                _ => return fail(format!("{} has no m-diagonal label", o.rep)),
            }
        }
        let by_diag: BTreeMap<_, _> = diagonals.iter().enumerate().map(|(k, d)| (*d, k)).collect();
        if by_diag.len() != diagonals.len() {
            return fail("labelling is not injective".into());
        }
        self.diagonals = diagonals;
        self.by_diag = by_diag;
        for k in 0..self.objects.len() {
            let x = self.objects[k].rep;
            let d = self.diagonals[k];
            let s = self.diagonal(&self.canonical(&db_functor(n, Functor::Suspend, 1, &x))?);
            let t = self.diagonal(&self.canonical(&db_tau(n, &x))?);
            if s != d.rotate(1, big_n) || t != d.rotate(-m, big_n) {
                return fail(format!("labelling of {x} is not equivariant"));
            }
        }
        Ok(())
    }

    fn tabulate(&mut self) -> Result<()> {
        let k = self.objects.len();
        let n = self.params.n;
        let mut hom = vec![vec![0; k]; k];
        let mut ext = vec![vec![0; k]; k];
        for x in 0..k {
            for y in 0..k {
                let (a, b) = (self.objects[x].rep, self.objects[y].rep);
                hom[x][y] = db_hom_dim(&a, &b) + db_hom_dim(&a, &self.orbit_functor(&b, 1));
            }
        }
        // Ext^1(b, a) = D Hom(a, τ b)
        for bi in 0..k {
            let tb = self.by_rep[&self.canonical(&db_tau(n, &self.objects[bi].rep))?.rep];
            for ai in 0..k {
                ext[bi][ai] = hom[ai][tb];
            }
        }
        self.hom = hom;
        self.ext = ext;
        self.f_start = (0..k)
            .map(|a| (0..k).filter(|&b| self.hom[a][b] != 0 && self.ext[b][a] == 0).map(|b| self.objects[b]).collect())
            .collect();
        self.f_end = (0..k)
            .map(|b| (0..k).filter(|&x| self.hom[x][b] != 0 && self.ext[b][x] == 0).map(|x| self.objects[x]).collect())
            .collect();
        Ok(())
    }

    /// `F^k x` with `F = Σ^m τ`.
    pub fn orbit_functor(&self, x: &IntervalObject, k: i64) -> IntervalObject {
        let (n, m) = (self.params.n, self.params.m);
        let mut y = *x;
        for _ in 0..k.abs() {
            y = if k > 0 {
                db_functor(n, Functor::Suspend, m, &db_tau(n, &y))
            } else {
                db_tau_inv(n, &db_functor(n, Functor::Suspend, -m, &y))
            };
        }
        y
    }

    /// Representative of the orbit of `x` in the fundamental domain.
    pub fn canonical(&self, x: &IntervalObject) -> Result<OrbitIndec> {
        let (n, m) = (self.params.n, self.params.m);
        x.check(n)?;
        let mut y = *x;
        while !in_domain(&y, n, m) {
            y = self.orbit_functor(&y, if y.degree < 0 { 1 } else { -1 });
        }
        Ok(OrbitIndec { n, m, rep: y })
    }

    pub fn objects(&self) -> &[OrbitIndec] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    fn index(&self, a: &OrbitIndec) -> Result<usize> {
        if a.n != self.params.n || a.m != self.params.m {
            return Err(Error::ParamsMismatch(format!(
                "{a} lives in C_{}(A_{}), not C_{}(A_{})",
                a.m, a.n, self.params.m, self.params.n
            )));
        }
        self.by_rep
            .get(&a.rep)
            .copied()
            .ok_or_else(|| Error::ValidationFailure(format!("{a} is not a canonical representative")))
    }

    pub fn diagonal(&self, a: &OrbitIndec) -> MDiagonal {
        self.diagonals[self.by_rep[&a.rep]]
    }

    pub fn object(&self, d: &MDiagonal) -> Result<OrbitIndec> {
        self.by_diag.get(d).map(|&k| self.objects[k]).ok_or_else(|| {
            Error::ValidationFailure(format!("{d} is not an m-diagonal of the {}-gon", self.params.big_n))
        })
    }

    pub fn hom(&self, a: &OrbitIndec, b: &OrbitIndec) -> Result<u64> {
        Ok(self.hom[self.index(a)?][self.index(b)?])
    }

    /// `Ext^1(b, a)`.
    pub fn ext(&self, b: &OrbitIndec, a: &OrbitIndec) -> Result<u64> {
        Ok(self.ext[self.index(b)?][self.index(a)?])
    }

    pub fn suspend(&self, a: &OrbitIndec, k: i64) -> Result<OrbitIndec> {
        self.canonical(&db_functor(self.params.n, Functor::Suspend, k, &a.rep))
    }

    pub fn tau(&self, a: &OrbitIndec, k: i64) -> Result<OrbitIndec> {
        self.canonical(&db_functor(self.params.n, Functor::Tau, k, &a.rep))
    }

    pub fn frames(&self, a: &OrbitIndec) -> Result<Frames<'_>> {
        let k = self.index(a)?;
        Ok(Frames { start: &self.f_start[k], end: &self.f_end[k] })
    }

    /// Middle term of the non-split triangle `a -> E -> b`.
    pub fn middle_term(&self, a: &OrbitIndec, b: &OrbitIndec) -> Result<BTreeSet<OrbitIndec>> {
        if self.ext(b, a)? == 0 {
            return Err(Error::NoExtension(format!("Ext^1({b}, {a}) = 0")));
        }
        let end: BTreeSet<_> = self.frames(b)?.end.iter().copied().collect();
        Ok(self.frames(a)?.start.iter().filter(|x| end.contains(x)).copied().collect())
    }

    /// Middle terms of extensions in both directions.
    pub fn e_set(&self, a: &OrbitIndec, b: &OrbitIndec) -> Result<BTreeSet<OrbitIndec>> {
        let mut out = BTreeSet::new();
        if self.ext(b, a)? != 0 {
            out.extend(self.middle_term(a, b)?);
        }
        if self.ext(a, b)? != 0 {
            out.extend(self.middle_term(b, a)?);
        }
        Ok(out)
    }

    /// Ptolemy m-diagonals: connectors of crossing pairs and class-II connectors of neighbours.
    pub fn ptolemy(&self, d1: &MDiagonal, d2: &MDiagonal) -> Result<BTreeSet<MDiagonal>> {
        let PolygonParams { m, big_n, .. } = self.params;
        for d in [d1, d2] {
            self.object(d)?;
        }
        let keep = |x: i64, y: i64| MDiagonal::new(x, y, big_n).filter(|d| d.is_m_diagonal(m, big_n));
        let mut out = BTreeSet::new();
        if d1.crosses(d2) {
            for x in d1.vertices() {
                for y in d2.vertices() {
                    out.extend(keep(x, y));
                }
            }
        } else if !d1.shares_vertex(d2) {
            for (k, x) in d1.vertices().into_iter().enumerate() {
                for (l, y) in d2.vertices().into_iter().enumerate() {
                    if cw(x, y, big_n).min(cw(y, x, big_n)) == 1 {
                        out.extend(keep(d1.vertices()[1 - k], d2.vertices()[1 - l]));
                    }
                }
            }
        }
        Ok(out)
    }

    fn closure_masks<F>(&self, step: F) -> Result<Vec<Vec<u32>>>
    where
        F: Fn(usize, usize) -> Result<u32>,
    {
        let k = self.len();
        let mut masks = vec![vec![0u32; k]; k];
        for x in 0..k {
            for y in 0..k {
                masks[x][y] = step(x, y)?;
            }
        }
        Ok(masks)
    }

    fn mask_of(&self, xs: impl IntoIterator<Item = OrbitIndec>) -> Result<u32> {
        let mut m = 0u32;
        for x in xs {
            m |= 1 << self.index(&x)?;
        }
        Ok(m)
    }

    /// Pairwise E-set masks, indexed by object position.
    pub fn e_set_masks(&self) -> Result<Vec<Vec<u32>>> {
        self.require_small()?;
        self.closure_masks(|x, y| self.mask_of(self.e_set(&self.objects[x], &self.objects[y])?))
    }

    /// Pairwise Ptolemy masks, indexed by object position.
    pub fn ptolemy_masks(&self) -> Result<Vec<Vec<u32>>> {
        self.require_small()?;
        self.closure_masks(|x, y| {
            let ds = self.ptolemy(&self.diagonals[x], &self.diagonals[y])?;
            self.mask_of(ds.iter().map(|d| self.objects[self.by_diag[d]]))
        })
    }

    fn require_small(&self) -> Result<()> {
        if self.len() > 32 {
            return Err(Error::TooLarge(self.len(), 32));
        }
        Ok(())
    }

    /// Closure of `s` under middle terms of extensions.
    pub fn closure(&self, s: &BTreeSet<OrbitIndec>) -> Result<BTreeSet<OrbitIndec>> {
        let mut out = s.clone();
        let mut work: Vec<OrbitIndec> = s.iter().copied().collect();
        while let Some(x) = work.pop() {
            let current: Vec<OrbitIndec> = out.iter().copied().collect();
            for y in current {
                for z in self.e_set(&x, &y)? {
                    if out.insert(z) {
                        work.push(z);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Closure of `s` under Ptolemy m-diagonals.
    pub fn ptolemy_closure(&self, s: &BTreeSet<MDiagonal>) -> Result<BTreeSet<MDiagonal>> {
        let mut out = s.clone();
        let mut work: Vec<MDiagonal> = s.iter().copied().collect();
        while let Some(x) = work.pop() {
            let current: Vec<MDiagonal> = out.iter().copied().collect();
            for y in current {
                for z in self.ptolemy(&x, &y)? {
                    if out.insert(z) {
                        work.push(z);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Every torsion class, as sorted diagonal lists in lexicographic order.
    pub fn torsion_enumerate(&self) -> Result<Vec<Vec<MDiagonal>>> {
        if self.len() > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(self.len(), ENUMERATION_LIMIT));
        }
        let masks = self.ptolemy_masks()?;
        let k = self.len();
        let mut found = Vec::new();
        let mut a = mask_closure(0, &masks);
        loop {
            found.push(a);
            match next_closure(a, k, &masks) {
                Some(b) => a = b,
                None => break,
            }
        }
        let mut out: Vec<Vec<MDiagonal>> = found
            .into_iter()
            .map(|s| {
                let mut v: Vec<MDiagonal> = (0..k).filter(|i| s >> i & 1 == 1).map(|i| self.diagonals[i]).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

fn in_domain(x: &IntervalObject, n: i64, m: i64) -> bool {
    (0..=m - 2).contains(&x.degree) || (x.degree == m - 1 && x.b < n)
}

/// Least superset of `s` closed under the pairwise masks.
pub fn mask_closure(mut s: u32, masks: &[Vec<u32>]) -> u32 {
    loop {
        let mut t = s;
        for x in 0..masks.len() {
            if s >> x & 1 == 0 {
                continue;
            }
            for y in 0..=x {
                if s >> y & 1 == 1 {
                    t |= masks[x][y] | masks[y][x];
                }
            }
        }
        if t == s {
            return s;
        }
        s = t;
    }
}

/// Next closed set after `a` in lectic order.
fn next_closure(mut a: u32, k: usize, masks: &[Vec<u32>]) -> Option<u32> {
    for i in (0..k).rev() {
        let bit = 1u32 << i;
        if a & bit != 0 {
            a &= !bit;
        } else {
            let b = mask_closure(a | bit, masks);
            if (b & !a) & (bit - 1) == 0 {
                return Some(b);
            }
        }
    }
    None
}

/// Whether `s` is closed under the pairwise masks.
pub fn mask_is_closed(s: u32, masks: &[Vec<u32>]) -> bool {
    (0..masks.len()).all(|x| {
        s >> x & 1 == 0 || (0..masks.len()).all(|y| s >> y & 1 == 0 || masks[x][y] & !s == 0)
    })
}

/// Number of indecomposables: all intervals in `m - 1` degrees plus the
/// non-injective ones in one more.
pub fn indecomposable_count(n: i64, m: i64) -> i64 {
    (m - 1) * n * (n + 1) / 2 + n * (n - 1) / 2
}
