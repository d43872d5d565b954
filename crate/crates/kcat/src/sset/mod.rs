//! Finite truncated simplicial sets.
//!
//! Simplices are stored nondegenerately; every face reference is a degeneracy
//! word applied to a stored simplex. The word is kept in the canonical
//! strictly-decreasing form s_{j1} s_{j2} ... (j1 > j2 > ...), so two
//! references are equal iff they denote the same simplex. The simplicial
//! operator identities live in `push_degeneracy` and `face_of`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

mod bisset;
mod homology;
mod nerve;
mod products;
pub use bisset::{diag, BiSSet};
pub use homology::{
    homology, invariant_equiv, pi1_abelianized, pi1_presentation, InvariantVerdict,
};
pub use nerve::{nerve, nerve_functor_map, NerveSimplex};
pub use products::{
    fiber_product, function_complex, homotopy_fiber_product, pair_into_product, path_complex,
    product, FiberProduct, FunctionComplex, Hfp, Product,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SsetError {
    #[error("truncation too low: need dimension {needed}, have {have}")]
    TruncTooLow { needed: usize, have: usize },
    #[error("complex is disconnected but a global answer was requested")]
    Disconnected,
}

/// A possibly-degenerate simplex: the degeneracy word applied to a stored
/// nondegenerate simplex. `word` is strictly decreasing; `word[0]` is applied
/// outermost.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegSimplex {
    pub word: Vec<usize>,
    pub base_dim: usize,
    pub base: usize,
}

impl DegSimplex {
    pub fn nondeg(base_dim: usize, base: usize) -> Self {
        DegSimplex { word: Vec::new(), base_dim, base }
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// s_k applied outermost, renormalized via s_k s_j = s_{j+1} s_k (k <= j).
    pub fn degenerate(&self, k: usize) -> DegSimplex {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        let mut placed = false;
        for &j in &self.word {
            if j >= k {
                word.push(j + 1);
            } else {
                if !placed {
                    word.push(k);
                    placed = true;
                }
                word.push(j);
            }
        }
        if !placed {
            word.push(k);
        }
        DegSimplex { word, base_dim: self.base_dim, base: self.base }
    }
}

#[derive(Clone, Debug, Default)]
struct Level {
    /// faces[idx][i] = d_i of nondegenerate simplex idx (dim >= 1)
    faces: Vec<Vec<DegSimplex>>,
    labels: Vec<String>,
}

/// Finite simplicial set truncated at `trunc`.
#[derive(Clone)]
pub struct FinSSet {
    pub trunc: usize,
    levels: Vec<Level>,
}

impl fmt::Debug for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSSet(trunc {}, counts {:?})", self.trunc, self.counts())
    }
}

impl FinSSet {
    pub fn n_nondeg(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.faces.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.trunc).map(|d| self.n_nondeg(d)).collect()
    }

    pub fn label(&self, dim: usize, idx: usize) -> &str {
        &self.levels[dim].labels[idx]
    }

    /// d_i of a possibly-degenerate simplex, pushed through the word by
    /// d_i s_j = s_{j-1} d_i (i < j), identity (i = j, j+1), s_j d_{i-1} (i > j+1).
    pub fn face_of(&self, i: usize, s: &DegSimplex) -> DegSimplex {
        match s.word.first().copied() {
            None => self.levels[s.base_dim].faces[s.base][i].clone(),
            Some(j) => {
                let inner = DegSimplex {
                    word: s.word[1..].to_vec(),
                    base_dim: s.base_dim,
                    base: s.base,
                };
                if i == j || i == j + 1 {
                    inner
                } else if i < j {
                    self.face_of(i, &inner).degenerate(j - 1)
                } else {
                    self.face_of(i - 1, &inner).degenerate(j)
                }
            }
        }
    }

    /// All simplices (degenerate included) of a given dimension.
    pub fn all_simplices(&self, dim: usize) -> Vec<DegSimplex> {
        let mut out = Vec::new();
        for p in 0..=dim.min(self.trunc) {
            let wlen = dim - p;
            if wlen > dim {
                continue;
            }
            for base in 0..self.n_nondeg(p) {
                // strictly decreasing words of length wlen over 0..dim-1
                for combo in combinations_desc(dim, wlen) {
                    out.push(DegSimplex { word: combo, base_dim: p, base });
                }
            }
        }
        out
    }

    /// Vertex i of a simplex (iterated faces).
    pub fn vertex_of(&self, s: &DegSimplex, v: usize) -> usize {
        let mut cur = s.clone();
        let dim = cur.dim();
        // drop all faces except position v
        for i in (v + 1..=dim).rev() {
            cur = self.face_of(i, &cur);
        }
        for _ in 0..v {
            cur = self.face_of(0, &cur);
        }
        debug_assert_eq!(cur.dim(), 0);
        cur.base
    }

    /// Simplicial identities d_i d_j = d_{j-1} d_i (i < j) on all stored data.
    pub fn validate(&self) -> Result<(), String> {
        for d in 1..=self.trunc {
            for idx in 0..self.n_nondeg(d) {
                let s = DegSimplex::nondeg(d, idx);
                for i in 0..=d {
                    let fi = self.face_of(i, &s);
                    if fi.dim() + 1 != d {
                        return Err(format!("face dim mismatch at dim {} idx {} face {}", d, idx, i));
                    }
                    if fi.base_dim > self.trunc || fi.base >= self.n_nondeg(fi.base_dim) {
                        return Err(format!("dangling face at dim {} idx {} face {}", d, idx, i));
                    }
                }
                if d >= 2 {
                    for j in 0..=d {
                        for i in 0..j {
                            let lhs = self.face_of(i, &self.face_of(j, &s));
                            let rhs = self.face_of(j - 1, &self.face_of(i, &s));
                            if lhs != rhs {
                                return Err(format!(
                                    "d_{} d_{} != d_{} d_{} at dim {} idx {}",
                                    i, j, j - 1, i, d, idx
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the vertex set; returns (component id per
    /// vertex, number of components). Ids are canonical (minimal member).
    pub fn pi0(&self) -> (Vec<usize>, usize) {
        let n = self.n_nondeg(0);
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, mut a: usize) -> usize {
            while uf[a] != a {
                uf[a] = uf[uf[a]];
                a = uf[a];
            }
            a
        }
        for e in 0..self.n_nondeg(1) {
            let s = DegSimplex::nondeg(1, e);
            let a = self.face_of(1, &s).base;
            let b = self.face_of(0, &s).base;
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                uf[hi] = lo;
            }
        }
        let mut roots = Vec::new();
        let ids: Vec<usize> = (0..n)
            .map(|v| {
                let r = find(&mut uf, v);
                if !roots.contains(&r) {
                    roots.push(r);
                }
                r
            })
            .collect();
        (ids, roots.len())
    }

    /// Point (one vertex, nothing else).
    pub fn point(trunc: usize) -> FinSSet {
        FinSSet::from_levels(
            trunc,
            |d| if d == 0 { vec![vec![0usize]] } else { vec![] },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.remove(i);
                u
            },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.insert(i, t[i]);
                u
            },
            |_, _| "*".to_string(),
        )
        .0
    }

    /// Standard n-simplex: k-simplices are monotone maps [k] -> [n].
    pub fn delta(n: usize, trunc: usize) -> FinSSet {
        FinSSet::from_levels(
            trunc,
            |d| monotone_maps(d, n),
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.remove(i);
                u
            },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.insert(i, t[i]);
                u
            },
            |_, t| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""),
        )
        .0
    }

    /// Boundary of the n-simplex: monotone maps that miss a vertex.
    pub fn boundary_delta(n: usize, trunc: usize) -> FinSSet {
        FinSSet::from_levels(
            trunc,
            |d| {
                monotone_maps(d, n)
                    .into_iter()
                    .filter(|m| (0..=n).any(|v| !m.contains(&v)))
                    .collect()
            },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.remove(i);
                u
            },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.insert(i, t[i]);
                u
            },
            |_, t| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""),
        )
        .0
    }

    /// Builds a truncated simplicial set from full simplex sets (degenerate
    /// elements included), classifying degeneracies by scanning and storing
    /// only nondegenerate simplices. Returns the set together with the
    /// normal-form table T -> DegSimplex per dimension.
    pub fn from_levels<T, L, F, G, N>(
        trunc: usize,
        level_fn: L,
        face_fn: F,
        degen_fn: G,
        label_fn: N,
    ) -> (FinSSet, Vec<HashMap<T, DegSimplex>>)
    where
        T: Clone + Eq + Hash,
        L: Fn(usize) -> Vec<T>,
        F: Fn(usize, usize, &T) -> T,
        G: Fn(usize, usize, &T) -> T,
        N: Fn(usize, &T) -> String,
    {
        let mut raw_levels: Vec<Vec<T>> = Vec::with_capacity(trunc + 1);
        for d in 0..=trunc {
            let mut seen = std::collections::HashSet::new();
            let mut v = Vec::new();
            for t in level_fn(d) {
                if seen.insert(t.clone()) {
                    v.push(t);
                }
            }
            raw_levels.push(v);
        }

        let mut norm: Vec<HashMap<T, DegSimplex>> = Vec::with_capacity(trunc + 1);
        let mut levels: Vec<Level> = Vec::with_capacity(trunc + 1);

        for d in 0..=trunc {
            // which elements are degenerate, and from what
            let mut deg_source: HashMap<T, (usize, T)> = HashMap::new();
            if d >= 1 {
                for u in &raw_levels[d - 1] {
                    for i in 0..d {
                        let img = degen_fn(d - 1, i, u);
                        deg_source.entry(img).or_insert((i, u.clone()));
                    }
                }
            }
            let mut level = Level::default();
            let mut table: HashMap<T, DegSimplex> = HashMap::new();
            // nondegenerate first: assign indices
            for t in &raw_levels[d] {
                if !deg_source.contains_key(t) {
                    let idx = level.labels.len();
                    level.labels.push(label_fn(d, t));
                    level.faces.push(Vec::new());
                    table.insert(t.clone(), DegSimplex::nondeg(d, idx));
                }
            }
            // degenerate: normal form through the source
            let mut pending: Vec<&T> =
                raw_levels[d].iter().filter(|t| deg_source.contains_key(*t)).collect();
            // resolve in passes; sources are at dim d-1 and already resolved
            for t in pending.drain(..) {
                let (i, u) = &deg_source[t];
                let under = norm[d - 1]
                    .get(u)
                    .unwrap_or_else(|| panic!("degeneracy source missing at dim {}", d - 1))
                    .clone();
                table.insert(t.clone(), under.degenerate(*i));
            }
            norm.push(table);
            levels.push(level);
        }

        // face references for nondegenerate simplices
        for d in 1..=trunc {
            let entries: Vec<(usize, T)> = raw_levels[d]
                .iter()
                .filter_map(|t| {
                    let ds = &norm[d][t];
                    (!ds.is_degenerate()).then(|| (ds.base, t.clone()))
                })
                .collect();
            for (idx, t) in entries {
                let mut faces = Vec::with_capacity(d + 1);
                for i in 0..=d {
                    let ft = face_fn(d, i, &t);
                    let ds = norm[d - 1]
                        .get(&ft)
                        .unwrap_or_else(|| panic!("face missing from level {}", d - 1))
                        .clone();
                    faces.push(ds);
                }
                levels[d].faces[idx] = faces;
            }
        }

        (FinSSet { trunc, levels }, norm)
    }
}

/// Strictly decreasing sequences of length `len` over 0..bound.
fn combinations_desc(bound: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if bound < len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: i64, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let mut k = start;
        while k >= (left as i64 - 1) {
            cur.push(k as usize);
            rec(k - 1, left - 1, cur, out);
            cur.pop();
            k -= 1;
        }
    }
    rec(bound as i64 - 1, len, &mut cur, &mut out);
    out
}

/// Monotone maps [d] -> [n] as value vectors of length d+1.
pub fn monotone_maps(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; d + 1];
    loop {
        if cur.windows(2).all(|w| w[0] <= w[1]) {
            out.push(cur.clone());
        }
        let mut k = d + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] <= n {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Simplicial map: image of every nondegenerate simplex of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SMap {
    /// images[dim][idx] = image in the target (possibly degenerate)
    pub images: Vec<Vec<DegSimplex>>,
}

impl SMap {
    pub fn identity(x: &FinSSet) -> SMap {
        SMap {
            images: (0..=x.trunc)
                .map(|d| (0..x.n_nondeg(d)).map(|i| DegSimplex::nondeg(d, i)).collect())
                .collect(),
        }
    }

    /// Image of a possibly-degenerate simplex.
    pub fn apply(&self, s: &DegSimplex) -> DegSimplex {
        let mut img = self.images[s.base_dim][s.base].clone();
        for &j in s.word.iter().rev() {
            img = img.degenerate(j);
        }
        img
    }

    /// g ∘ self ... no: self ∘ inner — images of inner pushed through self.
    pub fn compose(&self, inner: &SMap) -> SMap {
        SMap {
            images: inner
                .images
                .iter()
                .map(|lvl| lvl.iter().map(|ds| self.apply(ds)).collect())
                .collect(),
        }
    }

    /// Commutation with all face maps.
    pub fn validate(&self, src: &FinSSet, tgt: &FinSSet) -> Result<(), String> {
        if self.images.len() != src.trunc + 1 {
            return Err("level count mismatch".into());
        }
        for d in 0..=src.trunc {
            if self.images[d].len() != src.n_nondeg(d) {
                return Err(format!("image count mismatch at dim {}", d));
            }
            for idx in 0..src.n_nondeg(d) {
                let img = &self.images[d][idx];
                if img.dim() != d {
                    return Err(format!("image dim mismatch at dim {} idx {}", d, idx));
                }
                if d >= 1 {
                    let s = DegSimplex::nondeg(d, idx);
                    for i in 0..=d {
                        let lhs = self.apply(&src.face_of(i, &s));
                        let rhs = tgt.face_of(i, img);
                        if lhs != rhs {
                            return Err(format!(
                                "does not commute with d_{} at dim {} idx {}",
                                i, d, idx
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
