//! Finite categories given by a total composition table, with exhaustive
//! limit searches and functor checking.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub mod localize;
pub use localize::{gz_localize, GzError, Localization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct MorData {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// Raw category tables prior to validation. This is the shape the JSON
/// instance format parses into; `check_category` consumes it.
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorData>,
    /// identity[i] = morphism id of the identity on object i
    pub identities: Vec<MorId>,
    /// (g, f) -> g∘f, listed only for composable pairs
    pub composites: Vec<(MorId, MorId, MorId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FinCatError {
    #[error("dangling id: {0}")]
    DanglingId(String),
    #[error("category invariants violated: {0:?}")]
    InvalidCategory(Vec<CategoryViolation>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    /// Composition table has no entry for a composable pair.
    MissingComposite { g: MorId, f: MorId },
    /// Composition table defines an entry for a non-composable pair.
    SpuriousComposite { g: MorId, f: MorId },
    /// src/dst of a composite is inconsistent.
    CompositeEndpoints { g: MorId, f: MorId, gf: MorId },
    /// Identity fails as a unit.
    IdentityNotUnit { object: ObjId, witness: MorId },
    /// Identity morphism has wrong endpoints.
    IdentityEndpoints { object: ObjId },
    /// (h∘g)∘f != h∘(g∘f)
    Associativity { h: MorId, g: MorId, f: MorId },
    /// Duplicate object or morphism name.
    DuplicateName { name: String },
}

#[derive(Clone, Debug, Default)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates the raw tables exhaustively. Dangling references are an error;
/// axiom failures are data carried in the report with witnesses.
pub fn check_category(raw: &RawCategory) -> Result<CategoryReport, FinCatError> {
    let n_obj = raw.objects.len() as u32;
    let n_mor = raw.morphisms.len() as u32;
    let mut report = CategoryReport::default();

    let mut seen = std::collections::HashSet::new();
    for name in raw.objects.iter().chain(raw.morphisms.iter().map(|m| &m.name)) {
        if !seen.insert(name.clone()) {
            report.violations.push(CategoryViolation::DuplicateName { name: name.clone() });
        }
    }

    for m in &raw.morphisms {
        if m.src.0 >= n_obj || m.dst.0 >= n_obj {
            return Err(FinCatError::DanglingId(format!("morphism {} endpoints", m.name)));
        }
    }
    if raw.identities.len() != raw.objects.len() {
        return Err(FinCatError::DanglingId("identities list length".into()));
    }
    for id in &raw.identities {
        if id.0 >= n_mor {
            return Err(FinCatError::DanglingId(format!("identity {}", id)));
        }
    }
    for (g, f, gf) in &raw.composites {
        if g.0 >= n_mor || f.0 >= n_mor || gf.0 >= n_mor {
            return Err(FinCatError::DanglingId(format!("composite ({}, {})", g, f)));
        }
    }

    // composition table as a map
    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for (g, f, gf) in &raw.composites {
        table.insert((*g, *f), *gf);
    }

    let src = |m: MorId| raw.morphisms[m.0 as usize].src;
    let dst = |m: MorId| raw.morphisms[m.0 as usize].dst;

    for g in 0..n_mor {
        for f in 0..n_mor {
            let (g, f) = (MorId(g), MorId(f));
            let composable = dst(f) == src(g);
            match table.get(&(g, f)) {
                None if composable => {
                    report.violations.push(CategoryViolation::MissingComposite { g, f })
                }
                Some(_) if !composable => {
                    report.violations.push(CategoryViolation::SpuriousComposite { g, f })
                }
                Some(&gf) if composable => {
                    if src(gf) != src(f) || dst(gf) != dst(g) {
                        report.violations.push(CategoryViolation::CompositeEndpoints { g, f, gf });
                    }
                }
                _ => {}
            }
        }
    }

    for (o, id) in raw.identities.iter().enumerate() {
        let o = ObjId(o as u32);
        if src(*id) != o || dst(*id) != o {
            report.violations.push(CategoryViolation::IdentityEndpoints { object: o });
            continue;
        }
        for m in 0..n_mor {
            let m = MorId(m);
            if src(m) == o {
                if table.get(&(m, *id)) != Some(&m) {
                    report.violations.push(CategoryViolation::IdentityNotUnit { object: o, witness: m });
                }
            }
            if dst(m) == o {
                if table.get(&(*id, m)) != Some(&m) {
                    report.violations.push(CategoryViolation::IdentityNotUnit { object: o, witness: m });
                }
            }
        }
    }

    // associativity on every composable triple (only meaningful if table is total on
    // composable pairs; missing entries were already reported)
    if report.ok() {
        use rayon::prelude::*;
        let n = n_mor as usize;
        let viols: Vec<CategoryViolation> = (0..n)
            .into_par_iter()
            .flat_map_iter(|h| {
                let h = MorId(h as u32);
                let mut local = Vec::new();
                for g in 0..n {
                    let g = MorId(g as u32);
                    if dst(g) != src(h) {
                        continue;
                    }
                    let hg = table[&(h, g)];
                    for f in 0..n {
                        let f = MorId(f as u32);
                        if dst(f) != src(g) {
                            continue;
                        }
                        let gf = table[&(g, f)];
                        if table[&(h, gf)] != table[&(hg, f)] {
                            local.push(CategoryViolation::Associativity { h, g, f });
                        }
                    }
                }
                local
            })
            .collect();
        report.violations.extend(viols);
    }

    Ok(report)
}

/// A validated finite category. Composition is total on composable pairs.
#[derive(Clone)]
pub struct FinCat {
    pub object_names: Vec<String>,
    pub mors: Vec<MorData>,
    pub identities: Vec<MorId>,
    /// dense (g * n_mor + f) -> composite, u32::MAX when not composable
    comp: Vec<u32>,
    /// hom[src][dst] = sorted morphism ids
    hom: Vec<Vec<Vec<MorId>>>,
    iso: Vec<bool>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.object_names.len(), self.mors.len())
    }
}

impl FinCat {
    pub fn from_raw(raw: RawCategory) -> Result<FinCat, FinCatError> {
        let report = check_category(&raw)?;
        if !report.ok() {
            return Err(FinCatError::InvalidCategory(report.violations));
        }
        Ok(Self::from_raw_unchecked(raw))
    }

    /// Skips validation; for internal constructors whose outputs are
    /// check_category-tested separately.
    pub fn from_raw_unchecked(raw: RawCategory) -> FinCat {
        let n_obj = raw.objects.len();
        let n_mor = raw.morphisms.len();
        let mut comp = vec![u32::MAX; n_mor * n_mor];
        for (g, f, gf) in &raw.composites {
            comp[g.0 as usize * n_mor + f.0 as usize] = gf.0;
        }
        let mut hom = vec![vec![Vec::new(); n_obj]; n_obj];
        for (i, m) in raw.morphisms.iter().enumerate() {
            hom[m.src.0 as usize][m.dst.0 as usize].push(MorId(i as u32));
        }
        let mut cat = FinCat {
            object_names: raw.objects,
            mors: raw.morphisms,
            identities: raw.identities,
            comp,
            hom,
            iso: Vec::new(),
        };
        cat.iso = (0..n_mor).map(|m| cat.compute_is_iso(MorId(m as u32))).collect();
        cat
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.mors.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.object_names.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.mors.len() as u32).map(MorId)
    }

    #[inline]
    pub fn src(&self, m: MorId) -> ObjId {
        self.mors[m.0 as usize].src
    }

    #[inline]
    pub fn dst(&self, m: MorId) -> ObjId {
        self.mors[m.0 as usize].dst
    }

    #[inline]
    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0 as usize]
    }

    #[inline]
    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.src(m).0 as usize] == m && self.src(m) == self.dst(m)
    }

    /// g∘f, panics when not composable (internal misuse).
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        let v = self.comp[g.0 as usize * self.mors.len() + f.0 as usize];
        debug_assert!(v != u32::MAX, "compose on non-composable pair {} {}", g, f);
        MorId(v)
    }

    #[inline]
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let v = self.comp[g.0 as usize * self.mors.len() + f.0 as usize];
        (v != u32::MAX).then_some(MorId(v))
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x.0 as usize][y.0 as usize]
    }

    pub fn hom_from(&self, x: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |y| self.hom(x, y).iter().copied())
    }

    pub fn hom_into(&self, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |x| self.hom(x, y).iter().copied())
    }

    fn compute_is_iso(&self, m: MorId) -> bool {
        let (x, y) = (self.src(m), self.dst(m));
        self.hom(y, x).iter().any(|&g| {
            self.compose(g, m) == self.identity(x) && self.compose(m, g) == self.identity(y)
        })
    }

    /// Exhaustive inverse search, precomputed at construction.
    #[inline]
    pub fn is_iso(&self, m: MorId) -> bool {
        self.iso[m.0 as usize]
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (x, y) = (self.src(m), self.dst(m));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, m) == self.identity(x) && self.compose(m, g) == self.identity(y))
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut composites = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(gf) = self.try_compose(g, f) {
                    composites.push((g, f, gf));
                }
            }
        }
        RawCategory {
            objects: self.object_names.clone(),
            morphisms: self.mors.clone(),
            identities: self.identities.clone(),
            composites,
        }
    }

    /// Category with arrows reversed. Involutive on the nose.
    pub fn opposite(&self) -> FinCat {
        let raw = RawCategory {
            objects: self.object_names.clone(),
            morphisms: self
                .mors
                .iter()
                .map(|m| MorData { name: m.name.clone(), src: m.dst, dst: m.src })
                .collect(),
            identities: self.identities.clone(),
            composites: {
                let mut v = Vec::new();
                for g in self.morphisms() {
                    for f in self.morphisms() {
                        if let Some(gf) = self.try_compose(g, f) {
                            // in the opposite, f∘ᵒᵖg = (g∘f)ᵒᵖ
                            v.push((f, g, gf));
                        }
                    }
                }
                v
            },
        };
        FinCat::from_raw_unchecked(raw)
    }

    /// Product category C × D with componentwise composition.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let mut objects = Vec::new();
        for a in &self.object_names {
            for b in &other.object_names {
                objects.push(format!("({},{})", a, b));
            }
        }
        let obj_id = |a: ObjId, b: ObjId| ObjId(a.0 * other.n_objects() as u32 + b.0);
        let mut morphisms = Vec::new();
        let mor_id = |a: MorId, b: MorId| MorId(a.0 * other.n_morphisms() as u32 + b.0);
        for a in self.morphisms() {
            for b in other.morphisms() {
                morphisms.push(MorData {
                    name: format!("({},{})", self.mors[a.0 as usize].name, other.mors[b.0 as usize].name),
                    src: obj_id(self.src(a), other.src(b)),
                    dst: obj_id(self.dst(a), other.dst(b)),
                });
            }
        }
        let identities = self
            .objects()
            .flat_map(|a| other.objects().map(move |b| (a, b)))
            .map(|(a, b)| mor_id(self.identity(a), other.identity(b)))
            .collect();
        let mut composites = Vec::new();
        for g1 in self.morphisms() {
            for f1 in self.morphisms() {
                let Some(c1) = self.try_compose(g1, f1) else { continue };
                for g2 in other.morphisms() {
                    for f2 in other.morphisms() {
                        let Some(c2) = other.try_compose(g2, f2) else { continue };
                        composites.push((mor_id(g1, g2), mor_id(f1, f2), mor_id(c1, c2)));
                    }
                }
            }
        }
        FinCat::from_raw_unchecked(RawCategory { objects, morphisms, identities, composites })
    }

    /// Returns an object that is both initial and terminal (least id wins).
    pub fn zero_object(&self) -> Option<ObjId> {
        self.objects().find(|&z| {
            self.objects().all(|x| self.hom(z, x).len() == 1 && self.hom(x, z).len() == 1)
        })
    }
}

/// A cone over the cospan (f: x -> z, g: y -> z) together with the apex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PullbackResult {
    pub apex: ObjId,
    pub proj1: MorId,
    pub proj2: MorId,
}

/// Exhaustive pullback of f: x->z, g: y->z. Universality is verified against
/// every cone in the category; candidates are scanned in id order so the
/// least-id apex wins.
///
/// Cones from T are counted by grouping Hom(T, x) and Hom(T, y) by their
/// composite into z; a candidate passes when its hom-set sizes match the cone
/// counts everywhere and u -> (p1∘u, p2∘u) is injective (equal finite
/// cardinalities then force the bijection).
pub fn pullback(cat: &FinCat, f: MorId, g: MorId) -> Option<PullbackResult> {
    pullback_scan(cat, f, g, true).into_iter().next()
}

/// All pullback candidates (for uniqueness-up-to-iso tests).
pub fn pullback_candidates(cat: &FinCat, f: MorId, g: MorId) -> Vec<PullbackResult> {
    pullback_scan(cat, f, g, false)
}

fn pullback_scan(cat: &FinCat, f: MorId, g: MorId, first_only: bool) -> Vec<PullbackResult> {
    assert_eq!(cat.dst(f), cat.dst(g), "pullback needs a shared codomain");
    let x = cat.src(f);
    let y = cat.src(g);
    let group = |t: ObjId, target: ObjId, m: MorId| -> HashMap<MorId, Vec<MorId>> {
        let mut by: HashMap<MorId, Vec<MorId>> = HashMap::new();
        for &t1 in cat.hom(t, target) {
            by.entry(cat.compose(m, t1)).or_default().push(t1);
        }
        by
    };
    let mut cone_counts: Vec<usize> = Vec::with_capacity(cat.n_objects());
    let mut x_groups: Vec<HashMap<MorId, Vec<MorId>>> = Vec::with_capacity(cat.n_objects());
    let mut y_groups: Vec<HashMap<MorId, Vec<MorId>>> = Vec::with_capacity(cat.n_objects());
    for t in cat.objects() {
        let gx = group(t, x, f);
        let gy = group(t, y, g);
        let count = gx.iter().map(|(h, v)| v.len() * gy.get(h).map_or(0, |w| w.len())).sum();
        cone_counts.push(count);
        x_groups.push(gx);
        y_groups.push(gy);
    }

    // test objects ordered by hom size into the apex for fast rejection
    let mut out = Vec::new();
    'apex: for apex in cat.objects() {
        if cat.objects().any(|t| cat.hom(t, apex).len() != cone_counts[t.0 as usize]) {
            continue;
        }
        let mut test_order: Vec<ObjId> = cat.objects().collect();
        test_order.sort_by_key(|t| cat.hom(*t, apex).len());
        // candidate projections: commuting pairs out of the apex
        let gx = &x_groups[apex.0 as usize];
        let gy = &y_groups[apex.0 as usize];
        let mut keys: Vec<MorId> = gx.keys().copied().collect();
        keys.sort();
        for h in keys {
            let Some(ps) = gy.get(&h) else { continue };
            for &p1 in &gx[&h] {
                for &p2 in ps {
                    let universal = test_order.iter().all(|&t| {
                        let mut seen = std::collections::HashSet::new();
                        cat.hom(t, apex)
                            .iter()
                            .all(|&u| seen.insert((cat.compose(p1, u), cat.compose(p2, u))))
                    });
                    if universal {
                        out.push(PullbackResult { apex, proj1: p1, proj2: p2 });
                        if first_only {
                            break 'apex;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Wide subcategory: a morphism-id set containing all identities and closed
/// under composition. Violations are reported, not panicked.
#[derive(Clone, Debug)]
pub struct WideSubcat {
    member: Vec<bool>,
    ids: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WideSubcatViolation {
    MissingIdentity { object: ObjId },
    NotClosed { g: MorId, f: MorId, gf: MorId },
}

impl WideSubcat {
    pub fn new(cat: &FinCat, members: impl IntoIterator<Item = MorId>) -> WideSubcat {
        let mut member = vec![false; cat.n_morphisms()];
        for m in members {
            member[m.0 as usize] = true;
        }
        let ids = (0..member.len()).filter(|&i| member[i]).map(|i| MorId(i as u32)).collect();
        WideSubcat { member, ids }
    }

    pub fn identities_only(cat: &FinCat) -> WideSubcat {
        Self::new(cat, cat.identities.iter().copied())
    }

    pub fn isos(cat: &FinCat) -> WideSubcat {
        Self::new(cat, cat.morphisms().filter(|&m| cat.is_iso(m)))
    }

    pub fn all(cat: &FinCat) -> WideSubcat {
        Self::new(cat, cat.morphisms())
    }

    #[inline]
    pub fn contains(&self, m: MorId) -> bool {
        self.member[m.0 as usize]
    }

    pub fn members(&self) -> &[MorId] {
        &self.ids
    }

    pub fn check(&self, cat: &FinCat) -> Vec<WideSubcatViolation> {
        let mut out = Vec::new();
        for o in cat.objects() {
            if !self.contains(cat.identity(o)) {
                out.push(WideSubcatViolation::MissingIdentity { object: o });
            }
        }
        for &g in &self.ids {
            for &f in &self.ids {
                if let Some(gf) = cat.try_compose(g, f) {
                    if !self.contains(gf) {
                        out.push(WideSubcatViolation::NotClosed { g, f, gf });
                    }
                }
            }
        }
        out
    }

    /// The wide subcategory as a standalone category (same objects).
    pub fn as_category(&self, cat: &FinCat) -> (FinCat, Vec<MorId>) {
        let mut back = Vec::new();
        let mut fwd = vec![u32::MAX; cat.n_morphisms()];
        for &m in &self.ids {
            fwd[m.0 as usize] = back.len() as u32;
            back.push(m);
        }
        let morphisms = back
            .iter()
            .map(|&m| MorData {
                name: cat.mors[m.0 as usize].name.clone(),
                src: cat.src(m),
                dst: cat.dst(m),
            })
            .collect();
        let identities = cat.identities.iter().map(|&i| MorId(fwd[i.0 as usize])).collect();
        let mut composites = Vec::new();
        for &g in &self.ids {
            for &f in &self.ids {
                if let Some(gf) = cat.try_compose(g, f) {
                    composites.push((
                        MorId(fwd[g.0 as usize]),
                        MorId(fwd[f.0 as usize]),
                        MorId(fwd[gf.0 as usize]),
                    ));
                }
            }
        }
        let sub = FinCat::from_raw_unchecked(RawCategory {
            objects: cat.object_names.clone(),
            morphisms,
            identities,
            composites,
        });
        (sub, back)
    }
}

/// Functor given by object and morphism tables.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { m: MorId },
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl FinFunctor {
    pub fn identity(cat: &FinCat) -> FinFunctor {
        FinFunctor {
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    pub fn on_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.0 as usize]
    }

    pub fn on_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0 as usize]
    }

    pub fn check(&self, source: &FinCat, target: &FinCat) -> Vec<FunctorViolation> {
        let mut out = Vec::new();
        if self.obj_map.len() != source.n_objects() || self.mor_map.len() != source.n_morphisms() {
            out.push(FunctorViolation::Endpoints { m: MorId(u32::MAX) });
            return out;
        }
        for m in source.morphisms() {
            let fm = self.on_mor(m);
            if target.src(fm) != self.on_obj(source.src(m))
                || target.dst(fm) != self.on_obj(source.dst(m))
            {
                out.push(FunctorViolation::Endpoints { m });
            }
        }
        for o in source.objects() {
            if self.on_mor(source.identity(o)) != target.identity(self.on_obj(o)) {
                out.push(FunctorViolation::Identity { object: o });
            }
        }
        for g in source.morphisms() {
            for f in source.morphisms() {
                if let Some(gf) = source.try_compose(g, f) {
                    let lhs = self.on_mor(gf);
                    let rhs = target.compose(self.on_mor(g), self.on_mor(f));
                    if lhs != rhs {
                        out.push(FunctorViolation::Composition { g, f });
                    }
                }
            }
        }
        out
    }

    pub fn compose(&self, inner: &FinFunctor) -> FinFunctor {
        // self ∘ inner
        FinFunctor {
            obj_map: inner.obj_map.iter().map(|&o| self.on_obj(o)).collect(),
            mor_map: inner.mor_map.iter().map(|&m| self.on_mor(m)).collect(),
        }
    }
}

/// Builder for hand-rolled categories in tests and shipped instances.
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    composites: Vec<(MorId, MorId, MorId)>,
    identities: Vec<Option<MorId>>,
}

impl CatBuilder {
    pub fn new() -> Self {
        CatBuilder { objects: Vec::new(), morphisms: Vec::new(), composites: Vec::new(), identities: Vec::new() }
    }

    pub fn object(&mut self, name: &str) -> ObjId {
        self.objects.push(name.to_string());
        self.identities.push(None);
        ObjId(self.objects.len() as u32 - 1)
    }

    pub fn morphism(&mut self, name: &str, src: ObjId, dst: ObjId) -> MorId {
        self.morphisms.push(MorData { name: name.to_string(), src, dst });
        MorId(self.morphisms.len() as u32 - 1)
    }

    pub fn identity(&mut self, o: ObjId, name: &str) -> MorId {
        let m = self.morphism(name, o, o);
        self.identities[o.0 as usize] = Some(m);
        m
    }

    pub fn composite(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.composites.push((g, f, gf));
    }

    pub fn raw(self) -> RawCategory {
        RawCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            identities: self.identities.into_iter().map(|o| o.expect("identity not set")).collect(),
            composites: self.composites,
        }
    }

    /// Fills in identity composites automatically, then builds.
    pub fn build(mut self) -> Result<FinCat, FinCatError> {
        let ids: Vec<MorId> = self.identities.iter().map(|o| o.expect("identity not set")).collect();
        let mut have: std::collections::HashSet<(MorId, MorId)> =
            self.composites.iter().map(|(g, f, _)| (*g, *f)).collect();
        for (i, m) in self.morphisms.iter().enumerate() {
            let m_id = MorId(i as u32);
            let id_src = ids[m.src.0 as usize];
            let id_dst = ids[m.dst.0 as usize];
            if have.insert((m_id, id_src)) {
                self.composites.push((m_id, id_src, m_id));
            }
            if have.insert((id_dst, m_id)) {
                self.composites.push((id_dst, m_id, m_id));
            }
        }
        FinCat::from_raw(self.raw())
    }
}

impl Default for CatBuilder {
    fn default() -> Self {
        Self::new()
    }
}
