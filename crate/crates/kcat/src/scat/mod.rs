//! Finite S-categories: π0 categories, pointedness, fibered products with
//! their universal property checked at invariant depth, stability, and the
//! fiber-sequence K0 surrogate.

use crate::abelian::AbGroupPresentation;
use crate::fincat::{FinCat, MorData, MorId, ObjId, RawCategory};
use crate::hammock::{Hammock, LhError, LhScat};
use crate::sset::{
    homotopy_fiber_product, invariant_equiv, DegSimplex, FinSSet, InvariantVerdict, SMap,
    SsetError,
};
use crate::sset::{product, Product};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScatError {
    #[error("S-category is not pointed at the requested depth")]
    NotPointed,
    #[error("no fibered product for the diagram {0}")]
    NoFiberedProduct(String),
    #[error(transparent)]
    Lh(#[from] LhError),
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// Composition data for one triple of objects: the product of the two hom
/// complexes and the composition map out of it.
pub struct CompData {
    pub product: Product,
    pub map: SMap,
}

/// S-category with explicit hom complexes and tabulated composition.
pub struct TableSCat {
    pub object_names: Vec<String>,
    pub homs: Vec<Vec<FinSSet>>,
    /// keyed by (x, y, z): hom(y,z) × hom(x,y) -> hom(x,z)
    pub comps: HashMap<(usize, usize, usize), CompData>,
    /// identity vertex per object
    pub ids: Vec<usize>,
}

impl TableSCat {
    /// Discrete homs from an ordinary category.
    pub fn discrete(cat: &FinCat, trunc: usize) -> TableSCat {
        let n = cat.n_objects();
        let homs: Vec<Vec<FinSSet>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let ms: Vec<MorId> =
                            cat.hom(ObjId(x as u32), ObjId(y as u32)).to_vec();
                        FinSSet::from_levels(
                            trunc,
                            |_| ms.clone(),
                            |_, _, t: &MorId| *t,
                            |_, _, t: &MorId| *t,
                            |_, t| cat.mors[t.0 as usize].name.clone(),
                        )
                        .0
                    })
                    .collect()
            })
            .collect();
        let mut comps = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let prod = product(&homs[y][z], &homs[x][y], trunc);
                    // image of a pair: compose the underlying morphisms
                    let images = prod
                        .pairs_by_idx
                        .iter()
                        .map(|lvl| {
                            lvl.iter()
                                .map(|(g_ds, f_ds)| {
                                    let g = cat.hom(ObjId(y as u32), ObjId(z as u32))[g_ds.base];
                                    let f = cat.hom(ObjId(x as u32), ObjId(y as u32))[f_ds.base];
                                    let c = cat.compose(g, f);
                                    let idx = cat
                                        .hom(ObjId(x as u32), ObjId(z as u32))
                                        .iter()
                                        .position(|&m| m == c)
                                        .expect("composite in hom");
                                    // degeneracy word: the pair's joint dimension
                                    let mut ds = DegSimplex::nondeg(0, idx);
                                    for _ in 0..g_ds.dim() {
                                        ds = ds.degenerate(0);
                                    }
                                    ds
                                })
                                .collect()
                        })
                        .collect();
                    comps.insert((x, y, z), CompData { product: prod, map: SMap { images } });
                }
            }
        }
        let ids = (0..n)
            .map(|x| {
                let id = cat.identity(ObjId(x as u32));
                cat.hom(ObjId(x as u32), ObjId(x as u32))
                    .iter()
                    .position(|&m| m == id)
                    .expect("identity present")
            })
            .collect();
        TableSCat { object_names: cat.object_names.clone(), homs, comps, ids }
    }

    /// One object whose hom complex is the nerve of an abelian cyclic group,
    /// composition by pointwise multiplication.
    pub fn one_object_cyclic(n: usize, trunc: usize) -> TableSCat {
        let cat = crate::instances::cyclic_group_category(n);
        let (hom, norm) = crate::sset::nerve(&cat, trunc);
        let prod = product(&hom, &hom, trunc);
        // multiply strings pointwise; recover strings through the norm table
        let by_idx: Vec<Vec<crate::sset::NerveSimplex>> = {
            let mut out: Vec<Vec<Option<crate::sset::NerveSimplex>>> =
                (0..=trunc).map(|d| vec![None; hom.n_nondeg(d)]).collect();
            for (d, table) in norm.iter().enumerate() {
                for (t, ds) in table {
                    if !ds.is_degenerate() && ds.base_dim == d {
                        out[d][ds.base] = Some(t.clone());
                    }
                }
            }
            out.into_iter()
                .map(|lvl| lvl.into_iter().map(|o| o.unwrap()).collect())
                .collect()
        };
        let str_of = |ds: &DegSimplex| -> Vec<MorId> {
            // expand the degeneracy word: degenerate entries insert identities
            let mut letters = by_idx[ds.base_dim][ds.base].letters.clone();
            for &j in ds.word.iter().rev() {
                letters.insert(j, MorId(0));
            }
            letters
        };
        let images = prod
            .pairs_by_idx
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                lvl.iter()
                    .map(|(g_ds, f_ds)| {
                        let gs = str_of(g_ds);
                        let fs = str_of(f_ds);
                        let prod_str: Vec<MorId> = gs
                            .iter()
                            .zip(&fs)
                            .map(|(a, b)| cat.compose(*a, *b))
                            .collect();
                        norm[d][&crate::sset::NerveSimplex { start: ObjId(0), letters: prod_str }]
                            .clone()
                    })
                    .collect()
            })
            .collect();
        let mut comps = HashMap::new();
        comps.insert((0, 0, 0), CompData { product: prod, map: SMap { images } });
        TableSCat {
            object_names: vec!["*".into()],
            homs: vec![vec![hom]],
            comps,
            ids: vec![0],
        }
    }

    /// Strict associativity and unit laws on simplices, exhaustively.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.object_names.len();
        for x in 0..n {
            for y in 0..n {
                self.homs[x][y].validate()?;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let hom = &self.homs[x][y];
                for d in 0..=hom.trunc {
                    for idx in 0..hom.n_nondeg(d) {
                        let s = DegSimplex::nondeg(d, idx);
                        let mut idv = DegSimplex::nondeg(0, self.ids[y]);
                        let mut ids_src = DegSimplex::nondeg(0, self.ids[x]);
                        for _ in 0..d {
                            idv = idv.degenerate(0);
                            ids_src = ids_src.degenerate(0);
                        }
                        let left = self.compose(x, y, y, &idv, &s);
                        let right = self.compose(x, x, y, &s, &ids_src);
                        if left != s || right != s {
                            return Err(format!("unit law fails at hom({},{}) dim {}", x, y, d));
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        // associativity on all triples of simplices, by dimension
                        let hx = &self.homs[x][y];
                        for d in 0..=hx.trunc {
                            for f in hx.all_simplices(d) {
                                for g in self.homs[y][z].all_simplices(d) {
                                    for h in self.homs[z][w].all_simplices(d) {
                                        let gf = self.compose(x, y, z, &g, &f);
                                        let hg = self.compose(y, z, w, &h, &g);
                                        let l = self.compose(x, z, w, &h, &gf);
                                        let r = self.compose(x, y, w, &hg, &f);
                                        if l != r {
                                            return Err(format!(
                                                "associativity fails at ({},{},{},{}) dim {}",
                                                x, y, z, w, d
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn compose(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: &DegSimplex,
        f: &DegSimplex,
    ) -> DegSimplex {
        let data = &self.comps[&(x, y, z)];
        let pair = data.product.norm[g.dim()][&(g.clone(), f.clone())].clone();
        data.map.apply(&pair)
    }
}

/// The S-categories the toolkit manipulates: tabulated ones and hammock
/// localizations.
pub enum Scat {
    Table(TableSCat),
    Lh(LhScat),
}

impl Scat {
    pub fn n_objects(&self) -> usize {
        match self {
            Scat::Table(t) => t.object_names.len(),
            Scat::Lh(l) => l.cat.n_objects(),
        }
    }

    pub fn object_name(&self, o: usize) -> String {
        match self {
            Scat::Table(t) => t.object_names[o].clone(),
            Scat::Lh(l) => l.cat.object_names[o].clone(),
        }
    }

    pub fn hom(&self, x: usize, y: usize) -> &FinSSet {
        match self {
            Scat::Table(t) => &t.homs[x][y],
            Scat::Lh(l) => &l.hom(ObjId(x as u32), ObjId(y as u32)).sset,
        }
    }

    pub fn identity_vertex(&self, x: usize) -> usize {
        match self {
            Scat::Table(t) => t.ids[x],
            Scat::Lh(l) => {
                let ms = l.hom(ObjId(x as u32), ObjId(x as u32));
                ms.vertex_index(&Hammock::identity(&l.cat, ObjId(x as u32), 0))
                    .expect("identity in window")
            }
        }
    }

    /// Composite of simplices of equal dimension; None when it leaves the
    /// enumerated window (hammock side only).
    pub fn compose_simplex(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: &DegSimplex,
        f: &DegSimplex,
    ) -> Option<DegSimplex> {
        match self {
            Scat::Table(t) => Some(t.compose(x, y, z, g, f)),
            Scat::Lh(l) => {
                let (x, y, z) = (ObjId(x as u32), ObjId(y as u32), ObjId(z as u32));
                let hg = l.hom(y, z).hammock_of(&l.cat, g);
                let hf = l.hom(x, y).hammock_of(&l.cat, f);
                let c = Hammock::compose(&l.cat, &hg, &hf);
                l.hom(x, z).simplex_of(&c)
            }
        }
    }

    /// π0 classes of a hom complex (canonical numbering) and the class of a
    /// vertex.
    pub fn hom_pi0(&self, x: usize, y: usize) -> (Vec<usize>, usize) {
        let (classes, n) = self.hom(x, y).pi0();
        (classes, n)
    }
}

/// π0 category of an S-category, with its class bookkeeping.
pub struct ScatPi0 {
    pub cat: FinCat,
    /// (x, y, component root) -> morphism
    pub class_mor: HashMap<(usize, usize, usize), MorId>,
    /// representative vertex per morphism
    pub rep_vertex: Vec<(usize, usize, usize)>,
}

pub fn pi0_cat(t: &Scat) -> Result<ScatPi0, ScatError> {
    if let Scat::Lh(l) = t {
        // delegate to the hammock machinery, then repackage
        let p = l.pi0_cat()?;
        let mut class_mor = HashMap::new();
        let mut rep_vertex = vec![(0, 0, 0); p.cat.n_morphisms()];
        for (&(x, y, c), &m) in &p.class_mor {
            class_mor.insert((x.0 as usize, y.0 as usize, c), m);
            let ms = l.hom(x, y);
            let v = ms.classes.iter().position(|&cc| cc == c).expect("class rep");
            rep_vertex[m.0 as usize] = (x.0 as usize, y.0 as usize, v);
        }
        return Ok(ScatPi0 { cat: p.cat, class_mor, rep_vertex });
    }
    let n = t.n_objects();
    let mut morphisms = Vec::new();
    let mut class_mor = HashMap::new();
    let mut rep_vertex = Vec::new();
    let mut pi0s: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let (classes, _) = t.hom_pi0(x, y);
            let mut roots: Vec<usize> = classes.clone();
            roots.sort_unstable();
            roots.dedup();
            for c in roots {
                let m = MorId(morphisms.len() as u32);
                class_mor.insert((x, y, c), m);
                morphisms.push(MorData {
                    name: format!("[{}→{}#{}]", x, y, c),
                    src: ObjId(x as u32),
                    dst: ObjId(y as u32),
                });
                let v = classes.iter().position(|&cc| cc == c).unwrap();
                rep_vertex.push((x, y, v));
            }
            pi0s.insert((x, y), classes);
        }
    }
    let identities: Vec<MorId> = (0..n)
        .map(|x| class_mor[&(x, x, pi0s[&(x, x)][t.identity_vertex(x)])])
        .collect();
    let mut composites = Vec::new();
    let keys: Vec<(usize, usize, usize)> = {
        let mut v: Vec<_> = class_mor.keys().copied().collect();
        v.sort();
        v
    };
    for &(x, y, fc) in &keys {
        for &(y2, z, gc) in &keys {
            if y2 != y {
                continue;
            }
            let fv = pi0s[&(x, y)].iter().position(|&c| c == fc).unwrap();
            let gv = pi0s[&(y, z)].iter().position(|&c| c == gc).unwrap();
            let comp = t
                .compose_simplex(
                    x,
                    y,
                    z,
                    &DegSimplex::nondeg(0, gv),
                    &DegSimplex::nondeg(0, fv),
                )
                .expect("table composition is total");
            let cc = pi0s[&(x, z)][comp.base];
            composites.push((class_mor[&(y, z, gc)], class_mor[&(x, y, fc)], class_mor[&(x, z, cc)]));
        }
    }
    // representative independence: composite class constant on components
    for &(x, y, fc) in &keys {
        for &(y2, z, gc) in &keys {
            if y2 != y {
                continue;
            }
            let mut seen: Option<usize> = None;
            for (fv, &fcc) in pi0s[&(x, y)].iter().enumerate() {
                if fcc != fc {
                    continue;
                }
                for (gv, &gcc) in pi0s[&(y, z)].iter().enumerate() {
                    if gcc != gc {
                        continue;
                    }
                    let comp = t
                        .compose_simplex(
                            x,
                            y,
                            z,
                            &DegSimplex::nondeg(0, gv),
                            &DegSimplex::nondeg(0, fv),
                        )
                        .expect("table composition is total");
                    let cc = pi0s[&(x, z)][comp.base];
                    match seen {
                        None => seen = Some(cc),
                        Some(prev) if prev != cc => {
                            return Err(ScatError::NoFiberedProduct(format!(
                                "π0 composition not well-defined at ({},{},{})",
                                x, y, z
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let cat = FinCat::from_raw_unchecked(RawCategory {
        objects: (0..n).map(|o| t.object_name(o)).collect(),
        morphisms,
        identities,
        composites,
    });
    Ok(ScatPi0 { cat, class_mor, rep_vertex })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pointedness {
    Pointed { witness: usize },
    NotPointed { reason: String },
    Inconclusive { reason: String },
}

/// Searches for an object whose in- and out-hom complexes all carry the
/// invariants of a point. Equivalent-grade verdict only.
pub fn is_pointed(t: &Scat, depth: usize) -> Pointedness {
    let n = t.n_objects();
    for o in 0..n {
        let mut ok = true;
        let mut inconclusive = None;
        for x in 0..n {
            for hom in [t.hom(x, o), t.hom(o, x)] {
                if hom.trunc < depth + 1 {
                    inconclusive = Some(format!(
                        "hom truncation {} below depth {}",
                        hom.trunc,
                        depth + 1
                    ));
                    continue;
                }
                let point = FinSSet::point(hom.trunc);
                match invariant_equiv(hom, &point, depth) {
                    InvariantVerdict::Equivalent => {}
                    _ => {
                        ok = false;
                    }
                }
            }
        }
        if let Some(reason) = inconclusive {
            return Pointedness::Inconclusive { reason };
        }
        if ok {
            return Pointedness::Pointed { witness: o };
        }
    }
    Pointedness::NotPointed { reason: "no object has contractible in/out homs".into() }
}

/// Fibered product witness: apex with projections and the connecting edge,
/// plus the per-object universality verdicts.
#[derive(Clone, Debug)]
pub struct FpWitness {
    pub apex: usize,
    pub p_vertex: usize,
    pub q_vertex: usize,
    pub h_edge: usize,
    pub universality: Vec<(usize, InvariantVerdict)>,
}

/// Exhaustive search for a fibered product of x -u-> z <-v- y, in candidate
/// order (object, p vertex, q vertex, edge). The universal property is tested
/// through the homotopy fiber product of hom complexes at the given depth;
/// the comparison maps induced by (p, q, h) are built and validated for the
/// returned witness.
pub fn find_fibered_product(
    t: &Scat,
    x: usize,
    y: usize,
    z: usize,
    u_vertex: usize,
    v_vertex: usize,
    depth: usize,
) -> Result<Option<FpWitness>, ScatError> {
    let n = t.n_objects();
    // corner data is candidate-independent
    let mut corners: Vec<Option<CornerData>> = Vec::with_capacity(n);
    for w in 0..n {
        corners.push(corner_for(t, w, x, y, z, u_vertex, v_vertex, depth)?);
    }
    for apex in 0..n {
        // the invariant verdicts only depend on the apex
        let univ: Vec<(usize, InvariantVerdict)> = (0..n)
            .map(|w| {
                let dom = t.hom(w, apex);
                let v = match &corners[w] {
                    None => {
                        InvariantVerdict::Inconclusive("window escape or truncation".into())
                    }
                    Some(c) => invariant_equiv(dom, &c.hfp.sset, depth),
                };
                (w, v)
            })
            .collect();
        if !univ.iter().all(|(_, v)| matches!(v, InvariantVerdict::Equivalent)) {
            continue;
        }
        let hom_tx = t.hom(apex, x);
        let hom_ty = t.hom(apex, y);
        let hom_tz = t.hom(apex, z);
        // index edges by (d0, d1) vertex pair: ∂0 h = u∘p, ∂1 h = v∘q
        let mut edges_by_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for e in 0..hom_tz.n_nondeg(1) {
            let s = DegSimplex::nondeg(1, e);
            let d0 = hom_tz.face_of(0, &s).base;
            let d1 = hom_tz.face_of(1, &s).base;
            edges_by_faces.entry((d0, d1)).or_default().push(e);
        }
        for p in 0..hom_tx.n_nondeg(0) {
            let up = t.compose_simplex(
                apex,
                x,
                z,
                &DegSimplex::nondeg(0, u_vertex),
                &DegSimplex::nondeg(0, p),
            );
            let Some(up) = up else { continue };
            for q in 0..hom_ty.n_nondeg(0) {
                let vq = t.compose_simplex(
                    apex,
                    y,
                    z,
                    &DegSimplex::nondeg(0, v_vertex),
                    &DegSimplex::nondeg(0, q),
                );
                let Some(vq) = vq else { continue };
                let mut candidates: Vec<Option<usize>> = Vec::new();
                if up.base == vq.base {
                    candidates.push(None); // degenerate edge witness
                }
                if let Some(es) = edges_by_faces.get(&(up.base, vq.base)) {
                    candidates.extend(es.iter().map(|&e| Some(e)));
                }
                'cand: for h in candidates {
                    // the comparison maps induced by this candidate must exist
                    for w in 0..n {
                        let Some(corner) = &corners[w] else { continue 'cand };
                        if comparison_map(t, w, x, y, z, apex, p, q, h, u_vertex, v_vertex, corner)
                            .is_none()
                        {
                            continue 'cand;
                        }
                    }
                    return Ok(Some(FpWitness {
                        apex,
                        p_vertex: p,
                        q_vertex: q,
                        h_edge: h.unwrap_or(usize::MAX),
                        universality: univ,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The comparison SMap hom(w, apex) -> hom(w,x) ×^h_{hom(w,z)} hom(w,y)
/// induced by (p, q, h), landing in the corner's homotopy fiber product.
/// Returns None when some composite escapes the enumeration window (hammock
/// side) or the assembled simplex is not a member of the fiber product.
#[allow(clippy::too_many_arguments)]
fn comparison_map(
    t: &Scat,
    w: usize,
    x: usize,
    y: usize,
    z: usize,
    apex: usize,
    p_vertex: usize,
    q_vertex: usize,
    h_edge: Option<usize>,
    u_vertex: usize,
    _v_vertex: usize,
    corner: &CornerData,
) -> Option<SMap> {
    let dom = t.hom(w, apex);
    let hfp = &corner.hfp;
    let out_trunc = hfp.sset.trunc;
    if dom.trunc < out_trunc {
        return None;
    }
    let hom_tz = t.hom(apex, z);

    // classifying images of the homotopy edge at Δ¹ simplices
    let h_vertex_images: [DegSimplex; 2];
    let h_edge_image: DegSimplex;
    match h_edge {
        Some(e) => {
            let s = DegSimplex::nondeg(1, e);
            // vertex 0 of the edge is d1, vertex 1 is d0
            h_vertex_images = [hom_tz.face_of(1, &s), hom_tz.face_of(0, &s)];
            h_edge_image = s;
        }
        None => {
            let up = t.compose_simplex(
                apex,
                x,
                z,
                &DegSimplex::nondeg(0, u_vertex),
                &DegSimplex::nondeg(0, p_vertex),
            )?;
            h_vertex_images = [up.clone(), up.clone()];
            h_edge_image = up.degenerate(0);
        }
    }
    let h_at = |alpha: &DegSimplex| -> DegSimplex {
        // alpha lives over the Δ¹ complex: vertices 0,1 and one edge
        let base = if alpha.base_dim == 0 {
            h_vertex_images[alpha.base].clone()
        } else {
            h_edge_image.clone()
        };
        let mut img = base;
        for &j in alpha.word.iter().rev() {
            img = img.degenerate(j);
        }
        img
    };

    // composite of simplices into the (possibly widened) corner complexes
    let comp_corner = |target: Corner, g: &DegSimplex, f: &DegSimplex| -> Option<DegSimplex> {
        match (t, corner) {
            (Scat::Table(ts), _) => match target {
                Corner::X => Some(ts.compose(w, apex, x, g, f)),
                Corner::Y => Some(ts.compose(w, apex, y, g, f)),
                Corner::ZfromApex => Some(ts.compose(w, apex, z, g, f)),
            },
            (Scat::Lh(l), c) => {
                let cat = &l.cat;
                let g_h = match target {
                    Corner::X => l.hom(ObjId(apex as u32), ObjId(x as u32)).hammock_of(cat, g),
                    Corner::Y => l.hom(ObjId(apex as u32), ObjId(y as u32)).hammock_of(cat, g),
                    Corner::ZfromApex => {
                        l.hom(ObjId(apex as u32), ObjId(z as u32)).hammock_of(cat, g)
                    }
                };
                let f_h = l.hom(ObjId(w as u32), ObjId(apex as u32)).hammock_of(cat, f);
                let comp = Hammock::compose(cat, &g_h, &f_h);
                // locate in the corner complex through its normal tables
                match (target, &c.lh_spaces) {
                    (Corner::X, Some((xs, _, _))) => xs.simplex_of(&comp),
                    (Corner::Y, Some((_, ys, _))) => ys.simplex_of(&comp),
                    (Corner::ZfromApex, Some((_, _, zs))) => zs.simplex_of(&comp),
                    _ => None,
                }
            }
        }
    };

    let promote = |v: usize, d: usize| {
        let mut ds = DegSimplex::nondeg(0, v);
        for _ in 0..d {
            ds = ds.degenerate(0);
        }
        ds
    };

    let mut images: Vec<Vec<DegSimplex>> = Vec::with_capacity(out_trunc + 1);
    for d in 0..=out_trunc {
        let mut lvl = Vec::with_capacity(dom.n_nondeg(d));
        for idx in 0..dom.n_nondeg(d) {
            let sigma = DegSimplex::nondeg(d, idx);
            let sx = comp_corner(Corner::X, &promote(p_vertex, d), &sigma)?;
            let sy = comp_corner(Corner::Y, &promote(q_vertex, d), &sigma)?;
            // prism: the table over Δ¹ × Δ^d with values in the z corner
            let fc = &hfp.path_z;
            let mut table: Vec<DegSimplex> = Vec::new();
            for dd in 0..=fc.products[d].sset.trunc {
                for (alpha, beta) in &fc.products[d].pairs_by_idx[dd] {
                    let h_part = h_at(alpha);
                    let sigma_part = simplex_face_by_monotone(dom, &sigma, beta, d);
                    let val = comp_corner(Corner::ZfromApex, &h_part, &sigma_part)?;
                    table.push(val);
                }
            }
            let path_ds = fc.norm[d].get(&table)?.clone();
            let pair_xy = hfp.prod_xy.norm[d].get(&(sx, sy))?.clone();
            let hfp_ds = hfp.inner.norm[d].get(&(pair_xy, path_ds))?.clone();
            lvl.push(hfp_ds);
        }
        images.push(lvl);
    }
    let map = SMap { images };
    // face commutation within the shared truncation
    for d in 1..=out_trunc {
        for idx in 0..dom.n_nondeg(d) {
            let s = DegSimplex::nondeg(d, idx);
            for i in 0..=d {
                let lhs = apply_within(&map, &dom.face_of(i, &s));
                let rhs = hfp.sset.face_of(i, &map.images[d][idx]);
                if lhs != rhs {
                    return None;
                }
            }
        }
    }
    Some(map)
}

enum Corner {
    X,
    Y,
    ZfromApex,
}

fn apply_within(map: &SMap, ds: &DegSimplex) -> DegSimplex {
    let mut img = map.images[ds.base_dim][ds.base].clone();
    for &j in ds.word.iter().rev() {
        img = img.degenerate(j);
    }
    img
}

/// The β-indexed face of σ: β is a simplex of the Δ^d factor (a monotone map
/// through the normal form of the standard simplex); its underlying
/// nondegenerate monotone map selects a face of σ, degeneracies carry over.
fn simplex_face_by_monotone(
    dom: &FinSSet,
    sigma: &DegSimplex,
    beta: &DegSimplex,
    d: usize,
) -> DegSimplex {
    let m = delta_nondeg_map(beta.base_dim, d, beta.base);
    // face of σ on the vertex subset m: delete complement indices descending
    let mut cur = sigma.clone();
    for j in (0..=d).rev() {
        if !m.contains(&j) {
            cur = dom.face_of(j, &cur);
        }
    }
    let mut img = cur;
    for &j in beta.word.iter().rev() {
        img = img.degenerate(j);
    }
    img
}

/// Reconstructs the monotone injective map behind a nondegenerate simplex of
/// Δ^n in enumeration order.
fn delta_nondeg_map(dim: usize, n: usize, idx: usize) -> Vec<usize> {
    crate::sset::monotone_maps(dim, n)
        .into_iter()
        .filter(|m| m.windows(2).all(|w| w[0] < w[1]))
        .nth(idx)
        .expect("nondegenerate index valid")
}

/// Corner complexes of one universality comparison: the homotopy fiber
/// product of hom complexes over a fixed test object, plus the widened
/// mapping spaces needed to locate composites on the hammock side.
struct CornerData {
    hfp: crate::sset::Hfp,
    lh_spaces: Option<(crate::hammock::MappingSpace, crate::hammock::MappingSpace, crate::hammock::MappingSpace)>,
}

/// For every object w, compare hom(w, apex) with the homotopy fiber product
/// hom(w,x) ×^h_{hom(w,z)} hom(w,y) at the given depth. The corner complexes
/// are cached per (w) by the caller since they do not depend on candidates.
fn corner_for(
    t: &Scat,
    w: usize,
    x: usize,
    y: usize,
    z: usize,
    u_vertex: usize,
    v_vertex: usize,
    depth: usize,
) -> Result<Option<CornerData>, ScatError> {
    let _ = v_vertex;
    let out_trunc = depth + 1;
    match t {
        Scat::Table(ts) => {
            let x_sset = ts.homs[w][x].clone();
            let y_sset = ts.homs[w][y].clone();
            let z_sset = ts.homs[w][z].clone();
            if z_sset.trunc < out_trunc + 1 {
                return Ok(None);
            }
            let promote = |v: usize, d: usize| {
                let mut ds = DegSimplex::nondeg(0, v);
                for _ in 0..d {
                    ds = ds.degenerate(0);
                }
                ds
            };
            let f_map = SMap {
                images: (0..=x_sset.trunc)
                    .map(|d| {
                        (0..x_sset.n_nondeg(d))
                            .map(|i| {
                                ts.compose(w, x, z, &promote(u_vertex, d), &DegSimplex::nondeg(d, i))
                            })
                            .collect()
                    })
                    .collect(),
            };
            let g_map = SMap {
                images: (0..=y_sset.trunc)
                    .map(|d| {
                        (0..y_sset.n_nondeg(d))
                            .map(|i| {
                                ts.compose(w, y, z, &promote(v_vertex, d), &DegSimplex::nondeg(d, i))
                            })
                            .collect()
                    })
                    .collect(),
            };
            let hfp = homotopy_fiber_product(&x_sset, &y_sset, &z_sset, &f_map, &g_map, out_trunc)?;
            Ok(Some(CornerData { hfp, lh_spaces: None }))
        }
        Scat::Lh(l) => {
            let cat = &l.cat;
            let (ow, ox, oy, oz) =
                (ObjId(w as u32), ObjId(x as u32), ObjId(y as u32), ObjId(z as u32));
            let u_h = l.hom(ox, oz).verts[u_vertex].clone();
            let v_h = l.hom(oy, oz).verts[v_vertex].clone();
            let b1 = l.width_bound;
            let b2 = b1 + u_h.width().max(v_h.width());
            let k3 = out_trunc + 1;
            let xs = crate::hammock::mapping_space(cat, &l.w, ow, ox, b1, k3);
            let ys = crate::hammock::mapping_space(cat, &l.w, ow, oy, b1, k3);
            let zs = crate::hammock::mapping_space(cat, &l.w, ow, oz, b2, k3);
            let lift = |ms: &crate::hammock::MappingSpace,
                        zms: &crate::hammock::MappingSpace,
                        with: &Hammock|
             -> Option<SMap> {
                let mut images = Vec::new();
                for d in 0..=ms.sset.trunc {
                    let mut lvl = Vec::new();
                    for idx in 0..ms.sset.n_nondeg(d) {
                        let h = &ms.nondeg_by_idx[d][idx];
                        let mut tall = with.clone();
                        while tall.height < h.height {
                            tall = tall.repeat_row(cat, 0);
                        }
                        let c = Hammock::compose(cat, &tall, h);
                        lvl.push(zms.simplex_of(&c)?);
                    }
                    images.push(lvl);
                }
                Some(SMap { images })
            };
            let Some(f_map) = lift(&xs, &zs, &u_h) else { return Ok(None) };
            let Some(g_map) = lift(&ys, &zs, &v_h) else { return Ok(None) };
            let hfp =
                homotopy_fiber_product(&xs.sset, &ys.sset, &zs.sset, &f_map, &g_map, out_trunc)?;
            Ok(Some(CornerData { hfp, lh_spaces: Some((xs, ys, zs)) }))
        }
    }
}

/// K0 of a pointed S-category with fibered products: generators are π0
/// isomorphism classes of objects, relations from homotopy fiber sequences.
pub fn k0_scat(t: &Scat, depth: usize) -> Result<AbGroupPresentation, ScatError> {
    let star = match is_pointed(t, depth) {
        Pointedness::Pointed { witness } => witness,
        _ => return Err(ScatError::NotPointed),
    };
    let pi0 = pi0_cat(t)?;
    // object isomorphism classes in the π0 category
    let n = t.n_objects();
    let mut class_of: Vec<usize> = (0..n).collect();
    for x in 0..n {
        for y in 0..n {
            if x < y {
                let iso = pi0
                    .cat
                    .hom(ObjId(x as u32), ObjId(y as u32))
                    .iter()
                    .any(|&m| pi0.cat.is_iso(m));
                if iso {
                    let (a, b) = (class_of[x].min(class_of[y]), class_of[x].max(class_of[y]));
                    for c in class_of.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                }
            }
        }
    }
    let mut reps: Vec<usize> = class_of.clone();
    reps.sort_unstable();
    reps.dedup();
    let gen_of: HashMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut pres = AbGroupPresentation::new(
        reps.iter().map(|&r| format!("[{}]", t.object_name(r))).collect(),
    );
    pres.add_sparse_relation(&[(gen_of[&class_of[star]], 1)]);

    // one relation per π0 morphism with a found homotopy fiber
    let mut keys: Vec<(usize, usize, usize)> = pi0.class_mor.keys().copied().collect();
    keys.sort();
    for (y, x, c) in keys {
        let m = pi0.class_mor[&(y, x, c)];
        let (yy, xx, v_vertex) = pi0.rep_vertex[m.0 as usize];
        debug_assert_eq!((yy, xx), (y, x));
        // u: * -> x, the first vertex of hom(*, x)
        if t.hom(star, x).n_nondeg(0) == 0 {
            return Err(ScatError::NoFiberedProduct(format!(
                "no vertex * -> {}",
                t.object_name(x)
            )));
        }
        let found = find_fibered_product(t, star, y, x, 0, v_vertex, depth)?;
        let w = found.ok_or_else(|| {
            ScatError::NoFiberedProduct(format!(
                "* -> {} <- {} (class {})",
                t.object_name(x),
                t.object_name(y),
                c
            ))
        })?;
        // [y] = [x] + [fiber]
        pres.add_sparse_relation(&[
            (gen_of[&class_of[y]], 1),
            (gen_of[&class_of[x]], -1),
            (gen_of[&class_of[w.apex]], -1),
        ]);
    }
    Ok(pres)
}

/// Functor between S-categories: object map plus one simplicial map per hom.
pub struct ScatFunctor {
    pub obj_map: Vec<usize>,
    /// hom_maps[(x, y)]: hom_S(x,y) -> hom_T(Fx,Fy)
    pub hom_maps: HashMap<(usize, usize), SMap>,
}

impl ScatFunctor {
    pub fn identity(t: &Scat) -> ScatFunctor {
        let n = t.n_objects();
        let mut hom_maps = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                hom_maps.insert((x, y), SMap::identity(t.hom(x, y)));
            }
        }
        ScatFunctor { obj_map: (0..n).collect(), hom_maps }
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub essentially_surjective: Result<(), String>,
    pub hom_verdicts: Vec<((usize, usize), InvariantVerdict)>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective.is_ok()
            && self.hom_verdicts.iter().all(|(_, v)| matches!(v, InvariantVerdict::Equivalent))
    }
}

/// Essential surjectivity on π0 plus hom-space comparison per pair: the
/// induced map must be bijective on components and invariants must agree.
pub fn check_equivalence(
    f: &ScatFunctor,
    src: &Scat,
    dst: &Scat,
    depth: usize,
) -> Result<EquivalenceReport, ScatError> {
    let pi0_dst = pi0_cat(dst)?;
    let mut ess: Result<(), String> = Ok(());
    'outer: for y in 0..dst.n_objects() {
        for &fx in &f.obj_map {
            let iso = pi0_dst
                .cat
                .hom(ObjId(fx as u32), ObjId(y as u32))
                .iter()
                .any(|&m| pi0_dst.cat.is_iso(m));
            if iso {
                continue 'outer;
            }
        }
        ess = Err(format!("object {} not reached up to equivalence", dst.object_name(y)));
        break;
    }
    let mut hom_verdicts = Vec::new();
    for x in 0..src.n_objects() {
        for y in 0..src.n_objects() {
            let hs = src.hom(x, y);
            let ht = dst.hom(f.obj_map[x], f.obj_map[y]);
            let map = &f.hom_maps[&(x, y)];
            // induced π0 map must be a bijection on components
            let (cs, ns) = hs.pi0();
            let (ct, nt) = ht.pi0();
            let mut image: HashMap<usize, usize> = HashMap::new();
            let mut injective = true;
            for v in 0..hs.n_nondeg(0) {
                let img = map.images[0][v].base;
                if let Some(prev) = image.insert(cs[v], ct[img]) {
                    if prev != ct[img] {
                        injective = false;
                    }
                }
            }
            let distinct: std::collections::HashSet<usize> = image.values().copied().collect();
            let verdict = if !injective || distinct.len() != ns.min(image.len()) {
                InvariantVerdict::Distinguished("induced π0 map not injective".into())
            } else if distinct.len() != nt {
                InvariantVerdict::Distinguished(format!(
                    "induced π0 map hits {} of {} components",
                    distinct.len(),
                    nt
                ))
            } else {
                invariant_equiv(hs, ht, depth)
            };
            hom_verdicts.push(((x, y), verdict));
        }
    }
    Ok(EquivalenceReport { essentially_surjective: ess, hom_verdicts })
}

/// Loop object on π0: the apex class of a fibered product of * -> x <- *.
pub fn loop_on_pi0(t: &Scat, x: usize, depth: usize) -> Result<usize, ScatError> {
    let star = match is_pointed(t, depth) {
        Pointedness::Pointed { witness } => witness,
        _ => return Err(ScatError::NotPointed),
    };
    if t.hom(star, x).n_nondeg(0) == 0 {
        return Err(ScatError::NoFiberedProduct(format!("no vertex * -> {}", t.object_name(x))));
    }
    let found = find_fibered_product(t, star, star, x, 0, 0, depth)?;
    let w = found.ok_or_else(|| {
        ScatError::NoFiberedProduct(format!(
            "* -> {} <- * has no fibered product",
            t.object_name(x)
        ))
    })?;
    Ok(w.apex)
}

/// The opposite S-category.
pub fn opposite(t: &Scat) -> Scat {
    match t {
        Scat::Lh(l) => {
            let op = l.cat.opposite();
            let w = crate::fincat::WideSubcat::new(&op, l.w.members().iter().copied());
            Scat::Lh(crate::hammock::build_lh(&op, &w, l.width_bound, l.k))
        }
        Scat::Table(ts) => {
            let n = ts.object_names.len();
            let homs: Vec<Vec<FinSSet>> =
                (0..n).map(|x| (0..n).map(|y| ts.homs[y][x].clone()).collect()).collect();
            let mut comps = HashMap::new();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        // hom_op(y,z) × hom_op(x,y) = hom(z,y) × hom(y,x) -> hom(z,x)
                        let prod = product(&homs[y][z], &homs[x][y], homs[y][z].trunc);
                        let images = prod
                            .pairs_by_idx
                            .iter()
                            .map(|lvl| {
                                lvl.iter()
                                    .map(|(g_ds, f_ds)| ts.compose(z, y, x, f_ds, g_ds))
                                    .collect()
                            })
                            .collect();
                        comps.insert((x, y, z), CompData { product: prod, map: SMap { images } });
                    }
                }
            }
            Scat::Table(TableSCat {
                object_names: ts.object_names.clone(),
                homs,
                comps,
                ids: ts.ids.clone(),
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct StableReport {
    pub pointed: Result<usize, String>,
    pub fibered_products: Result<(), String>,
    pub fibered_coproducts: Result<(), String>,
    pub loop_functor: Result<(), String>,
}

impl StableReport {
    pub fn is_stable(&self) -> bool {
        self.pointed.is_ok()
            && self.fibered_products.is_ok()
            && self.fibered_coproducts.is_ok()
            && self.loop_functor.is_ok()
    }
}

/// The three stability conditions: pointedness, fibered products both ways,
/// and the loop functor an equivalence on π0 (checked as surjectivity and
/// injectivity on isomorphism classes plus hom-set size bijectivity).
pub fn is_stable(t: &Scat, depth: usize) -> Result<StableReport, ScatError> {
    let pointed = match is_pointed(t, depth) {
        Pointedness::Pointed { witness } => Ok(witness),
        Pointedness::NotPointed { reason } => Err(reason),
        Pointedness::Inconclusive { reason } => Err(format!("inconclusive: {}", reason)),
    };

    let sweep = |s: &Scat| -> Result<(), String> {
        let pi0 = pi0_cat(s).map_err(|e| e.to_string())?;
        let mut keys: Vec<(usize, usize, usize)> = pi0.class_mor.keys().copied().collect();
        keys.sort();
        for &(x, z, c1) in &keys {
            for &(y, z2, c2) in &keys {
                if z2 != z {
                    continue;
                }
                let m1 = pi0.class_mor[&(x, z, c1)];
                let m2 = pi0.class_mor[&(y, z, c2)];
                let (_, _, u) = pi0.rep_vertex[m1.0 as usize];
                let (_, _, v) = pi0.rep_vertex[m2.0 as usize];
                let found =
                    find_fibered_product(s, x, y, z, u, v, depth).map_err(|e| e.to_string())?;
                if found.is_none() {
                    return Err(format!(
                        "no fibered product over {} <- ... -> {}",
                        s.object_name(x),
                        s.object_name(y)
                    ));
                }
            }
        }
        Ok(())
    };
    let fibered_products = if pointed.is_ok() { sweep(t) } else { Err("not pointed".into()) };
    let op = opposite(t);
    let fibered_coproducts = if pointed.is_ok() { sweep(&op) } else { Err("not pointed".into()) };

    let loop_functor = (|| -> Result<(), String> {
        let star = *pointed.as_ref().map_err(|e| e.clone())?;
        let _ = star;
        let pi0 = pi0_cat(t).map_err(|e| e.to_string())?;
        let n = t.n_objects();
        // isomorphism classes of objects
        let mut class_of: Vec<usize> = (0..n).collect();
        for a in 0..n {
            for b in 0..n {
                if a < b
                    && pi0
                        .cat
                        .hom(ObjId(a as u32), ObjId(b as u32))
                        .iter()
                        .any(|&m| pi0.cat.is_iso(m))
                {
                    let (lo, hi) = (class_of[a].min(class_of[b]), class_of[a].max(class_of[b]));
                    for c in class_of.iter_mut() {
                        if *c == hi {
                            *c = lo;
                        }
                    }
                }
            }
        }
        let mut reps: Vec<usize> = class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut omega: HashMap<usize, usize> = HashMap::new();
        for &r in &reps {
            let apex = loop_on_pi0(t, r, depth).map_err(|e| e.to_string())?;
            omega.insert(r, class_of[apex]);
        }
        // essential surjectivity and injectivity on classes
        let image: std::collections::HashSet<usize> = omega.values().copied().collect();
        if image.len() != omega.len() {
            return Err("loop functor not injective on isomorphism classes".into());
        }
        if !reps.iter().all(|r| image.contains(r)) {
            return Err("loop functor not essentially surjective".into());
        }
        // bijectivity on π0 hom-sets by cardinality
        for &a in &reps {
            for &b in &reps {
                let before = pi0.cat.hom(ObjId(a as u32), ObjId(b as u32)).len();
                let after = pi0
                    .cat
                    .hom(ObjId(omega[&a] as u32), ObjId(omega[&b] as u32))
                    .len();
                if before != after {
                    return Err(format!(
                        "hom-set sizes differ under the loop functor at ({}, {})",
                        t.object_name(a),
                        t.object_name(b)
                    ));
                }
            }
        }
        Ok(())
    })();

    Ok(StableReport { pointed, fibered_products, fibered_coproducts, loop_functor })
}
