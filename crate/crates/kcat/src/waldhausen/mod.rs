//! Categories with fibrations and weak equivalences, checked against the
//! dualized axiom list, plus factorization machinery and the goodness proxy.
//!
//! Pullback-existence axioms are checked computably: pullbacks that exist in
//! the finite base must have fibration projections, and the fibers that the
//! string construction and K0 machinery consume must exist. Finite truncations
//! of large categories necessarily lack some products; those cospans are
//! reported as skipped rather than silently ignored.

use crate::fincat::{
    pullback, FinCat, FinFunctor, MorId, ObjId, PullbackResult, WideSubcat, WideSubcatViolation,
};
use std::collections::HashMap;
use std::sync::Mutex;

mod k0;
mod sn;
pub use k0::{induced_k0_map, k0_presentation, k0_via_pi1, K0Error};
pub use sn::{build_sn, k_space, FibString, Ladder, SnCategory, SnTower};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WaldError {
    #[error("required pullback escapes the finite base: {0}")]
    ClosureEscape(String),
}

/// A finite category with chosen weak equivalences, fibrations and zero object.
pub struct WaldStructure {
    pub cat: FinCat,
    pub weq: WideSubcat,
    pub fib: WideSubcat,
    pub zero: ObjId,
    pullback_cache: Mutex<HashMap<(MorId, MorId), Option<PullbackResult>>>,
}

impl Clone for WaldStructure {
    fn clone(&self) -> Self {
        WaldStructure {
            cat: self.cat.clone(),
            weq: self.weq.clone(),
            fib: self.fib.clone(),
            zero: self.zero,
            pullback_cache: Mutex::new(self.pullback_cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for WaldStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "WaldStructure({} objects, {} morphisms, {} weq, {} fib)",
            self.cat.n_objects(),
            self.cat.n_morphisms(),
            self.weq.members().len(),
            self.fib.members().len()
        )
    }
}

impl WaldStructure {
    pub fn new(cat: FinCat, weq: Vec<MorId>, fib: Vec<MorId>, zero: ObjId) -> WaldStructure {
        let weq = WideSubcat::new(&cat, weq);
        let fib = WideSubcat::new(&cat, fib);
        WaldStructure { cat, weq, fib, zero, pullback_cache: Mutex::new(HashMap::new()) }
    }

    /// Cached exhaustive pullback of the cospan (f, g).
    pub fn pullback(&self, f: MorId, g: MorId) -> Option<PullbackResult> {
        if let Some(hit) = self.pullback_cache.lock().unwrap().get(&(f, g)) {
            return *hit;
        }
        let r = pullback(&self.cat, f, g);
        self.pullback_cache.lock().unwrap().insert((f, g), r);
        r
    }

    /// The unique morphism x -> zero (zero must be terminal).
    pub fn to_zero(&self, x: ObjId) -> MorId {
        let hom = self.cat.hom(x, self.zero);
        debug_assert_eq!(hom.len(), 1);
        hom[0]
    }

    /// The unique morphism zero -> x.
    pub fn from_zero(&self, x: ObjId) -> MorId {
        let hom = self.cat.hom(self.zero, x);
        debug_assert_eq!(hom.len(), 1);
        hom[0]
    }

    /// Fiber of a fibration f: y -> x, i.e. the pullback of zero -> x along f.
    pub fn fiber(&self, f: MorId) -> Option<PullbackResult> {
        let z = self.from_zero(self.cat.dst(f));
        self.pullback(f, z)
    }

    /// Trivial fibrations: fibrations that are also weak equivalences.
    pub fn trivial_fibrations(&self) -> Vec<MorId> {
        self.fib.members().iter().copied().filter(|&m| self.weq.contains(m)).collect()
    }

    pub fn opposite_like(&self) -> (FinCat, Vec<MorId>, Vec<MorId>) {
        let op = self.cat.opposite();
        (op, self.weq.members().to_vec(), self.fib.members().to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    ZeroObject,
    WeqClosure,
    FibClosure,
    Cof1,
    Cof2,
    Cof3,
    Weq1,
    Weq2,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::ZeroObject => "zero-object",
            Axiom::WeqClosure => "weq-subcategory",
            Axiom::FibClosure => "fib-subcategory",
            Axiom::Cof1 => "(Cof1)op",
            Axiom::Cof2 => "(Cof2)op",
            Axiom::Cof3 => "(Cof3)op",
            Axiom::Weq1 => "(Weq1)op",
            Axiom::Weq2 => "(Weq2)op",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weq2SweepMode {
    Full,
    /// One non-identity vertical per diagram; used when the full triple sweep
    /// exceeds the budget.
    AxisRestricted,
}

#[derive(Clone, Debug)]
pub struct WaldReport {
    pub verdicts: Vec<AxiomVerdict>,
    pub weq2_mode: Weq2SweepMode,
    /// cospans whose pullback does not exist in the finite base; informational
    pub skipped_cospans: usize,
}

impl WaldReport {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.verdicts.iter().filter(|v| !v.pass).map(|v| v.axiom).collect()
    }
}

const WEQ2_FULL_SWEEP_BUDGET: usize = 20_000_000;

/// Exhaustively checks the six structure axioms, reporting one verdict per
/// axiom with a minimal witness on failure.
pub fn check_waldhausen(w: &WaldStructure) -> WaldReport {
    let cat = &w.cat;
    let mut verdicts = Vec::new();

    // zero object
    let zero_ok = cat
        .objects()
        .all(|x| cat.hom(w.zero, x).len() == 1 && cat.hom(x, w.zero).len() == 1);
    verdicts.push(AxiomVerdict {
        axiom: Axiom::ZeroObject,
        pass: zero_ok,
        witness: (!zero_ok).then(|| format!("object {} is not a zero object", w.zero)),
    });

    // wide subcategory closure
    for (axiom, sub) in [(Axiom::WeqClosure, &w.weq), (Axiom::FibClosure, &w.fib)] {
        let violations = sub.check(cat);
        verdicts.push(AxiomVerdict {
            axiom,
            pass: violations.is_empty(),
            witness: violations.first().map(|v| match v {
                WideSubcatViolation::MissingIdentity { object } => {
                    format!("missing identity of {}", object)
                }
                WideSubcatViolation::NotClosed { g, f, gf } => {
                    format!("not closed: {}∘{} = {}", g, f, gf)
                }
            }),
        });
    }

    // (Cof1)op and (Weq1)op: all isomorphisms
    for (axiom, sub) in [(Axiom::Cof1, &w.fib), (Axiom::Weq1, &w.weq)] {
        let missing = cat.morphisms().find(|&m| cat.is_iso(m) && !sub.contains(m));
        verdicts.push(AxiomVerdict {
            axiom,
            pass: missing.is_none(),
            witness: missing.map(|m| format!("isomorphism {} not a member", m)),
        });
    }

    // (Cof2)op: x -> zero is a fibration
    let cof2_witness = if zero_ok {
        cat.objects().find(|&x| !w.fib.contains(w.to_zero(x)))
    } else {
        None
    };
    verdicts.push(AxiomVerdict {
        axiom: Axiom::Cof2,
        pass: zero_ok && cof2_witness.is_none(),
        witness: if !zero_ok {
            Some("no zero object".into())
        } else {
            cof2_witness.map(|x| format!("{} -> zero is not a fibration", x))
        },
    });

    // (Cof3)op, computable reading:
    //   (i) every existing pullback of a fibration has a fibration projection,
    //   (ii) the fiber of every fibration exists in the base.
    let mut cof3_witness: Option<String> = None;
    let mut skipped = 0usize;
    'cof3: for &f in w.fib.members() {
        let y = cat.dst(f);
        for g in cat.hom_into(y) {
            match w.pullback(f, g) {
                Some(pb) => {
                    if !w.fib.contains(pb.proj2) {
                        cof3_witness = Some(format!(
                            "pullback of fibration {} along {}: projection {} not a fibration",
                            f, g, pb.proj2
                        ));
                        break 'cof3;
                    }
                }
                None => {
                    skipped += 1;
                    if zero_ok && g == w.from_zero(y) {
                        cof3_witness =
                            Some(format!("fiber of fibration {} missing from the base", f));
                        break 'cof3;
                    }
                }
            }
        }
    }
    verdicts.push(AxiomVerdict {
        axiom: Axiom::Cof3,
        pass: cof3_witness.is_none(),
        witness: cof3_witness,
    });

    // (Weq2)op gluing
    let (weq2_witness, weq2_mode) = check_weq2(w);
    verdicts.push(AxiomVerdict {
        axiom: Axiom::Weq2,
        pass: weq2_witness.is_none(),
        witness: weq2_witness,
    });

    WaldReport { verdicts, weq2_mode, skipped_cospans: skipped }
}

/// Vertical triples for the gluing sweep: full cartesian product when within
/// budget, otherwise one non-identity vertical at a time.
fn check_weq2(w: &WaldStructure) -> (Option<String>, Weq2SweepMode) {
    let cat = &w.cat;
    // cospans with existing pullbacks
    let mut cospans: Vec<(MorId, MorId, PullbackResult)> = Vec::new();
    for &p in w.fib.members() {
        let x = cat.dst(p);
        for g in cat.hom_into(x) {
            if let Some(pb) = w.pullback(p, g) {
                cospans.push((p, g, pb));
            }
        }
    }
    let weq_from = |o: ObjId| w.weq.members().iter().copied().filter(move |&m| cat.src(m) == o);

    let mut estimate: usize = 0;
    for &(p, g, _) in &cospans {
        let y = cat.src(p);
        let x = cat.dst(p);
        let z = cat.src(g);
        estimate = estimate.saturating_add(
            weq_from(y).count().saturating_mul(weq_from(x).count()).saturating_mul(weq_from(z).count()),
        );
    }
    let mode = if estimate <= WEQ2_FULL_SWEEP_BUDGET {
        Weq2SweepMode::Full
    } else {
        Weq2SweepMode::AxisRestricted
    };

    use rayon::prelude::*;
    let witness = cospans
        .par_iter()
        .find_map_any(|&(p, g, pb)| {
            let y = cat.src(p);
            let x = cat.dst(p);
            let z = cat.src(g);
            let vys: Vec<MorId> = weq_from(y).collect();
            let vxs: Vec<MorId> = weq_from(x).collect();
            let vzs: Vec<MorId> = weq_from(z).collect();
            let id_y = cat.identity(y);
            let id_x = cat.identity(x);
            let id_z = cat.identity(z);
            let triples: Vec<(MorId, MorId, MorId)> = match mode {
                Weq2SweepMode::Full => {
                    let mut v = Vec::new();
                    for &vy in &vys {
                        for &vx in &vxs {
                            for &vz in &vzs {
                                v.push((vy, vx, vz));
                            }
                        }
                    }
                    v
                }
                Weq2SweepMode::AxisRestricted => {
                    let mut v = Vec::new();
                    for &vy in &vys {
                        v.push((vy, id_x, id_z));
                    }
                    for &vx in &vxs {
                        v.push((id_y, vx, id_z));
                    }
                    for &vz in &vzs {
                        v.push((id_y, id_x, vz));
                    }
                    v
                }
            };
            for (vy, vx, vz) in triples {
                let yp = cat.dst(vy);
                let xp = cat.dst(vx);
                let zp = cat.dst(vz);
                // bottom cospans compatible with the verticals
                let vx_p = cat.compose(vx, p);
                let vx_g = cat.compose(vx, g);
                for &pp in w.fib.members() {
                    if cat.src(pp) != yp || cat.dst(pp) != xp || cat.compose(pp, vy) != vx_p {
                        continue;
                    }
                    for gp in cat.hom(zp, xp) {
                        let gp = *gp;
                        if cat.compose(gp, vz) != vx_g {
                            continue;
                        }
                        let Some(pb2) = w.pullback(pp, gp) else { continue };
                        // induced map on pullbacks
                        let want1 = cat.compose(vy, pb.proj1);
                        let want2 = cat.compose(vz, pb.proj2);
                        let induced = cat.hom(pb.apex, pb2.apex).iter().copied().find(|&u| {
                            cat.compose(pb2.proj1, u) == want1 && cat.compose(pb2.proj2, u) == want2
                        });
                        match induced {
                            Some(u) if w.weq.contains(u) => {}
                            Some(u) => {
                                return Some(format!(
                                    "gluing fails: cospan ({}, {}) over ({}, {}) via weqs ({}, {}, {}): induced {} not a weq",
                                    p, g, pp, gp, vy, vx, vz, u
                                ));
                            }
                            None => {
                                return Some(format!(
                                    "gluing fails: no induced map for cospan ({}, {}) over ({}, {})",
                                    p, g, pp, gp
                                ));
                            }
                        }
                    }
                }
            }
            None
        });
    (witness, mode)
}

/// Left lifting property of f against every trivial fibration, exhaustively.
pub fn is_cofibration(w: &WaldStructure, f: MorId) -> bool {
    let cat = &w.cat;
    let (a, b) = (cat.src(f), cat.dst(f));
    for p in w.trivial_fibrations() {
        let (c, d) = (cat.src(p), cat.dst(p));
        for &bottom in cat.hom(b, d) {
            let bf = cat.compose(bottom, f);
            for &top in cat.hom(a, c) {
                if cat.compose(p, top) != bf {
                    continue;
                }
                let lift = cat
                    .hom(b, c)
                    .iter()
                    .any(|&l| cat.compose(p, l) == bottom && cat.compose(l, f) == top);
                if !lift {
                    return false;
                }
            }
        }
    }
    true
}

/// f = p∘j with j a cofibration, p a fibration, and at least one of them a
/// weak equivalence. Fast paths first, then exhaustive over intermediates.
pub fn factorize(w: &WaldStructure, f: MorId) -> Option<(MorId, MorId)> {
    let cat = &w.cat;
    let (x, y) = (cat.src(f), cat.dst(f));
    if w.fib.contains(f) {
        let id = cat.identity(x);
        if w.weq.contains(id) && is_cofibration(w, id) {
            return Some((id, f));
        }
    }
    let id_y = cat.identity(y);
    if w.fib.contains(id_y) && w.weq.contains(id_y) && is_cofibration(w, f) {
        return Some((f, id_y));
    }
    for mid in cat.objects() {
        for &j in cat.hom(x, mid) {
            for &p in cat.hom(mid, y) {
                if cat.compose(p, j) != f || !w.fib.contains(p) {
                    continue;
                }
                if !(w.weq.contains(j) || w.weq.contains(p)) {
                    continue;
                }
                if is_cofibration(w, j) {
                    return Some((j, p));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct GoodnessReport {
    pub factorization: Result<(), String>,
    pub two_out_of_three: Result<(), String>,
    pub saturation: Result<(), String>,
}

impl GoodnessReport {
    pub fn ok(&self) -> bool {
        self.factorization.is_ok() && self.two_out_of_three.is_ok() && self.saturation.is_ok()
    }
}

/// The computable stand-in for goodness: factorizations exist, weak
/// equivalences satisfy two-out-of-three, and weq-zigzag-connected objects
/// become isomorphic in the bounded localization.
pub fn goodness_proxy(w: &WaldStructure, word_bound: usize) -> GoodnessReport {
    let cat = &w.cat;
    let factorization = match cat.morphisms().find(|&f| factorize(w, f).is_none()) {
        None => Ok(()),
        Some(f) => Err(format!("no factorization for {}", f)),
    };

    let mut two_out_of_three = Ok(());
    'outer: for g in cat.morphisms() {
        for f in cat.morphisms() {
            let Some(gf) = cat.try_compose(g, f) else { continue };
            let ins =
                [w.weq.contains(f), w.weq.contains(g), w.weq.contains(gf)].iter().filter(|&&b| b).count();
            if ins == 2 {
                two_out_of_three = Err(format!("two-out-of-three fails on ({}, {})", g, f));
                break 'outer;
            }
        }
    }

    let saturation = match crate::fincat::gz_localize(cat, &w.weq, word_bound) {
        Err(e) => Err(format!("localization did not stabilize: {}", e)),
        Ok(loc) => {
            // union objects along weq arrows
            let mut comp: Vec<usize> = (0..cat.n_objects()).collect();
            fn find(c: &mut Vec<usize>, mut a: usize) -> usize {
                while c[a] != a {
                    c[a] = c[c[a]];
                    a = c[a];
                }
                a
            }
            for &m in w.weq.members() {
                let a = find(&mut comp, cat.src(m).0 as usize);
                let b = find(&mut comp, cat.dst(m).0 as usize);
                comp[a] = b;
            }
            let mut bad = None;
            for a in cat.objects() {
                for b in cat.objects() {
                    if a < b && find(&mut comp, a.0 as usize) == find(&mut comp, b.0 as usize) {
                        let iso = loc.cat.hom(a, b).iter().any(|&m| loc.cat.is_iso(m));
                        if !iso {
                            bad = Some(format!("{} and {} weq-connected but not isomorphic in W⁻¹C", a, b));
                        }
                    }
                }
            }
            match bad {
                None => Ok(()),
                Some(msg) => Err(msg),
            }
        }
    };

    GoodnessReport { factorization, two_out_of_three, saturation }
}

/// Exactness report for a functor between Waldhausen structures.
#[derive(Clone, Debug)]
pub struct ExactReport {
    pub functor_valid: Result<(), String>,
    pub preserves_zero: Result<(), String>,
    pub preserves_weq: Result<(), String>,
    pub preserves_fib: Result<(), String>,
    pub preserves_pullbacks: Result<(), String>,
}

impl ExactReport {
    pub fn ok(&self) -> bool {
        self.functor_valid.is_ok()
            && self.preserves_zero.is_ok()
            && self.preserves_weq.is_ok()
            && self.preserves_fib.is_ok()
            && self.preserves_pullbacks.is_ok()
    }
}

pub fn check_exact(f: &FinFunctor, src: &WaldStructure, dst: &WaldStructure) -> ExactReport {
    let violations = f.check(&src.cat, &dst.cat);
    let functor_valid = if violations.is_empty() {
        Ok(())
    } else {
        Err(format!("{:?}", violations[0]))
    };

    let fz = f.on_obj(src.zero);
    let preserves_zero = if dst
        .cat
        .objects()
        .all(|x| dst.cat.hom(fz, x).len() == 1 && dst.cat.hom(x, fz).len() == 1)
    {
        Ok(())
    } else {
        Err(format!("image of zero ({}) is not a zero object", fz))
    };

    let preserves_weq = match src.weq.members().iter().find(|&&m| !dst.weq.contains(f.on_mor(m))) {
        None => Ok(()),
        Some(&m) => Err(format!("weq {} maps to non-weq {}", m, f.on_mor(m))),
    };
    let preserves_fib = match src.fib.members().iter().find(|&&m| !dst.fib.contains(f.on_mor(m))) {
        None => Ok(()),
        Some(&m) => Err(format!("fibration {} maps to non-fibration {}", m, f.on_mor(m))),
    };

    // pullbacks along fibrations that exist upstream must map to pullbacks
    let mut preserves_pullbacks = Ok(());
    'outer: for &p in src.fib.members() {
        let x = src.cat.dst(p);
        for g in src.cat.hom_into(x) {
            let Some(pb) = src.pullback(p, g) else { continue };
            let fp = f.on_mor(p);
            let fg = f.on_mor(g);
            let image_ok = {
                let cones_match = is_pullback_cone(
                    &dst.cat,
                    fp,
                    fg,
                    f.on_obj(pb.apex),
                    f.on_mor(pb.proj1),
                    f.on_mor(pb.proj2),
                );
                cones_match
            };
            if !image_ok {
                preserves_pullbacks =
                    Err(format!("image of pullback of ({}, {}) is not a pullback", p, g));
                break 'outer;
            }
        }
    }

    ExactReport { functor_valid, preserves_zero, preserves_weq, preserves_fib, preserves_pullbacks }
}

/// Does (apex, p1, p2) satisfy the pullback universal property for (f, g)?
pub fn is_pullback_cone(
    cat: &FinCat,
    f: MorId,
    g: MorId,
    apex: ObjId,
    p1: MorId,
    p2: MorId,
) -> bool {
    if cat.compose(f, p1) != cat.compose(g, p2) {
        return false;
    }
    let x = cat.src(f);
    let y = cat.src(g);
    for t in cat.objects() {
        let mut seen = std::collections::HashSet::new();
        for &u in cat.hom(t, apex) {
            if !seen.insert((cat.compose(p1, u), cat.compose(p2, u))) {
                return false;
            }
        }
        let mut count = 0usize;
        for &t1 in cat.hom(t, x) {
            let ft1 = cat.compose(f, t1);
            for &t2 in cat.hom(t, y) {
                if ft1 == cat.compose(g, t2) {
                    count += 1;
                    if !seen.contains(&(t1, t2)) {
                        return false;
                    }
                }
            }
        }
        if count != seen.len() {
            return false;
        }
    }
    true
}
