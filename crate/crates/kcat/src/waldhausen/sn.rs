//! The dual S-construction on fibration strings, and the associated K-space
//! as the diagonal of the levelwise nerve of weak-equivalence subcategories.

use super::{WaldError, WaldStructure};
use crate::fincat::{FinCat, MorData, MorId, ObjId, RawCategory};
use crate::sset::FinSSet;
use std::collections::HashMap;

/// String of n-1 composable fibrations, stored top-down:
/// objs[0] -> objs[1] -> ... -> objs[n-1] via arrows[j]: objs[j] -> objs[j+1].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibString {
    pub objs: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

/// Componentwise morphism of strings; comps[j]: source.objs[j] -> target.objs[j].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub src: usize,
    pub dst: usize,
    pub comps: Vec<MorId>,
}

/// The category S_n W together with descriptors of its objects and morphisms.
pub struct SnCategory {
    pub n: usize,
    pub wald: WaldStructure,
    pub strings: Vec<FibString>,
    pub ladders: Vec<Ladder>,
}

fn string_name(w: &WaldStructure, s: &FibString) -> String {
    if s.objs.is_empty() {
        return "()".into();
    }
    if s.arrows.is_empty() {
        return format!("({})", w.cat.object_names[s.objs[0].0 as usize]);
    }
    format!(
        "({})",
        s.arrows.iter().map(|m| w.cat.mors[m.0 as usize].name.clone()).collect::<Vec<_>>().join(";")
    )
}

/// Builds S_n: objects are fibration strings of length n-1, morphisms are
/// ladders, weak equivalences are levelwise, fibrations demand each induced
/// map to the relative pullback to be a fibration.
pub fn build_sn(w: &WaldStructure, n: usize) -> Result<SnCategory, WaldError> {
    let cat = &w.cat;

    // enumerate strings
    let mut strings: Vec<FibString> = Vec::new();
    if n == 0 {
        strings.push(FibString { objs: Vec::new(), arrows: Vec::new() });
    } else {
        let mut partial: Vec<FibString> =
            cat.objects().map(|o| FibString { objs: vec![o], arrows: Vec::new() }).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for s in &partial {
                let at = *s.objs.last().unwrap();
                for &f in w.fib.members() {
                    if cat.src(f) == at {
                        let mut objs = s.objs.clone();
                        objs.push(cat.dst(f));
                        let mut arrows = s.arrows.clone();
                        arrows.push(f);
                        next.push(FibString { objs, arrows });
                    }
                }
            }
            partial = next;
        }
        strings = partial;
    }
    strings.sort();
    let string_idx: HashMap<FibString, usize> =
        strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

    // enumerate ladders per pair of strings
    let mut ladders: Vec<Ladder> = Vec::new();
    for (si, s) in strings.iter().enumerate() {
        for (ti, t) in strings.iter().enumerate() {
            if n == 0 {
                if si == ti {
                    ladders.push(Ladder { src: si, dst: ti, comps: Vec::new() });
                }
                continue;
            }
            // backtrack over components with commuting squares
            let mut stack: Vec<Vec<MorId>> =
                cat.hom(s.objs[0], t.objs[0]).iter().map(|&m| vec![m]).collect();
            for j in 1..n {
                let mut next = Vec::new();
                for partial in &stack {
                    let prev = partial[j - 1];
                    // want c: s.objs[j] -> t.objs[j] with c ∘ s.arrows[j-1] = t.arrows[j-1] ∘ prev
                    let rhs = cat.compose(t.arrows[j - 1], prev);
                    for &c in cat.hom(s.objs[j], t.objs[j]) {
                        if cat.compose(c, s.arrows[j - 1]) == rhs {
                            let mut v = partial.clone();
                            v.push(c);
                            next.push(v);
                        }
                    }
                }
                stack = next;
            }
            for comps in stack {
                ladders.push(Ladder { src: si, dst: ti, comps });
            }
        }
    }
    let ladder_idx: HashMap<(usize, usize, Vec<MorId>), usize> = ladders
        .iter()
        .enumerate()
        .map(|(i, l)| ((l.src, l.dst, l.comps.clone()), i))
        .collect();

    // assemble the category
    let objects: Vec<String> = strings.iter().map(|s| string_name(w, s)).collect();
    let morphisms: Vec<MorData> = ladders
        .iter()
        .map(|l| MorData {
            name: format!(
                "[{}]",
                l.comps.iter().map(|m| cat.mors[m.0 as usize].name.clone()).collect::<Vec<_>>().join(";")
            ),
            src: ObjId(l.src as u32),
            dst: ObjId(l.dst as u32),
        })
        .collect();
    let identities: Vec<MorId> = strings
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let comps: Vec<MorId> = s.objs.iter().map(|&o| cat.identity(o)).collect();
            MorId(ladder_idx[&(i, i, comps)] as u32)
        })
        .collect();
    let mut composites = Vec::new();
    for (gi, g) in ladders.iter().enumerate() {
        for (fi, f) in ladders.iter().enumerate() {
            if f.dst != g.src {
                continue;
            }
            let comps: Vec<MorId> =
                f.comps.iter().zip(&g.comps).map(|(&a, &b)| cat.compose(b, a)).collect();
            let c = ladder_idx[&(f.src, g.dst, comps)];
            composites.push((MorId(gi as u32), MorId(fi as u32), MorId(c as u32)));
        }
    }
    let sn_cat = FinCat::from_raw_unchecked(RawCategory {
        objects,
        morphisms,
        identities,
        composites,
    });

    // weak equivalences: levelwise
    let weq: Vec<MorId> = ladders
        .iter()
        .enumerate()
        .filter(|(_, l)| l.comps.iter().all(|&c| w.weq.contains(c)))
        .map(|(i, _)| MorId(i as u32))
        .collect();

    // fibrations: each induced map into the relative pullback is a fibration
    let mut fib: Vec<MorId> = Vec::new();
    'ladder: for (li, l) in ladders.iter().enumerate() {
        if n == 0 {
            fib.push(MorId(li as u32));
            continue;
        }
        let s = &strings[l.src];
        let t = &strings[l.dst];
        // bottom component must be a fibration
        if !w.fib.contains(l.comps[n - 1]) {
            continue;
        }
        // higher components: x_i -> x_{i-1} ×_{y_{i-1}} y_i for top-down j = n-2..0
        for j in (0..n.saturating_sub(1)).rev() {
            let Some(pb) = w.pullback(t.arrows[j], l.comps[j + 1]) else {
                return Err(WaldError::ClosureEscape(format!(
                    "relative pullback of ({}, {}) missing while building S_{}",
                    t.arrows[j], l.comps[j + 1], n
                )));
            };
            let want1 = l.comps[j]; // to t.objs[j] = src of t.arrows[j]
            let want2 = s.arrows[j]; // to s.objs[j+1]
            let induced = cat.hom(s.objs[j], pb.apex).iter().copied().find(|&h| {
                cat.compose(pb.proj1, h) == want1 && cat.compose(pb.proj2, h) == want2
            });
            match induced {
                Some(h) if w.fib.contains(h) => {}
                _ => continue 'ladder,
            }
        }
        fib.push(MorId(li as u32));
    }

    // zero object: the all-zero string
    let zero_string = FibString {
        objs: vec![w.zero; n],
        arrows: vec![w.cat.identity(w.zero); n.saturating_sub(1)],
    };
    let zero = if n == 0 {
        ObjId(0)
    } else {
        ObjId(*string_idx.get(&zero_string).ok_or_else(|| {
            WaldError::ClosureEscape("identity on the zero object is not a fibration".into())
        })? as u32)
    };

    let wald = WaldStructure::new(sn_cat, weq, fib, zero);
    Ok(SnCategory { n, wald, strings, ladders })
}

impl SnCategory {
    /// d_0: pass to fibers over the bottom object. Fiber choices are the
    /// canonical pullbacks; induced arrows are resolved by universality.
    fn face0_string(&self, w: &WaldStructure, s: &FibString) -> Result<FibString, WaldError> {
        let n = self.n;
        debug_assert!(n >= 1);
        if n == 1 {
            return Ok(FibString { objs: Vec::new(), arrows: Vec::new() });
        }
        let cat = &w.cat;
        let bottom = s.objs[n - 1];
        // composite maps objs[j] -> bottom
        let mut comps: Vec<MorId> = vec![MorId(0); n - 1];
        let mut acc = s.arrows[n - 2];
        comps[n - 2] = acc;
        for j in (0..n.saturating_sub(2)).rev() {
            acc = cat.compose(acc, s.arrows[j]);
            comps[j] = acc;
        }
        let mut fiber_objs = Vec::with_capacity(n - 1);
        let mut fiber_incl = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            let Some(pb) = w.pullback(comps[j], w.from_zero(bottom)) else {
                return Err(WaldError::ClosureEscape(format!(
                    "fiber of {} missing while computing a face",
                    comps[j]
                )));
            };
            fiber_objs.push(pb.apex);
            fiber_incl.push(pb.proj1);
        }
        // induced arrows between consecutive fibers
        let mut arrows = Vec::with_capacity(n.saturating_sub(2));
        for j in 0..n.saturating_sub(2) {
            let want = cat.compose(s.arrows[j], fiber_incl[j]);
            let h = cat
                .hom(fiber_objs[j], fiber_objs[j + 1])
                .iter()
                .copied()
                .find(|&h| {
                    cat.compose(fiber_incl[j + 1], h) == want
                        && cat.compose(w.to_zero(fiber_objs[j + 1]), h)
                            == w.to_zero(fiber_objs[j])
                })
                .ok_or_else(|| {
                    WaldError::ClosureEscape("no induced arrow between fibers".into())
                })?;
            arrows.push(h);
        }
        Ok(FibString { objs: fiber_objs, arrows })
    }

    fn face0_ladder(
        &self,
        w: &WaldStructure,
        l: &Ladder,
        src_f: &FibString,
        dst_f: &FibString,
        src_orig: &FibString,
        dst_orig: &FibString,
    ) -> Result<Vec<MorId>, WaldError> {
        let n = self.n;
        let cat = &w.cat;
        let mut comps = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            // fiber inclusion of src at j, composed with component, must factor
            let src_incl = fiber_inclusion(w, src_orig, j)?;
            let dst_incl = fiber_inclusion(w, dst_orig, j)?;
            let want = cat.compose(l.comps[j], src_incl);
            let h = cat
                .hom(src_f.objs[j], dst_f.objs[j])
                .iter()
                .copied()
                .find(|&h| cat.compose(dst_incl, h) == want)
                .ok_or_else(|| WaldError::ClosureEscape("no induced fiber map".into()))?;
            comps.push(h);
        }
        Ok(comps)
    }
}

/// Inclusion of the canonical fiber of objs[j] -> bottom into objs[j].
fn fiber_inclusion(w: &WaldStructure, s: &FibString, j: usize) -> Result<MorId, WaldError> {
    let n = s.objs.len();
    let cat = &w.cat;
    let mut comp = s.arrows[j];
    for k in j + 1..n - 1 {
        comp = cat.compose(s.arrows[k], comp);
    }
    let pb = w
        .pullback(comp, w.from_zero(s.objs[n - 1]))
        .ok_or_else(|| WaldError::ClosureEscape("fiber missing".into()))?;
    Ok(pb.proj1)
}

/// Faces and degeneracies of the string construction in the S-direction.
pub struct SnTower {
    pub levels: Vec<SnCategory>,
}

impl SnTower {
    pub fn build(w: &WaldStructure, max_n: usize) -> Result<SnTower, WaldError> {
        let levels = (0..=max_n).map(|n| build_sn(w, n)).collect::<Result<Vec<_>, _>>()?;
        Ok(SnTower { levels })
    }

    /// d_i on strings, S_n -> S_{n-1}.
    pub fn face_string(
        &self,
        w: &WaldStructure,
        n: usize,
        i: usize,
        s: &FibString,
    ) -> Result<FibString, WaldError> {
        debug_assert!(i <= n && n >= 1);
        if i == 0 {
            return self.levels[n].face0_string(w, s);
        }
        // delete x_i; top-down position of x_i is n - i
        let pos = n - i;
        let mut objs = s.objs.clone();
        objs.remove(pos);
        let mut arrows = Vec::new();
        for j in 0..n - 1 {
            if pos == 0 {
                if j > 0 {
                    arrows.push(s.arrows[j]);
                }
            } else if j + 1 == pos {
                // handled when j reaches pos
            } else if j == pos {
                // compose across the deleted object
                arrows.push(w.cat.compose(s.arrows[j], s.arrows[j - 1]));
            } else {
                arrows.push(s.arrows[j]);
            }
        }
        Ok(FibString { objs, arrows })
    }

    /// d_i on ladders.
    pub fn face_ladder(
        &self,
        w: &WaldStructure,
        n: usize,
        i: usize,
        l: &Ladder,
    ) -> Result<Ladder, WaldError> {
        let src = &self.levels[n].strings[l.src];
        let dst = &self.levels[n].strings[l.dst];
        let fs = self.face_string(w, n, i, src)?;
        let fd = self.face_string(w, n, i, dst)?;
        let comps = if i == 0 {
            self.levels[n].face0_ladder(w, l, &fs, &fd, src, dst)?
        } else {
            let pos = n - i;
            let mut v = l.comps.clone();
            v.remove(pos);
            v
        };
        let si = self.levels[n - 1]
            .strings
            .iter()
            .position(|s| *s == fs)
            .ok_or_else(|| WaldError::ClosureEscape("face string not in S_{n-1}".into()))?;
        let di = self.levels[n - 1]
            .strings
            .iter()
            .position(|s| *s == fd)
            .ok_or_else(|| WaldError::ClosureEscape("face string not in S_{n-1}".into()))?;
        Ok(Ladder { src: si, dst: di, comps })
    }

    /// s_i on strings, S_n -> S_{n+1}.
    pub fn degen_string(&self, w: &WaldStructure, n: usize, i: usize, s: &FibString) -> FibString {
        if i == 0 {
            // append the zero object at the bottom
            let mut objs = s.objs.clone();
            let mut arrows = s.arrows.clone();
            if let Some(&last) = s.objs.last() {
                arrows.push(w.to_zero(last));
            }
            objs.push(w.zero);
            FibString { objs, arrows }
        } else {
            let pos = n - i;
            let mut objs = s.objs.clone();
            objs.insert(pos, s.objs[pos]);
            let mut arrows = s.arrows.clone();
            arrows.insert(pos, w.cat.identity(s.objs[pos]));
            FibString { objs, arrows }
        }
    }

    pub fn degen_ladder(&self, w: &WaldStructure, n: usize, i: usize, l: &Ladder) -> Ladder {
        let src = &self.levels[n].strings[l.src];
        let dst = &self.levels[n].strings[l.dst];
        let fs = self.degen_string(w, n, i, src);
        let fd = self.degen_string(w, n, i, dst);
        let comps = if i == 0 {
            let mut v = l.comps.clone();
            v.push(w.cat.identity(w.zero));
            v
        } else {
            let pos = n - i;
            let mut v = l.comps.clone();
            v.insert(pos, l.comps[pos]);
            v
        };
        let si = self.levels[n + 1].strings.iter().position(|s| *s == fs).expect("degenerate string");
        let di = self.levels[n + 1].strings.iter().position(|s| *s == fd).expect("degenerate string");
        Ladder { src: si, dst: di, comps }
    }
}

/// Tuples of m composable weq ladders in S_n: the (n, m) simplices of the
/// levelwise nerve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct NerveTuple {
    start: usize, // string index
    ladders: Vec<usize>,
}

/// The diagonal of (n, m) -> N_m(w S_n W), truncated at `dim`.
pub fn k_space(w: &WaldStructure, dim: usize) -> Result<FinSSet, WaldError> {
    let tower = SnTower::build(w, dim + 1)?;
    // weq ladder ids per level
    let weq_ladders: Vec<Vec<usize>> = tower
        .levels
        .iter()
        .map(|sn| {
            sn.ladders
                .iter()
                .enumerate()
                .filter(|(i, _)| sn.wald.weq.contains(MorId(*i as u32)))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let tuples = |d: usize| -> Vec<NerveTuple> {
        let sn = &tower.levels[d];
        let mut out: Vec<NerveTuple> = (0..sn.strings.len())
            .map(|s| NerveTuple { start: s, ladders: Vec::new() })
            .collect();
        for _ in 0..d {
            let mut next = Vec::new();
            for t in &out {
                let at = t.ladders.last().map_or(t.start, |&l| sn.ladders[l].dst);
                for &l in &weq_ladders[d] {
                    if sn.ladders[l].src == at {
                        let mut ladders = t.ladders.clone();
                        ladders.push(l);
                        next.push(NerveTuple { start: t.start, ladders });
                    }
                }
            }
            out = next;
        }
        out
    };

    let compose_ladders = |d: usize, a: usize, b: usize| -> usize {
        // b ∘ a in S_d
        let sn = &tower.levels[d];
        let m = sn.wald.cat.compose(MorId(b as u32), MorId(a as u32));
        m.0 as usize
    };

    let face = |d: usize, i: usize, t: &NerveTuple| -> Result<NerveTuple, WaldError> {
        let sn = &tower.levels[d];
        // nerve face first
        let (start, ladders) = if d == 1 {
            let l = t.ladders[0];
            if i == 0 {
                (sn.ladders[l].dst, Vec::new())
            } else {
                (t.start, Vec::new())
            }
        } else if i == 0 {
            (sn.ladders[t.ladders[0]].dst, t.ladders[1..].to_vec())
        } else if i == d {
            (t.start, t.ladders[..d - 1].to_vec())
        } else {
            let mut v = Vec::with_capacity(d - 1);
            v.extend_from_slice(&t.ladders[..i - 1]);
            v.push(compose_ladders(d, t.ladders[i - 1], t.ladders[i]));
            v.extend_from_slice(&t.ladders[i + 1..]);
            (t.start, v)
        };
        // then the S-direction face functor componentwise
        let fstart = {
            let s = &sn.strings[start];
            let fs = tower.face_string(w, d, i, s)?;
            tower.levels[d - 1]
                .strings
                .iter()
                .position(|x| *x == fs)
                .ok_or_else(|| WaldError::ClosureEscape("face string missing".into()))?
        };
        let mut fladders = Vec::with_capacity(ladders.len());
        for &l in &ladders {
            let fl = tower.face_ladder(w, d, i, &sn.ladders[l])?;
            let idx = tower.levels[d - 1]
                .ladders
                .iter()
                .position(|x| *x == fl)
                .ok_or_else(|| WaldError::ClosureEscape("face ladder missing".into()))?;
            fladders.push(idx);
        }
        Ok(NerveTuple { start: fstart, ladders: fladders })
    };

    let degen = |d: usize, i: usize, t: &NerveTuple| -> NerveTuple {
        let sn = &tower.levels[d];
        // nerve degeneracy: insert identity at position i
        let at = if i == 0 {
            t.start
        } else {
            sn.ladders[t.ladders[i - 1]].dst
        };
        let id_ladder = sn.wald.cat.identity(ObjId(at as u32)).0 as usize;
        let mut ladders = Vec::with_capacity(d + 1);
        ladders.extend_from_slice(&t.ladders[..i]);
        ladders.push(id_ladder);
        ladders.extend_from_slice(&t.ladders[i..]);
        // S-direction degeneracy functor componentwise
        let dstart = {
            let fs = tower.degen_string(w, d, i, &sn.strings[t.start]);
            tower.levels[d + 1].strings.iter().position(|x| *x == fs).expect("degenerate string")
        };
        let dladders: Vec<usize> = ladders
            .iter()
            .map(|&l| {
                let fl = tower.degen_ladder(w, d, i, &sn.ladders[l]);
                tower.levels[d + 1].ladders.iter().position(|x| *x == fl).expect("degenerate ladder")
            })
            .collect();
        NerveTuple { start: dstart, ladders: dladders }
    };

    // precompute all faces to surface ClosureEscape before from_levels panics
    let mut level_data: Vec<Vec<NerveTuple>> = Vec::new();
    for d in 0..=dim {
        level_data.push(tuples(d));
    }
    for d in 1..=dim {
        for t in &level_data[d] {
            for i in 0..=d {
                face(d, i, t)?;
            }
        }
    }

    let (sset, _) = FinSSet::from_levels(
        dim,
        |d| level_data[d].clone(),
        |d, i, t| face(d, i, t).expect("faces precomputed"),
        |d, i, t| degen(d, i, t),
        |d, t| {
            let sn = &tower.levels[d];
            if t.ladders.is_empty() {
                string_name(w, &sn.strings[t.start])
            } else {
                t.ladders
                    .iter()
                    .map(|&l| sn.wald.cat.mors[l].name.clone())
                    .collect::<Vec<_>>()
                    .join("|")
            }
        },
    );
    Ok(sset)
}
