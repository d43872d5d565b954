//! Nerve of a finite category: n-simplices are strings of n composable
//! morphisms, nondegenerate iff no letter is an identity.

use super::{DegSimplex, FinSSet, SMap};
use crate::fincat::{FinCat, FinFunctor, MorId, ObjId};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NerveSimplex {
    pub start: ObjId,
    pub letters: Vec<MorId>,
}

fn strings(cat: &FinCat, len: usize) -> Vec<NerveSimplex> {
    let mut out: Vec<NerveSimplex> =
        cat.objects().map(|o| NerveSimplex { start: o, letters: Vec::new() }).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &out {
            let at = s.letters.last().map_or(s.start, |&m| cat.dst(m));
            for m in cat.hom_from(at) {
                let mut letters = s.letters.clone();
                letters.push(m);
                next.push(NerveSimplex { start: s.start, letters });
            }
        }
        out = next;
    }
    out
}

fn nerve_face(cat: &FinCat, i: usize, s: &NerveSimplex) -> NerveSimplex {
    let d = s.letters.len();
    debug_assert!(d >= 1);
    if i == 0 {
        NerveSimplex {
            start: cat.dst(s.letters[0]),
            letters: s.letters[1..].to_vec(),
        }
    } else if i == d {
        NerveSimplex { start: s.start, letters: s.letters[..d - 1].to_vec() }
    } else {
        let mut letters = Vec::with_capacity(d - 1);
        letters.extend_from_slice(&s.letters[..i - 1]);
        letters.push(cat.compose(s.letters[i], s.letters[i - 1]));
        letters.extend_from_slice(&s.letters[i + 1..]);
        NerveSimplex { start: s.start, letters }
    }
}

fn nerve_degen(cat: &FinCat, i: usize, s: &NerveSimplex) -> NerveSimplex {
    let at = if i == 0 {
        s.start
    } else {
        cat.dst(s.letters[i - 1])
    };
    let mut letters = Vec::with_capacity(s.letters.len() + 1);
    letters.extend_from_slice(&s.letters[..i]);
    letters.push(cat.identity(at));
    letters.extend_from_slice(&s.letters[i..]);
    NerveSimplex { start: s.start, letters }
}

/// Nerve truncated at dimension `trunc`, plus the normal-form table used to
/// turn strings into simplex references.
pub fn nerve(cat: &FinCat, trunc: usize) -> (FinSSet, Vec<HashMap<NerveSimplex, DegSimplex>>) {
    FinSSet::from_levels(
        trunc,
        |d| strings(cat, d),
        |_, i, s| nerve_face(cat, i, s),
        |_, i, s| nerve_degen(cat, i, s),
        |_, s| {
            if s.letters.is_empty() {
                cat.object_names[s.start.0 as usize].clone()
            } else {
                s.letters
                    .iter()
                    .map(|m| cat.mors[m.0 as usize].name.clone())
                    .collect::<Vec<_>>()
                    .join("|")
            }
        },
    )
}

/// The simplicial map N(F): N(C) -> N(D) induced by a functor.
pub fn nerve_functor_map(
    functor: &FinFunctor,
    src_cat: &FinCat,
    nerve_src: &FinSSet,
    src_norm: &[HashMap<NerveSimplex, DegSimplex>],
    tgt_norm: &[HashMap<NerveSimplex, DegSimplex>],
) -> SMap {
    // recover the string behind each nondegenerate simplex by inverting the table
    let mut images: Vec<Vec<DegSimplex>> = Vec::with_capacity(nerve_src.trunc + 1);
    for d in 0..=nerve_src.trunc {
        let mut by_idx: Vec<Option<&NerveSimplex>> = vec![None; nerve_src.n_nondeg(d)];
        for (s, ds) in &src_norm[d] {
            if !ds.is_degenerate() {
                by_idx[ds.base] = Some(s);
            }
        }
        let mut level = Vec::with_capacity(nerve_src.n_nondeg(d));
        for s in by_idx {
            let s = s.expect("normal-form table covers nondegenerate simplices");
            let mapped = NerveSimplex {
                start: functor.on_obj(s.start),
                letters: s.letters.iter().map(|&m| functor.on_mor(m)).collect(),
            };
            let _ = src_cat;
            level.push(tgt_norm[d][&mapped].clone());
        }
        images.push(level);
    }
    SMap { images }
}
