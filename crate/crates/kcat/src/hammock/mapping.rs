//! Mapping spaces: k-simplices are column-reduced hammocks of height k,
//! faces delete a row (then re-reduce columns), degeneracies repeat a row.

use super::{enumerate_hammocks, Hammock};
use crate::fincat::{FinCat, ObjId, WideSubcat};
use crate::sset::{DegSimplex, FinSSet};
use std::collections::HashMap;

pub struct MappingSpace {
    pub x: ObjId,
    pub y: ObjId,
    pub width_bound: usize,
    pub sset: FinSSet,
    /// enumerated hammocks per height (the full simplex sets)
    pub hammocks: Vec<Vec<Hammock>>,
    pub norm: Vec<HashMap<Hammock, DegSimplex>>,
    /// nondegenerate hammock behind each stored simplex, per dimension
    pub nondeg_by_idx: Vec<Vec<Hammock>>,
    /// vertex hammocks in index order (all height-0 hammocks are nondegenerate)
    pub verts: Vec<Hammock>,
    /// π0 class id per vertex (canonical: minimal member index)
    pub classes: Vec<usize>,
    pub n_classes: usize,
}

pub fn mapping_space(
    cat: &FinCat,
    w: &WideSubcat,
    x: ObjId,
    y: ObjId,
    width_bound: usize,
    height: usize,
) -> MappingSpace {
    let hammocks: Vec<Vec<Hammock>> =
        (0..=height).map(|k| enumerate_hammocks(cat, w, x, y, width_bound, k)).collect();
    let (sset, norm) = FinSSet::from_levels(
        height,
        |d| hammocks[d].clone(),
        |_, i, h: &Hammock| h.delete_row(cat, i).reduce(cat),
        |_, i, h: &Hammock| h.repeat_row(cat, i),
        |_, h| format!("w{}h{}", h.width(), h.height),
    );
    // nondegenerate hammocks in index order, per dimension
    let placeholder = Hammock {
        height: 0,
        obj_cols: Vec::new(),
        arr_cols: Vec::new(),
        vert_cols: Vec::new(),
    };
    let mut nondeg_by_idx: Vec<Vec<Hammock>> =
        (0..=height).map(|d| vec![placeholder.clone(); sset.n_nondeg(d)]).collect();
    for (d, table) in norm.iter().enumerate() {
        for (h, ds) in table {
            if !ds.is_degenerate() && ds.base_dim == d {
                nondeg_by_idx[d][ds.base] = h.clone();
            }
        }
    }
    let verts = nondeg_by_idx[0].clone();
    let (classes, n_classes) = sset.pi0();
    MappingSpace {
        x,
        y,
        width_bound,
        sset,
        hammocks,
        norm,
        nondeg_by_idx,
        verts,
        classes,
        n_classes,
    }
}

impl MappingSpace {
    /// Index of a stored vertex hammock, if it is within the width window.
    pub fn vertex_index(&self, h: &Hammock) -> Option<usize> {
        self.norm[0].get(h).map(|ds| ds.base)
    }

    /// Reference of any enumerated hammock as a stored simplex.
    pub fn simplex_of(&self, h: &Hammock) -> Option<DegSimplex> {
        self.norm.get(h.height).and_then(|t| t.get(h)).cloned()
    }

    /// Class representatives: the minimal-index vertex of each class.
    pub fn class_reps(&self) -> Vec<usize> {
        let mut reps: HashMap<usize, usize> = HashMap::new();
        for (v, &c) in self.classes.iter().enumerate() {
            reps.entry(c).or_insert(v);
        }
        let mut ids: Vec<usize> = reps.keys().copied().collect();
        ids.sort();
        ids.into_iter().map(|c| reps[&c]).collect()
    }

    /// Canonical class numbering 0..n_classes in order of minimal vertex.
    pub fn class_number(&self) -> (Vec<usize>, Vec<usize>) {
        let reps = self.class_reps();
        let renum: HashMap<usize, usize> =
            reps.iter().enumerate().map(|(i, &v)| (self.classes[v], i)).collect();
        let numbered = self.classes.iter().map(|c| renum[c]).collect();
        (numbered, reps)
    }

    /// Hammock behind a possibly-degenerate stored simplex: the base hammock
    /// with rows repeated per the degeneracy word.
    pub fn hammock_of(&self, cat: &crate::fincat::FinCat, ds: &DegSimplex) -> Hammock {
        let mut h = self.nondeg_by_idx[ds.base_dim][ds.base].clone();
        for &j in ds.word.iter().rev() {
            h = h.repeat_row(cat, j);
        }
        h
    }
}
