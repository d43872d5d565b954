//! Hammocks: commuting zigzag grids with backward columns in W, their
//! reduction to column normal form, enumeration, and composition by
//! concatenation.

use crate::fincat::{FinCat, MorId, ObjId, WideSubcat};
use std::collections::HashMap;

mod lh;
mod mapping;
pub use lh::{
    build_lh, check_dk_equivalence, classifying_space_compare, compare_pi0_with_gz,
    map_hammock, mapping_space_sn_formula, w_equivalences_subcat, weq_diag_nerve, word_to_hammock,
    DkReport, LhError, LhScat, Pi0Cat, SnFormulaResult, WEqSub,
};
pub use mapping::{mapping_space, MappingSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Fwd,
    Bwd,
}

/// A hammock of height k and width w (number of arrow columns). Rows share
/// the column structure; verticals live on interior object columns and must
/// be in W; endpoint columns are constant with identity verticals.
///
/// Stored column-major: obj_cols[c][i] is the object in row i at object
/// column c (0 <= c <= w), arr_cols[c].1[i] the row-i arrow of arrow column c
/// (forward: obj c -> c+1, backward: obj c+1 -> c), vert_cols[c][i] the
/// vertical obj_cols[c][i] -> obj_cols[c][i+1] (identity at endpoints).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hammock {
    pub height: usize,
    pub obj_cols: Vec<Vec<ObjId>>,
    pub arr_cols: Vec<(Dir, Vec<MorId>)>,
    pub vert_cols: Vec<Vec<MorId>>,
}

impl Hammock {
    pub fn width(&self) -> usize {
        self.arr_cols.len()
    }

    pub fn src(&self) -> ObjId {
        self.obj_cols[0][0]
    }

    pub fn dst(&self) -> ObjId {
        self.obj_cols[self.width()][0]
    }

    /// Identity hammock: width 0 at an object.
    pub fn identity(cat: &FinCat, x: ObjId, height: usize) -> Hammock {
        Hammock {
            height,
            obj_cols: vec![vec![x; height + 1]],
            arr_cols: Vec::new(),
            vert_cols: vec![vec![cat.identity(x); height]],
        }
    }

    /// Width-1 forward hammock of a plain morphism (constant rows).
    pub fn of_morphism(cat: &FinCat, f: MorId, height: usize) -> Hammock {
        let (x, y) = (cat.src(f), cat.dst(f));
        Hammock {
            height,
            obj_cols: vec![vec![x; height + 1], vec![y; height + 1]],
            arr_cols: vec![(Dir::Fwd, vec![f; height + 1])],
            vert_cols: vec![vec![cat.identity(x); height], vec![cat.identity(y); height]],
        }
    }

    /// Structural validity: shapes, endpoint constancy, backward arrows and
    /// verticals in W, and all squares commuting.
    pub fn validate(&self, cat: &FinCat, w: &WideSubcat) -> Result<(), String> {
        let k = self.height;
        let wd = self.width();
        if self.obj_cols.len() != wd + 1 || self.vert_cols.len() != wd + 1 {
            return Err("column count mismatch".into());
        }
        for c in 0..=wd {
            if self.obj_cols[c].len() != k + 1 || self.vert_cols[c].len() != k {
                return Err("row count mismatch".into());
            }
        }
        for (c, col) in [(0usize, &self.obj_cols[0]), (wd, &self.obj_cols[wd])] {
            if col.iter().any(|&o| o != col[0]) {
                return Err(format!("endpoint column {} not constant", c));
            }
            for i in 0..k {
                if !cat.is_identity(self.vert_cols[c][i]) {
                    return Err(format!("endpoint vertical at column {} not identity", c));
                }
            }
        }
        for c in 0..=wd {
            for i in 0..k {
                let v = self.vert_cols[c][i];
                if cat.src(v) != self.obj_cols[c][i] || cat.dst(v) != self.obj_cols[c][i + 1] {
                    return Err(format!("vertical endpoints wrong at column {} row {}", c, i));
                }
                if c > 0 && c < wd && !w.contains(v) {
                    return Err(format!("interior vertical at column {} not in W", c));
                }
            }
        }
        for c in 0..wd {
            let (dir, arrs) = &self.arr_cols[c];
            if arrs.len() != k + 1 {
                return Err("arrow count mismatch".into());
            }
            for i in 0..=k {
                let a = arrs[i];
                let (s, d) = match dir {
                    Dir::Fwd => (self.obj_cols[c][i], self.obj_cols[c + 1][i]),
                    Dir::Bwd => (self.obj_cols[c + 1][i], self.obj_cols[c][i]),
                };
                if cat.src(a) != s || cat.dst(a) != d {
                    return Err(format!("arrow endpoints wrong at column {} row {}", c, i));
                }
                if *dir == Dir::Bwd && !w.contains(a) {
                    return Err(format!("backward arrow at column {} row {} not in W", c, i));
                }
            }
            for i in 0..k {
                let (vl, vr) = (self.vert_cols[c][i], self.vert_cols[c + 1][i]);
                let (top, bot) = (arrs[i], arrs[i + 1]);
                let ok = match dir {
                    Dir::Fwd => cat.compose(bot, vl) == cat.compose(vr, top),
                    Dir::Bwd => cat.compose(vl, top) == cat.compose(bot, vr),
                };
                if !ok {
                    return Err(format!("square does not commute at column {} row {}", c, i));
                }
            }
        }
        Ok(())
    }

    fn column_all_identities(&self, cat: &FinCat, c: usize) -> bool {
        self.arr_cols[c].1.iter().all(|&a| cat.is_identity(a))
    }

    /// Column-reduced: adjacent columns alternate direction and no column
    /// consists entirely of identities.
    pub fn is_reduced(&self, cat: &FinCat) -> bool {
        for c in 0..self.width() {
            if self.column_all_identities(cat, c) {
                return false;
            }
            if c + 1 < self.width() && self.arr_cols[c].0 == self.arr_cols[c + 1].0 {
                return false;
            }
        }
        true
    }

    /// One reduction step at the first applicable position: delete an
    /// all-identity column, else merge the first same-direction adjacent pair.
    pub fn reduce_step(&self, cat: &FinCat) -> Option<Hammock> {
        for c in 0..self.width() {
            if self.column_all_identities(cat, c) {
                return Some(self.delete_column(c));
            }
        }
        for c in 0..self.width().saturating_sub(1) {
            if self.arr_cols[c].0 == self.arr_cols[c + 1].0 {
                return Some(self.merge_columns(cat, c));
            }
        }
        None
    }

    /// Full reduction (confluent; see the exhaustive order-independence test).
    pub fn reduce(&self, cat: &FinCat) -> Hammock {
        let mut h = self.clone();
        while let Some(next) = h.reduce_step(cat) {
            h = next;
        }
        h
    }

    /// All single reduction steps, for the confluence test.
    pub fn all_reduce_steps(&self, cat: &FinCat) -> Vec<Hammock> {
        let mut out = Vec::new();
        for c in 0..self.width() {
            if self.column_all_identities(cat, c) {
                out.push(self.delete_column(c));
            }
        }
        for c in 0..self.width().saturating_sub(1) {
            if self.arr_cols[c].0 == self.arr_cols[c + 1].0 {
                out.push(self.merge_columns(cat, c));
            }
        }
        out
    }

    /// Deletes arrow column c, identifying object columns c and c+1. The
    /// verticals on both sides agree because the squares commute over
    /// identity arrows.
    fn delete_column(&self, c: usize) -> Hammock {
        let mut obj_cols = self.obj_cols.clone();
        let mut vert_cols = self.vert_cols.clone();
        // keep the endpoint column when c+1 is the last object column
        if c + 1 == self.width() {
            obj_cols.remove(c);
            vert_cols.remove(c);
        } else {
            obj_cols.remove(c + 1);
            vert_cols.remove(c + 1);
        }
        let mut arr_cols = self.arr_cols.clone();
        arr_cols.remove(c);
        Hammock { height: self.height, obj_cols, arr_cols, vert_cols }
    }

    /// Merges same-direction arrow columns c and c+1 by composing rows.
    fn merge_columns(&self, cat: &FinCat, c: usize) -> Hammock {
        let dir = self.arr_cols[c].0;
        debug_assert_eq!(dir, self.arr_cols[c + 1].0);
        let combined: Vec<MorId> = (0..=self.height)
            .map(|i| {
                let a = self.arr_cols[c].1[i];
                let b = self.arr_cols[c + 1].1[i];
                match dir {
                    Dir::Fwd => cat.compose(b, a),
                    Dir::Bwd => cat.compose(a, b),
                }
            })
            .collect();
        let mut obj_cols = self.obj_cols.clone();
        obj_cols.remove(c + 1);
        let mut vert_cols = self.vert_cols.clone();
        vert_cols.remove(c + 1);
        let mut arr_cols = self.arr_cols.clone();
        arr_cols[c] = (dir, combined);
        arr_cols.remove(c + 1);
        Hammock { height: self.height, obj_cols, arr_cols, vert_cols }
    }

    /// Deletes row i; interior verticals compose across the removed row.
    pub fn delete_row(&self, cat: &FinCat, i: usize) -> Hammock {
        debug_assert!(self.height >= 1 && i <= self.height);
        let k = self.height;
        let obj_cols: Vec<Vec<ObjId>> = self
            .obj_cols
            .iter()
            .map(|col| {
                let mut v = col.clone();
                v.remove(i);
                v
            })
            .collect();
        let arr_cols: Vec<(Dir, Vec<MorId>)> = self
            .arr_cols
            .iter()
            .map(|(d, arrs)| {
                let mut v = arrs.clone();
                v.remove(i);
                (*d, v)
            })
            .collect();
        let vert_cols: Vec<Vec<MorId>> = self
            .vert_cols
            .iter()
            .map(|col| {
                let mut v = col.clone();
                if i == 0 {
                    v.remove(0);
                } else if i == k {
                    v.remove(k - 1);
                } else {
                    let merged = cat.compose(col[i], col[i - 1]);
                    v[i - 1] = merged;
                    v.remove(i);
                }
                v
            })
            .collect();
        Hammock { height: k - 1, obj_cols, arr_cols, vert_cols }
    }

    /// Repeats row i with identity verticals.
    pub fn repeat_row(&self, cat: &FinCat, i: usize) -> Hammock {
        let obj_cols: Vec<Vec<ObjId>> = self
            .obj_cols
            .iter()
            .map(|col| {
                let mut v = col.clone();
                v.insert(i, col[i]);
                v
            })
            .collect();
        let arr_cols: Vec<(Dir, Vec<MorId>)> = self
            .arr_cols
            .iter()
            .map(|(d, arrs)| {
                let mut v = arrs.clone();
                v.insert(i, arrs[i]);
                (*d, v)
            })
            .collect();
        let vert_cols: Vec<Vec<MorId>> = self
            .vert_cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                let mut v = col.clone();
                v.insert(i, cat.identity(self.obj_cols[c][i]));
                v
            })
            .collect();
        Hammock { height: self.height + 1, obj_cols, arr_cols, vert_cols }
    }

    /// Concatenation at a shared endpoint, then reduction.
    pub fn compose(cat: &FinCat, g: &Hammock, f: &Hammock) -> Hammock {
        assert_eq!(f.height, g.height, "heights must match");
        assert_eq!(f.dst(), g.src(), "endpoints must match");
        let mut obj_cols = f.obj_cols.clone();
        obj_cols.extend(g.obj_cols[1..].iter().cloned());
        let mut vert_cols = f.vert_cols.clone();
        vert_cols.extend(g.vert_cols[1..].iter().cloned());
        let mut arr_cols = f.arr_cols.clone();
        arr_cols.extend(g.arr_cols.iter().cloned());
        let raw = Hammock { height: f.height, obj_cols, arr_cols, vert_cols };
        raw.reduce(cat)
    }

    /// Row i as a height-0 hammock.
    pub fn row(&self, cat: &FinCat, i: usize) -> Hammock {
        let _ = cat;
        Hammock {
            height: 0,
            obj_cols: self.obj_cols.iter().map(|c| vec![c[i]]).collect(),
            arr_cols: self.arr_cols.iter().map(|(d, a)| (*d, vec![a[i]])).collect(),
            vert_cols: self.obj_cols.iter().map(|_| Vec::new()).collect(),
        }
    }

    /// ASCII rendering for debugging: one line per row, verticals elided.
    pub fn ascii(&self, cat: &FinCat) -> String {
        let name = |m: MorId| cat.mors[m.0 as usize].name.clone();
        let oname = |o: ObjId| cat.object_names[o.0 as usize].clone();
        let mut lines = Vec::new();
        for i in 0..=self.height {
            let mut s = oname(self.obj_cols[0][i]);
            for c in 0..self.width() {
                let (d, arrs) = &self.arr_cols[c];
                match d {
                    Dir::Fwd => s.push_str(&format!(" -{}-> ", name(arrs[i]))),
                    Dir::Bwd => s.push_str(&format!(" <-{}- ", name(arrs[i]))),
                }
                s.push_str(&oname(self.obj_cols[c + 1][i]));
            }
            lines.push(s);
        }
        lines.join("\n")
    }
}

/// All column-reduced hammocks from x to y with the given height and width
/// bound, in deterministic order (width, then direction pattern, then grid
/// content).
pub fn enumerate_hammocks(
    cat: &FinCat,
    w: &WideSubcat,
    x: ObjId,
    y: ObjId,
    width_bound: usize,
    height: usize,
) -> Vec<Hammock> {
    let mut out = Vec::new();
    if x == y {
        out.push(Hammock::identity(cat, x, height));
    }
    for width in 1..=width_bound {
        for first in [Dir::Fwd, Dir::Bwd] {
            let dirs: Vec<Dir> = (0..width)
                .map(|c| if c % 2 == 0 { first } else { flip(first) })
                .collect();
            enumerate_grids(cat, w, x, y, &dirs, height, &mut out);
        }
    }
    out
}

fn flip(d: Dir) -> Dir {
    match d {
        Dir::Fwd => Dir::Bwd,
        Dir::Bwd => Dir::Fwd,
    }
}

/// Backtracking over arrow columns; the running state is the current object
/// column with its verticals.
fn enumerate_grids(
    cat: &FinCat,
    w: &WideSubcat,
    x: ObjId,
    y: ObjId,
    dirs: &[Dir],
    height: usize,
    out: &mut Vec<Hammock>,
) {
    let k = height;
    let start_objs = vec![x; k + 1];
    let start_verts = vec![cat.identity(x); k];
    let mut obj_cols = vec![start_objs];
    let mut vert_cols = vec![start_verts];
    let mut arr_cols: Vec<(Dir, Vec<MorId>)> = Vec::new();
    rec(cat, w, y, dirs, 0, &mut obj_cols, &mut vert_cols, &mut arr_cols, out);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        cat: &FinCat,
        w: &WideSubcat,
        y: ObjId,
        dirs: &[Dir],
        c: usize,
        obj_cols: &mut Vec<Vec<ObjId>>,
        vert_cols: &mut Vec<Vec<MorId>>,
        arr_cols: &mut Vec<(Dir, Vec<MorId>)>,
        out: &mut Vec<Hammock>,
    ) {
        if c == dirs.len() {
            out.push(Hammock {
                height: obj_cols[0].len() - 1,
                obj_cols: obj_cols.clone(),
                arr_cols: arr_cols.clone(),
                vert_cols: vert_cols.clone(),
            });
            return;
        }
        let last = c == dirs.len() - 1;
        let dir = dirs[c];
        let k = obj_cols[0].len() - 1;
        let cur_objs = obj_cols[c].clone();
        let cur_verts = vert_cols[c].clone();

        // enumerate (arrows per row, next column objects, next verticals)
        let mut arrs = vec![MorId(0); k + 1];
        let mut next_objs = vec![ObjId(0); k + 1];
        let mut next_verts = vec![MorId(0); k];
        row_rec(
            cat, w, y, dir, last, 0, k, &cur_objs, &cur_verts, &mut arrs, &mut next_objs,
            &mut next_verts, &mut |arrs, next_objs, next_verts| {
                if arrs.iter().all(|&a| cat.is_identity(a)) {
                    return; // keep columns reduced
                }
                obj_cols.push(next_objs.to_vec());
                vert_cols.push(next_verts.to_vec());
                arr_cols.push((dir, arrs.to_vec()));
                rec(cat, w, y, dirs, c + 1, obj_cols, vert_cols, arr_cols, out);
                obj_cols.pop();
                vert_cols.pop();
                arr_cols.pop();
            },
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn row_rec(
        cat: &FinCat,
        w: &WideSubcat,
        y: ObjId,
        dir: Dir,
        last: bool,
        i: usize,
        k: usize,
        cur_objs: &[ObjId],
        cur_verts: &[MorId],
        arrs: &mut Vec<MorId>,
        next_objs: &mut Vec<ObjId>,
        next_verts: &mut Vec<MorId>,
        emit: &mut impl FnMut(&[MorId], &[ObjId], &[MorId]),
    ) {
        if i > k {
            emit(arrs, next_objs, next_verts);
            return;
        }
        // candidate arrows for row i, then the vertical into row i+1
        let candidates: Vec<MorId> = match dir {
            Dir::Fwd => {
                if last {
                    cat.hom(cur_objs[i], y).to_vec()
                } else {
                    cat.hom_from(cur_objs[i]).collect()
                }
            }
            Dir::Bwd => w
                .members()
                .iter()
                .copied()
                .filter(|&m| cat.dst(m) == cur_objs[i] && (!last || cat.src(m) == y))
                .collect(),
        };
        for a in candidates {
            // square against the previous row
            if i > 0 {
                let ok = match dir {
                    Dir::Fwd => {
                        cat.compose(a, cur_verts[i - 1])
                            == cat.compose(next_verts[i - 1], arrs[i - 1])
                    }
                    Dir::Bwd => {
                        cat.compose(cur_verts[i - 1], arrs[i - 1])
                            == cat.compose(a, next_verts[i - 1])
                    }
                };
                if !ok {
                    continue;
                }
            }
            arrs[i] = a;
            let o = match dir {
                Dir::Fwd => cat.dst(a),
                Dir::Bwd => cat.src(a),
            };
            next_objs[i] = o;
            if i == k {
                row_rec(
                    cat, w, y, dir, last, i + 1, k, cur_objs, cur_verts, arrs, next_objs,
                    next_verts, emit,
                );
            } else {
                let vert_candidates: Vec<MorId> = if last {
                    vec![cat.identity(y)]
                } else {
                    w.members().iter().copied().filter(|&v| cat.src(v) == o).collect()
                };
                for v in vert_candidates {
                    next_verts[i] = v;
                    row_rec(
                        cat, w, y, dir, last, i + 1, k, cur_objs, cur_verts, arrs, next_objs,
                        next_verts, emit,
                    );
                }
            }
        }
    }
}

/// Factorizations g = b ∘ a of a morphism, for the unreduction moves of the
/// connectivity search.
pub fn factorizations(cat: &FinCat, g: MorId) -> Vec<(MorId, MorId)> {
    let (x, y) = (cat.src(g), cat.dst(g));
    let mut out = Vec::new();
    for m in cat.objects() {
        for &a in cat.hom(x, m) {
            for &b in cat.hom(m, y) {
                if cat.compose(b, a) == g {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Cached left/right factor indexes shared by the grid searches.
pub struct FactorIndex {
    /// (v, h) -> all m with m ∘ v = h
    pub left: HashMap<(MorId, MorId), Vec<MorId>>,
    /// (u, h) -> all m with u ∘ m = h
    pub right: HashMap<(MorId, MorId), Vec<MorId>>,
}

impl FactorIndex {
    pub fn build(cat: &FinCat) -> FactorIndex {
        let mut left: HashMap<(MorId, MorId), Vec<MorId>> = HashMap::new();
        let mut right: HashMap<(MorId, MorId), Vec<MorId>> = HashMap::new();
        for m in cat.morphisms() {
            for v in cat.morphisms() {
                if let Some(h) = cat.try_compose(m, v) {
                    left.entry((v, h)).or_default().push(m);
                    right.entry((m, h)).or_default().push(v);
                }
            }
        }
        FactorIndex { left, right }
    }

    pub fn left_factors(&self, v: MorId, h: MorId) -> &[MorId] {
        self.left.get(&(v, h)).map_or(&[], |v| v.as_slice())
    }

    pub fn right_factors(&self, u: MorId, h: MorId) -> &[MorId] {
        self.right.get(&(u, h)).map_or(&[], |v| v.as_slice())
    }
}

/// One-step vertical neighbors of a height-0 hammock: all rows r such that
/// stacking h over r, or r over h, yields a valid height-1 grid.
pub fn vertical_neighbors(
    cat: &FinCat,
    w: &WideSubcat,
    idx: &FactorIndex,
    h: &Hammock,
) -> Vec<Hammock> {
    debug_assert_eq!(h.height, 0);
    let width = h.width();
    let mut out = Vec::new();
    if width == 0 {
        return out;
    }
    for h_on_top in [true, false] {
        // state: r_objs, r_arrs and the verticals between h and r
        let mut r_objs = vec![h.src()];
        let mut verts = vec![cat.identity(h.src())];
        let mut r_arrs: Vec<MorId> = Vec::new();
        walk(cat, w, idx, h, h_on_top, 0, &mut r_objs, &mut verts, &mut r_arrs, &mut out);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        cat: &FinCat,
        w: &WideSubcat,
        idx: &FactorIndex,
        h: &Hammock,
        h_on_top: bool,
        c: usize,
        r_objs: &mut Vec<ObjId>,
        verts: &mut Vec<MorId>,
        r_arrs: &mut Vec<MorId>,
        out: &mut Vec<Hammock>,
    ) {
        let width = h.width();
        if c == width {
            out.push(Hammock {
                height: 0,
                obj_cols: r_objs.iter().map(|&o| vec![o]).collect(),
                arr_cols: h
                    .arr_cols
                    .iter()
                    .zip(r_arrs.iter())
                    .map(|((d, _), &a)| (*d, vec![a]))
                    .collect(),
                vert_cols: r_objs.iter().map(|_| Vec::new()).collect(),
            });
            return;
        }
        let dir = h.arr_cols[c].0;
        let h_arr = h.arr_cols[c].1[0];
        let next_vert_candidates: Vec<MorId> = if c + 1 == width {
            vec![cat.identity(h.dst())]
        } else if h_on_top {
            // vertical h.obj[c+1] -> r.obj[c+1]
            w.members().iter().copied().filter(|&v| cat.src(v) == h.obj_cols[c + 1][0]).collect()
        } else {
            // vertical r.obj[c+1] -> h.obj[c+1]
            w.members().iter().copied().filter(|&v| cat.dst(v) == h.obj_cols[c + 1][0]).collect()
        };
        for nv in next_vert_candidates {
            let r_next = if h_on_top { cat.dst(nv) } else { cat.src(nv) };
            let cur_v = verts[c];
            let candidates: Vec<MorId> = match (h_on_top, dir) {
                // square (Fwd, h top): r_arr ∘ v_c = v_{c+1} ∘ h_arr
                (true, Dir::Fwd) => idx
                    .left_factors(cur_v, cat.compose(nv, h_arr))
                    .iter()
                    .copied()
                    .filter(|&m| cat.dst(m) == r_next)
                    .collect(),
                // square (Bwd, h top): v_c ∘ h_arr = r_arr ∘ v_{c+1}, r_arr in W
                (true, Dir::Bwd) => idx
                    .left_factors(nv, cat.compose(cur_v, h_arr))
                    .iter()
                    .copied()
                    .filter(|&m| w.contains(m) && cat.src(m) == r_next)
                    .collect(),
                // square (Fwd, r top): h_arr ∘ v_c = v_{c+1} ∘ r_arr
                (false, Dir::Fwd) => idx
                    .right_factors(nv, cat.compose(h_arr, cur_v))
                    .iter()
                    .copied()
                    .filter(|&m| cat.src(m) == r_objs[c] && cat.dst(m) == r_next)
                    .collect(),
                // square (Bwd, r top): v_c ∘ r_arr = h_arr ∘ v_{c+1}, r_arr in W
                (false, Dir::Bwd) => idx
                    .right_factors(cur_v, cat.compose(h_arr, nv))
                    .iter()
                    .copied()
                    .filter(|&m| w.contains(m) && cat.src(m) == r_next && cat.dst(m) == r_objs[c])
                    .collect(),
            };
            for a in candidates {
                r_objs.push(r_next);
                verts.push(nv);
                r_arrs.push(a);
                walk(cat, w, idx, h, h_on_top, c + 1, r_objs, verts, r_arrs, out);
                r_objs.pop();
                verts.pop();
                r_arrs.pop();
            }
        }
    }
    out
}
