//! Bounded Gabriel–Zisman localization.
//!
//! Morphisms of W⁻¹C are equivalence classes of zigzag words (category
//! morphisms forward, W-morphisms backward) under the congruence generated by
//! composition, identity deletion and w·w⁻¹ = id = w⁻¹·w. We enumerate word
//! classes by length with a coset-enumeration style table: classes carry
//! per-letter transitions, rule applications merge classes through a deduction
//! queue. The quotient is returned only when adding words one letter past the
//! bound creates no class and merges none, and the final transition table
//! passes a coherence scan; otherwise `NotSaturated` is reported.

use super::{FinCat, FinFunctor, MorData, MorId, ObjId, RawCategory, WideSubcat};
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Fwd(MorId),
    Bwd(MorId),
}

impl Letter {
    fn render(&self, cat: &FinCat) -> String {
        match self {
            Letter::Fwd(m) => cat.mors[m.0 as usize].name.clone(),
            Letter::Bwd(m) => format!("{}⁻¹", cat.mors[m.0 as usize].name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GzError {
    #[error("word quotient did not stabilize within bound {0}")]
    NotSaturated(usize),
}

/// The localized category with its localization functor and the class table
/// kept around so callers can resolve arbitrary zigzag words.
pub struct Localization {
    pub cat: FinCat,
    pub functor: FinFunctor,
    /// root class id (internal) -> morphism id in `cat`
    class_to_mor: HashMap<u32, MorId>,
    table: ClassTable,
}

struct ClassTable {
    parent: Vec<u32>,
    src: Vec<ObjId>,
    dst: Vec<ObjId>,
    min_len: Vec<u32>,
    rep: Vec<Vec<Letter>>,
    expanded: Vec<bool>,
    trans: Vec<HashMap<Letter, u32>>,
}

impl ClassTable {
    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let p = self.parent[a as usize];
            self.parent[a as usize] = self.parent[p as usize];
            a = self.parent[a as usize];
        }
        a
    }

    fn find_ro(&self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            a = self.parent[a as usize];
        }
        a
    }

    fn new_class(&mut self, src: ObjId, dst: ObjId, rep: Vec<Letter>) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.src.push(src);
        self.dst.push(dst);
        self.min_len.push(rep.len() as u32);
        self.rep.push(rep);
        self.expanded.push(false);
        self.trans.push(HashMap::new());
        id
    }
}

struct Engine<'a> {
    cat: &'a FinCat,
    w: &'a WideSubcat,
    t: ClassTable,
    dict: HashMap<(ObjId, Vec<Letter>), u32>,
    queue: VecDeque<(u32, u32)>,
    /// set while probing length bound+1; merges of two settled classes then flag instability
    probing: bool,
    probe_len: u32,
    unstable: bool,
}

impl<'a> Engine<'a> {
    fn letter_applies(&self, at: ObjId, l: Letter) -> Option<ObjId> {
        match l {
            Letter::Fwd(f) => (self.cat.src(f) == at).then(|| self.cat.dst(f)),
            Letter::Bwd(w) => (self.cat.dst(w) == at).then(|| self.cat.src(w)),
        }
    }

    fn push_letter(&self, word: &mut Vec<Letter>, l: Letter) {
        match l {
            Letter::Fwd(f) | Letter::Bwd(f) if self.cat.is_identity(f) => return,
            _ => {}
        }
        match (word.last().copied(), l) {
            (Some(Letter::Fwd(g)), Letter::Fwd(f)) => {
                word.pop();
                let c = self.cat.compose(f, g);
                self.push_letter(word, Letter::Fwd(c));
            }
            (Some(Letter::Bwd(u)), Letter::Bwd(v)) => {
                word.pop();
                let c = self.cat.compose(u, v);
                self.push_letter(word, Letter::Bwd(c));
            }
            (Some(Letter::Fwd(g)), Letter::Bwd(w)) if g == w => {
                word.pop();
            }
            (Some(Letter::Bwd(u)), Letter::Fwd(f)) if f == u => {
                word.pop();
            }
            _ => word.push(l),
        }
    }

    fn class_of_word(&mut self, src: ObjId, word: Vec<Letter>) -> u32 {
        let dst = word.iter().fold(src, |at, &l| self.letter_applies(at, l).expect("invalid word"));
        if let Some(&c) = self.dict.get(&(src, word.clone())) {
            return self.t.find(c);
        }
        let c = self.t.new_class(src, dst, word.clone());
        self.dict.insert((src, word), c);
        c
    }

    fn set_transition(&mut self, c: u32, l: Letter, target: u32) {
        let c = self.t.find(c);
        let target = self.t.find(target);
        match self.t.trans[c as usize].get(&l) {
            Some(&old) => {
                let old = self.t.find(old);
                if old != target {
                    self.queue.push_back((old, target));
                }
            }
            None => {
                self.t.trans[c as usize].insert(l, target);
            }
        }
    }

    fn drain_queue(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.t.find(a);
            let b = self.t.find(b);
            if a == b {
                continue;
            }
            // deterministic survivor: smaller id
            let (win, lose) = if a < b { (a, b) } else { (b, a) };
            if self.probing
                && self.t.min_len[win as usize] <= self.probe_len
                && self.t.min_len[lose as usize] <= self.probe_len
            {
                self.unstable = true;
            }
            self.t.parent[lose as usize] = win;
            if self.t.min_len[lose as usize] < self.t.min_len[win as usize] {
                self.t.min_len[win as usize] = self.t.min_len[lose as usize];
                self.t.rep[win as usize] = self.t.rep[lose as usize].clone();
            }
            if self.t.expanded[lose as usize] {
                self.t.expanded[win as usize] = true;
            }
            let folded: Vec<(Letter, u32)> = self.t.trans[lose as usize].drain().collect();
            for (l, tgt) in folded {
                self.set_transition(win, l, tgt);
            }
        }
    }

    fn expand(&mut self, c: u32) {
        let c = self.t.find(c);
        if self.t.expanded[c as usize] {
            return;
        }
        self.t.expanded[c as usize] = true;
        let at = self.t.dst[c as usize];
        let src = self.t.src[c as usize];
        let rep = self.t.rep[c as usize].clone();
        let mut letters: Vec<Letter> = Vec::new();
        for m in self.cat.morphisms() {
            if self.cat.src(m) == at {
                letters.push(Letter::Fwd(m));
            }
        }
        for &m in self.w.members() {
            if self.cat.dst(m) == at {
                letters.push(Letter::Bwd(m));
            }
        }
        for l in letters {
            let mut word = rep.clone();
            self.push_letter(&mut word, l);
            let c2 = self.class_of_word(src, word);
            self.set_transition(c, l, c2);
            // cancellation closes immediately in both directions
            match l {
                Letter::Fwd(f) if self.w.contains(f) => self.set_transition(c2, Letter::Bwd(f), c),
                Letter::Bwd(w) => self.set_transition(c2, Letter::Fwd(w), c),
                _ => {}
            }
            self.drain_queue();
        }
    }
}

/// Bounded localization of `cat` at the wide subcategory `w`.
pub fn gz_localize(cat: &FinCat, w: &WideSubcat, word_bound: usize) -> Result<Localization, GzError> {
    let mut eng = Engine {
        cat,
        w,
        t: ClassTable {
            parent: Vec::new(),
            src: Vec::new(),
            dst: Vec::new(),
            min_len: Vec::new(),
            rep: Vec::new(),
            expanded: Vec::new(),
            trans: Vec::new(),
        },
        dict: HashMap::new(),
        queue: VecDeque::new(),
        probing: false,
        probe_len: word_bound as u32,
        unstable: false,
    };
    for o in cat.objects() {
        eng.class_of_word(o, Vec::new());
    }

    // settle all classes of words up to length bound-1 by expansion
    for level in 0..word_bound as u32 {
        loop {
            let pending: Vec<u32> = (0..eng.t.parent.len() as u32)
                .filter(|&c| eng.t.find_ro(c) == c)
                .filter(|&c| !eng.t.expanded[c as usize] && eng.t.min_len[c as usize] <= level)
                .collect();
            if pending.is_empty() {
                break;
            }
            for c in pending {
                eng.expand(c);
            }
        }
    }

    // probe: words one past the bound must neither create nor merge
    eng.probing = true;
    loop {
        let pending: Vec<u32> = (0..eng.t.parent.len() as u32)
            .filter(|&c| eng.t.find_ro(c) == c)
            .filter(|&c| !eng.t.expanded[c as usize] && eng.t.min_len[c as usize] <= word_bound as u32)
            .collect();
        if pending.is_empty() {
            break;
        }
        for c in pending {
            eng.expand(c);
        }
    }
    let roots: Vec<u32> = (0..eng.t.parent.len() as u32).filter(|&c| eng.t.find_ro(c) == c).collect();
    if eng.unstable || roots.iter().any(|&c| eng.t.min_len[c as usize] > word_bound as u32) {
        return Err(GzError::NotSaturated(word_bound));
    }

    // coherence scan: the closed table must satisfy the word rules everywhere;
    // any violation shows the quotient is still moving
    let coherent = {
        let t = &mut eng.t;
        let mut ok = true;
        let roots: Vec<u32> = (0..t.parent.len() as u32).filter(|&c| t.find_ro(c) == c).collect();
        'scan: for &c in &roots {
            let at = t.dst[c as usize];
            // cancellation
            for &wmor in w.members() {
                if cat.dst(wmor) == at {
                    let c2 = t.find(t.trans[c as usize][&Letter::Bwd(wmor)]);
                    let back = t.find(t.trans[c2 as usize][&Letter::Fwd(wmor)]);
                    if back != c {
                        ok = false;
                        break 'scan;
                    }
                }
                if cat.src(wmor) == at {
                    let c2 = t.find(t.trans[c as usize][&Letter::Fwd(wmor)]);
                    let back = t.find(t.trans[c2 as usize][&Letter::Bwd(wmor)]);
                    if back != c {
                        ok = false;
                        break 'scan;
                    }
                }
            }
            // forward composition coherence
            for f in cat.morphisms() {
                if cat.src(f) != at {
                    continue;
                }
                let c2 = t.find(t.trans[c as usize][&Letter::Fwd(f)]);
                for g in cat.morphisms() {
                    if cat.src(g) != cat.dst(f) {
                        continue;
                    }
                    let via = t.find(t.trans[c2 as usize][&Letter::Fwd(g)]);
                    let direct = t.find(t.trans[c as usize][&Letter::Fwd(cat.compose(g, f))]);
                    if via != direct {
                        ok = false;
                        break 'scan;
                    }
                }
            }
            // backward composition coherence
            for &u in w.members() {
                if cat.dst(u) != at {
                    continue;
                }
                let c2 = t.find(t.trans[c as usize][&Letter::Bwd(u)]);
                for &v in w.members() {
                    if cat.dst(v) != cat.src(u) {
                        continue;
                    }
                    let via = t.find(t.trans[c2 as usize][&Letter::Bwd(v)]);
                    let direct = t.find(t.trans[c as usize][&Letter::Bwd(cat.compose(u, v))]);
                    if via != direct {
                        ok = false;
                        break 'scan;
                    }
                }
            }
        }
        ok
    };
    if !coherent {
        return Err(GzError::NotSaturated(word_bound));
    }

    // assemble the quotient category
    let mut roots: Vec<u32> = (0..eng.t.parent.len() as u32).filter(|&c| eng.t.find_ro(c) == c).collect();
    roots.sort_by(|&a, &b| {
        let ka = (eng.t.src[a as usize], eng.t.dst[a as usize], eng.t.min_len[a as usize], a);
        let kb = (eng.t.src[b as usize], eng.t.dst[b as usize], eng.t.min_len[b as usize], b);
        ka.cmp(&kb)
    });
    let mut class_to_mor: HashMap<u32, MorId> = HashMap::new();
    let mut morphisms = Vec::new();
    for (i, &c) in roots.iter().enumerate() {
        class_to_mor.insert(c, MorId(i as u32));
        let rep = &eng.t.rep[c as usize];
        let name = if rep.is_empty() {
            format!("[id {}]", cat.object_names[eng.t.src[c as usize].0 as usize])
        } else {
            format!("[{}]", rep.iter().map(|l| l.render(cat)).collect::<Vec<_>>().join("·"))
        };
        morphisms.push(MorData { name, src: eng.t.src[c as usize], dst: eng.t.dst[c as usize] });
    }
    let identities: Vec<MorId> = cat
        .objects()
        .map(|o| {
            let c = eng.t.find(*eng.dict.get(&(o, Vec::new())).expect("identity class"));
            class_to_mor[&c]
        })
        .collect();
    // composition by walking representative words through the table
    let mut composites = Vec::new();
    for &gc in &roots {
        for &fc in &roots {
            if eng.t.dst[fc as usize] != eng.t.src[gc as usize] {
                continue;
            }
            let mut cur = fc;
            for &l in eng.t.rep[gc as usize].clone().iter() {
                cur = eng.t.find(eng.t.trans[cur as usize][&l]);
            }
            composites.push((class_to_mor[&gc], class_to_mor[&fc], class_to_mor[&cur]));
        }
    }
    let loc_cat = FinCat::from_raw_unchecked(RawCategory {
        objects: cat.object_names.clone(),
        morphisms,
        identities,
        composites,
    });
    let functor = FinFunctor {
        obj_map: cat.objects().collect(),
        mor_map: cat
            .morphisms()
            .map(|f| {
                let idc = eng.t.find(*eng.dict.get(&(cat.src(f), Vec::new())).unwrap());
                let c = if cat.is_identity(f) {
                    idc
                } else {
                    eng.t.find(eng.t.trans[idc as usize][&Letter::Fwd(f)])
                };
                class_to_mor[&c]
            })
            .collect(),
    };
    Ok(Localization { cat: loc_cat, functor, class_to_mor, table: eng.t })
}

impl Localization {
    /// Resolves an arbitrary zigzag word starting at `src` to its class.
    pub fn class_of_path(&mut self, src: ObjId, letters: &[Letter]) -> MorId {
        let mut cur = self.identity_class(src);
        for &l in letters {
            let r = self.table.find(cur);
            cur = self.table.trans[r as usize][&l];
        }
        let root = self.table.find(cur);
        self.class_to_mor[&root]
    }

    fn identity_class(&mut self, src: ObjId) -> u32 {
        // identity classes are exactly the identity morphisms of the quotient
        let m = self.cat.identity(src);
        let root = self
            .class_to_mor
            .iter()
            .find(|(_, &mor)| mor == m)
            .map(|(&c, _)| c)
            .expect("identity class present");
        self.table.find(root)
    }
}

impl Localization {
    /// Representative word (source object plus letters) behind a morphism of
    /// the localized category.
    pub fn rep_word_of(&self, m: MorId) -> (ObjId, Vec<Letter>) {
        let root = self
            .class_to_mor
            .iter()
            .find(|(_, &mm)| mm == m)
            .map(|(&c, _)| c)
            .expect("morphism of the localization");
        (self.table.src[root as usize], self.table.rep[root as usize].clone())
    }
}
