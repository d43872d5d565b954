//! Built-in finite instances: skeletal pointed sets, F2 vector spaces, small
//! walking categories and the crafted negative controls.

use crate::fincat::{CatBuilder, FinCat, FinFunctor, MorData, MorId, ObjId, RawCategory, WideSubcat};
use crate::waldhausen::WaldStructure;

/// A pointed map between skeletal pointed sets {0, 1, .., n-1} with basepoint 0.
fn pointed_maps(src_size: usize, dst_size: usize) -> Vec<Vec<usize>> {
    // map[i] = image of element i; map[0] = 0 always
    let mut out = Vec::new();
    let free = src_size - 1;
    let mut stack = vec![0usize; free];
    loop {
        let mut m = vec![0usize];
        m.extend(stack.iter().copied());
        out.push(m);
        // odometer
        let mut k = free;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            stack[k] += 1;
            if stack[k] < dst_size {
                break;
            }
            stack[k] = 0;
        }
    }
}

fn map_name(prefix: &str, src: usize, dst: usize, m: &[usize]) -> String {
    let digits: String = m.iter().skip(1).map(|v| char::from_digit(*v as u32, 10).unwrap()).collect();
    format!("{}{}{}:{}", prefix, src, dst, if digits.is_empty() { "_".into() } else { digits })
}

/// Skeletal pointed sets of size <= max_size with all basepoint-preserving maps.
pub fn pointed_sets_category(max_size: usize) -> FinCat {
    let sizes: Vec<usize> = (1..=max_size).collect();
    let objects: Vec<String> = sizes.iter().map(|s| format!("P{}", s)).collect();
    let mut morphisms = Vec::new();
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (si, &s) in sizes.iter().enumerate() {
        for (di, &d) in sizes.iter().enumerate() {
            for m in pointed_maps(s, d) {
                morphisms.push(MorData {
                    name: map_name("p", s, d, &m),
                    src: ObjId(si as u32),
                    dst: ObjId(di as u32),
                });
                maps.push((si, di, m));
            }
        }
    }
    let find = |si: usize, di: usize, m: &[usize]| -> MorId {
        MorId(
            maps.iter()
                .position(|(a, b, v)| *a == si && *b == di && v == m)
                .expect("map present") as u32,
        )
    };
    let identities = sizes
        .iter()
        .enumerate()
        .map(|(si, &s)| find(si, si, &(0..s).collect::<Vec<_>>()))
        .collect();
    let mut composites = Vec::new();
    for (gi, (gs, gd, gm)) in maps.iter().enumerate() {
        for (fi, (fs, fd, fm)) in maps.iter().enumerate() {
            if fd != gs {
                continue;
            }
            let comp: Vec<usize> = fm.iter().map(|&x| gm[x]).collect();
            composites.push((MorId(gi as u32), MorId(fi as u32), find(*fs, *gd, &comp)));
        }
    }
    FinCat::from_raw_unchecked(RawCategory { objects, morphisms, identities, composites })
}

fn pointed_map_surjective(dst_size: usize, m: &[usize]) -> bool {
    (0..dst_size).all(|v| m.contains(&v))
}

/// fib = surjective pointed maps, weq = isomorphisms, zero = the one-point set.
pub fn pointed_sets_waldhausen(max_size: usize) -> WaldStructure {
    let cat = pointed_sets_category(max_size);
    let fib: Vec<MorId> = cat
        .morphisms()
        .filter(|&m| {
            let name = &cat.mors[m.0 as usize].name;
            // recover the underlying map from the name: pSD:digits
            let (sd, digits) = name[1..].split_once(':').unwrap();
            let d: usize = sd[1..].parse().unwrap();
            let mut map = vec![0usize];
            if digits != "_" {
                map.extend(digits.chars().map(|c| c.to_digit(10).unwrap() as usize));
            }
            pointed_map_surjective(d, &map)
        })
        .collect();
    let weq = cat.morphisms().filter(|&m| cat.is_iso(m)).collect::<Vec<_>>();
    let zero = cat.zero_object().expect("one-point set is a zero object");
    WaldStructure::new(cat, weq, fib, zero)
}

/// Same pointed-sets base with every morphism a weak equivalence.
pub fn pointed_sets_weq_all(max_size: usize) -> WaldStructure {
    let w = pointed_sets_waldhausen(max_size);
    let weq = w.cat.morphisms().collect::<Vec<_>>();
    let fib = w.fib.members().to_vec();
    let zero = w.zero;
    WaldStructure::new(w.cat, weq, fib, zero)
}

/// F2 matrices encoded row-major as bit vectors; dims 0..=max_dim.
fn f2_maps(src_dim: usize, dst_dim: usize) -> Vec<Vec<u8>> {
    let bits = src_dim * dst_dim;
    (0..(1usize << bits))
        .map(|code| (0..bits).map(|b| ((code >> b) & 1) as u8).collect())
        .collect()
}

fn f2_rank(src_dim: usize, dst_dim: usize, m: &[u8]) -> usize {
    // rows = dst_dim vectors of length src_dim
    let mut rows: Vec<u32> = (0..dst_dim)
        .map(|r| {
            (0..src_dim).fold(0u32, |acc, c| acc | ((m[r * src_dim + c] as u32) << c))
        })
        .collect();
    let mut rank = 0;
    for c in 0..src_dim {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> c & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Skeletal F2-vector spaces of dimension <= max_dim with all linear maps;
/// fib = surjections, weq = isomorphisms, zero = the zero space.
pub fn f2_vector_spaces(max_dim: usize) -> WaldStructure {
    let dims: Vec<usize> = (0..=max_dim).collect();
    let objects: Vec<String> = dims.iter().map(|d| format!("V{}", d)).collect();
    let mut morphisms = Vec::new();
    let mut maps: Vec<(usize, usize, Vec<u8>)> = Vec::new();
    for &s in &dims {
        for &d in &dims {
            for m in f2_maps(s, d) {
                let digits: String = m.iter().map(|b| char::from_digit(*b as u32, 10).unwrap()).collect();
                morphisms.push(MorData {
                    name: format!("f{}{}:{}", s, d, if digits.is_empty() { "_".into() } else { digits }),
                    src: ObjId(s as u32),
                    dst: ObjId(d as u32),
                });
                maps.push((s, d, m));
            }
        }
    }
    let mut index = std::collections::HashMap::new();
    for (i, key) in maps.iter().enumerate() {
        index.insert(key.clone(), MorId(i as u32));
    }
    let identity_map = |d: usize| -> Vec<u8> {
        let mut m = vec![0u8; d * d];
        for i in 0..d {
            m[i * d + i] = 1;
        }
        m
    };
    let identities = dims.iter().map(|&d| index[&(d, d, identity_map(d))]).collect();
    let mut composites = Vec::new();
    for (gi, (gs, gd, gm)) in maps.iter().enumerate() {
        for (fi, (fs, fd, fm)) in maps.iter().enumerate() {
            if fd != gs {
                continue;
            }
            // comp = gm * fm over F2: (gd x gs) * (fd=gs x fs)
            let mut comp = vec![0u8; gd * fs];
            for r in 0..*gd {
                for c in 0..*fs {
                    let mut acc = 0u8;
                    for k in 0..*gs {
                        acc ^= gm[r * gs + k] & fm[k * fs + c];
                    }
                    comp[r * fs + c] = acc;
                }
            }
            composites.push((MorId(gi as u32), MorId(fi as u32), index[&(*fs, *gd, comp)]));
        }
    }
    let cat = FinCat::from_raw_unchecked(RawCategory { objects, morphisms, identities, composites });
    let fib: Vec<MorId> = cat
        .morphisms()
        .filter(|&m| {
            let (s, d, mm) = &maps[m.0 as usize];
            f2_rank(*s, *d, mm) == *d
        })
        .collect();
    let weq: Vec<MorId> = cat.morphisms().filter(|&m| cat.is_iso(m)).collect();
    let zero = cat.zero_object().expect("V0 is a zero object");
    WaldStructure::new(cat, weq, fib, zero)
}

/// Two objects and a single non-identity arrow a -> b.
pub fn walking_arrow() -> FinCat {
    let mut b = CatBuilder::new();
    let a = b.object("a");
    let bb = b.object("b");
    b.identity(a, "id_a");
    b.identity(bb, "id_b");
    b.morphism("f", a, bb);
    b.build().expect("walking arrow is a category")
}

/// Walking weak equivalence: the walking arrow with W = {f}.
pub fn walking_weq() -> (FinCat, WideSubcat) {
    let cat = walking_arrow();
    let f = cat.morphisms().find(|&m| !cat.is_identity(m)).unwrap();
    let mut w = vec![f];
    w.extend(cat.identities.iter().copied());
    let sub = WideSubcat::new(&cat, w);
    (cat, sub)
}

/// Walking weak equivalence padded with a zero object so it carries a
/// Waldhausen structure: objects 0, a, b; w: a -> b in weq; zero maps
/// everywhere; fib = identities plus maps to 0.
pub fn walking_weq_waldhausen() -> WaldStructure {
    let mut b = CatBuilder::new();
    let z = b.object("0");
    let a = b.object("a");
    let bb = b.object("b");
    let id_z = b.identity(z, "id_0");
    let id_a = b.identity(a, "id_a");
    let id_b = b.identity(bb, "id_b");
    let w = b.morphism("w", a, bb);
    let objs = [z, a, bb];
    let mut zmap = std::collections::HashMap::new();
    zmap.insert((z, z), id_z);
    for &x in &objs {
        for &y in &objs {
            if (x, y) != (z, z) {
                let m = b.morphism(&format!("z_{}{}", x.0, y.0), x, y);
                zmap.insert((x, y), m);
            }
        }
    }
    // zero absorbs everything; w is the only other non-identity and is not
    // self-composable, so every remaining composite is a zero map
    let mors: Vec<(MorId, ObjId, ObjId, bool)> = {
        let mut v = vec![
            (id_z, z, z, false),
            (id_a, a, a, false),
            (id_b, bb, bb, false),
            (w, a, bb, false),
        ];
        for (&(x, y), &m) in &zmap {
            if (x, y) != (z, z) {
                v.push((m, x, y, true));
            }
        }
        v.sort_by_key(|e| e.0);
        v
    };
    for &(g, gs, gd, gz) in &mors {
        for &(f, fs, fd, fz) in &mors {
            if fd != gs {
                continue;
            }
            let is_id_g = g == id_z || g == id_a || g == id_b;
            let is_id_f = f == id_z || f == id_a || f == id_b;
            if is_id_g || is_id_f {
                continue; // identity composites filled by the builder
            }
            assert!(gz || fz, "w is not composable with itself");
            b.composite(g, f, zmap[&(fs, gd)]);
        }
    }
    let cat = b.build().expect("walking weq with zero is a category");
    let weq = WideSubcat::new(&cat, [id_z, id_a, id_b, w]);
    let fib = WideSubcat::new(&cat, [id_z, id_a, id_b, zmap[&(a, z)], zmap[&(bb, z)]]);
    WaldStructure::new(cat, weq.members().to_vec(), fib.members().to_vec(), z)
}

/// One object, one morphism.
pub fn one_object_trivial() -> WaldStructure {
    let mut b = CatBuilder::new();
    let o = b.object("*");
    b.identity(o, "id");
    let cat = b.build().unwrap();
    let all: Vec<MorId> = cat.morphisms().collect();
    WaldStructure::new(cat, all.clone(), all, o)
}

/// One-object category with composition table of Z/n.
pub fn cyclic_group_category(n: usize) -> FinCat {
    let mut raw = RawCategory::default();
    raw.objects.push("*".into());
    for k in 0..n {
        raw.morphisms.push(MorData { name: format!("t{}", k), src: ObjId(0), dst: ObjId(0) });
    }
    raw.identities.push(MorId(0));
    for a in 0..n {
        for bq in 0..n {
            raw.composites.push((MorId(a as u32), MorId(bq as u32), MorId(((a + bq) % n) as u32)));
        }
    }
    FinCat::from_raw_unchecked(raw)
}

/// Two parallel arrows u, v: a -> b plus a weak equivalence w: a -> b.
/// The localization at {w} has free hom monoids, so the bounded word
/// quotient keeps growing: the shipped non-saturating control.
pub fn parallel_pair_nonsaturating() -> (FinCat, WideSubcat) {
    let mut b = CatBuilder::new();
    let a = b.object("a");
    let bb = b.object("b");
    b.identity(a, "id_a");
    b.identity(bb, "id_b");
    b.morphism("u", a, bb);
    b.morphism("v", a, bb);
    let w = b.morphism("w", a, bb);
    let cat = b.build().unwrap();
    let mut members = cat.identities.clone();
    members.push(w);
    let sub = WideSubcat::new(&cat, members);
    (cat, sub)
}

/// Pointed sets of size <= 2 with a duplicate of the two-point set, making
/// the skeletal inclusion a weq-dense extension.
pub fn pointed_sets_2_with_duplicate() -> (WaldStructure, WaldStructure, FinFunctor) {
    let small = pointed_sets_waldhausen(2);

    // sizes: P1 (o0), P2 (o1), P2x (o2, a second copy of P2)
    let sizes = [1usize, 2, 2];
    let objects = vec!["P1".to_string(), "P2".to_string(), "P2x".to_string()];
    let mut morphisms = Vec::new();
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (si, &s) in sizes.iter().enumerate() {
        for (di, &d) in sizes.iter().enumerate() {
            for m in pointed_maps(s, d) {
                morphisms.push(MorData {
                    name: format!("q{}{}:{}", si, di, m.iter().skip(1).map(|v| v.to_string()).collect::<Vec<_>>().join("")),
                    src: ObjId(si as u32),
                    dst: ObjId(di as u32),
                });
                maps.push((si, di, m));
            }
        }
    }
    let mut index = std::collections::HashMap::new();
    for (i, k) in maps.iter().enumerate() {
        index.insert(k.clone(), MorId(i as u32));
    }
    let identities = (0..3).map(|si| index[&(si, si, (0..sizes[si]).collect::<Vec<_>>())]).collect();
    let mut composites = Vec::new();
    for (gi, (gs, gd, gm)) in maps.iter().enumerate() {
        for (fi, (fs, fd, fm)) in maps.iter().enumerate() {
            if fd != gs {
                continue;
            }
            let comp: Vec<usize> = fm.iter().map(|&x| gm[x]).collect();
            composites.push((MorId(gi as u32), MorId(fi as u32), index[&(*fs, *gd, comp)]));
        }
    }
    let cat = FinCat::from_raw_unchecked(RawCategory { objects, morphisms, identities, composites });
    let fib: Vec<MorId> = cat
        .morphisms()
        .filter(|&m| {
            let (_, d, mm) = &maps[m.0 as usize];
            pointed_map_surjective(sizes[*d], mm)
        })
        .collect();
    let weq: Vec<MorId> = cat.morphisms().filter(|&m| cat.is_iso(m)).collect();
    let zero = cat.zero_object().unwrap();
    let big = WaldStructure::new(cat, weq, fib, zero);

    // inclusion functor: P1 -> P1, P2 -> P2
    let obj_map = vec![ObjId(0), ObjId(1)];
    let mor_map = small
        .cat
        .morphisms()
        .map(|m| {
            let name = &small.cat.mors[m.0 as usize].name;
            let (sd, digits) = name[1..].split_once(':').unwrap();
            let s: usize = sd[0..1].parse().unwrap();
            let d: usize = sd[1..2].parse().unwrap();
            let mut map = vec![0usize];
            if digits != "_" {
                map.extend(digits.chars().map(|c| c.to_digit(10).unwrap() as usize));
            }
            index[&(s - 1, d - 1, map)]
        })
        .collect();
    let functor = FinFunctor { obj_map, mor_map };
    (small, big, functor)
}

/// Deletes the 2-point set from pointed sets <= 3 and keeps fib = all maps:
/// the fiber of the map collapsing one non-basepoint element is missing.
pub fn missing_pullback_control() -> WaldStructure {
    let sizes = [1usize, 3];
    let objects = vec!["P1".to_string(), "P3".to_string()];
    let mut morphisms = Vec::new();
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (si, &s) in sizes.iter().enumerate() {
        for (di, &d) in sizes.iter().enumerate() {
            for m in pointed_maps(s, d) {
                morphisms.push(MorData {
                    name: map_name("p", s, d, &m),
                    src: ObjId(si as u32),
                    dst: ObjId(di as u32),
                });
                maps.push((si, di, m));
            }
        }
    }
    let mut index = std::collections::HashMap::new();
    for (i, k) in maps.iter().enumerate() {
        index.insert(k.clone(), MorId(i as u32));
    }
    let identities = (0..2).map(|si| index[&(si, si, (0..sizes[si]).collect::<Vec<_>>())]).collect();
    let mut composites = Vec::new();
    for (gi, (gs, gd, gm)) in maps.iter().enumerate() {
        for (fi, (fs, fd, fm)) in maps.iter().enumerate() {
            if fd != gs {
                continue;
            }
            let comp: Vec<usize> = fm.iter().map(|&x| gm[x]).collect();
            composites.push((MorId(gi as u32), MorId(fi as u32), index[&(*fs, *gd, comp)]));
        }
    }
    let cat = FinCat::from_raw_unchecked(RawCategory { objects, morphisms, identities, composites });
    let fib: Vec<MorId> = cat.morphisms().collect();
    let weq: Vec<MorId> = cat.morphisms().filter(|&m| cat.is_iso(m)).collect();
    let zero = cat.zero_object().unwrap();
    WaldStructure::new(cat, weq, fib, zero)
}

/// Four objects Z, A, B, F with an idempotent pair (v, w) over a fibration
/// p: A -> B whose fiber is F; v restricts to the zero map on the fiber while
/// the induced map on pullbacks is the zero endomorphism of F, which is not a
/// weak equivalence. Every axiom holds except the gluing axiom.
pub fn weq2_violation_control() -> WaldStructure {
    let mut b = CatBuilder::new();
    let z = b.object("Z");
    let a = b.object("A");
    let bb = b.object("B");
    let ff = b.object("F");
    let id_z = b.identity(z, "id_Z");
    let id_a = b.identity(a, "id_A");
    let id_b = b.identity(bb, "id_B");
    let id_f = b.identity(ff, "id_F");
    let objs = [z, a, bb, ff];
    let mut zmap = std::collections::HashMap::new();
    zmap.insert((z, z), id_z);
    for &x in &objs {
        for &y in &objs {
            if (x, y) != (z, z) {
                let m = b.morphism(&format!("z_{}{}", x.0, y.0), x, y);
                zmap.insert((x, y), m);
            }
        }
    }
    let p = b.morphism("p", a, bb);
    let v = b.morphism("v", a, a);
    let w = b.morphism("w", bb, bb);
    let r = b.morphism("r", a, bb); // r = w∘p = p∘v
    let incl = b.morphism("i", ff, a);

    let is_zero = |m: MorId| zmap.values().any(|&x| x == m) && m != id_z;
    let nonzero = [p, v, w, r, incl];
    let ids = [id_z, id_a, id_b, id_f];
    let all: Vec<MorId> = {
        let mut out: Vec<MorId> = ids.to_vec();
        out.extend(zmap.values().copied().filter(|&m| m != id_z));
        out.extend(nonzero);
        out.sort();
        out
    };
    let src_of = |m: MorId| -> ObjId {
        if m == p || m == r {
            a
        } else if m == v {
            a
        } else if m == w {
            bb
        } else if m == incl {
            ff
        } else if m == id_z {
            z
        } else if m == id_a {
            a
        } else if m == id_b {
            bb
        } else if m == id_f {
            ff
        } else {
            *zmap.iter().find(|(_, &x)| x == m).map(|((s, _), _)| s).unwrap()
        }
    };
    let dst_of = |m: MorId| -> ObjId {
        if m == p || m == r || m == w {
            bb
        } else if m == v {
            a
        } else if m == incl {
            a
        } else if m == id_z {
            z
        } else if m == id_a {
            a
        } else if m == id_b {
            bb
        } else if m == id_f {
            ff
        } else {
            *zmap.iter().find(|(_, &x)| x == m).map(|((_, d), _)| d).unwrap()
        }
    };
    let compose_pair = |g: MorId, f: MorId| -> MorId {
        // table for the non-identity, composable pairs
        if is_zero(g) || is_zero(f) {
            return zmap[&(src_of(f), dst_of(g))];
        }
        match (g, f) {
            (gg, ff2) if gg == v && ff2 == v => v,
            (gg, ff2) if gg == w && ff2 == w => w,
            (gg, ff2) if gg == p && ff2 == v => r,
            (gg, ff2) if gg == w && ff2 == p => r,
            (gg, ff2) if gg == w && ff2 == r => r,
            (gg, ff2) if gg == r && ff2 == v => r,
            (gg, ff2) if gg == p && ff2 == incl => zmap[&(ff, bb)],
            (gg, ff2) if gg == r && ff2 == incl => zmap[&(ff, bb)],
            (gg, ff2) if gg == v && ff2 == incl => zmap[&(ff, a)],
            _ => unreachable!("unexpected pair"),
        }
    };
    for &g in &all {
        for &f in &all {
            if dst_of(f) != src_of(g) {
                continue;
            }
            if ids.contains(&g) || ids.contains(&f) {
                continue;
            }
            b.composite(g, f, compose_pair(g, f));
        }
    }
    let cat = b.build().expect("weq2 control is a category");
    let fib = vec![id_z, id_a, id_b, id_f, zmap[&(a, z)], zmap[&(bb, z)], zmap[&(ff, z)], p];
    let weq = vec![id_z, id_a, id_b, id_f, v, w];
    WaldStructure::new(cat, weq, fib, z)
}
