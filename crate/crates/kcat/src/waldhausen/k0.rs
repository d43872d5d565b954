//! K0 computed two independent ways: an algebraic presentation on objects
//! with one relation per weak equivalence and per fibration, and the
//! fundamental group of the 2-skeleton of the K-space.

use super::{k_space, WaldError, WaldStructure};
use crate::abelian::AbGroupPresentation;
use crate::fincat::{FinFunctor, MorId};
use crate::sset::{pi1_presentation, SsetError};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum K0Error {
    #[error(transparent)]
    Closure(#[from] WaldError),
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// Generators are the objects; relations: the zero object vanishes, weakly
/// equivalent objects agree, and [y] = [x] + [fiber] for every fibration
/// y -> x. One relation per fibration; redundancy is harmless.
pub fn k0_presentation(w: &WaldStructure) -> Result<AbGroupPresentation, K0Error> {
    let cat = &w.cat;
    let mut pres = AbGroupPresentation::new(cat.object_names.clone());
    pres.add_sparse_relation(&[(w.zero.0 as usize, 1)]);
    for &m in w.weq.members() {
        let (x, y) = (cat.src(m), cat.dst(m));
        if x != y {
            pres.add_sparse_relation(&[(x.0 as usize, 1), (y.0 as usize, -1)]);
        }
    }
    for &f in w.fib.members() {
        let y = cat.src(f);
        let x = cat.dst(f);
        let fiber = w.fiber(f).ok_or_else(|| {
            WaldError::ClosureEscape(format!("fiber of fibration {} missing", f))
        })?;
        // [y] = [x] + [fiber]
        pres.add_sparse_relation(&[
            (y.0 as usize, 1),
            (x.0 as usize, -1),
            (fiber.apex.0 as usize, -1),
        ]);
    }
    Ok(pres)
}

/// π1-abelianization of the 2-truncated K-space. The edges of that space are
/// the weak equivalences of the base; relators come from composable pairs in
/// the weak-equivalence ladder category over fibrations.
///
/// When every weak equivalence is an isomorphism the relator lattice is
/// generated without materializing the ladder category: ladder pairs through
/// a fibration b are parametrized freely by isomorphism pairs, so each
/// (b, v)-family contributes its anchor relator plus iso-difference columns,
/// which span the same sublattice as the full simplex sweep.
pub fn k0_via_pi1(w: &WaldStructure) -> Result<AbGroupPresentation, K0Error> {
    let all_weq_iso = w.weq.members().iter().all(|&m| w.cat.is_iso(m));
    if all_weq_iso {
        k0_via_pi1_iso_family(w)
    } else {
        k0_via_pi1_direct(w)
    }
}

fn k0_via_pi1_direct(w: &WaldStructure) -> Result<AbGroupPresentation, K0Error> {
    let ks = k_space(w, 2)?;
    let pres = pi1_presentation(&ks, 0, false)?;
    Ok(pres.abelianized())
}

fn k0_via_pi1_iso_family(w: &WaldStructure) -> Result<AbGroupPresentation, K0Error> {
    let cat = &w.cat;
    let id_zero = cat.identity(w.zero);
    // generators: weak equivalences except the degenerate identity at zero
    let mut gen_index: HashMap<MorId, usize> = HashMap::new();
    let mut names = Vec::new();
    for &m in w.weq.members() {
        if m != id_zero {
            gen_index.insert(m, names.len());
            names.push(cat.mors[m.0 as usize].name.clone());
        }
    }
    let coeff = |col: &mut Vec<(usize, i64)>, m: MorId, c: i64| {
        if let Some(&g) = gen_index.get(&m) {
            col.push((g, c));
        }
    };

    let mut columns: HashSet<Vec<(usize, i64)>> = HashSet::new();
    let mut push_col = |terms: Vec<(usize, i64)>| {
        let mut merged: HashMap<usize, i64> = HashMap::new();
        for (g, c) in terms {
            *merged.entry(g).or_insert(0) += c;
        }
        let mut v: Vec<(usize, i64)> = merged.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        if !v.is_empty() {
            columns.insert(v);
        }
    };

    // iso-difference relators: all weqs into a fixed object agree
    for y in cat.objects() {
        let id_y = cat.identity(y);
        for &u in w.weq.members() {
            if cat.dst(u) == y && u != id_y {
                let mut col = Vec::new();
                coeff(&mut col, u, 1);
                coeff(&mut col, id_y, -1);
                push_col(col);
            }
        }
    }

    // anchor relators per fibration b and iso pair v out of its endpoints
    for &pb in w.fib.members() {
        let b2 = cat.src(pb);
        let b1 = cat.dst(pb);
        let fiber_b = w
            .fiber(pb)
            .ok_or_else(|| WaldError::ClosureEscape(format!("fiber of {} missing", pb)))?;
        for &v2 in w.weq.members() {
            if cat.src(v2) != b2 {
                continue;
            }
            for &v1 in w.weq.members() {
                if cat.src(v1) != b1 {
                    continue;
                }
                // target fibration pc = v1 ∘ pb ∘ v2⁻¹
                let inv_v2 = cat.inverse(v2).expect("weq is iso on this path");
                let pc = cat.compose(cat.compose(v1, pb), inv_v2);
                if !w.fib.contains(pc) {
                    return Err(WaldError::ClosureEscape(format!(
                        "conjugated fibration {} escapes fib",
                        pc
                    ))
                    .into());
                }
                let fiber_c = w
                    .fiber(pc)
                    .ok_or_else(|| WaldError::ClosureEscape(format!("fiber of {} missing", pc)))?;
                // induced map between fibers: unique h with incl_c ∘ h = v2 ∘ incl_b
                let want = cat.compose(v2, fiber_b.proj1);
                let h = cat
                    .hom(fiber_b.apex, fiber_c.apex)
                    .iter()
                    .copied()
                    .find(|&h| cat.compose(fiber_c.proj1, h) == want)
                    .ok_or_else(|| {
                        WaldError::ClosureEscape("no induced map between fibers".into())
                    })?;
                if !w.weq.contains(h) {
                    return Err(WaldError::ClosureEscape(format!(
                        "induced fiber map {} is not a weak equivalence",
                        h
                    ))
                    .into());
                }
                // φ(id_b1) + φ(h) - φ(v2) = 0
                let mut col = Vec::new();
                coeff(&mut col, cat.identity(b1), 1);
                coeff(&mut col, h, 1);
                coeff(&mut col, v2, -1);
                push_col(col);
            }
        }
    }

    let mut pres = AbGroupPresentation::new(names);
    let mut sorted: Vec<Vec<(usize, i64)>> = columns.into_iter().collect();
    sorted.sort();
    for col in sorted {
        let mut v = vec![BigInt::zero(); pres.generators.len()];
        for (g, c) in col {
            v[g] += BigInt::from(c);
        }
        pres.relations.push(v);
    }
    Ok(pres)
}

/// The map on K0 presentations induced by a functor: object generators map
/// along the object assignment.
pub fn induced_k0_map(f: &FinFunctor, target_generators: usize) -> crate::abelian::AbMap {
    let images = f
        .obj_map
        .iter()
        .map(|&o| {
            let mut v = vec![BigInt::zero(); target_generators];
            v[o.0 as usize] += 1;
            v
        })
        .collect();
    crate::abelian::AbMap::from_generator_images(images)
}
