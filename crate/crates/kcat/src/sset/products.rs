//! Products, fiber products, function complexes and the homotopy fiber
//! product formula (X×Y) ×_{Z×Z} Z^{Δ¹}, all computed through full simplex
//! sets and re-normalized to nondegenerate storage.

use super::{DegSimplex, FinSSet, SMap, SsetError};
use std::collections::HashMap;

type Pair = (DegSimplex, DegSimplex);

/// Levelwise product with projections and the pair normal-form tables.
pub struct Product {
    pub sset: FinSSet,
    pub proj1: SMap,
    pub proj2: SMap,
    pub norm: Vec<HashMap<Pair, DegSimplex>>,
    pub pairs_by_idx: Vec<Vec<Pair>>,
}

pub fn product(x: &FinSSet, y: &FinSSet, trunc: usize) -> Product {
    assert!(
        trunc <= x.trunc && trunc <= y.trunc,
        "product truncation exceeds factor truncations"
    );
    product_unchecked(x, y, trunc)
}

/// Product without the truncation guard, for factors known to have no
/// nondegenerate simplices above their truncation (standard simplices).
fn product_unchecked(x: &FinSSet, y: &FinSSet, trunc: usize) -> Product {
    let (sset, norm) = FinSSet::from_levels(
        trunc,
        |d| {
            let mut out = Vec::new();
            for a in x.all_simplices(d) {
                for b in y.all_simplices(d) {
                    out.push((a.clone(), b));
                }
            }
            out
        },
        |_, i, (a, b): &Pair| (x.face_of(i, a), y.face_of(i, b)),
        |_, i, (a, b): &Pair| (a.degenerate(i), b.degenerate(i)),
        |_, (a, b)| format!("({:?}@{};{:?}@{})", a.word, a.base, b.word, b.base),
    );
    let pairs_by_idx = invert_norm(&sset, &norm);
    let proj1 = SMap {
        images: pairs_by_idx
            .iter()
            .map(|lvl| lvl.iter().map(|(a, _)| a.clone()).collect())
            .collect(),
    };
    let proj2 = SMap {
        images: pairs_by_idx
            .iter()
            .map(|lvl| lvl.iter().map(|(_, b)| b.clone()).collect())
            .collect(),
    };
    Product { sset, proj1, proj2, norm, pairs_by_idx }
}

fn invert_norm<T: Clone>(sset: &FinSSet, norm: &[HashMap<T, DegSimplex>]) -> Vec<Vec<T>>
where
    T: std::hash::Hash + Eq,
{
    let mut out: Vec<Vec<Option<T>>> =
        (0..=sset.trunc).map(|d| vec![None; sset.n_nondeg(d)]).collect();
    for (d, table) in norm.iter().enumerate() {
        for (t, ds) in table {
            if !ds.is_degenerate() && ds.base_dim == d {
                out[d][ds.base] = Some(t.clone());
            }
        }
    }
    out.into_iter()
        .map(|lvl| lvl.into_iter().map(|o| o.expect("normal table covers nondegenerates")).collect())
        .collect()
}

/// The map (f, g): W -> X×Y determined by its components.
pub fn pair_into_product(prod: &Product, f: &SMap, g: &SMap) -> SMap {
    let images = f
        .images
        .iter()
        .zip(&g.images)
        .enumerate()
        .map(|(d, (fl, gl))| {
            fl.iter()
                .zip(gl)
                .map(|(a, b)| prod.norm[d][&(a.clone(), b.clone())].clone())
                .collect()
        })
        .collect();
    SMap { images }
}

/// Levelwise equalizer of f: X -> Z and g: Y -> Z inside X×Y.
pub struct FiberProduct {
    pub sset: FinSSet,
    pub to_first: SMap,
    pub to_second: SMap,
    pub norm: Vec<HashMap<Pair, DegSimplex>>,
    pub pairs_by_idx: Vec<Vec<Pair>>,
}

pub fn fiber_product(
    x: &FinSSet,
    y: &FinSSet,
    f: &SMap,
    g: &SMap,
    trunc: usize,
) -> FiberProduct {
    assert!(trunc <= x.trunc && trunc <= y.trunc);
    let (sset, norm) = FinSSet::from_levels(
        trunc,
        |d| {
            let mut out = Vec::new();
            for a in x.all_simplices(d) {
                let fa = f.apply(&a);
                for b in y.all_simplices(d) {
                    if fa == g.apply(&b) {
                        out.push((a.clone(), b));
                    }
                }
            }
            out
        },
        |_, i, (a, b): &Pair| (x.face_of(i, a), y.face_of(i, b)),
        |_, i, (a, b): &Pair| (a.degenerate(i), b.degenerate(i)),
        |_, (a, b)| format!("({:?}@{};{:?}@{})", a.word, a.base, b.word, b.base),
    );
    let pairs_by_idx = invert_norm(&sset, &norm);
    let to_first = SMap {
        images: pairs_by_idx
            .iter()
            .map(|lvl| lvl.iter().map(|(a, _)| a.clone()).collect())
            .collect(),
    };
    let to_second = SMap {
        images: pairs_by_idx
            .iter()
            .map(|lvl| lvl.iter().map(|(_, b)| b.clone()).collect())
            .collect(),
    };
    FiberProduct { sset, to_first, to_second, norm, pairs_by_idx }
}

/// An n-simplex of Hom(A, X): the value table over the nondegenerate
/// simplices of A×Δⁿ, flattened in (dim, index) order.
type Table = Vec<DegSimplex>;

pub struct FunctionComplex {
    pub sset: FinSSet,
    /// product A×Δⁿ per output dimension n
    pub products: Vec<Product>,
    /// value table behind each nondegenerate n-simplex
    pub tables_by_idx: Vec<Vec<Table>>,
    pub norm: Vec<HashMap<Table, DegSimplex>>,
    /// flat offsets: offset[n][dim] = start of that dimension in the table
    offsets: Vec<Vec<usize>>,
    delta_identity: Vec<DegSimplex>,
}

fn flat_offsets(p: &FinSSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(p.trunc + 2);
    let mut acc = 0;
    for d in 0..=p.trunc {
        out.push(acc);
        acc += p.n_nondeg(d);
    }
    out.push(acc);
    out
}

fn apply_table(offsets: &[usize], table: &[DegSimplex], ds: &DegSimplex) -> DegSimplex {
    let mut img = table[offsets[ds.base_dim] + ds.base].clone();
    for &j in ds.word.iter().rev() {
        img = img.degenerate(j);
    }
    img
}

/// All simplicial maps P -> X, by backtracking over nondegenerate simplices
/// of P; edges first so vertex values are forced early.
fn enumerate_maps(p: &FinSSet, x: &FinSSet) -> Vec<Table> {
    let offsets = flat_offsets(p);
    let total: usize = (0..=p.trunc).map(|d| p.n_nondeg(d)).sum();
    // processing order: edges, then vertices not covered, then higher dims
    let mut order: Vec<(usize, usize)> = Vec::new();
    for idx in 0..p.n_nondeg(1) {
        order.push((1, idx));
    }
    for idx in 0..p.n_nondeg(0) {
        order.push((0, idx));
    }
    for d in 2..=p.trunc {
        for idx in 0..p.n_nondeg(d) {
            order.push((d, idx));
        }
    }

    let candidates: Vec<Vec<DegSimplex>> = (0..=p.trunc).map(|d| x.all_simplices(d)).collect();
    let mut out = Vec::new();
    let mut table: Vec<Option<DegSimplex>> = vec![None; total];

    fn rec(
        p: &FinSSet,
        x: &FinSSet,
        order: &[(usize, usize)],
        pos: usize,
        offsets: &[usize],
        candidates: &[Vec<DegSimplex>],
        table: &mut Vec<Option<DegSimplex>>,
        out: &mut Vec<Table>,
    ) {
        if pos == order.len() {
            out.push(table.iter().map(|o| o.clone().unwrap()).collect());
            return;
        }
        let (d, idx) = order[pos];
        let slot = offsets[d] + idx;
        if table[slot].is_some() {
            rec(p, x, order, pos + 1, offsets, candidates, table, out);
            return;
        }
        let s = DegSimplex::nondeg(d, idx);
        'cand: for cand in &candidates[d] {
            // candidate must be compatible with every already-assigned face
            let mut forced: Vec<(usize, DegSimplex)> = Vec::new();
            if d >= 1 {
                for i in 0..=d {
                    let pf = p.face_of(i, &s);
                    let want = x.face_of(i, cand);
                    let base_slot = offsets[pf.base_dim] + pf.base;
                    match &table[base_slot] {
                        Some(v) => {
                            let mut got = v.clone();
                            for &j in pf.word.iter().rev() {
                                got = got.degenerate(j);
                            }
                            if got != want {
                                continue 'cand;
                            }
                        }
                        None => {
                            // the face is degenerate-of-unassigned only when the word
                            // is nonempty; a value is forced only for word-free refs
                            if pf.word.is_empty() {
                                forced.push((base_slot, want));
                            } else {
                                // cannot invert a degeneracy in general: defer by
                                // requiring the word-free case (true for edges)
                                continue 'cand;
                            }
                        }
                    }
                }
            }
            // apply forced assignments, checking consistency among themselves
            let mut applied = Vec::new();
            let mut ok = true;
            for (bslot, v) in forced {
                match &table[bslot] {
                    Some(existing) if *existing != v => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        table[bslot] = Some(v);
                        applied.push(bslot);
                    }
                }
            }
            if ok {
                table[slot] = Some(cand.clone());
                rec(p, x, order, pos + 1, offsets, candidates, table, out);
                table[slot] = None;
            }
            for bslot in applied {
                table[bslot] = None;
            }
        }
    }
    rec(p, x, &order, 0, &offsets, &candidates, &mut table, &mut out);
    out
}

/// Degenerate faces whose base is unassigned force a retry ordering problem;
/// edges-first ordering avoids it because a face of an edge is a vertex and
/// faces of higher simplices only reference dimensions already processed.
fn operator_map(
    from: &FinSSet,
    from_norm: &[HashMap<Vec<usize>, DegSimplex>],
    to_norm: &[HashMap<Vec<usize>, DegSimplex>],
    verts: impl Fn(usize) -> usize,
) -> SMap {
    let by_idx = invert_norm(from, from_norm);
    SMap {
        images: by_idx
            .iter()
            .enumerate()
            .map(|(d, lvl)| {
                lvl.iter()
                    .map(|m| {
                        let mapped: Vec<usize> = m.iter().map(|&v| verts(v)).collect();
                        to_norm[d][&mapped].clone()
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn function_complex(
    a: &FinSSet,
    x: &FinSSet,
    out_trunc: usize,
) -> Result<FunctionComplex, SsetError> {
    let a_dim = a.trunc;
    if x.trunc < a_dim + out_trunc {
        return Err(SsetError::TruncTooLow { needed: a_dim + out_trunc, have: x.trunc });
    }

    // standard simplices and their normal tables, up to Δ^{out_trunc+1};
    // all built at the same truncation so value tables across levels align
    let uniform = a_dim + out_trunc;
    let mut deltas: Vec<(FinSSet, Vec<HashMap<Vec<usize>, DegSimplex>>)> = Vec::new();
    for n in 0..=out_trunc + 1 {
        let (ss, norm) = FinSSet::from_levels(
            uniform,
            |d| super::monotone_maps(d, n),
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.remove(i);
                u
            },
            |_, i, t: &Vec<usize>| {
                let mut u = t.clone();
                u.insert(i, t[i]);
                u
            },
            |_, t| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""),
        );
        deltas.push((ss, norm));
    }

    let products: Vec<Product> =
        (0..=out_trunc).map(|n| product_unchecked(a, &deltas[n].0, uniform)).collect();
    let delta_identity: Vec<DegSimplex> =
        (0..=out_trunc).map(|n| deltas[n].1[n][&(0..=n).collect::<Vec<usize>>()].clone()).collect();
    let offsets: Vec<Vec<usize>> = products.iter().map(|p| flat_offsets(&p.sset)).collect();

    // tables per level
    let levels: Vec<Vec<Table>> =
        (0..=out_trunc).map(|n| enumerate_maps(&products[n].sset, x)).collect();

    // face: precompose with id × δ_i; degeneracy: id × σ_i
    let face_tbl = |n: usize, i: usize, t: &Table| -> Table {
        // map P_{n-1} -> P_n on pairs, then evaluate
        let pm = &products[n - 1];
        let pn = &products[n];
        let delta_i = operator_map(&deltas[n - 1].0, &deltas[n - 1].1, &deltas[n].1, |v| {
            if v >= i {
                v + 1
            } else {
                v
            }
        });
        let mut out = Vec::new();
        for d in 0..=pm.sset.trunc {
            for (aa, bb) in &pm.pairs_by_idx[d] {
                let lifted = (aa.clone(), delta_i.apply(bb));
                let ds = pn.norm[d][&lifted].clone();
                out.push(apply_table(&offsets[n], t, &ds));
            }
        }
        out
    };
    let degen_tbl = |n: usize, i: usize, t: &Table| -> Table {
        let pm = &products[n + 1];
        let pn = &products[n];
        let sigma_i = operator_map(&deltas[n + 1].0, &deltas[n + 1].1, &deltas[n].1, |v| {
            if v > i {
                v - 1
            } else {
                v
            }
        });
        let mut out = Vec::new();
        for d in 0..=pm.sset.trunc {
            for (aa, bb) in &pm.pairs_by_idx[d] {
                let lowered = (aa.clone(), sigma_i.apply(bb));
                let ds = pn.norm[d][&lowered].clone();
                out.push(apply_table(&offsets[n], t, &ds));
            }
        }
        out
    };

    let (sset, norm) = FinSSet::from_levels(
        out_trunc,
        |d| levels[d].clone(),
        |d, i, t: &Table| face_tbl(d, i, t),
        |d, i, t: &Table| degen_tbl(d, i, t),
        |d, _| format!("map@{}", d),
    );
    let tables_by_idx = invert_norm(&sset, &norm);
    Ok(FunctionComplex { sset, products, tables_by_idx, norm, offsets, delta_identity })
}

impl FunctionComplex {
    /// Value of the table behind a nondegenerate n-simplex of the function
    /// complex at a simplex of A×Δⁿ.
    pub fn evaluate(&self, n: usize, table_idx: usize, at: &DegSimplex) -> DegSimplex {
        apply_table(&self.offsets[n], &self.tables_by_idx[n][table_idx], at)
    }

    /// The identity simplex of Δⁿ as stored in the n-th product.
    pub fn delta_identity(&self, n: usize) -> &DegSimplex {
        &self.delta_identity[n]
    }
}

/// Z^{Δ¹} truncated one below Z, with the two evaluation maps to Z.
pub fn path_complex(z: &FinSSet, out_trunc: usize) -> Result<(FunctionComplex, SMap, SMap), SsetError> {
    if z.trunc < out_trunc + 1 {
        return Err(SsetError::TruncTooLow { needed: out_trunc + 1, have: z.trunc });
    }
    let a = FinSSet::delta(1, 1);
    let fc = function_complex(&a, z, out_trunc)?;
    let ev = |vertex: usize| -> SMap {
        let images = (0..=fc.sset.trunc)
            .map(|n| {
                (0..fc.sset.n_nondeg(n))
                    .map(|idx| {
                        // evaluate at (vertex degenerated to dim n, identity of Δⁿ)
                        let mut va = DegSimplex::nondeg(0, vertex);
                        for _ in 0..n {
                            va = va.degenerate(0);
                        }
                        let pair = (va, fc.delta_identity(n).clone());
                        let ds = fc.products[n].norm[n][&pair].clone();
                        fc.evaluate(n, idx, &ds)
                    })
                    .collect()
            })
            .collect();
        SMap { images }
    };
    let ev0 = ev(0);
    let ev1 = ev(1);
    Ok((fc, ev0, ev1))
}

/// The homotopy fiber product (X×Y) ×_{Z×Z} Z^{Δ¹} with its natural maps.
pub struct Hfp {
    pub sset: FinSSet,
    pub to_x: SMap,
    pub to_y: SMap,
    pub prod_xy: Product,
    pub path_z: FunctionComplex,
    pub prod_zz: Product,
    pub inner: FiberProduct,
}

pub fn homotopy_fiber_product(
    x: &FinSSet,
    y: &FinSSet,
    z: &FinSSet,
    f: &SMap,
    g: &SMap,
    out_trunc: usize,
) -> Result<Hfp, SsetError> {
    let prod_xy = product(x, y, out_trunc.min(x.trunc).min(y.trunc));
    let prod_zz = product(z, z, out_trunc);
    let (path_z, ev0, ev1) = path_complex(z, out_trunc)?;
    let fx = f.compose(&prod_xy.proj1);
    let gy = g.compose(&prod_xy.proj2);
    let a_map = pair_into_product(&prod_zz, &fx, &gy);
    let b_map = pair_into_product(&prod_zz, &ev0, &ev1);
    let inner = fiber_product(&prod_xy.sset, &path_z.sset, &a_map, &b_map, out_trunc);
    let to_x = prod_xy.proj1.compose(&inner.to_first);
    let to_y = prod_xy.proj2.compose(&inner.to_first);
    Ok(Hfp { sset: inner.sset.clone(), to_x, to_y, prod_xy, path_z, prod_zz, inner })
}
