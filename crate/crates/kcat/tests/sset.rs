use kcat::abelian::CanonicalAbGroup;
use kcat::fincat::{FinFunctor, ObjId};
use kcat::instances;
use kcat::sset::{
    diag, fiber_product, homology, homotopy_fiber_product, invariant_equiv, nerve,
    nerve_functor_map, path_complex, pi1_abelianized, pi1_presentation, product, BiSSet,
    DegSimplex, FinSSet, InvariantVerdict, SMap, SsetError,
};

fn delta(n: usize, trunc: usize) -> FinSSet {
    FinSSet::delta(n, trunc)
}

#[test]
fn standard_simplices_validate() {
    for n in 0..=3 {
        for trunc in 0..=3 {
            assert_eq!(delta(n, trunc).validate(), Ok(()));
            assert_eq!(FinSSet::boundary_delta(n, trunc).validate(), Ok(()));
        }
    }
    assert_eq!(delta(2, 3).counts(), vec![3, 3, 1, 0]);
    assert_eq!(FinSSet::boundary_delta(2, 2).counts(), vec![3, 3, 0]);
}

#[test]
fn nerve_counts() {
    let (n_arrow, _) = nerve(&instances::walking_arrow(), 2);
    assert_eq!(n_arrow.counts(), vec![2, 1, 0]);
    assert_eq!(n_arrow.validate(), Ok(()));

    let (n_z2, _) = nerve(&instances::cyclic_group_category(2), 2);
    assert_eq!(n_z2.counts(), vec![1, 1, 1]);
    assert_eq!(n_z2.validate(), Ok(()));

    // discrete three-object category: nothing above the vertices
    let mut b = kcat::fincat::CatBuilder::new();
    for name in ["x", "y", "z"] {
        let o = b.object(name);
        b.identity(o, &format!("id_{}", name));
    }
    let discrete = b.build().unwrap();
    let (n_disc, _) = nerve(&discrete, 2);
    assert_eq!(n_disc.counts(), vec![3, 0, 0]);
}

#[test]
fn nerve_is_functorial() {
    let c = instances::walking_arrow();
    let (nc, norm_c) = nerve(&c, 2);
    let id = FinFunctor::identity(&c);
    let map = nerve_functor_map(&id, &c, &nc, &norm_c, &norm_c);
    assert_eq!(map.validate(&nc, &nc), Ok(()));
    let composed = map.compose(&map);
    assert_eq!(composed, SMap::identity(&nc));
}

#[test]
fn product_counts_delta1_delta1() {
    let d1 = delta(1, 2);
    let p = product(&d1, &d1, 2);
    assert_eq!(p.sset.counts(), vec![4, 5, 2]);
    assert_eq!(p.sset.validate(), Ok(()));
    assert_eq!(p.proj1.validate(&p.sset, &d1), Ok(()));
    assert_eq!(p.proj2.validate(&p.sset, &d1), Ok(()));
}

#[test]
fn product_with_point_is_identity_shape() {
    let y = FinSSet::boundary_delta(2, 2);
    let pt = FinSSet::point(2);
    let p = product(&pt, &y, 2);
    assert_eq!(p.sset.counts(), y.counts());
}

#[test]
fn fiber_product_over_point_is_product() {
    let d1 = delta(1, 2);
    let pt = FinSSet::point(2);
    let to_pt = |x: &FinSSet| SMap {
        images: (0..=x.trunc)
            .map(|d| {
                (0..x.n_nondeg(d))
                    .map(|_| {
                        let mut ds = DegSimplex::nondeg(0, 0);
                        for _ in 0..d {
                            ds = ds.degenerate(0);
                        }
                        ds
                    })
                    .collect()
            })
            .collect(),
    };
    let f = to_pt(&d1);
    let fp = fiber_product(&d1, &d1, &f, &f, 2);
    let p = product(&d1, &d1, 2);
    assert_eq!(fp.sset.counts(), p.sset.counts());
}

#[test]
fn path_complex_counts() {
    // Z^{Δ¹} of a point is a point
    let pt = FinSSet::point(2);
    let (pc, _, _) = path_complex(&pt, 1).unwrap();
    assert_eq!(pc.sset.counts(), vec![1, 0]);

    // path complex of Δ¹: three vertices (00, 01, 11), a path of two edges
    let d1 = delta(1, 2);
    let (pc, ev0, ev1) = path_complex(&d1, 1).unwrap();
    assert_eq!(pc.sset.n_nondeg(0), 3);
    assert_eq!(pc.sset.n_nondeg(1), 3);
    assert_eq!(pc.sset.validate(), Ok(()));
    assert_eq!(ev0.validate(&pc.sset, &d1), Ok(()));
    assert_eq!(ev1.validate(&pc.sset, &d1), Ok(()));

    // nerve of BZ/2: vertices of the path complex are the group elements
    let (n_z2, _) = nerve(&instances::cyclic_group_category(2), 3);
    let (pc, _, _) = path_complex(&n_z2, 2).unwrap();
    assert_eq!(pc.sset.n_nondeg(0), 2);
}

#[test]
fn path_complex_trunc_guard() {
    let d1 = delta(1, 1);
    match path_complex(&d1, 1) {
        Err(SsetError::TruncTooLow { needed: 2, have: 1 }) => {}
        other => panic!("expected TruncTooLow, got {:?}", other.map(|_| ())),
    }
}

fn const_vertex_map(x: &FinSSet, z: &FinSSet, v: usize) -> SMap {
    SMap {
        images: (0..=x.trunc)
            .map(|d| {
                (0..x.n_nondeg(d))
                    .map(|_| {
                        let mut ds = DegSimplex::nondeg(0, v);
                        for _ in 0..d {
                            ds = ds.degenerate(0);
                        }
                        ds
                    })
                    .collect()
            })
            .collect(),
    }
    .into_checked(x, z)
}

trait IntoChecked {
    fn into_checked(self, src: &FinSSet, tgt: &FinSSet) -> SMap;
}
impl IntoChecked for SMap {
    fn into_checked(self, src: &FinSSet, tgt: &FinSSet) -> SMap {
        assert_eq!(self.validate(src, tgt), Ok(()));
        self
    }
}

#[test]
fn hfp_over_point_is_product() {
    let x = delta(1, 2);
    let y = delta(1, 2);
    let z = FinSSet::point(3);
    let f = const_vertex_map(&x, &z, 0);
    let g = const_vertex_map(&y, &z, 0);
    let hfp = homotopy_fiber_product(&x, &y, &z, &f, &g, 2).unwrap();
    let p = product(&x, &y, 2);
    // over the point the path factor is constant: same simplex counts
    assert_eq!(hfp.sset.counts(), p.sset.counts());
    assert_eq!(hfp.sset.validate(), Ok(()));
}

#[test]
fn hfp_loops_on_bz2_has_two_components() {
    // Ω(BZ/2) at this window: two components (the two group elements)
    let (n_z2, _) = nerve(&instances::cyclic_group_category(2), 3);
    let pt = FinSSet::point(3);
    let f = const_vertex_map(&pt, &n_z2, 0);
    let hfp = homotopy_fiber_product(&pt, &pt, &n_z2, &f, &f, 2).unwrap();
    assert_eq!(hfp.sset.validate(), Ok(()));
    let (_, n) = hfp.sset.pi0();
    assert_eq!(n, 2);
}

#[test]
fn hfp_based_paths_connected() {
    // Y = Z, g = id, X = point: based path space of the connected nerve
    let (n_z2, _) = nerve(&instances::cyclic_group_category(2), 3);
    let pt = FinSSet::point(3);
    let f = const_vertex_map(&pt, &n_z2, 0);
    let g = SMap::identity(&n_z2);
    let hfp = homotopy_fiber_product(&pt, &n_z2, &n_z2, &f, &g, 2).unwrap();
    let (_, n) = hfp.sset.pi0();
    assert_eq!(n, 1);
}

#[test]
fn homology_basics() {
    // three discrete points
    let mut b = kcat::fincat::CatBuilder::new();
    for name in ["x", "y", "z"] {
        let o = b.object(name);
        b.identity(o, &format!("i{}", name));
    }
    let (three, _) = nerve(&b.build().unwrap(), 2);
    assert_eq!(homology(&three, 0).unwrap(), CanonicalAbGroup::free(3));

    // circle
    let circle = FinSSet::boundary_delta(2, 2);
    assert_eq!(homology(&circle, 0).unwrap(), CanonicalAbGroup::free(1));
    assert_eq!(homology(&circle, 1).unwrap(), CanonicalAbGroup::free(1));

    // H1 of B(Z/n) = Z/n for n = 2, 3, 4
    for n in [2u64, 3, 4] {
        let (bn, _) = nerve(&instances::cyclic_group_category(n as usize), 2);
        assert_eq!(homology(&bn, 1).unwrap(), CanonicalAbGroup::cyclic(n), "n = {}", n);
    }
}

#[test]
fn homology_trunc_guard() {
    let circle = FinSSet::boundary_delta(2, 1);
    assert!(matches!(homology(&circle, 1), Err(SsetError::TruncTooLow { .. })));
}

#[test]
fn pi1_presentations() {
    let d1 = delta(1, 2);
    let p = pi1_presentation(&d1, 0, true).unwrap();
    assert!(p.abelianized().canonical().is_trivial());

    let (bz2, _) = nerve(&instances::cyclic_group_category(2), 2);
    let p = pi1_presentation(&bz2, 0, true).unwrap();
    assert_eq!(p.abelianized().canonical(), CanonicalAbGroup::cyclic(2));

    let circle = FinSSet::boundary_delta(2, 2);
    let p = pi1_presentation(&circle, 0, true).unwrap();
    assert_eq!(p.abelianized().canonical(), CanonicalAbGroup::free(1));
    // one generator survives the spanning tree, no relators
    assert_eq!(p.generators.len(), 1);
    assert!(p.relators.is_empty());
}

#[test]
fn pi1_disconnected_guard() {
    let mut b = kcat::fincat::CatBuilder::new();
    for name in ["x", "y"] {
        let o = b.object(name);
        b.identity(o, &format!("i{}", name));
    }
    let (two, _) = nerve(&b.build().unwrap(), 2);
    assert!(matches!(pi1_presentation(&two, 0, true), Err(SsetError::Disconnected)));
    assert!(pi1_presentation(&two, 0, false).is_ok());
}

#[test]
fn pi1_abelianized_matches_h1_on_connected_complexes() {
    let complexes: Vec<FinSSet> = vec![
        FinSSet::boundary_delta(2, 2),
        nerve(&instances::cyclic_group_category(2), 2).0,
        nerve(&instances::cyclic_group_category(3), 2).0,
        nerve(&instances::cyclic_group_category(4), 2).0,
        delta(2, 2),
        nerve(&instances::pointed_sets_category(2), 2).0,
    ];
    for x in complexes {
        let (_, n) = x.pi0();
        assert_eq!(n, 1);
        let h1 = homology(&x, 1).unwrap();
        let p = pi1_abelianized(&x, 0).unwrap().canonical();
        assert_eq!(h1, p);
    }
}

#[test]
fn h0_rank_equals_pi0() {
    for x in [
        FinSSet::boundary_delta(2, 2),
        nerve(&instances::pointed_sets_category(3), 2).0,
        product(&delta(1, 2), &FinSSet::boundary_delta(2, 2), 2).sset,
    ] {
        let (_, n) = x.pi0();
        let h0 = homology(&x, 0).unwrap();
        assert_eq!(h0.free_rank, n);
        assert!(h0.invariant_factors.is_empty());
    }
}

#[test]
fn invariant_equiv_verdicts() {
    let (bz2, _) = nerve(&instances::cyclic_group_category(2), 2);
    let (bz3, _) = nerve(&instances::cyclic_group_category(3), 2);
    assert_eq!(invariant_equiv(&bz2, &bz2, 1), InvariantVerdict::Equivalent);
    match invariant_equiv(&bz2, &bz3, 1) {
        InvariantVerdict::Distinguished(witness) => assert!(witness.starts_with("H1")),
        other => panic!("expected Distinguished, got {:?}", other),
    }
    let pt = FinSSet::point(2);
    assert!(matches!(invariant_equiv(&pt, &bz2, 1), InvariantVerdict::Distinguished(_)));
    // insufficient truncation is inconclusive
    let shallow = FinSSet::point(1);
    assert!(matches!(invariant_equiv(&shallow, &shallow, 1), InvariantVerdict::Inconclusive(_)));
}

fn nerve_bisset(i: &kcat::fincat::FinCat, j: &kcat::fincat::FinCat, t: usize) -> BiSSet {
    // external product: (p, q) -> N_p(I) × N_q(J)
    let (ni, _) = nerve(i, t);
    let (nj, _) = nerve(j, t);
    let all_i: Vec<Vec<DegSimplex>> = (0..=t).map(|d| ni.all_simplices(d)).collect();
    let all_j: Vec<Vec<DegSimplex>> = (0..=t).map(|d| nj.all_simplices(d)).collect();
    let idx_i: Vec<std::collections::HashMap<DegSimplex, usize>> = all_i
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    let idx_j: Vec<std::collections::HashMap<DegSimplex, usize>> = all_j
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    let sizes: Vec<Vec<usize>> =
        (0..=t).map(|p| (0..=t).map(|q| all_i[p].len() * all_j[q].len()).collect()).collect();
    let at = |p: usize, q: usize, k: usize| -> (DegSimplex, DegSimplex) {
        let nj_count = all_j[q].len();
        (all_i[p][k / nj_count].clone(), all_j[q][k % nj_count].clone())
    };
    let key = |p: usize, q: usize, a: &DegSimplex, b: &DegSimplex| -> usize {
        idx_i[p][a] * all_j[q].len() + idx_j[q][b]
    };
    let mut hface = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut vface = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut hdeg = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut vdeg = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut labels = vec![vec![Vec::new(); t + 1]; t + 1];
    for p in 0..=t {
        for q in 0..=t {
            labels[p][q] = (0..sizes[p][q]).map(|k| format!("{},{},{}", p, q, k)).collect();
            if p >= 1 {
                hface[p][q] = (0..=p)
                    .map(|i| {
                        (0..sizes[p][q])
                            .map(|k| {
                                let (a, b) = at(p, q, k);
                                key(p - 1, q, &ni.face_of(i, &a), &b)
                            })
                            .collect()
                    })
                    .collect();
            }
            if q >= 1 {
                vface[p][q] = (0..=q)
                    .map(|i| {
                        (0..sizes[p][q])
                            .map(|k| {
                                let (a, b) = at(p, q, k);
                                key(p, q - 1, &a, &nj.face_of(i, &b))
                            })
                            .collect()
                    })
                    .collect();
            }
            if p + 1 <= t {
                hdeg[p][q] = (0..=p)
                    .map(|i| {
                        (0..sizes[p][q])
                            .map(|k| {
                                let (a, b) = at(p, q, k);
                                key(p + 1, q, &a.degenerate(i), &b)
                            })
                            .collect()
                    })
                    .collect();
            }
            if q + 1 <= t {
                vdeg[p][q] = (0..=q)
                    .map(|i| {
                        (0..sizes[p][q])
                            .map(|k| {
                                let (a, b) = at(p, q, k);
                                key(p, q + 1, &a, &b.degenerate(i))
                            })
                            .collect()
                    })
                    .collect();
            }
        }
    }
    BiSSet { trunc_p: t, trunc_q: t, sizes, hface, vface, hdeg, vdeg, labels }
}

#[test]
fn diag_of_external_nerve_product_matches_product_nerve() {
    // I = J = walking arrow: diag(N(I) ⊠ N(J)) ≅ N(I×J)
    let i = instances::walking_arrow();
    let b = nerve_bisset(&i, &i, 2);
    assert_eq!(b.validate(), Ok(()));
    let d = diag(&b, 2).unwrap();
    assert_eq!(d.validate(), Ok(()));
    let (n_prod, _) = nerve(&i.product(&i), 2);
    assert_eq!(d.counts(), n_prod.counts());
    assert_eq!(invariant_equiv(&d, &n_prod, 1), InvariantVerdict::Equivalent);
}

#[test]
fn diag_constant_direction_recovers_the_other() {
    // J trivial: diag of N(I) ⊠ N(1) is N(I)
    let i = instances::cyclic_group_category(2);
    let triv = instances::cyclic_group_category(1);
    let b = nerve_bisset(&i, &triv, 2);
    let d = diag(&b, 2).unwrap();
    let (ni, _) = nerve(&i, 2);
    assert_eq!(d.counts(), ni.counts());
}

#[test]
fn diag_bounds_check() {
    let i = instances::walking_arrow();
    let b = nerve_bisset(&i, &i, 1);
    assert!(matches!(diag(&b, 2), Err(SsetError::TruncTooLow { .. })));
}
