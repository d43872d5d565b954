use kcat::abelian::{induced_map_verdict, AbMapVerdict, CanonicalAbGroup};
use kcat::fincat::FinFunctor;
use kcat::instances;
use kcat::sset::{homology, pi1_abelianized};
use kcat::waldhausen::{
    build_sn, check_exact, check_waldhausen, factorize, goodness_proxy, induced_k0_map,
    is_cofibration, k0_presentation, k0_via_pi1, k_space, Axiom,
};

#[test]
fn pointed_sets_pass_all_axioms() {
    for size in [2, 3] {
        let w = instances::pointed_sets_waldhausen(size);
        let report = check_waldhausen(&w);
        assert!(report.ok(), "size {}: {:?}", size, report.failed_axioms());
    }
}

#[test]
fn f2_vector_spaces_pass_all_axioms() {
    let w = instances::f2_vector_spaces(2);
    let report = check_waldhausen(&w);
    assert!(report.ok(), "{:?}", report.failed_axioms());
}

#[test]
fn weq_all_variant_passes() {
    let w = instances::pointed_sets_weq_all(2);
    let report = check_waldhausen(&w);
    assert!(report.ok(), "{:?}", report.failed_axioms());
}

#[test]
fn walking_weq_waldhausen_passes() {
    let w = instances::walking_weq_waldhausen();
    assert!(kcat::fincat::check_category(&w.cat.to_raw()).unwrap().ok());
    let report = check_waldhausen(&w);
    assert!(report.ok(), "{:?}", report.verdicts);
}

#[test]
fn missing_pullback_control_fails_exactly_cof3() {
    let w = instances::missing_pullback_control();
    assert!(kcat::fincat::check_category(&w.cat.to_raw()).unwrap().ok());
    let report = check_waldhausen(&w);
    assert_eq!(report.failed_axioms(), vec![Axiom::Cof3], "{:?}", report.verdicts);
}

#[test]
fn weq2_control_fails_exactly_weq2() {
    let w = instances::weq2_violation_control();
    assert!(
        kcat::fincat::check_category(&w.cat.to_raw()).unwrap().ok(),
        "{:?}",
        kcat::fincat::check_category(&w.cat.to_raw()).unwrap().violations
    );
    let report = check_waldhausen(&w);
    assert_eq!(report.failed_axioms(), vec![Axiom::Weq2], "{:?}", report.verdicts);
}

#[test]
fn weq_missing_identity_fails_weq_closure() {
    let base = instances::pointed_sets_waldhausen(2);
    let weq: Vec<_> = base
        .weq
        .members()
        .iter()
        .copied()
        .filter(|&m| m != base.cat.identity(kcat::fincat::ObjId(1)))
        .collect();
    let w = kcat::waldhausen::WaldStructure::new(
        base.cat.clone(),
        weq,
        base.fib.members().to_vec(),
        base.zero,
    );
    let report = check_waldhausen(&w);
    let failed = report.failed_axioms();
    assert!(failed.contains(&Axiom::WeqClosure) || failed.contains(&Axiom::Weq1), "{:?}", failed);
}

#[test]
fn cofibrations_in_pointed_sets() {
    let w = instances::pointed_sets_waldhausen(3);
    // trivial fibrations are isomorphisms here, so everything lifts
    for f in w.cat.morphisms() {
        assert!(is_cofibration(&w, f));
    }
    for m in w.cat.morphisms() {
        if w.cat.is_iso(m) {
            assert!(is_cofibration(&w, m));
        }
    }
}

#[test]
fn factorization_basics() {
    let w = instances::pointed_sets_waldhausen(3);
    for f in w.cat.morphisms() {
        let (j, p) = factorize(&w, f).expect("factorization exists");
        assert_eq!(w.cat.compose(p, j), f);
        assert!(w.fib.contains(p));
        assert!(w.weq.contains(j) || w.weq.contains(p));
        if w.fib.contains(f) {
            // fibrations factor as (identity, itself)
            assert!(w.cat.is_identity(j));
            assert_eq!(p, f);
        }
    }
}

#[test]
fn goodness_proxy_passes_on_corpus() {
    for w in [
        instances::pointed_sets_waldhausen(2),
        instances::pointed_sets_waldhausen(3),
        instances::pointed_sets_weq_all(2),
        instances::walking_weq_waldhausen(),
        instances::one_object_trivial(),
        instances::f2_vector_spaces(2),
    ] {
        let g = goodness_proxy(&w, 6);
        assert!(g.ok(), "{:?}", g);
    }
}

#[test]
fn goodness_two_out_of_three_negative_control() {
    // weq = identities plus the basepoint inclusion: c ∘ i = id breaks 2/3
    let base = instances::pointed_sets_waldhausen(2);
    let cat = base.cat.clone();
    let incl = cat
        .morphisms()
        .find(|&m| cat.src(m) == kcat::fincat::ObjId(0) && cat.dst(m) == kcat::fincat::ObjId(1))
        .unwrap();
    let mut weq: Vec<_> = cat.identities.clone();
    weq.push(incl);
    let w = kcat::waldhausen::WaldStructure::new(
        cat,
        weq,
        base.fib.members().to_vec(),
        base.zero,
    );
    let g = goodness_proxy(&w, 6);
    assert!(g.two_out_of_three.is_err(), "{:?}", g);
}

#[test]
fn sn_small_cases() {
    let w = instances::pointed_sets_waldhausen(3);
    let s0 = build_sn(&w, 0).unwrap();
    assert_eq!(s0.wald.cat.n_objects(), 1);
    assert_eq!(s0.wald.cat.n_morphisms(), 1);

    let s1 = build_sn(&w, 1).unwrap();
    assert_eq!(s1.wald.cat.n_objects(), w.cat.n_objects());
    assert_eq!(s1.wald.cat.n_morphisms(), w.cat.n_morphisms());
    assert!(check_waldhausen(&s1.wald).ok());

    let s2 = build_sn(&w, 2).unwrap();
    // objects = surjective pointed maps
    assert_eq!(s2.wald.cat.n_objects(), 9);
    assert!(kcat::fincat::check_category(&s2.wald.cat.to_raw()).unwrap().ok());
    assert!(check_waldhausen(&s2.wald).ok(), "{:?}", check_waldhausen(&s2.wald).verdicts);
}

#[test]
fn sn_of_f2_dim2() {
    let w = instances::f2_vector_spaces(2);
    let s2 = build_sn(&w, 2).unwrap();
    // surjections: 3 onto V0, 4 onto V1 (1 from V1, 3 from V2), 6 onto V2
    assert_eq!(s2.wald.cat.n_objects(), 13);
    assert!(check_waldhausen(&s2.wald).ok());
}

#[test]
fn k_space_small() {
    let w = instances::one_object_trivial();
    let ks = k_space(&w, 2).unwrap();
    assert_eq!(ks.validate(), Ok(()));
    let (_, n) = ks.pi0();
    assert_eq!(n, 1);
    assert!(homology(&ks, 1).unwrap().is_trivial());

    let ks0 = k_space(&w, 0).unwrap();
    assert_eq!(ks0.counts(), vec![1]);
}

#[test]
fn k_space_pointed_sets_2_has_h1_z() {
    let w = instances::pointed_sets_waldhausen(2);
    let ks = k_space(&w, 2).unwrap();
    assert_eq!(ks.validate(), Ok(()));
    let (_, n) = ks.pi0();
    assert_eq!(n, 1);
    assert_eq!(homology(&ks, 1).unwrap(), CanonicalAbGroup::free(1));
    // π1 abelianization agrees
    assert_eq!(pi1_abelianized(&ks, 0).unwrap().canonical(), CanonicalAbGroup::free(1));
}

#[test]
fn k0_presentation_values() {
    let cases: Vec<(kcat::waldhausen::WaldStructure, CanonicalAbGroup)> = vec![
        (instances::one_object_trivial(), CanonicalAbGroup::trivial()),
        (instances::pointed_sets_waldhausen(2), CanonicalAbGroup::free(1)),
        (instances::pointed_sets_waldhausen(3), CanonicalAbGroup::free(1)),
        (instances::pointed_sets_weq_all(2), CanonicalAbGroup::trivial()),
        (instances::pointed_sets_weq_all(3), CanonicalAbGroup::trivial()),
        (instances::f2_vector_spaces(2), CanonicalAbGroup::free(1)),
        (instances::f2_vector_spaces(3), CanonicalAbGroup::free(1)),
        (instances::walking_weq_waldhausen(), CanonicalAbGroup::free(1)),
    ];
    for (w, expect) in cases {
        let k0 = k0_presentation(&w).unwrap().canonical();
        assert_eq!(k0, expect, "{:?}", w);
    }
}

#[test]
fn k0_pipelines_agree() {
    let cases = vec![
        instances::one_object_trivial(),
        instances::pointed_sets_waldhausen(2),
        instances::pointed_sets_waldhausen(3),
        instances::pointed_sets_weq_all(2),
        instances::f2_vector_spaces(2),
        instances::walking_weq_waldhausen(),
    ];
    for w in cases {
        let a = k0_presentation(&w).unwrap().canonical();
        let b = k0_via_pi1(&w).unwrap().canonical();
        assert_eq!(a, b, "pipelines disagree on {:?}", w);
    }
}

#[test]
fn k0_via_pi1_family_path_matches_direct_on_iso_weq() {
    // the family lattice must match the literal k-space pipeline where both run
    for w in [
        instances::pointed_sets_waldhausen(2),
        instances::pointed_sets_waldhausen(3),
        instances::f2_vector_spaces(2),
    ] {
        let family = k0_via_pi1(&w).unwrap().canonical();
        let ks = k_space(&w, 2).unwrap();
        let direct = pi1_abelianized(&ks, 0).unwrap().canonical();
        assert_eq!(family, direct);
    }
}

#[test]
fn k0_f2_dim3_is_z() {
    let w = instances::f2_vector_spaces(3);
    let a = k0_presentation(&w).unwrap().canonical();
    let b = k0_via_pi1(&w).unwrap().canonical();
    assert_eq!(a, CanonicalAbGroup::free(1));
    assert_eq!(b, CanonicalAbGroup::free(1));
}

#[test]
fn exactness_checks() {
    let w = instances::pointed_sets_waldhausen(2);
    let id = FinFunctor::identity(&w.cat);
    assert!(check_exact(&id, &w, &w).ok());

    let (small, big, incl) = instances::pointed_sets_2_with_duplicate();
    let report = check_exact(&incl, &small, &big);
    assert!(report.ok(), "{:?}", report);
}

#[test]
fn induced_k0_map_of_dk_pair_is_iso() {
    let (small, big, incl) = instances::pointed_sets_2_with_duplicate();
    let pa = k0_presentation(&small).unwrap();
    let pb = k0_presentation(&big).unwrap();
    let map = induced_k0_map(&incl, pb.generators.len());
    assert_eq!(induced_map_verdict(&map, &pa, &pb), AbMapVerdict::Isomorphism);
}

#[test]
fn constant_to_zero_functor_is_exact() {
    let w = instances::pointed_sets_waldhausen(2);
    let zero_obj = w.zero;
    let f = FinFunctor {
        obj_map: w.cat.objects().map(|_| zero_obj).collect(),
        mor_map: w.cat.morphisms().map(|_| w.cat.identity(zero_obj)).collect(),
    };
    assert!(f.check(&w.cat, &w.cat).is_empty());
    assert!(check_exact(&f, &w, &w).ok());
}
