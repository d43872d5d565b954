use kcat::fincat::{
    check_category, gz_localize, pullback, pullback_candidates, CatBuilder, FinCat, FinFunctor,
    GzError, MorData, MorId, ObjId, RawCategory, WideSubcat,
};
use kcat::instances;

fn walking_arrow() -> FinCat {
    instances::walking_arrow()
}

#[test]
fn z2_group_table_checks() {
    let cat = instances::cyclic_group_category(2);
    let report = check_category(&cat.to_raw()).unwrap();
    assert!(report.ok(), "{:?}", report.violations);
}

#[test]
fn walking_arrow_checks() {
    let cat = walking_arrow();
    assert!(check_category(&cat.to_raw()).unwrap().ok());
    assert_eq!(cat.n_objects(), 2);
    assert_eq!(cat.n_morphisms(), 3);
}

#[test]
fn crafted_associativity_violation_is_reported() {
    // chain a -f-> b -g-> c -h-> d with (h∘g)∘f pointed at the wrong arrow
    let mut raw = RawCategory::default();
    raw.objects = vec!["a".into(), "b".into(), "c".into(), "d".into()];
    let names = ["ida", "idb", "idc", "idd", "f", "g", "h", "gf", "hg", "hgf", "bad"];
    let srcs = [0, 1, 2, 3, 0, 1, 2, 0, 1, 0, 0];
    let dsts = [0, 1, 2, 3, 1, 2, 3, 2, 3, 3, 3];
    for i in 0..names.len() {
        raw.morphisms.push(MorData {
            name: names[i].into(),
            src: ObjId(srcs[i]),
            dst: ObjId(dsts[i]),
        });
    }
    raw.identities = vec![MorId(0), MorId(1), MorId(2), MorId(3)];
    let m = |n: &str| MorId(names.iter().position(|x| *x == n).unwrap() as u32);
    let mut comp = vec![
        (m("g"), m("f"), m("gf")),
        (m("h"), m("g"), m("hg")),
        (m("h"), m("gf"), m("hgf")),
        (m("hg"), m("f"), m("bad")), // associativity broken on purpose
    ];
    // identity composites
    for i in 0..names.len() {
        let mi = MorId(i as u32);
        let (s, d) = (raw.morphisms[i].src, raw.morphisms[i].dst);
        if raw.identities.contains(&mi) && s == d {
            continue;
        }
        comp.push((mi, raw.identities[s.0 as usize], mi));
        comp.push((raw.identities[d.0 as usize], mi, mi));
    }
    for o in 0..4 {
        comp.push((raw.identities[o], raw.identities[o], raw.identities[o]));
    }
    raw.composites = comp;
    let report = check_category(&raw).unwrap();
    assert!(!report.ok());
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, kcat::fincat::CategoryViolation::Associativity { .. })));
}

#[test]
fn zero_objects() {
    let ptd = instances::pointed_sets_category(3);
    assert_eq!(ptd.zero_object(), Some(ObjId(0)));
    assert_eq!(walking_arrow().zero_object(), None);
    let z2 = instances::cyclic_group_category(2);
    assert_eq!(z2.zero_object(), None); // Hom(*,*) has two elements
    let trivial = instances::cyclic_group_category(1);
    assert_eq!(trivial.zero_object(), Some(ObjId(0)));
}

#[test]
fn pullback_identity_leg() {
    let cat = instances::pointed_sets_category(3);
    // g = id_z: pullback of (f, id) is the source of f
    for f in cat.morphisms() {
        let z = cat.dst(f);
        let pb = pullback(&cat, f, cat.identity(z)).expect("pullback along identity");
        // apex isomorphic to src(f); in the skeletal category, equal
        assert_eq!(pb.apex, cat.src(f));
    }
}

#[test]
fn pullback_of_inclusions_is_intersection() {
    let cat = instances::pointed_sets_category(3);
    // inclusions {*,a} -> {*,a,b}: a ↦ a and a ↦ b; intersection is the point
    let find = |name: &str| {
        cat.morphisms()
            .find(|&m| cat.mors[m.0 as usize].name == name)
            .unwrap_or_else(|| panic!("{} missing", name))
    };
    // p23:1 sends a to element 1 (a); p23:2 sends a to element 2 (b)
    let f = find("p23:1");
    let g = find("p23:2");
    let pb = pullback(&cat, f, g).expect("intersection exists");
    assert_eq!(pb.apex, ObjId(0), "intersection of disjoint inclusions is the point");
    // intersecting an inclusion with itself gives the 2-point set
    let pb2 = pullback(&cat, f, f).expect("self intersection");
    assert_eq!(pb2.apex, ObjId(1));
}

#[test]
fn pullback_absent_for_parallel_pair() {
    let mut b = CatBuilder::new();
    let a = b.object("a");
    let bb = b.object("b");
    b.identity(a, "id_a");
    b.identity(bb, "id_b");
    let u = b.morphism("u", a, bb);
    let v = b.morphism("v", a, bb);
    let cat = b.build().unwrap();
    assert_eq!(pullback(&cat, u, v), None);
}

#[test]
fn pullback_candidates_mutually_isomorphic() {
    let cat = instances::pointed_sets_category(3);
    let find = |name: &str| cat.morphisms().find(|&m| cat.mors[m.0 as usize].name == name).unwrap();
    let f = find("p23:1");
    let g = find("p23:2");
    let cands = pullback_candidates(&cat, f, g);
    assert!(!cands.is_empty());
    for a in &cands {
        for b in &cands {
            // mutually inverse cone maps exist
            let u = cat
                .hom(a.apex, b.apex)
                .iter()
                .copied()
                .find(|&u| {
                    cat.compose(b.proj1, u) == a.proj1 && cat.compose(b.proj2, u) == a.proj2
                })
                .expect("cone map");
            let v = cat
                .hom(b.apex, a.apex)
                .iter()
                .copied()
                .find(|&v| {
                    cat.compose(a.proj1, v) == b.proj1 && cat.compose(a.proj2, v) == b.proj2
                })
                .expect("cone map back");
            assert_eq!(cat.compose(v, u), cat.identity(a.apex));
            assert_eq!(cat.compose(u, v), cat.identity(b.apex));
        }
    }
}

#[test]
fn opposite_is_involutive() {
    let cat = walking_arrow();
    let op2 = cat.opposite().opposite();
    assert_eq!(cat.n_morphisms(), op2.n_morphisms());
    for m in cat.morphisms() {
        assert_eq!(cat.src(m), op2.src(m));
        assert_eq!(cat.dst(m), op2.dst(m));
    }
    for g in cat.morphisms() {
        for f in cat.morphisms() {
            assert_eq!(cat.try_compose(g, f), op2.try_compose(g, f));
        }
    }
}

#[test]
fn product_of_walking_arrows() {
    let c = walking_arrow();
    let p = c.product(&c);
    assert_eq!(p.n_objects(), 4);
    assert_eq!(p.n_morphisms(), 9);
    assert!(check_category(&p.to_raw()).unwrap().ok());
}

#[test]
fn is_iso_basics() {
    let cat = instances::pointed_sets_category(3);
    for o in cat.objects() {
        assert!(cat.is_iso(cat.identity(o)));
    }
    // the swap on the 3-point set is an isomorphism, the collapse is not
    let swap = cat.morphisms().find(|&m| cat.mors[m.0 as usize].name == "p33:21").unwrap();
    assert!(cat.is_iso(swap));
    let collapse = cat.morphisms().find(|&m| cat.mors[m.0 as usize].name == "p31:__").unwrap_or(
        cat.morphisms().find(|&m| cat.src(m) == ObjId(2) && cat.dst(m) == ObjId(0)).unwrap(),
    );
    assert!(!cat.is_iso(collapse));
}

#[test]
fn functor_checks() {
    let cat = walking_arrow();
    let id = FinFunctor::identity(&cat);
    assert!(id.check(&cat, &cat).is_empty());
    // composition of functors agrees on generators
    let comp = id.compose(&id);
    for m in cat.morphisms() {
        assert_eq!(comp.on_mor(m), m);
    }
}

#[test]
fn gz_identities_only_returns_original() {
    let cat = instances::pointed_sets_category(2);
    let w = WideSubcat::identities_only(&cat);
    let loc = gz_localize(&cat, &w, 4).expect("saturates");
    assert_eq!(loc.cat.n_morphisms(), cat.n_morphisms());
    assert!(check_category(&loc.cat.to_raw()).unwrap().ok());
    // the localization functor is bijective on homs
    for x in cat.objects() {
        for y in cat.objects() {
            assert_eq!(loc.cat.hom(x, y).len(), cat.hom(x, y).len());
        }
    }
}

#[test]
fn gz_walking_weq_collapses() {
    let (cat, w) = instances::walking_weq();
    let loc = gz_localize(&cat, &w, 4).expect("saturates");
    assert!(check_category(&loc.cat.to_raw()).unwrap().ok());
    for x in loc.cat.objects() {
        for y in loc.cat.objects() {
            assert_eq!(loc.cat.hom(x, y).len(), 1, "hom({}, {}) must be a singleton", x, y);
        }
    }
    // a ≅ b in the localization
    let a_to_b = loc.cat.hom(ObjId(0), ObjId(1))[0];
    assert!(loc.cat.is_iso(a_to_b));
}

#[test]
fn gz_with_isos_is_equivalent_to_original() {
    let cat = instances::pointed_sets_category(3);
    let w = WideSubcat::isos(&cat);
    let loc = gz_localize(&cat, &w, 6).expect("saturates");
    assert!(check_category(&loc.cat.to_raw()).unwrap().ok());
    // localization functor is essentially surjective (identity on objects)
    // and fully faithful here
    for x in cat.objects() {
        for y in cat.objects() {
            let mut images: Vec<MorId> =
                cat.hom(x, y).iter().map(|&m| loc.functor.on_mor(m)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), cat.hom(x, y).len(), "hom({}, {})", x, y);
            assert_eq!(loc.cat.hom(x, y).len(), cat.hom(x, y).len());
        }
    }
}

#[test]
fn gz_parallel_pair_does_not_saturate() {
    let (cat, w) = instances::parallel_pair_nonsaturating();
    match gz_localize(&cat, &w, 6) {
        Err(GzError::NotSaturated(6)) => {}
        other => panic!("expected NotSaturated, got {:?}", other.map(|l| l.cat)),
    }
}

#[test]
fn gz_f2_vec_saturates() {
    let w = instances::f2_vector_spaces(2);
    let sub = WideSubcat::isos(&w.cat);
    let loc = gz_localize(&w.cat, &sub, 6).expect("saturates");
    assert_eq!(loc.cat.n_morphisms(), w.cat.n_morphisms());
}

#[test]
fn wide_subcat_checks() {
    let cat = instances::pointed_sets_category(2);
    let good = WideSubcat::isos(&cat);
    assert!(good.check(&cat).is_empty());
    // missing identity
    let bad = WideSubcat::new(&cat, [cat.identity(ObjId(0))]);
    assert!(!bad.check(&cat).is_empty());
}
