use kcat::instances;
use kcat::sset::*;
fn main() {
    let (n_z2, _) = nerve(&instances::cyclic_group_category(2), 3);
    let pt = FinSSet::point(3);
    let f = SMap {
        images: (0..=pt.trunc)
            .map(|d| {
                (0..pt.n_nondeg(d))
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
    println!("f validate: {:?}", f.validate(&pt, &n_z2));
    println!("building prod_xy");
    let prod_xy = product(&pt, &pt, 2);
    println!("prod_xy counts {:?}", prod_xy.sset.counts());
    println!("building prod_zz");
    let prod_zz = product(&n_z2, &n_z2, 2);
    println!("prod_zz counts {:?}", prod_zz.sset.counts());
    println!("path_complex");
    let (path_z, ev0, ev1) = path_complex(&n_z2, 2).unwrap();
    println!("path counts {:?}", path_z.sset.counts());
    println!("ev0 validate: {:?}", ev0.validate(&path_z.sset, &n_z2));
    println!("ev1 validate: {:?}", ev1.validate(&path_z.sset, &n_z2));
    let fx = f.compose(&prod_xy.proj1);
    println!("fx ok");
    let gy = f.compose(&prod_xy.proj2);
    let a_map = pair_into_product(&prod_zz, &fx, &gy);
    println!("a_map ok, validate: {:?}", a_map.validate(&prod_xy.sset, &prod_zz.sset));
    let b_map = pair_into_product(&prod_zz, &ev0, &ev1);
    println!("b_map ok, validate: {:?}", b_map.validate(&path_z.sset, &prod_zz.sset));
    let inner = fiber_product(&prod_xy.sset, &path_z.sset, &a_map, &b_map, 2);
    println!("inner counts {:?}", inner.sset.counts());
    println!("to_first levels: {:?}", inner.to_first.images.iter().map(|l| l.len()).collect::<Vec<_>>());
    println!("proj1 levels: {:?}", prod_xy.proj1.images.iter().map(|l| l.len()).collect::<Vec<_>>());
    let hfp = homotopy_fiber_product(&pt, &pt, &n_z2, &f, &f, 2).unwrap();
    println!("hfp counts {:?}", hfp.sset.counts());
}
// second entry point via env var
