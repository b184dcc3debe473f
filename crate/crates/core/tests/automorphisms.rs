use defcyc_core::aut::{
    aut_order, automorphism_group, fixed_subgroup, hillar_rhea_order, orbit, pointwise_stabilizer, AbelianPShape,
};
use defcyc_core::group::{catalog_up_to, direct_product, make_abelian, make_cyclic};
use defcyc_core::{Limits, Subset};
use num_bigint::BigUint;

fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(n, k) == 1).count()
}

#[test]
fn cyclic_groups_have_totient_many_automorphisms() {
    for n in 1..=64 {
        let g = make_cyclic(n).unwrap();
        assert_eq!(aut_order(&g, &Limits::default()).unwrap(), totient(n) as u128, "Z{n}");
    }
}

#[test]
fn chain_count_matches_enumeration_on_the_complete_catalog() {
    for g in catalog_up_to(15).unwrap() {
        let full = automorphism_group(&g).unwrap();
        assert!(full.is_closed(), "{}", g.name());
        assert_eq!(aut_order(&g, &Limits::default()).unwrap(), full.len() as u128, "{}", g.name());
    }
}

#[test]
fn closed_form_for_abelian_p_groups() {
    for p in [2u64, 3, 5, 7] {
        for shape in AbelianPShape::all_up_to(p, 64) {
            let g = make_abelian(&shape.factors()).unwrap();
            let counted = aut_order(&g, &Limits::default()).unwrap();
            assert_eq!(BigUint::from(counted), hillar_rhea_order(&shape), "{:?}", shape.factors());
        }
    }
}

#[test]
fn coprime_orders_multiply() {
    let pairs = [(&[4usize][..], &[3usize][..]), (&[2, 2], &[3]), (&[2, 4], &[9]), (&[2, 2, 2], &[5])];
    for (a, b) in pairs {
        let ga = make_abelian(a).unwrap();
        let gb = make_abelian(b).unwrap();
        let prod = direct_product(&ga, &gb).unwrap();
        let lim = Limits::default();
        assert_eq!(
            aut_order(&prod, &lim).unwrap(),
            aut_order(&ga, &lim).unwrap() * aut_order(&gb, &lim).unwrap()
        );
    }
}

#[test]
fn orbits_and_stabilizers() {
    for g in catalog_up_to(12).unwrap() {
        let aut = automorphism_group(&g).unwrap();
        for s in g.elements() {
            let single = Subset::singleton(g.order(), s).unwrap();
            let stab = pointwise_stabilizer(&aut, &single);
            assert!(stab.is_closed());
            assert_eq!(orbit(&aut, s).len() * stab.len(), aut.len(), "{} at {s}", g.name());
            assert!(fixed_subgroup(&stab).contains(s));
            assert!(g.is_subgroup(&fixed_subgroup(&stab)));
        }
    }
}
