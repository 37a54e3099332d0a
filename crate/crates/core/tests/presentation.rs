use twist_core::liealg::{CartanType, GConfig};
use twist_core::presentation::{exponent_box, CartanTable, Expr, MryGenerator, Presentation, FAMILIES};
use twist_core::toroidal::LieElement;
use twist_core::Scalar;

fn p(ty: CartanType, rank: usize, order: usize, n: usize) -> Presentation {
    Presentation::new(GConfig::with_order(ty, rank, order), n, CartanTable::Printed).unwrap()
}

#[test]
fn phi_examples() {
    let pr = p(CartanType::A, 3, 2, 3);
    let d = pr.phi(&MryGenerator::DeltaCentral { r: vec![2, -1], s: vec![1, 0] });
    let mut want = LieElement::central_elem(1, &[0, 1, 0]).scale(&Scalar::from_int(2));
    want.add_assign(&LieElement::central_elem(2, &[0, 1, 0]).neg());
    assert_eq!(d, want);
    assert_eq!(pr.phi(&MryGenerator::Derivation(2)), LieElement::der_elem(1));
    // X(alpha_0, 0) is minus the affine Chevalley generator e_0
    assert_eq!(pr.phi(&MryGenerator::RootGen { sign: 1, i: 0, k: vec![0, 0] }), pr.tor.e0().neg());
    for i in 0..=pr.ell() {
        for s in [1, -1] {
            assert!(pr.tor.in_twisted(&pr.phi(&MryGenerator::RootGen { sign: s, i, k: vec![1, -1] })));
        }
        assert!(pr.tor.in_twisted(&pr.phi(&MryGenerator::CartanGen { i, k: vec![0, 1] })));
    }
}

#[test]
fn x0_xminus0_central_term() {
    // [X(a0,k), X(-a0,l)] = alpha_0(k+l) + r delta_k(k+l)
    let pr = p(CartanType::A, 3, 2, 2);
    let lhs = Expr::br(
        Expr::Gen(MryGenerator::RootGen { sign: 1, i: 0, k: vec![1] }),
        Expr::Gen(MryGenerator::RootGen { sign: -1, i: 0, k: vec![1] }),
    );
    let rhs = Expr::sum(vec![
        (1, Expr::Gen(MryGenerator::CartanGen { i: 0, k: vec![2] })),
        (2, Expr::Gen(MryGenerator::DeltaCentral { r: vec![1], s: vec![2] })),
    ]);
    let mut memo = Default::default();
    assert_eq!(pr.eval(&lhs, &mut memo), pr.eval(&rhs, &mut memo));
}

#[test]
fn family_counts() {
    let pr = p(CartanType::D, 5, 2, 2);
    let bx = exponent_box(1, 1);
    // one x-x-same instance per node, sign and pair of exponents
    assert_eq!(pr.enumerate_family(11, &bx).len(), (pr.ell() + 1) * 2 * 9);
    assert_eq!(pr.enumerate_family(2, &bx).len(), 3);
    assert_eq!(FAMILIES.len(), 19);
}

#[test]
fn sweep_passes_except_a3() {
    for (ty, rank, order) in [(CartanType::A, 5, 2), (CartanType::D, 4, 3), (CartanType::D, 5, 2), (CartanType::A, 4, 2), (CartanType::D, 4, 2)] {
        let pr = p(ty, rank, order, 2);
        let rep = pr.sweep(1);
        assert!(rep.all_pass(), "{}: {:?}", rep.algebra, rep.failing_families());
        assert_eq!(rep.extended_cartan, rep.derived_cartan);
    }
}

#[test]
fn a3_printed_entry_differs() {
    let pr = p(CartanType::A, 3, 2, 2);
    let rep = pr.sweep(1);
    assert_eq!(rep.extended_cartan[0][2], -1);
    assert_eq!(rep.derived_cartan[0][2], -2);
    assert_eq!(rep.derived_cartan[2][0], -1);
    assert_eq!(rep.failing_families(), vec![10, 14]);
    let der = Presentation::new(GConfig::new(CartanType::A, 3), 2, CartanTable::Derived).unwrap().sweep(1);
    assert_eq!(der.failing_families(), vec![6]);
}

#[test]
fn phi_images_span() {
    for (ty, rank, order) in [(CartanType::A, 3, 2), (CartanType::A, 4, 2), (CartanType::D, 4, 3), (CartanType::D, 5, 2)] {
        let rep = p(ty, rank, order, 2).spanning_check(4);
        assert!(rep.complete, "{:?}", rep.pieces);
    }
}
