use proptest::prelude::*;
use twist_core::envelope::*;
use twist_core::liealg::{CartanType, GConfig};

#[test]
fn garland_divided_powers_hold() {
    for j in 1..=3 {
        let r = verify_garland(j, GarlandForm::DividedPower, Budget::default()).unwrap();
        assert!(r.first_holds && r.second_holds, "j={} {} | {}", j, r.first_residue, r.second_residue);
    }
}

#[test]
fn garland_printed_form_fails() {
    let r = verify_garland(1, GarlandForm::Printed, Budget::default()).unwrap();
    assert!(!r.first_holds && !r.second_holds);
    assert_eq!(r.first_residue, "(3)·y0 h1 + (-3)·y1");
}

#[test]
fn budget_is_enforced() {
    let tight = Budget { max_len: 3, max_deg: 8 };
    assert!(verify_garland(2, GarlandForm::DividedPower, tight).is_err());
}

#[test]
fn series_uses_positive_modes_only() {
    let pbw = Pbw::new(Budget::default());
    let p = garland_coeffs(5, &pbw).unwrap();
    for (s, ps) in p.0.iter().enumerate() {
        for w in ps.0.keys() {
            assert!(w.iter().all(|l| l.kind == Kind::H && l.deg >= 1));
            assert_eq!(w.iter().map(|l| l.deg).sum::<i64>(), s as i64);
        }
    }
}

#[test]
fn sym_products_stay_symmetric() {
    let counts = [2, 1, 3];
    let a = sym_lambda(&counts, 0, &[1, 0]).unwrap();
    let b = sym_lambda(&counts, 2, &[0, -1]).unwrap();
    let c = sym_lambda(&counts, 2, &[2, 1]).unwrap();
    for t in [&a, &b, &a.mul(&b), &b.mul(&c), &a.mul(&b).mul(&c)] {
        assert!(is_block_symmetric(&counts, t));
    }
}

#[test]
fn transported_triples() {
    let cases = [
        (GConfig::new(CartanType::A, 3), vec![1, 0], 1),
        (GConfig::new(CartanType::A, 3), vec![1, 1], 0),
        (GConfig::new(CartanType::D, 4), vec![1, 0], 2),
        (GConfig::new(CartanType::D, 5), vec![0, 1, 1, 1], 1),
    ];
    for (cfg, alpha, m) in cases {
        let t = Sl2Transport::new(cfg, 3, &alpha, m, &[1, 0]).unwrap();
        assert_eq!(t.verify(2), Ok(225), "{}", cfg.name());
    }
}

fn letter() -> impl Strategy<Value = Letter> {
    (0..3usize, -2i64..=2).prop_map(|(k, d)| match k {
        0 => x(d),
        1 => h(d),
        _ => y(d),
    })
}

fn element() -> impl Strategy<Value = PbwElement> {
    prop::collection::vec(prop::collection::vec(letter(), 0..3), 1..3).prop_map(|ws| {
        let pbw = Pbw::new(Budget::default());
        let mut out = PbwElement::zero();
        for w in ws {
            let mut e = PbwElement::one();
            for l in w {
                e = pbw.mul(&e, &PbwElement::word(&[l])).unwrap();
            }
            out = out.add(&e);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn pbw_associative(a in element(), b in element(), c in element()) {
        let pbw = Pbw::new(Budget::default());
        let l = pbw.mul(&pbw.mul(&a, &b).unwrap(), &c).unwrap();
        let r = pbw.mul(&a, &pbw.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
