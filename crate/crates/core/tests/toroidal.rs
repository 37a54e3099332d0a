use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twist_core::liealg::{CartanType, GConfig, GElem};
use twist_core::toroidal::{LieElement, RootClass, Toroidal};
use twist_core::Scalar;

fn configs() -> Vec<GConfig> {
    vec![
        GConfig::new(CartanType::A, 3),
        GConfig::new(CartanType::A, 4),
        GConfig::new(CartanType::A, 5),
        GConfig::new(CartanType::D, 4),
        GConfig::with_order(CartanType::D, 4, 2),
        GConfig::new(CartanType::D, 5),
    ]
}

#[test]
fn jacobi_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cfg in configs() {
        for n in [2, 3] {
            let t = Toroidal::new(cfg, n).unwrap();
            for _ in 0..200 {
                let x = t.sample_homogeneous(&mut rng, 2);
                let y = t.sample_homogeneous(&mut rng, 2);
                let z = t.sample_homogeneous(&mut rng, 2);
                let mut s = t.bracket(&x, &t.bracket(&y, &z));
                s.add_assign(&t.bracket(&y, &t.bracket(&z, &x)));
                s.add_assign(&t.bracket(&z, &t.bracket(&x, &y)));
                assert!(s.is_zero(), "{}: {} {} {}", cfg.name(), t.render(&x), t.render(&y), t.render(&z));
            }
        }
    }
}

#[test]
fn closure_and_antisymmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for cfg in configs() {
        let t = Toroidal::new(cfg, 3).unwrap();
        for _ in 0..100 {
            let x = t.sample_homogeneous(&mut rng, 2);
            let y = t.sample_homogeneous(&mut rng, 2);
            assert!(t.in_twisted(&x));
            let b = t.bracket(&x, &y);
            assert!(t.in_twisted(&b));
            assert_eq!(b, t.bracket(&y, &x).neg());
        }
    }
}

#[test]
fn weights_are_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for cfg in configs() {
        let t = Toroidal::new(cfg, 2).unwrap();
        for _ in 0..200 {
            let x = t.sample_homogeneous(&mut rng, 2);
            if x.loops.is_empty() {
                continue;
            }
            let w = t.weight_of(&x).unwrap();
            let zero_alpha = w.alpha.iter().all(|a| *a == 0);
            let class = t.root_membership(&w);
            if zero_alpha && w.delta.iter().all(|d| *d == 0) {
                assert_eq!(class, RootClass::NotARoot);
            } else {
                assert!(class != RootClass::NotARoot, "{}: {:?}", cfg.name(), w);
            }
        }
        assert_eq!(t.weight_of(&t.e0()).unwrap(), t.alpha0());
        assert_eq!(t.weight_of(&t.f0()).unwrap(), t.alpha0().neg());
        assert_eq!(t.root_membership(&t.alpha0()), RootClass::Positive);
    }
}

#[test]
fn triangular_parts_sum_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = Toroidal::new(GConfig::new(CartanType::D, 4), 2).unwrap();
    for _ in 0..50 {
        let x = t.sample_homogeneous(&mut rng, 1).add(&t.sample_homogeneous(&mut rng, 1));
        let [a, b, c] = t.triangular_part(&x).unwrap();
        assert_eq!(a.add(&b).add(&c), x);
    }
}

#[test]
fn projection_is_idempotent() {
    let t = Toroidal::new(GConfig::new(CartanType::A, 5), 2).unwrap();
    for b in 0..t.tw.g.dim() {
        for m1 in -2..=2 {
            let x = t.project_twisted(&LieElement::loop_elem(&GElem::basis(b), &[m1, 1]));
            assert_eq!(t.project_twisted(&x), x);
            assert!(t.in_twisted(&x));
        }
    }
}

#[test]
fn e0_f0_h0_triple() {
    for cfg in configs() {
        let t = Toroidal::new(cfg, 2).unwrap();
        let h = t.h0();
        let two = Scalar::from_int(2);
        assert_eq!(t.bracket(&h, &t.e0()), t.e0().scale(&two), "{}", cfg.name());
        assert_eq!(t.bracket(&h, &t.f0()), t.f0().scale(&-two.clone()));
    }
}

proptest! {
    #[test]
    fn central_canonical_form(s1 in -3i64..=3, s2 in -3i64..=3, s3 in -3i64..=3,
                              c1 in -5i64..=5, c2 in -5i64..=5, c3 in -5i64..=5, lam in -4i64..=4) {
        let s = [s1, s2, s3];
        let build = |order: [usize; 3]| {
            let c = [c1, c2, c3];
            let mut e = LieElement::zero();
            for i in order {
                e.add_central(&s, i, &Scalar::from_int(c[i]));
            }
            e
        };
        let a = build([0, 1, 2]);
        let b = build([2, 0, 1]);
        prop_assert_eq!(&a, &b);
        // adding a multiple of the Kähler relation changes nothing
        let mut k = a.clone();
        for (i, si) in s.iter().enumerate() {
            k.add_central(&s, i, &Scalar::from_int(lam * si));
        }
        prop_assert_eq!(&k, &a);
        // normal form is stable under re-insertion
        let mut again = LieElement::zero();
        for ((m, i), c) in &a.central {
            again.add_central(m, *i, c);
        }
        prop_assert_eq!(again, a);
    }
}
