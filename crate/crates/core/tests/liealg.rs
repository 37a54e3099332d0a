use twist_core::liealg::{CartanType, GConfig, GElem, SimpleLie, Twist, TwistKind};
use twist_core::Scalar;

fn cfgs() -> Vec<GConfig> {
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
fn jacobi_and_invariance_exhaustive() {
    for (ty, n) in [(CartanType::A, 3), (CartanType::A, 4), (CartanType::D, 4), (CartanType::D, 5)] {
        let g = SimpleLie::new(ty, n).unwrap();
        assert_eq!(g.check_jacobi_exhaustive(), None, "{ty}{n}");
        assert!(g.check_invariance_exhaustive(), "{ty}{n}");
    }
}

#[test]
fn mu_is_an_automorphism() {
    for c in cfgs() {
        let tw = Twist::new(c).unwrap();
        assert!(tw.check_mu(), "{}", c.name());
    }
}

// oracle: dim g_s = (1/r) sum_j xi^{-sj} tr(mu^j), traces read off the signed permutation
fn trace_dim(tw: &Twist, s: usize) -> Scalar {
    let d = tw.g.dim();
    let mut total = Scalar::zero();
    for j in 0..tw.r {
        let mut tr = Scalar::zero();
        for b in 0..d {
            let y = tw.mu_pow(&GElem::basis(b), j);
            tr += y.get(b);
        }
        total += &tw.xi(-((s * j) as i64)) * &tr;
    }
    &total * &Scalar::from_frac(1, tw.r as i64)
}

#[test]
fn grade_dimensions() {
    let expected: &[(GConfig, &[usize])] = &[
        (GConfig::new(CartanType::A, 3), &[10, 5]),
        (GConfig::new(CartanType::A, 4), &[10, 14]),
        (GConfig::new(CartanType::A, 5), &[21, 14]),
        (GConfig::new(CartanType::D, 4), &[14, 7, 7]),
        (GConfig::new(CartanType::D, 5), &[36, 9]),
    ];
    for (c, dims) in expected {
        let tw = Twist::new(*c).unwrap();
        for (s, d) in dims.iter().enumerate() {
            assert_eq!(tw.grade_dim(s), *d, "{} s={s}", c.name());
            assert_eq!(trace_dim(&tw, s), Scalar::from_int(*d as i64));
            for v in tw.grade_basis(s) {
                assert_eq!(tw.grade_of(v), Some(s));
            }
        }
    }
}

fn standard(kind: TwistKind, l: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; l]; l];
    for i in 0..l {
        a[i][i] = 2;
        if i + 1 < l {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match kind {
        TwistKind::A2lm1 => a[l - 2][l - 1] = -2,
        TwistKind::A2l | TwistKind::Dl1 => a[l - 1][l - 2] = -2,
        TwistKind::D4 => a[0][1] = -3,
    }
    a
}

#[test]
fn fixed_point_cartan_matrices() {
    for c in cfgs() {
        let tw = Twist::new(c).unwrap();
        assert_eq!(tw.g0_cartan, standard(tw.kind, tw.ell), "{}", c.name());
        for i in 0..tw.ell {
            assert_eq!(tw.g.bracket(&tw.e0[i], &tw.f0[i]), tw.h0[i]);
            assert_eq!(tw.grade_of(&tw.e0[i]), Some(0));
        }
    }
}

#[test]
fn theta_triples() {
    for c in cfgs() {
        let tw = Twist::new(c).unwrap();
        assert!(tw.check_theta_table().is_empty(), "{}: {:?}", c.name(), tw.check_theta_table());
        // f^(1) has weight -theta^0: it is a lowest, not a highest, weight vector
        assert!(!tw.f1_is_highest(), "{}", c.name());
        assert!(tw.f1_is_lowest(), "{}", c.name());
        assert!(tw.erm1_is_highest(), "{}", c.name());
        let e = tw.e_theta0.clone();
        assert_eq!(tw.g.form(&e, &tw.mu(&e)), Scalar::zero());
        if tw.kind != TwistKind::A2l {
            assert_eq!(tw.g.form(&tw.h_theta0, &tw.mu(&tw.h_theta0)), Scalar::zero());
        }
    }
    let a4 = Twist::new(GConfig::new(CartanType::A, 4)).unwrap();
    assert_eq!(a4.mu(&a4.e_theta0), a4.e_theta0.neg());
    assert_eq!(a4.grade_of(&a4.f_theta0), Some(1));
}
