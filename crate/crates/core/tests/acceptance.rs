//! One line per acceptance criterion. Criteria that do not hold are printed as
//! NOT MET with the reason, and the test pins those outcomes so a silent change
//! in either direction is caught.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use twist_core::autos::Autos;
use twist_core::characters::{adjudicate_char, eta_power, imaginary_mults, Verdict};
use twist_core::envelope::{verify_garland, Budget, GarlandForm};
use twist_core::liealg::{CartanType, GConfig};
use twist_core::presentation::{CartanTable, Presentation};
use twist_core::toroidal::{LieElement, Toroidal};
use twist_core::vertex::{fock_graded_dim, verify_central_assignments, verify_nproduct_table};
use twist_core::Scalar;

struct Line {
    id: &'static str,
    met: bool,
    detail: String,
}

fn report(lines: &[Line]) {
    println!();
    for l in lines {
        println!("criterion {:<3} {:<8} {}", l.id, if l.met { "PASS" } else { "NOT MET" }, l.detail);
    }
}

fn a3() -> GConfig {
    GConfig::new(CartanType::A, 3)
}
fn d4() -> GConfig {
    GConfig::new(CartanType::D, 4)
}

fn criterion_1() -> Line {
    let t = Instant::now();
    let mut failing = Vec::new();
    let mut instances = 0;
    for cfg in [a3(), GConfig::new(CartanType::A, 5), d4(), GConfig::new(CartanType::D, 5), GConfig::new(CartanType::A, 4)] {
        for n in [2, 3] {
            let rep = Presentation::new(cfg, n, CartanTable::Printed).unwrap().sweep(1);
            instances += rep.checked;
            if !rep.all_pass() {
                failing.push(format!("{} n={} families {:?}", rep.algebra, n, rep.failing_families()));
            }
        }
    }
    // pinned: only the A3 case fails, in the two families using the node-0 entry
    assert_eq!(failing, vec!["A3^(2) n=2 families [10, 14]".to_string(), "A3^(2) n=3 families [10, 14]".to_string()]);
    let der = Presentation::new(a3(), 2, CartanTable::Derived).unwrap().sweep(1);
    assert_eq!(der.failing_families(), vec![6]);
    Line {
        id: "1",
        met: failing.is_empty(),
        detail: format!(
            "{} instances; A5, D4, D5, A4 pass; {}; the derived table fails family 6 instead ({:.1?})",
            instances,
            failing.join(", "),
            t.elapsed()
        ),
    }
}

fn criterion_2() -> Line {
    let t = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for cfg in [a3(), d4()] {
        for n in [2, 3] {
            let a = Autos::new(cfg, n).unwrap();
            for rep in [a.verify_rp1(2, 1).unwrap(), a.verify_psi_theta_image(2, 1).unwrap(), a.verify_psi0_image(2, 1, false).unwrap()] {
                checked += rep.checked;
                ok &= rep.ok();
            }
        }
    }
    let printed = Autos::new(d4(), 2).unwrap().verify_psi0_image(2, 1, true).unwrap();
    assert!(ok);
    assert!(!printed.ok());
    Line {
        id: "2",
        met: ok,
        detail: format!(
            "the composite image identity and both single images exact at {} points; the printed superscript in the Psi_0 image fails for r = 3 ({:.1?})",
            checked,
            t.elapsed()
        ),
    }
}

fn criterion_3() -> Line {
    let t = Instant::now();
    let mut dp = true;
    let mut printed = true;
    for j in 1..=3 {
        let a = verify_garland(j, GarlandForm::DividedPower, Budget::default()).unwrap();
        let b = verify_garland(j, GarlandForm::Printed, Budget::default()).unwrap();
        dp &= a.first_holds && a.second_holds;
        printed &= b.first_holds && b.second_holds;
    }
    assert!(dp && !printed);
    Line {
        id: "3",
        met: dp,
        detail: format!(
            "j = 1..3 hold exactly with divided powers and the sign (-1)^j; plain powers without the sign do not ({:.1?})",
            t.elapsed()
        ),
    }
}

fn criterion_4() -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut borcherds = 0;
    let mut disc = Vec::new();
    for n in [2, 3] {
        let rep = verify_nproduct_table(n, 1, 60, 11);
        ok &= rep.consistent() && rep.corrected.iter().all(|c| c.printed.ok());
        borcherds += rep.borcherds.passed;
        disc.push(rep.discrepancies());
    }
    assert!(ok);
    assert_eq!(disc, vec![vec![4], vec![4]]);
    Line {
        id: "4",
        met: ok,
        detail: format!(
            "all lines verified; line 4 as printed carries q_i where the modes give p_i (reported); {} Borcherds triples pass ({:.1?})",
            borcherds,
            t.elapsed()
        ),
    }
}

fn criterion_5() -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut states = 0;
    for n in [2, 3] {
        for r in [2, 3] {
            let rep = verify_central_assignments(n, r, 3, 60, 5);
            ok &= rep.ok();
            states += rep.states;
        }
    }
    assert!(ok);
    Line {
        id: "5",
        met: ok,
        detail: format!(
            "K_1, K_i, d_1, d_i brackets exact on {} states of degree <= 3, with d_1 acting as minus the degree ({:.1?})",
            states,
            t.elapsed()
        ),
    }
}

fn criterion_6() -> Vec<Line> {
    let t = Instant::now();
    let mut a = true;
    for n in [2usize, 3] {
        let fock: Vec<i64> = fock_graded_dim(n, 10).into_iter().map(|x| x as i64).collect();
        a &= fock == eta_power(n - 1, 0, 10, 0).unwrap().q1_coefficients();
    }
    let b = imaginary_mults(a3()).unwrap().dims == vec![2, 1]
        && imaginary_mults(GConfig::new(CartanType::D, 5)).unwrap().dims == vec![4, 1]
        && imaginary_mults(d4()).unwrap().dims == vec![2, 1, 1];
    let mut verdicts = Vec::new();
    let mut slice = true;
    for cfg in [a3(), d4()] {
        let rep = adjudicate_char(cfg, 6).unwrap();
        assert_eq!(rep.rows.len(), 7);
        slice &= rep.product_is_zero_weight_slice;
        verdicts.push((rep.algebra.clone(), rep.verdict, rep.rows.iter().map(|r| (r.product, r.graded_dim)).collect::<Vec<_>>()));
    }
    assert!(a && b && slice);
    assert!(verdicts.iter().all(|v| v.1 == Verdict::Mismatch));
    let c = verdicts.iter().all(|v| v.1 != Verdict::Mismatch);
    let summary: Vec<String> = verdicts.iter().map(|(name, _, rows)| format!("{} (product, graded dim) {:?}", name, rows)).collect();
    vec![
        Line { id: "6a", met: a, detail: "Fock graded dimensions equal prod (1-q^s)^{-(n-1)} through degree 10, n = 2, 3".into() },
        Line { id: "6b", met: b, detail: "imaginary multiplicities (2,1), (4,1), (2,1,1)".into() },
        Line {
            id: "6c",
            met: c,
            detail: format!(
                "verdict mismatch through D = 6: neither the full character nor the graded dimension equals the product; \
                 the product equals the weight-zero slice of ch L(Lambda_0); {} ({:.1?})",
                summary.join("; "),
                t.elapsed()
            ),
        },
    ]
}

fn criterion_7() -> Line {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut triples = 0;
    let mut pairs = 0;
    for cfg in [a3(), GConfig::new(CartanType::A, 5), d4(), GConfig::new(CartanType::D, 5), GConfig::new(CartanType::A, 4)] {
        let tor = Toroidal::new(cfg, 2).unwrap();
        for _ in 0..200 {
            let x = tor.sample_homogeneous(&mut rng, 2);
            let y = tor.sample_homogeneous(&mut rng, 2);
            let z = tor.sample_homogeneous(&mut rng, 2);
            let mut s = tor.bracket(&x, &tor.bracket(&y, &z));
            s.add_assign(&tor.bracket(&y, &tor.bracket(&z, &x)));
            s.add_assign(&tor.bracket(&z, &tor.bracket(&x, &y)));
            assert!(s.is_zero());
            triples += 1;
        }
        if let Ok(a) = Autos::new(cfg, 2) {
            for (k, which) in [&a.psi0, &a.psi_theta].into_iter().enumerate() {
                let rep = a.verify_automorphism(which, "psi", 100, 40 + k as u64).unwrap();
                assert!(rep.ok());
                pairs += rep.checked;
            }
        }
    }
    // central canonical form: re-inserting a normal form is the identity and the Kähler relation vanishes
    let s = [2i64, -1, 1];
    let mut e = LieElement::zero();
    for (i, c) in [3i64, -2, 5].iter().enumerate() {
        e.add_central(&s, i, &Scalar::from_int(*c));
    }
    let mut again = LieElement::zero();
    for ((m, i), c) in &e.central {
        again.add_central(m, *i, c);
    }
    let mut kahler = LieElement::zero();
    for (i, si) in s.iter().enumerate() {
        kahler.add_central(&s, i, &Scalar::from_int(*si));
    }
    assert_eq!(again, e);
    assert!(kahler.is_zero());
    Line {
        id: "7",
        met: true,
        detail: format!("Jacobi on {} random triples, automorphisms on {} pairs, central normal form idempotent ({:.1?})", triples, pairs, t.elapsed()),
    }
}

#[test]
fn acceptance_criteria() {
    let mut lines = vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5()];
    lines.extend(criterion_6());
    lines.push(criterion_7());
    report(&lines);
    let not_met: Vec<&str> = lines.iter().filter(|l| !l.met).map(|l| l.id).collect();
    assert_eq!(not_met, vec!["1", "6c"]);
}
