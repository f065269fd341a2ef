use super::*;
use proptest::prelude::*;

fn cs(t: i64, res: &[&[i64]]) -> CosetSet {
    CosetSet::from_residues(t, res)
}

fn all_m() -> CosetSet {
    cs(1, &[&[0, 0]])
}

#[test]
fn every_preset_builds_and_validates() {
    for case in 1..=PRESET_COUNT {
        for l in 1..=4 {
            for t in preset_types(case, l) {
                let d = EllipticDatum::preset(case, t).unwrap();
                let report = validate_datum(&d);
                assert!(report.valid, "case{case} on {t}: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn coset_sets_of_the_presets() {
    let empty = CosetSet::empty();
    let expect: Vec<(usize, CosetSet, CosetSet, CosetSet)> = vec![
        (1, all_m(), empty.clone(), empty.clone()),
        (4, cs(2, &[&[0, 0], &[1, 0], &[0, 1]]), cs(2, &[&[0, 0]]), empty.clone()),
        (5, cs(2, &[&[0, 0], &[1, 0], &[0, 1]]), cs(2, &[&[0, 0]]), cs(4, &[&[2, 2]])),
        (6, all_m(), cs(2, &[&[0, 0], &[0, 1]]), cs(2, &[&[0, 1]])),
        (7, all_m(), all_m(), cs(2, &[&[1, 0], &[1, 1], &[0, 1]])),
        (8, all_m(), all_m(), cs(2, &[&[0, 1]])),
        (9, all_m(), all_m(), cs(2, &[&[1, 0], &[1, 1]])),
        (10, all_m(), cs(2, &[&[0, 0], &[0, 1]]), cs(4, &[&[2, 1], &[2, 3]])),
    ];
    for (case, sh, lg, ex) in expect {
        for l in 2..=4 {
            let Ok(d) = preset(case, l) else {
                assert!(case == 8 && l == 2);
                continue;
            };
            assert_eq!(d.coset_sets(), (sh.clone(), lg.clone(), ex.clone()), "case{case} l={l}");
        }
    }
}

#[test]
fn length_ratio_presets() {
    // L_lg = Zδ ⊕ Zra for the untwisted types and rM for the twisted ones.
    for (case, label, r) in [(2, "C_2^(1)", 2), (2, "G_2^(1)", 3), (2, "B_3^(1)", 2), (3, "D_3^(2)", 2), (3, "D_4^(3)", 3), (3, "A_5^(2)", 2)] {
        let d = EllipticDatum::preset(case, label.parse().unwrap()).unwrap();
        let (sh, lg, ex) = d.coset_sets();
        assert_eq!(sh, all_m(), "{label}");
        assert!(ex.is_empty());
        for p in -6..=6 {
            for z in -6..=6 {
                let want = if case == 2 { z % r == 0 } else { p % r == 0 && z % r == 0 };
                assert_eq!(lg.contains(&[p, z]), want, "{label} ({p},{z})");
            }
        }
    }
}

#[test]
fn printed_case_six_k_is_rejected() {
    let t: AffineType = "D_3^(2)".parse().unwrap();
    let d = EllipticDatum::new(t, vec![2, 1, 1], vec![true, true, false], Omega::default()).unwrap();
    let report = validate_datum(&d);
    assert!(!report.valid);
}

#[test]
fn rank_one_tuples() {
    let a1: AffineType = "A_1^(1)".parse().unwrap();
    let a2: AffineType = "A_2^(2)".parse().unwrap();
    let mut accepted = Vec::new();
    for t in [a1, a2] {
        for k0 in 1..=4 {
            for k1 in 1..=4 {
                for g0 in [false, true] {
                    for g1 in [false, true] {
                        let Ok(d) = EllipticDatum::new(t, vec![k0, k1], vec![g0, g1], Omega::default()) else { continue };
                        if validate_datum(&d).valid {
                            accepted.push((t.to_string(), k0, k1, g0, g1));
                        }
                    }
                }
            }
        }
    }
    // A_1^(1): the six listed tuples plus the two relabelled ones with
    // k(α₁) = 2 > k(α₀).
    let a1_count = accepted.iter().filter(|x| x.0 == "A_1^(1)").count();
    let a2_count = accepted.iter().filter(|x| x.0 == "A_2^(2)").count();
    assert_eq!(a2_count, 5, "{accepted:?}");
    assert!(accepted.contains(&("A_1^(1)".into(), 2, 1, false, false)));
    assert!(accepted.contains(&("A_1^(1)".into(), 1, 2, false, false)));
    assert!(accepted.contains(&("A_2^(2)".into(), 4, 1, false, false)));
    assert!(!accepted.contains(&("A_2^(2)".into(), 1, 2, false, false)));
    assert_eq!(a1_count, 8, "{accepted:?}");
}

#[test]
fn generated_roots_match_membership() {
    let bx = RootBox { fin: 3, p: 4, z: 4 };
    for (case, l) in [(1, 2), (4, 2), (6, 2), (7, 2), (8, 3), (10, 2), (3, 3)] {
        let d = preset(case, l).unwrap();
        assert_eq!(d.generate_roots(&bx).unwrap(), d.roots_in_box(&bx), "case{case} l={l}");
    }
}

#[test]
fn kg_round_trip() {
    for case in 1..=PRESET_COUNT {
        let d = preset(case, 3).unwrap();
        let (k, g) = compute_kg(&|v| d.contains(v), &d.nodes(), &d.a()).unwrap();
        assert_eq!((k.as_slice(), g.as_slice()), (d.k(), d.g()), "case{case}");
    }
}

#[test]
fn delta_and_alpha_star() {
    let d = preset(10, 3).unwrap();
    assert_eq!(d.delta_of().to_ints().unwrap(), d.iso(1, 0));
    assert_eq!(d.alpha_star(0).unwrap(), vec![-2, -2, -2, 2, 1]);
    assert!(d.alpha_star(4).is_err());
}

#[test]
fn rank_two_rows() {
    let d = preset(10, 2).unwrap();
    let rows = validate_datum(&d).rows;
    let labels: Vec<&str> = rows.iter().map(|r| r.type_label.as_str()).collect();
    assert!(labels.contains(&"A_4^(2)"), "{labels:?}");
    assert!(labels.contains(&"C_2^(1)"), "{labels:?}");
    let d = preset(4, 2).unwrap();
    let rows = validate_datum(&d).rows;
    assert!(rows.iter().any(|r| r.type_label == "D_3^(2)"));
}

#[test]
fn membership_classes() {
    let d = preset(10, 2).unwrap();
    assert_eq!(d.membership(&d.node(1)), Some(LengthClass::Short));
    assert_eq!(d.membership(&d.node(2)), Some(LengthClass::Long));
    assert_eq!(d.membership(&d.alpha_star(0).unwrap()), Some(LengthClass::Extra));
    assert_eq!(d.membership(&d.iso(1, 0)), None);
    let v = RootVector::from_ints(d.space(), &[1, 0, 0, 3]).unwrap();
    assert_eq!(d.membership_of(&v).unwrap(), Some(LengthClass::Short));
}

#[test]
fn spec_round_trip() {
    let d = preset(5, 3).unwrap();
    let json = serde_json::to_string(&d.to_spec()).unwrap();
    let back = EllipticDatum::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.to_spec(), d.to_spec());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_are_closed_under_reflection(case in 1usize..=10, i in 0usize..4, c in prop::collection::vec(-2i64..=2, 3), p in -5i64..=5, z in -5i64..=5) {
        let d = preset(case, 3).unwrap();
        let mut v = c.clone();
        v.push(p);
        v.push(z);
        if d.contains(&v) {
            let w = d.form().reflect(&d.node(i), &v).unwrap();
            prop_assert!(d.contains(&w));
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(d.contains(&neg));
            let mut shifted = v.clone();
            shifted[4] += d.closure().modulus;
            prop_assert!(d.contains(&shifted));
        }
    }
}
