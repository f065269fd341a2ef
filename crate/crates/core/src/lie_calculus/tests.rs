use super::*;
use crate::elliptic_core::{preset, PRESET_COUNT};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Letter::{E, F, H};

fn simply_laced() -> Algebra {
    Algebra::new(Pairing::of_row(-1, 1))
}

#[test]
fn straightening_examples() {
    let alg = simply_laced();
    assert_eq!(alg.straighten(&FreeWord::word(&[E(0), F(0)])), FreeWord::word(&[F(0), E(0)]).add(&FreeWord::letter(H(0))));
    assert_eq!(alg.straighten(&FreeWord::word(&[E(0), F(1)])), FreeWord::word(&[F(1), E(0)]));
    // [h_{γ₂∨}, E₁] = (γ₂∨, γ₁) E₁ = −E₁.
    let c = alg.bracket(&FreeWord::letter(H(1)), &FreeWord::letter(E(0)));
    assert_eq!(c, FreeWord::term(vec![E(0)], q(-1)));
    let c = alg.bracket(&FreeWord::letter(H(0)), &FreeWord::letter(F(0)));
    assert_eq!(c, FreeWord::term(vec![F(0)], q(-2)));
    assert!(alg.bracket(&FreeWord::letter(H(0)), &FreeWord::letter(H(1))).is_zero());
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> FreeWord {
    let letters = [F(0), F(1), H(0), H(1), E(0), E(1)];
    let w: Vec<Letter> = (0..len).map(|_| letters[rng.gen_range(0..6)]).collect();
    FreeWord::term(w, q(rng.gen_range(-3..=3)))
}

#[test]
fn straightening_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, pairing) in row_pairings() {
        for nil in [None, Some(2), Some(3)] {
            let alg = Algebra { pairing: pairing.clone(), nilpotency: nil };
            for _ in 0..40 {
                let len = rng.gen_range(0..=7);
                let w = random_word(&mut rng, len).add(&random_word(&mut rng, len));
                let left = alg.straighten_with(&w, &mut super::Strategy::Leftmost);
                let right = alg.straighten_with(&w, &mut super::Strategy::Rightmost);
                let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
                let mut pick = |n: usize| inner.gen_range(0..n);
                let random = alg.straighten_with(&w, &mut super::Strategy::Custom(&mut pick));
                assert_eq!(left, right, "{w}");
                assert_eq!(left, random, "{w}");
                assert_eq!(alg.straighten(&left), left, "idempotence");
            }
        }
    }
}

#[test]
fn adfone_closed_form() {
    // k = 1: (γ₁, γ₂∨)h₁ + (γ₁∨, γ₂)h₂.
    let p = Pairing::of_row(-3, 1);
    let (lhs, rhs) = adfone_sides(&p, 1);
    assert_eq!(lhs, FreeWord::term(vec![H(0)], q(-1)).add(&FreeWord::term(vec![H(1)], q(-3))));
    assert_eq!(lhs, rhs);
    // k = 2 with (γ₁∨, γ₂) = −1 vanishes.
    assert!(adfone_sides(&Pairing::of_row(-1, 1), 2).0.is_zero());
    // k = 3 with (γ₁∨, γ₂) = −3: 3!·(−2)(−1)·(3(γ₁,γ₂∨)h₁ − 3h₂) = 12·(−3h₁ − 3h₂).
    let (lhs, _) = adfone_sides(&p, 3);
    assert_eq!(lhs, FreeWord::term(vec![H(0)], q(-36)).add(&FreeWord::term(vec![H(1)], q(-36))));
    for (label, pairing) in row_pairings() {
        for k in 1..=4 {
            assert!(verify_adfone(&pairing, k), "{label} k={k}");
        }
    }
}

#[test]
fn adftwo_identities() {
    for m in [0, -1, -2, -3] {
        let pairing = Pairing::new([[2, m], [m, 2]]).unwrap();
        for i in 0..=(-m) as u32 {
            let report = verify_adftwo(&pairing, i).unwrap();
            assert!(report.holds, "m={m} i={i}: {:?}", report.failures);
        }
        assert!(verify_adftwo(&pairing, (-m) as u32 + 1).is_err());
    }
    for (label, pairing) in row_pairings() {
        let m = crate::linalg::as_i64(&pairing.cartan(0, 1)).unwrap();
        for i in 0..=(-m) as u32 {
            assert!(verify_adftwo(&pairing, i).unwrap().holds, "{label} i={i}");
        }
    }
    assert!(verify_adftwo(&Pairing::new([[2, 1], [1, 2]]).unwrap(), 0).is_err());
}

#[test]
fn n_bar_values() {
    let alg = Algebra::with_nilpotency(Pairing::new([[2, -2], [-2, 2]]).unwrap(), 3);
    let h1 = FreeWord::letter(H(0));
    assert_eq!(alg.n_bar(&h1).unwrap(), h1.scale(&q(-1)));
    let e2 = FreeWord::letter(E(1));
    let e1 = FreeWord::letter(E(0));
    assert_eq!(alg.n_bar(&e2).unwrap(), alg.ad_pow(&e1, 2, &e2).scale(&crate::linalg::qf(1, 2)));
    // n̄ sends E₁ to −F₁, not to −E₁.
    assert_eq!(alg.n_bar(&e1).unwrap(), FreeWord::letter(F(0)).scale(&q(-1)));
    let alg0 = Algebra::with_nilpotency(Pairing::new([[2, 0], [0, 2]]).unwrap(), 1);
    assert_eq!(alg0.n_bar(&e2).unwrap(), e2);
}

#[test]
fn nilpotency_is_tight() {
    let p = Pairing::of_row(-2, 1);
    let e1 = FreeWord::letter(E(0));
    let e2 = FreeWord::letter(E(1));
    let with = Algebra::with_nilpotency(p.clone(), 3);
    let without = Algebra::new(p);
    assert!(!with.ad_pow(&e1, 2, &e2).is_zero());
    assert!(with.ad_pow(&e1, 3, &e2).is_zero());
    assert!(!without.ad_pow(&e1, 3, &e2).is_zero());
}

#[test]
fn x_values() {
    let d = preset(2, 2).unwrap();
    let f = d.form();
    // C_2^(1): α₀ = long, α₁ short; (α₁∨, α₀) = −2.
    let pairs = [(d.node(1), d.node(0)), (d.node(0), d.node(1))];
    let xs: Vec<u32> = pairs.iter().map(|(a, b)| x_mu_nu(f, a, b).unwrap()).collect();
    assert_eq!(xs, vec![3, 2]);
    assert_eq!(x_mu_nu(f, &d.node(0), &d.node(2)).unwrap(), 1);
}

#[test]
fn serre_relations_are_homogeneous() {
    for case in 1..=PRESET_COUNT {
        let l = if case == 8 { 3 } else { 2 };
        let d = preset(case, l).unwrap();
        let rels = encode_serre(&d).unwrap();
        assert!(homogeneity_check(&rels), "case{case}");
        let n = 4 * (l + 1);
        let sr5 = rels.iter().filter(|r| r.label == "SR5").count();
        assert_eq!(sr5, n * (n - 2), "case{case}");
        assert_eq!(rels.iter().filter(|r| r.label == "SR4").count(), 2 * (l + 1));
    }
}

#[test]
fn simply_laced_counts() {
    let d = preset(1, 2).unwrap();
    let rels = encode_serre(&d).unwrap();
    let count = |s: &str| rels.iter().filter(|r| r.label == s).count();
    // A_2^(1): every ordered pair of distinct nodes is adjacent; ratio 1.
    assert_eq!((count("SR4"), count("SR5"), count("SR6"), count("SR7"), count("SR8"), count("SR9")), (6, 120, 6, 6, 0, 0));
    for r in rels.iter().filter(|r| r.label == "SR6") {
        assert_eq!(r.lhs[0].chain.degree(), r.rhs[0].chain.degree());
        assert_eq!(r.lhs[0].coeff, q(1));
    }
}

#[test]
fn corrupted_relation_is_caught() {
    let d = preset(4, 2).unwrap();
    let mut rels = encode_serre(&d).unwrap();
    let sr6 = rels.iter_mut().find(|r| r.label == "SR6").unwrap();
    sr6.rhs[0].chain.ops[0].1 += 1;
    assert!(!homogeneity_check(&rels));
}

#[test]
fn tuning_enters_sr6() {
    let mut d = preset(1, 2).unwrap().to_spec();
    d.omega.q = Some(5);
    let d = crate::elliptic_core::EllipticDatum::from_spec(&d).unwrap();
    let rels = encode_serre(&d).unwrap();
    let coeffs: Vec<String> = rels.iter().filter(|r| r.label == "SR6").map(|r| r.rhs[0].coeff.to_string()).collect();
    assert!(coeffs.contains(&"5".to_string()) && coeffs.contains(&"1/5".to_string()), "{coeffs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn straightening_is_linear_and_brackets_agree(a in prop::collection::vec(0usize..6, 0..5), b in prop::collection::vec(0usize..6, 0..5), c in -4i64..=4) {
        let letters = [F(0), F(1), H(0), H(1), E(0), E(1)];
        let x = FreeWord::word(&a.iter().map(|&i| letters[i]).collect::<Vec<_>>());
        let y = FreeWord::word(&b.iter().map(|&i| letters[i]).collect::<Vec<_>>());
        let alg = Algebra::new(Pairing::of_row(-2, 2));
        let lin = alg.straighten(&x.scale(&q(c)).add(&y));
        prop_assert_eq!(lin, alg.straighten(&x).scale(&q(c)).add(&alg.straighten(&y)));
        let xs = alg.straighten(&x);
        let ys = alg.straighten(&y);
        prop_assert_eq!(alg.bracket(&x, &y), alg.straighten(&xs.mul(&ys).sub(&ys.mul(&xs))));
    }
}
