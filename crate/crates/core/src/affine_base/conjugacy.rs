//! Conjugacy of bases: any two bases satisfy `Π₂ = ε·w(Π₁)` with
//! `w ∈ W_{Π₁}`; the word is found by descent on the number of positive
//! roots made negative.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::algorithm::AffineDatum;

/// Result of [`conjugate_bases`]: `sign·s_{w[0]}⋯s_{w[k−1]}(Π₁) = Π₂` as sets,
/// with word letters indexing Π₁.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjugacy {
    pub sign: i64,
    pub word: Vec<usize>,
    /// The initial count m(Π₁, Π₂).
    pub m: usize,
}

fn coefficient_sum(base: &[Vec<i64>], v: &[i64]) -> Result<i64> {
    Ok(AffineDatum::base_coefficients(base, v)?.iter().sum())
}

/// The number of roots in `(R ∩ Z₊Π₁) ∖ 2R` with negative height relative
/// to `Π₂` (which must satisfy `h(δ′) > 0`).
pub fn descent_count(datum: &AffineDatum, pi1: &[Vec<i64>], pi2: &[Vec<i64>]) -> Result<usize> {
    let l = datum.l();
    let rp = datum.build_rprime()?;
    let delta = {
        let mut d = vec![0; l + 1];
        d[l] = 1;
        d
    };
    let h_delta = coefficient_sum(pi2, &delta)?;
    if h_delta <= 0 {
        return Err(Error::Ordering("h(δ′) must be positive".into()));
    }
    let lift = |mu: &[i64], n: i64| mu.iter().copied().chain([n]).collect::<Vec<i64>>();
    let mut max_h = 0;
    for mu in rp.roots() {
        max_h = max_h.max(coefficient_sum(pi2, &lift(mu, 0))?.abs());
    }
    let cap = (max_h + h_delta - 1) / h_delta + 1;
    let mut count = 0;
    for n in 0..=cap {
        for mu in rp.roots() {
            let beta = lift(mu, n);
            if !datum.contains(&beta) {
                continue;
            }
            if AffineDatum::base_coefficients(pi1, &beta)?.iter().any(|&c| c < 0) {
                continue;
            }
            let halved = beta.iter().all(|x| x % 2 == 0) && datum.contains(&beta.iter().map(|x| x / 2).collect::<Vec<_>>());
            if halved {
                continue;
            }
            if coefficient_sum(pi2, &beta)? < 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Finds `ε` and a reflection word with `ε·w(Π₁) = Π₂`.
pub fn conjugate_bases(datum: &AffineDatum, pi1: &[Vec<i64>], pi2: &[Vec<i64>]) -> Result<Conjugacy> {
    let l = datum.l();
    let n = l + 1;
    if pi2.len() != n || pi2.iter().any(|b| b.len() != n || !datum.contains(b)) {
        return Err(Error::NotABase("Π₂ must consist of l+1 roots".into()));
    }
    datum.check_base_on_window(pi2, 2)?;
    let mut delta = vec![0; n];
    delta[l] = 1;
    let h_delta = coefficient_sum(pi2, &delta)?;
    let sign = if h_delta > 0 { 1 } else { -1 };
    let mut current: Vec<Vec<i64>> = pi2.iter().map(|b| b.iter().map(|x| sign * x).collect()).collect();
    let m = descent_count(datum, pi1, &current)?;
    let target: BTreeSet<Vec<i64>> = pi1.iter().cloned().collect();
    let mut word = Vec::new();
    while current.iter().cloned().collect::<BTreeSet<_>>() != target {
        if word.len() > m {
            return Err(Error::Assertion(format!("descent exceeded m = {m}")));
        }
        let mut step = None;
        for (i, a) in pi1.iter().enumerate() {
            if coefficient_sum(&current, a)? < 0 {
                step = Some(i);
                break;
            }
        }
        let i = step.ok_or_else(|| Error::NotABase("no descent step although Π₂ ≠ Π₁".into()))?;
        current = current
            .iter()
            .map(|b| datum.form().reflect(&pi1[i], b).ok_or_else(|| Error::Assertion("non-integral reflection".into())))
            .collect::<Result<_>>()?;
        word.push(i);
    }
    // ε Π₂ = s_{i₁}(s_{i₂}(⋯ Π₁)): the descent applied the letters to Π₂ in order.
    if word.len() != m {
        return Err(Error::Assertion(format!("word length {} differs from m = {m}", word.len())));
    }
    Ok(Conjugacy { sign, word, m })
}

/// Applies `sign·s_{w[0]}⋯s_{w[k−1]}` to a list of vectors (letters index Π₁).
pub fn apply_word(datum: &AffineDatum, pi1: &[Vec<i64>], sign: i64, word: &[usize], vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| {
            let mut x = v.clone();
            for &i in word.iter().rev() {
                x = datum.form().reflect(&pi1[i], &x).expect("integral reflection");
            }
            x.iter().map(|c| sign * c).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::model::AffineModel;
    use super::*;
    use rand::{Rng, SeedableRng};

    fn setup(label: &str) -> (AffineDatum, Vec<Vec<i64>>) {
        let m = AffineModel::new(label.parse().unwrap()).unwrap();
        let d = m.datum().unwrap();
        let base = d.affine_base().unwrap().base;
        (d, base)
    }

    #[test]
    fn identity_and_negation() {
        let (d, b) = setup("A_2^(1)");
        let c = conjugate_bases(&d, &b, &b).unwrap();
        assert_eq!((c.sign, c.word.len()), (1, 0));
        let neg: Vec<Vec<i64>> = b.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let c = conjugate_bases(&d, &b, &neg).unwrap();
        assert_eq!((c.sign, c.word.len()), (-1, 0));
    }

    #[test]
    fn single_reflection() {
        let (d, b) = setup("C_2^(1)");
        let s0 = apply_word(&d, &b, 1, &[0], &b);
        let c = conjugate_bases(&d, &b, &s0).unwrap();
        assert_eq!((c.sign, c.word.clone()), (1, vec![0]));
        assert_eq!(c.m, 1);
    }

    #[test]
    fn random_words_are_recovered() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for label in ["A_2^(1)", "C_2^(1)", "A_4^(2)"] {
            let (d, b) = setup(label);
            for _ in 0..10 {
                let len = rng.gen_range(0..=6);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..b.len())).collect();
                let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
                let pi2 = apply_word(&d, &b, eps, &w, &b);
                let c = conjugate_bases(&d, &b, &pi2).unwrap();
                assert_eq!(c.sign, eps);
                let back: BTreeSet<Vec<i64>> = apply_word(&d, &b, c.sign, &c.word, &b).into_iter().collect();
                assert_eq!(back, pi2.into_iter().collect::<BTreeSet<_>>());
                assert!(c.word.len() <= w.len());
            }
        }
    }

    #[test]
    fn rejects_non_base() {
        let (d, b) = setup("A_2^(1)");
        let mut bad = b.clone();
        bad[0] = b[1].clone();
        assert!(conjugate_bases(&d, &b, &bad).is_err());
    }
}
