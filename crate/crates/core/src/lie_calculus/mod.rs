//! Symbolic calculus in the rank-two algebra generated by `E₁, E₂, F₁, F₂`
//! and `h_γ`: straightening into the normal order `F* h* E*`, the bracket
//! identities of the `sl₂`-reflection, and the Serre-type relations of
//! elliptic Lie algebras as homogeneous data.

mod serre;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Rational};

pub use serre::{encode_serre, homogeneity_check, x_mu_nu, AdChain, Gen, SerreRelation, Term};

/// Generators; the derived order `F < h < E` (then by index) is the
/// normal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    /// `F_{i+1}`.
    F(u8),
    /// `h_{γ_{i+1}∨}`.
    H(u8),
    /// `E_{i+1}`.
    E(u8),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::F(i) => write!(f, "F{}", i + 1),
            Letter::H(i) => write!(f, "h{}", i + 1),
            Letter::E(i) => write!(f, "E{}", i + 1),
        }
    }
}

/// A linear combination of words with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord {
    terms: BTreeMap<Vec<Letter>, Rational>,
}

impl FreeWord {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single word with coefficient 1.
    pub fn word(letters: &[Letter]) -> Self {
        Self::term(letters.to_vec(), q(1))
    }

    /// A single letter.
    pub fn letter(l: Letter) -> Self {
        Self::word(&[l])
    }

    /// `c · word`.
    pub fn term(letters: Vec<Letter>, c: Rational) -> Self {
        let mut w = Self::zero();
        w.add_term(letters, c);
        w
    }

    fn add_term(&mut self, letters: Vec<Letter>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(letters).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms, keyed by word.
    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, Rational> {
        &self.terms
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// `c · self`.
    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Commutator `xy − yx` (unreduced).
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// True when every word consists of h-letters only.
    pub fn is_in_h_span(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|l| matches!(l, Letter::H(_))))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    word.join("·")
                } else {
                    format!("({c})·{}", word.join("·"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The 2×2 matrix of values `(γᵢ, γⱼ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub gram: [[i64; 2]; 2],
}

impl Pairing {
    /// Validates symmetry and non-isotropy of γ₁, γ₂.
    pub fn new(gram: [[i64; 2]; 2]) -> Result<Self> {
        if gram[0][1] != gram[1][0] {
            return Err(Error::Dimension("pairing matrix must be symmetric".into()));
        }
        if gram[0][0] == 0 || gram[1][1] == 0 {
            return Err(Error::Isotropic("γ₁ and γ₂ must be non-isotropic".into()));
        }
        Ok(Pairing { gram })
    }

    /// The pairing of an adjacent pair with `(α∨, β) = c`, `(β∨, α) = −1`,
    /// `(α, α) = 2`, with γ₁ = `scale·α` and γ₂ = β.
    pub fn of_row(c: i64, scale: i64) -> Self {
        Pairing { gram: [[2 * scale * scale, scale * c], [scale * c, -2 * c]] }
    }

    /// `(γᵢ∨, γⱼ) = 2(γᵢ, γⱼ)/(γᵢ, γᵢ)`.
    pub fn cartan(&self, i: usize, j: usize) -> Rational {
        linalg::qf(2 * self.gram[i][j], self.gram[i][i])
    }
}

/// The algebra of the lemma, optionally with the nilpotency relations
/// `ad(E₁)^r(E₂) = ad(F₁)^r(F₂) = 0` adjoined.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub pairing: Pairing,
    pub nilpotency: Option<u32>,
}

/// Choice of the next reduction site, for exercising confluence.
pub enum Strategy<'a> {
    Leftmost,
    Rightmost,
    Custom(&'a mut dyn FnMut(usize) -> usize),
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut r = q(1);
    for i in 0..k {
        r = r * q(i64::from(n - i)) / q(i64::from(i + 1));
    }
    r
}

fn factorial(n: i64) -> Rational {
    (1..=n).fold(q(1), |acc, i| acc * q(i))
}

impl Algebra {
    pub fn new(pairing: Pairing) -> Self {
        Algebra { pairing, nilpotency: None }
    }

    /// The algebra with `ad(E₁)^r(E₂) = ad(F₁)^r(F₂) = 0` adjoined.
    pub fn with_nilpotency(pairing: Pairing, r: u32) -> Self {
        Algebra { pairing, nilpotency: Some(r) }
    }

    /// Rewrites of the pair at `p..p+2`, or `None` when it is in order.
    fn rewrite_pair(&self, w: &[Letter], p: usize) -> Option<Vec<(Vec<Letter>, Rational)>> {
        let splice = |mid: &[Letter]| -> Vec<Letter> {
            let mut v = w[..p].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[p + 2..]);
            v
        };
        use Letter::*;
        match (w[p], w[p + 1]) {
            (E(i), F(j)) => {
                let mut out = vec![(splice(&[F(j), E(i)]), q(1))];
                if i == j {
                    out.push((splice(&[H(i)]), q(1)));
                }
                Some(out)
            }
            (E(i), H(j)) => {
                let a = self.pairing.cartan(j as usize, i as usize);
                Some(vec![(splice(&[H(j), E(i)]), q(1)), (splice(&[E(i)]), -a)])
            }
            (H(j), F(i)) => {
                let a = self.pairing.cartan(j as usize, i as usize);
                Some(vec![(splice(&[F(i), H(j)]), q(1)), (splice(&[F(i)]), -a)])
            }
            (H(1), H(0)) => Some(vec![(splice(&[H(0), H(1)]), q(1))]),
            _ => None,
        }
    }

    /// Rewrites of an occurrence of `X₁^r X₂` in a normal word by the
    /// nilpotency relation, or `None`.
    fn rewrite_nilpotent(&self, w: &[Letter]) -> Option<Vec<(Vec<Letter>, Rational)>> {
        let r = self.nilpotency? as usize;
        for start in 0..w.len().saturating_sub(r) {
            let pattern = |one: Letter, two: Letter| w[start..start + r].iter().all(|&x| x == one) && w[start + r] == two;
            let (one, two) = if pattern(Letter::E(0), Letter::E(1)) {
                (Letter::E(0), Letter::E(1))
            } else if pattern(Letter::F(0), Letter::F(1)) {
                (Letter::F(0), Letter::F(1))
            } else {
                continue;
            };
            // X₁^r X₂ = −Σ_{j≥1} (−1)^j C(r,j) X₁^{r−j} X₂ X₁^j.
            let mut out = Vec::new();
            for j in 1..=r {
                let mut v = w[..start].to_vec();
                v.extend(std::iter::repeat(one).take(r - j));
                v.push(two);
                v.extend(std::iter::repeat(one).take(j));
                v.extend_from_slice(&w[start + r + 1..]);
                let sign = if j % 2 == 0 { q(-1) } else { q(1) };
                out.push((v, sign * binomial(r as u32, j as u32)));
            }
            return Some(out);
        }
        None
    }

    /// Normal form with the given choice of reduction sites.
    pub fn straighten_with(&self, w: &FreeWord, strategy: &mut Strategy<'_>) -> FreeWord {
        let mut result = FreeWord::zero();
        let mut pending: Vec<(Vec<Letter>, Rational)> = w.terms.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        while let Some((word, c)) = pending.pop() {
            let sites: Vec<usize> = (0..word.len().saturating_sub(1))
                .filter(|&p| self.rewrite_pair(&word, p).is_some())
                .collect();
            let rewrites = if sites.is_empty() {
                self.rewrite_nilpotent(&word)
            } else {
                let k = match strategy {
                    Strategy::Leftmost => 0,
                    Strategy::Rightmost => sites.len() - 1,
                    Strategy::Custom(f) => f(sites.len()) % sites.len(),
                };
                self.rewrite_pair(&word, sites[k])
            };
            match rewrites {
                None => result.add_term(word, c),
                Some(rs) => pending.extend(rs.into_iter().map(|(v, x)| (v, x * &c))),
            }
        }
        result
    }

    /// Normal form in the order `F* h* E*`.
    pub fn straighten(&self, w: &FreeWord) -> FreeWord {
        self.straighten_with(w, &mut Strategy::Leftmost)
    }

    /// Normal form of `[x, y]`.
    pub fn bracket(&self, x: &FreeWord, y: &FreeWord) -> FreeWord {
        self.straighten(&x.commutator(y))
    }

    /// Normal form of `ad(x)^n(y)`.
    pub fn ad_pow(&self, x: &FreeWord, n: u32, y: &FreeWord) -> FreeWord {
        (0..n).fold(self.straighten(y), |acc, _| self.bracket(x, &acc))
    }

    /// `exp(sign·ad x)(y)`, truncated once the powers vanish.
    pub fn exp_ad(&self, x: &FreeWord, sign: i64, y: &FreeWord, cap: u32) -> Result<FreeWord> {
        let mut total = FreeWord::zero();
        let mut cur = self.straighten(y);
        for j in 0..=cap {
            if cur.is_zero() {
                return Ok(total);
            }
            total = total.add(&cur.scale(&(q(1) / factorial(i64::from(j)))));
            cur = self.bracket(x, &cur).scale(&q(sign));
        }
        Err(Error::Assertion(format!("exp(ad) did not truncate within {cap} terms")))
    }

    /// `n̄ = exp(ad E₁) exp(−ad F₁) exp(ad E₁)` applied to `y`.
    pub fn n_bar(&self, y: &FreeWord) -> Result<FreeWord> {
        let r = self.nilpotency.ok_or_else(|| Error::Assertion("n̄ needs the nilpotency relations".into()))?;
        let cap = 4 * r + 8;
        let e1 = FreeWord::letter(Letter::E(0));
        let f1 = FreeWord::letter(Letter::F(0));
        let a = self.exp_ad(&e1, 1, y, cap)?;
        let b = self.exp_ad(&f1, -1, &a, cap)?;
        self.exp_ad(&e1, 1, &b, cap)
    }
}

/// Both sides of `[ad(E₁)^k(E₂), ad(F₁)^k(F₂)] = k!·∏_{m=1}^{k−1}((γ₁∨,γ₂)+m)·
/// (k(γ₁,γ₂∨)h_{γ₁∨} + (γ₁∨,γ₂)h_{γ₂∨})`, as normal forms.
pub fn adfone_sides(pairing: &Pairing, k: u32) -> (FreeWord, FreeWord) {
    let alg = Algebra::new(pairing.clone());
    let e = alg.ad_pow(&FreeWord::letter(Letter::E(0)), k, &FreeWord::letter(Letter::E(1)));
    let f = alg.ad_pow(&FreeWord::letter(Letter::F(0)), k, &FreeWord::letter(Letter::F(1)));
    let lhs = alg.bracket(&e, &f);
    let a12 = pairing.cartan(0, 1);
    let a21 = pairing.cartan(1, 0);
    let mut coeff = factorial(i64::from(k));
    for m in 1..k {
        coeff *= &a12 + q(i64::from(m));
    }
    let h = FreeWord::term(vec![Letter::H(0)], q(i64::from(k)) * a21).add(&FreeWord::term(vec![Letter::H(1)], a12));
    (lhs, h.scale(&coeff))
}

/// Checks the first bracket identity for the given pairing and `k ≥ 1`.
pub fn verify_adfone(pairing: &Pairing, k: u32) -> bool {
    let (lhs, rhs) = adfone_sides(pairing, k);
    lhs.is_in_h_span() && lhs == rhs
}

/// Outcome of [`verify_adftwo`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdfTwoReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Checks the reflection identities for `n̄` at index `i` (`0 ≤ i ≤ −m`,
/// `m = (γ₁∨, γ₂) ≤ 0`) with the nilpotency relations of order `1 − m`.
///
/// `n̄` exchanges `E₁` and `F₁` up to sign: `n̄(E₁) = −F₁`, `n̄(F₁) = −E₁`.
pub fn verify_adftwo(pairing: &Pairing, i: u32) -> Result<AdfTwoReport> {
    let m = linalg::as_i64(&pairing.cartan(0, 1))
        .filter(|m| *m <= 0)
        .ok_or_else(|| Error::InvalidDatum("(γ₁∨, γ₂) must be a non-positive integer".into()))?;
    let top = (-m) as u32;
    if i > top {
        return Err(Error::InvalidDatum(format!("i = {i} exceeds −m = {top}")));
    }
    let alg = Algebra::with_nilpotency(pairing.clone(), top + 1);
    let free = Algebra::new(pairing.clone());
    let (e1, e2) = (FreeWord::letter(Letter::E(0)), FreeWord::letter(Letter::E(1)));
    let (f1, f2) = (FreeWord::letter(Letter::F(0)), FreeWord::letter(Letter::F(1)));
    let mut failures = Vec::new();
    fn expect_eq(failures: &mut Vec<String>, name: &str, got: FreeWord, want: FreeWord) {
        if got != want {
            failures.push(format!("{name}: got {got}, expected {want}"));
        }
    }
    expect_eq(&mut failures, "ad(E1)^(1-m)(E2)", alg.ad_pow(&e1, top + 1, &e2), FreeWord::zero());
    expect_eq(&mut failures, "ad(F1)^(1-m)(F2)", alg.ad_pow(&f1, top + 1, &f2), FreeWord::zero());
    if alg.ad_pow(&e1, top, &e2).is_zero() || free.ad_pow(&e1, top + 1, &e2).is_zero() {
        failures.push("the nilpotency order 1 − m is not tight".into());
    }
    for j in 0..2u8 {
        let h = FreeWord::letter(Letter::H(j));
        let want = h.sub(&FreeWord::term(vec![Letter::H(0)], pairing.cartan(j as usize, 0)));
        expect_eq(&mut failures, &format!("n(h{})", j + 1), alg.n_bar(&h)?, want);
    }
    expect_eq(&mut failures, "n(E1)", alg.n_bar(&e1)?, f1.scale(&q(-1)));
    expect_eq(&mut failures, "n(F1)", alg.n_bar(&f1)?, e1.scale(&q(-1)));
    let i64i = i64::from(i);
    let coeff = factorial(i64i) / factorial(-m - i64i);
    let sign_e = if i % 2 == 0 { q(1) } else { q(-1) };
    let sign_f = if (m - i64i).rem_euclid(2) == 0 { q(1) } else { q(-1) };
    let target_e = alg.ad_pow(&e1, top - i, &e2);
    let target_f = alg.ad_pow(&f1, top - i, &f2);
    if target_e.is_zero() || target_f.is_zero() {
        failures.push(format!("ad(X1)^(-m-{i})(X2) vanishes"));
    }
    expect_eq(&mut failures, &format!("n(ad(E1)^{i} E2)"), alg.n_bar(&alg.ad_pow(&e1, i, &e2))?, target_e.scale(&(sign_e * &coeff)));
    expect_eq(&mut failures, &format!("n(ad(F1)^{i} F2)"), alg.n_bar(&alg.ad_pow(&f1, i, &f2))?, target_f.scale(&(sign_f * &coeff)));
    Ok(AdfTwoReport { holds: failures.is_empty(), failures })
}

/// The pairings of the six rank-two rows (γ₁ = c(α)α, γ₂ = β).
pub fn row_pairings() -> Vec<(&'static str, Pairing)> {
    vec![
        ("A_2^(1)", Pairing::of_row(-1, 1)),
        ("C_2^(1)", Pairing::of_row(-2, 1)),
        ("G_2^(1)", Pairing::of_row(-3, 1)),
        ("D_3^(2)", Pairing::of_row(-2, 1)),
        ("D_4^(3)", Pairing::of_row(-3, 1)),
        ("A_4^(2)", Pairing::of_row(-2, 2)),
    ]
}

#[cfg(test)]
mod tests;
