//! Recovering k and g from a root set, the rank-two subsystems of adjacent
//! nodes, and validation of a datum against the classification.

use serde::{Deserialize, Serialize};

use crate::affine_base::{AffineFamily, AffineType};
use crate::error::{Error, Result};
use crate::finite_roots::FiniteType;

use super::EllipticDatum;

/// Largest step searched by [`compute_kg`].
const MAX_STEP: i64 = 64;

/// Recovers `k(α)` (least positive j with `α + ja ∈ R`) and `g(α)` (odd when
/// `2α + k(α)a ∈ R`) for each α of `pi`.
pub fn compute_kg(contains: &dyn Fn(&[i64]) -> bool, pi: &[Vec<i64>], a: &[i64]) -> Result<(Vec<i64>, Vec<bool>)> {
    let shift = |v: &[i64], c: i64, j: i64| -> Vec<i64> { v.iter().zip(a).map(|(x, y)| c * x + j * y).collect() };
    let mut ks = Vec::with_capacity(pi.len());
    let mut gs = Vec::with_capacity(pi.len());
    for alpha in pi {
        if !contains(alpha) {
            return Err(Error::NotARoot(format!("{alpha:?}")));
        }
        let k = (1..=MAX_STEP)
            .find(|&j| contains(&shift(alpha, 1, j)))
            .ok_or_else(|| Error::InvalidDatum(format!("no translate of {alpha:?} along the marking up to {MAX_STEP}")))?;
        ks.push(k);
        gs.push(contains(&shift(alpha, 2, k)));
    }
    Ok((ks, gs))
}

/// A row of the rank-two table for an adjacent pair with `(β∨, α) = −1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Row {
    /// Node indices of α and β.
    pub alpha: usize,
    pub beta: usize,
    /// `(α∨, β)`.
    pub pairing: i64,
    /// `k(β)/k(α)` as a reduced fraction.
    pub ratio: (i64, i64),
    /// `g(α)` is `2Z+1`.
    pub odd: bool,
    /// Type of the rank-two affine subsystem.
    pub type_label: String,
    /// The third base element γ.
    pub gamma: Vec<i64>,
}

/// The rank-two subsystem spanned by nodes `alpha`, `beta` (which must
/// satisfy `(β∨, α) = −1`), with its third base element γ.
pub fn rank2_subsystem(datum: &EllipticDatum, alpha: usize, beta: usize) -> Result<Rank2Row> {
    let l = datum.l();
    if alpha > l || beta > l || alpha == beta {
        return Err(Error::InvalidDatum(format!("nodes {alpha}, {beta} are not a pair of Π")));
    }
    if datum.gcm()[beta][alpha] != -1 {
        return Err(Error::InvalidDatum(format!("(β∨, α) ≠ −1 for nodes α = {alpha}, β = {beta}")));
    }
    let pairing = datum.gcm()[alpha][beta];
    let (ka, kb) = (datum.k()[alpha], datum.k()[beta]);
    let d = crate::linalg::gcd(ka, kb);
    let ratio = (kb / d, ka / d);
    let odd = datum.g()[alpha];
    if datum.g()[beta] {
        return Err(Error::InvalidDatum(format!("g(β) must be empty for nodes α = {alpha}, β = {beta}")));
    }
    let a = datum.node(alpha);
    let b = datum.node(beta);
    let a_star = datum.alpha_star(alpha)?;
    let b_star = datum.alpha_star(beta)?;
    let form = datum.form();
    let s = |v: &[i64], x: &[i64]| form.reflect(v, x).ok_or_else(|| Error::Assertion("non-integral reflection".into()));
    let (fam, gamma) = match (pairing, ratio, odd) {
        (-1, (1, 1), false) => (AffineFamily::Untwisted(FiniteType::A), s(&a, &b_star)?),
        (-2, (1, 1), false) => (AffineFamily::Untwisted(FiniteType::C), s(&a, &b_star)?),
        (-3, (1, 1), false) => (AffineFamily::Untwisted(FiniteType::G), s(&b, &s(&a, &b_star)?)?),
        (-2, (2, 1), false) => (AffineFamily::DTwisted, s(&b, &a_star)?),
        (-3, (3, 1), false) => (AffineFamily::DTriality, s(&a, &s(&b, &a_star)?)?),
        (-2, (1, 1), true) => (AffineFamily::AEvenTwisted, s(&b, &a_star)?),
        _ => {
            return Err(Error::InvalidDatum(format!(
                "nodes α = {alpha}, β = {beta}: ((α∨,β), k(β)/k(α), g(α)) = ({pairing}, {}/{}, {}) matches no rank-two row",
                ratio.0,
                ratio.1,
                if odd { "2Z+1" } else { "∅" }
            )))
        }
    };
    let gamma: Vec<i64> = gamma.iter().map(|x| -x).collect();
    if !datum.contains(&gamma) {
        return Err(Error::Assertion(format!("γ = {gamma:?} of nodes {alpha}, {beta} is not a root")));
    }
    let type_label = AffineType::new(fam, 2)?.to_string();
    Ok(Rank2Row { alpha, beta, pairing, ratio, odd, type_label, gamma })
}

/// Outcome of [`validate_datum`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Descriptions of the violated conditions.
    pub violations: Vec<String>,
    /// Rank-two rows of all adjacent pairs (l ≥ 2).
    pub rows: Vec<Rank2Row>,
}

/// The admissible rank-one tuples `((α₀∨, α₁), k(α₀), g(α₀), g(α₁))`.
const RANK_ONE: [(i64, i64, bool, bool); 11] = [
    (-2, 1, false, false),
    (-2, 1, false, true),
    (-2, 1, true, false),
    (-2, 1, true, true),
    (-2, 2, false, false),
    (-2, 2, true, false),
    (-1, 1, false, false),
    (-1, 1, false, true),
    (-1, 2, false, false),
    (-1, 2, false, true),
    (-1, 4, false, false),
];

/// Checks a datum against the classification of reduced fundamental-set
/// data and the structural requirements on its root system.
pub fn validate_datum(datum: &EllipticDatum) -> ValidationReport {
    let l = datum.l();
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    if !datum.is_reduced() {
        violations.push("R ∩ 2R is not empty".to_string());
    }
    if let Err(e) = datum.b_plus() {
        violations.push(format!("B₊ ⊄ R: {e}"));
    }
    match compute_kg(&|v| datum.contains(v), &datum.nodes(), &datum.a()) {
        Ok((k, g)) if k == datum.k() && g == datum.g() => {}
        Ok((k, g)) => violations.push(format!("the root system has k = {k:?}, g = {g:?} on Π")),
        Err(e) => violations.push(format!("k/g recovery failed: {e}")),
    }
    if l >= 2 {
        if !datum.k().contains(&1) {
            violations.push("1 ∉ k(Π)".to_string());
        }
        for beta in 0..=l {
            for alpha in 0..=l {
                if alpha != beta && datum.gcm()[beta][alpha] == -1 {
                    match rank2_subsystem(datum, alpha, beta) {
                        Ok(row) => rows.push(row),
                        Err(e) => violations.push(e.to_string()),
                    }
                }
            }
        }
    } else {
        // Normalize so that k(α₁) ≤ k(α₀) when π(α₀) is also a base.
        let both_bases = datum.gcm()[0][1] == -2;
        let (i0, i1) = if both_bases && datum.k()[1] > datum.k()[0] { (1, 0) } else { (0, 1) };
        let tuple = (datum.gcm()[i0][i1], datum.k()[i0], datum.g()[i0], datum.g()[i1]);
        if datum.k()[i1] != 1 {
            violations.push(format!("k(α₁) = {} ≠ 1", datum.k()[i1]));
        } else if !RANK_ONE.contains(&tuple) {
            violations.push(format!("rank-one tuple {tuple:?} is not admissible"));
        }
    }
    let expected: Vec<i64> = datum.node(0)[..=l].to_vec();
    match datum.projected_affine_datum([1, 0], [0, 1]).and_then(|a| a.affine_alpha0()) {
        Ok(alpha0) if alpha0 == expected => {}
        Ok(alpha0) => violations.push(format!("the affine quotient has α₀ = {alpha0:?}, expected {expected:?}")),
        Err(e) => violations.push(format!("the affine quotient fails the base checks: {e}")),
    }
    ValidationReport { valid: violations.is_empty(), violations, rows }
}

impl EllipticDatum {
    /// Builds the datum and fails unless it passes [`validate_datum`].
    pub fn validated(self) -> Result<Self> {
        let report = validate_datum(&self);
        if report.valid {
            Ok(self)
        } else {
            Err(Error::InvalidDatum(report.violations.join("; ")))
        }
    }
}
