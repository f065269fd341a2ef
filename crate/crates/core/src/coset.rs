//! Coset closure: root systems of the form `⋃ (finite root + subset of an
//! isotropic lattice)` are represented by, for each finite root, a set of
//! residues of the isotropic lattice modulo `t`. The closure of seed data
//! under reflections is a fixpoint over this finite state space.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::core_lattice::Form;
use crate::error::{Error, Result};

/// Default upper bound on the closure modulus.
pub const DEFAULT_MAX_MODULUS: i64 = 16;

/// Environment variable overriding [`DEFAULT_MAX_MODULUS`].
pub const MAX_MODULUS_ENV: &str = "ROOTSPAN_MAX_MODULUS";

/// The effective modulus cap (environment override or default).
pub fn max_modulus() -> i64 {
    std::env::var(MAX_MODULUS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<i64>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(DEFAULT_MAX_MODULUS)
}

/// A root `φ + μ` used as a reflection generator: `fin` is the finite part
/// `φ` and `iso` the isotropic part `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub fin: Vec<i64>,
    pub iso: Vec<i64>,
}

/// Seed data: the roots `fin + offset + j·step` for all integers `j`
/// (odd `j` only when `odd_only`). A zero step gives a single root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub fin: Vec<i64>,
    pub offset: Vec<i64>,
    pub step: Vec<i64>,
    pub odd_only: bool,
}

impl Seed {
    /// A single root.
    pub fn point(fin: Vec<i64>, offset: Vec<i64>) -> Self {
        let step = vec![0; offset.len()];
        Seed { fin, offset, step, odd_only: false }
    }

    fn residues(&self, t: i64) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for j in 0..2 * t {
            if self.odd_only && j % 2 == 0 {
                continue;
            }
            out.insert(self.offset.iter().zip(&self.step).map(|(o, s)| (o + j * s).rem_euclid(t)).collect());
        }
        out
    }
}

/// A finite union of cosets of `t·M` in `M = Z^d` (`d` = 1 or 2), stored
/// canonically with the minimal modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetSet {
    pub modulus: i64,
    pub cosets: BTreeSet<Vec<i64>>,
}

impl CosetSet {
    /// Canonical form of a residue set modulo `t`.
    pub fn canonical(t: i64, residues: &BTreeSet<Vec<i64>>, dim: usize) -> Self {
        for d in 1..=t {
            if t % d != 0 {
                continue;
            }
            let reduced: BTreeSet<Vec<i64>> =
                residues.iter().map(|r| r.iter().map(|x| x.rem_euclid(d)).collect()).collect();
            let blowup = ((t / d) as usize).pow(dim as u32);
            if reduced.len() * blowup == residues.len() {
                return CosetSet { modulus: d, cosets: reduced };
            }
        }
        CosetSet { modulus: t, cosets: residues.clone() }
    }

    /// The empty set.
    pub fn empty() -> Self {
        CosetSet { modulus: 1, cosets: BTreeSet::new() }
    }

    /// Membership of a lattice point.
    pub fn contains(&self, p: &[i64]) -> bool {
        let r: Vec<i64> = p.iter().map(|x| x.rem_euclid(self.modulus)).collect();
        self.cosets.contains(&r)
    }

    /// True for the empty set.
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Builds a set from explicit representatives modulo `t`.
    pub fn from_residues(t: i64, residues: &[&[i64]]) -> Self {
        let dim = residues.first().map_or(1, |r| r.len());
        let set: BTreeSet<Vec<i64>> =
            residues.iter().map(|r| r.iter().map(|x| x.rem_euclid(t)).collect()).collect();
        Self::canonical(t, &set, dim)
    }
}

impl fmt::Display for CosetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cosets.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .cosets
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "{{{}}}+{}M", parts.join(", "), self.modulus)
    }
}

/// Result of a closure: residue sets modulo `modulus` per finite root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub modulus: i64,
    pub iso_dim: usize,
    pub table: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>>,
}

impl Closure {
    /// Membership of `fin + iso`.
    pub fn contains(&self, fin: &[i64], iso: &[i64]) -> bool {
        self.table.get(fin).map_or(false, |s| {
            let r: Vec<i64> = iso.iter().map(|x| x.rem_euclid(self.modulus)).collect();
            s.contains(&r)
        })
    }

    /// Canonical coset set attached to a finite root (empty if absent).
    pub fn coset_set(&self, fin: &[i64]) -> CosetSet {
        self.table
            .get(fin)
            .map_or_else(CosetSet::empty, |s| CosetSet::canonical(self.modulus, s, self.iso_dim))
    }
}

/// Closure of the seeds under the generators with all isotropic parts
/// reduced modulo `t`.
pub fn close(form: &Form, gens: &[Generator], seeds: &[Seed], t: i64) -> Result<Closure> {
    let iso_dim = gens.first().map(|g| g.iso.len()).or_else(|| seeds.first().map(|s| s.offset.len())).unwrap_or(1);
    let mut table: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        for r in s.residues(t) {
            if table.entry(s.fin.clone()).or_default().insert(r.clone()) {
                queue.push_back((s.fin.clone(), r));
            }
        }
    }
    while let Some((psi, nu)) = queue.pop_front() {
        for g in gens {
            let c = form
                .coroot_pair(&g.fin, &psi)
                .ok_or_else(|| Error::InvalidDatum(format!("non-integral pairing of {:?} with {psi:?}", g.fin)))?;
            let fin: Vec<i64> = psi.iter().zip(&g.fin).map(|(p, f)| p - c * f).collect();
            let iso: Vec<i64> = nu.iter().zip(&g.iso).map(|(n, m)| (n - c * m).rem_euclid(t)).collect();
            if table.entry(fin.clone()).or_default().insert(iso.clone()) {
                queue.push_back((fin, iso));
            }
        }
    }
    Ok(Closure { modulus: t, iso_dim, table })
}

/// True when the closure modulo `2t` is exactly the preimage of the closure
/// modulo `t`, i.e. the represented set is `t`-periodic.
fn is_stable(coarse: &Closure, fine: &Closure) -> bool {
    if coarse.table.len() != fine.table.len() {
        return false;
    }
    let blowup = 1usize << coarse.iso_dim;
    fine.table.iter().all(|(fin, set)| {
        let Some(c) = coarse.table.get(fin) else { return false };
        let reduced: BTreeSet<Vec<i64>> =
            set.iter().map(|r| r.iter().map(|x| x.rem_euclid(coarse.modulus)).collect()).collect();
        reduced == *c && set.len() == c.len() * blowup
    })
}

/// Closure with automatic modulus refinement: starting at `t0`, the modulus
/// is doubled until the closure is stable under refinement, up to `cap`.
pub fn close_stable(form: &Form, gens: &[Generator], seeds: &[Seed], t0: i64, cap: i64) -> Result<Closure> {
    let mut t = t0.max(1);
    while t <= cap {
        let coarse = close(form, gens, seeds, t)?;
        let fine = close(form, gens, seeds, 2 * t)?;
        if is_stable(&coarse, &fine) {
            return Ok(coarse);
        }
        t *= 2;
    }
    Err(Error::NoConvergence(cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reduces_modulus() {
        let all: BTreeSet<Vec<i64>> = (0..4).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
        assert_eq!(CosetSet::canonical(4, &all, 2).modulus, 1);
        let even_first: BTreeSet<Vec<i64>> =
            (0..4).flat_map(|a| (0..4).map(move |b| vec![a, b])).filter(|v| v[0] % 2 == 0).collect();
        let c = CosetSet::canonical(4, &even_first, 2);
        assert_eq!(c.modulus, 2);
        assert_eq!(c.cosets.len(), 2);
        assert!(c.contains(&[6, -3]));
        assert!(!c.contains(&[1, 0]));
    }

    #[test]
    fn affine_a1_closure() {
        // A1^(1): generators α₁ and δ − α₁ generate ±α₁ + Zδ.
        let form = Form::new(vec![vec![2]]);
        let gens = vec![Generator { fin: vec![1], iso: vec![0] }, Generator { fin: vec![-1], iso: vec![1] }];
        let seeds: Vec<Seed> = gens.iter().map(|g| Seed::point(g.fin.clone(), g.iso.clone())).collect();
        let c = close_stable(&form, &gens, &seeds, 2, 16).unwrap();
        assert_eq!(c.coset_set(&[1]).modulus, 1);
        assert_eq!(c.coset_set(&[-1]).modulus, 1);
        assert!(c.contains(&[1], &[17]));
        assert!(!c.contains(&[2], &[0]));
    }

    #[test]
    fn seed_residues_respect_parity() {
        let s = Seed { fin: vec![2], offset: vec![0, 0], step: vec![0, 1], odd_only: true };
        let r = s.residues(4);
        assert_eq!(r, [vec![0, 1], vec![0, 3]].into_iter().collect());
    }

    #[test]
    fn display_lists_cosets() {
        let c = CosetSet::from_residues(4, &[&[2, 1], &[2, 3]]);
        assert_eq!(c.to_string(), "{(2,1), (2,3)}+4M");
        assert_eq!(CosetSet::empty().to_string(), "∅");
    }
}
