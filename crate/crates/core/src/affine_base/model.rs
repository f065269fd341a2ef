//! Membership oracles for affine root systems and the standard models built
//! from the diagram tables.
//!
//! Coordinates are adapted to a finite base: a vector `(c₁, …, c_l, m)`
//! stands for `Σ cᵢαᵢ + mδ′`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core_lattice::Form;
use crate::coset::{self, Closure, Generator, Seed};
use crate::error::{Error, Result};
use crate::finite_roots::orbit_closure;
use crate::linalg::{self, Rational};

use super::types::{AffineType, LengthClass};

/// A decidable root set in adapted coordinates `(c₁, …, c_l, m)`.
pub trait RootOracle: Send + Sync {
    /// Membership of a lattice vector.
    fn contains(&self, v: &[i64]) -> bool;
}

impl<F: Fn(&[i64]) -> bool + Send + Sync> RootOracle for F {
    fn contains(&self, v: &[i64]) -> bool {
        self(v)
    }
}

/// Symmetrizes a generalized Cartan matrix: the integer Gram matrix `B` with
/// `a_ij = 2 b_ij / b_ii`, shortest squared length 2.
pub fn symmetrize(gcm: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = gcm.len();
    if n == 0 || gcm.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("GCM must be square and nonempty".into()));
    }
    let mut len: Vec<Option<Rational>> = vec![None; n];
    len[0] = Some(linalg::q(1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i == j || gcm[i][j] == 0 {
                continue;
            }
            if gcm[j][i] == 0 {
                return Err(Error::NotAffine(format!("asymmetric zero pattern at ({i},{j})")));
            }
            let lj = len[i].clone().unwrap() * linalg::qf(gcm[i][j], gcm[j][i]);
            match &len[j] {
                None => {
                    len[j] = Some(lj);
                    stack.push(j);
                }
                Some(existing) if *existing != lj => {
                    return Err(Error::NotAffine("GCM is not symmetrizable".into()));
                }
                Some(_) => {}
            }
        }
    }
    let len: Vec<Rational> = len
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::NotAffine("diagram is disconnected".into())))
        .collect::<Result<_>>()?;
    let min = len.iter().min().unwrap().clone();
    // Lengths relative to the shortest, times 2; entries b_ij = a_ij·L_i/2.
    let rel: Vec<Rational> = len.iter().map(|x| x / &min * linalg::q(2)).collect();
    let mut denom = num_bigint::BigInt::from(1);
    let mut entries = vec![vec![linalg::q(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = linalg::q(gcm[i][j]) * &rel[i] / linalg::q(2);
            denom = num_integer::Integer::lcm(&denom, entries[i][j].denom());
        }
    }
    let d = Rational::from_integer(denom);
    entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| linalg::as_i64(&(x * &d)).ok_or_else(|| Error::Dimension("Gram entry overflow".into())))
                .collect()
        })
        .collect()
}

/// Positive primitive integer null vector of an affine GCM (`A·d = 0`).
pub fn null_marks(gcm: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = gcm.len();
    let ker = linalg::kernel(&linalg::to_qmatrix(gcm), n);
    if ker.len() != 1 {
        return Err(Error::NotAffine(format!("corank {} instead of 1", ker.len())));
    }
    let prim = linalg::primitive_integer(&ker[0]);
    let mut d: Vec<i64> = prim
        .iter()
        .map(|x| i64::try_from(x.clone()).map_err(|_| Error::NotAffine("null vector overflow".into())))
        .collect::<Result<_>>()?;
    if d.iter().all(|&x| x < 0) {
        d.iter_mut().for_each(|x| *x = -*x);
    }
    if d.iter().any(|&x| x <= 0) {
        return Err(Error::NotAffine(format!("null vector {d:?} is not strictly positive")));
    }
    Ok(d)
}

/// Membership by coset closure of `Π ∪ 2·(black nodes)` under the simple
/// reflections, with the δ′-coordinate tracked modulo a stable period.
pub struct ClosureOracle {
    l: usize,
    closure: Closure,
}

impl ClosureOracle {
    /// Builds the oracle from a finite Gram matrix on Π′, the coordinates of
    /// α₀ and the black nodes (index 0 = α₀).
    pub fn new(finite_gram: &[Vec<i64>], alpha0: &[i64], black: &[bool]) -> Result<Self> {
        let l = finite_gram.len();
        let form = Form::new(finite_gram.to_vec());
        let mut nodes: Vec<Vec<i64>> = vec![alpha0.to_vec()];
        for i in 0..l {
            let mut e = vec![0; l + 1];
            e[i] = 1;
            nodes.push(e);
        }
        let gens: Vec<Generator> =
            nodes.iter().map(|v| Generator { fin: v[..l].to_vec(), iso: vec![v[l]] }).collect();
        let mut seeds: Vec<Seed> = nodes.iter().map(|v| Seed::point(v[..l].to_vec(), vec![v[l]])).collect();
        for (v, &b) in nodes.iter().zip(black) {
            if b {
                seeds.push(Seed::point(v[..l].iter().map(|x| 2 * x).collect(), vec![2 * v[l]]));
            }
        }
        // The initial period must absorb every Cartan integer (e.g. the
        // factor 3 of a triple bond), since refinement only doubles it.
        let full = Form::new(
            finite_gram.iter().map(|r| r.iter().copied().chain([0]).collect()).chain([vec![0; l + 1]]).collect(),
        );
        let mut t0 = 2;
        for a in &nodes {
            for b in &nodes {
                if let Some(c) = full.coroot_pair(a, b) {
                    if c != 0 {
                        t0 = linalg::lcm(t0, 2 * c.abs());
                    }
                }
            }
        }
        let closure = coset::close_stable(&form, &gens, &seeds, t0, coset::max_modulus().max(t0))?;
        Ok(ClosureOracle { l, closure })
    }

    /// The stable period of the δ′-coordinate.
    pub fn modulus(&self) -> i64 {
        self.closure.modulus
    }

    /// Finite parts of all roots.
    pub fn finite_parts(&self) -> Vec<Vec<i64>> {
        self.closure.table.keys().cloned().collect()
    }
}

impl RootOracle for ClosureOracle {
    fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.l + 1 && self.closure.contains(&v[..self.l], &v[self.l..])
    }
}

/// Membership from the standard description
/// `R = ⋃_class (Φ_class + progression·δ′)`.
pub struct ProgressionOracle {
    l: usize,
    classes: Vec<(BTreeSet<Vec<i64>>, super::types::Progression)>,
}

impl ProgressionOracle {
    /// Builds the model for a type in the diagram's finite coordinates.
    pub fn new(t: &AffineType, finite_gram: &[Vec<i64>]) -> Self {
        let l = t.l;
        let form = Form::new(finite_gram.to_vec());
        let base: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut e = vec![0; l];
                e[i] = 1;
                e
            })
            .collect();
        let phi = orbit_closure(&form, &base, &base);
        let min = phi.iter().map(|r| form.norm(r)).min().unwrap_or(0);
        let mut classes = Vec::new();
        for (class, prog) in t.progressions() {
            let set: BTreeSet<Vec<i64>> = match class {
                LengthClass::Short => phi.iter().filter(|r| form.norm(r) == min).cloned().collect(),
                LengthClass::Long => phi.iter().filter(|r| form.norm(r) != min).cloned().collect(),
                LengthClass::Extra => phi
                    .iter()
                    .filter(|r| form.norm(r) == min)
                    .map(|r| r.iter().map(|x| 2 * x).collect())
                    .collect(),
            };
            classes.push((set, prog));
        }
        ProgressionOracle { l, classes }
    }
}

impl RootOracle for ProgressionOracle {
    fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.l + 1 {
            return false;
        }
        let (fin, m) = (&v[..self.l], v[self.l]);
        self.classes.iter().any(|(set, prog)| set.contains(fin) && prog.contains(m))
    }
}

/// A standard affine root system of a given type: the diagram, its Gram
/// matrix, and the finite coordinates of α₀.
#[derive(Clone)]
pub struct AffineModel {
    pub affine_type: AffineType,
    pub gcm: Vec<Vec<i64>>,
    pub black: Vec<bool>,
    /// Gram matrix of α₀, …, α_l.
    pub gram: Vec<Vec<i64>>,
    /// Null marks with `marks[0] = 1`.
    pub marks: Vec<i64>,
    /// α₀ in adapted coordinates: `(−d₁, …, −d_l, 1)`.
    pub alpha0: Vec<i64>,
    pub oracle: Arc<dyn RootOracle>,
}

impl AffineModel {
    /// Builds the model of a type with the closure oracle.
    pub fn new(t: AffineType) -> Result<Self> {
        let (gcm, black) = t.diagram();
        let gram = symmetrize(&gcm)?;
        let marks = null_marks(&gcm)?;
        if marks[0] != 1 {
            return Err(Error::Assertion(format!("{t}: α₀ has null mark {}", marks[0])));
        }
        let l = t.l;
        let mut alpha0: Vec<i64> = marks[1..].iter().map(|d| -d).collect();
        alpha0.push(1);
        let fg = Self::finite_gram_of(&gram);
        let oracle = Arc::new(ClosureOracle::new(&fg, &alpha0, &black)?);
        debug_assert_eq!(alpha0.len(), l + 1);
        Ok(AffineModel { affine_type: t, gcm, black, gram, marks, alpha0, oracle })
    }

    fn finite_gram_of(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
        gram[1..].iter().map(|r| r[1..].to_vec()).collect()
    }

    /// Gram matrix of α₁, …, α_l.
    pub fn finite_gram(&self) -> Vec<Vec<i64>> {
        Self::finite_gram_of(&self.gram)
    }

    /// The independent progression model of the same type.
    pub fn progression_oracle(&self) -> ProgressionOracle {
        ProgressionOracle::new(&self.affine_type, &self.finite_gram())
    }

    /// The affine datum (Π′ = α₁, …, α_l; δ′ = δ) of this model.
    pub fn datum(&self) -> Result<super::AffineDatum> {
        super::AffineDatum::new(self.finite_gram(), Arc::clone(&self.oracle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrize_examples() {
        assert_eq!(symmetrize(&[vec![2, -1], vec![-4, 2]]).unwrap(), vec![vec![8, -4], vec![-4, 2]]);
        assert_eq!(symmetrize(&[vec![2, -2], vec![-2, 2]]).unwrap(), vec![vec![2, -2], vec![-2, 2]]);
        assert!(symmetrize(&[vec![2, 0], vec![0, 2]]).is_err());
    }

    #[test]
    fn null_marks_examples() {
        assert_eq!(null_marks(&[vec![2, -2], vec![-2, 2]]).unwrap(), vec![1, 1]);
        assert_eq!(null_marks(&[vec![2, -1], vec![-4, 2]]).unwrap(), vec![1, 2]);
        assert!(null_marks(&[vec![2, -1], vec![-1, 2]]).is_err());
    }

    #[test]
    fn closure_matches_progressions() {
        for l in 1..=4 {
            for t in AffineType::all_of_rank(l) {
                let model = AffineModel::new(t).unwrap();
                let prog = model.progression_oracle();
                let b = if l <= 2 { 3 } else { 2 };
                let mut count = 0;
                let mut v = vec![-b; l + 1];
                v[l] = -5;
                loop {
                    assert_eq!(model.oracle.contains(&v), prog.contains(&v), "{t} at {v:?}");
                    count += model.oracle.contains(&v) as usize;
                    let mut i = 0;
                    loop {
                        if i > l {
                            break;
                        }
                        let hi = if i == l { 5 } else { b };
                        if v[i] < hi {
                            v[i] += 1;
                            break;
                        }
                        v[i] = if i == l { -5 } else { -b };
                        i += 1;
                    }
                    if i > l {
                        break;
                    }
                }
                assert!(count > 0, "{t}");
            }
        }
    }
}
