//! The constructive base algorithm: from a finite base Π′ of the gradient
//! root system and a primitive isotropic δ′, produce the unique α₀ such that
//! Π′ ∪ {α₀} is a base of the affine root system.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::core_lattice::{AmbientSpace, Form, RootVector};
use crate::error::{Error, Result};
use crate::finite_roots::FiniteRootSystem;
use crate::linalg;

use super::model::RootOracle;

/// Search bound on δ′-coefficients when projecting roots to the gradient.
const PROJECTION_SEARCH: i64 = 16;

/// An affine root system given by a finite base Π′ (adapted coordinates
/// `(c₁, …, c_l, m)` for `Σ cᵢαᵢ + mδ′`) and a membership oracle.
#[derive(Clone)]
pub struct AffineDatum {
    space: Arc<AmbientSpace>,
    finite_space: Arc<AmbientSpace>,
    form: Form,
    oracle: Arc<dyn RootOracle>,
}

impl fmt::Debug for AffineDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineDatum").field("finite_gram", &self.finite_space.form().matrix()).finish()
    }
}

/// Output of the base algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBaseResult {
    /// α₀ in adapted coordinates.
    pub alpha0: Vec<i64>,
    /// θ = δ′ − α₀ in finite coordinates.
    pub theta: Vec<i64>,
    /// The base `[α₀, α₁, …, α_l]` in adapted coordinates.
    pub base: Vec<Vec<i64>>,
    /// The value M = max |f(R′)|.
    pub m_bound: i64,
}

impl AffineDatum {
    /// A datum with Π′ of Gram matrix `finite_gram` and membership `oracle`.
    pub fn new(finite_gram: Vec<Vec<i64>>, oracle: Arc<dyn RootOracle>) -> Result<Self> {
        let l = finite_gram.len();
        if l == 0 {
            return Err(Error::Empty("finite base".into()));
        }
        let finite_space = AmbientSpace::from_int_gram(&finite_gram)?;
        if finite_space.nullity() != 0 {
            return Err(Error::NotABase("Π′ is not a finite base (degenerate Gram)".into()));
        }
        let mut gram = finite_gram.clone();
        for row in gram.iter_mut() {
            row.push(0);
        }
        gram.push(vec![0; l + 1]);
        let space = AmbientSpace::from_int_gram(&gram)?;
        let form = Form::new(gram);
        let datum = AffineDatum { space, finite_space, form, oracle };
        for i in 0..l {
            if !datum.contains(&datum.unit(i)) {
                return Err(Error::NotARoot(format!("α{} is not in R", i + 1)));
            }
        }
        Ok(datum)
    }

    /// Rank `l` of the finite part.
    pub fn l(&self) -> usize {
        self.finite_space.dim()
    }

    /// The ambient space (nullity 1).
    pub fn space(&self) -> &Arc<AmbientSpace> {
        &self.space
    }

    /// Integer form on adapted coordinates.
    pub fn form(&self) -> &Form {
        &self.form
    }

    /// The membership oracle.
    pub fn oracle(&self) -> &Arc<dyn RootOracle> {
        &self.oracle
    }

    /// Membership in R.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.oracle.contains(v)
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.l() + 1];
        e[i] = 1;
        e
    }

    /// δ′ as a vector.
    pub fn delta_prime(&self) -> RootVector {
        RootVector::from_ints(&self.space, &self.unit(self.l())).expect("dimension")
    }

    /// Π′ as vectors.
    pub fn pi_prime(&self) -> Vec<RootVector> {
        (0..self.l()).map(|i| RootVector::from_ints(&self.space, &self.unit(i)).expect("dimension")).collect()
    }

    /// Indices of Π′ ordered as required by the construction: α₁ is the
    /// lowest-index shortest element with a unique neighbour, the rest by
    /// squared length then index.
    pub fn ordering(&self) -> Result<Vec<usize>> {
        let l = self.l();
        let ff = self.finite_space.form();
        let units: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut e = vec![0; l];
                e[i] = 1;
                e
            })
            .collect();
        let norms: Vec<i64> = units.iter().map(|u| ff.norm(u)).collect();
        let min = *norms.iter().min().unwrap();
        let first = if l == 1 {
            0
        } else {
            (0..l)
                .find(|&i| {
                    norms[i] == min && (0..l).filter(|&j| j != i && ff.pair(&units[i], &units[j]) != 0).count() == 1
                })
                .ok_or_else(|| Error::Ordering("no shortest simple root with a unique neighbour".into()))?
        };
        let mut rest: Vec<usize> = (0..l).filter(|&i| i != first).collect();
        rest.sort_by_key(|&i| (norms[i], i));
        let mut order = vec![first];
        order.extend(rest);
        Ok(order)
    }

    /// The finite root system R′ with base Π′ (finite coordinates).
    pub fn build_rprime(&self) -> Result<FiniteRootSystem> {
        let l = self.l();
        let order = self.ordering()?;
        let ff = self.finite_space.form();
        let unit = |i: usize| {
            let mut e = vec![0; l];
            e[i] = 1;
            e
        };
        let base: Vec<Vec<i64>> = (0..l).map(unit).collect();
        let a1 = unit(order[0]);
        let doubled = l == 1 || 2 * ff.norm(&a1) == ff.norm(&unit(order[1]));
        let extra: Vec<Vec<i64>> = if doubled { vec![a1.iter().map(|x| 2 * x).collect()] } else { vec![] };
        FiniteRootSystem::from_base(&self.finite_space, base, &extra)
    }

    /// The functional f: coefficient sum on Π′ and `f(δ′) = 3M`; returns
    /// `(coefficients of f, M)`.
    pub fn build_f(&self) -> Result<(Vec<i64>, i64)> {
        let rp = self.build_rprime()?;
        let m = rp.roots().iter().map(|r| r.iter().sum::<i64>().abs()).max().unwrap_or(0);
        let mut f = vec![1; self.l()];
        f.push(3 * m);
        Ok((f, m))
    }

    fn lift(fin: &[i64], m: i64) -> Vec<i64> {
        let mut v = fin.to_vec();
        v.push(m);
        v
    }

    /// Roots `μ + mδ′` with μ ∈ R′ at a fixed level `m`.
    fn level(&self, rp: &FiniteRootSystem, m: i64) -> Vec<Vec<i64>> {
        rp.roots().iter().map(|mu| Self::lift(mu, m)).filter(|v| self.contains(v)).collect()
    }

    /// The indecomposable positive set Π^f; Π′ comes first (coordinate
    /// order), followed by the new elements.
    pub fn compute_pif(&self) -> Result<Vec<Vec<i64>>> {
        let l = self.l();
        let rp = self.build_rprime()?;
        let nonneg = |v: &[i64]| v.iter().all(|&x| x >= 0);
        let in_monoid_nonzero = |v: &[i64]| v[l] == 0 && nonneg(&v[..l]) && v.iter().any(|&x| x != 0);
        let in_monoid = |v: &[i64]| v[l] == 0 && nonneg(&v[..l]);
        let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
        let p1 = self.level(&rp, 1);
        let p2 = self.level(&rp, 2);
        let mut pif: Vec<Vec<i64>> = (0..l).map(|i| self.unit(i)).collect();
        for beta in &p1 {
            let decomposable = p1.iter().any(|g| in_monoid_nonzero(&sub(beta, g)));
            if !decomposable {
                pif.push(beta.clone());
            }
        }
        // Guard: nothing at level 2 is indecomposable.
        for beta in &p2 {
            let by_one = p2.iter().any(|g| in_monoid_nonzero(&sub(beta, g)));
            let by_two = !by_one
                && p1.iter().any(|g1| {
                    let rest = sub(beta, g1);
                    p1.iter().any(|g2| in_monoid(&sub(&rest, g2)))
                });
            if !by_one && !by_two {
                return Err(Error::Assertion(format!("indecomposable root {beta:?} at δ′-level 2")));
            }
        }
        if pif.len() != l + 1 {
            return Err(Error::Assertion(format!(
                "|Π^f| = {} instead of {} (membership predicate inconsistent)",
                pif.len(),
                l + 1
            )));
        }
        Ok(pif)
    }

    /// Finite parts of roots (the gradient system π(R)) within R′.
    pub fn gradient_roots(&self) -> Result<BTreeSet<Vec<i64>>> {
        let rp = self.build_rprime()?;
        Ok(rp
            .roots()
            .iter()
            .filter(|mu| (-PROJECTION_SEARCH..=PROJECTION_SEARCH).any(|n| self.contains(&Self::lift(mu, n))))
            .cloned()
            .collect())
    }

    /// Runs the construction and checks its conclusions.
    pub fn affine_base(&self) -> Result<AffineBaseResult> {
        let l = self.l();
        let pif = self.compute_pif()?;
        let alpha0 = pif[l].clone();
        if alpha0[l] != 1 {
            return Err(Error::Assertion(format!("α₀ = {alpha0:?} is not at δ′-level 1")));
        }
        let theta: Vec<i64> = alpha0[..l].iter().map(|x| -x).collect();
        if theta.iter().any(|&x| x < 0) || theta.iter().all(|&x| x == 0) {
            return Err(Error::Assertion(format!("θ = {theta:?} is not in NΠ′")));
        }
        let rp = self.build_rprime()?;
        let grad = self.gradient_roots()?;
        if !grad.contains(&theta) {
            return Err(Error::Assertion(format!("θ = {theta:?} is not a gradient root")));
        }
        if rp.orbit_max(&theta)? != theta {
            return Err(Error::Assertion(format!("θ = {theta:?} is not an orbit maximum")));
        }
        let (_, m_bound) = self.build_f()?;
        let mut base = vec![alpha0.clone()];
        base.extend((0..l).map(|i| self.unit(i)));
        Ok(AffineBaseResult { alpha0, theta, base, m_bound })
    }

    /// The new simple root α₀ = δ′ − θ.
    pub fn affine_alpha0(&self) -> Result<Vec<i64>> {
        Ok(self.affine_base()?.alpha0)
    }

    /// Coefficients of a lattice vector in a base (rational solve).
    pub fn base_coefficients(base: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
        let n = base.len();
        // Columns of the matrix are the base vectors.
        let mq: linalg::QMatrix =
            (0..n).map(|r| (0..n).map(|c| linalg::q(base[c][r])).collect()).collect();
        let inv = linalg::inverse(&mq).ok_or_else(|| Error::NotABase("base is linearly dependent".into()))?;
        let vq: Vec<linalg::Rational> = v.iter().map(|&x| linalg::q(x)).collect();
        linalg::mat_vec(&inv, &vq)
            .iter()
            .map(|x| linalg::as_i64(x).ok_or_else(|| Error::NotInLattice(format!("{v:?}"))))
            .collect()
    }

    /// Checks the base property on the box `|cᵢ| ≤ bound, |m| ≤ bound`:
    /// every root has coefficients of one sign in `base`. Returns the number
    /// of roots checked.
    pub fn check_base_on_window(&self, base: &[Vec<i64>], bound: i64) -> Result<usize> {
        let n = self.l() + 1;
        if base.len() != n {
            return Err(Error::NotABase(format!("expected {n} elements")));
        }
        let mut count = 0;
        for v in box_points(n, bound) {
            if !self.contains(&v) {
                continue;
            }
            count += 1;
            let c = Self::base_coefficients(base, &v)?;
            if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                return Err(Error::NotABase(format!("root {v:?} has coefficients {c:?}")));
            }
        }
        Ok(count)
    }
}

/// All integer vectors of length `n` with entries in `[−bound, bound]`.
pub fn box_points(n: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as u64;
    let total = side.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((k % side) as i64 - bound);
            k /= side;
        }
        v
    })
}
