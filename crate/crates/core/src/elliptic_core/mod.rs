//! Elliptic root systems `R(Π, k, g)`: data, exact membership via coset
//! closure, root generation, the k/g maps and datum validation.
//!
//! Coordinates: `(c₁, …, c_l, p, z)` stands for `Σ cᵢαᵢ + pδ + za`, where
//! `α₁, …, α_l` are the non-zero nodes of the affine diagram, `δ = δ(Π)` and
//! `a` is the marking.

mod presets;
mod validate;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine_base::{null_marks, symmetrize, AffineDatum, AffineType, LengthClass};
use crate::core_lattice::{AmbientSpace, Form, RootVector};
use crate::coset::{self, Closure, CosetSet, Generator, Seed};
use crate::error::{Error, Result};
use crate::linalg;

pub use presets::{preset, preset_types, PRESET_COUNT};
pub use validate::{compute_kg, rank2_subsystem, validate_datum, Rank2Row, ValidationReport};

/// Tuning metadata; it never influences a computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omega {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
}

impl Default for Omega {
    fn default() -> Self {
        Omega { label: "omega1".into(), q: None }
    }
}

/// Serialized form of a datum: k and g indexed by diagram nodes 0..l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    #[serde(rename = "type")]
    pub type_label: String,
    pub l: usize,
    pub k: Vec<i64>,
    pub g: Vec<bool>,
    #[serde(default)]
    pub omega: Omega,
}

/// Box of lattice points: `|cᵢ| ≤ fin`, `|p| ≤ p`, `|z| ≤ z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox {
    pub fin: i64,
    pub p: i64,
    pub z: i64,
}

impl RootBox {
    /// Membership of a coordinate vector.
    pub fn contains(&self, v: &[i64]) -> bool {
        let n = v.len();
        v[..n - 2].iter().all(|c| c.abs() <= self.fin) && v[n - 2].abs() <= self.p && v[n - 1].abs() <= self.z
    }
}

/// A fundamental-set datum `(Π, a, k, g)` together with its root system.
#[derive(Clone)]
pub struct EllipticDatum {
    affine_type: AffineType,
    gcm: Vec<Vec<i64>>,
    node_gram: Vec<Vec<i64>>,
    marks: Vec<i64>,
    k: Vec<i64>,
    g: Vec<bool>,
    omega: Omega,
    space: Arc<AmbientSpace>,
    form: Form,
    closure: Closure,
    short_norm: i64,
}

impl fmt::Debug for EllipticDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EllipticDatum")
            .field("type", &self.affine_type.to_string())
            .field("k", &self.k)
            .field("g", &self.g)
            .finish()
    }
}

impl EllipticDatum {
    /// Builds the datum and its root system by coset closure.
    pub fn new(affine_type: AffineType, k: Vec<i64>, g: Vec<bool>, omega: Omega) -> Result<Self> {
        let l = affine_type.l;
        if !affine_type.is_reduced() {
            return Err(Error::InvalidDatum(format!("{affine_type} is not a reduced affine type")));
        }
        if k.len() != l + 1 || g.len() != l + 1 {
            return Err(Error::InvalidDatum(format!("k and g need {} entries", l + 1)));
        }
        if k.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidDatum("k must be positive".into()));
        }
        let (gcm, _) = affine_type.diagram();
        let node_gram = symmetrize(&gcm)?;
        let marks = null_marks(&gcm)?;
        let finite: Vec<Vec<i64>> = node_gram[1..].iter().map(|r| r[1..].to_vec()).collect();
        let mut gram: Vec<Vec<i64>> = finite.iter().map(|r| r.iter().copied().chain([0, 0]).collect()).collect();
        gram.push(vec![0; l + 2]);
        gram.push(vec![0; l + 2]);
        let space = AmbientSpace::from_int_gram(&gram)?;
        let form = Form::new(gram);
        let short_norm = (1..=l).map(|i| node_gram[i][i]).min().unwrap_or(2);
        let mut datum = EllipticDatum {
            affine_type,
            gcm,
            node_gram,
            marks,
            k,
            g,
            omega,
            space,
            form,
            closure: Closure { modulus: 1, iso_dim: 2, table: Default::default() },
            short_norm,
        };
        datum.closure = datum.build_closure(&finite)?;
        Ok(datum)
    }

    /// Parses and builds a datum from its serialized form.
    pub fn from_spec(spec: &DatumSpec) -> Result<Self> {
        let t: AffineType = spec.type_label.parse()?;
        if t.l != spec.l {
            return Err(Error::InvalidDatum(format!("type {t} has rank {} but l = {}", t.l, spec.l)));
        }
        Self::new(t, spec.k.clone(), spec.g.clone(), spec.omega.clone())
    }

    /// The serialized form.
    pub fn to_spec(&self) -> DatumSpec {
        DatumSpec {
            type_label: self.affine_type.to_string(),
            l: self.l(),
            k: self.k.clone(),
            g: self.g.clone(),
            omega: self.omega.clone(),
        }
    }

    fn build_closure(&self, finite: &[Vec<i64>]) -> Result<Closure> {
        let l = self.l();
        let fin_form = Form::new(finite.to_vec());
        let mut gens = Vec::new();
        let mut seeds = Vec::new();
        let mut t0 = 2;
        for i in 0..=l {
            let v = self.node(i);
            let fin = v[..l].to_vec();
            let iso = v[l..].to_vec();
            let k = self.k[i];
            gens.push(Generator { fin: fin.clone(), iso: iso.clone() });
            seeds.push(Seed { fin: fin.clone(), offset: iso.clone(), step: vec![0, k], odd_only: false });
            if self.g[i] {
                seeds.push(Seed {
                    fin: fin.iter().map(|x| 2 * x).collect(),
                    offset: iso.iter().map(|x| 2 * x).collect(),
                    step: vec![0, k],
                    odd_only: true,
                });
            }
            t0 = linalg::lcm(t0, 2 * self.c(i) * k);
            for j in 0..=l {
                if self.gcm[i][j] != 0 {
                    t0 = linalg::lcm(t0, 2 * self.gcm[i][j].abs());
                }
            }
        }
        let cap = coset::max_modulus().max(t0);
        coset::close_stable(&fin_form, &gens, &seeds, t0, cap).map_err(|e| match e {
            Error::NoConvergence(t) => Error::InvalidDatum(format!("coset closure did not stabilize up to modulus {t}")),
            other => other,
        })
    }

    /// Rank l.
    pub fn l(&self) -> usize {
        self.affine_type.l
    }

    /// The affine type of `π_a(Π)`.
    pub fn affine_type(&self) -> AffineType {
        self.affine_type
    }

    /// The generalized Cartan matrix of Π (node 0 = α₀).
    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    /// Gram matrix of the nodes α₀, …, α_l.
    pub fn node_gram(&self) -> &[Vec<i64>] {
        &self.node_gram
    }

    /// Null marks `d` with `δ = Σ dᵢαᵢ`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// The k map (by node).
    pub fn k(&self) -> &[i64] {
        &self.k
    }

    /// The g map (by node; true means `2Z+1`).
    pub fn g(&self) -> &[bool] {
        &self.g
    }

    /// Tuning metadata.
    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    /// The ambient space (nullity 2).
    pub fn space(&self) -> &Arc<AmbientSpace> {
        &self.space
    }

    /// Integer form on coordinates.
    pub fn form(&self) -> &Form {
        &self.form
    }

    /// The underlying closure table (finite part → isotropic residues).
    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    /// `c(α)` of node i: 2 when `g(α) = 2Z+1`, else 1.
    pub fn c(&self, i: usize) -> i64 {
        if self.g[i] {
            2
        } else {
            1
        }
    }

    /// Coordinates of node i.
    pub fn node(&self, i: usize) -> Vec<i64> {
        let l = self.l();
        let mut v = vec![0; l + 2];
        if i == 0 {
            for j in 1..=l {
                v[j - 1] = -self.marks[j];
            }
            v[l] = 1;
        } else {
            v[i - 1] = 1;
        }
        v
    }

    /// All nodes α₀, …, α_l.
    pub fn nodes(&self) -> Vec<Vec<i64>> {
        (0..=self.l()).map(|i| self.node(i)).collect()
    }

    /// The marking `a`.
    pub fn a(&self) -> Vec<i64> {
        let mut v = vec![0; self.l() + 2];
        v[self.l() + 1] = 1;
        v
    }

    /// The isotropic vector `pδ + za`.
    pub fn iso(&self, p: i64, z: i64) -> Vec<i64> {
        let mut v = vec![0; self.l() + 2];
        v[self.l()] = p;
        v[self.l() + 1] = z;
        v
    }

    /// δ(Π) = Σ dᵢαᵢ.
    pub fn delta_of(&self) -> RootVector {
        let mut v = vec![0; self.l() + 2];
        for (d, node) in self.marks.iter().zip(self.nodes()) {
            for (x, y) in v.iter_mut().zip(&node) {
                *x += d * y;
            }
        }
        RootVector::from_ints(&self.space, &v).expect("dimension")
    }

    /// `α* = c(α)α + k(α)a` for node i, asserted to be a root.
    pub fn alpha_star(&self, i: usize) -> Result<Vec<i64>> {
        if i > self.l() {
            return Err(Error::NotARoot(format!("node {i} is not in Π")));
        }
        let c = self.c(i);
        let mut v: Vec<i64> = self.node(i).iter().map(|x| c * x).collect();
        v[self.l() + 1] += self.k[i];
        if !self.contains(&v) {
            return Err(Error::Assertion(format!("α* of node {i} is not a root")));
        }
        Ok(v)
    }

    /// `B₊ = {α, α* | α ∈ Π}`.
    pub fn b_plus(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = self.nodes();
        for i in 0..=self.l() {
            out.push(self.alpha_star(i)?);
        }
        Ok(out)
    }

    /// Length class of a finite part, when it is the finite part of a root.
    fn fin_class(&self, fin: &[i64]) -> LengthClass {
        let n = self.form.norm(&self.pad(fin));
        if n == self.short_norm {
            LengthClass::Short
        } else if n == 4 * self.short_norm && fin.iter().all(|x| x % 2 == 0) {
            LengthClass::Extra
        } else {
            LengthClass::Long
        }
    }

    fn pad(&self, fin: &[i64]) -> Vec<i64> {
        fin.iter().copied().chain([0, 0]).collect()
    }

    /// Root class of a lattice vector, or `None` when it is not a root.
    pub fn membership(&self, v: &[i64]) -> Option<LengthClass> {
        let l = self.l();
        if v.len() != l + 2 || !self.closure.contains(&v[..l], &v[l..]) {
            return None;
        }
        Some(self.fin_class(&v[..l]))
    }

    /// Membership of an exact vector; errors when it is not in the lattice.
    pub fn membership_of(&self, v: &RootVector) -> Result<Option<LengthClass>> {
        if v.coords().len() != self.l() + 2 {
            return Err(Error::SpaceMismatch);
        }
        let ints = v.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()))?;
        Ok(self.membership(&ints))
    }

    /// True iff the vector is a root.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.membership(v).is_some()
    }

    /// Indices (into α₁..α_l, 1-based node numbers) of γ₁ and γ₂: the
    /// lowest-index short and long nodes other than α₀.
    pub fn gammas(&self) -> (usize, Option<usize>) {
        let l = self.l();
        let g1 = (1..=l).find(|&i| self.node_gram[i][i] == self.short_norm).expect("a short node");
        let g2 = (1..=l).find(|&i| self.node_gram[i][i] != self.short_norm);
        (g1, g2)
    }

    /// The coset sets `(L_sh, L_lg, L_ex)` of γ₁, γ₂ and 2γ₁.
    pub fn coset_sets(&self) -> (CosetSet, CosetSet, CosetSet) {
        let l = self.l();
        let (g1, g2) = self.gammas();
        let fin1 = self.node(g1)[..l].to_vec();
        let l_sh = self.closure.coset_set(&fin1);
        let l_lg = g2.map_or_else(CosetSet::empty, |j| self.closure.coset_set(&self.node(j)[..l]));
        let l_ex = self.closure.coset_set(&fin1.iter().map(|x| 2 * x).collect::<Vec<_>>());
        (l_sh, l_lg, l_ex)
    }

    /// Node classes: short, long or extra-long (twice a short root's
    /// squared length times two) by squared length.
    pub fn node_classes(&self) -> Vec<LengthClass> {
        (0..=self.l())
            .map(|i| {
                let n = self.node_gram[i][i];
                if n == self.short_norm {
                    LengthClass::Short
                } else if n == 4 * self.short_norm {
                    LengthClass::Extra
                } else {
                    LengthClass::Long
                }
            })
            .collect()
    }

    /// All roots in the box, by closure under reflections in `B₊` from
    /// `B₊`, pruned to an enlarged box; sorted.
    pub fn generate_roots(&self, bx: &RootBox) -> Result<Vec<Vec<i64>>> {
        let kmax = *self.k.iter().max().unwrap();
        let big = RootBox { fin: 2 * bx.fin + 4, p: 2 * bx.p + 4 * kmax + 4, z: 2 * bx.z + 4 * kmax + 4 };
        let gens = self.b_plus()?;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for s in &gens {
            for v in [s.clone(), s.iter().map(|x| -x).collect()] {
                if big.contains(&v) && seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for gvec in &gens {
                let w = self
                    .form
                    .reflect(gvec, &v)
                    .ok_or_else(|| Error::InvalidDatum(format!("non-integral reflection of {v:?}")))?;
                if big.contains(&w) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.into_iter().filter(|v| bx.contains(v)).collect())
    }

    /// Roots in the box according to the membership predicate; sorted.
    pub fn roots_in_box(&self, bx: &RootBox) -> Vec<Vec<i64>> {
        let l = self.l();
        let mut out = Vec::new();
        for fin in self.closure.table.keys() {
            if fin.iter().any(|c| c.abs() > bx.fin) {
                continue;
            }
            for p in -bx.p..=bx.p {
                for z in -bx.z..=bx.z {
                    let mut v = fin.clone();
                    v.push(p);
                    v.push(z);
                    if self.closure.contains(&v[..l], &v[l..]) {
                        out.push(v);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The affine quotient `π_{a′}(R)` as an affine datum in coordinates
    /// `(c₁, …, c_l, u)` standing for `Σ cᵢαᵢ + u·δ″` modulo `Ra′`; the pair
    /// `(δ″, a′)` (given by their `(δ, a)` coordinates) must be a basis of M.
    pub fn projected_affine_datum(&self, delta2: [i64; 2], a2: [i64; 2]) -> Result<AffineDatum> {
        if (delta2[0] * a2[1] - delta2[1] * a2[0]).abs() != 1 {
            return Err(Error::InvalidDatum(format!("{delta2:?}, {a2:?} is not a basis of the marking lattice")));
        }
        let l = self.l();
        let closure = self.closure.clone();
        let t = closure.modulus;
        let oracle = move |v: &[i64]| {
            let u = v[l];
            (0..t).any(|w| closure.contains(&v[..l], &[u * delta2[0] + w * a2[0], u * delta2[1] + w * a2[1]]))
        };
        let finite: Vec<Vec<i64>> = self.node_gram[1..].iter().map(|r| r[1..].to_vec()).collect();
        AffineDatum::new(finite, Arc::new(oracle))
    }

    /// True iff no root β has 2β ∈ R.
    pub fn is_reduced(&self) -> bool {
        let t = self.closure.modulus;
        !self.closure.table.iter().any(|(fin, set)| {
            let dbl: Vec<i64> = fin.iter().map(|x| 2 * x).collect();
            match self.closure.table.get(&dbl) {
                None => false,
                Some(dset) => set.iter().any(|r| dset.contains(&r.iter().map(|x| (2 * x).rem_euclid(t)).collect::<Vec<_>>())),
            }
        })
    }
}

#[cfg(test)]
mod tests;
