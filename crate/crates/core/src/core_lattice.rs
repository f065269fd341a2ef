//! Ambient spaces with an exact positive semi-definite form, root vectors,
//! coroots, reflections, projections onto quotients by isotropic subspaces,
//! and a brute-force axiom checker for finite sets of vectors.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, QMatrix, Rational};

/// Integer-scaled copy of a Gram matrix: `(v, w) = vᵀ gram w / scale`.
///
/// All combinatorial algorithms work with integer coordinate vectors and
/// this form; coroot pairings `2(v,w)/(v,v)` do not depend on the scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    gram: Vec<Vec<i64>>,
    scale: i64,
}

impl Form {
    /// Wraps an integer Gram matrix with scale 1.
    pub fn new(gram: Vec<Vec<i64>>) -> Self {
        Form { gram, scale: 1 }
    }

    /// Dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// The integer matrix (scaled Gram).
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Common denominator used to make the Gram integral.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Scaled pairing `scale · (v, w)`.
    pub fn pair(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let row = &self.gram[i];
            for (j, &wj) in w.iter().enumerate() {
                acc += vi * row[j] * wj;
            }
        }
        acc
    }

    /// Scaled squared length `scale · (v, v)`.
    pub fn norm(&self, v: &[i64]) -> i64 {
        self.pair(v, v)
    }

    /// The exact rational `(v∨, z) = 2(v, z)/(v, v)`, or `None` when `v` is isotropic.
    pub fn coroot_pair_q(&self, v: &[i64], z: &[i64]) -> Option<Rational> {
        let n = self.norm(v);
        if n == 0 {
            return None;
        }
        Some(linalg::qf(2 * self.pair(v, z), n))
    }

    /// `(v∨, z)` when it is an integer; `None` for isotropic `v` or a
    /// non-integral value.
    pub fn coroot_pair(&self, v: &[i64], z: &[i64]) -> Option<i64> {
        let n = self.norm(v);
        if n == 0 {
            return None;
        }
        let num = 2 * self.pair(v, z);
        if num % n == 0 {
            Some(num / n)
        } else {
            None
        }
    }

    /// `s_v(z) = z − (v∨, z) v` when the coroot pairing is integral.
    pub fn reflect(&self, v: &[i64], z: &[i64]) -> Option<Vec<i64>> {
        let c = self.coroot_pair(v, z)?;
        Some(z.iter().zip(v).map(|(zi, vi)| zi - c * vi).collect())
    }
}

/// A finite-dimensional rational space with a symmetric positive
/// semi-definite form and its radical.
#[derive(Debug)]
pub struct AmbientSpace {
    gram: QMatrix,
    radical_basis: Vec<Vec<Rational>>,
    form: Form,
}

impl AmbientSpace {
    /// Builds a space from a rational Gram matrix, verifying symmetry and
    /// semi-definiteness and computing the radical by exact kernel.
    pub fn new(gram: QMatrix) -> Result<Arc<Self>> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gram must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSemidefinite);
                }
            }
        }
        if !linalg::is_positive_semidefinite(&gram) {
            return Err(Error::NotSemidefinite);
        }
        let radical_basis = linalg::kernel(&gram, n)
            .into_iter()
            .map(|v| linalg::primitive_integer(&v).into_iter().map(Rational::from_integer).collect())
            .collect();
        let mut den = BigInt::from(1);
        for row in &gram {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let scale: i64 = i64::try_from(&den).map_err(|_| Error::Dimension("gram denominators too large".into()))?;
        let int_gram = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        linalg::as_i64(&(x * Rational::from_integer(den.clone())))
                            .ok_or_else(|| Error::Dimension("gram entries too large".into()))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(AmbientSpace { gram, radical_basis, form: Form { gram: int_gram, scale } }))
    }

    /// Builds a space from an integer Gram matrix.
    pub fn from_int_gram(gram: &[Vec<i64>]) -> Result<Arc<Self>> {
        Self::new(linalg::to_qmatrix(gram))
    }

    /// Dimension `l + n`.
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Nullity `n = dim V⁰`.
    pub fn nullity(&self) -> usize {
        self.radical_basis.len()
    }

    /// The exact Gram matrix.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// A basis of the radical, each vector primitive integral.
    pub fn radical_basis(&self) -> &[Vec<Rational>] {
        &self.radical_basis
    }

    /// Integer-scaled form for fast integral computations.
    pub fn form(&self) -> &Form {
        &self.form
    }

    fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.gram == other.gram
    }
}

/// An exact rational vector tagged with its ambient space.
#[derive(Clone)]
pub struct RootVector {
    coords: Vec<Rational>,
    space: Arc<AmbientSpace>,
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl PartialEq for RootVector {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.space.same(&other.space)
    }
}

impl Eq for RootVector {}

impl std::hash::Hash for RootVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl RootVector {
    /// Creates a vector; the coordinate count must match the space.
    pub fn new(space: &Arc<AmbientSpace>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Dimension(format!("expected {} coordinates, got {}", space.dim(), coords.len())));
        }
        Ok(RootVector { coords, space: Arc::clone(space) })
    }

    /// Creates a vector from integer coordinates.
    pub fn from_ints(space: &Arc<AmbientSpace>, coords: &[i64]) -> Result<Self> {
        Self::new(space, coords.iter().map(|&c| q(c)).collect())
    }

    /// Zero vector.
    pub fn zero(space: &Arc<AmbientSpace>) -> Self {
        RootVector { coords: vec![q(0); space.dim()], space: Arc::clone(space) }
    }

    /// Coordinates in the space's basis.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The ambient space.
    pub fn space(&self) -> &Arc<AmbientSpace> {
        &self.space
    }

    /// Integer coordinates when all coordinates are integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(linalg::as_i64).collect()
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.space.same(&other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    /// `self − other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    /// `c · self`.
    pub fn scale(&self, c: &Rational) -> Self {
        self.with(self.coords.iter().map(|a| a * c).collect())
    }

    /// `−self`.
    pub fn neg(&self) -> Self {
        self.with(self.coords.iter().map(|a| -a).collect())
    }

    fn with(&self, coords: Vec<Rational>) -> Self {
        RootVector { coords, space: Arc::clone(&self.space) }
    }
}

/// The form `(v, w) = vᵀ G w`.
pub fn pairing(v: &RootVector, w: &RootVector) -> Result<Rational> {
    v.check(w)?;
    Ok(linalg::bilinear(v.space.gram(), &v.coords, &w.coords))
}

/// `v∨ = 2v/(v, v)`.
pub fn coroot(v: &RootVector) -> Result<RootVector> {
    let n = pairing(v, v)?;
    if n.is_zero() {
        return Err(Error::Isotropic(v.to_string()));
    }
    Ok(v.scale(&(q(2) / n)))
}

/// `s_v(z) = z − (v∨, z) v`.
pub fn reflect(v: &RootVector, z: &RootVector) -> Result<RootVector> {
    let c = pairing(&coroot(v)?, z)?;
    z.sub(&v.scale(&c))
}

/// Connectivity of the pairing graph of `s` (edge iff pairing ≠ 0).
pub fn is_connected(s: &[RootVector]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::Empty("is_connected needs a nonempty set".into()));
    }
    for v in s {
        if pairing(v, v)?.is_zero() {
            return Err(Error::Isotropic(v.to_string()));
        }
    }
    let mut seen = vec![false; s.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if !seen[j] && !pairing(&s[i], &s[j])?.is_zero() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.into_iter().all(|x| x))
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomResult {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Per-axiom report of [`verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub ax1: AxiomResult,
    pub ax2: AxiomResult,
    pub ax3: AxiomResult,
    pub ax4: AxiomResult,
    pub ax5: AxiomResult,
    /// Reflections leaving the finite window; not counted as AX4 failures.
    pub boundary: Vec<String>,
    /// Smith invariants of the coordinate matrix.
    pub smith_invariants: Vec<BigInt>,
}

impl AxiomReport {
    /// True when all five axioms pass.
    pub fn all_pass(&self) -> bool {
        self.ax1.pass && self.ax2.pass && self.ax3.pass && self.ax4.pass && self.ax5.pass
    }
}

const MAX_WITNESSES: usize = 8;

fn fail(res: &mut AxiomResult, w: String) {
    res.pass = false;
    if res.witnesses.len() < MAX_WITNESSES {
        res.witnesses.push(w);
    }
}

/// Brute-force check of AX1–AX5 on a finite set.
///
/// `in_window`, when given, describes the region the set was enumerated in:
/// reflections landing outside it are recorded in `boundary` instead of
/// failing AX4.
pub fn verify_axioms(
    roots: &[RootVector],
    lattice_rank: usize,
    in_window: Option<&dyn Fn(&RootVector) -> bool>,
) -> AxiomReport {
    let ok = || AxiomResult { pass: true, witnesses: vec![] };
    let mut rep = AxiomReport {
        ax1: ok(),
        ax2: ok(),
        ax3: ok(),
        ax4: ok(),
        ax5: ok(),
        boundary: vec![],
        smith_invariants: vec![],
    };
    if roots.is_empty() {
        fail(&mut rep.ax1, "empty set".into());
        fail(&mut rep.ax5, "empty set".into());
        return rep;
    }
    let space = Arc::clone(roots[0].space());
    let dim = space.dim();
    let mut anisotropic = Vec::new();
    for r in roots {
        if !r.space.same(&space) {
            fail(&mut rep.ax1, format!("{r} lies in a different space"));
            continue;
        }
        match pairing(r, r) {
            Ok(n) if !n.is_zero() => anisotropic.push(r.clone()),
            _ => fail(&mut rep.ax1, format!("{r} is isotropic")),
        }
    }
    let coords: QMatrix = roots.iter().map(|r| r.coords.clone()).collect();
    let rk = linalg::rank(&coords);
    if rk != dim {
        fail(&mut rep.ax1, format!("span has dimension {rk} < {dim}"));
    }
    // AX2: rank of ZR via Smith normal form after clearing denominators.
    let mut den = BigInt::from(1);
    for row in &coords {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let int_rows: Vec<Vec<BigInt>> = coords
        .iter()
        .map(|row| row.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    rep.smith_invariants = linalg::smith_invariants(&int_rows);
    if rep.smith_invariants.len() != lattice_rank || lattice_rank != dim {
        fail(
            &mut rep.ax2,
            format!("rank of ZR is {} (expected {lattice_rank}, dim {dim})", rep.smith_invariants.len()),
        );
    }
    let set: HashSet<&RootVector> = roots.iter().collect();
    for a in &anisotropic {
        let Ok(av) = coroot(a) else { continue };
        for b in roots {
            let c = pairing(&av, b).expect("same space");
            if !c.is_integer() {
                fail(&mut rep.ax3, format!("({a})∨ paired with {b} = {c}"));
                continue;
            }
            let img = b.sub(&a.scale(&c)).expect("same space");
            if !set.contains(&img) {
                let outside = in_window.map_or(false, |w| !w(&img));
                if outside {
                    if rep.boundary.len() < MAX_WITNESSES {
                        rep.boundary.push(format!("s_{a}({b}) = {img} leaves the window"));
                    }
                } else {
                    fail(&mut rep.ax4, format!("s_{a}({b}) = {img} missing"));
                }
            }
        }
    }
    if anisotropic.is_empty() || !is_connected(&anisotropic).unwrap_or(false) {
        fail(&mut rep.ax5, "pairing graph is disconnected".into());
    }
    rep
}

/// A linear projection `V → V/K` onto the quotient by a subspace `K`.
#[derive(Debug, Clone)]
pub struct Projection {
    source: Arc<AmbientSpace>,
    quotient_dims: usize,
    kernel_basis: Vec<RootVector>,
    matrix: QMatrix,
}

impl Projection {
    /// Projection with the given kernel.
    pub fn new(source: &Arc<AmbientSpace>, kernel_basis: Vec<RootVector>) -> Result<Self> {
        for k in &kernel_basis {
            if !k.space.same(source) {
                return Err(Error::SpaceMismatch);
            }
        }
        let dim = source.dim();
        let rows: QMatrix = kernel_basis.iter().map(|k| k.coords.clone()).collect();
        let matrix = if rows.is_empty() {
            linalg::kernel(&vec![], dim)
        } else {
            linalg::kernel(&rows, dim)
        };
        Ok(Projection { source: Arc::clone(source), quotient_dims: matrix.len(), kernel_basis, matrix })
    }

    /// The canonical map `π : V → V/V⁰`.
    pub fn pi(source: &Arc<AmbientSpace>) -> Result<Self> {
        let kernel = source
            .radical_basis()
            .iter()
            .map(|v| RootVector::new(source, v.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, kernel)
    }

    /// The map `π_a : V → V/Ra`.
    pub fn pi_a(a: &RootVector) -> Result<Self> {
        Self::new(a.space(), vec![a.clone()])
    }

    /// Dimension of the quotient.
    pub fn quotient_dims(&self) -> usize {
        self.quotient_dims
    }

    /// The kernel basis.
    pub fn kernel_basis(&self) -> &[RootVector] {
        &self.kernel_basis
    }

    /// The projection matrix (rows index quotient coordinates).
    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// The source space.
    pub fn source(&self) -> &Arc<AmbientSpace> {
        &self.source
    }

    /// Image coordinates of `v`.
    pub fn apply(&self, v: &RootVector) -> Result<Vec<Rational>> {
        if !v.space.same(&self.source) {
            return Err(Error::SpaceMismatch);
        }
        Ok(linalg::mat_vec(&self.matrix, &v.coords))
    }
}

/// Groups vectors by squared length (ascending), a convenience for
/// length-class computations.
pub fn length_classes(roots: &[RootVector]) -> BTreeMap<Rational, Vec<RootVector>> {
    let mut out: BTreeMap<Rational, Vec<RootVector>> = BTreeMap::new();
    for r in roots {
        if let Ok(n) = pairing(r, r) {
            if n.is_positive() {
                out.entry(n).or_default().push(r.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Arc<AmbientSpace> {
        AmbientSpace::from_int_gram(&[vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn v(s: &Arc<AmbientSpace>, c: &[i64]) -> RootVector {
        RootVector::from_ints(s, c).unwrap()
    }

    fn a2_roots(s: &Arc<AmbientSpace>) -> Vec<RootVector> {
        [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]].iter().map(|c| v(s, c)).collect()
    }

    #[test]
    fn pairing_examples() {
        let s = a2();
        assert_eq!(pairing(&v(&s, &[1, 0]), &v(&s, &[0, 1])).unwrap(), q(-1));
        let other = a2();
        let foreign = AmbientSpace::from_int_gram(&[vec![4]]).unwrap();
        assert_eq!(pairing(&v(&s, &[1, 0]), &v(&other, &[0, 1])).unwrap(), q(-1));
        assert_eq!(
            pairing(&v(&s, &[1, 0]), &RootVector::from_ints(&foreign, &[1]).unwrap()),
            Err(Error::SpaceMismatch)
        );
    }

    #[test]
    fn radical_of_affine_gram() {
        let s = AmbientSpace::from_int_gram(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(s.nullity(), 1);
        let r = RootVector::new(&s, s.radical_basis()[0].clone()).unwrap();
        assert_eq!(pairing(&r, &r).unwrap(), q(0));
        assert!(AmbientSpace::from_int_gram(&[vec![2, -3], vec![-3, 2]]).is_err());
    }

    #[test]
    fn coroot_normalization() {
        let s = AmbientSpace::from_int_gram(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]]).unwrap();
        assert_eq!(coroot(&v(&s, &[1, 0, 0])).unwrap(), v(&s, &[2, 0, 0]));
        assert_eq!(coroot(&v(&s, &[0, 1, 0])).unwrap(), v(&s, &[0, 1, 0]));
        assert_eq!(coroot(&v(&s, &[0, 0, 1])).unwrap(), v(&s, &[0, 0, 1]).scale(&linalg::qf(1, 2)));
        let deg = AmbientSpace::from_int_gram(&[vec![0]]).unwrap();
        assert!(coroot(&v(&deg, &[1])).is_err());
    }

    #[test]
    fn reflection_examples() {
        let s = a2();
        let a1 = v(&s, &[1, 0]);
        assert_eq!(reflect(&a1, &a1).unwrap(), a1.neg());
        assert_eq!(reflect(&a1, &v(&s, &[0, 1])).unwrap(), v(&s, &[1, 1]));
        let b = AmbientSpace::from_int_gram(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(reflect(&v(&b, &[1, 0]), &v(&b, &[0, 1])).unwrap(), v(&b, &[0, 1]));
    }

    #[test]
    fn connectivity() {
        let s = a2();
        assert!(is_connected(&[v(&s, &[1, 0])]).unwrap());
        let o = AmbientSpace::from_int_gram(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(!is_connected(&[v(&o, &[1, 0]), v(&o, &[0, 1])]).unwrap());
        let a3 = AmbientSpace::from_int_gram(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap();
        assert!(is_connected(&[v(&a3, &[1, 0, 0]), v(&a3, &[0, 1, 0]), v(&a3, &[0, 0, 1])]).unwrap());
        assert!(is_connected(&[]).is_err());
    }

    #[test]
    fn axioms_on_a2() {
        let s = a2();
        let roots = a2_roots(&s);
        let rep = verify_axioms(&roots, 2, None);
        assert!(rep.all_pass(), "{rep:?}");
        let missing: Vec<_> = roots[..5].to_vec();
        let rep = verify_axioms(&missing, 2, None);
        assert!(!rep.ax4.pass);
        assert!(!rep.ax4.witnesses.is_empty());
        let mut with_zero = roots.clone();
        with_zero.push(v(&s, &[0, 0]));
        assert!(!verify_axioms(&with_zero, 2, None).ax1.pass);
    }

    #[test]
    fn axioms_report_window_boundary() {
        // Window of A1^(1): ±α + mδ with |m| ≤ 1; reflections leave the window.
        let s = AmbientSpace::from_int_gram(&[vec![2, 0], vec![0, 0]]).unwrap();
        let roots: Vec<_> = [-1, 0, 1]
            .iter()
            .flat_map(|&m| [v(&s, &[1, m]), v(&s, &[-1, m])])
            .collect();
        let inside = |r: &RootVector| r.to_ints().map_or(false, |c| c[1].abs() <= 1);
        let rep = verify_axioms(&roots, 2, Some(&inside));
        assert!(rep.all_pass(), "{rep:?}");
        assert!(!rep.boundary.is_empty());
    }

    #[test]
    fn projection_annihilates_kernel() {
        let s = AmbientSpace::from_int_gram(&[vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let pi = Projection::pi(&s).unwrap();
        assert_eq!(pi.quotient_dims(), 1);
        for k in pi.kernel_basis() {
            assert!(pi.apply(k).unwrap().iter().all(Zero::is_zero));
        }
        let a = v(&s, &[0, 0, 1]);
        let pa = Projection::pi_a(&a).unwrap();
        assert_eq!(pa.quotient_dims(), 2);
        assert!(pa.apply(&a).unwrap().iter().all(Zero::is_zero));
        assert_eq!(linalg::rank(pa.matrix()), 2);
    }

    #[test]
    fn form_matches_rational_pairing() {
        let s = AmbientSpace::new(vec![vec![linalg::qf(1, 2), q(0)], vec![q(0), q(1)]]).unwrap();
        assert_eq!(s.form().scale(), 2);
        assert_eq!(s.form().coroot_pair(&[1, 0], &[2, 0]), Some(4));
    }

    proptest! {
        #[test]
        fn reflections_are_involutive_isometries(
            vc in prop::collection::vec(-3i64..=3, 3),
            x in prop::collection::vec(-5i64..=5, 3),
            y in prop::collection::vec(-5i64..=5, 3),
        ) {
            let s = AmbientSpace::from_int_gram(&[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -2, 4]]).unwrap();
            let vv = v(&s, &vc);
            prop_assume!(!pairing(&vv, &vv).unwrap().is_zero());
            let xv = v(&s, &x);
            let yv = v(&s, &y);
            let rx = reflect(&vv, &xv).unwrap();
            prop_assert_eq!(reflect(&vv, &rx).unwrap(), xv.clone());
            let ry = reflect(&vv, &yv).unwrap();
            prop_assert_eq!(pairing(&rx, &ry).unwrap(), pairing(&xv, &yv).unwrap());
            prop_assert_eq!(coroot(&coroot(&vv).unwrap()).unwrap(), vv.clone());
            prop_assert_eq!(pairing(&xv, &yv).unwrap(), pairing(&yv, &xv).unwrap());
        }
    }
}
