//! Irreducible finite root systems: standard constructions from Cartan data,
//! bases of explicit root sets, Weyl orbits, orbit maxima α₊, the set
//! Θ(R, Π) and the short/long/extra-long partition.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::core_lattice::{AmbientSpace, Form, Projection, RootVector};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Rational};

/// Cartan–Killing family of an irreducible finite root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum FiniteType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    /// The non-reduced system BC_l = B_l ∪ 2·(short roots).
    BC,
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiniteType::A => "A",
            FiniteType::B => "B",
            FiniteType::C => "C",
            FiniteType::D => "D",
            FiniteType::E => "E",
            FiniteType::F => "F",
            FiniteType::G => "G",
            FiniteType::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for FiniteType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => FiniteType::A,
            "B" => FiniteType::B,
            "C" => FiniteType::C,
            "D" => FiniteType::D,
            "E" => FiniteType::E,
            "F" => FiniteType::F,
            "G" => FiniteType::G,
            "BC" => FiniteType::BC,
            other => return Err(Error::InvalidType { label: other.into(), rank: 0 }),
        })
    }
}

impl FiniteType {
    /// Whether `rank` is admissible for this family.
    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            FiniteType::A | FiniteType::BC => rank >= 1,
            FiniteType::B | FiniteType::C => rank >= 2,
            FiniteType::D => rank >= 4,
            FiniteType::E => (6..=8).contains(&rank),
            FiniteType::F => rank == 4,
            FiniteType::G => rank == 2,
        }
    }
}

/// Gram matrix of the standard (Bourbaki-numbered) base, short roots of
/// squared length 2.
pub fn standard_gram(t: FiniteType, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !t.valid_rank(rank) {
        return Err(Error::InvalidType { label: t.to_string(), rank });
    }
    let l = rank;
    let mut g = vec![vec![0i64; l]; l];
    let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t {
        FiniteType::A => {
            for i in 0..l {
                g[i][i] = 2;
                if i + 1 < l {
                    edge(&mut g, i, i + 1, -1);
                }
            }
        }
        FiniteType::B | FiniteType::BC => {
            if l == 1 {
                g[0][0] = 2;
            } else {
                for i in 0..l {
                    g[i][i] = if i + 1 < l { 4 } else { 2 };
                    if i + 1 < l {
                        edge(&mut g, i, i + 1, -2);
                    }
                }
            }
        }
        FiniteType::C => {
            for i in 0..l {
                g[i][i] = if i + 1 < l { 2 } else { 4 };
                if i + 1 < l {
                    edge(&mut g, i, i + 1, if i + 2 == l { -2 } else { -1 });
                }
            }
        }
        FiniteType::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, l - 3, l - 1, -1);
        }
        FiniteType::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            edge(&mut g, 0, 2, -1);
            edge(&mut g, 1, 3, -1);
            for i in 2..l - 1 {
                edge(&mut g, i, i + 1, -1);
            }
        }
        FiniteType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            edge(&mut g, 0, 1, -2);
            edge(&mut g, 1, 2, -2);
            edge(&mut g, 2, 3, -1);
        }
        FiniteType::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            edge(&mut g, 0, 1, -3);
        }
    }
    Ok(g)
}

/// BFS closure of `seeds` under the reflections in `generators`
/// (integer coordinates); the result is sorted.
pub fn orbit_closure(form: &Form, generators: &[Vec<i64>], seeds: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = seeds.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in generators {
            if let Some(y) = form.reflect(g, &x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Weyl orbit of `seed` under reflections in `generators`.
pub fn weyl_orbit(generators: &[RootVector], seed: &RootVector) -> Result<Vec<RootVector>> {
    let space = Arc::clone(seed.space());
    let to_int = |v: &RootVector| {
        v.to_ints().ok_or_else(|| Error::Dimension(format!("{v} has non-integral coordinates")))
    };
    let gens = generators.iter().map(to_int).collect::<Result<Vec<_>>>()?;
    for g in &gens {
        if space.form().norm(g) == 0 {
            return Err(Error::Isotropic(format!("{g:?}")));
        }
    }
    let orbit = orbit_closure(space.form(), &gens, &[to_int(seed)?]);
    orbit.iter().map(|c| RootVector::from_ints(&space, c)).collect()
}

/// A finite root system given by an explicit root set and a base, all in
/// integer coordinates of the ambient space.
#[derive(Debug, Clone)]
pub struct FiniteRootSystem {
    space: Arc<AmbientSpace>,
    roots: Vec<Vec<i64>>,
    root_set: HashSet<Vec<i64>>,
    base: Vec<Vec<i64>>,
    type_label: String,
    base_inverse: QMatrix,
}

impl FiniteRootSystem {
    /// Assembles a system from roots and a base, checking the base property.
    pub fn from_parts(space: &Arc<AmbientSpace>, mut roots: Vec<Vec<i64>>, base: Vec<Vec<i64>>) -> Result<Self> {
        roots.sort();
        roots.dedup();
        let dim = space.dim();
        if base.is_empty() || base.iter().any(|b| b.len() != dim) {
            return Err(Error::Dimension("base vectors must match the space".into()));
        }
        let bq: QMatrix = base.iter().map(|b| b.iter().map(|&x| linalg::q(x)).collect()).collect();
        if linalg::rank(&bq) != base.len() {
            return Err(Error::NotABase("base is linearly dependent".into()));
        }
        // Express coordinates in the base: solve via the rows spanned by the base.
        let base_inverse = left_inverse(&bq)?;
        let root_set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut sys = FiniteRootSystem {
            space: Arc::clone(space),
            roots,
            root_set,
            base,
            type_label: String::new(),
            base_inverse,
        };
        for r in &sys.roots {
            let c = sys.coeffs_q(r);
            let sum_check: Vec<Rational> = sys.combine(&c);
            let exact = sum_check.iter().zip(r).all(|(a, &b)| *a == linalg::q(b));
            if !exact || !c.iter().all(|x| x.is_integer()) {
                return Err(Error::NotABase(format!("{r:?} is not an integral combination of the base")));
            }
            let pos = c.iter().all(|x| *x >= linalg::q(0));
            let neg = c.iter().all(|x| *x <= linalg::q(0));
            if !(pos || neg) {
                return Err(Error::NotABase(format!("{r:?} has mixed-sign coefficients")));
            }
        }
        sys.type_label = recognize(&sys)?;
        Ok(sys)
    }

    /// The closure `W_Π · (Π ∪ extra_seeds)` with base `Π`.
    pub fn from_base(space: &Arc<AmbientSpace>, base: Vec<Vec<i64>>, extra_seeds: &[Vec<i64>]) -> Result<Self> {
        let mut seeds = base.clone();
        seeds.extend(extra_seeds.iter().cloned());
        let mut roots = orbit_closure(space.form(), &base, &seeds);
        let negs: Vec<Vec<i64>> = roots.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        roots.extend(negs);
        Self::from_parts(space, roots, base)
    }

    /// Finds a base of an explicit finite root set using a generic regular
    /// functional and the indecomposable positive roots.
    pub fn from_roots(space: &Arc<AmbientSpace>, roots: Vec<Vec<i64>>) -> Result<Self> {
        let base = find_base(&roots)?;
        Self::from_parts(space, roots, base)
    }

    /// The ambient space.
    pub fn space(&self) -> &Arc<AmbientSpace> {
        &self.space
    }

    /// The integer form of the ambient space.
    pub fn form(&self) -> &Form {
        self.space.form()
    }

    /// All roots (sorted, integer coordinates).
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// The base Π in integer coordinates.
    pub fn base(&self) -> &[Vec<i64>] {
        &self.base
    }

    /// Type label such as `"B_2"` or `"BC_1"`.
    pub fn type_label(&self) -> &str {
        &self.type_label
    }

    /// Rank `l = |Π|`.
    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Membership test.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.root_set.contains(v)
    }

    /// True iff `R ∩ 2R = ∅`.
    pub fn is_reduced(&self) -> bool {
        !self.roots.iter().any(|r| self.contains(&r.iter().map(|x| 2 * x).collect::<Vec<_>>()))
    }

    /// Roots as [`RootVector`]s.
    pub fn root_vectors(&self) -> Vec<RootVector> {
        self.roots.iter().map(|r| RootVector::from_ints(&self.space, r).expect("dimension")).collect()
    }

    /// Base as [`RootVector`]s.
    pub fn base_vectors(&self) -> Vec<RootVector> {
        self.base.iter().map(|r| RootVector::from_ints(&self.space, r).expect("dimension")).collect()
    }

    fn coeffs_q(&self, v: &[i64]) -> Vec<Rational> {
        let vq: Vec<Rational> = v.iter().map(|&x| linalg::q(x)).collect();
        linalg::mat_vec(&self.base_inverse, &vq)
    }

    fn combine(&self, c: &[Rational]) -> Vec<Rational> {
        let dim = self.space.dim();
        let mut out = vec![linalg::q(0); dim];
        for (ci, b) in c.iter().zip(&self.base) {
            for (o, &bj) in out.iter_mut().zip(b) {
                *o += ci * linalg::q(bj);
            }
        }
        out
    }

    /// Coefficients of a root-lattice vector in the base.
    pub fn coeffs(&self, v: &[i64]) -> Vec<i64> {
        self.coeffs_q(v).iter().map(|x| linalg::as_i64(x).expect("integral coefficients")).collect()
    }

    /// Height: sum of coefficients in the base.
    pub fn height(&self, v: &[i64]) -> i64 {
        self.coeffs(v).iter().sum()
    }

    /// The orbit `W · α` under the simple reflections.
    pub fn orbit(&self, alpha: &[i64]) -> Vec<Vec<i64>> {
        orbit_closure(self.form(), &self.base, &[alpha.to_vec()])
    }

    /// The unique orbit element α₊ with `W·α ⊂ α₊ + Z₋Π`.
    pub fn orbit_max(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        if !self.contains(alpha) {
            return Err(Error::NotARoot(format!("{alpha:?}")));
        }
        let orbit = self.orbit(alpha);
        let best = orbit.iter().max_by_key(|r| (self.height(r), (*r).clone())).cloned().expect("nonempty orbit");
        for r in &orbit {
            let diff: Vec<i64> = best.iter().zip(r).map(|(a, b)| a - b).collect();
            if self.coeffs(&diff).iter().any(|&c| c < 0) {
                return Err(Error::Assertion(format!("orbit element {r:?} not below {best:?}")));
            }
        }
        Ok(best)
    }

    /// Θ(R, Π): one orbit maximum per length class, ordered by length.
    pub fn big_theta(&self) -> Vec<Vec<i64>> {
        let mut lengths: BTreeSet<i64> = BTreeSet::new();
        for r in &self.roots {
            lengths.insert(self.form().norm(r));
        }
        lengths
            .into_iter()
            .map(|n| {
                let rep = self.roots.iter().find(|r| self.form().norm(r) == n).expect("class");
                self.orbit_max(rep).expect("root")
            })
            .collect()
    }

    /// The short, long and extra-long classes (integer coordinates).
    pub fn partition(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let min = self.roots.iter().map(|r| self.form().norm(r)).min().unwrap_or(0);
        let mut sh = Vec::new();
        let mut lg = Vec::new();
        let mut ex = Vec::new();
        for r in &self.roots {
            let n = self.form().norm(r);
            if n == min {
                sh.push(r.clone());
            } else if r.iter().all(|x| x % 2 == 0) && {
                let half: Vec<i64> = r.iter().map(|x| x / 2).collect();
                self.contains(&half) && self.form().norm(&half) == min
            } {
                ex.push(r.clone());
            } else {
                lg.push(r.clone());
            }
        }
        (sh, lg, ex)
    }

    /// Cartan matrix `(α_i∨, α_j)` of the base.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_of(self.form(), &self.base)
    }
}

fn left_inverse(bq: &QMatrix) -> Result<QMatrix> {
    // bq has the base vectors as rows (k × dim). Find X (k × dim) with
    // X · v = coefficients whenever v lies in the span: X = (B Bᵀ)⁻¹ B.
    let k = bq.len();
    let dim = bq[0].len();
    let mut bbt = vec![vec![linalg::q(0); k]; k];
    for i in 0..k {
        for j in 0..k {
            bbt[i][j] = (0..dim).map(|t| &bq[i][t] * &bq[j][t]).sum();
        }
    }
    let inv = linalg::inverse(&bbt).ok_or_else(|| Error::NotABase("singular base".into()))?;
    Ok((0..k)
        .map(|i| (0..dim).map(|t| (0..k).map(|j| &inv[i][j] * &bq[j][t]).sum()).collect())
        .collect())
}

/// Cartan matrix `a_ij = (α_i∨, α_j)` of a list of vectors.
pub fn cartan_of(form: &Form, base: &[Vec<i64>]) -> Vec<Vec<i64>> {
    base.iter()
        .map(|a| base.iter().map(|b| form.coroot_pair(a, b).expect("integral Cartan entry")).collect())
        .collect()
}

/// Base of an explicit finite root set: positive roots under a regular
/// integer functional that are not sums of two positive roots.
pub fn find_base(roots: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if roots.is_empty() {
        return Err(Error::Empty("root set".into()));
    }
    let bound = roots.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    // Weights K^i with K > 2·bound never vanish on nonzero differences of
    // coordinate vectors within the bound, hence are regular on R.
    let k = 2 * bound + 1;
    let dim = roots[0].len();
    let weights: Vec<i64> = (0..dim).map(|i| k.pow(i as u32)).collect();
    let f = |v: &[i64]| v.iter().zip(&weights).map(|(a, b)| a * b).sum::<i64>();
    if roots.iter().any(|r| f(r) == 0) {
        return Err(Error::Assertion("functional vanishes on a root".into()));
    }
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| f(r) > 0).collect();
    let pos_set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
    let mut base: Vec<Vec<i64>> = positive
        .iter()
        .filter(|b| {
            !positive.iter().any(|g| {
                let diff: Vec<i64> = b.iter().zip(g.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .map(|b| (*b).clone())
        .collect();
    base.sort_by_key(|b| f(b));
    Ok(base)
}

fn standard_reduced(t: FiniteType, rank: usize) -> Option<Vec<Vec<i64>>> {
    let g = standard_gram(t, rank).ok()?;
    let base: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    Some(cartan_of(&Form::new(g), &base))
}

/// Finds a permutation `p` with `a[p[i]][p[j]] == b[i][j]` by backtracking.
pub fn match_matrices(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    fn go(a: &[Vec<i64>], b: &[Vec<i64>], p: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = p.len();
        if i == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] || a[c][c] != b[i][i] {
                continue;
            }
            if (0..i).all(|j| a[c][p[j]] == b[i][j] && a[p[j]][c] == b[j][i]) {
                used[c] = true;
                p.push(c);
                if go(a, b, p, used) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    if a.len() != b.len() {
        return None;
    }
    let mut p = Vec::new();
    let mut used = vec![false; a.len()];
    go(a, b, &mut p, &mut used).then_some(p)
}

fn recognize(sys: &FiniteRootSystem) -> Result<String> {
    let l = sys.rank();
    let cm = sys.cartan_matrix();
    let reduced = sys.is_reduced();
    for t in [FiniteType::A, FiniteType::B, FiniteType::C, FiniteType::D, FiniteType::E, FiniteType::F, FiniteType::G]
    {
        if let Some(std) = standard_reduced(t, l) {
            if match_matrices(&cm, &std).is_some() {
                let t = if reduced {
                    t
                } else if t == FiniteType::B || (t == FiniteType::A && l == 1) {
                    FiniteType::BC
                } else {
                    continue;
                };
                let expected = build_roots(t, l)?.len();
                if expected != sys.roots.len() {
                    return Err(Error::NotABase(format!(
                        "root count {} does not match type {t}_{l} ({expected})",
                        sys.roots.len()
                    )));
                }
                return Ok(format!("{t}_{l}"));
            }
        }
    }
    Err(Error::InvalidType { label: "unrecognized Cartan matrix".into(), rank: l })
}

fn build_roots(t: FiniteType, rank: usize) -> Result<Vec<Vec<i64>>> {
    let g = standard_gram(t, rank)?;
    let form = Form::new(g);
    let base: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    let mut roots = orbit_closure(&form, &base, &base);
    if t == FiniteType::BC {
        let min = roots.iter().map(|r| form.norm(r)).min().expect("roots");
        let doubles: Vec<Vec<i64>> =
            roots.iter().filter(|r| form.norm(r) == min).map(|r| r.iter().map(|x| 2 * x).collect()).collect();
        roots.extend(doubles);
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The standard root system of the given type and rank, realized in the
/// coordinates of its standard base.
pub fn build_finite(t: FiniteType, rank: usize) -> Result<FiniteRootSystem> {
    let g = standard_gram(t, rank)?;
    let space = AmbientSpace::from_int_gram(&g)?;
    let roots = build_roots(t, rank)?;
    let base: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    FiniteRootSystem::from_parts(&space, roots, base)
}

/// Partition of an arbitrary root set (finite system or window of an
/// affine/elliptic system) into short, long and extra-long classes, using
/// the projection π onto `V/V⁰` to identify `R_ex = R ∩ π⁻¹(2π(R_sh))`.
pub fn partition_shlgex(roots: &[RootVector]) -> Result<(Vec<RootVector>, Vec<RootVector>, Vec<RootVector>)> {
    if roots.is_empty() {
        return Err(Error::Empty("root set".into()));
    }
    let space = Arc::clone(roots[0].space());
    let pi = Projection::pi(&space)?;
    let norms = roots
        .iter()
        .map(|r| crate::core_lattice::pairing(r, r))
        .collect::<Result<Vec<Rational>>>()?;
    let min = norms.iter().min().expect("nonempty").clone();
    let mut short_images: HashSet<Vec<Rational>> = HashSet::new();
    for (r, n) in roots.iter().zip(&norms) {
        if *n == min {
            let img = pi.apply(r)?;
            short_images.insert(img.iter().map(|x| x * linalg::q(2)).collect());
        }
    }
    let (mut sh, mut lg, mut ex) = (Vec::new(), Vec::new(), Vec::new());
    for (r, n) in roots.iter().zip(&norms) {
        if *n == min {
            sh.push(r.clone());
        } else if short_images.contains(&pi.apply(r)?) {
            ex.push(r.clone());
        } else {
            lg.push(r.clone());
        }
    }
    debug_assert!(!min.is_zero());
    Ok((sh, lg, ex))
}
