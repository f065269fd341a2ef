//! Isotropic root multiplicities via marking lines: for a primitive isotropic
//! direction a′, a fundamental set adapted to a′ yields
//! `dim g_{ma′} = |{α′ ∈ Π′ : k′(α′) | m}|`.
//!
//! Isotropic vectors are written `(p, z)` for `pδ + za`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::affine_base::{classify, AffineType};
use crate::elliptic_core::{compute_kg, EllipticDatum, RootBox};
use crate::error::{Error, Result};
use crate::linalg;

/// Content of an isotropic lattice point: the gcd of its coordinates, 0 at
/// the origin.
pub fn content(p: i64, z: i64) -> i64 {
    linalg::gcd(p, z)
}

/// Canonical primitive direction and signed multiple with `(p, z) = m·a′`;
/// `None` at the origin.
pub fn factor(p: i64, z: i64) -> Option<([i64; 2], i64)> {
    let c = content(p, z);
    if c == 0 {
        return None;
    }
    let (x, y) = (p / c, z / c);
    let sign = if x > 0 || (x == 0 && y > 0) { 1 } else { -1 };
    Some(([sign * x, sign * y], sign * c))
}

/// A primitive isotropic direction together with a fundamental set adapted
/// to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingLine {
    /// a′ in `(δ, a)` coordinates, first nonzero coordinate positive.
    pub direction: [i64; 2],
    /// δ″ with `{δ″, a′}` a basis of M.
    pub delta2: [i64; 2],
    /// Π′ in datum coordinates; `Π′ ∖ {α₀′} = Π ∖ {α₀}`.
    pub pi: Vec<Vec<i64>>,
    pub k: Vec<i64>,
    pub g: Vec<bool>,
    /// Affine type of `π_{a′}(Π′)` when it classifies.
    pub affine_type: Option<AffineType>,
}

impl MarkingLine {
    /// `dim g_{m a′}` for `m ≠ 0`.
    pub fn mult_along(&self, m: i64) -> Result<usize> {
        if m == 0 {
            return Err(Error::InvalidDatum("m must be nonzero along a marking line".into()));
        }
        Ok(self.k.iter().filter(|&&k| m % k == 0).count())
    }
}

/// δ″ completing a′ to a basis of M, with its δ-coordinate (or, when a′ is
/// a multiple of a, its a-coordinate) reduced modulo a′.
fn complete_basis(a: [i64; 2]) -> [i64; 2] {
    let (_, s, t) = linalg::ext_gcd(a[0], a[1]);
    // s·x + t·y = 1, so (t, −s) has determinant 1 against a′.
    let mut d = [t, -s];
    let idx = if a[0] != 0 { 0 } else { 1 };
    let q = d[idx].div_euclid(a[idx]);
    d[0] -= q * a[0];
    d[1] -= q * a[1];
    d
}

/// Builds the fundamental set adapted to the primitive direction `a′`.
pub fn fundamental_set_for(datum: &EllipticDatum, direction: [i64; 2]) -> Result<MarkingLine> {
    let Some((dir, m)) = factor(direction[0], direction[1]) else {
        return Err(Error::Isotropic("the zero vector is not a marking".into()));
    };
    if m.abs() != 1 {
        return Err(Error::InvalidDatum(format!("{direction:?} is not primitive")));
    }
    let l = datum.l();
    let delta2 = complete_basis(dir);
    let affine = datum.projected_affine_datum(delta2, dir)?;
    let base = affine.affine_base()?;
    let fin = base.alpha0[..l].to_vec();
    let u = base.alpha0[l];
    let t = datum.closure().modulus;
    let lift = (0..t)
        .map(|v| {
            let mut w = fin.clone();
            w.push(u * delta2[0] + v * dir[0]);
            w.push(u * delta2[1] + v * dir[1]);
            w
        })
        .find(|w| datum.contains(w))
        .ok_or_else(|| Error::LiftFailed(format!("α₀ of the quotient along {dir:?} has no preimage in R")))?;
    let mut pi = vec![lift];
    pi.extend((1..=l).map(|i| datum.node(i)));
    let a_vec = datum.iso(dir[0], dir[1]);
    let (k, g) = compute_kg(&|v| datum.contains(v), &pi, &a_vec)?;
    let form = datum.form();
    let gcm: Vec<Vec<i64>> = pi
        .iter()
        .map(|x| pi.iter().map(|y| form.coroot_pair(x, y).unwrap_or(i64::MIN)).collect())
        .collect();
    let affine_type = classify(&gcm, &vec![false; l + 1]).ok();
    Ok(MarkingLine { direction: dir, delta2, pi, k, g, affine_type })
}

/// All primitive directions with `max(|x|, |y|) ≤ bound`, one per ± pair,
/// each with its fundamental set.
pub fn marking_lines(datum: &EllipticDatum, bound: i64) -> Result<Vec<MarkingLine>> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            if (x == 0 && y <= 0) || content(x, y) != 1 {
                continue;
            }
            out.push(fundamental_set_for(datum, [x, y])?);
        }
    }
    Ok(out)
}

/// `dim g_{ma′}` along a marking line.
pub fn mult_along(line: &MarkingLine, m: i64) -> Result<usize> {
    line.mult_along(m)
}

/// Multiplicity evaluator with a per-direction cache of fundamental sets.
pub struct Multiplicities<'a> {
    datum: &'a EllipticDatum,
    cache: Mutex<HashMap<[i64; 2], Arc<MarkingLine>>>,
}

impl<'a> Multiplicities<'a> {
    pub fn new(datum: &'a EllipticDatum) -> Self {
        Multiplicities { datum, cache: Mutex::new(HashMap::new()) }
    }

    /// The (cached) marking line of a primitive direction.
    pub fn line(&self, dir: [i64; 2]) -> Result<Arc<MarkingLine>> {
        if let Some(line) = self.cache.lock().expect("cache lock").get(&dir) {
            return Ok(line.clone());
        }
        let line = Arc::new(fundamental_set_for(self.datum, dir)?);
        self.cache.lock().expect("cache lock").insert(dir, line.clone());
        Ok(line)
    }

    /// `dim g_λ` for a lattice vector `λ = (c₁, …, c_l, p, z)`.
    pub fn mult_at(&self, v: &[i64]) -> Result<usize> {
        let l = self.datum.l();
        if v.len() != l + 2 {
            return Err(Error::Dimension(format!("expected {} coordinates", l + 2)));
        }
        if v[..l].iter().any(|&c| c != 0) {
            return Ok(usize::from(self.datum.contains(v)));
        }
        self.isotropic(v[l], v[l + 1])
    }

    /// `dim g_{pδ+za}`.
    pub fn isotropic(&self, p: i64, z: i64) -> Result<usize> {
        match factor(p, z) {
            None => Ok(self.datum.l() + 2),
            Some((dir, m)) => self.line(dir)?.mult_along(m),
        }
    }
}

/// `dim g_λ` (uncached).
pub fn mult_at(datum: &EllipticDatum, v: &[i64]) -> Result<usize> {
    Multiplicities::new(datum).mult_at(v)
}

/// A residue-class rule of a multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRule {
    pub modulus: i64,
    /// `(p mod t, z mod t)`.
    pub residue: [i64; 2],
    pub value: usize,
}

/// Isotropic multiplicities on a box, with a residue-class summary when one
/// with modulus 1, 2 or 4 fits every point off the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityTable {
    pub p_range: [i64; 2],
    pub z_range: [i64; 2],
    /// Rows ordered by p ascending, each by z ascending.
    pub entries: Vec<Vec<usize>>,
    /// Value at the origin when it lies in the box.
    pub origin: Option<usize>,
    pub symbolic: Vec<SymbolicRule>,
}

impl MultiplicityTable {
    /// Entry at `(p, z)` if inside the box.
    pub fn get(&self, p: i64, z: i64) -> Option<usize> {
        if p < self.p_range[0] || p > self.p_range[1] || z < self.z_range[0] || z > self.z_range[1] {
            return None;
        }
        Some(self.entries[(p - self.p_range[0]) as usize][(z - self.z_range[0]) as usize])
    }

    /// Value predicted by the symbolic summary (off the origin).
    pub fn symbolic_value(&self, p: i64, z: i64) -> Option<usize> {
        self.symbolic.iter().find_map(|r| {
            let t = r.modulus;
            (p.rem_euclid(t) == r.residue[0] && z.rem_euclid(t) == r.residue[1]).then_some(r.value)
        })
    }

    fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.p_range[0]..=self.p_range[1]).flat_map(move |p| (self.z_range[0]..=self.z_range[1]).map(move |z| (p, z)))
    }

    fn fit(&mut self) {
        for t in [1, 2, 4] {
            let mut rules: BTreeMap<[i64; 2], usize> = BTreeMap::new();
            let mut ok = true;
            for (p, z) in self.points() {
                if (p, z) == (0, 0) {
                    continue;
                }
                let v = self.get(p, z).expect("in box");
                let key = [p.rem_euclid(t), z.rem_euclid(t)];
                if *rules.entry(key).or_insert(v) != v {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.symbolic =
                    rules.into_iter().map(|(residue, value)| SymbolicRule { modulus: t, residue, value }).collect();
                return;
            }
        }
    }
}

impl fmt::Display for MultiplicityTable {
    /// Grid with the origin at the bottom left: a to the right, δ upward.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let pw = self.p_range.iter().map(|p| p.to_string().len()).max().unwrap_or(1);
        for p in (self.p_range[0]..=self.p_range[1]).rev() {
            let row = &self.entries[(p - self.p_range[0]) as usize];
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{p:>pw$} | {}", cells.join(" "))?;
        }
        let cols: Vec<String> = (self.z_range[0]..=self.z_range[1]).map(|z| format!("{z:>width$}")).collect();
        writeln!(f, "{:>pw$}   {}", "", "-".repeat(cols.join(" ").len()))?;
        write!(f, "{:>pw$}   {}", "", cols.join(" "))
    }
}

/// Multiplicities `dim g_{pδ+za}` on `p_range × z_range`.
pub fn mult_table(datum: &EllipticDatum, p_range: [i64; 2], z_range: [i64; 2]) -> Result<MultiplicityTable> {
    if p_range[0] > p_range[1] || z_range[0] > z_range[1] {
        return Err(Error::Empty("multiplicity table box".into()));
    }
    let engine = Multiplicities::new(datum);
    let mut entries = Vec::new();
    for p in p_range[0]..=p_range[1] {
        let row = (z_range[0]..=z_range[1]).map(|z| engine.isotropic(p, z)).collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let mut table = MultiplicityTable { p_range, z_range, entries, origin: None, symbolic: Vec::new() };
    table.origin = table.get(0, 0);
    table.fit();
    Ok(table)
}

/// A lattice map fixing `α₁, …, α_l` and acting on `(p, z)` by a 2×2
/// integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    pub name: String,
    /// `(p, z) ↦ (m₀₀p + m₀₁z, m₁₀p + m₁₁z)`.
    pub matrix: [[i64; 2]; 2],
}

impl LatticeMap {
    pub fn new(name: &str, matrix: [[i64; 2]; 2]) -> Self {
        LatticeMap { name: name.into(), matrix }
    }

    /// The identity map.
    pub fn identity() -> Self {
        Self::new("id", [[1, 0], [0, 1]])
    }

    fn det(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// The inverse map; errors unless the determinant is ±1.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.abs() != 1 {
            return Err(Error::NotIsomorphism(format!("{} has determinant {d}", self.name)));
        }
        let m = self.matrix;
        Ok(Self::new(&format!("{}⁻¹", self.name), [[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]]))
    }

    /// Image of a lattice vector `(c₁, …, c_l, p, z)`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = v.len();
        let (p, z) = (v[n - 2], v[n - 1]);
        let m = self.matrix;
        let mut w = v.to_vec();
        w[n - 2] = m[0][0] * p + m[0][1] * z;
        w[n - 1] = m[1][0] * p + m[1][1] * z;
        w
    }
}

/// Checks that `f` maps the roots of `d1` bijectively onto those of `d2` on
/// the box (error with a witness otherwise) and returns whether it
/// preserves all multiplicities there.
pub fn check_iso_transport(f: &LatticeMap, d1: &EllipticDatum, d2: &EllipticDatum, bx: &RootBox) -> Result<bool> {
    let l = d1.l();
    if d2.l() != l {
        return Err(Error::NotIsomorphism("ranks differ".into()));
    }
    let g1: Vec<&[i64]> = d1.node_gram()[1..].iter().map(|r| &r[1..]).collect();
    let g2: Vec<&[i64]> = d2.node_gram()[1..].iter().map(|r| &r[1..]).collect();
    let (s1, s2) = (g1[0][0], g2[0][0]);
    if (0..l).any(|i| (0..l).any(|j| g1[i][j] * s2 != g2[i][j] * s1)) {
        return Err(Error::NotIsomorphism("the finite parts are not proportional".into()));
    }
    let inv = f.inverse()?;
    for v in d1.roots_in_box(bx) {
        if !d2.contains(&f.apply(&v)) {
            return Err(Error::NotIsomorphism(format!("{}({v:?}) = {:?} is not a root", f.name, f.apply(&v))));
        }
    }
    for v in d2.roots_in_box(bx) {
        if !d1.contains(&inv.apply(&v)) {
            return Err(Error::NotIsomorphism(format!("{v:?} is a root without a root preimage under {}", f.name)));
        }
    }
    let m1 = Multiplicities::new(d1);
    let m2 = Multiplicities::new(d2);
    for p in -bx.p..=bx.p {
        for z in -bx.z..=bx.z {
            let img = f.apply(&[p, z]);
            if m1.isotropic(p, z)? != m2.isotropic(img[0], img[1])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The companion datum of type `A_{2l}^(2)` with `k(α) = (α,α)/(γ₁,γ₁)`,
/// mapped onto case (10) by `δ ↦ 2δ − a`, `a ↦ δ`.
pub fn companion_even(l: usize) -> Result<EllipticDatum> {
    let t = AffineType::new(crate::affine_base::AffineFamily::AEvenTwisted, l)?;
    let (gcm, _) = t.diagram();
    let gram = crate::affine_base::symmetrize(&gcm)?;
    let short = (0..=l).map(|i| gram[i][i]).min().unwrap();
    let k = (0..=l).map(|i| gram[i][i] / short).collect();
    EllipticDatum::new(t, k, vec![false; l + 1], Default::default())
}

/// The companion datum of type `D_{l+1}^(2)` with `k ≡ 1` and `g(α₁)` odd,
/// mapped onto case (10) by `a ↦ 2δ + a`.
pub fn companion_twisted(l: usize) -> Result<EllipticDatum> {
    let t = AffineType::new(crate::affine_base::AffineFamily::DTwisted, l)?;
    let mut g = vec![false; l + 1];
    g[1] = true;
    EllipticDatum::new(t, vec![1; l + 1], g, Default::default())
}

/// The maps relating case (10) to itself and to its companions: each entry
/// is (map, source datum, target datum).
pub fn case_ten_isomorphisms(l: usize) -> Result<Vec<(LatticeMap, EllipticDatum, EllipticDatum)>> {
    let ten = crate::elliptic_core::preset(10, l)?;
    Ok(vec![
        (LatticeMap::new("f2", [[2, 1], [-1, 0]]), companion_even(l)?, ten.clone()),
        (LatticeMap::new("f3", [[-1, 0], [0, 1]]), ten.clone(), ten.clone()),
        (LatticeMap::new("f4", [[1, 0], [0, -1]]), ten.clone(), ten.clone()),
        (LatticeMap::new("f5", [[1, 0], [1, 1]]), ten.clone(), ten.clone()),
        (LatticeMap::new("f6", [[1, 2], [0, 1]]), companion_twisted(l)?, ten),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic_core::preset;
    use proptest::prelude::*;

    /// dim g_{pδ+za} for case (10) as a closed formula.
    fn case_ten(l: usize, p: i64, z: i64) -> usize {
        match (p.rem_euclid(4), z.rem_euclid(2)) {
            _ if (p, z) == (0, 0) => l + 2,
            (0, _) => l + 1,
            (1, _) | (3, _) => 1,
            (2, 0) => l,
            _ => l + 1,
        }
    }

    #[test]
    fn content_values() {
        assert_eq!(content(40, 200), 40);
        assert_eq!(content(65, 200), 5);
        assert_eq!(content(0, 0), 0);
        assert_eq!(content(-6, 4), 2);
        assert_eq!(factor(-2, 4), Some(([1, -2], -2)));
        assert_eq!(factor(0, -3), Some(([0, 1], -3)));
    }

    #[test]
    fn basis_completion_is_unimodular() {
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                if content(x, y) == 1 {
                    let d = complete_basis([x, y]);
                    assert_eq!(d[0] * y - d[1] * x, 1, "({x},{y})");
                }
            }
        }
    }

    #[test]
    fn lines_at_bound_one() {
        let d = preset(1, 2).unwrap();
        let dirs: Vec<[i64; 2]> = marking_lines(&d, 1).unwrap().iter().map(|m| m.direction).collect();
        assert_eq!(dirs, vec![[0, 1], [1, -1], [1, 0], [1, 1]]);
        let dirs: Vec<[i64; 2]> = marking_lines(&d, 4).unwrap().iter().map(|m| m.direction).collect();
        assert!(!dirs.contains(&[2, 4]));
    }

    #[test]
    fn original_marking_recovers_datum() {
        for case in 1..=10 {
            let d = preset(case, 3).unwrap();
            let line = fundamental_set_for(&d, [0, 1]).unwrap();
            let mut k = line.k.clone();
            let mut kd = d.k().to_vec();
            k.sort();
            kd.sort();
            assert_eq!(k, kd, "case{case}");
            assert_eq!(line.affine_type, Some(d.affine_type()), "case{case}");
            assert!(line.k.contains(&1));
        }
    }

    #[test]
    fn case_ten_delta_line_is_the_even_companion() {
        let d = preset(10, 2).unwrap();
        let line = fundamental_set_for(&d, [1, 0]).unwrap();
        assert_eq!(line.affine_type.unwrap().to_string(), "A_4^(2)");
        let mut k = line.k.clone();
        k.sort();
        assert_eq!(k, vec![1, 2, 4]);
        assert_eq!(line.mult_along(2).unwrap(), 2);
        assert_eq!(line.mult_along(-3).unwrap(), 1);
        assert_eq!(line.mult_along(4).unwrap(), 3);
        assert!(line.mult_along(0).is_err());
    }

    #[test]
    fn case_ten_points() {
        let d = preset(10, 2).unwrap();
        let v = |p, z| d.iso(p, z);
        assert_eq!(mult_at(&d, &v(2, 0)).unwrap(), 2);
        assert_eq!(mult_at(&d, &v(4, 1)).unwrap(), 3);
        assert_eq!(mult_at(&d, &v(1, 5)).unwrap(), 1);
        assert_eq!(mult_at(&d, &v(0, 0)).unwrap(), 4);
        assert_eq!(mult_at(&d, &d.node(1)).unwrap(), 1);
        assert_eq!(mult_at(&d, &[2, 0, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn case_ten_table_fits_modulus_four() {
        let d = preset(10, 2).unwrap();
        let t = mult_table(&d, [0, 8], [0, 9]).unwrap();
        assert_eq!(t.origin, Some(4));
        assert_eq!(t.symbolic.first().map(|r| r.modulus), Some(4));
        for p in 0..=8 {
            for z in 0..=9 {
                assert_eq!(t.get(p, z), Some(case_ten(2, p, z)), "({p},{z})");
                if (p, z) != (0, 0) {
                    assert_eq!(t.symbolic_value(p, z), t.get(p, z));
                }
            }
        }
        let text = t.to_string();
        assert!(text.lines().next().unwrap().starts_with("8 | 3 3 3"));
    }

    #[test]
    fn identity_and_case_ten_maps_transport() {
        let bx = RootBox { fin: 3, p: 4, z: 4 };
        let d = preset(10, 2).unwrap();
        assert!(check_iso_transport(&LatticeMap::identity(), &d, &d, &bx).unwrap());
        for (f, d1, d2) in case_ten_isomorphisms(2).unwrap() {
            assert!(check_iso_transport(&f, &d1, &d2, &bx).unwrap(), "{}", f.name);
        }
    }

    #[test]
    fn non_isomorphism_is_reported() {
        let bx = RootBox { fin: 3, p: 4, z: 4 };
        let d = preset(10, 2).unwrap();
        let swap = LatticeMap::new("swap", [[0, 1], [1, 0]]);
        assert!(matches!(check_iso_transport(&swap, &d, &d, &bx), Err(Error::NotIsomorphism(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sign_symmetry(case in 1usize..=10, p in -6i64..=6, z in -6i64..=6) {
            let d = preset(case, 3).unwrap();
            let m = Multiplicities::new(&d);
            prop_assert_eq!(m.isotropic(p, z).unwrap(), m.isotropic(-p, -z).unwrap());
        }

        #[test]
        fn rerun_on_own_marking_is_stable(x in 0i64..=3, y in -3i64..=3) {
            prop_assume!(content(x, y) == 1 && (x, y) != (0, -1));
            let d = preset(10, 2).unwrap();
            let a = fundamental_set_for(&d, [x, y]).unwrap();
            let b = fundamental_set_for(&d, a.direction).unwrap();
            let (mut ka, mut kb) = (a.k.clone(), b.k.clone());
            ka.sort();
            kb.sort();
            prop_assert_eq!(ka, kb);
        }
    }
}
