//! Generalized Cartan matrices of affine bases, black/white marks, and
//! classification against the diagram tables via canonical forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::algorithm::AffineDatum;
use super::model::null_marks;
use super::types::{AffineType, DiagramData};

/// A base `{α₀, …, α_l}` with its generalized Cartan matrix, marks and δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedAffineBase {
    /// Elements in adapted coordinates.
    pub elements: Vec<Vec<i64>>,
    /// `marks[i]` is true iff `2αᵢ ∈ R`.
    pub marks: Vec<bool>,
    /// `gcm[i][j] = (αᵢ∨, αⱼ)`.
    pub gcm: Vec<Vec<i64>>,
    /// Recognized type, when it is in the classification list.
    pub type_label: Option<AffineType>,
    /// δ(Π) in adapted coordinates.
    pub delta: Vec<i64>,
    /// Positive primitive null vector of the GCM.
    pub delta_marks: Vec<i64>,
}

impl MarkedAffineBase {
    /// Structured diagram for rendering, laid out like the matching table
    /// entry when the type is known.
    pub fn diagram(&self) -> DiagramData {
        let layout = match &self.type_label {
            Some(t) => match diagram_isomorphism(&self.gcm, &self.marks, &t.diagram().0, &t.diagram().1) {
                Some(p) => t.layout().iter().map(|&i| p[i]).collect(),
                None => (0..self.gcm.len()).collect(),
            },
            None => (0..self.gcm.len()).collect(),
        };
        DiagramData::new(self.type_label.map(|t| t.to_string()), &self.gcm, &self.marks, layout)
    }
}

/// Computes the GCM, checks it is of affine type, and derives δ(Π) and the
/// black/white marks from membership queries.
pub fn cartan_and_delta(datum: &AffineDatum, base: &[Vec<i64>]) -> Result<MarkedAffineBase> {
    let n = datum.l() + 1;
    if base.len() != n || base.iter().any(|b| b.len() != n) {
        return Err(Error::Dimension(format!("a base needs {n} vectors of length {n}")));
    }
    let form = datum.form();
    let gcm: Vec<Vec<i64>> = base
        .iter()
        .map(|a| {
            base.iter()
                .map(|b| {
                    form.coroot_pair(a, b)
                        .ok_or_else(|| Error::NotAffine(format!("non-integral or isotropic pairing {a:?}, {b:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    for (i, row) in gcm.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if (i == j && x != 2) || (i != j && x > 0) {
                return Err(Error::NotAffine(format!("entry ({i},{j}) = {x}")));
            }
        }
    }
    let delta_marks = null_marks(&gcm)?;
    let mut delta = vec![0i64; n];
    for (d, b) in delta_marks.iter().zip(base) {
        for (x, y) in delta.iter_mut().zip(b) {
            *x += d * y;
        }
    }
    let l = n - 1;
    let radical_generator = delta[..l].iter().all(|&x| x == 0) && delta[l].abs() == 1;
    if !radical_generator {
        return Err(Error::NotABase(format!("δ(Π) = {delta:?} does not generate the radical lattice")));
    }
    let marks: Vec<bool> = base.iter().map(|b| datum.contains(&b.iter().map(|x| 2 * x).collect::<Vec<_>>())).collect();
    let type_label = classify(&gcm, &marks).ok();
    Ok(MarkedAffineBase { elements: base.to_vec(), marks, gcm, type_label, delta, delta_marks })
}

/// Labels a marked base from the classification list.
pub fn classify_affine(base: &MarkedAffineBase) -> Result<AffineType> {
    classify(&base.gcm, &base.marks)
}

/// Labels a (GCM, marks) pair up to diagram automorphism.
pub fn classify(gcm: &[Vec<i64>], black: &[bool]) -> Result<AffineType> {
    let n = gcm.len();
    if n < 2 || black.len() != n {
        return Err(Error::Dimension("need at least two nodes with marks".into()));
    }
    // A pattern where only α₀ is black lies outside the list.
    if black[0] && !black[1..].iter().any(|&b| b) {
        return Err(Error::NoMatch("2α₀ ∈ R but 2αᵢ ∉ R for all i ≠ 0".into()));
    }
    let target = canonical_form(gcm, black);
    AffineType::all_of_rank(n - 1)
        .into_iter()
        .find(|t| {
            let (a, b) = t.diagram();
            canonical_form(&a, &b) == target
        })
        .ok_or_else(|| Error::NoMatch(format!("GCM {gcm:?} with marks {black:?}")))
}

/// Encodes marks on the diagonal so that matrix matching respects them.
fn marked(gcm: &[Vec<i64>], black: &[bool]) -> Vec<Vec<i64>> {
    let mut m = gcm.to_vec();
    for (i, &b) in black.iter().enumerate() {
        if b {
            m[i][i] += 100;
        }
    }
    m
}

/// Canonical form of a marked GCM under simultaneous row/column
/// permutation: colour refinement followed by individualization, keeping
/// the lexicographically least relabelled matrix over all leaves.
pub fn canonical_form(gcm: &[Vec<i64>], black: &[bool]) -> Vec<Vec<i64>> {
    let m = marked(gcm, black);
    let mut best: Option<Vec<Vec<i64>>> = None;
    search(&m, refine(&m, vec![0; m.len()]), &mut best);
    best.expect("at least one leaf")
}

/// Refines a colouring until stable; colours are canonical ranks of
/// (old colour, neighbourhood signature).
fn refine(m: &[Vec<i64>], mut colour: Vec<usize>) -> Vec<usize> {
    let n = m.len();
    loop {
        let sigs: Vec<(usize, i64, Vec<(i64, i64, usize)>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<(i64, i64, usize)> =
                    (0..n).filter(|&j| j != i && m[i][j] != 0).map(|j| (m[i][j], m[j][i], colour[j])).collect();
                nb.sort();
                (colour[i], m[i][i], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let rank: BTreeMap<_, usize> = uniq.into_iter().enumerate().map(|(r, s)| (s, r)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let classes = |c: &[usize]| {
            let mut v = c.to_vec();
            v.sort();
            v.dedup();
            v.len()
        };
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn search(m: &[Vec<i64>], colour: Vec<usize>, best: &mut Option<Vec<Vec<i64>>>) {
    let n = m.len();
    let mut counts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colour.iter().enumerate() {
        counts.entry(c).or_default().push(i);
    }
    match counts.values().find(|cell| cell.len() > 1) {
        None => {
            // Discrete colouring: order nodes by colour.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| colour[i]);
            let relabelled: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| m[i][j]).collect()).collect();
            if best.as_ref().map_or(true, |b| relabelled < *b) {
                *best = Some(relabelled);
            }
        }
        Some(cell) => {
            let cell = cell.clone();
            for &v in &cell {
                // Individualize v: give it a colour just below its cell's.
                let mut c: Vec<usize> = colour.iter().map(|&x| 2 * x + 1).collect();
                c[v] -= 1;
                search(m, refine(m, c), best);
            }
        }
    }
}

/// A node permutation `p` with `a[p[i]][p[j]] == b[i][j]` and equal marks,
/// preferring `p[0] = 0`.
pub fn diagram_isomorphism(a: &[Vec<i64>], a_black: &[bool], b: &[Vec<i64>], b_black: &[bool]) -> Option<Vec<usize>> {
    let ma = marked(a, a_black);
    let mb = marked(b, b_black);
    let n = ma.len();
    if mb.len() != n {
        return None;
    }
    fn extend(ma: &[Vec<i64>], mb: &[Vec<i64>], p: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = ma.len();
        let i = p.len();
        if i == n {
            return true;
        }
        // Candidates in natural order, so node 0 is tried for node 0 first.
        for c in 0..n {
            if used[c] {
                continue;
            }
            if ma[c][c] != mb[i][i] {
                continue;
            }
            let ok = (0..i).all(|j| ma[c][p[j]] == mb[i][j] && ma[p[j]][c] == mb[j][i]);
            if ok {
                p.push(c);
                used[c] = true;
                if extend(ma, mb, p, used) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(&ma, &mb, &mut p, &mut used) {
        Some(p)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::model::AffineModel;
    use super::*;

    #[test]
    fn rank_one_diagrams() {
        assert_eq!(classify(&[vec![2, -2], vec![-2, 2]], &[false, false]).unwrap().to_string(), "A_1^(1)");
        assert_eq!(classify(&[vec![2, -1], vec![-4, 2]], &[false, false]).unwrap().to_string(), "A_2^(2)");
        assert_eq!(classify(&[vec![2, -4], vec![-1, 2]], &[false, false]).unwrap().to_string(), "A_2^(2)");
        assert_eq!(classify(&[vec![2, -2], vec![-2, 2]], &[true, true]).unwrap().to_string(), "C^(2)(2)");
        assert_eq!(classify(&[vec![2, -2], vec![-2, 2]], &[false, true]).unwrap().to_string(), "A^(4)(0,2)");
        assert!(matches!(classify(&[vec![2, -2], vec![-2, 2]], &[true, false]), Err(Error::NoMatch(_))));
    }

    #[test]
    fn c2_chain() {
        // α₂ ⇒ α₁ ⇐ α₀, all white (α₁ short).
        let gcm = vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]];
        assert_eq!(classify(&gcm, &[false; 3]).unwrap().to_string(), "C_2^(1)");
    }

    #[test]
    fn tables_are_pairwise_distinct_and_self_classifying() {
        for l in 1..=8 {
            let types = AffineType::all_of_rank(l);
            for t in &types {
                let (a, b) = t.diagram();
                assert_eq!(classify(&a, &b).unwrap(), *t);
            }
            for (i, s) in types.iter().enumerate() {
                for t in &types[i + 1..] {
                    let (a, b) = s.diagram();
                    let (c, d) = t.diagram();
                    assert_ne!(canonical_form(&a, &b), canonical_form(&c, &d), "{s} vs {t}");
                }
            }
        }
    }

    #[test]
    fn classification_is_permutation_invariant() {
        let t: AffineType = "E_6^(1)".parse().unwrap();
        let (a, b) = t.diagram();
        let perm = [3, 5, 0, 6, 1, 4, 2];
        let pa: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| a[i][j]).collect()).collect();
        let pb: Vec<bool> = perm.iter().map(|&i| b[i]).collect();
        assert_eq!(classify(&pa, &pb).unwrap(), t);
        let p = diagram_isomorphism(&pa, &pb, &a, &b).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(pa[p[i]][p[j]], a[i][j]);
            }
        }
    }

    #[test]
    fn cartan_and_delta_on_models() {
        for l in 1..=3 {
            for t in AffineType::all_of_rank(l) {
                let m = AffineModel::new(t).unwrap();
                let d = m.datum().unwrap();
                let r = d.affine_base().unwrap();
                let mb = cartan_and_delta(&d, &r.base).unwrap();
                assert_eq!(mb.gcm, m.gcm, "{t}");
                assert_eq!(mb.marks, m.black, "{t}");
                assert_eq!(mb.delta_marks, m.marks, "{t}");
                assert_eq!(d.form().norm(&mb.delta), 0);
                assert_eq!(classify_affine(&mb).unwrap(), t);
            }
        }
    }
}
