//! The affine types with their Dynkin diagrams (generalized Cartan matrix
//! and black/white marks, nodes numbered with α₀ first), label parsing, and
//! structured diagram data for rendering.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_roots::FiniteType;

/// Families of affine root systems (reduced and non-reduced).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineFamily {
    /// `X_l^(1)` for a reduced finite type X.
    Untwisted(FiniteType),
    /// `D_{l+1}^(2)`.
    DTwisted,
    /// `A_{2l−1}^(2)`.
    AOddTwisted,
    /// `E_6^(2)` (l = 4).
    ETwisted,
    /// `D_4^(3)` (l = 2).
    DTriality,
    /// `A_{2l}^(2)`.
    AEvenTwisted,
    /// `B^(1)(0,l)`.
    BZero,
    /// `A^(2)(0,2l−1)`.
    AZeroOdd,
    /// `C^(2)(l+1)`.
    CTwo,
    /// `A^(4)(0,2l)`.
    AFour,
}

/// An affine type: family plus rank `l` of the finite part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineType {
    pub family: AffineFamily,
    pub l: usize,
}

/// Class of finite roots used by progression models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LengthClass {
    Short,
    Long,
    Extra,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthClass::Short => "sh",
            LengthClass::Long => "lg",
            LengthClass::Extra => "ex",
        })
    }
}

/// Arithmetic progression `{n : n mod modulus ∈ residues}` of δ-coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl Progression {
    /// All integers.
    pub fn all() -> Self {
        Progression { modulus: 1, residues: vec![0] }
    }

    /// Multiples of `m`.
    pub fn multiples(m: i64) -> Self {
        Progression { modulus: m, residues: vec![0] }
    }

    /// Membership.
    pub fn contains(&self, n: i64) -> bool {
        self.residues.contains(&n.rem_euclid(self.modulus))
    }
}

impl AffineFamily {
    /// Whether the affine root system is non-reduced (contains α and 2α;
    /// these are the diagrams with black nodes).
    pub fn non_reduced(self) -> bool {
        matches!(self, AffineFamily::BZero | AffineFamily::AZeroOdd | AffineFamily::CTwo | AffineFamily::AFour)
    }
}

impl AffineType {
    /// Creates a type, validating the rank.
    pub fn new(family: AffineFamily, l: usize) -> Result<Self> {
        let ok = match family {
            AffineFamily::Untwisted(FiniteType::BC) => false,
            AffineFamily::Untwisted(FiniteType::B) => l >= 3,
            AffineFamily::Untwisted(t) => t.valid_rank(l),
            AffineFamily::DTwisted => l >= 2,
            AffineFamily::AOddTwisted => l >= 3,
            AffineFamily::ETwisted => l == 4,
            AffineFamily::DTriality => l == 2,
            AffineFamily::AEvenTwisted | AffineFamily::BZero | AffineFamily::CTwo | AffineFamily::AFour => l >= 1,
            AffineFamily::AZeroOdd => l >= 2,
        };
        if ok {
            Ok(AffineType { family, l })
        } else {
            Err(Error::InvalidType { label: format!("{family:?}"), rank: l })
        }
    }

    /// Every type of the classification list with finite rank `l`.
    pub fn all_of_rank(l: usize) -> Vec<AffineType> {
        use AffineFamily::*;
        use FiniteType as F;
        let fams = [
            Untwisted(F::A),
            Untwisted(F::B),
            Untwisted(F::C),
            Untwisted(F::D),
            Untwisted(F::E),
            Untwisted(F::F),
            Untwisted(F::G),
            DTwisted,
            AOddTwisted,
            ETwisted,
            DTriality,
            AEvenTwisted,
            BZero,
            AZeroOdd,
            CTwo,
            AFour,
        ];
        fams.into_iter().filter_map(|f| AffineType::new(f, l).ok()).collect()
    }

    /// True for types with a reduced root system.
    pub fn is_reduced(&self) -> bool {
        !self.family.non_reduced()
    }

    /// The generalized Cartan matrix (node 0 = α₀) and black marks.
    pub fn diagram(&self) -> (Vec<Vec<i64>>, Vec<bool>) {
        use AffineFamily::*;
        let l = self.l;
        let n = l + 1;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut black = vec![false; n];
        let simple = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        // Edge pointing at the shorter node `short`, multiplicity `m`.
        let arrow = |a: &mut Vec<Vec<i64>>, short: usize, long: usize, m: i64| {
            a[short][long] = -m;
            a[long][short] = -1;
        };
        let both = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -2;
            a[j][i] = -2;
        };
        let chain = |a: &mut Vec<Vec<i64>>, from: usize, to: usize| {
            for i in from..to {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        // D_{l+1}^(2) shape: α₁ ⇐ α₂ – … – α_l ⇒ α₀ (α₁, α₀ short).
        let d_twisted = |a: &mut Vec<Vec<i64>>| {
            if l == 1 {
                both(a, 0, 1);
            } else {
                arrow(a, 1, 2, 2);
                chain(a, 2, l);
                arrow(a, 0, l, 2);
            }
        };
        // A_{2l}^(2) shape: α₁ ⇐ α₂ – … – α_l ⇐ α₀.
        let a_even = |a: &mut Vec<Vec<i64>>| {
            if l == 1 {
                arrow(a, 1, 0, 4);
            } else {
                arrow(a, 1, 2, 2);
                chain(a, 2, l);
                arrow(a, l, 0, 2);
            }
        };
        // B_l^(1) shape: α₁ ⇐ α₂ – … – α_l with α₀ on α_{l−1}; for l = 2
        // this degenerates to α₂ ⇒ α₁ ⇐ α₀.
        let b_untwisted = |a: &mut Vec<Vec<i64>>| {
            if l == 2 {
                arrow(a, 1, 2, 2);
                arrow(a, 1, 0, 2);
            } else {
                arrow(a, 1, 2, 2);
                chain(a, 2, l);
                simple(a, 0, l - 1);
            }
        };
        match self.family {
            Untwisted(FiniteType::A) => {
                if l == 1 {
                    both(&mut a, 0, 1);
                } else {
                    chain(&mut a, 0, l);
                    simple(&mut a, l, 0);
                }
            }
            Untwisted(FiniteType::B) => b_untwisted(&mut a),
            Untwisted(FiniteType::C) => {
                if l == 2 {
                    arrow(&mut a, 1, 2, 2);
                    arrow(&mut a, 1, 0, 2);
                } else {
                    arrow(&mut a, 2, 1, 2);
                    chain(&mut a, 2, l);
                    arrow(&mut a, l, 0, 2);
                }
            }
            Untwisted(FiniteType::D) => {
                chain(&mut a, 1, l - 1);
                simple(&mut a, 0, 2);
                simple(&mut a, l, l - 2);
            }
            Untwisted(FiniteType::E) => match l {
                6 => {
                    chain(&mut a, 1, 5);
                    simple(&mut a, 6, 3);
                    simple(&mut a, 0, 6);
                }
                7 => {
                    chain(&mut a, 0, 6);
                    simple(&mut a, 7, 3);
                }
                _ => {
                    chain(&mut a, 0, 7);
                    simple(&mut a, 8, 5);
                }
            },
            Untwisted(FiniteType::F) => {
                simple(&mut a, 0, 4);
                simple(&mut a, 4, 3);
                arrow(&mut a, 2, 3, 2);
                simple(&mut a, 2, 1);
            }
            Untwisted(FiniteType::G) => {
                arrow(&mut a, 1, 2, 3);
                simple(&mut a, 2, 0);
            }
            Untwisted(FiniteType::BC) => unreachable!("BC is not an untwisted type"),
            DTwisted => d_twisted(&mut a),
            AOddTwisted => {
                arrow(&mut a, l - 1, l, 2);
                chain(&mut a, 1, l - 1);
                simple(&mut a, 0, 2);
            }
            ETwisted => {
                simple(&mut a, 0, 1);
                simple(&mut a, 1, 2);
                arrow(&mut a, 2, 3, 2);
                simple(&mut a, 3, 4);
            }
            DTriality => {
                simple(&mut a, 0, 1);
                arrow(&mut a, 1, 2, 3);
            }
            AEvenTwisted => a_even(&mut a),
            BZero => {
                a_even(&mut a);
                black[1] = true;
            }
            AZeroOdd => {
                b_untwisted(&mut a);
                black[1] = true;
            }
            CTwo => {
                d_twisted(&mut a);
                black[0] = true;
                black[1] = true;
            }
            AFour => {
                d_twisted(&mut a);
                black[1] = true;
            }
        }
        (a, black)
    }

    /// Left-to-right main chain used for drawing the diagram; edges not
    /// between consecutive chain nodes are drawn as branches.
    pub fn layout(&self) -> Vec<usize> {
        use AffineFamily::*;
        let l = self.l;
        if l == 1 {
            return vec![1, 0];
        }
        match self.family {
            Untwisted(FiniteType::A) => (1..=l).chain([0]).collect(),
            Untwisted(FiniteType::C) if l == 2 => vec![2, 1, 0],
            AZeroOdd | Untwisted(FiniteType::B) if l == 2 => vec![2, 1, 0],
            Untwisted(FiniteType::B) | AZeroOdd => (1..=l).collect::<Vec<_>>().into_iter().chain([0]).collect(),
            Untwisted(FiniteType::G) => vec![1, 2, 0],
            DTriality | ETwisted => (0..=l).collect(),
            Untwisted(FiniteType::F) => vec![0, 4, 3, 2, 1],
            AOddTwisted => (1..=l).rev().chain([0]).collect(),
            Untwisted(FiniteType::D) => (1..l).chain([0, l]).collect(),
            Untwisted(FiniteType::E) => match l {
                6 => (1..=6).chain([0]).collect(),
                7 => (0..=7).collect(),
                _ => (0..=8).collect(),
            },
            _ => (1..=l).chain([0]).collect(),
        }
    }

    /// Progression of δ-coefficients for each finite root class in the
    /// standard model `R = ⋃_class (class + progression·δ)`.
    pub fn progressions(&self) -> Vec<(LengthClass, Progression)> {
        use AffineFamily::*;
        use LengthClass::*;
        let all = Progression::all;
        let mult = Progression::multiples;
        let mut v = match self.family {
            Untwisted(_) => vec![(Short, all()), (Long, all())],
            DTwisted | AOddTwisted | ETwisted => vec![(Short, all()), (Long, mult(2))],
            DTriality => vec![(Short, all()), (Long, mult(3))],
            AEvenTwisted => vec![(Short, all()), (Long, all()), (Extra, Progression { modulus: 2, residues: vec![1] })],
            BZero => vec![(Short, all()), (Long, all()), (Extra, all())],
            AZeroOdd => vec![(Short, all()), (Long, all()), (Extra, mult(2))],
            CTwo => vec![(Short, all()), (Long, mult(2)), (Extra, mult(2))],
            AFour => vec![(Short, all()), (Long, mult(2)), (Extra, mult(4))],
        };
        if self.family == DTwisted && self.l == 1 {
            v.truncate(1);
        }
        v
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AffineFamily::*;
        let l = self.l;
        match self.family {
            Untwisted(t) => write!(f, "{t}_{l}^(1)"),
            DTwisted => write!(f, "D_{}^(2)", l + 1),
            AOddTwisted => write!(f, "A_{}^(2)", 2 * l - 1),
            ETwisted => write!(f, "E_6^(2)"),
            DTriality => write!(f, "D_4^(3)"),
            AEvenTwisted => write!(f, "A_{}^(2)", 2 * l),
            BZero => write!(f, "B^(1)(0,{l})"),
            AZeroOdd => write!(f, "A^(2)(0,{})", 2 * l - 1),
            CTwo => write!(f, "C^(2)({})", l + 1),
            AFour => write!(f, "A^(4)(0,{})", 2 * l),
        }
    }
}

impl FromStr for AffineType {
    type Err = Error;

    /// Parses labels such as `D_3^(2)`, `D3(2)`, `A_{2}^{(1)}`,
    /// `B^(1)(0,2)`, `C^(2)(3)` or `A^(4)(0,4)`.
    fn from_str(s: &str) -> Result<Self> {
        use AffineFamily::*;
        let bad = || Error::Parse(format!("unrecognized affine type label {s:?}"));
        let cleaned: String =
            s.chars().filter(|c| !c.is_whitespace() && !matches!(c, '_' | '^' | '{' | '}')).collect();
        let letter = cleaned.chars().next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = &cleaned[1..];
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let rest = &rest[digits.len()..];
        // Parenthesized groups.
        let mut groups = Vec::new();
        let mut cur = rest;
        while let Some(stripped) = cur.strip_prefix('(') {
            let end = stripped.find(')').ok_or_else(bad)?;
            groups.push(stripped[..end].to_string());
            cur = &stripped[end + 1..];
        }
        if !cur.is_empty() || groups.is_empty() {
            return Err(bad());
        }
        let twist: usize = groups[0].parse().map_err(|_| bad())?;
        if groups.len() == 2 {
            // Non-reduced families with parameters.
            if !digits.is_empty() {
                return Err(bad());
            }
            let params: Vec<usize> =
                groups[1].split(',').map(|p| p.parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            return match (letter, twist, params.as_slice()) {
                ('B', 1, [0, l]) => AffineType::new(BZero, *l),
                ('A', 2, [0, m]) if m % 2 == 1 => AffineType::new(AZeroOdd, (m + 1) / 2),
                ('C', 2, [m]) if *m >= 2 => AffineType::new(CTwo, m - 1),
                ('A', 4, [0, m]) if m % 2 == 0 => AffineType::new(AFour, m / 2),
                _ => Err(bad()),
            };
        }
        let n: usize = digits.parse().map_err(|_| bad())?;
        let t: FiniteType = letter.to_string().parse().map_err(|_| bad())?;
        match (t, twist) {
            (_, 1) => AffineType::new(Untwisted(t), n),
            (FiniteType::D, 2) if n >= 3 => AffineType::new(DTwisted, n - 1),
            (FiniteType::A, 2) if n == 3 => AffineType::new(DTwisted, 2),
            (FiniteType::A, 2) if n % 2 == 1 => AffineType::new(AOddTwisted, (n + 1) / 2),
            (FiniteType::A, 2) if n % 2 == 0 && n >= 2 => AffineType::new(AEvenTwisted, n / 2),
            (FiniteType::E, 2) if n == 6 => AffineType::new(ETwisted, 4),
            (FiniteType::D, 3) if n == 4 => AffineType::new(DTriality, 2),
            _ => Err(bad()),
        }
    }
}

/// An edge of a Dynkin diagram with both Cartan entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub i: usize,
    pub j: usize,
    /// `(α_i∨, α_j)`.
    pub a_ij: i64,
    /// `(α_j∨, α_i)`.
    pub a_ji: i64,
}

/// Structured diagram data for rendering: node marks, edges, and a
/// left-to-right main chain (node indices refer to α₀ … α_l).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramData {
    pub label: Option<String>,
    pub black: Vec<bool>,
    pub edges: Vec<DiagramEdge>,
    pub layout: Vec<usize>,
}

impl DiagramData {
    /// Builds diagram data from a GCM and marks.
    pub fn new(label: Option<String>, gcm: &[Vec<i64>], black: &[bool], layout: Vec<usize>) -> Self {
        let n = gcm.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if gcm[i][j] != 0 || gcm[j][i] != 0 {
                    edges.push(DiagramEdge { i, j, a_ij: gcm[i][j], a_ji: gcm[j][i] });
                }
            }
        }
        DiagramData { label, black: black.to_vec(), edges, layout }
    }

    /// Diagram of a standard type.
    pub fn of_type(t: &AffineType) -> Self {
        let (gcm, black) = t.diagram();
        Self::new(Some(t.to_string()), &gcm, &black, t.layout())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for l in 1..=8 {
            for t in AffineType::all_of_rank(l) {
                let s = t.to_string();
                assert_eq!(s.parse::<AffineType>().unwrap(), t, "{s}");
            }
        }
    }

    #[test]
    fn tolerant_parsing() {
        assert_eq!("D3(2)".parse::<AffineType>().unwrap().to_string(), "D_3^(2)");
        assert_eq!("A_{2}^{(1)}".parse::<AffineType>().unwrap().to_string(), "A_2^(1)");
        assert_eq!("A_3^(2)".parse::<AffineType>().unwrap().to_string(), "D_3^(2)");
        assert_eq!("B^(1)(0,2)".parse::<AffineType>().unwrap().l, 2);
        assert_eq!("C^(2)(3)".parse::<AffineType>().unwrap().l, 2);
        assert_eq!("A^(4)(0,4)".parse::<AffineType>().unwrap().l, 2);
        assert!("B_2^(1)".parse::<AffineType>().is_err());
        assert!("Z_2^(1)".parse::<AffineType>().is_err());
        assert!("A^(2)(0,1)".parse::<AffineType>().is_err());
    }

    #[test]
    fn rank_lists() {
        let names = |l| AffineType::all_of_rank(l).iter().map(|t| t.to_string()).collect::<Vec<_>>();
        assert_eq!(names(1), ["A_1^(1)", "A_2^(2)", "B^(1)(0,1)", "C^(2)(2)", "A^(4)(0,2)"]);
        assert_eq!(
            names(2),
            [
                "A_2^(1)", "C_2^(1)", "G_2^(1)", "D_3^(2)", "D_4^(3)", "A_4^(2)", "B^(1)(0,2)", "A^(2)(0,3)", "C^(2)(3)",
                "A^(4)(0,4)"
            ]
        );
        assert_eq!(names(3).len(), 10);
        assert!(names(4).contains(&"E_6^(2)".to_string()));
        assert!(names(4).contains(&"F_4^(1)".to_string()));
        assert!(names(6).contains(&"E_6^(1)".to_string()));
    }

    #[test]
    fn diagrams_are_valid_gcms() {
        for l in 1..=8 {
            for t in AffineType::all_of_rank(l) {
                let (a, black) = t.diagram();
                assert_eq!(a.len(), l + 1);
                assert_eq!(black.len(), l + 1);
                for i in 0..=l {
                    assert_eq!(a[i][i], 2);
                    for j in 0..=l {
                        if i != j {
                            assert!(a[i][j] <= 0);
                            assert_eq!(a[i][j] == 0, a[j][i] == 0, "{t}");
                        }
                    }
                }
                let mut layout = t.layout();
                layout.sort();
                assert_eq!(layout, (0..=l).collect::<Vec<_>>(), "{t}");
            }
        }
    }
}
