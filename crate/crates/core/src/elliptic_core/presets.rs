//! The ten standard fundamental-set data.

use crate::affine_base::{AffineFamily, AffineType};
use crate::error::{Error, Result};
use crate::finite_roots::FiniteType;

use super::{EllipticDatum, Omega};

/// Number of presets (`case1` … `case10`).
pub const PRESET_COUNT: usize = 10;

/// Affine types admissible for preset `case`, default first.
pub fn preset_types(case: usize, l: usize) -> Vec<AffineType> {
    use AffineFamily::*;
    let fams: Vec<AffineFamily> = match case {
        1 => vec![
            Untwisted(FiniteType::A),
            Untwisted(FiniteType::B),
            Untwisted(FiniteType::C),
            Untwisted(FiniteType::D),
            Untwisted(FiniteType::E),
            Untwisted(FiniteType::F),
            Untwisted(FiniteType::G),
        ],
        2 => vec![Untwisted(FiniteType::C), Untwisted(FiniteType::B), Untwisted(FiniteType::F), Untwisted(FiniteType::G)],
        3 => vec![DTwisted, AOddTwisted, ETwisted, DTriality],
        4 | 5 | 6 | 10 => vec![DTwisted],
        7 | 9 => vec![AEvenTwisted],
        8 => vec![Untwisted(FiniteType::B)],
        _ => vec![],
    };
    fams.into_iter().filter_map(|f| AffineType::new(f, l).ok()).collect()
}

/// Preset `case` at rank `l` on its default affine type.
pub fn preset(case: usize, l: usize) -> Result<EllipticDatum> {
    let t = preset_types(case, l)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidDatum(format!("preset case{case} is not defined at l = {l}")))?;
    preset_on(case, t)
}

impl EllipticDatum {
    /// Preset `case` on a given admissible affine type.
    pub fn preset(case: usize, t: AffineType) -> Result<Self> {
        preset_on(case, t)
    }
}

fn preset_on(case: usize, t: AffineType) -> Result<EllipticDatum> {
    if !preset_types(case, t.l).contains(&t) {
        return Err(Error::InvalidDatum(format!("preset case{case} is not defined on {t}")));
    }
    let l = t.l;
    let (gcm, _) = t.diagram();
    let gram = crate::affine_base::symmetrize(&gcm)?;
    let short = (0..=l).map(|i| gram[i][i]).min().unwrap();
    let ratio: Vec<i64> = (0..=l).map(|i| gram[i][i] / short).collect();
    let ones = vec![1; l + 1];
    let none = vec![false; l + 1];
    let odd_at = |nodes: &[usize]| {
        let mut g = none.clone();
        for &i in nodes {
            g[i] = true;
        }
        g
    };
    let (k, g) = match case {
        1 => (ones, none),
        2 | 3 => (ratio, none),
        4 | 5 => {
            let k: Vec<i64> = (0..=l).map(|i| if i == 1 { 1 } else { 2 }).collect();
            (k, if case == 5 { odd_at(&[0]) } else { none })
        }
        6 => (ones, odd_at(&[0, 1])),
        7 | 8 => (ones, odd_at(&[1])),
        9 => (ones, none),
        10 => (ones, odd_at(&[0])),
        _ => return Err(Error::InvalidDatum(format!("unknown preset case{case}"))),
    };
    EllipticDatum::new(t, k, g, Omega { label: format!("case{case}"), q: None })
}
