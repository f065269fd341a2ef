//! The defining relations of an elliptic Lie algebra as homogeneous data.
//! Relations among the `h_σ` and the `h`-weights of the `E_μ` are built
//! into the word algebra and are not stored here.

use std::fmt;

use num_traits::{One, Zero};

use crate::affine_base::{AffineFamily, AffineType};
use crate::core_lattice::Form;
use crate::elliptic_core::EllipticDatum;
use crate::error::{Error, Result};
use crate::finite_roots::FiniteType;
use crate::linalg::{q, Rational};

/// A generator: `h_{μ∨}` or `E_μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    H(Vec<i64>),
    E(Vec<i64>),
}

impl Gen {
    /// ZΠ ⊕ Za degree.
    pub fn degree(&self) -> Vec<i64> {
        match self {
            Gen::H(v) => vec![0; v.len()],
            Gen::E(v) => v.clone(),
        }
    }
}

/// `(ad E_{μ₁})^{n₁} ⋯ (ad E_{μ_s})^{n_s} target`, outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdChain {
    pub ops: Vec<(Vec<i64>, u32)>,
    pub target: Gen,
}

impl AdChain {
    pub fn gen(target: Gen) -> Self {
        AdChain { ops: Vec::new(), target }
    }

    pub fn ad(mut self, mu: &[i64], n: u32) -> Self {
        if n > 0 {
            self.ops.insert(0, (mu.to_vec(), n));
        }
        self
    }

    pub fn degree(&self) -> Vec<i64> {
        let mut d = self.target.degree();
        for (mu, n) in &self.ops {
            for (x, y) in d.iter_mut().zip(mu) {
                *x += i64::from(*n) * y;
            }
        }
        d
    }
}

/// `coeff · chain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub chain: AdChain,
}

/// One instance of a defining relation `Σ lhs = Σ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreRelation {
    pub label: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    /// Named parameters of the instance (`mu`, `nu`, `alpha`, `beta`, `i`, `omega`).
    pub params: Vec<(String, String)>,
}

impl SerreRelation {
    /// The common degree of all terms with nonzero coefficient, if any.
    pub fn degree(&self) -> Option<Vec<i64>> {
        let mut degs = self.lhs.iter().chain(&self.rhs).filter(|t| !t.coeff.is_zero()).map(|t| t.chain.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_some()
    }
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for AdChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mu, n) in &self.ops {
            write!(f, "(ad E{})^{} ", fmt_vec(mu), n)?;
        }
        match &self.target {
            Gen::H(v) => write!(f, "h{}∨", fmt_vec(v)),
            Gen::E(v) => write!(f, "E{}", fmt_vec(v)),
        }
    }
}

impl fmt::Display for SerreRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ts: &[Term]| -> String {
            if ts.is_empty() {
                return "0".into();
            }
            ts.iter()
                .map(|t| if t.coeff.is_one() { t.chain.to_string() } else { format!("({})·{}", t.coeff, t.chain) })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(f, "{}: {} = {}", self.label, side(&self.lhs), side(&self.rhs))
    }
}

/// `x_{μ,ν} = 1 − ((μ∨,ν) − |(μ∨,ν)|)/2`.
pub fn x_mu_nu(form: &Form, mu: &[i64], nu: &[i64]) -> Result<u32> {
    let c = form
        .coroot_pair(mu, nu)
        .ok_or_else(|| Error::Assertion(format!("(μ∨, ν) is not an integer for μ = {mu:?}, ν = {nu:?}")))?;
    Ok((1 - (c - c.abs()) / 2) as u32)
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// The tuning value ω(α_i, α_j).
fn tuning(datum: &EllipticDatum, i: usize, j: usize) -> Rational {
    let l = datum.l();
    let is_a = datum.affine_type() == AffineType { family: AffineFamily::Untwisted(FiniteType::A), l };
    match datum.omega().q {
        Some(qv) if is_a && (i, j) == (l, 0) => q(qv),
        Some(qv) if is_a && (i, j) == (0, l) => q(1) / q(qv),
        _ => q(1),
    }
}

/// All instances of the relations on `E_μ` (μ ∈ B = ±B₊) for a valid datum.
pub fn encode_serre(datum: &EllipticDatum) -> Result<Vec<SerreRelation>> {
    let report = crate::elliptic_core::validate_datum(datum);
    if !report.valid {
        return Err(Error::InvalidDatum(report.violations.join("; ")));
    }
    let form = datum.form();
    let b_plus = datum.b_plus()?;
    let mut b: Vec<Vec<i64>> = b_plus.clone();
    b.extend(b_plus.iter().map(|v| neg(v)));
    let e = |v: &[i64]| AdChain::gen(Gen::E(v.to_vec()));
    let one = |chain: AdChain| Term { coeff: q(1), chain };
    let p = |k: &str, v: String| (k.to_string(), v);
    let mut out = Vec::new();
    for mu in &b_plus {
        out.push(SerreRelation {
            label: "SR4".into(),
            lhs: vec![one(e(&neg(mu)).ad(mu, 1))],
            rhs: vec![one(AdChain::gen(Gen::H(mu.clone())))],
            params: vec![p("mu", fmt_vec(mu))],
        });
    }
    for mu in &b {
        for nu in &b {
            if mu == nu || *nu == neg(mu) {
                continue;
            }
            let x = x_mu_nu(form, mu, nu)?;
            out.push(SerreRelation {
                label: "SR5".into(),
                lhs: vec![one(e(nu).ad(mu, x))],
                rhs: Vec::new(),
                params: vec![p("mu", fmt_vec(mu)), p("nu", fmt_vec(nu)), p("x", x.to_string())],
            });
        }
    }
    let l = datum.l();
    for alpha in 0..=l {
        for beta in 0..=l {
            if alpha == beta || datum.gcm()[beta][alpha] != -1 {
                continue;
            }
            let (ka, kb) = (datum.k()[alpha], datum.k()[beta]);
            if kb % ka != 0 {
                return Err(Error::InvalidDatum(format!("k(β)/k(α) = {kb}/{ka} is not an integer")));
            }
            let r = (kb / ka) as u32;
            let c = datum.c(alpha);
            let om = tuning(datum, alpha, beta);
            let (a, bt) = (datum.node(alpha), datum.node(beta));
            let (a_s, b_s) = (datum.alpha_star(alpha)?, datum.alpha_star(beta)?);
            let base = vec![p("alpha", alpha.to_string()), p("beta", beta.to_string()), p("omega", om.to_string())];
            out.push(SerreRelation {
                label: "SR6".into(),
                lhs: vec![Term { coeff: q(c), chain: e(&bt).ad(&a_s, r) }],
                rhs: vec![Term { coeff: om.clone(), chain: e(&b_s).ad(&a, c as u32 * r) }],
                params: base.clone(),
            });
            let sign = if c % 2 == 0 { q(-1) } else { q(1) };
            out.push(SerreRelation {
                label: "SR7".into(),
                lhs: vec![Term { coeff: sign * q(c), chain: e(&neg(&bt)).ad(&neg(&a_s), r) }],
                rhs: vec![Term { coeff: q(1) / om.clone(), chain: e(&neg(&b_s)).ad(&neg(&a), c as u32 * r) }],
                params: base.clone(),
            });
            for i in 1..r {
                let mut params = base.clone();
                params.push(p("i", i.to_string()));
                out.push(SerreRelation {
                    label: "SR8".into(),
                    lhs: vec![one(e(&bt).ad(&a_s, r - i).ad(&a, i))],
                    rhs: Vec::new(),
                    params: params.clone(),
                });
                out.push(SerreRelation {
                    label: "SR9".into(),
                    lhs: vec![one(e(&neg(&bt)).ad(&neg(&a_s), r - i).ad(&neg(&a), i))],
                    rhs: Vec::new(),
                    params,
                });
            }
        }
    }
    Ok(out)
}

/// True iff every relation is homogeneous in the ZΠ ⊕ Za grading.
pub fn homogeneity_check(relations: &[SerreRelation]) -> bool {
    relations.iter().all(SerreRelation::is_homogeneous)
}
