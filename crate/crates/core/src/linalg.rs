//! Exact linear algebra over the rationals and the integers: reduced row
//! echelon form, kernels, inverses, Smith normal form and small integer
//! helpers used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Rational matrix stored row-major.
pub type QMatrix = Vec<Vec<Rational>>;

/// Builds a rational from a machine integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`; panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integer matrix to a rational one.
pub fn to_qmatrix(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

/// Returns `Some(n)` when the rational is an integer fitting in `i64`.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a rational matrix.
pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
    }
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![q(0); cols];
            v[f] = q(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square rational matrix by elimination.
pub fn determinant(m: &QMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return q(0);
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let factor = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &factor * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// Matrix-vector product.
pub fn mat_vec(m: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Bilinear evaluation `vᵀ G w`.
pub fn bilinear(g: &QMatrix, v: &[Rational], w: &[Rational]) -> Rational {
    let mut acc = q(0);
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if !wj.is_zero() && !g[i][j].is_zero() {
                acc += vi * &g[i][j] * wj;
            }
        }
    }
    acc
}

/// True when every leading principal minor and every principal minor of the
/// symmetric matrix is nonnegative (positive semi-definiteness).
pub fn is_positive_semidefinite(g: &QMatrix) -> bool {
    // Diagonalize by symmetric elimination (LDLᵀ with pivoting on zero
    // diagonals); a semi-definite matrix never produces a negative pivot and
    // a zero pivot must have a zero row.
    let n = g.len();
    let mut a = g.clone();
    for c in 0..n {
        if a[c][c].is_negative() {
            return false;
        }
        if a[c][c].is_zero() {
            if (c..n).any(|j| !a[c][j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &a[c][c];
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[i][j] -= delta;
            }
        }
        for j in c + 1..n {
            a[c][j] = q(0);
        }
    }
    true
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// (first nonzero entry kept with its sign).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Smith normal form invariant factors (nonzero diagonal entries) of an
/// integer matrix given row-major.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find a nonzero entry of minimal absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let delta = &qt * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let delta = &qt * &a[i][t];
                    a[i][j] -= delta;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                // Enforce divisibility of the remaining block by the pivot.
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a >= 0 {
            (a, 1, 0)
        } else {
            (-a, -1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Nonnegative gcd of two machine integers.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least common multiple of positive integers.
pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_affine_cartan_matrix() {
        let m = to_qmatrix(&[vec![2, -1], vec![-4, 2]]);
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let p = primitive_integer(&k[0]);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = to_qmatrix(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(determinant(&m), q(3));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], qf(2, 3));
        assert!(inverse(&to_qmatrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn semidefinite_detection() {
        assert!(is_positive_semidefinite(&to_qmatrix(&[vec![2, -2], vec![-2, 2]])));
        assert!(!is_positive_semidefinite(&to_qmatrix(&[vec![2, -3], vec![-3, 2]])));
        assert!(is_positive_semidefinite(&to_qmatrix(&[vec![0, 0], vec![0, 0]])));
        assert!(!is_positive_semidefinite(&to_qmatrix(&[vec![0, 1], vec![1, 0]])));
    }

    #[test]
    fn smith_form_examples() {
        assert_eq!(smith_invariants(&big(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_invariants(&big(&[&[1, 0], &[0, 1], &[1, 1]])).len(), 2);
        assert_eq!(smith_invariants(&big(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(smith_invariants(&big(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn extended_gcd_identity() {
        for (a, b) in [(40, 200), (65, 200), (3, -7), (-4, 6), (0, 5)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd(a, b));
        }
    }
}
