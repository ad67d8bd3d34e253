//! Matrix realisations of the classical families with an upper-triangular Borel.
//!
//! Type A is `sl_n`. Types B, C, D are `{x : xᵀJ + Jx = 0}` with `J` antidiagonal,
//! symmetric for B and D, skew for C. In this model the diagonal matrices form a
//! Cartan subalgebra and every root space is spanned by an integer matrix
//! supported on one or two off-diagonal positions of the same weight.

use num_traits::Zero;

use super::matrix::RatMatrix;
use super::{Family, LieError};
use crate::linalg;
use crate::rational::{int, primitive_integer_row, Rational};

pub(super) struct RawRealization {
    pub cartan: Vec<RatMatrix>,
    /// positive root vectors, negative root vectors, root coefficient vectors,
    /// all in the same (sorted) root order
    pub positive: Vec<RatMatrix>,
    pub negative: Vec<RatMatrix>,
    pub root_coeffs: Vec<Vec<i64>>,
    pub simple_weights: Vec<Vec<i64>>,
}

/// Antidiagonal form `J` with `J[i][n-1-i] = ±1`.
pub(super) fn antidiagonal_form(family: Family, n: usize) -> RatMatrix {
    let l = n / 2;
    let mut j = RatMatrix::zeros(n);
    for i in 0..n {
        let sign = if family == Family::C && i >= l { -1 } else { 1 };
        j.set(i, n - 1 - i, int(sign));
    }
    j
}

/// `σ(x) = -J⁻¹ xᵀ J`; `g` is its fixed-point set. `J` is a signed permutation so `J⁻¹ = Jᵀ`.
fn sigma(x: &RatMatrix, j: &RatMatrix) -> RatMatrix {
    let jt = j.transpose();
    (&(&jt * &x.transpose()) * j).scale(&int(-1))
}

fn primitive(m: &RatMatrix) -> RatMatrix {
    let n = m.size();
    let ints = primitive_integer_row(m.entries());
    let rows = ints.chunks(n).map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
    RatMatrix::from_rows(rows)
}

/// Weight of matrix position `k` in ε-coordinates.
fn position_weight(family: Family, n: usize, l: usize, k: usize) -> Vec<i64> {
    match family {
        Family::A => {
            let mut w = vec![0; n];
            w[k] = 1;
            w
        }
        _ => {
            let mut w = vec![0; l];
            if k < l {
                w[k] = 1;
            } else if k >= n - l {
                w[n - 1 - k] = -1;
            }
            w
        }
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(super) fn realize(family: Family, l: usize, n: usize) -> Result<RawRealization, LieError> {
    let j = (family != Family::A).then(|| antidiagonal_form(family, n));

    // one representative upper position per positive root
    let mut positions = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            match family {
                Family::A => positions.push((a, b)),
                _ => {
                    let partner = (n - 1 - b, n - 1 - a);
                    if partner == (a, b) {
                        if family == Family::C {
                            positions.push((a, b));
                        }
                    } else if (a, b) < partner {
                        positions.push((a, b));
                    }
                }
            }
        }
    }

    let root_vector = |a: usize, b: usize| -> RatMatrix {
        let e = RatMatrix::unit(n, a, b);
        match &j {
            None => e,
            Some(j) => primitive(&(&e + &sigma(&e, j))),
        }
    };

    let mut roots: Vec<(Vec<i64>, RatMatrix, RatMatrix, (usize, usize))> = positions
        .iter()
        .map(|&(a, b)| {
            let w = sub(&position_weight(family, n, l, a), &position_weight(family, n, l, b));
            (w, root_vector(a, b), root_vector(b, a), (a, b))
        })
        .collect();
    debug_assert!(roots.iter().all(|(_, p, m, _)| !p.is_zero() && !m.is_zero()));

    // simple roots: positive roots that are not a sum of two positive roots
    let weights: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
    let is_sum = |w: &Vec<i64>| {
        weights.iter().any(|a| {
            let rest = sub(w, a);
            weights.contains(&rest)
        })
    };
    let mut simple: Vec<(usize, usize, Vec<i64>)> =
        roots.iter().filter(|r| !is_sum(&r.0)).map(|r| (r.3 .0, r.3 .1, r.0.clone())).collect();
    simple.sort();
    if simple.len() != l {
        return Err(LieError::Construction(format!("found {} simple roots, expected {l}", simple.len())));
    }
    let simple_weights: Vec<Vec<i64>> = simple.into_iter().map(|s| s.2).collect();

    // express each positive root in simple-root coordinates
    let dim_w = simple_weights[0].len();
    let a_mat: Vec<Vec<Rational>> = (0..dim_w).map(|r| simple_weights.iter().map(|s| int(s[r])).collect()).collect();
    let mut with_coeffs = Vec::with_capacity(roots.len());
    for (w, p, m, _) in roots.drain(..) {
        let rhs: Vec<Rational> = w.iter().map(|&v| int(v)).collect();
        let sol = linalg::solve(&a_mat, &rhs)
            .ok_or_else(|| LieError::Construction("root outside the simple-root lattice".into()))?;
        let coeffs: Vec<i64> = sol
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "root coefficients must be integers");
                i64::try_from(c.to_integer()).expect("small root coefficient")
            })
            .collect();
        if coeffs.iter().any(|&c| c < 0) {
            return Err(LieError::Construction("positive root with a negative coefficient".into()));
        }
        with_coeffs.push((coeffs, p, m));
    }
    // height ascending, then coefficient vector descending so α_1 comes first
    with_coeffs.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });

    // Cartan basis: primitive multiples of the coroots [e_{α_i}, e_{-α_i}]
    let cartan: Vec<RatMatrix> = (0..l)
        .map(|i| {
            let (_, p, m) = &with_coeffs[i];
            let h = p.commutator(m);
            debug_assert!(h.is_diagonal() && !h.is_zero());
            primitive(&h)
        })
        .collect();

    let (root_coeffs, pm): (Vec<_>, Vec<_>) = with_coeffs.into_iter().map(|(c, p, m)| (c, (p, m))).unzip();
    let (positive, negative) = pm.into_iter().unzip();
    Ok(RawRealization { cartan, positive, negative, root_coeffs, simple_weights })
}

/// Checks `x ∈ g`: traceless for A, `xᵀJ + Jx = 0` otherwise.
pub(super) fn in_algebra(family: Family, x: &RatMatrix) -> bool {
    match family {
        Family::A => x.trace().is_zero(),
        _ => {
            let j = antidiagonal_form(family, x.size());
            (&(&x.transpose() * &j) + &(&j * x)).is_zero()
        }
    }
}

/// Exponents from the height distribution of positive roots: the number of
/// exponents equal to `m` is `#roots of height m − #roots of height m+1`.
pub(super) fn exponents_from_heights(root_coeffs: &[Vec<i64>]) -> Vec<u32> {
    let max_h = root_coeffs.iter().map(|c| c.iter().sum::<i64>()).max().unwrap_or(0) as usize;
    let mut count = vec![0i64; max_h + 2];
    for c in root_coeffs {
        count[c.iter().sum::<i64>() as usize] += 1;
    }
    let mut exps = Vec::new();
    for m in 1..=max_h {
        for _ in 0..(count[m] - count[m + 1]).max(0) {
            exps.push(m as u32);
        }
    }
    exps
}
