//! Exact linear algebra over the rationals.
//!
//! Ranks and determinants go through fraction-free (Bareiss) elimination on
//! integer-scaled rows, so every intermediate entry is a minor of the input and
//! no rational normalisation happens inside the elimination loop. Inverses and
//! linear solves, which only ever run on small Gram-type matrices, use plain
//! Gauss-Jordan over `Rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{common_denominator, Rational};

/// Clears denominators row by row. Row scaling does not change rank and
/// multiplies the determinant by the product of the returned scales.
fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let ints = rows
        .iter()
        .map(|row| {
            let den = common_denominator(row);
            let scaled = row.iter().map(|r| r.numer() * (&den / r.denom())).collect();
            scales.push(den);
            scaled
        })
        .collect();
    (ints, scales)
}

/// Fraction-free elimination in place. Returns the rank and the number of row swaps.
/// After the call, `m[r][pivot_col[r]]` for `r < rank` holds the leading minors.
fn bareiss(m: &mut [Vec<BigInt>]) -> (usize, usize, Vec<usize>) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut row = 0;
    let mut swaps = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(row + 1);
        let pivot_row = &head[row];
        let pivot = pivot_row[col].clone();
        for r in tail.iter_mut() {
            let factor = r[col].clone();
            for j in col + 1..ncols {
                let num = &pivot * &r[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                r[j] = q;
            }
            r[col] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
    }
    (row, swaps, pivots)
}

/// Exact rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let (mut ints, _) = integer_rows(rows);
    bareiss(&mut ints).0
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let (mut ints, scales) = integer_rows(rows);
    let (rk, swaps, _) = bareiss(&mut ints);
    if rk < n {
        return Rational::zero();
    }
    let mut det = Rational::from_integer(ints[n - 1][n - 1].clone());
    if swaps % 2 == 1 {
        det = -det;
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    det / Rational::from_integer(scale)
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "inverse needs a square matrix");
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, col);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unique solution of `a · x = b` for a (possibly overdetermined) consistent system.
/// Returns `None` if the system is inconsistent or the solution is not unique.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut row = 0;
    for col in 0..n {
        let p = (row..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, row);
        let inv = aug[row][col].recip();
        for v in aug[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[row].clone();
        for (r, other) in aug.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        row += 1;
    }
    if aug[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(aug[..n].iter().map(|r| r[n].clone()).collect())
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    // reduced rows keyed by their pivot column
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[pc].is_zero() {
                    let f = b[pc].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}
