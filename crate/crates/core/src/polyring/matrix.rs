use std::sync::Arc;

use num_traits::{One, Zero};

use super::{SparsePoly, Universe};
use crate::rational::Rational;

/// Square matrix with polynomial entries, used to build trace and Pfaffian invariants.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<SparsePoly>,
}

impl PolyMatrix {
    pub fn zeros(universe: &Arc<Universe>, n: usize) -> Self {
        PolyMatrix { n, entries: vec![SparsePoly::zero(universe); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> SparsePoly) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        PolyMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SparsePoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        PolyMatrix::from_fn(n, |i, j| {
            let mut acc = SparsePoly::zero(self.get(0, 0).universe());
            for k in 0..n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    /// `R · self` for a rational matrix `R` given by rows.
    pub fn left_mul_rational(&self, r: &[Vec<Rational>]) -> PolyMatrix {
        let n = self.n;
        PolyMatrix::from_fn(n, |i, j| {
            let mut acc = SparsePoly::zero(self.get(0, 0).universe());
            for (k, c) in r[i].iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &self.get(k, j).scale(c);
                }
            }
            acc
        })
    }

    pub fn trace(&self) -> SparsePoly {
        (0..self.n).fold(SparsePoly::zero(self.get(0, 0).universe()), |acc, i| &acc + self.get(i, i))
    }

    /// `trace(self · other)` without forming the full product.
    pub fn trace_of_product(&self, other: &PolyMatrix) -> SparsePoly {
        let mut acc = SparsePoly::zero(self.get(0, 0).universe());
        for i in 0..self.n {
            for k in 0..self.n {
                let (a, b) = (self.get(i, k), other.get(k, i));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }

    /// Pfaffian of a skew-symmetric matrix by expansion along the first row.
    /// Only the strict upper triangle is read.
    pub fn pfaffian(&self) -> SparsePoly {
        let idx: Vec<usize> = (0..self.n).collect();
        self.pfaffian_of(&idx)
    }

    fn pfaffian_of(&self, idx: &[usize]) -> SparsePoly {
        let universe = self.get(0, 0).universe().clone();
        if idx.is_empty() {
            return SparsePoly::constant(&universe, Rational::one());
        }
        if idx.len() % 2 == 1 {
            return SparsePoly::zero(&universe);
        }
        let first = idx[0];
        let mut acc = SparsePoly::zero(&universe);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = self.get(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let minor = self.pfaffian_of(&rest);
            let term = a * &minor;
            // sign (-1)^(pos+1) with pos counted from 0 for `first`
            acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Entry-wise evaluation.
    pub fn eval(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(point).unwrap_or_else(|_| Rational::zero())).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn pfaffian_of_generic_4x4() {
        // Pf = a12 a34 - a13 a24 + a14 a23
        let u = Universe::new((0..6).map(|i| format!("a{i}")).collect());
        let vars: Vec<SparsePoly> = (0..6).map(|i| SparsePoly::var(&u, i)).collect();
        let pos = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut m = PolyMatrix::zeros(&u, 4);
        for (k, &(i, j)) in pos.iter().enumerate() {
            m.set(i, j, vars[k].clone());
            m.set(j, i, -&vars[k]);
        }
        let expected = &(&(&vars[0] * &vars[5]) - &(&vars[1] * &vars[4])) + &(&vars[2] * &vars[3]);
        assert_eq!(m.pfaffian(), expected);
        // Pf² = det at a point
        let pt: Vec<Rational> = [3, -1, 4, 1, -5, 9].iter().map(|&v| int(v)).collect();
        let pf = m.pfaffian().eval(&pt).unwrap();
        let det = crate::linalg::determinant(&m.eval(&pt));
        assert_eq!(&pf * &pf, det);
    }
}
