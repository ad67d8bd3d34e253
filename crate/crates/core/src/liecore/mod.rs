//! Classical simple Lie algebras in an exact matrix model with a fixed
//! triangular decomposition `g = t ⊕ u ⊕ u⁻`.
//!
//! Basis order is always: Cartan elements `t1..tl`, then positive root
//! vectors (height ascending), then the negative root vectors in the same
//! root order. So index `l + k` is `e_{+γ_k}` and `l + N + k` is `e_{-γ_k}`.

mod construct;
mod matrix;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::polyring::Universe;
use crate::rational::{int, Rational};

pub use matrix::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("rank {rank} is not supported for type {family}")]
    UnsupportedRank { family: Family, rank: usize },
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,
    #[error("construction failed: {0}")]
    Construction(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, LieError> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(LieError::UnsupportedFamily(other.to_string())),
        }
    }
}

/// A classical type together with its rank. Small ranks that coincide with
/// another type (B1, C1, D1, D2) are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSpec {
    family: Family,
    rank: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, LieError> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(LieError::UnsupportedRank { family, rank });
        }
        Ok(AlgebraSpec { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size of the defining matrices.
    pub fn matrix_dim(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l + 1,
            Family::B => 2 * l + 1,
            Family::C | Family::D => 2 * l,
        }
    }

    pub fn dim(&self) -> usize {
        let (n, l) = (self.matrix_dim(), self.rank);
        match self.family {
            Family::A => n * n - 1,
            Family::B | Family::D => n * (n - 1) / 2,
            Family::C => l * (2 * l + 1),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    Cartan(usize),
    Positive(usize),
    Negative(usize),
}

/// Sparse structure constants: `[e_j, e_k] = Σ_m c^m_{jk} e_m`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn new(dim: usize, table: Vec<Vec<(usize, Rational)>>) -> Self {
        assert_eq!(table.len(), dim * dim);
        StructureConstants { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> &[(usize, Rational)] {
        &self.table[j * self.dim + k]
    }

    /// Bilinear extension to arbitrary coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, yk) in y.iter().enumerate() {
                if yk.is_zero() {
                    continue;
                }
                let s = xj * yk;
                for (m, c) in self.get(j, k) {
                    out[*m] += &s * c;
                }
            }
        }
        out
    }
}

/// Maps a matrix in `g` back to basis coordinates through a fixed invertible
/// square sub-block of the (entries × basis) matrix.
#[derive(Debug, Clone)]
struct CoordinateExtractor {
    positions: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone)]
pub struct StructuredBasis {
    pub labels: Vec<String>,
    pub kinds: Vec<LabelKind>,
    pub matrices: Vec<RatMatrix>,
    /// `gram[j][k] = trace(e_j e_k)`
    pub gram: Vec<Vec<Rational>>,
    pub constants: StructureConstants,
    extractor: CoordinateExtractor,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    /// simple roots in ε-coordinates of the diagonal
    pub simple_roots: Vec<Vec<i64>>,
    /// positive roots as coefficient vectors over the simple roots, in basis order
    pub positive_roots: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub a_coeffs: Vec<i64>,
    pub coxeter: u32,
    pub exponents: Vec<u32>,
    pub degrees: Vec<u32>,
}

impl RootDatum {
    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }
}

/// Coordinate vector of an element of `g` in the structured basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GVector(Vec<Rational>);

impl GVector {
    pub fn zero(dim: usize) -> Self {
        GVector(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        GVector(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, v: Rational) {
        self.0[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn add(&self, other: &GVector) -> GVector {
        GVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &GVector) -> GVector {
        GVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> GVector {
        GVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Keeps the coordinates where `keep(i)` holds.
    pub fn mask(&self, keep: impl Fn(usize) -> bool) -> GVector {
        GVector(self.0.iter().enumerate().map(|(i, v)| if keep(i) { v.clone() } else { Rational::zero() }).collect())
    }
}

/// A built algebra: structured basis, root data and the derived tables every
/// other module uses.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub spec: AlgebraSpec,
    pub basis: StructuredBasis,
    pub roots: RootDatum,
    gram_inv: Vec<Vec<Rational>>,
    /// `root_on_cartan[k][i] = γ_k(t_i)`
    root_on_cartan: Vec<Vec<Rational>>,
    universe: Arc<Universe>,
}

fn root_label(sign: char, coeffs: &[i64]) -> String {
    let body: Vec<String> = coeffs.iter().map(i64::to_string).collect();
    format!("e{sign}{}", body.join(","))
}

/// Builds the structured basis and root data of `spec`.
pub fn build_algebra(spec: AlgebraSpec) -> Result<Algebra, LieError> {
    let (l, n) = (spec.rank(), spec.matrix_dim());
    let raw = construct::realize(spec.family(), l, n)?;
    let npos = raw.positive.len();
    let dim = l + 2 * npos;
    if dim != spec.dim() {
        return Err(LieError::Construction(format!("basis has {dim} elements, expected {}", spec.dim())));
    }

    let mut labels = Vec::with_capacity(dim);
    let mut kinds = Vec::with_capacity(dim);
    let mut matrices = Vec::with_capacity(dim);
    for (i, h) in raw.cartan.iter().enumerate() {
        labels.push(format!("t{}", i + 1));
        kinds.push(LabelKind::Cartan(i));
        matrices.push(h.clone());
    }
    for (k, m) in raw.positive.iter().enumerate() {
        labels.push(root_label('+', &raw.root_coeffs[k]));
        kinds.push(LabelKind::Positive(k));
        matrices.push(m.clone());
    }
    for (k, m) in raw.negative.iter().enumerate() {
        labels.push(root_label('-', &raw.root_coeffs[k]));
        kinds.push(LabelKind::Negative(k));
        matrices.push(m.clone());
    }
    for m in &matrices {
        if !construct::in_algebra(spec.family(), m) {
            return Err(LieError::Construction("basis matrix outside the algebra".into()));
        }
    }

    let gram: Vec<Vec<Rational>> =
        matrices.iter().map(|a| matrices.iter().map(|b| a.trace_product(b)).collect()).collect();
    let gram_inv = linalg::inverse(&gram).ok_or_else(|| LieError::Construction("trace form is degenerate".into()))?;

    // entries × basis matrix, then a square invertible block of it
    let columns: Vec<Vec<Rational>> =
        (0..n * n).map(|p| matrices.iter().map(|m| m.entries()[p].clone()).collect()).collect();
    let positions = linalg::independent_rows(&columns);
    if positions.len() != dim {
        return Err(LieError::Construction("basis matrices are linearly dependent".into()));
    }
    let block: Vec<Vec<Rational>> = positions.iter().map(|&p| columns[p].clone()).collect();
    let inverse = linalg::inverse(&block).expect("independent rows give an invertible block");
    let extractor = CoordinateExtractor { positions, inverse };

    let mut basis = StructuredBasis {
        labels,
        kinds,
        matrices,
        gram,
        constants: StructureConstants::new(dim, vec![Vec::new(); dim * dim]),
        extractor,
    };

    let mut table = vec![Vec::new(); dim * dim];
    for j in 0..dim {
        for k in j + 1..dim {
            let c = basis.matrices[j].commutator(&basis.matrices[k]);
            let coords = basis.coords_of(&c)?;
            let entries: Vec<(usize, Rational)> =
                coords.0.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            table[k * dim + j] = entries.iter().map(|(m, v)| (*m, -v)).collect();
            table[j * dim + k] = entries;
        }
    }
    basis.constants = StructureConstants::new(dim, table);

    // root data
    let root_coeffs = raw.root_coeffs;
    let theta = root_coeffs.iter().max_by_key(|c| RootDatum::height(c)).cloned().expect("at least one positive root");
    let coxeter = (RootDatum::height(&theta) + 1) as u32;
    let exponents = construct::exponents_from_heights(&root_coeffs);
    let degrees = exponents.iter().map(|m| m + 1).collect();
    let roots = RootDatum {
        simple_roots: raw.simple_weights,
        positive_roots: root_coeffs,
        a_coeffs: theta.clone(),
        theta,
        coxeter,
        exponents,
        degrees,
    };

    let root_on_cartan = (0..npos)
        .map(|k| {
            (0..l)
                .map(|i| {
                    basis
                        .constants
                        .get(i, l + k)
                        .iter()
                        .find(|(m, _)| *m == l + k)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Rational::zero)
                })
                .collect()
        })
        .collect();

    let universe = Universe::new(basis.labels.clone());
    Ok(Algebra { spec, basis, roots, gram_inv, root_on_cartan, universe })
}

impl StructuredBasis {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LieError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LieError::BasisMismatch(format!("unknown label `{label}`")))
    }

    /// Coordinates of a matrix of `g`; `NotInAlgebra` if it is not in the span.
    pub fn coords_of(&self, m: &RatMatrix) -> Result<GVector, LieError> {
        let rhs: Vec<Rational> = self.extractor.positions.iter().map(|&p| m.entries()[p].clone()).collect();
        let coords = linalg::mat_vec(&self.extractor.inverse, &rhs);
        let v = GVector(coords);
        if self.matrix_of(&v) != *m {
            return Err(LieError::NotInAlgebra);
        }
        Ok(v)
    }

    pub fn matrix_of(&self, x: &GVector) -> RatMatrix {
        let n = self.matrices[0].size();
        let mut out = RatMatrix::zeros(n);
        for (c, m) in x.0.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.positive_roots.len()
    }

    /// Variable universe for polynomials on `g`, `q` and `q*`: the basis labels.
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn kind(&self, i: usize) -> LabelKind {
        self.basis.kinds[i]
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        i < self.rank()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        (self.rank()..self.rank() + self.num_positive()).contains(&i)
    }

    pub fn is_negative(&self, i: usize) -> bool {
        i >= self.rank() + self.num_positive()
    }

    /// `b = t ⊕ u`
    pub fn is_borel(&self, i: usize) -> bool {
        !self.is_negative(i)
    }

    /// `b⁻ = t ⊕ u⁻`
    pub fn is_opposite_borel(&self, i: usize) -> bool {
        !self.is_positive(i)
    }

    pub fn positive_index(&self, k: usize) -> usize {
        self.rank() + k
    }

    pub fn negative_index(&self, k: usize) -> usize {
        self.rank() + self.num_positive() + k
    }

    /// Basis index of `e_{+α_i}` (0-based `i`).
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_index(i)
    }

    /// Basis index of `e_{-α_i}`.
    pub fn negative_simple_root_index(&self, i: usize) -> usize {
        self.negative_index(i)
    }

    /// Basis index of `e_θ`.
    pub fn theta_index(&self) -> usize {
        let k = self.roots.positive_roots.iter().position(|r| *r == self.roots.theta).expect("θ is a positive root");
        self.positive_index(k)
    }

    /// Index of the partner root vector: `e_{+γ} ↔ e_{-γ}`, Cartan elements map to themselves.
    pub fn opposite_index(&self, i: usize) -> usize {
        match self.kind(i) {
            LabelKind::Cartan(_) => i,
            LabelKind::Positive(k) => self.negative_index(k),
            LabelKind::Negative(k) => self.positive_index(k),
        }
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.basis.gram
    }

    pub fn gram_inverse(&self) -> &[Vec<Rational>] {
        &self.gram_inv
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis.labels[i]
    }

    pub fn vector(&self, terms: &[(&str, Rational)]) -> Result<GVector, LieError> {
        let mut v = GVector::zero(self.dim());
        for (label, c) in terms {
            let i = self.basis.index_of(label)?;
            v.0[i] += c;
        }
        Ok(v)
    }

    pub fn basis_vector(&self, i: usize) -> GVector {
        GVector::basis(self.dim(), i)
    }

    fn check_dim(&self, x: &GVector) -> Result<(), LieError> {
        if x.dim() != self.dim() {
            return Err(LieError::BasisMismatch(format!(
                "vector has {} coordinates, basis has {}",
                x.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `[x, y]` computed from the matrix commutator and re-expanded in the basis.
    pub fn bracket_g(&self, x: &GVector, y: &GVector) -> Result<GVector, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let c = self.basis.matrix_of(x).commutator(&self.basis.matrix_of(y));
        self.basis.coords_of(&c)
    }

    /// `[x, y]` through the structure constants.
    pub fn bracket(&self, x: &GVector, y: &GVector) -> GVector {
        GVector(self.basis.constants.bracket(&x.0, &y.0))
    }

    /// `β(x, y) = trace(XY)` in the defining representation.
    pub fn trace_form(&self, x: &GVector, y: &GVector) -> Rational {
        let g = &self.basis.gram;
        let mut acc = Rational::zero();
        for (j, xj) in x.0.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, yk) in y.0.iter().enumerate() {
                if !yk.is_zero() && !g[j][k].is_zero() {
                    acc += xj * yk * &g[j][k];
                }
            }
        }
        acc
    }

    /// `p₋ : g → u⁻` with kernel `b`.
    pub fn project_negative(&self, x: &GVector) -> GVector {
        x.mask(|i| self.is_negative(i))
    }

    pub fn project_borel(&self, x: &GVector) -> GVector {
        x.mask(|i| self.is_borel(i))
    }

    pub fn project_positive(&self, x: &GVector) -> GVector {
        x.mask(|i| self.is_positive(i))
    }

    pub fn project_cartan(&self, x: &GVector) -> GVector {
        x.mask(|i| self.is_cartan(i))
    }

    pub fn project_opposite_borel(&self, x: &GVector) -> GVector {
        x.mask(|i| self.is_opposite_borel(i))
    }

    /// Matrix of `ad x` acting on coordinate vectors (column `k` is `[x, e_k]`).
    pub fn ad_matrix(&self, x: &GVector) -> Vec<Vec<Rational>> {
        let dim = self.dim();
        let cols: Vec<Vec<Rational>> = (0..dim).map(|k| self.bracket(x, &self.basis_vector(k)).0).collect();
        linalg::transpose(&cols)
    }

    /// `dim g^x`, by exact rank of `ad x`.
    pub fn centralizer_dim(&self, x: &GVector) -> usize {
        self.dim() - linalg::rank(&self.ad_matrix(x))
    }

    pub fn is_regular(&self, x: &GVector) -> bool {
        self.centralizer_dim(x) == self.rank()
    }

    /// `γ_k(t)` for the Cartan part of `x`.
    pub fn root_value(&self, k: usize, x: &GVector) -> Rational {
        self.root_on_cartan[k]
            .iter()
            .zip(&x.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Jordan-form nilpotent representatives of all nilpotent orbits of `sl_{l+1}`,
    /// one per partition of `l+1` in decreasing lexicographic order.
    pub fn nilpotent_representatives(&self) -> Result<Vec<NilpotentRep>, LieError> {
        if self.spec.family() != Family::A {
            return Err(LieError::UnsupportedFamily(format!(
                "nilpotent representatives are only available for type A, not {}",
                self.spec.family()
            )));
        }
        let n = self.spec.matrix_dim();
        Ok(partitions(n)
            .into_iter()
            .map(|p| {
                let mut v = GVector::zero(self.dim());
                let mut start = 0;
                for &block in &p {
                    // superdiagonal inside the block: E_{i,i+1} = e_{α_{i+1}}
                    for i in start..start + block - 1 {
                        v.0[self.simple_root_index(i)] = Rational::one();
                    }
                    start += block;
                }
                NilpotentRep { partition: p, element: v }
            })
            .collect())
    }
}

#[derive(Debug, Clone)]
pub struct NilpotentRep {
    pub partition: Vec<usize>,
    pub element: GVector,
}

/// Partitions of `n`, parts non-increasing, listed in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Free-function form of [`Algebra::bracket_g`].
pub fn bracket_g(x: &GVector, y: &GVector, algebra: &Algebra) -> Result<GVector, LieError> {
    algebra.bracket_g(x, y)
}

pub fn trace_form(algebra: &Algebra, x: &GVector, y: &GVector) -> Rational {
    algebra.trace_form(x, y)
}

pub fn project_negative(algebra: &Algebra, x: &GVector) -> GVector {
    algebra.project_negative(x)
}

pub fn centralizer_dim(algebra: &Algebra, x: &GVector) -> usize {
    algebra.centralizer_dim(x)
}

pub fn nilpotent_representatives(spec: AlgebraSpec) -> Result<Vec<NilpotentRep>, LieError> {
    if spec.family() != Family::A {
        return Err(LieError::UnsupportedFamily(spec.family().to_string()));
    }
    build_algebra(spec)?.nilpotent_representatives()
}

/// Integer entries helper for tests and examples.
pub fn rational_matrix(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
}
