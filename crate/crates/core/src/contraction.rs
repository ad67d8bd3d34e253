//! The contraction `q = b ⋉ (u⁻)ᵃ`.
//!
//! As a vector space `q` is `g` with the same basis, `b = t ⊕ u` and an abelian
//! ideal `u⁻`. Its dual `q* = u ⊕ b⁻` is also identified with `g` through the
//! trace form: a point `y` of `q*` is a coordinate vector and pairs with
//! `x ∈ q` as `β(x, y)`. In particular the linear function "basis element
//! `e_m`" on `q*` is `X_m(y) = (G y)_m` with `G` the Gram matrix.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::liecore::{Algebra, GVector, LabelKind, LieError, StructureConstants};
use crate::linalg;
use crate::rational::Rational;
use crate::sampling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("the contraction parameter must be nonzero")]
    ZeroParameter,
    #[error("root {0} vanishes on the Cartan part")]
    NotRegular(String),
    #[error("element is not ad-nilpotent on q")]
    NotNilpotent,
    #[error("vector has support outside {0}")]
    WrongSubspace(&'static str),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// An element `(b, η)` of `q` with `b ∈ b` and `η ∈ u⁻`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QVector(GVector);

impl QVector {
    pub fn from_g(x: GVector) -> Self {
        QVector(x)
    }

    pub fn from_parts(algebra: &Algebra, b: &GVector, eta: &GVector) -> Result<Self, ContractionError> {
        if b.support().iter().any(|&i| !algebra.is_borel(i)) {
            return Err(ContractionError::WrongSubspace("b"));
        }
        if eta.support().iter().any(|&i| !algebra.is_negative(i)) {
            return Err(ContractionError::WrongSubspace("u⁻"));
        }
        Ok(QVector(b.add(eta)))
    }

    pub fn as_g(&self) -> &GVector {
        &self.0
    }

    pub fn into_g(self) -> GVector {
        self.0
    }

    pub fn b_part(&self, algebra: &Algebra) -> GVector {
        algebra.project_borel(&self.0)
    }

    pub fn n_part(&self, algebra: &Algebra) -> GVector {
        algebra.project_negative(&self.0)
    }
}

/// A point `(u, ξ)` of `q*` with `u ∈ u` and `ξ ∈ b⁻`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QDualVector(GVector);

impl QDualVector {
    pub fn from_g(y: GVector) -> Self {
        QDualVector(y)
    }

    pub fn from_parts(algebra: &Algebra, u: &GVector, xi: &GVector) -> Result<Self, ContractionError> {
        if u.support().iter().any(|&i| !algebra.is_positive(i)) {
            return Err(ContractionError::WrongSubspace("u"));
        }
        if xi.support().iter().any(|&i| !algebra.is_opposite_borel(i)) {
            return Err(ContractionError::WrongSubspace("b⁻"));
        }
        Ok(QDualVector(u.add(xi)))
    }

    pub fn as_g(&self) -> &GVector {
        &self.0
    }

    pub fn u_part(&self, algebra: &Algebra) -> GVector {
        algebra.project_positive(&self.0)
    }

    pub fn bminus_part(&self, algebra: &Algebra) -> GVector {
        algebra.project_opposite_borel(&self.0)
    }

    /// Values `X_m(y) = ⟨e_m, y⟩` of the basis of `q` viewed as linear functions on `q*`.
    pub fn linear_coordinates(&self, algebra: &Algebra) -> Vec<Rational> {
        linalg::mat_vec(algebra.gram(), self.0.coords())
    }
}

/// One structure constant of the family `[·,·]_(t)`: the coefficient of `e_m`
/// in `[e_j, e_k]_(t)` is `coeff · t^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTerm {
    pub target: usize,
    pub coeff: Rational,
    pub power: u32,
}

/// `g` together with the bracket of `q` and of the interpolating family.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub algebra: Algebra,
    constants: StructureConstants,
    family: Vec<Vec<FamilyTerm>>,
}

fn u_weight(algebra: &Algebra, i: usize) -> u32 {
    u32::from(algebra.is_negative(i))
}

impl Contraction {
    pub fn new(algebra: Algebra) -> Self {
        let dim = algebra.dim();
        let g = &algebra.basis.constants;
        let mut table = Vec::with_capacity(dim * dim);
        let mut family = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                let sj = u_weight(&algebra, j);
                let sk = u_weight(&algebra, k);
                let terms: Vec<FamilyTerm> = g
                    .get(j, k)
                    .iter()
                    .map(|(m, c)| FamilyTerm { target: *m, coeff: c.clone(), power: sj + sk - u_weight(&algebra, *m) })
                    .collect();
                table.push(terms.iter().filter(|t| t.power == 0).map(|t| (t.target, t.coeff.clone())).collect());
                family.push(terms);
            }
        }
        Contraction { constants: StructureConstants::new(dim, table), family, algebra }
    }

    pub fn build(spec: crate::liecore::AlgebraSpec) -> Result<Self, LieError> {
        Ok(Self::new(crate::liecore::build_algebra(spec)?))
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Structure constants of `q` in the basis of `g`.
    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Structure constants of `[·,·]_(t)` as polynomials in `t`.
    pub fn family_constants(&self, j: usize, k: usize) -> &[FamilyTerm] {
        &self.family[j * self.dim() + k]
    }

    /// `[(b,η), (b′,η′)] = ([b,b′], p₋[b,η′] − p₋[b′,η])`.
    pub fn q_bracket(&self, x: &QVector, y: &QVector) -> QVector {
        QVector(GVector::from_coords(self.constants.bracket(x.0.coords(), y.0.coords())))
    }

    /// Same bracket, written out from the semidirect product formula.
    pub fn q_bracket_explicit(&self, x: &QVector, y: &QVector) -> QVector {
        let g = &self.algebra;
        let (b, eta) = (x.b_part(g), x.n_part(g));
        let (b2, eta2) = (y.b_part(g), y.n_part(g));
        let bb = g.bracket(&b, &b2);
        let n = g.project_negative(&g.bracket(&b, &eta2)).sub(&g.project_negative(&g.bracket(&b2, &eta)));
        QVector(bb.add(&n))
    }

    /// `[x, y]_(t) = c_t⁻¹[c_t x, c_t y]` where `c_t` scales `u⁻` by `t`.
    pub fn family_bracket(&self, x: &GVector, y: &GVector, t: &Rational) -> Result<GVector, ContractionError> {
        if t.is_zero() {
            return Err(ContractionError::ZeroParameter);
        }
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        for (j, xj) in x.coords().iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, yk) in y.coords().iter().enumerate() {
                if yk.is_zero() {
                    continue;
                }
                let s = xj * yk;
                for term in self.family_constants(j, k) {
                    let mut c = &s * &term.coeff;
                    if term.power == 1 {
                        c *= t;
                    }
                    out[term.target] += c;
                }
            }
        }
        Ok(GVector::from_coords(out))
    }

    /// `φ(u, η) ∈ b⁻`, defined by `β(b, φ(u,η)) = β([b,u], η)` for all `b ∈ b`.
    pub fn moment_map_phi(&self, u: &GVector, eta: &GVector) -> Result<GVector, ContractionError> {
        let g = &self.algebra;
        if u.support().iter().any(|&i| !g.is_positive(i)) {
            return Err(ContractionError::WrongSubspace("u"));
        }
        if eta.support().iter().any(|&i| !g.is_negative(i)) {
            return Err(ContractionError::WrongSubspace("u⁻"));
        }
        let rhs: Vec<Rational> =
            (0..g.dim())
                .map(|j| {
                    if g.is_borel(j) {
                        g.trace_form(&g.bracket(&g.basis_vector(j), u), eta)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
        // G maps b⁻ onto the b-coordinates, so G⁻¹ of a b-supported vector lies in b⁻
        Ok(GVector::from_coords(linalg::mat_vec(g.gram_inverse(), &rhs)))
    }

    /// `b ⋆ ξ ∈ b⁻`: `β(b″, b⋆ξ) = −β([b,b″], ξ)` for all `b″ ∈ b`.
    pub fn borel_coadjoint(&self, b: &GVector, xi: &GVector) -> GVector {
        let g = &self.algebra;
        let rhs: Vec<Rational> =
            (0..g.dim())
                .map(|j| {
                    if g.is_borel(j) {
                        -g.trace_form(&g.bracket(b, &g.basis_vector(j)), xi)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
        GVector::from_coords(linalg::mat_vec(g.gram_inverse(), &rhs))
    }

    /// `(b,η) ⋆ (u,ξ) = (p_u[b,u], b⋆ξ − φ(u,η))`.
    pub fn coadjoint_apply(&self, x: &QVector, y: &QDualVector) -> QDualVector {
        let g = &self.algebra;
        let (b, eta) = (x.b_part(g), x.n_part(g));
        let (u, xi) = (y.u_part(g), y.bminus_part(g));
        let head = g.project_positive(&g.bracket(&b, &u));
        let phi = self.moment_map_phi(&u, &eta).expect("parts have the right support");
        let tail = self.borel_coadjoint(&b, &xi).sub(&phi);
        QDualVector(head.add(&tail))
    }

    /// Coadjoint action computed straight from `⟨[x,z], y⟩ + ⟨z, x⋆y⟩ = 0`.
    pub fn coadjoint_by_duality(&self, x: &QVector, y: &QDualVector) -> QDualVector {
        let g = &self.algebra;
        let rhs: Vec<Rational> = (0..g.dim())
            .map(|k| {
                let xz = self.q_bracket(x, &QVector(g.basis_vector(k)));
                -g.trace_form(xz.as_g(), y.as_g())
            })
            .collect();
        QDualVector(GVector::from_coords(linalg::mat_vec(g.gram_inverse(), &rhs)))
    }

    /// The pairing `⟨(b,η), (u,ξ)⟩ = β(b,ξ) + β(η,u)`.
    pub fn pairing(&self, x: &QVector, y: &QDualVector) -> Rational {
        self.algebra.trace_form(x.as_g(), y.as_g())
    }

    /// `exp(η) ⋆ (u, ξ) = (u, ξ − φ(u, η))`.
    pub fn group_coadjoint_n(&self, eta: &GVector, y: &QDualVector) -> Result<QDualVector, ContractionError> {
        let g = &self.algebra;
        let u = y.u_part(g);
        let phi = self.moment_map_phi(&u, eta)?;
        Ok(QDualVector(y.0.sub(&phi)))
    }

    /// Infinitesimal adjoint action `ad_q(x) z`.
    pub fn adjoint_apply(&self, x: &QVector, z: &QVector) -> QVector {
        self.q_bracket(x, z)
    }

    /// `exp(ad_q x) z` for `x ∈ u ⋉ u⁻`, summed exactly.
    pub fn exp_ad(&self, x: &QVector, z: &QVector) -> Result<QVector, ContractionError> {
        if x.0.support().iter().any(|&i| self.algebra.is_cartan(i)) {
            return Err(ContractionError::NotNilpotent);
        }
        let mut total = z.0.clone();
        let mut term = z.clone();
        for k in 1..=self.dim() + 1 {
            term = QVector(self.q_bracket(x, &term).0.scale(&Rational::new(One::one(), k.into())));
            if term.0.is_zero() {
                return Ok(QVector(total));
            }
            total = total.add(&term.0);
        }
        Err(ContractionError::NotNilpotent)
    }

    /// Action of the torus element with character values `chars[i]` on `α_i`.
    pub fn torus_apply(&self, chars: &[Rational], z: &QVector) -> Result<QVector, ContractionError> {
        let g = &self.algebra;
        if chars.len() != g.rank() || chars.iter().any(Zero::is_zero) {
            return Err(ContractionError::ZeroParameter);
        }
        let weight = |k: usize| -> Rational {
            g.roots.positive_roots[k]
                .iter()
                .zip(chars)
                .fold(Rational::one(), |acc, (&c, v)| acc * num_traits::pow(v.clone(), c as usize))
        };
        let coords =
            z.0.coords()
                .iter()
                .enumerate()
                .map(|(i, v)| match g.kind(i) {
                    LabelKind::Cartan(_) => v.clone(),
                    LabelKind::Positive(k) => v * weight(k),
                    LabelKind::Negative(k) => v / weight(k),
                })
                .collect();
        Ok(QVector(GVector::from_coords(coords)))
    }

    /// `exp(η) · (b, η′) = (b, η′ − p₋[b, η])` for `η ∈ u⁻`.
    pub fn group_adjoint_n(&self, eta: &GVector, z: &QVector) -> Result<QVector, ContractionError> {
        let g = &self.algebra;
        if eta.support().iter().any(|&i| !g.is_negative(i)) {
            return Err(ContractionError::WrongSubspace("u⁻"));
        }
        let b = z.b_part(g);
        let shift = g.project_negative(&g.bracket(&b, eta));
        Ok(QVector(z.0.sub(&shift)))
    }

    /// `K_{jk}(y) = ⟨y, [e_j, e_k]_q⟩`.
    pub fn kirillov_matrix(&self, y: &QDualVector) -> Vec<Vec<Rational>> {
        self.kirillov_at(&y.linear_coordinates(&self.algebra))
    }

    /// Kirillov matrix from the values `X_m(y)` directly.
    pub fn kirillov_at(&self, xs: &[Rational]) -> Vec<Vec<Rational>> {
        let dim = self.dim();
        let mut k = vec![vec![Rational::zero(); dim]; dim];
        for j in 0..dim {
            for l in j + 1..dim {
                let v: Rational = self
                    .constants
                    .get(j, l)
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (m, c)| acc + c * &xs[*m]);
                k[l][j] = -v.clone();
                k[j][l] = v;
            }
        }
        k
    }

    /// `dim Q·y`, the exact rank of the Kirillov matrix.
    pub fn kirillov_rank(&self, y: &QDualVector) -> usize {
        linalg::rank(&self.kirillov_matrix(y))
    }

    /// `ind q` estimated as `dim q` minus the largest Kirillov rank seen at random
    /// points. A new round of `samples` points is drawn as long as the previous
    /// round raised the maximum, up to the resample limit.
    pub fn index_estimate(&self, samples: usize, seed: u64) -> IndexEstimate {
        let samples = samples.max(1);
        let dim = self.dim();
        let mut best = 0;
        let mut stream = 0u64;
        for round in 0..=sampling::MAX_RESAMPLES {
            let before = best;
            for _ in 0..samples {
                let mut rng = sampling::rng(seed, stream);
                stream += 1;
                let y = QDualVector(GVector::from_coords(sampling::random_vector(&mut rng, dim)));
                best = best.max(self.kirillov_rank(&y));
            }
            if round > 0 && best == before {
                return IndexEstimate { index: dim - best, max_rank: best, points: stream as usize, conclusive: true };
            }
        }
        IndexEstimate { index: dim - best, max_rank: best, points: stream as usize, conclusive: false }
    }

    /// `u′ ∈ u` with `exp(ad u′) t = b` for `b = t + u` with regular `t`, solved
    /// one root height at a time.
    pub fn u_conjugate_to_cartan(&self, b: &GVector) -> Result<GVector, ContractionError> {
        let g = &self.algebra;
        if b.support().iter().any(|&i| !g.is_borel(i)) {
            return Err(ContractionError::WrongSubspace("b"));
        }
        let t = g.project_cartan(b);
        let values: Vec<Rational> = (0..g.num_positive()).map(|k| g.root_value(k, &t)).collect();
        if let Some(k) = values.iter().position(Zero::is_zero) {
            return Err(ContractionError::NotRegular(g.label(g.positive_index(k)).to_string()));
        }
        let heights: Vec<i64> = g.roots.positive_roots.iter().map(|r| r.iter().sum()).collect();
        let max_h = heights.iter().copied().max().unwrap_or(0);
        let mut u_prime = GVector::zero(g.dim());
        for h in 1..=max_h {
            let current = exp_ad_g(g, &u_prime, &t)?;
            for (k, _) in heights.iter().enumerate().filter(|(_, &hk)| hk == h) {
                let i = g.positive_index(k);
                // adding d·e_γ changes the e_γ-coordinate by −γ(t)·d
                let d = (current.get(i) - b.get(i)) / &values[k];
                u_prime.set(i, d);
            }
        }
        Ok(u_prime)
    }
}

/// `exp(ad x) z` in `g` for nilpotent `ad x`.
pub fn exp_ad_g(algebra: &Algebra, x: &GVector, z: &GVector) -> Result<GVector, ContractionError> {
    let mut total = z.clone();
    let mut term = z.clone();
    for k in 1..=algebra.dim() + 1 {
        term = algebra.bracket(x, &term).scale(&Rational::new(One::one(), k.into()));
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term);
    }
    Err(ContractionError::NotNilpotent)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IndexEstimate {
    pub index: usize,
    pub max_rank: usize,
    pub points: usize,
    /// false when the maximum rank was still growing after the last resample
    pub conclusive: bool,
}
