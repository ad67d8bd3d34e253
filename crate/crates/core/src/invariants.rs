//! Polynomial invariants of `g` and of the contraction `q`.
//!
//! Polynomials on `g` (and on `q`, which is the same vector space) use the
//! coordinate functions `x_m` of the structured basis as variables. Polynomials
//! on `q*` are elements of `S(q)`: their variables are the basis elements `X_m`
//! of `q`, read as linear functions on `q*`. Both live in the universe of basis
//! labels. The trace form identifies the two: `x_m = Σ_k (G⁻¹)_{mk} X_k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::contraction::Contraction;
use crate::liecore::{Algebra, Family, RatMatrix};
use crate::polyring::{Bigrading, DumpTerm, PolyError, PolyMatrix, SparsePoly, Universe};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("covariant {generator} has a nonzero component along {label} on u")]
    RangeViolation { generator: usize, label: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "power", rename_all = "snake_case")]
pub enum InvariantKind {
    /// `trace(x^k)`
    TracePower(u32),
    /// `Pf(Jx)`
    Pfaffian,
}

#[derive(Debug, Clone)]
pub struct BasicInvariant {
    pub kind: InvariantKind,
    pub degree: u32,
    pub poly: SparsePoly,
}

/// Polynomial maps `V → g`, one coordinate polynomial per basis label.
#[derive(Debug, Clone)]
pub struct CovariantFamily {
    pub entries: Vec<Vec<SparsePoly>>,
    pub degrees: Vec<u32>,
}

impl CovariantFamily {
    /// Values of every map at `point`, as coordinate vectors.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, PolyError> {
        self.entries.iter().map(|map| map.iter().map(|p| p.eval(point)).collect()).collect()
    }
}

/// Everything built for one algebra.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    /// basic invariants of `g`, by degree
    pub f: Vec<BasicInvariant>,
    /// the restricted covariants `P_i : u → u`
    pub restricted: CovariantFamily,
    /// coadjoint invariants `P̂_i ∈ S(q)`
    pub hat_p: Vec<SparsePoly>,
    /// adjoint invariants: the Cartan coordinates on `q`
    pub adjoint_gens: Vec<SparsePoly>,
}

impl InvariantSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.f.iter().map(|b| b.degree).collect()
    }
}

/// Matrix `Σ_m x_m M_m` with the basis coordinates as variables.
pub fn generic_matrix(algebra: &Algebra) -> PolyMatrix {
    let universe = algebra.universe();
    let n = algebra.spec.matrix_dim();
    PolyMatrix::from_fn(n, |i, j| {
        let coeffs: Vec<Rational> = algebra.basis.matrices.iter().map(|m| m.get(i, j).clone()).collect();
        SparsePoly::linear(universe, &coeffs)
    })
}

fn antidiagonal_rows(algebra: &Algebra) -> Vec<Vec<Rational>> {
    let n = algebra.spec.matrix_dim();
    let mut j = RatMatrix::zeros(n);
    for i in 0..n {
        j.set(i, n - 1 - i, Rational::one());
    }
    j.rows()
}

/// Basic invariants: trace powers, plus `Pf(Jx)` for type D. Sorted by degree,
/// trace powers before the Pfaffian on ties.
pub fn basic_invariants(algebra: &Algebra) -> Vec<BasicInvariant> {
    let l = algebra.rank() as u32;
    let (powers, pfaffian): (Vec<u32>, bool) = match algebra.spec.family() {
        Family::A => ((2..=l + 1).collect(), false),
        Family::B | Family::C => ((1..=l).map(|i| 2 * i).collect(), false),
        Family::D => ((1..l).map(|i| 2 * i).collect(), true),
    };
    let x = generic_matrix(algebra);
    let max_half = powers.iter().map(|p| p.div_ceil(2)).max().unwrap_or(1);
    let mut mats = vec![x.clone()];
    for _ in 1..max_half {
        let next = mats.last().expect("nonempty").mul(&x);
        mats.push(next);
    }
    let mut out: Vec<BasicInvariant> = powers
        .iter()
        .map(|&k| {
            let a = k / 2;
            let b = k - a;
            BasicInvariant {
                kind: InvariantKind::TracePower(k),
                degree: k,
                poly: mats[a as usize - 1].trace_of_product(&mats[b as usize - 1]),
            }
        })
        .collect();
    if pfaffian {
        let jx = x.left_mul_rational(&antidiagonal_rows(algebra));
        out.push(BasicInvariant { kind: InvariantKind::Pfaffian, degree: l, poly: jx.pfaffian() });
    }
    out.sort_by_key(|b| (b.degree, matches!(b.kind, InvariantKind::Pfaffian)));
    out
}

/// `F = G⁻¹ ∇f`: the polynomial map with `β(F(x), y) = df_x(y)`.
pub fn gradient_map(algebra: &Algebra, f: &SparsePoly) -> Vec<SparsePoly> {
    let dim = algebra.dim();
    let partials: Vec<SparsePoly> = (0..dim).map(|m| f.diff(m)).collect();
    let ginv = algebra.gram_inverse();
    (0..dim)
        .map(|k| {
            ginv[k]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(SparsePoly::zero(algebra.universe()), |acc, (m, c)| &acc + &partials[m].scale(c))
        })
        .collect()
}

/// Covariants `F_i = grad f_i`.
pub fn covariant_gradients(algebra: &Algebra, f: &[BasicInvariant]) -> CovariantFamily {
    CovariantFamily {
        entries: f.iter().map(|b| gradient_map(algebra, &b.poly)).collect(),
        degrees: f.iter().map(|b| b.degree - 1).collect(),
    }
}

fn kill_outside_u(algebra: &Algebra) -> Vec<bool> {
    (0..algebra.dim()).map(|i| !algebra.is_positive(i)).collect()
}

/// `P_i = F_i|_u`. Every component off `u` must vanish identically.
pub fn restrict_covariants(algebra: &Algebra, family: &CovariantFamily) -> Result<CovariantFamily, InvariantError> {
    let kill = kill_outside_u(algebra);
    let mut entries = Vec::with_capacity(family.entries.len());
    for (i, map) in family.entries.iter().enumerate() {
        let restricted: Vec<SparsePoly> = map.iter().map(|p| p.restrict_zero(&kill)).collect();
        if let Some(k) = (0..algebra.dim()).find(|&k| !algebra.is_positive(k) && !restricted[k].is_zero()) {
            return Err(InvariantError::RangeViolation { generator: i + 1, label: algebra.label(k).to_string() });
        }
        entries.push(restricted);
    }
    Ok(CovariantFamily { entries, degrees: family.degrees.clone() })
}

/// `P_i` straight from the `f_i`: only the terms of `f_i` of degree at most one
/// in the coordinates off `u` can contribute to `grad f_i` on `u`.
pub fn restricted_covariants(algebra: &Algebra, f: &[BasicInvariant]) -> Result<CovariantFamily, InvariantError> {
    let off_u = kill_outside_u(algebra);
    let trimmed: Vec<BasicInvariant> = f
        .iter()
        .map(|b| BasicInvariant {
            kind: b.kind,
            degree: b.degree,
            poly: b.poly.filter_terms(|m| m.pairs().filter(|(i, _)| off_u[*i]).map(|(_, e)| e).sum::<u32>() <= 1),
        })
        .collect();
    restrict_covariants(algebra, &covariant_gradients(algebra, &trimmed))
}

/// `P̂_i(u, ξ) = β(P_i(u), ξ)` as an element of `S(q)`. On `q*` the coordinate
/// `u_γ` is `X_{e-γ} / β(e-γ, e+γ)`.
pub fn hat_invariants_from(algebra: &Algebra, restricted: &CovariantFamily) -> Vec<SparsePoly> {
    let universe = algebra.universe();
    let images: Vec<SparsePoly> = (0..algebra.dim())
        .map(|m| {
            if algebra.is_positive(m) {
                let opp = algebra.opposite_index(m);
                SparsePoly::var(universe, opp).scale(&(Rational::one() / &algebra.gram()[opp][m]))
            } else {
                SparsePoly::zero(universe)
            }
        })
        .collect();
    restricted
        .entries
        .iter()
        .map(|map| {
            (0..algebra.dim())
                .filter(|&k| algebra.is_positive(k) && !map[k].is_zero())
                .fold(SparsePoly::zero(universe), |acc, k| {
                    &acc + &(&map[k].substitute(&images) * &SparsePoly::var(universe, k))
                })
        })
        .collect()
}

/// Cartan coordinate functions on `q`.
pub fn adjoint_invariants(algebra: &Algebra) -> Vec<SparsePoly> {
    (0..algebra.rank()).map(|i| SparsePoly::var(algebra.universe(), i)).collect()
}

/// Builds `f_i`, `P_i`, `P̂_i` and the adjoint generators.
pub fn invariant_set(algebra: &Algebra) -> Result<InvariantSet, InvariantError> {
    let f = basic_invariants(algebra);
    let restricted = restricted_covariants(algebra, &f)?;
    let hat_p = hat_invariants_from(algebra, &restricted);
    Ok(InvariantSet { f, restricted, hat_p, adjoint_gens: adjoint_invariants(algebra) })
}

/// Bigrading of `S(q)` by (degree in `u⁻` labels, degree in `b` labels).
pub fn coadjoint_bigrading(algebra: &Algebra) -> Bigrading {
    let (neg, bor): (Vec<usize>, Vec<usize>) = (0..algebra.dim()).partition(|&i| algebra.is_negative(i));
    Bigrading::new(algebra.universe(), &neg, &bor).expect("partition of the basis")
}

/// Bigrading of `k[q]` by (degree in `b` coordinates, degree in `u⁻` coordinates).
pub fn adjoint_bigrading(algebra: &Algebra) -> Bigrading {
    let (bor, neg): (Vec<usize>, Vec<usize>) = (0..algebra.dim()).partition(|&i| algebra.is_borel(i));
    Bigrading::new(algebra.universe(), &bor, &neg).expect("partition of the basis")
}

/// Rewrites a polynomial on `g` as an element of `S(g)` via the trace form.
pub fn to_symmetric(algebra: &Algebra, f: &SparsePoly) -> SparsePoly {
    let universe = algebra.universe();
    let images: Vec<SparsePoly> = algebra.gram_inverse().iter().map(|row| SparsePoly::linear(universe, row)).collect();
    f.substitute(&images)
}

/// Bihomogeneous components of `f` in `S(g)` with respect to `g = b ⊕ u⁻`,
/// keyed by (degree in `u⁻`, degree in `b`).
pub fn coadjoint_components(algebra: &Algebra, f: &SparsePoly) -> BTreeMap<(u32, u32), SparsePoly> {
    to_symmetric(algebra, f).bigrade_components(&coadjoint_bigrading(algebra))
}

fn top_component(components: BTreeMap<(u32, u32), SparsePoly>, universe: &Arc<Universe>) -> SparsePoly {
    components
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .max_by_key(|((a, _), _)| *a)
        .map(|(_, p)| p)
        .unwrap_or_else(|| SparsePoly::zero(universe))
}

/// Component of maximal degree along `u⁻`, an element of `S(q)`.
pub fn highest_component_coadj(algebra: &Algebra, f: &SparsePoly) -> Result<SparsePoly, InvariantError> {
    if !f.is_homogeneous() {
        return Err(InvariantError::NotHomogeneous);
    }
    Ok(top_component(coadjoint_components(algebra, f), algebra.universe()))
}

/// Component of maximal degree in the `b`-coordinates, a polynomial on `q`.
pub fn highest_component_adj(algebra: &Algebra, f: &SparsePoly) -> Result<SparsePoly, InvariantError> {
    if !f.is_homogeneous() {
        return Err(InvariantError::NotHomogeneous);
    }
    Ok(top_component(f.bigrade_components(&adjoint_bigrading(algebra)), algebra.universe()))
}

/// `Π X_{e-α_i}^{a_i} · X_{eθ}`.
pub fn monomial_top_invariant(algebra: &Algebra) -> SparsePoly {
    let universe = algebra.universe();
    let mut p = SparsePoly::var(universe, algebra.theta_index());
    for (i, &a) in algebra.roots.a_coeffs.iter().enumerate() {
        p = &p * &SparsePoly::var(universe, algebra.negative_simple_root_index(i)).pow(a as u32);
    }
    p
}

/// `X_{eθ}`: invariant under `N = exp(u⁻)` but of torus weight `θ`.
pub fn extra_n_invariant(algebra: &Algebra) -> SparsePoly {
    SparsePoly::var(algebra.universe(), algebra.theta_index())
}

/// Infinitesimal coadjoint action of `e_j` on `P ∈ S(q)`:
/// `Σ_k ∂P/∂X_k · Σ_m c^m_{jk} X_m`.
pub fn coadjoint_derivation(q: &Contraction, p: &SparsePoly, j: usize) -> SparsePoly {
    let universe = p.universe();
    let mut out = SparsePoly::zero(universe);
    for k in 0..q.dim() {
        let consts = q.constants().get(j, k);
        if consts.is_empty() {
            continue;
        }
        let d = p.diff(k);
        if d.is_zero() {
            continue;
        }
        let mut coeffs = vec![Rational::zero(); q.dim()];
        for (m, c) in consts {
            coeffs[*m] += c;
        }
        out = &out + &(&d * &SparsePoly::linear(universe, &coeffs));
    }
    out
}

/// Infinitesimal adjoint action of `e_j` on a polynomial `p` on `q`:
/// `-Σ_k ∂p/∂z_k · [e_j, z]_k`.
pub fn adjoint_derivation(q: &Contraction, p: &SparsePoly, j: usize) -> SparsePoly {
    let universe = p.universe();
    let dim = q.dim();
    // coefficient of e_k in [e_j, z] is Σ_m c^k_{jm} z_m
    let mut rows = vec![vec![Rational::zero(); dim]; dim];
    for m in 0..dim {
        for (k, c) in q.constants().get(j, m) {
            rows[*k][m] += c;
        }
    }
    let mut out = SparsePoly::zero(universe);
    for (k, row) in rows.iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let d = p.diff(k);
        if !d.is_zero() {
            out = &out - &(&d * &SparsePoly::linear(universe, row));
        }
    }
    out
}

/// `[P(u), u]` as a vector of polynomials on `u`, with `P` a map `u → g`.
pub fn commutator_with_argument(algebra: &Algebra, map: &[SparsePoly]) -> Vec<SparsePoly> {
    let universe = algebra.universe();
    let dim = algebra.dim();
    let mut out = vec![SparsePoly::zero(universe); dim];
    for (k, pk) in map.iter().enumerate() {
        if pk.is_zero() {
            continue;
        }
        for j in (0..dim).filter(|&j| algebra.is_positive(j)) {
            let prod = pk * &SparsePoly::var(universe, j);
            for (m, c) in algebra.basis.constants.get(k, j) {
                out[*m] = &out[*m] + &prod.scale(c);
            }
        }
    }
    out
}

/// `[F(x), x]` on all of `g`.
pub fn commutator_with_point(algebra: &Algebra, map: &[SparsePoly]) -> Vec<SparsePoly> {
    let universe = algebra.universe();
    let dim = algebra.dim();
    let mut out = vec![SparsePoly::zero(universe); dim];
    for (k, pk) in map.iter().enumerate() {
        if pk.is_zero() {
            continue;
        }
        for j in 0..dim {
            let consts = algebra.basis.constants.get(k, j);
            if consts.is_empty() {
                continue;
            }
            let prod = pk * &SparsePoly::var(universe, j);
            for (m, c) in consts {
                out[*m] = &out[*m] + &prod.scale(c);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDump {
    pub i: usize,
    pub degree: u32,
    pub bidegree: (u32, u32),
    pub basic: InvariantKind,
    pub hat_p: Vec<DumpTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantDump {
    pub family: String,
    pub rank: usize,
    pub variables: Vec<String>,
    pub generators: Vec<GeneratorDump>,
    pub adjoint_generators: Vec<Vec<DumpTerm>>,
    pub extra_n_invariant: Vec<DumpTerm>,
}

/// Serializable summary of an invariant set.
pub fn dump(algebra: &Algebra, set: &InvariantSet) -> InvariantDump {
    let grading = coadjoint_bigrading(algebra);
    let generators = set
        .f
        .iter()
        .zip(&set.hat_p)
        .enumerate()
        .map(|(i, (b, p))| GeneratorDump {
            i: i + 1,
            degree: b.degree,
            bidegree: p.terms().next().map(|(m, _)| grading.bidegree(m)).unwrap_or((0, 0)),
            basic: b.kind,
            hat_p: p.to_dump(),
        })
        .collect();
    InvariantDump {
        family: algebra.spec.family().to_string(),
        rank: algebra.rank(),
        variables: algebra.basis.labels.clone(),
        generators,
        adjoint_generators: set.adjoint_gens.iter().map(SparsePoly::to_dump).collect(),
        extra_n_invariant: extra_n_invariant(algebra).to_dump(),
    }
}
