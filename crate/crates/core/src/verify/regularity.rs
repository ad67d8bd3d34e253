use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{stream, vector_json, CheckReport, Mode, VerifyError, Workspace};
use crate::contraction::QDualVector;
use crate::invariants::InvariantSet;
use crate::liecore::{Algebra, Family, GVector};
use crate::linalg;
use crate::polyring::jacobian_rank;
use crate::rational::{int, Rational};
use crate::sampling;

/// Kinds of special points of `q*` used by the regularity checks.
#[derive(Debug, Clone, Copy)]
enum Special {
    /// random point on `{X_{e-α_i} = 0}`
    Hyperplane(usize),
    /// `Σ_{k≠j} e_{α_k}` plus a random `ξ ∈ b⁻` with nonzero `e_{-θ}` coordinate
    Subregular(usize),
    /// random point of `b⁻`
    OppositeBorel,
}

fn random_dual(rng: &mut ChaCha8Rng, g: &Algebra) -> QDualVector {
    QDualVector::from_g(GVector::from_coords(sampling::random_vector(rng, g.dim())))
}

fn special_point(rng: &mut ChaCha8Rng, g: &Algebra, kind: Special) -> QDualVector {
    let mut y = sampling::random_vector(rng, g.dim());
    match kind {
        Special::Hyperplane(i) => y[g.simple_root_index(i)] = int(0),
        Special::Subregular(j) => {
            for (k, v) in y.iter_mut().enumerate() {
                if g.is_positive(k) {
                    *v = int(0);
                }
            }
            for i in (0..g.rank()).filter(|&i| i != j) {
                y[g.simple_root_index(i)] = int(1);
            }
            let neg_theta = g.opposite_index(g.theta_index());
            y[neg_theta] = sampling::random_nonzero(rng);
        }
        Special::OppositeBorel => {
            for (k, v) in y.iter_mut().enumerate() {
                if g.is_positive(k) {
                    *v = int(0);
                }
            }
        }
    }
    QDualVector::from_g(GVector::from_coords(y))
}

struct Ranks {
    kirillov: usize,
    jacobian: usize,
    top_gradient_zero: bool,
}

fn ranks(ws: &Workspace, set: &InvariantSet, y: &QDualVector) -> Ranks {
    let q = &ws.contraction;
    let xs = y.linear_coordinates(&q.algebra);
    let top = set.hat_p.last().expect("l ≥ 1");
    Ranks {
        kirillov: linalg::rank(&q.kirillov_at(&xs)),
        jacobian: jacobian_rank(&set.hat_p, &xs).expect("total point"),
        top_gradient_zero: top.gradient_at(&xs).expect("total point").iter().all(num_traits::Zero::is_zero),
    }
}

/// Divisor witnesses where some `a_i ≥ 2`, subregular witnesses where all
/// `a_i = 1`, the sampled equivalence of the two regularity criteria on `q*`,
/// and the covariant criterion for regularity in `g`.
pub fn check_regularity_suite(ws: &Workspace, seed: u64, samples: usize) -> Result<Vec<CheckReport>, VerifyError> {
    let g = ws.algebra();
    let set = ws.invariants()?;
    let l = g.rank();
    let max_rank = g.dim() - l;
    let n = samples.max(10);
    let mode = Mode::Sampled;
    let mut out = Vec::new();

    let heavy: Vec<usize> = (0..l).filter(|&i| g.roots.a_coeffs[i] >= 2).collect();
    for &i in &heavy {
        let name = format!("regularity.divisor.alpha{}", i + 1);
        let mut report = None;
        for s in 0..n {
            let mut rng = sampling::rng(seed, stream(80 + i as u64, s as u64));
            let y = special_point(&mut rng, g, Special::Hyperplane(i));
            let r = ranks(ws, set, &y);
            if !(r.top_gradient_zero && r.jacobian < l && r.kirillov < max_rank) {
                report = Some(CheckReport::fail(
                    name.clone(),
                    mode,
                    seed,
                    format!(
                        "on X_(e-α{}) = 0: dP̂_l zero {}, Jacobian rank {}, Kirillov rank {} (max {max_rank})",
                        i + 1,
                        r.top_gradient_zero,
                        r.jacobian,
                        r.kirillov
                    ),
                    json!({"point": vector_json(g, y.as_g())}),
                ));
                break;
            }
        }
        out.push(report.unwrap_or_else(|| {
            CheckReport::pass(
                name,
                mode,
                seed,
                format!(
                    "a_{} = {}: dP̂_l = 0, Jacobian rank < {l}, Kirillov rank < {max_rank} at {n} hyperplane points",
                    i + 1,
                    g.roots.a_coeffs[i]
                ),
            )
        }));
    }

    if heavy.is_empty() {
        for j in 0..l {
            let name = format!("regularity.subregular.alpha{}", j + 1);
            let mut report = None;
            for s in 0..n {
                let mut rng = sampling::rng(seed, stream(100 + j as u64, s as u64));
                let y = special_point(&mut rng, g, Special::Subregular(j));
                let r = ranks(ws, set, &y);
                if r.jacobian != l {
                    report = Some(CheckReport::fail(
                        name.clone(),
                        mode,
                        seed,
                        format!("Jacobian rank {} < {l} at a subregular witness", r.jacobian),
                        json!({"point": vector_json(g, y.as_g())}),
                    ));
                    break;
                }
            }
            out.push(report.unwrap_or_else(|| {
                CheckReport::pass(name, mode, seed, format!("Jacobian rank {l} at {n} points Σ_(i≠{}) e_αi + ξ", j + 1))
            }));
        }
    }

    out.push(check_equivalence(ws, set, seed, samples));
    out.push(check_kostant(ws, set, seed, samples)?);
    Ok(out)
}

/// `[Kirillov rank maximal] ⟺ [Jacobian rank = l]` at generic and special points.
fn check_equivalence(ws: &Workspace, set: &InvariantSet, seed: u64, samples: usize) -> CheckReport {
    let g = ws.algebra();
    let l = g.rank();
    let max_rank = g.dim() - l;
    let per_class = (2 * samples).max(50);
    let mut kinds: Vec<Special> = (0..l).map(Special::Hyperplane).collect();
    if g.roots.a_coeffs.iter().all(|&a| a == 1) {
        kinds.extend((0..l).map(Special::Subregular));
    }
    kinds.push(Special::OppositeBorel);

    let name = "regularity.equivalence";
    let mode = Mode::Sampled;
    let (mut regular, mut singular) = (0usize, 0usize);
    for s in 0..2 * per_class {
        let mut rng = sampling::rng(seed, stream(120, s as u64));
        let y = if s < per_class {
            random_dual(&mut rng, g)
        } else {
            special_point(&mut rng, g, kinds[(s - per_class) % kinds.len()])
        };
        let r = ranks(ws, set, &y);
        let (a, b) = (r.kirillov == max_rank, r.jacobian == l);
        if a != b {
            return CheckReport::fail(
                name,
                mode,
                seed,
                format!("Kirillov rank {} vs Jacobian rank {} disagree", r.kirillov, r.jacobian),
                json!({"point": vector_json(g, y.as_g())}),
            );
        }
        if a {
            regular += 1;
        } else {
            singular += 1;
        }
    }
    CheckReport::pass(
        name,
        mode,
        seed,
        format!("{} points agree: {regular} regular, {singular} singular", 2 * per_class),
    )
}

/// `F_1(x),…,F_l(x)` independent `⟺` `dim g^x = l`, on random and special `x ∈ g`.
fn check_kostant(ws: &Workspace, set: &InvariantSet, seed: u64, samples: usize) -> Result<CheckReport, VerifyError> {
    let g = ws.algebra();
    let l = g.rank();
    let dim = g.dim();
    let mut points: Vec<GVector> = Vec::new();
    for s in 0..samples {
        let mut rng = sampling::rng(seed, stream(140, s as u64));
        points.push(GVector::from_coords(sampling::random_vector(&mut rng, dim)));
    }
    points.push(GVector::zero(dim));
    let regular_nilpotent = (0..l).fold(GVector::zero(dim), |acc, i| acc.add(&g.basis_vector(g.simple_root_index(i))));
    points.push(regular_nilpotent);
    points.push((1..l).fold(GVector::zero(dim), |acc, i| acc.add(&g.basis_vector(g.simple_root_index(i)))));
    // Cartan elements on the wall of α_1 and generic ones
    for s in 0..4u64 {
        let mut rng = sampling::rng(seed, stream(141, s));
        let mut t = GVector::from_coords(sampling::random_masked(&mut rng, dim, |i| g.is_cartan(i)));
        points.push(t.clone());
        let on_wall = wall_point(g, &t);
        if let Some(w) = on_wall {
            t = w;
            points.push(t.clone());
            let shifted = t.add(&g.basis_vector(g.simple_root_index(0)));
            points.push(shifted);
        }
    }
    if g.spec.family() == Family::A {
        points.extend(g.nilpotent_representatives()?.into_iter().map(|r| r.element));
    }

    let name = "regularity.kostant";
    let mode = Mode::Sampled;
    let (mut regular, mut singular) = (0usize, 0usize);
    for x in &points {
        let values: Vec<Vec<Rational>> = set
            .f
            .iter()
            .map(|b| linalg::mat_vec(g.gram_inverse(), &b.poly.gradient_at(x.coords()).expect("total point")))
            .collect();
        let independent = linalg::rank(&values) == l;
        let is_regular = g.centralizer_dim(x) == l;
        if independent != is_regular {
            return Ok(CheckReport::fail(
                name,
                mode,
                seed,
                format!("covariants independent: {independent}, centralizer dimension {}", g.centralizer_dim(x)),
                json!({"point": vector_json(g, x)}),
            ));
        }
        if is_regular {
            regular += 1;
        } else {
            singular += 1;
        }
    }
    Ok(CheckReport::pass(
        name,
        mode,
        seed,
        format!("{} points agree: {regular} regular, {singular} not regular", points.len()),
    ))
}

/// Moves the first Cartan coordinate so that `α_1` vanishes, when possible.
fn wall_point(g: &Algebra, t: &GVector) -> Option<GVector> {
    let c: Vec<Rational> = (0..g.rank()).map(|i| g.root_value(0, &g.basis_vector(i))).collect();
    let pivot = c.iter().position(|v| !num_traits::Zero::is_zero(v))?;
    let rest =
        (0..g.rank()).filter(|&i| i != pivot).fold(Rational::from_integer(0.into()), |acc, i| acc + &c[i] * t.get(i));
    let mut w = t.clone();
    w.set(pivot, -rest / &c[pivot]);
    Some(w)
}
