use num_traits::Zero;
use serde_json::json;

use super::{poly_json, stream, vector_json, CheckReport, Mode, VerifyError, Workspace};
use crate::contraction::{exp_ad_g, ContractionError, QDualVector};
use crate::invariants::{adjoint_derivation, coadjoint_derivation, commutator_with_argument, extra_n_invariant};
use crate::liecore::GVector;
use crate::polyring::SparsePoly;
use crate::rational::Rational;
use crate::sampling;

/// Invariance of the coadjoint generators, the adjoint generators and the
/// restricted covariants, plus the group-level and `U`-conjugation checks.
pub fn check_invariance_suite(
    ws: &Workspace,
    mode: Mode,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckReport>, VerifyError> {
    let set = ws.invariants()?;
    let mut out = check_coadjoint_invariance(ws, &set.hat_p, mode, seed, samples);
    out.extend(check_commutators(ws, mode, seed, samples)?);
    out.push(check_adjoint_generators(ws, &set.adjoint_gens, seed));
    out.push(check_group_n(ws, seed, samples)?);
    out.push(check_extra_n(ws, seed));
    out.push(check_u_conjugation(ws, seed, samples.max(10)));
    Ok(out)
}

/// Coadjoint invariance of arbitrary elements of `S(q)`, reported as
/// `invariance.coadjoint.P{i}`. Symbolic mode demands that every derivation
/// is the zero polynomial; sampled mode evaluates `K(y)·∇P(y)` at random points.
pub fn check_coadjoint_invariance(
    ws: &Workspace,
    polys: &[SparsePoly],
    mode: Mode,
    seed: u64,
    samples: usize,
) -> Vec<CheckReport> {
    let q = &ws.contraction;
    let g = &q.algebra;
    polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let name = format!("invariance.coadjoint.P{}", i + 1);
            match mode {
                Mode::Symbolic => {
                    for j in 0..q.dim() {
                        let d = coadjoint_derivation(q, p, j);
                        if !d.is_zero() {
                            return CheckReport::fail(
                                name,
                                mode,
                                seed,
                                format!("derivation along {} is not zero", g.label(j)),
                                json!({"direction": g.label(j), "derivation": poly_json(&d)}),
                            );
                        }
                    }
                    CheckReport::pass(name, mode, seed, format!("all {} derivations vanish identically", q.dim()))
                }
                Mode::Sampled => {
                    for s in 0..samples {
                        let mut rng = sampling::rng(seed, stream(10 + i as u64, s as u64));
                        let y = QDualVector::from_g(GVector::from_coords(sampling::random_vector(&mut rng, q.dim())));
                        let xs = y.linear_coordinates(g);
                        let grad = p.gradient_at(&xs).expect("point covers the universe");
                        let k = q.kirillov_at(&xs);
                        for (j, row) in k.iter().enumerate() {
                            let v = row.iter().zip(&grad).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                            if !v.is_zero() {
                                return CheckReport::fail(
                                    name,
                                    mode,
                                    seed,
                                    format!("derivation along {} is nonzero at sample {s}", g.label(j)),
                                    json!({"direction": g.label(j), "point": vector_json(g, y.as_g())}),
                                );
                            }
                        }
                    }
                    CheckReport::pass(name, mode, seed, format!("all derivations vanish at {samples} random points"))
                }
            }
        })
        .collect()
}

/// `[P_i(u), u] = 0`.
fn check_commutators(ws: &Workspace, mode: Mode, seed: u64, samples: usize) -> Result<Vec<CheckReport>, VerifyError> {
    let g = ws.algebra();
    let set = ws.invariants()?;
    let mut out = Vec::new();
    for (i, map) in set.restricted.entries.iter().enumerate() {
        let name = format!("invariance.commutator.P{}", i + 1);
        let report = match mode {
            Mode::Symbolic => {
                let c = commutator_with_argument(g, map);
                match c.iter().position(|p| !p.is_zero()) {
                    None => CheckReport::pass(name, mode, seed, "[P_i(u), u] vanishes identically"),
                    Some(k) => CheckReport::fail(
                        name,
                        mode,
                        seed,
                        format!("component {} of [P_i(u), u] is nonzero", g.label(k)),
                        json!({"component": g.label(k), "polynomial": poly_json(&c[k])}),
                    ),
                }
            }
            Mode::Sampled => {
                let mut bad = None;
                for s in 0..samples {
                    let mut rng = sampling::rng(seed, stream(30 + i as u64, s as u64));
                    let u = GVector::from_coords(sampling::random_masked(&mut rng, g.dim(), |k| g.is_positive(k)));
                    let value: Vec<Rational> = map.iter().map(|p| p.eval(u.coords()).expect("total point")).collect();
                    if !g.bracket(&GVector::from_coords(value), &u).is_zero() {
                        bad = Some(u);
                        break;
                    }
                }
                match bad {
                    None => CheckReport::pass(name, mode, seed, format!("[P_i(u), u] = 0 at {samples} random points")),
                    Some(u) => {
                        CheckReport::fail(name, mode, seed, "[P_i(u), u] ≠ 0", json!({"point": vector_json(g, &u)}))
                    }
                }
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// The Cartan coordinates are killed by every adjoint derivation of `q`.
fn check_adjoint_generators(ws: &Workspace, gens: &[SparsePoly], seed: u64) -> CheckReport {
    let q = &ws.contraction;
    let g = &q.algebra;
    let name = "invariance.adjoint_generators";
    let mode = Mode::Symbolic;
    if gens.len() != g.rank() || gens.iter().any(|p| p.total_degree() != Some(1)) {
        return CheckReport::fail(name, mode, seed, "expected l linear generators", json!({"count": gens.len()}));
    }
    for (i, p) in gens.iter().enumerate() {
        for j in 0..q.dim() {
            let d = adjoint_derivation(q, p, j);
            if !d.is_zero() {
                return CheckReport::fail(
                    name,
                    mode,
                    seed,
                    format!("generator {} is moved by {}", i + 1, g.label(j)),
                    json!({"generator": i + 1, "direction": g.label(j), "derivation": poly_json(&d)}),
                );
            }
        }
    }
    CheckReport::pass(name, mode, seed, format!("{} Cartan coordinates are annihilated by ad q", gens.len()))
}

/// `P̂_i(exp(η) ⋆ y) = P̂_i(y)`.
fn check_group_n(ws: &Workspace, seed: u64, samples: usize) -> Result<CheckReport, VerifyError> {
    let q = &ws.contraction;
    let g = &q.algebra;
    let set = ws.invariants()?;
    let name = "invariance.group_n";
    let mode = Mode::Sampled;
    for s in 0..samples {
        let mut rng = sampling::rng(seed, stream(50, s as u64));
        let y = QDualVector::from_g(GVector::from_coords(sampling::random_vector(&mut rng, q.dim())));
        let eta = GVector::from_coords(sampling::random_masked(&mut rng, q.dim(), |k| g.is_negative(k)));
        let moved = q.group_coadjoint_n(&eta, &y).expect("η lies in u⁻");
        let (a, b) = (y.linear_coordinates(g), moved.linear_coordinates(g));
        for (i, p) in set.hat_p.iter().enumerate() {
            if p.eval(&a).expect("total") != p.eval(&b).expect("total") {
                return Ok(CheckReport::fail(
                    name,
                    mode,
                    seed,
                    format!("P{} changes under exp(η)", i + 1),
                    json!({"y": vector_json(g, y.as_g()), "eta": vector_json(g, &eta)}),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name, mode, seed, format!("every P̂_i is fixed by exp(η) at {samples} random pairs")))
}

/// `X_{eθ}` is killed by `u⁻` but has torus weight `θ`.
fn check_extra_n(ws: &Workspace, seed: u64) -> CheckReport {
    let q = &ws.contraction;
    let g = &q.algebra;
    let v = extra_n_invariant(g);
    let name = "invariance.extra_n";
    let mode = Mode::Symbolic;
    if let Some(j) = (0..q.dim()).filter(|&j| g.is_negative(j)).find(|&j| !coadjoint_derivation(q, &v, j).is_zero()) {
        return CheckReport::fail(name, mode, seed, "X_θ is moved by u⁻", json!({"direction": g.label(j)}));
    }
    if (0..g.rank()).all(|j| coadjoint_derivation(q, &v, j).is_zero()) {
        return CheckReport::fail(
            name,
            mode,
            seed,
            "X_θ has torus weight zero",
            json!({"label": g.label(g.theta_index())}),
        );
    }
    CheckReport::pass(
        name,
        mode,
        seed,
        format!("{} is N-invariant with nonzero torus weight", g.label(g.theta_index())),
    )
}

/// `exp(ad u′) t = t + u` for the `u′` found by the solver, at random regular `t`.
fn check_u_conjugation(ws: &Workspace, seed: u64, samples: usize) -> CheckReport {
    let q = &ws.contraction;
    let g = &q.algebra;
    let name = "invariance.u_conjugation";
    let mode = Mode::Sampled;
    let mut done = 0;
    let mut redraws = 0;
    let mut s = 0u64;
    while done < samples {
        let mut rng = sampling::rng(seed, stream(60, s));
        s += 1;
        let b = GVector::from_coords(sampling::random_masked(&mut rng, q.dim(), |k| g.is_borel(k)));
        match q.u_conjugate_to_cartan(&b) {
            Ok(u) => {
                let t = g.project_cartan(&b);
                let ok = u.support().iter().all(|&k| g.is_positive(k)) && exp_ad_g(g, &u, &t).ok().as_ref() == Some(&b);
                if !ok {
                    return CheckReport::fail(
                        name,
                        mode,
                        seed,
                        "exp(ad u′) t ≠ t + u",
                        json!({"b": vector_json(g, &b), "u_prime": vector_json(g, &u)}),
                    );
                }
                done += 1;
            }
            Err(ContractionError::NotRegular(root)) => {
                redraws += 1;
                if redraws > sampling::MAX_RESAMPLES {
                    return CheckReport::inconclusive(
                        name,
                        mode,
                        seed,
                        format!("too many non-regular draws (last root {root})"),
                        json!({"b": vector_json(g, &b), "redraws": redraws}),
                    );
                }
            }
            Err(e) => {
                return CheckReport::fail(name, mode, seed, e.to_string(), json!({"b": vector_json(g, &b)}));
            }
        }
    }
    CheckReport::pass(name, mode, seed, format!("t + u reconstructed exactly at {samples} regular samples"))
}
