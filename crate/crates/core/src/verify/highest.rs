use serde_json::json;

use super::{poly_json, CheckReport, Mode, VerifyError, Workspace};
use crate::invariants::{coadjoint_components, highest_component_adj, highest_component_coadj, monomial_top_invariant};
use crate::linalg;
use crate::polyring::{Monomial, SparsePoly};
use crate::rational;
use crate::rational::Rational;

/// The highest components of the `f_i` against the `P̂_i`, the monomial form of
/// `P̂_l`, and a low-degree comparison of the two graded algebras.
pub fn check_highest_components(ws: &Workspace, seed: u64) -> Result<Vec<CheckReport>, VerifyError> {
    let g = ws.algebra();
    let set = ws.invariants()?;
    let mode = Mode::Symbolic;
    let mut out = Vec::new();

    for (i, (b, hat)) in set.f.iter().zip(&set.hat_p).enumerate() {
        let idx = i + 1;
        let comps = coadjoint_components(g, &b.poly);
        let pure = comps.get(&(b.degree, 0)).filter(|p| !p.is_zero());
        out.push(match pure {
            None => CheckReport::pass(
                format!("highest.pure_negative.f{idx}"),
                mode,
                seed,
                format!("component of u⁻-degree {} vanishes", b.degree),
            ),
            Some(p) => CheckReport::fail(
                format!("highest.pure_negative.f{idx}"),
                mode,
                seed,
                "component in S(u⁻) is nonzero",
                json!({"component": poly_json(p)}),
            ),
        });

        let top = highest_component_coadj(g, &b.poly)?;
        out.push(match top.ratio_to(hat) {
            Some(c) => CheckReport::pass(
                format!("highest.coadjoint.f{idx}"),
                mode,
                seed,
                format!("highest component = {} · P̂_{idx}", rational::to_string(&c)),
            ),
            None => CheckReport::fail(
                format!("highest.coadjoint.f{idx}"),
                mode,
                seed,
                "highest component is not a multiple of P̂_i",
                json!({"highest": poly_json(&top), "hat_p": poly_json(hat)}),
            ),
        });

        let adj = highest_component_adj(g, &b.poly)?;
        let cartan_only = adj.variables().iter().all(|&v| g.is_cartan(v));
        out.push(if !adj.is_zero() && cartan_only {
            CheckReport::pass(
                format!("highest.adjoint.f{idx}"),
                mode,
                seed,
                format!("adjoint highest component has {} terms, all in Cartan coordinates", adj.num_terms()),
            )
        } else {
            CheckReport::fail(
                format!("highest.adjoint.f{idx}"),
                mode,
                seed,
                "adjoint highest component is zero or involves non-Cartan coordinates",
                json!({"component": poly_json(&adj)}),
            )
        });
    }

    let top = set.hat_p.last().expect("l ≥ 1");
    let mono = monomial_top_invariant(g);
    out.push(match top.ratio_to(&mono) {
        Some(c) => {
            CheckReport::pass("highest.monomial_top", mode, seed, format!("P̂_l = {} · {mono}", rational::to_string(&c)))
        }
        None => CheckReport::fail(
            "highest.monomial_top",
            mode,
            seed,
            "P̂_l is not a multiple of the monomial",
            json!({"hat_p": poly_json(top), "monomial": poly_json(&mono)}),
        ),
    });

    out.push(check_poincare(ws, seed)?);
    Ok(out)
}

/// Rank of the coefficient matrix of `polys`.
fn span_dim(polys: &[SparsePoly]) -> usize {
    let mut monos: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    linalg::rank(&rows)
}

/// For each degree `n ≤ d_2`, the products of at most two `f_i` of degree `n`
/// and their highest components span spaces of the same dimension.
fn check_poincare(ws: &Workspace, seed: u64) -> Result<CheckReport, VerifyError> {
    let g = ws.algebra();
    let set = ws.invariants()?;
    let mode = Mode::Symbolic;
    let bound = set.f.get(1).map_or(set.f[0].degree, |b| b.degree);
    let mut summary = Vec::new();
    for n in 1..=bound {
        let mut sources = Vec::new();
        for (i, a) in set.f.iter().enumerate() {
            if a.degree == n {
                sources.push(a.poly.clone());
            }
            for b in &set.f[i..] {
                if a.degree + b.degree == n {
                    sources.push(&a.poly * &b.poly);
                }
            }
        }
        if sources.is_empty() {
            continue;
        }
        let tops: Vec<SparsePoly> = sources.iter().map(|p| highest_component_coadj(g, p)).collect::<Result<_, _>>()?;
        let (d_src, d_top) = (span_dim(&sources), span_dim(&tops));
        if d_src != d_top {
            return Ok(CheckReport::fail(
                "highest.poincare",
                mode,
                seed,
                format!("degree {n}: sources span {d_src}, highest components span {d_top}"),
                json!({"degree": n, "sources": d_src, "highest": d_top}),
            ));
        }
        summary.push(format!("deg {n}: {d_src}"));
    }
    Ok(CheckReport::pass(
        "highest.poincare",
        mode,
        seed,
        format!("dimensions agree up to degree {bound} ({})", summary.join(", ")),
    ))
}
