use serde_json::json;

use super::{point_json, stream, CheckReport, Mode, VerifyError, Workspace};
use crate::liecore::{Family, GVector, StructureConstants};
use crate::rational::Rational;
use crate::sampling;

/// First basis triple violating the Jacobi identity for `constants`, if any.
fn jacobi_violation(constants: &StructureConstants) -> Option<(usize, usize, usize, Vec<Rational>)> {
    let dim = constants.dim();
    let e = |i: usize| GVector::basis(dim, i).into_coords();
    // antisymmetry, so that distinct ordered triples suffice below
    for a in 0..dim {
        for b in a..dim {
            let ab = constants.bracket(&e(a), &e(b));
            let ba = constants.bracket(&e(b), &e(a));
            let sum: Vec<Rational> = ab.iter().zip(&ba).map(|(x, y)| x + y).collect();
            if sum.iter().any(|v| !num_traits::Zero::is_zero(v)) {
                return Some((a, b, b, sum));
            }
        }
    }
    for a in 0..dim {
        for b in a + 1..dim {
            let ab = constants.bracket(&e(a), &e(b));
            for c in b + 1..dim {
                let bc = constants.bracket(&e(b), &e(c));
                let ca = constants.bracket(&e(c), &e(a));
                let s1 = constants.bracket(&ab, &e(c));
                let s2 = constants.bracket(&bc, &e(a));
                let s3 = constants.bracket(&ca, &e(b));
                let sum: Vec<Rational> = (0..dim).map(|m| &s1[m] + &s2[m] + &s3[m]).collect();
                if sum.iter().any(|v| !num_traits::Zero::is_zero(v)) {
                    return Some((a, b, c, sum));
                }
            }
        }
    }
    None
}

/// Jacobi for `q` and for `[·,·]_(t)` at a random `t ≠ 0`, the `t → 0` limit of
/// the family, and the root data identities.
pub fn check_structure_suite(ws: &Workspace, seed: u64) -> Result<Vec<CheckReport>, VerifyError> {
    let q = &ws.contraction;
    let g = &q.algebra;
    let mode = Mode::Symbolic;
    let mut out = Vec::new();
    let dim = q.dim();

    let triple_json = |a: usize, b: usize, c: usize, sum: &[Rational]| json!({"triple": [g.label(a), g.label(b), g.label(c)], "jacobiator": point_json(g, sum)});

    out.push(match jacobi_violation(q.constants()) {
        None => CheckReport::pass("structure.jacobi_q", mode, seed, format!("all basis triples of q (dim {dim})")),
        Some((a, b, c, s)) => {
            CheckReport::fail("structure.jacobi_q", mode, seed, "Jacobi identity fails", triple_json(a, b, c, &s))
        }
    });

    // family at a sampled t ≠ 0
    let mut rng = sampling::rng(seed, stream(1, 0));
    let t = sampling::random_nonzero(&mut rng) / sampling::random_nonzero(&mut rng);
    let table: Vec<Vec<(usize, Rational)>> = (0..dim * dim)
        .map(|p| {
            q.family_constants(p / dim, p % dim)
                .iter()
                .map(|term| {
                    let c = if term.power == 1 { &term.coeff * &t } else { term.coeff.clone() };
                    (term.target, c)
                })
                .collect()
        })
        .collect();
    let at_t = StructureConstants::new(dim, table);
    let t_str = crate::rational::to_string(&t);
    out.push(match jacobi_violation(&at_t) {
        None => CheckReport::pass("structure.jacobi_family", mode, seed, format!("all basis triples at t = {t_str}")),
        Some((a, b, c, s)) => {
            let mut w = triple_json(a, b, c, &s);
            w["t"] = json!(t_str);
            CheckReport::fail("structure.jacobi_family", mode, seed, "Jacobi identity fails for [·,·]_(t)", w)
        }
    });

    // t → 0 limit and polynomiality in t
    let mut bad = None;
    'pairs: for j in 0..dim {
        for k in 0..dim {
            let terms = q.family_constants(j, k);
            let limit: Vec<(usize, Rational)> =
                terms.iter().filter(|t| t.power == 0).map(|t| (t.target, t.coeff.clone())).collect();
            if terms.iter().any(|t| t.power > 1) || limit.as_slice() != q.constants().get(j, k) {
                bad = Some((j, k));
                break 'pairs;
            }
        }
    }
    out.push(match bad {
        None => CheckReport::pass(
            "structure.family_limit",
            mode,
            seed,
            "coefficients of [e_j,e_k]_(t) are polynomial in t with constant term the bracket of q",
        ),
        Some((j, k)) => CheckReport::fail(
            "structure.family_limit",
            mode,
            seed,
            "t → 0 limit differs from the bracket of q",
            json!({"pair": [g.label(j), g.label(k)]}),
        ),
    });

    // t = 1 recovers g
    let one = Rational::from_integer(1.into());
    let mut bad = None;
    'g: for j in 0..dim {
        for k in 0..dim {
            let (x, y) = (g.basis_vector(j), g.basis_vector(k));
            if q.family_bracket(&x, &y, &one).ok().as_ref() != Some(&g.bracket(&x, &y)) {
                bad = Some((j, k));
                break 'g;
            }
        }
    }
    out.push(match bad {
        None => CheckReport::pass("structure.family_at_one", mode, seed, "[·,·]_(1) is the bracket of g"),
        Some((j, k)) => CheckReport::fail(
            "structure.family_at_one",
            mode,
            seed,
            "[·,·]_(1) differs from the bracket of g",
            json!({"pair": [g.label(j), g.label(k)]}),
        ),
    });

    // root data
    let roots = &g.roots;
    let sum_a: i64 = roots.a_coeffs.iter().sum();
    let h = roots.coxeter as i64;
    out.push(if sum_a == h - 1 {
        CheckReport::pass(
            "structure.highest_root",
            mode,
            seed,
            format!("θ = {:?}, Σ a_i = {sum_a} = h − 1 with h = {h}", roots.a_coeffs),
        )
    } else {
        CheckReport::fail(
            "structure.highest_root",
            mode,
            seed,
            format!("Σ a_i = {sum_a} but h − 1 = {}", h - 1),
            json!({"a": roots.a_coeffs, "h": h}),
        )
    });

    let l = g.rank() as u32;
    let expected: Vec<u32> = match g.spec.family() {
        Family::A => (1..=l).collect(),
        Family::B | Family::C => (1..=l).map(|i| 2 * i - 1).collect(),
        Family::D => {
            let mut e: Vec<u32> = (1..l).map(|i| 2 * i - 1).collect();
            e.push(l - 1);
            e.sort_unstable();
            e
        }
    };
    out.push(if roots.exponents == expected && roots.exponents.last().copied() == Some(roots.coxeter - 1) {
        CheckReport::pass("structure.exponents", mode, seed, format!("exponents {:?}", roots.exponents))
    } else {
        CheckReport::fail(
            "structure.exponents",
            mode,
            seed,
            format!("exponents {:?}, expected {expected:?}", roots.exponents),
            json!({"exponents": roots.exponents, "expected": expected}),
        )
    });

    let npos = roots.positive_roots.len();
    out.push(if 2 * npos + g.rank() == dim {
        CheckReport::pass("structure.dimensions", mode, seed, format!("dim g = {dim}, dim u = {npos}"))
    } else {
        CheckReport::fail(
            "structure.dimensions",
            mode,
            seed,
            "dim u ≠ (dim g − l)/2",
            json!({"dim": dim, "positive_roots": npos}),
        )
    });
    Ok(out)
}
