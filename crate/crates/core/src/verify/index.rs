use serde_json::json;

use super::{stream, vector_json, CheckReport, Mode, VerifyError, Workspace};
use crate::contraction::QDualVector;
use crate::invariants::coadjoint_bigrading;
use crate::liecore::GVector;
use crate::polyring::jacobian_rank;
use crate::sampling;

/// `ind q = l`, the degrees and bidegrees of the `P̂_i`, their degree sum, and
/// the rank of their differentials at a random point.
pub fn check_index_and_degrees(ws: &Workspace, seed: u64, samples: usize) -> Result<Vec<CheckReport>, VerifyError> {
    let q = &ws.contraction;
    let g = &q.algebra;
    let set = ws.invariants()?;
    let l = g.rank();
    let dim = q.dim();
    let mut out = Vec::new();

    let est = q.index_estimate(samples, seed);
    let name = "index.estimate";
    let mode = Mode::Sampled;
    out.push(if !est.conclusive {
        CheckReport::inconclusive(
            name,
            mode,
            seed,
            format!("maximal Kirillov rank still growing after {} points", est.points),
            json!({"max_rank": est.max_rank, "points": est.points}),
        )
    } else if est.index == l {
        CheckReport::pass(
            name,
            mode,
            seed,
            format!("ind q = {dim} − {} = {l} over {} points", est.max_rank, est.points),
        )
    } else {
        CheckReport::fail(
            name,
            mode,
            seed,
            format!("estimated index {} ≠ l = {l}", est.index),
            json!({"max_rank": est.max_rank, "points": est.points}),
        )
    });

    let mode = Mode::Symbolic;
    let degrees: Vec<u32> = set.hat_p.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
    let f_degrees = set.degrees();
    out.push(if degrees == g.roots.degrees && f_degrees == g.roots.degrees {
        CheckReport::pass("index.degrees", mode, seed, format!("deg f_i = deg P̂_i = {degrees:?}"))
    } else {
        CheckReport::fail(
            "index.degrees",
            mode,
            seed,
            "degrees differ from d_i",
            json!({"hat_p": degrees, "f": f_degrees, "expected": g.roots.degrees}),
        )
    });

    let grading = coadjoint_bigrading(g);
    let mut bad = None;
    for (i, (p, &m)) in set.hat_p.iter().zip(&g.roots.exponents).enumerate() {
        if p.is_zero() || p.terms().any(|(mono, _)| grading.bidegree(mono) != (m, 1)) {
            bad = Some(i);
            break;
        }
    }
    out.push(match bad {
        None => CheckReport::pass(
            "index.bidegrees",
            mode,
            seed,
            format!("P̂_i has bidegree (m_i, 1) for m = {:?}", g.roots.exponents),
        ),
        Some(i) => {
            let found: Vec<(u32, u32)> = set.hat_p[i].terms().map(|(m, _)| grading.bidegree(m)).collect();
            CheckReport::fail(
                "index.bidegrees",
                mode,
                seed,
                format!("P̂_{} is not bihomogeneous of bidegree (m_i, 1)", i + 1),
                json!({"generator": i + 1, "bidegrees": found}),
            )
        }
    });

    let sum: usize = degrees.iter().map(|&d| d as usize).sum();
    out.push(if 2 * sum == dim + l {
        CheckReport::pass("index.degree_sum", mode, seed, format!("Σ deg P̂_i = {sum} = ({dim} + {l})/2"))
    } else {
        CheckReport::fail(
            "index.degree_sum",
            mode,
            seed,
            format!("Σ deg P̂_i = {sum} ≠ ({dim} + {l})/2"),
            json!({"sum": sum, "dim": dim, "rank": l}),
        )
    });

    // differentials independent at a random point
    let name = "index.jacobian_rank";
    let mode = Mode::Sampled;
    let mut last = None;
    let mut report = None;
    for attempt in 0..=sampling::MAX_RESAMPLES {
        let mut rng = sampling::rng(seed, stream(70, attempt as u64));
        let y = QDualVector::from_g(GVector::from_coords(sampling::random_vector(&mut rng, dim)));
        let r = jacobian_rank(&set.hat_p, &y.linear_coordinates(g)).expect("total point");
        if r == l {
            report = Some(CheckReport::pass(name, mode, seed, format!("rank {l} after {} draw(s)", attempt + 1)));
            break;
        }
        last = Some((y, r));
    }
    out.push(report.unwrap_or_else(|| {
        let (y, r) = last.expect("at least one draw");
        CheckReport::inconclusive(
            name,
            mode,
            seed,
            format!("rank {r} < {l} at every draw"),
            json!({"point": vector_json(g, y.as_g()), "rank": r}),
        )
    }));
    Ok(out)
}
