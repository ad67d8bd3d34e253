use serde_json::json;

use super::{vector_json, CheckReport, Mode, VerifyError, Workspace};
use crate::liecore::{Family, GVector};
use crate::linalg;
use crate::rational::Rational;

/// `dim g^e + 2·rank{P_1(e),…,P_l(e)} ≥ 3l` for the Jordan-form nilpotents of type A.
pub fn check_nullcone_inequality(ws: &Workspace, seed: u64) -> Result<Vec<CheckReport>, VerifyError> {
    let g = ws.algebra();
    if g.spec.family() != Family::A {
        return Err(VerifyError::UnsupportedFamily { suite: "nullcone", family: g.spec.family() });
    }
    let reps: Vec<(String, GVector)> = g
        .nilpotent_representatives()?
        .into_iter()
        .map(|r| {
            let parts: Vec<String> = r.partition.iter().map(usize::to_string).collect();
            (parts.join("+"), r.element)
        })
        .collect();
    check_nullcone_for(ws, &reps, seed)
}

/// The same inequality for user-supplied nilpotent elements of `u`, each with a name.
pub fn check_nullcone_for(
    ws: &Workspace,
    elements: &[(String, GVector)],
    seed: u64,
) -> Result<Vec<CheckReport>, VerifyError> {
    let g = ws.algebra();
    let set = ws.invariants()?;
    let l = g.rank();
    let mode = Mode::Symbolic;
    let mut out = Vec::new();
    for (label, e) in elements {
        let name = format!("nullcone.{label}");
        if e.support().iter().any(|&i| !g.is_positive(i)) {
            out.push(CheckReport::fail(
                name,
                mode,
                seed,
                "element does not lie in u",
                json!({"element": vector_json(g, e)}),
            ));
            continue;
        }
        let values: Vec<Vec<Rational>> = set
            .restricted
            .entries
            .iter()
            .map(|map| map.iter().map(|p| p.eval(e.coords()).expect("total point")).collect())
            .collect();
        let r = linalg::rank(&values);
        let c = g.centralizer_dim(e);
        let lhs = c + 2 * r;
        out.push(if lhs >= 3 * l {
            CheckReport::pass(name, mode, seed, format!("{c} + 2·{r} = {lhs} ≥ {}", 3 * l))
        } else {
            CheckReport::fail(
                name,
                mode,
                seed,
                format!("{c} + 2·{r} = {lhs} < {}", 3 * l),
                json!({"element": vector_json(g, e), "centralizer_dim": c, "rank": r}),
            )
        });
    }
    Ok(out)
}
