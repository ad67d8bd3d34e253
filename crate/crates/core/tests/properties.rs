use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;

use iwcontract::contraction::{exp_ad_g, QDualVector, QVector};
use iwcontract::liecore::{AlgebraSpec, Family, GVector};
use iwcontract::rational::{int, Rational};
use iwcontract::verify::Workspace;

fn b2() -> &'static Workspace {
    static WS: OnceLock<Workspace> = OnceLock::new();
    WS.get_or_init(|| {
        let ws = Workspace::new(AlgebraSpec::new(Family::B, 2).unwrap()).unwrap();
        ws.invariants().unwrap();
        ws
    })
}

fn a3() -> &'static Workspace {
    static WS: OnceLock<Workspace> = OnceLock::new();
    WS.get_or_init(|| {
        let ws = Workspace::new(AlgebraSpec::new(Family::A, 3).unwrap()).unwrap();
        ws.invariants().unwrap();
        ws
    })
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-20i64..=20, dim)
}

fn vector(v: &[i64]) -> GVector {
    GVector::from_coords(v.iter().map(|&c| int(c)).collect())
}

fn masked(v: &[i64], keep: impl Fn(usize) -> bool) -> GVector {
    GVector::from_coords(v.iter().enumerate().map(|(i, &c)| if keep(i) { int(c) } else { Rational::zero() }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_bracket_is_a_lie_bracket(a in coords(15), b in coords(15), c in coords(15)) {
        let q = &a3().contraction;
        let (x, y, z) = (QVector::from_g(vector(&a)), QVector::from_g(vector(&b)), QVector::from_g(vector(&c)));
        let br = |u: &QVector, v: &QVector| q.q_bracket(u, v);
        prop_assert!(br(&x, &y).as_g().add(br(&y, &x).as_g()).is_zero());
        let jac = br(&x, &br(&y, &z)).into_g().add(br(&y, &br(&z, &x)).as_g()).add(br(&z, &br(&x, &y)).as_g());
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&x, &y), q.q_bracket_explicit(&x, &y));
    }

    #[test]
    fn coadjoint_action_is_dual_to_the_bracket(a in coords(10), b in coords(10), c in coords(10)) {
        let q = &b2().contraction;
        let (x, z, y) = (QVector::from_g(vector(&a)), QVector::from_g(vector(&b)), QDualVector::from_g(vector(&c)));
        let lhs = q.pairing(&q.q_bracket(&x, &z), &y) + q.pairing(&z, &q.coadjoint_apply(&x, &y));
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn hat_invariants_are_constant_on_n_orbits(a in coords(10), c in coords(10)) {
        let ws = b2();
        let g = ws.algebra();
        let q = &ws.contraction;
        let set = ws.invariants().unwrap();
        let eta = masked(&a, |i| g.is_negative(i));
        let y = QDualVector::from_g(vector(&c));
        let moved = q.group_coadjoint_n(&eta, &y).unwrap();
        let (xs, ms) = (y.linear_coordinates(g), moved.linear_coordinates(g));
        for p in &set.hat_p {
            prop_assert_eq!(p.eval(&xs).unwrap(), p.eval(&ms).unwrap());
        }
    }

    #[test]
    fn kirillov_form_kills_invariant_gradients(c in coords(15)) {
        let ws = a3();
        let q = &ws.contraction;
        let xs: Vec<Rational> = c.iter().map(|&v| int(v)).collect();
        let kir = q.kirillov_at(&xs);
        for p in &ws.invariants().unwrap().hat_p {
            let grad = p.gradient_at(&xs).unwrap();
            prop_assert!(iwcontract::linalg::mat_vec(&kir, &grad).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn u_conjugation_round_trips(c in coords(10)) {
        let ws = b2();
        let g = ws.algebra();
        let b = masked(&c, |i| g.is_borel(i));
        let t = g.project_cartan(&b);
        prop_assume!((0..g.num_positive()).all(|k| !g.root_value(k, &t).is_zero()));
        let u = ws.contraction.u_conjugate_to_cartan(&b).unwrap();
        prop_assert_eq!(exp_ad_g(g, &u, &t).unwrap(), b);
    }

    #[test]
    fn trace_form_is_invariant(a in coords(10), b in coords(10), c in coords(10)) {
        let g = b2().algebra();
        let (x, y, z) = (vector(&a), vector(&b), vector(&c));
        let lhs = g.trace_form(&g.bracket(&x, &y), &z);
        let rhs = g.trace_form(&x, &g.bracket(&y, &z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_generators_are_invariant_under_n(a in coords(10), c in coords(10)) {
        let ws = b2();
        let g = ws.algebra();
        let eta = masked(&a, |i| g.is_negative(i));
        let z = QVector::from_g(vector(&c));
        let moved = ws.contraction.group_adjoint_n(&eta, &z).unwrap();
        for p in &ws.invariants().unwrap().adjoint_gens {
            prop_assert_eq!(p.eval(z.as_g().coords()).unwrap(), p.eval(moved.as_g().coords()).unwrap());
        }
    }
}
