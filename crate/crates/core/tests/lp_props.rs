use polycalc_core::arith::linalg;
use polycalc_core::arith::lp::{lp_solve, LpResult, Sense};
use polycalc_core::polyhedra::{dd_convert, Constraint, HPoly};
use polycalc_core::Rational;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(Rational::from_integer)
}

fn instance() -> impl Strategy<Value = (HPoly, Vec<Rational>, bool)> {
    (1usize..=4).prop_flat_map(|d| {
        let row = move || {
            (prop::collection::vec(small(), d), -3i64..=4)
                .prop_map(|(a, b)| Constraint::new(a, Rational::from_integer(b)))
        };
        (
            prop::collection::vec(row(), 0..=7),
            prop::collection::vec(row(), 0..=2),
            prop::collection::vec(small(), d),
            any::<bool>(),
        )
            .prop_map(move |(i, e, c, max)| (HPoly::new(d, i, e).unwrap(), c, max))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Certificates check out and the status and value agree with the
    /// generator form.
    #[test]
    fn lp_agrees_with_generators((p, c, max) in instance()) {
        let sense = if max { Sense::Max } else { Sense::Min };
        let res = lp_solve(&c, sense, &p).unwrap();
        prop_assert!(res.verify(&c, sense, &p));
        let g = dd_convert(&p);
        let sign = if max { Rational::one() } else { -Rational::one() };
        let improving = g.rays.iter().any(|r| (linalg::dot(&c, r) * &sign).is_positive())
            || g.lines.iter().any(|l| !linalg::dot(&c, l).is_zero());
        match res {
            LpResult::Infeasible { .. } => prop_assert!(g.is_empty()),
            LpResult::Unbounded { .. } => prop_assert!(!g.is_empty() && improving),
            LpResult::Optimal { value, point, .. } => {
                prop_assert!(!g.is_empty() && !improving);
                prop_assert!(p.contains(&point).unwrap());
                let best = g.points.iter().map(|q| linalg::dot(&c, q) * &sign).max().unwrap();
                prop_assert_eq!(value * &sign, best);
            }
        }
    }

    #[test]
    fn lp_is_deterministic((p, c, max) in instance()) {
        let sense = if max { Sense::Max } else { Sense::Min };
        prop_assert_eq!(lp_solve(&c, sense, &p).unwrap(), lp_solve(&c, sense, &p).unwrap());
    }
}
