use polycalc_core::arith::linalg::{self, Matrix, Vector};
use polycalc_core::polyhedra::*;
use polycalc_core::Rational;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(Rational::from_integer)
}

fn constraint(dim: usize) -> impl Strategy<Value = Constraint> {
    (prop::collection::vec(small(), dim), -3i64..=4)
        .prop_map(|(a, b)| Constraint::new(a, Rational::from_integer(b)))
}

fn hpoly_in(dim: usize) -> impl Strategy<Value = HPoly> {
    (
        prop::collection::vec(constraint(dim), 0..=6),
        prop::collection::vec(constraint(dim), 0..=1),
    )
        .prop_map(move |(ineqs, eqs)| HPoly::new(dim, ineqs, eqs).unwrap())
}

fn hpoly() -> impl Strategy<Value = HPoly> {
    (1usize..=4).prop_flat_map(hpoly_in)
}

/// Nonempty polyhedra built from generators.
fn vpoly_in(dim: usize) -> impl Strategy<Value = GenSet> {
    (
        prop::collection::vec(prop::collection::vec(small(), dim), 1..=4),
        prop::collection::vec(prop::collection::vec(small(), dim), 0..=2),
        prop::collection::vec(prop::collection::vec(small(), dim), 0..=1),
    )
        .prop_map(move |(p, r, l)| GenSet::new(dim, p, r, l).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(small(), cols), rows)
        .prop_map(move |r| Matrix::new(rows, cols, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip(p in hpoly()) {
        let back = dd_reverse(&dd_convert(&p));
        prop_assert!(set_equal(&back, &p).unwrap().equal);
    }

    #[test]
    fn generator_round_trip(g in (1usize..=4).prop_flat_map(vpoly_in)) {
        let h = dd_reverse(&g);
        prop_assert!(set_equal(&g, &h).unwrap().equal);
        prop_assert!(set_equal(&dd_convert(&h), &g).unwrap().equal);
    }

    #[test]
    fn projection_matches_generator_projection(
        (p, mask) in (1usize..=4).prop_flat_map(|d| (hpoly_in(d), prop::collection::vec(any::<bool>(), d)))
    ) {
        let drop: Vec<usize> = (0..p.dim).filter(|&i| mask[i]).collect();
        let keep: Vec<usize> = (0..p.dim).filter(|&i| !mask[i]).collect();
        let fm = fm_eliminate(&p, &drop);
        prop_assert_eq!(fm.dim, keep.len());
        let oracle = dd_convert(&p).project(&keep);
        prop_assert!(set_equal(&fm, &oracle).unwrap().equal);
    }

    #[test]
    fn minkowski_laws(
        (a, b, c) in (1usize..=3).prop_flat_map(|d| (vpoly_in(d), vpoly_in(d), vpoly_in(d)))
    ) {
        let (ha, hb, hc) = (dd_reverse(&a), dd_reverse(&b), dd_reverse(&c));
        let ab = minkowski_sum(&ha, &hb).unwrap();
        prop_assert!(set_equal(&ab, &minkowski_sum(&hb, &ha).unwrap()).unwrap().equal);
        prop_assert!(set_equal(&ab, &a.minkowski_sum(&b).unwrap()).unwrap().equal);
        let left = minkowski_sum(&ab, &hc).unwrap();
        let right = minkowski_sum(&ha, &minkowski_sum(&hb, &hc).unwrap()).unwrap();
        prop_assert!(set_equal(&left, &right).unwrap().equal);
    }

    #[test]
    fn image_composition(
        (g, a1, a2) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(n, m, k)| (vpoly_in(n), matrix(m, n), matrix(k, m)))
    ) {
        let p = dd_reverse(&g);
        let b1 = linalg::zeros(a1.nrows);
        let b2 = linalg::zeros(a2.nrows);
        let two_step = affine_image(&affine_image(&p, &a1, &b1).unwrap(), &a2, &b2).unwrap();
        let one_step = affine_image(&p, &a2.mul(&a1).unwrap(), &b2).unwrap();
        prop_assert!(set_equal(&two_step, &one_step).unwrap().equal);
        prop_assert!(set_equal(&one_step, &g.affine_image(&a2.mul(&a1).unwrap().rows, &b2)).unwrap().equal);
    }

    #[test]
    fn preimage_is_substitution(
        (g, a, b) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
            (vpoly_in(m), matrix(m, n), prop::collection::vec(small(), m))
        })
    ) {
        let p = dd_reverse(&g);
        let pre = affine_preimage(&p, &a, &b).unwrap();
        for x in dd_convert(&pre).points {
            let y = linalg::add(&a.mul_vec(&x).unwrap(), &b);
            prop_assert!(p.contains(&y).unwrap());
        }
        // the image of the preimage sits inside P
        let back = affine_image(&pre, &a, &b).unwrap();
        prop_assert!(is_subset(&back, &p).unwrap());
    }

    #[test]
    fn relative_interior_sees_a_subspace(g in (1usize..=4).prop_flat_map(vpoly_in)) {
        let p = dd_reverse(&g);
        let ri = relative_interior(&p).unwrap();
        let x = &ri.point;
        prop_assert!(p.contains(x).unwrap());
        for (c, &imp) in p.ineqs.iter().zip(&ri.implicit) {
            if imp {
                prop_assert!(c.slack(x).is_zero());
            } else {
                prop_assert!(c.slack(x).is_positive());
            }
        }
        // cone(P - x) is a linear subspace
        let gens = dd_convert(&p);
        let mut rays: Vec<Vector> = gens.points.iter().map(|q| linalg::sub(q, x)).collect();
        rays.extend(gens.rays.iter().cloned());
        let cone = GenSet::cone(p.dim, rays, gens.lines.clone());
        let neg = GenSet::cone(
            p.dim,
            cone.rays.iter().map(|r| linalg::neg(r)).collect(),
            cone.lines.clone(),
        );
        prop_assert!(set_equal(&cone, &neg).unwrap().equal);
        let hull = affine_hull(&p).unwrap();
        prop_assert_eq!(hull.dim + hull.codim, p.dim);
        prop_assert_eq!(linalg::rank(&cone.rays.iter().chain(&cone.lines).cloned().collect::<Vec<_>>(), p.dim), hull.dim);
    }

    #[test]
    fn canonical_and_minimized_forms_preserve_the_set(p in hpoly()) {
        prop_assert!(set_equal(&p.canonicalize(), &p).unwrap().equal);
        prop_assert!(set_equal(&p.minimized(), &p).unwrap().equal);
        prop_assert!(set_equal(&p.equalities_as_inequalities(), &p).unwrap().equal);
    }

    #[test]
    fn emptiness_agrees_with_generators(p in hpoly()) {
        prop_assert_eq!(p.is_empty(), dd_convert(&p).is_empty());
        if let Some(w) = p.witness() {
            prop_assert!(p.contains(&w).unwrap());
        }
    }
}
