use polycalc_core::arith::linalg::{self, Vector};
use polycalc_core::arith::lp::{self, LpResult};
use polycalc_core::function::*;
use polycalc_core::mapping::*;
use polycalc_core::normal::*;
use polycalc_core::ovf::OvfInstance;
use polycalc_core::polyhedra::*;
use polycalc_core::separation::*;
use polycalc_core::Rational;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(Rational::from_integer)
}

fn vec_in(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(small(), dim)
}

fn vpoly_in(dim: usize, max_rays: usize, max_lines: usize) -> impl Strategy<Value = GenSet> {
    (
        prop::collection::vec(vec_in(dim), 1..=4),
        prop::collection::vec(vec_in(dim), 0..=max_rays),
        prop::collection::vec(vec_in(dim), 0..=max_lines),
    )
        .prop_map(move |(p, r, l)| GenSet::new(dim, p, r, l).unwrap())
}

/// A polyhedron with a chosen point: a generator, a midpoint, a push along
/// a ray, or the relative-interior point.
fn pointed_in(dim: usize) -> impl Strategy<Value = (HPoly, Vector)> {
    (vpoly_in(dim, 2, 1), 0usize..8).prop_map(|(g, k)| {
        let h = dd_reverse(&g);
        let pts = sample_points(&h, 8).unwrap();
        let x = pts[k % pts.len()].clone();
        (h, x)
    })
}

fn pointed() -> impl Strategy<Value = (HPoly, Vector)> {
    (1usize..=4).prop_flat_map(pointed_in)
}

fn eq<'a, 'b>(a: impl Into<SetRef<'a>>, b: impl Into<SetRef<'b>>) -> bool {
    set_equal(a, b).unwrap().equal
}

fn func_in(nx: usize) -> impl Strategy<Value = PolyFunc> {
    (
        prop::collection::vec((vec_in(nx), small()), 1..=3),
        vpoly_in(nx, 1, 1),
        any::<bool>(),
    )
        .prop_map(move |(pieces, dom, whole)| {
            let pieces: Vec<Constraint> = pieces.into_iter().map(|(a, b)| Constraint::new(a, b)).collect();
            let dom = if whole { HPoly::whole_space(nx) } else { dd_reverse(&dom) };
            PolyFunc::from_pieces(&pieces, &dom).unwrap()
        })
}

fn func_at(nx: usize) -> impl Strategy<Value = (PolyFunc, Vector)> {
    (func_in(nx), 0usize..6).prop_map(|(f, k)| {
        let pts = sample_points(&f.domain(), 6).unwrap();
        let x = pts[k % pts.len()].clone();
        (f, x)
    })
}

fn value(f: &PolyFunc, x: &[Rational]) -> Option<Rational> {
    f.evaluate(x).unwrap().finite().cloned()
}

/// Checks `<x*, z - x> <= f(z) - f(x)` on the generators of `sub` for every
/// probe `z` in the domain.
fn subgradient_inequality(f: &PolyFunc, sub: &HPoly, x: &[Rational], probes: &[Vector]) -> bool {
    let g = dd_convert(sub);
    let fx = value(f, x).unwrap();
    probes.iter().all(|z| match value(f, z) {
        None => true,
        Some(fz) => {
            let d = linalg::sub(z, x);
            g.points.iter().all(|p| linalg::dot(p, &d) <= &fz - &fx)
                && g.rays.iter().all(|r| !linalg::dot(r, &d).is_positive())
                && g.lines.iter().all(|l| linalg::dot(l, &d).is_zero())
        }
    })
}

/// `P n ri(Omega)` is nonempty, decided row by row: a row of `Omega` is
/// implicit when its minimum over `Omega` meets the bound, and every other
/// row must admit a point of `P n Omega` strictly inside it.
fn meets_relative_interior(p: &HPoly, omega: &HPoly) -> bool {
    let both = p.intersect(omega).unwrap();
    if both.is_empty() {
        return false;
    }
    omega.ineqs.iter().all(|c| {
        let implicit = match lp::minimize(&c.a, omega).unwrap() {
            LpResult::Optimal { value, .. } => value == c.b,
            _ => false,
        };
        implicit
            || match lp::minimize(&c.a, &both).unwrap() {
                LpResult::Optimal { value, .. } => value < c.b,
                LpResult::Unbounded { .. } => true,
                LpResult::Infeasible { .. } => unreachable!(),
            }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normal_cone_matches_oracle((p, x) in pointed()) {
        let n = normal_cone(&p, &x).unwrap();
        let o = normal_cone_oracle(&p, &x).unwrap();
        prop_assert!(eq(&n.to_genset(), &o.to_genset()));
    }

    #[test]
    fn trivial_normal_cone_means_interior((p, x) in pointed()) {
        let n = normal_cone(&p, &x).unwrap();
        let hull = affine_hull(&p).unwrap();
        let interior = hull.codim == 0 && p.ineqs.iter().all(|c| c.slack(&x).is_positive());
        prop_assert_eq!(eq(&n.to_genset(), &GenSet::point(linalg::zeros(p.dim))), interior);
        let lineality = dd_convert(&n.to_hpoly());
        let normals = GenSet::cone(p.dim, vec![], hull.eqs.iter().map(|c| c.a.clone()).collect());
        prop_assert!(eq(&GenSet::cone(p.dim, vec![], lineality.lines.clone()), &normals));
    }

    #[test]
    fn intersection_enlarges_normal_cones(
        (p, q, x) in (1usize..=3).prop_flat_map(|d| (vpoly_in(d, 2, 1), vpoly_in(d, 2, 1), vec_in(d)))
    ) {
        let mut p = p;
        let mut q = q;
        p.points.push(x.clone());
        q.points.push(x.clone());
        let (hp, hq) = (dd_reverse(&p), dd_reverse(&q));
        let both = hp.intersect(&hq).unwrap();
        let nb = normal_cone(&both, &x).unwrap().to_genset();
        prop_assert!(is_subset(&normal_cone(&hp, &x).unwrap().to_genset(), &nb).unwrap());
        prop_assert!(is_subset(&normal_cone(&hq, &x).unwrap().to_genset(), &nb).unwrap());
        let rep = check_intersection_rule(&hp, &hq, &x).unwrap();
        prop_assert!(rep.passed());
    }

    #[test]
    fn sum_domain_is_the_intersection(
        (g1, g2) in (1usize..=2, 1usize..=2).prop_flat_map(|(nx, ny)| (vpoly_in(nx + ny, 2, 1), vpoly_in(nx + ny, 2, 1)).prop_map(move |(a, b)| {
            (PolyMap::new(nx, ny, dd_reverse(&a)).unwrap(), PolyMap::new(nx, ny, dd_reverse(&b)).unwrap())
        }))
    ) {
        let s = sum_mapping(&g1, &g2).unwrap();
        prop_assert!(eq(&s.domain(), &g1.domain().intersect(&g2.domain()).unwrap()));
    }

    #[test]
    fn coderivative_is_positively_homogeneous(
        (f, k, v, t) in (1usize..=2, 1usize..=2).prop_flat_map(|(nx, ny)| (
            vpoly_in(nx + ny, 2, 1).prop_map(move |g| PolyMap::new(nx, ny, dd_reverse(&g)).unwrap()),
            0usize..6,
            vec_in(ny),
            prop::sample::select(vec![Rational::new(1, 2), Rational::from_integer(2), Rational::new(7, 3)]),
        ))
    ) {
        let pts = sample_points(&f.graph, 6).unwrap();
        let z = &pts[k % pts.len()];
        let (x, y) = z.split_at(f.nx);
        let base = f.coderivative(x, y, &v).unwrap();
        let scaled = f.coderivative(x, y, &linalg::scale(&v, &t)).unwrap();
        prop_assert!(eq(&scaled, &base.scaled(&t)));
    }

    #[test]
    fn indicator_graph_normals((theta, x) in (1usize..=3).prop_flat_map(pointed_in), ny in 1usize..=2) {
        let nx = theta.dim;
        let ind = PolyMap::indicator(&theta, ny);
        let zero = linalg::zeros(ny);
        prop_assert!(ind.contains(&x, &zero).unwrap());
        let graph = normal_cone_oracle(&ind.graph, &ind.point(&x, &zero)).unwrap();
        let base = normal_cone(&theta, &x).unwrap();
        let pad = |v: &Vector| {
            let mut w = v.clone();
            w.extend(linalg::zeros(ny));
            w
        };
        let rays = base.rays.iter().map(pad).collect();
        let mut lines: Vec<Vector> = base.lines.iter().map(pad).collect();
        lines.extend((0..ny).map(|i| linalg::unit(nx + ny, nx + i)));
        prop_assert!(eq(&graph.to_genset(), &GenSet::cone(nx + ny, rays, lines)));
    }

    #[test]
    fn subgradients_satisfy_the_defining_inequality(
        ((f, x), probes) in (1usize..=3).prop_flat_map(|n| (func_at(n), prop::collection::vec(vec_in(n), 4)))
    ) {
        let mut probes = probes;
        probes.extend(sample_points(&f.domain(), 6).unwrap());
        let sub = f.subdifferential(&x).unwrap();
        prop_assert!(!sub.is_empty() || !f.is_continuous_at(&x).unwrap());
        prop_assert!(subgradient_inequality(&f, &sub, &x, &probes));
    }

    #[test]
    fn singular_subdifferential_is_the_domain_normal_cone((f, x) in (1usize..=3).prop_flat_map(func_at)) {
        let s = f.singular_subdifferential(&x).unwrap();
        let n = normal_cone(&f.domain(), &x).unwrap();
        prop_assert!(eq(&s.to_genset(), &n.to_genset()));
    }

    #[test]
    fn epigraphical_coderivative(
        (f, x) in (1usize..=3).prop_flat_map(func_at),
        lambda in prop::sample::select(vec![Rational::zero(), Rational::from_integer(1), Rational::new(3, 2)]),
    ) {
        let fx = value(&f, &x).unwrap();
        let cod = f.epigraphical_map().coderivative(&x, &[fx], std::slice::from_ref(&lambda)).unwrap();
        prop_assert!(eq(&cod, &f.lambda_odot(&lambda, &x).unwrap()));
    }

    #[test]
    fn sublevel_rule_holds((f, x) in (1usize..=3).prop_flat_map(func_at)) {
        let fx = value(&f, &x).unwrap();
        prop_assert!(check_sublevel_rule(&f, &fx, &x).unwrap().passed());
    }

    #[test]
    fn sum_and_affine_chain_rules_hold(
        (f1, f2, k, a, b) in (1usize..=3, 1usize..=2).prop_flat_map(|(n, m)| (
            func_in(n),
            func_in(n),
            0usize..6,
            prop::collection::vec(vec_in(m), n).prop_map(move |r| linalg::Matrix::new(n, m, r).unwrap()),
            vec_in(n),
        ))
    ) {
        let dom = f1.domain().intersect(&f2.domain()).unwrap();
        if !dom.is_empty() {
            let pts = sample_points(&dom, 6).unwrap();
            let x = &pts[k % pts.len()];
            prop_assert!(check_subdiff_sum_rule(&f1, &f2, x).unwrap().passed());
        }
        let map = AffineMap::new(a, b).unwrap();
        let comp = compose_affine(&f1, &map);
        if let Ok(comp) = comp {
            let pts = sample_points(&comp.domain(), 6).unwrap();
            let x = &pts[k % pts.len()];
            prop_assert!(check_affine_chain(&f1, &map, x).unwrap().passed());
        }
    }

    #[test]
    fn optimal_value_properties(
        (inst, k) in (1usize..=2, 1usize..=2).prop_flat_map(|(nx, ny)| (
            vpoly_in(nx + ny, 1, 1),
            func_in(nx + ny),
            0usize..6,
        ).prop_filter_map("improper value", move |(g, phi, k)| {
            let f = PolyMap::new(nx, ny, dd_reverse(&g)).unwrap();
            Some((OvfInstance::new(phi, f).ok()?, k))
        }))
    ) {
        let mu = inst.mu_function().unwrap();
        let dom = mu.domain();
        prop_assume!(!dom.is_empty());
        let gph = sample_points(&inst.f.graph, 8).unwrap();
        for z in &gph {
            let (x, _) = z.split_at(inst.f.nx);
            if let Some(p) = value(&inst.phi, z) {
                prop_assert!(value(&mu, x).unwrap() <= p);
            }
        }
        let xs = sample_points(&dom, 6).unwrap();
        let x = &xs[k % xs.len()];
        let s = inst.solution_set(x).unwrap();
        prop_assert!(!s.is_empty());
        let sub = mu.subdifferential(x).unwrap();
        prop_assert!(subgradient_inequality(&mu, &sub, x, &xs));
        for y in sample_points(&s, 3).unwrap() {
            prop_assert!(inst.check_ovf_rule(x, &y).unwrap().passed());
        }
    }

    #[test]
    fn separation_is_sound_and_complete(
        (p, o) in (1usize..=3).prop_flat_map(|d| (vpoly_in(d, 1, 1), vpoly_in(d, 2, 1)))
    ) {
        let (hp, ho) = (dd_reverse(&p), dd_reverse(&o));
        let res = separate(&hp, &ho).unwrap();
        prop_assert!(res.verify(&hp, &ho).unwrap());
        prop_assert_eq!(res.is_separable(), !meets_relative_interior(&hp, &ho));
    }

    #[test]
    fn equality_blocks_convert(
        (eqs, c) in (1usize..=4).prop_flat_map(|d| (
            prop::collection::vec((vec_in(d), small()), 1..=3),
            prop::collection::vec(small(), 3),
        ))
    ) {
        let dim = eqs[0].0.len();
        let m = HPoly::new(dim, vec![], eqs.iter().map(|(a, b)| Constraint::new(a.clone(), b.clone())).collect()).unwrap();
        prop_assert!(eq(&gpcs_to_pcs(&m), &m));
        prop_assert!(gpcs_to_pcs(&m).eqs.is_empty());
        let mut a = linalg::zeros(dim);
        let mut b = Rational::zero();
        for (e, t) in m.eqs.iter().zip(&c) {
            a = linalg::axpy(&a, t, &e.a);
            b = &b + &(t * &e.b);
        }
        let mut more = m.clone();
        more.eqs.push(Constraint::new(a, b));
        prop_assert_eq!(codim(&more), codim(&m));
    }
}
